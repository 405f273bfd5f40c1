"""Bundled end-to-end verification checks behind `starpos reproduce-paper`.

Each check replays one of the headline exact computations: the two Gram
identities for the sextic family, the PSD certificates and the multiplier
pipeline, ladder positivity, the cone separation at the number operator,
the failing composite conditional expectation, trace-form signatures, the
group-average/trace identification, the cyclic-algebra tower, the graded
action on point modules, and the leading-term data.  Every check is exact;
a check returns (ok, detail).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import cexp, fock, gramcert, matalg, numfield, polyalg, qmod, ratpoly, weyl
from .scalars import INV_SQRT2, Scalar


@dataclass
class CheckResult:
    check_id: str
    ok: bool
    detail: str
    seconds: float


def check_gram_identity():
    cert = gramcert.conjugated_certificate()
    res = gramcert.verify(cert)
    if not res.ok:
        return False, f"expansion mismatch: {weyl.format_xy(res.discrepancy)}"
    return True, "conjugated two-block expansion matches exactly"


def check_rank_one_identity():
    cert = gramcert.rank_one_certificate()
    res = gramcert.verify(cert)
    if not res.ok:
        return False, "rank-one expansion mismatch"
    a, ast = weyl.gen_a(), weyl.gen_astar()
    h1_ladder = (a * 2 + ast) * INV_SQRT2
    h2_ladder = (a ** 3 - ast * ast * a) * INV_SQRT2
    h1, h2 = cert.blocks[0].monomials[0], cert.blocks[1].monomials[0]
    if h1 != h1_ladder or h2 != h2_ladder:
        return False, "ladder forms disagree with the X,Y forms"
    return True, "both squares and their ladder forms agree"


def check_psd_blocks():
    a1 = gramcert.block_matrix_small()
    a2 = gramcert.block_matrix_large()
    a3 = gramcert.step3_trace_matrix()
    sym = [[(a3[i][j] + a3[j][i]) / 2 for j in range(6)] for i in range(6)]
    if not (gramcert.psd_exact(a1) and gramcert.psd_exact(a2) and gramcert.psd_exact(sym)):
        return False, "a displayed certificate matrix fails the exact PSD test"
    delta = Fraction(1, 100)
    broken = a1[1][1] - delta
    mutated = [[a1[0][0], a1[0][1]], [a1[1][0], broken]]
    if gramcert.psd_exact(mutated):
        return False, "PSD-breaking mutation went undetected"
    return True, "certificate matrices PSD; single-entry break detected"


def check_lower_bound():
    rep = gramcert.lower_bound_pipeline(strict=False)
    if not rep.identity_ok:
        return False, "multiplier combination failed"
    if not rep.psd_ok:
        return False, "symmetrized trace matrix not PSD"
    return True, f"shift bound {rep.bound} certified"


def check_fock_positivity(level: int = 20):
    l5 = weyl.build_lk(5)
    n = weyl.number_op()
    shifted = l5 + Fraction(7, 5)
    for m in range(level + 1):
        if not fock.psd_truncated(shifted, m):
            return False, f"shifted sextic fails at level {m}"
    if fock.psd_truncated(n - 1, 1):
        return False, "N - 1 not refuted at level 1"
    prod = (n - 1) * (n - 2)
    for m in range(level + 1):
        if not fock.psd_truncated(prod, m):
            return False, f"(N-1)(N-2) fails at level {m}"
    return True, f"positivity pattern exact through level {level}"


def check_cone_separation():
    nvar = weyl.NUMBER_ALGEBRA.gen("N")
    f = (nvar - 1) * (nvar - 2)
    pos = qmod.PosNaturals().membership(f).status == qmod.YES
    in_cone = qmod.degree2_decide(f)
    if not pos:
        return False, "(N-1)(N-2) not recognized nonnegative on N0"
    if in_cone:
        return False, "(N-1)(N-2) wrongly placed in the hermitian-square cone"
    return True, "integer-point positivity holds, square-cone membership refuted"


def check_parity_composite():
    alg = polyalg.real_line("x")
    x = alg.gen("x")
    sample = (x ** 3 - x) ** 2
    image = polyalg.parity_projection(polyalg.parity_projection(sample, "x", 1), "x", 2)
    expected = alg.monomial((4,), Fraction(-2))
    if image != expected:
        return False, f"composite image is {image}, not -2x^4"
    tower = cexp.parity_tower_map("x")
    report = cexp.check_axioms(tower, with_ce5=True, seed=5)
    if not report.passed():
        return False, "bimodule axioms unexpectedly fail"
    if report.status("CE5") != "fail":
        return False, "composite CE5 failure not detected"
    witness = report.witness("CE5")
    if witness != expected:
        return False, f"CE5 witness is {witness}, not -2x^4"
    return True, "composite projection fails CE5 with witness -2x^4"


def check_hermite(sample_count: int = 100, seed: int = 12):
    cases = {
        (-2, 0, 1): (2, True),
        (1, 0, 1): (0, False),
        (1, 0, -10, 0, 1): (4, True),
    }
    for coeffs, (r, inducible) in cases.items():
        field = numfield.NumberField(list(coeffs))
        if numfield.real_root_count(field) != r:
            return False, f"root count wrong for {coeffs}"
        if numfield.is_inducible(field) != inducible:
            return False, f"inducibility wrong for {coeffs}"
    rng = random.Random(seed)
    agree = 0
    for _ in range(sample_count):
        deg = rng.randint(1, 8)
        while True:
            coeffs = [Fraction(rng.randint(-6, 6)) for _ in range(deg)] + [Fraction(1)]
            p = ratpoly.poly(coeffs)
            if ratpoly.degree(ratpoly.gcd_poly(p, ratpoly.derivative(p))) == 0:
                break
        field = numfield.NumberField(p)
        if numfield.real_root_count(field) == field.sturm_real_root_count():
            agree += 1
    if agree != sample_count:
        return False, f"signature/Sturm agreement {agree}/{sample_count}"
    return True, f"trace-form signature matches Sturm counts on {sample_count} random fields"


def check_matrix_average(per_size: int = 50, seed: int = 23):
    alg = polyalg.PolyAlgebra(["x", "y"])
    rng = random.Random(seed)
    for n in (2, 3):
        for _ in range(per_size):
            mat = matalg.MatPoly(alg, [[cexp.random_poly(alg, rng, degree=2, terms=2)
                                        for _ in range(n)] for _ in range(n)])
            expected = matalg.MatPoly.identity(alg, n) * matalg.ntrace(mat)
            if matalg.group_average(mat) != expected:
                return False, f"average/trace identification fails at size {n}"
    return True, f"signed-cyclic average equals normalized trace ({per_size} samples each size)"


def _flagship_cyclic(star_sign: int):
    field = numfield.NumberField([-2, 0, 1])
    sigma = field.automorphism([0, -1])
    from .cyclic import CyclicAlgebra
    return CyclicAlgebra(field, sigma, -1, [star_sign])


def check_cyclic_tower():
    from .cyclic import mat_eq, mat_mul
    algebra = _flagship_cyclic(-1)  # e* = -e
    field = algebra.field
    theta = field.generator()
    basis = [algebra.one(), algebra.e(), algebra.embed(theta),
             algebra.e() * algebra.embed(theta)]
    for x in basis:
        if algebra.frak_p(algebra.epsilon(x)) != x:
            return False, "averaging projection does not invert the embedding"
    for x in basis:
        if not mat_eq(algebra.epsilon(x.star()), algebra.tau(algebra.epsilon(x))):
            return False, "embedding is not a star-homomorphism"
        for y in basis:
            if not mat_eq(algebra.epsilon(x * y),
                          mat_mul(field, algebra.epsilon(x), algebra.epsilon(y))):
                return False, "embedding is not multiplicative"
    rng = random.Random(3)
    for _ in range(20):
        x = algebra.element([[Fraction(rng.randint(-3, 3)) for _ in range(2)]
                             for _ in range(2)])
        if algebra.ntrace(x) != numfield.ntrace(algebra.p_to_field(x)):
            return False, "trace tower fails"
    lam = algebra.lambdas()
    if lam[1] != field.one():
        return False, f"lambda_1 is {lam[1]}, expected 1"
    if not algebra.star_orderings_exist():
        return False, "star orderings should exist for e* = -e"
    flipped = _flagship_cyclic(1)  # e* = e
    lam2 = flipped.lambdas()
    if lam2[1] != field.rational(-1):
        return False, f"lambda_1 is {lam2[1]}, expected -1"
    if flipped.star_orderings_exist():
        return False, "star orderings should not exist for e* = e"
    return True, "tower identities exact; ordering criterion matches both variants"


def check_graded_action(battery_size: int = 50, seed: int = 9):
    for lam in range(0, 6):
        for k in range(-3, 6):
            moved = qmod.graded_action(k, qmod.PointEval(lam))
            if lam >= k:
                if not isinstance(moved, qmod.PointEval) or moved.point != lam - k:
                    return False, f"action wrong at (lambda={lam}, k={k})"
            elif moved is not None:
                return False, f"action should be undefined at (lambda={lam}, k={k})"
    for k in range(-3, 6):
        if not isinstance(qmod.graded_action(k, qmod.LeadingCoeff()), qmod.LeadingCoeff):
            return False, "leading-coefficient module should be fixed"
    rng = random.Random(seed)
    nalg = weyl.NUMBER_ALGEBRA
    inf = qmod.LeadingCoeff()
    for _ in range(battery_size):
        f = cexp.random_poly(nalg, rng, degree=4, terms=3)
        f = f + f.star()
        direct = inf.membership(f).status
        via_action = qmod.res_ind_leading_membership(f).status
        if direct != via_action:
            return False, f"decision procedures disagree on {f}"
    return True, "action table exact; both decision routes agree on the battery"


def check_ordering_data():
    n = weyl.number_op()
    l5 = weyl.build_lk(5)
    v1n, lc1n = weyl.leading(n, weyl.ORD1)
    v1l, _ = weyl.leading(l5, weyl.ORD1)
    v2l, lc2l = weyl.leading(l5, weyl.ORD2)
    if (v1n, lc1n) != ((0, 2), Scalar(Fraction(1, 2))):
        return False, f"leading data of N wrong: {v1n}, {lc1n}"
    if v1l != (2, 4) or v2l != (4, 2) or lc2l != Scalar(1):
        return False, "leading data of the sextic family wrong"
    spans = {0: {"1", "p", "q", "p^2", "p*q", "q^2", "p*q^2", "p^2*q"},
             1: {"1", "p", "q", "p*q"},
             2: {"1"},
             3: set()}
    for d, expected in spans.items():
        got = {gramcert.monomial_name(m) for m in gramcert.step1_monomial_filter(d, l5)}
        if got != expected:
            return False, f"monomial filter wrong at degree {d}: {sorted(got)}"
    return True, "leading multidegrees and conjugator spans reproduced"


def check_property_suite(samples: int = 100, seed: int = 31):
    rng = random.Random(seed)
    for _ in range(samples):
        x = cexp.random_weyl(rng, degree=2, terms=2)
        y = cexp.random_weyl(rng, degree=2, terms=2)
        z = cexp.random_weyl(rng, degree=1, terms=2)
        if (x * y) * z != x * (y * z):
            return False, "associativity fails"
        if (x * y).star() != y.star() * x.star():
            return False, "involution anti-multiplicativity fails"
        k = rng.randint(-3, 3)
        f = cexp.random_poly(weyl.NUMBER_ALGEBRA, rng, degree=2, terms=2)
        coeffs = f.rational_coeffs()
        shifted = weyl.NUMBER_ALGEBRA.from_univariate(ratpoly.shift(coeffs, -k))
        lhs = weyl.poly_in_n(f) * weyl.ladder(k)
        rhs = weyl.ladder(k) * weyl.poly_in_n(shifted)
        if lhs != rhs:
            return False, f"shift relation fails at k={k}"
        if weyl.reassemble(weyl.grading_decompose(x)) != x:
            return False, "grading decomposition does not reassemble"
        if not x.is_zero() and not y.is_zero():
            for ordering in (weyl.ORD1, weyl.ORD2):
                (vx, cx), (vy, cy) = weyl.leading(x, ordering), weyl.leading(y, ordering)
                vxy, cxy = weyl.leading(x * y, ordering)
                if vxy != (vx[0] + vy[0], vx[1] + vy[1]) or cxy != cx * cy:
                    return False, "leading data not multiplicative"
    return True, f"algebra/grading/leading properties hold on {samples} samples"


ALL_CHECKS = [
    ("gram-identity", check_gram_identity),
    ("rank-one-identity", check_rank_one_identity),
    ("psd-certificates", check_psd_blocks),
    ("lower-bound-pipeline", check_lower_bound),
    ("ladder-positivity", check_fock_positivity),
    ("cone-separation", check_cone_separation),
    ("parity-composite", check_parity_composite),
    ("hermite-forms", check_hermite),
    ("matrix-average", check_matrix_average),
    ("cyclic-tower", check_cyclic_tower),
    ("graded-action", check_graded_action),
    ("ordering-data", check_ordering_data),
    ("property-suite", check_property_suite),
]


def run_checks(ids=None):
    selected = [(cid, fn) for cid, fn in ALL_CHECKS if ids is None or cid in ids]
    results = []
    for cid, fn in selected:
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"exception: {exc}"
        results.append(CheckResult(cid, ok, detail, time.perf_counter() - start))
    return results
