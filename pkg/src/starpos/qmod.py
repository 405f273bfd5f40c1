"""Quadratic modules as first-class values, with induction and restriction.

Membership is variant-by-variant: exact for the point/leading-coefficient/
integer-point/half-line/real-line cones and for induced number-field
orderings; refutation-or-unknown for positivity on a sampled semialgebraic
set; and certificate-only for finitely generated modules (a bare "yes" is
never produced without an exact identity).  The induction operator follows
the defining condition p(x* f x) in N on supplied witnesses, with two
structured complete modes: the ladder-representation test on the Weyl
algebra and the trace-form signature test on number fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import fock, ratpoly, weyl
from .cexp import BimoduleProjection
from .matalg import SemialgebraicSet
from .numfield import NFElement, in_induced_ordering, is_inducible
from .polyalg import Poly, nonneg_on

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class MembershipResult:
    status: str
    witness: object = None
    detail: str = ""

    def __bool__(self):
        return self.status == YES


# -- quadratic module variants ----------------------------------------------


class QuadraticModule:
    """Base: a set of hermitian elements with a sound membership routine."""

    name = "abstract"

    def membership(self, f) -> MembershipResult:
        raise NotImplementedError

    def __repr__(self):
        return f"QuadraticModule({self.name})"


def _coerce_poly_univariate(f):
    if isinstance(f, Poly):
        return f
    raise TypeError("expected a polynomial element")


class PosNaturals(QuadraticModule):
    """Polynomials in one hermitian variable nonnegative at 0, 1, 2, ..."""

    name = "Pos(N0)"

    def membership(self, f) -> MembershipResult:
        f = _coerce_poly_univariate(f)
        if not f.is_hermitian():
            raise ValueError("membership requires a hermitian element")
        if nonneg_on(f, "N0"):
            return MembershipResult(YES)
        coeffs = f.rational_coeffs()
        horizon = int(ratpoly.cauchy_bound(coeffs)) if coeffs else 0
        for k in range(horizon + 1):
            if ratpoly.eval_poly(coeffs, k) < 0:
                return MembershipResult(NO, witness=k, detail=f"value at {k} is negative")
        return MembershipResult(NO, detail="negative leading coefficient")


class PosHalfline(QuadraticModule):
    name = "Pos(R+)"

    def membership(self, f) -> MembershipResult:
        f = _coerce_poly_univariate(f)
        if not f.is_hermitian():
            raise ValueError("membership requires a hermitian element")
        return MembershipResult(YES if nonneg_on(f, "halfline") else NO)


class PosReals(QuadraticModule):
    name = "Pos(R)"

    def membership(self, f) -> MembershipResult:
        f = _coerce_poly_univariate(f)
        if not f.is_hermitian():
            raise ValueError("membership requires a hermitian element")
        return MembershipResult(YES if nonneg_on(f, "R") else NO)


class PointEval(QuadraticModule):
    """N_lambda: polynomials nonnegative at one integer point."""

    def __init__(self, point: int):
        if point < 0:
            raise ValueError("evaluation point must be a natural number")
        self.point = point
        self.name = f"N_{point}"

    def membership(self, f) -> MembershipResult:
        f = _coerce_poly_univariate(f)
        if not f.is_hermitian():
            raise ValueError("membership requires a hermitian element")
        value = f.evaluate([Fraction(self.point)])
        ok = value.sign() >= 0
        return MembershipResult(YES if ok else NO,
                                witness=None if ok else value,
                                detail=f"value at {self.point} is {value}")

    def __eq__(self, other):
        return isinstance(other, PointEval) and other.point == self.point

    def __hash__(self):
        return hash(("N_lambda", self.point))


class LeadingCoeff(QuadraticModule):
    """N_infinity: zero or positive leading coefficient."""

    name = "N_inf"

    def membership(self, f) -> MembershipResult:
        f = _coerce_poly_univariate(f)
        if not f.is_hermitian():
            raise ValueError("membership requires a hermitian element")
        if f.is_zero():
            return MembershipResult(YES)
        coeffs = f.univariate()
        lc = coeffs[-1]
        return MembershipResult(YES if lc.sign() > 0 else NO,
                                detail=f"leading coefficient {lc}")

    def __eq__(self, other):
        return isinstance(other, LeadingCoeff)

    def __hash__(self):
        return hash("N_inf")


class PosSemialgebraic(QuadraticModule):
    """Pos(K_S) with refutation-only membership through sample points."""

    def __init__(self, constraints: SemialgebraicSet, samples):
        self.constraints = constraints
        self.samples = [tuple(Fraction(c) for c in p) for p in samples]
        self.name = "Pos(K_S)"

    def membership(self, f) -> MembershipResult:
        if not f.is_hermitian():
            raise ValueError("membership requires a hermitian element")
        for point in self.samples:
            if not self.constraints.contains(point):
                continue
            value = f.evaluate(point)
            if not value.is_real():
                raise ValueError("element is not real-valued on the set")
            if value.sign() < 0:
                return MembershipResult(NO, witness=point,
                                        detail=f"value {value} at {point}")
        return MembershipResult(UNKNOWN, detail="no sampled refutation")


class InducedOrdering(QuadraticModule):
    """The ordering of a totally real field induced from Q through the trace."""

    def __init__(self, field):
        if not is_inducible(field):
            raise ValueError("field is not totally real; ordering not inducible")
        self.field = field
        self.name = "Ind(Q>=0)"

    def membership(self, f) -> MembershipResult:
        if not isinstance(f, NFElement):
            raise TypeError("expected a number-field element")
        if f.is_zero():
            return MembershipResult(YES)
        return MembershipResult(YES if in_induced_ordering(f) else NO)


class FinitelyGenerated(QuadraticModule):
    """QM(S): membership is certificate-only and otherwise unknown."""

    def __init__(self, generators, label="QM(S)"):
        self.generators = list(generators)
        self.name = label

    def membership(self, f) -> MembershipResult:
        return MembershipResult(UNKNOWN,
                                detail="finitely generated module: "
                                       "provide a certificate")


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class QMCertificate:
    """Terms (lambda_i, generator index, conjugator a_i) claiming
    sum lambda_i a_i* s_i a_i equals the target."""

    terms: tuple

    def __init__(self, terms):
        object.__setattr__(self, "terms", tuple(terms))


def verify_certificate(target, generators, cert: QMCertificate):
    """Exact check of the generation identity; YES proves membership in the
    quadratic module generated by the generators."""
    total = None
    for lam, idx, elem in cert.terms:
        lam = Fraction(lam)
        if lam < 0:
            raise ValueError("certificate weights must be nonnegative")
        if not 0 <= idx < len(generators):
            raise ValueError(f"generator index {idx} out of range")
        piece = elem.star() * generators[idx] * elem * lam
        total = piece if total is None else total + piece
    if total is None:
        total = target - target  # zero of the right carrier
    if total == target:
        return MembershipResult(YES)
    return MembershipResult(NO, witness=target - total,
                            detail="certificate expands to a different element")


# -- induction and restriction -----------------------------------------------


def check_inducible(p: BimoduleProjection, inner: QuadraticModule,
                    witnesses=()) -> str:
    """Necessary condition for Ind to be a quadratic module.

    Graded case (the Weyl grading projection): the homogeneous criterion,
    e_k* e_k must lie in the inner module for a symmetric range of grades.
    Otherwise: p(x* x) is tested on the supplied sample x.  Raises naming
    the offender; returns a line describing which criterion ran.
    """
    if p.kind == "weyl-grading":
        for k in range(-4, 5):
            norm = weyl.ek_star_ek(k)
            if inner.membership(norm).status == NO:
                raise ValueError(
                    f"inner module is not inducible: grading norm e_{k}* e_{k} "
                    f"= {norm} fails membership")
        return "homogeneous-generator criterion (grades -4..4)"
    src = p.source_ops
    for x in witnesses:
        value = p.apply(src.mul(src.star(x), x))
        res = inner.membership(value)
        if res.status == NO:
            raise ValueError(f"inner module is not inducible: p(x* x) fails for x = {x}")
    return f"sampled p(x* x) criterion ({len(list(witnesses))} samples)"


def ind_membership(p: BimoduleProjection, inner: QuadraticModule, f,
                   witnesses=(), mode=None, level: int | None = None,
                   precheck: bool = True):
    """Membership of f in the induced module {a : p(x* a x) in N for all x}.

    Witness mode is refutation-only: each supplied x is tested exactly.
    Structured modes decide more: mode="fock" (Weyl algebra over Pos(N0))
    delegates to the ladder Gram matrices up to the given level;
    mode="field" (number fields) delegates to the trace-form signature.
    """
    src = p.source_ops
    if not src.eq(f, src.star(f)):
        raise ValueError("induced membership requires a hermitian element")
    if precheck and mode != "field":
        check_inducible(p, inner, witnesses)
    for x in witnesses:
        value = p.apply(src.mul(src.mul(src.star(x), f), x))
        res = inner.membership(value)
        if res.status == NO:
            return MembershipResult(NO, witness=x,
                                    detail=f"p(x* f x) leaves the module for x = {x}")
    if mode == "fock":
        if not isinstance(inner, PosNaturals):
            raise ValueError("fock mode decides induction into Pos(N0) only")
        lvl = fock.DEFAULT_REFUTE_LEVEL if level is None else level
        failing = fock.aplus_refute(f, lvl)
        if failing is not None:
            return MembershipResult(NO, witness=failing,
                                    detail=f"ladder Gram matrix fails at level {failing}")
        return MembershipResult(YES, detail=f"PSD at every level up to {lvl}")
    if mode == "field":
        if not isinstance(inner, InducedOrdering):
            raise ValueError("field mode needs an induced-ordering module")
        return inner.membership(f)
    return MembershipResult(UNKNOWN, detail="no refuting witness supplied")


def res_generators(p: BimoduleProjection, module: FinitelyGenerated, basis):
    """Images p(b* s b) over the generator list and the supplied basis:
    generators of a finitely generated submodule of the restriction (the
    exact restriction ranges over the whole module and is not finitely
    enumerable)."""
    src = p.source_ops
    out = []
    seen = set()
    for s in module.generators:
        for b in basis:
            img = p.apply(src.mul(src.mul(src.star(b), s), b))
            key = repr(img)
            if key not in seen:
                seen.add(key)
                out.append(img)
    return out


# -- the graded action on modules over C[N] ------------------------------------


def graded_action(k: int, module: QuadraticModule):
    """Action of the grade-k component on point and leading-coefficient
    modules: N_lambda moves to N_(lambda-k) when lambda >= k and is
    undefined otherwise; N_inf is fixed.  Undefined is reported as None."""
    if isinstance(module, LeadingCoeff):
        return LeadingCoeff()
    if isinstance(module, PointEval):
        if module.point >= k:
            return PointEval(module.point - k)
        return None
    raise TypeError("graded action is defined on N_lambda and N_inf modules")


def graded_action_membership(k: int, module: QuadraticModule, f) -> MembershipResult:
    """Direct defining test of f in the grade-k action: the grading norm
    e_k* e_k times the shifted polynomial must lie in the module."""
    norm = weyl.ek_star_ek(k)
    coeffs = f.rational_coeffs()
    shifted = weyl.NUMBER_ALGEBRA.from_univariate(ratpoly.shift(coeffs, -k))
    return module.membership(norm * shifted)


def res_ind_leading_membership(f, k_range=range(-6, 7)) -> MembershipResult:
    """Membership of f in the restriction of the induced leading-coefficient
    module, computed from the defining data: f must survive the grade-k
    action for every k."""
    inf = LeadingCoeff()
    for k in k_range:
        res = graded_action_membership(k, inf, f)
        if res.status == NO:
            return MembershipResult(NO, witness=k,
                                    detail=f"fails the grade-{k} action")
    return MembershipResult(YES)


# -- degree-2 decision for the Weyl hermitian-square cone -----------------------


def degree2_decide(f: Poly) -> bool:
    """Exact membership of a degree <= 2 real polynomial in N in the cone
    sums-of-squares + N * sums-of-squares + N(N-1) * sums-of-squares,
    truncated at degree 2.

    Complete at this degree: every generator has positive leading
    coefficient, so no top-degree cancellation can bring higher pieces
    down.  Reduces to feasibility of f - alpha N - beta N(N-1) >= 0 on R
    over alpha, beta >= 0, solved in closed form.
    """
    coeffs = f.rational_coeffs()
    if len(coeffs) > 3:
        raise ValueError("decision specialized to degree <= 2")
    c0 = coeffs[0] if len(coeffs) > 0 else Fraction(0)
    c1 = coeffs[1] if len(coeffs) > 1 else Fraction(0)
    c2 = coeffs[2] if len(coeffs) > 2 else Fraction(0)
    if c0 < 0 or c2 < 0:
        return False
    if c1 + c2 >= 0:
        # alpha soaks up the linear part exactly
        return True
    # alpha = 0 forced; maximize 4 c0 (c2 - beta) - (c1 + beta)^2 on [0, c2]
    beta = -c1 - 2 * c0
    if beta < 0:
        beta = Fraction(0)
    elif beta > c2:
        beta = c2
    return 4 * c0 * (c2 - beta) - (c1 + beta) ** 2 >= 0


# -- monotone comparisons --------------------------------------------------------


def refines(smaller: QuadraticModule, larger: QuadraticModule, battery) -> bool:
    """Sanity relation on a test battery: YES in the smaller module must
    give YES in the larger."""
    for f in battery:
        if smaller.membership(f).status == YES and larger.membership(f).status != YES:
            return False
    return True
