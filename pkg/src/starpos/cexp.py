"""Bimodule projections and conditional expectations as first-class values.

A projection bundles its map with enough algebra structure (operations,
an embedding of the target back into the source, and samplers) that the
defining axioms can be replayed exactly on any sample battery:

  CE1  additivity
  CE2  p(b1 x b2) = b1 p(x) b2 for b1, b2 in the target subalgebra
  CE3  p(x*) = p(x)*
  CE4  p(1) = 1
  CE5  p of a hermitian square stays a sum of hermitian squares

CE5 is decided only where a sound procedure exists for the source algebra
(univariate real polynomials, balanced conjugate-pair polynomials, the
number-operator subalgebra, number fields); elsewhere it is reported as
undecidable rather than silently passed.  Axiom checking is exact per
sample, not symbolic, so a failure always comes with a concrete witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import polyalg, ratpoly, weyl
from .numfield import FieldAutomorphism, NFElement, NumberField, galois_average, ntrace, root_signs, totally_real
from .polyalg import Poly, PolyAlgebra, charge_projection, nonneg_on, parity_projection
from .scalars import Scalar


@dataclass(frozen=True)
class AlgebraOps:
    """Minimal operation bundle for one *-algebra carrier type."""

    label: str
    add: callable
    mul: callable
    star: callable
    eq: callable
    one: callable


def poly_ops(algebra: PolyAlgebra) -> AlgebraOps:
    return AlgebraOps(algebra.label,
                      add=lambda x, y: x + y,
                      mul=lambda x, y: x * y,
                      star=lambda x: x.star(),
                      eq=lambda x, y: x == y,
                      one=algebra.one)


def weyl_ops() -> AlgebraOps:
    return AlgebraOps("weyl",
                      add=lambda x, y: x + y,
                      mul=lambda x, y: x * y,
                      star=lambda x: x.star(),
                      eq=lambda x, y: x == y,
                      one=weyl.WeylElement.one)


def nfield_ops(fld: NumberField) -> AlgebraOps:
    return AlgebraOps(f"Q[x]/({fld.minpoly})",
                      add=lambda x, y: x + y,
                      mul=lambda x, y: x * y,
                      star=lambda x: x,  # trivial involution
                      eq=lambda x, y: x == y,
                      one=fld.one)


def cyclic_ops(algebra) -> AlgebraOps:
    return AlgebraOps(f"cyclic(n={algebra.n},a={algebra.a})",
                      add=lambda x, y: x + y,
                      mul=lambda x, y: x * y,
                      star=lambda x: x.star(),
                      eq=lambda x, y: x == y,
                      one=algebra.one)


def matrix_field_ops(algebra) -> AlgebraOps:
    from .cyclic import mat_add, mat_eq, mat_identity, mat_mul
    fld, n = algebra.field, algebra.n
    return AlgebraOps(f"M_{n}(L)",
                      add=mat_add,
                      mul=lambda x, y: mat_mul(fld, x, y),
                      star=algebra.tau,
                      eq=mat_eq,
                      one=lambda: mat_identity(fld, n))


def matpoly_ops(algebra: PolyAlgebra, n: int) -> AlgebraOps:
    from .matalg import MatPoly
    return AlgebraOps(f"M_{n}({algebra.label})",
                      add=lambda x, y: x + y,
                      mul=lambda x, y: x * y,
                      star=lambda x: x.star(),
                      eq=lambda x, y: x == y,
                      one=lambda: MatPoly.identity(algebra, n))


@dataclass
class BimoduleProjection:
    """A map p: source -> target with the structure to check (CE1)-(CE5)."""

    kind: str
    source_ops: AlgebraOps
    target_ops: AlgebraOps
    apply: callable
    embed: callable              # target element -> source element
    sample_source: callable      # rng -> source element
    sample_target: callable      # rng -> target element
    sos_decider: callable = None  # source element -> bool | None
    fixed_samples: tuple = ()

    @property
    def label(self) -> str:
        return f"{self.kind}: {self.source_ops.label} -> {self.target_ops.label}"

    def __call__(self, x):
        return self.apply(x)


def compose(p2: BimoduleProjection, p1: BimoduleProjection) -> BimoduleProjection:
    """p2 after p1; defined when p1 lands where p2 starts."""
    if p1.target_ops.label != p2.source_ops.label:
        raise ValueError(f"cannot chain {p1.label} into {p2.label}")
    return BimoduleProjection(
        kind=f"{p2.kind}.{p1.kind}",
        source_ops=p1.source_ops,
        target_ops=p2.target_ops,
        apply=lambda x: p2.apply(p1.apply(x)),
        embed=lambda b: p1.embed(p2.embed(b)),
        sample_source=p1.sample_source,
        sample_target=p2.sample_target,
        sos_decider=p1.sos_decider,
        fixed_samples=p1.fixed_samples,
    )


# -- axiom checking ------------------------------------------------------------

@dataclass
class AxiomReport:
    projection: str
    results: dict = field(default_factory=dict)

    def record(self, axiom: str, status: str, witness=None):
        self.results[axiom] = (status, witness)

    def status(self, axiom: str) -> str:
        return self.results[axiom][0]

    def witness(self, axiom: str):
        return self.results[axiom][1]

    def passed(self, include_ce5: bool = False) -> bool:
        axioms = ["CE1", "CE2", "CE3", "CE4"] + (["CE5"] if include_ce5 else [])
        return all(self.results[a][0] in ("pass", "undecidable") for a in axioms
                   if a in self.results)

    def lines(self):
        out = [f"projection {self.projection}"]
        for axiom in ("CE1", "CE2", "CE3", "CE4", "CE5"):
            if axiom not in self.results:
                continue
            status, witness = self.results[axiom]
            line = f"  {axiom}: {status}"
            if witness is not None:
                line += f"  (witness: {witness})"
            out.append(line)
        return out


def check_axioms(p: BimoduleProjection, samples=None, num_samples: int = 8,
                 seed: int = 0, with_ce5: bool = False) -> AxiomReport:
    """Replay (CE1)-(CE4), and optionally (CE5), on an exact sample battery."""
    rng = random.Random(seed)
    if samples is None:
        samples = [p.sample_source(rng) for _ in range(num_samples)]
    samples = list(p.fixed_samples) + list(samples)
    targets = [p.sample_target(rng) for _ in range(max(3, min(num_samples // 2, 4)))]
    src, tgt = p.source_ops, p.target_ops
    report = AxiomReport(p.label)

    witness = None
    for x, y in zip(samples, samples[1:] + samples[:1]):
        lhs = p.apply(src.add(x, y))
        rhs = tgt.add(p.apply(x), p.apply(y))
        if not tgt.eq(lhs, rhs):
            witness = (x, y)
            break
    report.record("CE1", "fail" if witness else "pass", witness)

    witness = None
    for x in samples:
        for b1 in targets:
            for b2 in targets:
                lhs = p.apply(src.mul(src.mul(p.embed(b1), x), p.embed(b2)))
                rhs = tgt.mul(tgt.mul(b1, p.apply(x)), b2)
                if not tgt.eq(lhs, rhs):
                    witness = (b1, x, b2)
                    break
            if witness:
                break
        if witness:
            break
    report.record("CE2", "fail" if witness else "pass", witness)

    witness = None
    for x in samples:
        if not tgt.eq(p.apply(src.star(x)), tgt.star(p.apply(x))):
            witness = x
            break
    report.record("CE3", "fail" if witness else "pass", witness)

    ce4_ok = tgt.eq(p.apply(src.one()), tgt.one())
    report.record("CE4", "pass" if ce4_ok else "fail",
                  None if ce4_ok else p.apply(src.one()))

    if with_ce5:
        if p.sos_decider is None:
            report.record("CE5", "undecidable", "no decision procedure for this source")
        else:
            verdicts = []
            witness = None
            for x in samples:
                value = p.apply(src.mul(src.star(x), x))
                verdict = p.sos_decider(p.embed(value))
                verdicts.append(verdict)
                if verdict is False:
                    witness = value
                    break
            if witness is not None:
                report.record("CE5", "fail", witness)
            elif any(v is None for v in verdicts):
                report.record("CE5", "undecidable",
                              "no refutation found; exact decision unavailable")
            else:
                report.record("CE5", "pass", None)
    return report


# -- samplers -------------------------------------------------------------------

def _rand_fraction(rng, span: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def random_poly(algebra: PolyAlgebra, rng, degree: int = 4, terms: int = 4,
                step: int = 1, var: int = 0) -> Poly:
    out = algebra.zero()
    ngens = len(algebra.generators)
    for _ in range(terms):
        exp = [0] * ngens
        for i in range(ngens):
            exp[i] = rng.randint(0, degree)
        exp[var] -= exp[var] % step
        out = out + algebra.monomial(tuple(exp), _rand_fraction(rng))
    return out


def random_hermitian_poly(algebra: PolyAlgebra, rng, degree: int = 3) -> Poly:
    f = random_poly(algebra, rng, degree)
    return f + f.star()


def random_weyl(rng, degree: int = 2, terms: int = 4):
    out = weyl.WeylElement.zero()
    for _ in range(terms):
        m, n = rng.randint(0, degree), rng.randint(0, degree)
        re, im = _rand_fraction(rng), _rand_fraction(rng)
        out = out + weyl.WeylElement.monomial(m, n, Scalar(re, 0, im))
    return out


def random_nf(fld: NumberField, rng) -> NFElement:
    return fld.element([_rand_fraction(rng) for _ in range(fld.degree)])


# -- shipped projection constructors ----------------------------------------------

def _univariate_sos_decider(f: Poly):
    return nonneg_on(f, "R")


def weyl_grading_projection() -> BimoduleProjection:
    """The grade-0 projection of the Weyl algebra onto C[N]."""
    nalg = weyl.NUMBER_ALGEBRA

    def decider(x):
        # membership of p(y* y) in the hermitian-square cone, via the
        # grade-0 polynomial: exact at degree <= 2, refutation-only beyond
        from .qmod import degree2_decide  # deferred: qmod imports this module
        f = weyl.grading_component(x, 0)
        if weyl.reassemble({0: f}) != x:
            return None
        try:
            coeffs = f.rational_coeffs()
        except ValueError:
            return None
        if f.degree() <= 2:
            return degree2_decide(f)
        if not ratpoly.nonneg_on_naturals(coeffs):
            return False
        return None

    return BimoduleProjection(
        kind="weyl-grading",
        source_ops=weyl_ops(),
        target_ops=poly_ops(nalg),
        apply=lambda x: weyl.grading_component(x, 0),
        embed=weyl.poly_in_n,
        sample_source=lambda rng: random_weyl(rng),
        sample_target=lambda rng: random_poly(nalg, rng, degree=2, terms=3),
        sos_decider=decider,
    )


def parity_map(algebra: PolyAlgebra, var=0, step: int = 1) -> BimoduleProjection:
    """Even-part projection in one variable, at subalgebra step (1 for
    R[x] -> R[x^2], 2 for R[x^2] -> R[x^4], ...)."""
    idx = algebra.generators.index(var) if isinstance(var, str) else var
    gname = algebra.generators[idx]
    kind = f"parity[{gname}^{step}]" if step > 1 else f"parity[{gname}]"

    src_label = algebra.label if step == 1 else f"{algebra.label}^{step}"
    tgt_label = f"{algebra.label}^{2 * step}"
    ops = poly_ops(algebra)
    src_ops = AlgebraOps(src_label, ops.add, ops.mul, ops.star, ops.eq, ops.one)
    tgt_ops = AlgebraOps(tgt_label, ops.add, ops.mul, ops.star, ops.eq, ops.one)
    return BimoduleProjection(
        kind=kind,
        source_ops=src_ops,
        target_ops=tgt_ops,
        apply=lambda f: parity_projection(f, idx, step),
        embed=lambda f: f,
        sample_source=lambda rng: random_poly(algebra, rng, degree=5, step=step, var=idx),
        sample_target=lambda rng: random_poly(algebra, rng, degree=6, step=2 * step, var=idx),
        sos_decider=_univariate_sos_decider if len(algebra.generators) == 1 else None,
    )


def charge_map(source: PolyAlgebra | None = None,
               target: PolyAlgebra | None = None) -> BimoduleProjection:
    """Projection of C[z, zb] onto C[t] along the rotation grading."""
    source = source or polyalg.conj_pair()
    target = target or polyalg.real_line("t")
    z, zb = source.gen(0), source.gen(1)

    def embed(f: Poly) -> Poly:
        out = source.zero()
        for (k,), c in f.coeffs.items():
            out = out + (z * zb) ** k * c
        return out

    def decider(f: Poly):
        # balanced elements: sums of hermitian squares meet C[t] exactly in
        # the polynomials nonnegative on the half-line
        if any(a != b for (a, b) in f.coeffs):
            return None
        t_poly = charge_projection(f, target)
        return nonneg_on(t_poly, "halfline")

    def sample_source(rng):
        f = random_poly(source, rng, degree=3, terms=4)
        return f

    return BimoduleProjection(
        kind="charge",
        source_ops=poly_ops(source),
        target_ops=poly_ops(target),
        apply=lambda f: charge_projection(f, target),
        embed=embed,
        sample_source=sample_source,
        sample_target=lambda rng: random_poly(target, rng, degree=2, terms=3),
        sos_decider=decider,
    )


def matrix_trace_map(algebra: PolyAlgebra, n: int) -> BimoduleProjection:
    """Normalized trace M_N(B) -> B."""
    from .matalg import MatPoly, ntrace as mat_ntrace

    def embed(b: Poly) -> MatPoly:
        return MatPoly.identity(algebra, n) * b

    def sample_source(rng):
        return MatPoly(algebra, [[random_poly(algebra, rng, degree=2, terms=2)
                                  for _ in range(n)] for _ in range(n)])

    return BimoduleProjection(
        kind=f"matrix-trace[{n}]",
        source_ops=matpoly_ops(algebra, n),
        target_ops=poly_ops(algebra),
        apply=mat_ntrace,
        embed=embed,
        sample_source=sample_source,
        sample_target=lambda rng: random_poly(algebra, rng, degree=2, terms=3),
        sos_decider=(
            (lambda a: nonneg_on(mat_ntrace(a), "R") if a == a.star() else None)
            if len(algebra.generators) == 1 else None),
    )


def field_trace_map(fld: NumberField) -> BimoduleProjection:
    """Normalized trace L -> Q (target represented inside L)."""
    ops = nfield_ops(fld)
    tgt_ops = AlgebraOps("Q", ops.add, ops.mul, ops.star, ops.eq, ops.one)

    def decider(alpha: NFElement):
        if totally_real(fld):
            return all(s >= 0 for s in root_signs(alpha)) if not alpha.is_zero() else True
        return None

    return BimoduleProjection(
        kind="field-trace",
        source_ops=ops,
        target_ops=tgt_ops,
        apply=lambda alpha: fld.rational(ntrace(alpha)),
        embed=lambda b: b,
        sample_source=lambda rng: random_nf(fld, rng),
        sample_target=lambda rng: fld.rational(_rand_fraction(rng)),
        sos_decider=decider,
    )


def galois_average_map(fld: NumberField, sigma: FieldAutomorphism) -> BimoduleProjection:
    """Average over the cyclic group generated by sigma; the target is the
    fixed field, sampled through its rational part."""
    ops = nfield_ops(fld)
    tgt_ops = AlgebraOps(f"{ops.label}^G", ops.add, ops.mul, ops.star, ops.eq, ops.one)

    def decider(alpha: NFElement):
        if totally_real(fld):
            return all(s >= 0 for s in root_signs(alpha)) if not alpha.is_zero() else True
        return None

    return BimoduleProjection(
        kind="galois-average",
        source_ops=ops,
        target_ops=tgt_ops,
        apply=lambda alpha: galois_average(alpha, sigma),
        embed=lambda b: b,
        sample_source=lambda rng: random_nf(fld, rng),
        sample_target=lambda rng: fld.rational(_rand_fraction(rng)),
        sos_decider=decider,
    )


def cyclic_field_map(algebra) -> BimoduleProjection:
    """Grade-0 projection of a cyclic algebra onto its splitting field."""

    def decider(x):
        # refute through the star-ordering embeddings when they exist
        l = algebra.p_to_field(x)
        if x != algebra.embed(l):
            return None
        if not totally_real(algebra.field):
            return None
        for (lo, hi), signs, ok in algebra.star_ordering_report():
            if ok and not l.is_zero():
                if ratpoly.sign_at_root(l.coeffs, algebra.field.minpoly, lo, hi) < 0:
                    return False
        return None

    def sample_source(rng):
        return algebra.element([[_rand_fraction(rng)
                                 for _ in range(algebra.field.degree)]
                                for _ in range(algebra.n)])

    return BimoduleProjection(
        kind="cyclic-field",
        source_ops=cyclic_ops(algebra),
        target_ops=nfield_ops(algebra.field),
        apply=algebra.p_to_field,
        embed=algebra.embed,
        sample_source=sample_source,
        sample_target=lambda rng: random_nf(algebra.field, rng),
        sos_decider=decider,
    )


def cyclic_trace_map(algebra) -> BimoduleProjection:
    """Normalized trace of a cyclic algebra down to Q: the composite of the
    grade-0 projection with the field trace."""
    return compose(field_trace_map(algebra.field), cyclic_field_map(algebra))


def matrix_average_map(algebra) -> BimoduleProjection:
    """Averaging projection M_n(L) -> cyclic algebra."""

    def sample_source(rng):
        return [[random_nf(algebra.field, rng) for _ in range(algebra.n)]
                for _ in range(algebra.n)]

    return BimoduleProjection(
        kind="matrix-average",
        source_ops=matrix_field_ops(algebra),
        target_ops=cyclic_ops(algebra),
        apply=algebra.frak_p,
        embed=algebra.epsilon,
        sample_source=sample_source,
        sample_target=lambda rng: algebra.element(
            [[_rand_fraction(rng) for _ in range(algebra.field.degree)]
             for _ in range(algebra.n)]),
    )


def functional_map(algebra: PolyAlgebra, values: dict,
                   max_degree: int | None = None) -> BimoduleProjection:
    """Normalized hermitian functional phi/phi(1) as a projection onto the
    scalars F*1 inside a polynomial algebra.

    values maps exponent tuples to Scalars; unlisted monomials go to zero.
    phi must be hermitian (phi(f*) = conj phi(f)) and phi(1) nonzero.
    """
    vals = {tuple(e): Scalar.of(c) for e, c in values.items()}
    unit = vals.get((0,) * len(algebra.generators), Scalar(0))
    if unit.is_zero():
        raise ValueError("functional must not vanish at 1")

    def phi(f: Poly) -> Scalar:
        total = Scalar(0)
        for e, c in f.coeffs.items():
            w = vals.get(e)
            if w is not None:
                total = total + c * w
        return total

    for e in list(vals):
        mono = algebra.monomial(e, Scalar(1))
        if phi(mono.star()) != phi(mono).conj():
            raise ValueError("functional is not hermitian")

    def apply(f: Poly) -> Poly:
        return algebra.constant(phi(f) / unit)

    def decider(f: Poly):
        c = f.coefficient((0,) * len(algebra.generators))
        if f != algebra.constant(c):
            return None
        return c.is_real() and c.sign() >= 0

    ops = poly_ops(algebra)
    tgt_ops = AlgebraOps("F", ops.add, ops.mul, ops.star, ops.eq, ops.one)
    max_degree = max_degree if max_degree is not None else max(
        (sum(e) for e in vals), default=0)
    return BimoduleProjection(
        kind="functional",
        source_ops=ops,
        target_ops=tgt_ops,
        apply=apply,
        embed=lambda b: b,
        sample_source=lambda rng: random_poly(algebra, rng, degree=max(1, max_degree // 2)),
        sample_target=lambda rng: algebra.constant(_rand_fraction(rng)),
        sos_decider=decider,
    )


def point_evaluation_map(nalg: PolyAlgebra | None = None, at=0) -> BimoduleProjection:
    """Evaluation of C[N] at a point, as a projection onto the scalars."""
    nalg = nalg or weyl.NUMBER_ALGEBRA
    at = Fraction(at)

    def apply(f: Poly) -> Poly:
        return nalg.constant(f.evaluate([at]))

    ops = poly_ops(nalg)
    tgt_ops = AlgebraOps("F", ops.add, ops.mul, ops.star, ops.eq, ops.one)

    def decider(f: Poly):
        c = f.coefficient((0,))
        if f != nalg.constant(c):
            return None
        return c.is_real() and c.sign() >= 0

    return BimoduleProjection(
        kind=f"eval[{at}]",
        source_ops=ops,
        target_ops=tgt_ops,
        apply=apply,
        embed=lambda b: b,
        sample_source=lambda rng: random_poly(nalg, rng, degree=3),
        sample_target=lambda rng: nalg.constant(_rand_fraction(rng)),
        sos_decider=decider,
    )


def vacuum_map() -> BimoduleProjection:
    """The vacuum functional of the Weyl algebra, as evaluation at 0 after
    the grading projection."""
    return compose(point_evaluation_map(), weyl_grading_projection())


def parity_tower_map(var: str = "x") -> BimoduleProjection:
    """The composite even-part projection R[x] -> R[x^2] -> R[x^4], the
    standard example of two conditional expectations whose composite fails
    CE5."""
    algebra = polyalg.real_line(var)
    p1 = parity_map(algebra, var, step=1)
    p2 = parity_map(algebra, var, step=2)
    composite = compose(p2, p1)
    x = algebra.gen(var)
    return BimoduleProjection(
        kind=composite.kind,
        source_ops=composite.source_ops,
        target_ops=composite.target_ops,
        apply=composite.apply,
        embed=composite.embed,
        sample_source=composite.sample_source,
        sample_target=composite.sample_target,
        sos_decider=composite.sos_decider,
        fixed_samples=(x ** 3 - x,),
    )
