"""Commutative *-polynomial algebras over Q(i, sqrt2).

An algebra fixes an ordered list of generators and an involution given by a
permutation of the generators (identity for real variables, or the swap
z <-> zb for conjugate pairs).  Elements are sparse exponent maps.  The
module also hosts the parity and charge projections and the exact
univariate nonnegativity deciders (over R, the half-line, and N0).
"""

from __future__ import annotations

from fractions import Fraction

from . import ratpoly
from .scalars import Scalar


class PolyAlgebra:
    """Polynomial *-algebra with named generators and a permutation involution."""

    def __init__(self, generators, involution=None, label=None):
        self.generators = tuple(generators)
        n = len(self.generators)
        if involution is None:
            involution = tuple(range(n))
        else:
            involution = tuple(self.generators.index(g) if isinstance(g, str) else g
                               for g in involution)
        if sorted(involution) != list(range(n)):
            raise ValueError("involution must permute the generators")
        for i, j in enumerate(involution):
            if involution[j] != i:
                raise ValueError("involution map is not an involution")
        self.involution = involution
        self.label = label or "poly(" + ",".join(self.generators) + ")"

    def __repr__(self):
        return f"PolyAlgebra({self.label})"

    def __eq__(self, other):
        return (isinstance(other, PolyAlgebra)
                and self.generators == other.generators
                and self.involution == other.involution)

    def __hash__(self):
        return hash((self.generators, self.involution))

    # -- element constructors -------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        c = Scalar.of(c)
        if c.is_zero():
            return self.zero()
        return Poly(self, {(0,) * len(self.generators): c})

    def gen(self, name_or_index) -> "Poly":
        i = (self.generators.index(name_or_index)
             if isinstance(name_or_index, str) else name_or_index)
        exp = [0] * len(self.generators)
        exp[i] = 1
        return Poly(self, {tuple(exp): Scalar(1)})

    def monomial(self, exponents, coeff=1) -> "Poly":
        c = Scalar.of(coeff)
        if c.is_zero():
            return self.zero()
        return Poly(self, {tuple(exponents): c})

    def from_univariate(self, coeffs) -> "Poly":
        """Build from ascending coefficients; requires one generator."""
        if len(self.generators) != 1:
            raise ValueError("from_univariate needs a univariate algebra")
        return Poly(self, {(k,): Scalar.of(c) for k, c in enumerate(coeffs)
                           if Scalar.of(c)})


def real_line(name="x") -> PolyAlgebra:
    return PolyAlgebra([name])


def conj_pair(z="z", zb="zb") -> PolyAlgebra:
    return PolyAlgebra([z, zb], involution=[zb, z])


class Poly:
    """Sparse polynomial; exponent tuples map to nonzero Scalars."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: PolyAlgebra, coeffs: dict):
        self.algebra = algebra
        self.coeffs = {e: c for e, c in coeffs.items() if not c.is_zero()}

    def _check(self, other):
        if self.algebra != other.algebra:
            raise ValueError("polynomials from different algebras")

    def terms(self):
        return sorted(self.coeffs.items(),
                      key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.algebra.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.algebra, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.algebra.constant(other)
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Scalar(0)) + c
        return Poly(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.algebra, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.algebra.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            c = Scalar.of(other)
            return Poly(self.algebra, {e: v * c for e, v in self.coeffs.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Scalar(0)) + c1 * c2
        return Poly(self.algebra, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self.algebra.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def star(self) -> "Poly":
        """Conjugate coefficients and permute generators by the involution."""
        perm = self.algebra.involution
        out = {}
        for e, c in self.coeffs.items():
            img = [0] * len(e)
            for i, k in enumerate(e):
                img[perm[i]] += k
            key = tuple(img)
            out[key] = out.get(key, Scalar(0)) + c.conj()
        return Poly(self.algebra, out)

    def is_hermitian(self) -> bool:
        return self == self.star()

    def evaluate(self, point):
        """Value at a point given as one Scalar/Fraction per generator."""
        vals = [Scalar.of(x) for x in point]
        if len(vals) != len(self.algebra.generators):
            raise ValueError("wrong number of coordinates")
        total = Scalar(0)
        for e, c in self.coeffs.items():
            term = c
            for x, k in zip(vals, e):
                term = term * x ** k
            total = total + term
        return total

    def coefficient(self, exponents) -> Scalar:
        return self.coeffs.get(tuple(exponents), Scalar(0))

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def degree_in(self, var) -> int:
        i = self.algebra.generators.index(var) if isinstance(var, str) else var
        if not self.coeffs:
            return -1
        return max(e[i] for e in self.coeffs)

    # -- univariate views -------------------------------------------------

    def univariate(self) -> list:
        """Ascending Scalar coefficients; requires one generator."""
        if len(self.algebra.generators) != 1:
            raise ValueError("not univariate")
        n = self.degree()
        out = [Scalar(0)] * (n + 1)
        for (k,), c in self.coeffs.items():
            out[k] = c
        return out

    def rational_coeffs(self) -> list:
        """Ascending Fractions after clearing sqrt2 content.

        Coefficients must be real; if every coefficient is a pure sqrt2
        multiple the positive factor sqrt2 is divided out, anything else
        irrational is refused.
        """
        coeffs = self.univariate()
        if any(not c.is_real() for c in coeffs):
            raise ValueError("polynomial has non-real coefficients")
        if all(c.r == 0 for c in coeffs) and any(c.s != 0 for c in coeffs):
            inv_sqrt2 = Scalar(0, Fraction(1, 2))
            coeffs = [c * inv_sqrt2 for c in coeffs]  # positive factor, sign-safe
        if any(c.s != 0 for c in coeffs):
            raise ValueError("irrational real coefficients are not supported here")
        return ratpoly.trim([c.r for c in coeffs])

    # -- printing ----------------------------------------------------------

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        gens = self.algebra.generators
        parts = []
        for e, c in self.terms():
            factors = []
            for g, k in zip(gens, e):
                if k == 1:
                    factors.append(g)
                elif k > 1:
                    factors.append(f"{g}^{k}")
            body = "*".join(factors)
            cs = str(c)
            negated = cs.startswith("-") and "+" not in cs and " - " not in cs[1:]
            mag = cs[1:] if negated else cs
            if " " in mag:
                mag = f"({mag})"
            if body:
                text = body if mag == "1" else f"{mag}*{body}"
            else:
                text = mag
            if not parts:
                parts.append(f"-{text}" if negated else text)
            else:
                parts.append(f"- {text}" if negated else f"+ {text}")
        return " ".join(parts)


# -- projections -----------------------------------------------------------

def parity_projection(f: Poly, var, step: int = 1) -> Poly:
    """Average of f over the sign flip of var (as an element of the step
    subalgebra): keeps exponents divisible by 2*step.

    step=1 is the plain even-part map x -> (f(x) + f(-x))/2; step=2 is the
    same map seen on the subalgebra generated by var^2, and so on.  Input
    exponents must already be multiples of step.
    """
    alg = f.algebra
    i = alg.generators.index(var) if isinstance(var, str) else var
    out = {}
    for e, c in f.coeffs.items():
        k = e[i]
        if k % step != 0:
            raise ValueError(f"exponent {k} of {alg.generators[i]} is not in the "
                             f"step-{step} subalgebra")
        if k % (2 * step) == 0:
            out[e] = c
    return Poly(alg, out)


def charge_projection(f: Poly, target: PolyAlgebra | None = None) -> Poly:
    """Projection of C[z, zb] onto C[t], t = z*zb: keeps balanced monomials.

    Agrees with the circle-action average that rotates z and zb oppositely.
    """
    alg = f.algebra
    if len(alg.generators) != 2 or alg.involution != (1, 0):
        raise ValueError("charge projection needs a conjugate-pair algebra")
    if target is None:
        target = real_line("t")
    out = {}
    for (a, b), c in f.coeffs.items():
        if a == b:
            key = (a,)
            out[key] = out.get(key, Scalar(0)) + c
    return Poly(target, out)


# -- nonnegativity ----------------------------------------------------------

DOMAINS = ("R", "halfline", "N0")


def nonneg_on(f: Poly, domain: str) -> bool:
    """Exact nonnegativity of a univariate real polynomial on R, on the
    half-line [0, oo), or on the integer points N0."""
    if domain not in DOMAINS:
        raise ValueError(f"unknown domain {domain!r}; expected one of {DOMAINS}")
    p = f.rational_coeffs()
    if domain == "R":
        return ratpoly.nonneg_on_reals(p)
    if domain == "halfline":
        return ratpoly.nonneg_on_halfline(p)
    return ratpoly.nonneg_on_naturals(p)
