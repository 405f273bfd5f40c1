"""The Weyl algebra C<a, a* | a a* - a* a = 1> with exact arithmetic.

Elements are kept in normal order: maps (m, n) -> coefficient standing for
sums of (a*)^m a^n.  The X,Y presentation (X hermitian, Y skew, YX - XY = 1)
and the p,q presentation (both hermitian, pq - qp = -i) are views obtained
by exact linear substitution over Q(i, sqrt2); all three share one
reordering engine.  The Z-grading by ladder index, its projection onto
polynomials in the number operator N = a*a, the grading norms e_k* e_k and
the two graded monomial orderings used for leading-term analysis live here.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import ratpoly
from .polyalg import Poly, PolyAlgebra
from .scalars import INV_SQRT2, Scalar

# The coefficient algebra C[N] of the grading; one shared instance so that
# Poly equality works across modules.
NUMBER_ALGEBRA = PolyAlgebra(["N"], label="C[N]")


# -- generic normal-ordering engine -----------------------------------------
#
# Keys (m, n) stand for raiser^m lower^n with lower*raiser = raiser*lower + comm.
# All three presentations use this: (a*, a) and (X, Y) with comm = 1,
# (p, q) with comm = i.

def _map_mul(u: dict, v: dict, comm: Scalar) -> dict:
    out: dict = {}
    for (m1, n1), c1 in u.items():
        for (m2, n2), c2 in v.items():
            base = c1 * c2
            for k in range(min(n1, m2) + 1):
                coef = base * (math.factorial(k) * math.comb(n1, k) * math.comb(m2, k))
                if k:
                    coef = coef * comm ** k
                key = (m1 + m2 - k, n1 + n2 - k)
                acc = out.get(key)
                out[key] = coef if acc is None else acc + coef
    return {k: c for k, c in out.items() if not c.is_zero()}


def _map_pow(u: dict, n: int, comm: Scalar) -> dict:
    out = {(0, 0): Scalar(1)}
    for _ in range(n):
        out = _map_mul(out, u, comm)
    return out


_ONE = Scalar(1)
_I = Scalar(0, 0, 1)


class WeylElement:
    """Normal-ordered element sum c_{mn} (a*)^m a^n."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict):
        self.coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "WeylElement":
        return WeylElement({})

    @staticmethod
    def one() -> "WeylElement":
        return WeylElement({(0, 0): Scalar(1)})

    @staticmethod
    def scalar(c) -> "WeylElement":
        return WeylElement({(0, 0): Scalar.of(c)})

    @staticmethod
    def annihilator() -> "WeylElement":
        return WeylElement({(0, 1): Scalar(1)})

    @staticmethod
    def creator() -> "WeylElement":
        return WeylElement({(1, 0): Scalar(1)})

    @staticmethod
    def monomial(m: int, n: int, c=1) -> "WeylElement":
        return WeylElement({(m, n): Scalar.of(c)})

    # -- ring structure ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = WeylElement.scalar(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Scalar(0)) + c
        return WeylElement(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = WeylElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            c = Scalar.of(other)
            return WeylElement({k: v * c for k, v in self.coeffs.items()})
        return WeylElement(_map_mul(self.coeffs, other.coeffs, _ONE))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power in the Weyl algebra")
        out = WeylElement.one()
        base = self
        for _ in range(n):
            out = out * base
        return out

    def star(self) -> "WeylElement":
        """Involution: swap (m, n), conjugate coefficients; a <-> a*."""
        out: dict = {}
        for (m, n), c in self.coeffs.items():
            key = (n, m)
            out[key] = out.get(key, Scalar(0)) + c.conj()
        return WeylElement(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_hermitian(self) -> bool:
        return self == self.star()

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(m + n for m, n in self.coeffs)

    def coefficient(self, m: int, n: int) -> Scalar:
        return self.coeffs.get((m, n), Scalar(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = WeylElement.scalar(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return f"WeylElement({format_normal(self)})"


def format_normal(x, raiser="ast", lower="a") -> str:
    coeffs = x.coeffs if isinstance(x, WeylElement) else x
    if not coeffs:
        return "0"
    parts = []
    keys = sorted(coeffs, key=lambda k: (k[0] + k[1], k[0]), reverse=True)
    for m, n in keys:
        c = coeffs[(m, n)]
        factors = []
        if m == 1:
            factors.append(raiser)
        elif m > 1:
            factors.append(f"{raiser}^{m}")
        if n == 1:
            factors.append(lower)
        elif n > 1:
            factors.append(f"{lower}^{n}")
        body = "*".join(factors)
        cs = str(c)
        negated = cs.startswith("-") and " " not in cs
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


# -- distinguished elements ---------------------------------------------------

def gen_a() -> WeylElement:
    return WeylElement.annihilator()


def gen_astar() -> WeylElement:
    return WeylElement.creator()


def number_op() -> WeylElement:
    """N = a* a."""
    return WeylElement({(1, 1): Scalar(1)})


def x_elem() -> WeylElement:
    """X = (a + a*) / sqrt2, hermitian."""
    return WeylElement({(0, 1): INV_SQRT2, (1, 0): INV_SQRT2})


def y_elem() -> WeylElement:
    """Y = (a - a*) / sqrt2, skew-hermitian."""
    return WeylElement({(0, 1): INV_SQRT2, (1, 0): -INV_SQRT2})


def ladder(k: int) -> WeylElement:
    """e_k = a^k for k >= 0, (a*)^{-k} for k < 0."""
    if k >= 0:
        return WeylElement({(0, k): Scalar(1)})
    return WeylElement({(-k, 0): Scalar(1)})


# -- presentation views -------------------------------------------------------

_A_XY = {(1, 0): INV_SQRT2, (0, 1): INV_SQRT2}            # a in X,Y
_ASTAR_XY = {(1, 0): INV_SQRT2, (0, 1): -INV_SQRT2}       # a* in X,Y
_A_PQ = {(1, 0): _I * INV_SQRT2, (0, 1): INV_SQRT2}       # a in p,q
_ASTAR_PQ = {(1, 0): -_I * INV_SQRT2, (0, 1): INV_SQRT2}  # a* in p,q


_POWER_CACHE: dict = {}


def _cached_power(tag: str, img: dict, n: int, comm: Scalar) -> dict:
    cache = _POWER_CACHE.setdefault(tag, {0: {(0, 0): Scalar(1)}})
    if n not in cache:
        cache[n] = _map_mul(_cached_power(tag, img, n - 1, comm), img, comm)
    return cache[n]


def _convert(x: WeylElement, tag: str, raiser_img: dict, lower_img: dict,
             comm: Scalar) -> dict:
    """Push the (a*, a) normal form through a substitution into another
    reordering engine; returns the canonical coefficient map there."""
    out: dict = {}
    for (m, n), c in x.coeffs.items():
        term = _map_mul(_cached_power(tag + ".r", raiser_img, m, comm),
                        _cached_power(tag + ".l", lower_img, n, comm), comm)
        for key, v in term.items():
            out[key] = out.get(key, Scalar(0)) + c * v
    return {k: c for k, c in out.items() if not c.is_zero()}


def to_xy(x: WeylElement) -> dict:
    """Canonical X,Y coefficients: keys (m, n) stand for X^m Y^n."""
    return _convert(x, "xy", _ASTAR_XY, _A_XY, _ONE)


def from_xy(xy_coeffs: dict) -> WeylElement:
    """Inverse of :func:`to_xy`: X = (a + a*)/sqrt2, Y = (a - a*)/sqrt2."""
    x_el, y_el = x_elem(), y_elem()
    out = WeylElement.zero()
    xpow = {0: WeylElement.one()}
    ypow = {0: WeylElement.one()}

    def power(cache, base, n):
        if n not in cache:
            cache[n] = power(cache, base, n - 1) * base
        return cache[n]

    for (m, n), c in xy_coeffs.items():
        out = out + power(xpow, x_el, m) * power(ypow, y_el, n) * Scalar.of(c)
    return out


def to_pq(x: WeylElement) -> dict:
    """Canonical p,q coefficients: keys (m, n) stand for p^m q^n."""
    return _convert(x, "pq", _ASTAR_PQ, _A_PQ, _I)


def format_xy(x: WeylElement) -> str:
    return format_normal(to_xy(x), raiser="X", lower="Y")


# -- grading -----------------------------------------------------------------

def falling_factorial(j: int) -> list:
    """t (t-1) ... (t-j+1) as ascending rational coefficients."""
    p = [Fraction(1)]
    for i in range(j):
        p = ratpoly.mul(p, [Fraction(-i), Fraction(1)])
    return p


def rising_factorial(j: int) -> list:
    """(t+1)(t+2) ... (t+j)."""
    p = [Fraction(1)]
    for i in range(1, j + 1):
        p = ratpoly.mul(p, [Fraction(i), Fraction(1)])
    return p


def ek_star_ek(k: int) -> Poly:
    """e_k* e_k as a polynomial in N: falling factorial for k > 0, rising
    for k < 0, constant 1 at k = 0."""
    if k > 0:
        coeffs = falling_factorial(k)
    elif k < 0:
        coeffs = rising_factorial(-k)
    else:
        coeffs = [Fraction(1)]
    return NUMBER_ALGEBRA.from_univariate(coeffs)


def grading_decompose(x: WeylElement) -> dict:
    """Unique decomposition x = sum_k e_k f_k(N); returns {k: f_k}."""
    pieces: dict = {}
    for (m, n), c in x.coeffs.items():
        k = n - m
        if k >= 0:
            # (a*)^m a^n = e_k * FF_m(N - k)
            base = ratpoly.shift(falling_factorial(m), -k)
        else:
            # (a*)^m a^n = e_k * FF_n(N)
            base = falling_factorial(n)
        poly = NUMBER_ALGEBRA.from_univariate(base) * c
        pieces[k] = pieces.get(k, NUMBER_ALGEBRA.zero()) + poly
    return {k: f for k, f in pieces.items() if not f.is_zero()}


def poly_in_n(f: Poly) -> WeylElement:
    """Substitute N = a* a into a univariate polynomial (the embedding of
    the grading subalgebra back into the Weyl algebra)."""
    n_el = number_op()
    out = WeylElement.zero()
    for (k,), c in f.coeffs.items():
        out = out + n_el ** k * c
    return out


def reassemble(pieces: dict) -> WeylElement:
    """Inverse of :func:`grading_decompose`."""
    out = WeylElement.zero()
    for k, f in pieces.items():
        out = out + ladder(k) * poly_in_n(f)
    return out


def grading_component(x: WeylElement, k: int) -> Poly:
    return grading_decompose(x).get(k, NUMBER_ALGEBRA.zero())


# -- monomial orderings and leading data --------------------------------------

ORD1 = "ord1"  # graded, ties broken by ascending q-exponent
ORD2 = "ord2"  # graded, ties broken by ascending p-exponent


def ordering_key(ordering: str):
    if ordering == ORD1:
        return lambda mn: (mn[0] + mn[1], mn[1])
    if ordering == ORD2:
        return lambda mn: (mn[0] + mn[1], mn[0])
    raise ValueError(f"unknown monomial ordering {ordering!r}")


def leading(x: WeylElement, ordering: str):
    """Leading multidegree (p-exponent, q-exponent) and coefficient of the
    p,q canonical form under the given graded ordering."""
    pq = to_pq(x)
    if not pq:
        raise ValueError("leading term of the zero element")
    key = ordering_key(ordering)
    v = max(pq, key=key)
    return v, pq[v]


# -- named element families ---------------------------------------------------

def build_lk(k) -> WeylElement:
    """The family Y^2 X^2 Y^2 + (-Y)(X^4 - K X^2) Y, hermitian for real K."""
    kval = Scalar.of(k) if not isinstance(k, Scalar) else k
    x, y = x_elem(), y_elem()
    return y * y * x * x * y * y + (-y) * (x ** 4 - x * x * kval) * y
