"""Matrix *-algebras M_N(B) over a commutative polynomial base.

Carries the entrywise-star-transpose involution, the normalized trace, the
signed-cyclic group of order N 2^N acting by conjugation (whose average is
exactly the normalized trace), and a sound-but-incomplete refuter for
positive semidefiniteness on a semialgebraic set: sample points inside the
set where the evaluated matrix fails an exact PSD test are returned as
witnesses; silence proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .polyalg import Poly, PolyAlgebra
from .scalars import Scalar


class MatPoly:
    """Square matrix with entries in a shared polynomial algebra."""

    __slots__ = ("algebra", "size", "entries")

    def __init__(self, algebra: PolyAlgebra, entries):
        self.algebra = algebra
        self.size = len(entries)
        for row in entries:
            if len(row) != self.size:
                raise ValueError("matrix must be square")
        self.entries = [[self._lift(x) for x in row] for row in entries]

    def _lift(self, x) -> Poly:
        if isinstance(x, Poly):
            if x.algebra != self.algebra:
                raise ValueError("entry from a different algebra")
            return x
        return self.algebra.constant(x)

    @staticmethod
    def identity(algebra: PolyAlgebra, n: int) -> "MatPoly":
        one, zero = algebra.one(), algebra.zero()
        return MatPoly(algebra, [[one if i == j else zero for j in range(n)]
                                 for i in range(n)])

    @staticmethod
    def unit(algebra: PolyAlgebra, n: int, i: int, j: int) -> "MatPoly":
        zero = algebra.zero()
        rows = [[zero] * n for _ in range(n)]
        rows[i][j] = algebra.one()
        return MatPoly(algebra, rows)

    def _check(self, other):
        if self.algebra != other.algebra or self.size != other.size:
            raise ValueError("incompatible matrices")

    def __eq__(self, other):
        if not isinstance(other, MatPoly):
            return NotImplemented
        return (self.algebra == other.algebra and self.size == other.size
                and self.entries == other.entries)

    def __add__(self, other):
        self._check(other)
        return MatPoly(self.algebra,
                       [[a + b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return MatPoly(self.algebra, [[-a for a in row] for row in self.entries])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, Poly)):
            return MatPoly(self.algebra,
                           [[a * other for a in row] for row in self.entries])
        self._check(other)
        n = self.size
        out = [[self.algebra.zero() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for k in range(n):
                if self.entries[i][k].is_zero():
                    continue
                for j in range(n):
                    out[i][j] = out[i][j] + self.entries[i][k] * other.entries[k][j]
        return MatPoly(self.algebra, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, Poly)):
            return self * other
        return NotImplemented

    def star(self) -> "MatPoly":
        n = self.size
        return MatPoly(self.algebra,
                       [[self.entries[j][i].star() for j in range(n)] for i in range(n)])

    def is_hermitian(self) -> bool:
        return self == self.star()

    def evaluate(self, point) -> list:
        """Entrywise evaluation; returns a Scalar matrix."""
        return [[x.evaluate(point) for x in row] for row in self.entries]

    def __repr__(self):
        rows = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"MatPoly[{rows}]"


def ntrace(a: MatPoly) -> Poly:
    """Normalized trace (1/N) (a_11 + ... + a_NN)."""
    total = a.algebra.zero()
    for i in range(a.size):
        total = total + a.entries[i][i]
    return total * Fraction(1, a.size)


# -- the signed-cyclic group action ------------------------------------------

def shift_matrix(algebra: PolyAlgebra, n: int) -> MatPoly:
    """Cyclic shift: ones above the diagonal, one in the bottom-left corner."""
    zero = algebra.zero()
    rows = [[zero] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = algebra.one()
    rows[n - 1][0] = algebra.one()
    return MatPoly(algebra, rows)

def group_matrix(algebra: PolyAlgebra, signs, j: int) -> MatPoly:
    """T_g for g = (i_1..i_N, j): sign diagonal times the j-th shift power."""
    n = len(signs)
    diag = MatPoly(algebra, [[algebra.constant((-1) ** signs[i]) if i == k
                              else algebra.zero() for k in range(n)]
                             for i in range(n)])
    out = diag
    shift = shift_matrix(algebra, n)
    for _ in range(j % n):
        out = out * shift
    return out


def group_elements(n: int):
    return product(product((0, 1), repeat=n), range(n))


def group_average(a: MatPoly) -> MatPoly:
    """Average of T_g* A T_g over the group of order N 2^N; coincides with
    ntrace(A) times the identity."""
    n = a.size
    total = None
    count = 0
    for signs, j in group_elements(n):
        t = group_matrix(a.algebra, signs, j)
        conj = t.star() * a * t
        total = conj if total is None else total + conj
        count += 1
    return total * Fraction(1, count)


# -- PSD-on-a-set refutation ---------------------------------------------------

@dataclass(frozen=True)
class SemialgebraicSet:
    """K = {x : p_1(x) >= 0, ..., p_m(x) >= 0} given by its defining list."""

    constraints: tuple

    def __init__(self, constraints):
        object.__setattr__(self, "constraints", tuple(constraints))

    def contains(self, point) -> bool:
        for p in self.constraints:
            v = p.evaluate(point)
            if not v.is_real():
                raise ValueError("constraint value is not real")
            if v.sign() < 0:
                return False
        return True


@dataclass(frozen=True)
class PsdRefutation:
    point: tuple
    direction: tuple   # v with v^T A(point) v < 0
    value: Scalar


def ind_tr_refute(a: MatPoly, s: SemialgebraicSet, points):
    """Try to refute positive semidefiniteness of a hermitian matrix
    polynomial on K_S at the given sample points.

    Returns a PsdRefutation for the first failing point inside the set, or
    None when every sampled point passes (which proves nothing).
    """
    if not a.is_hermitian():
        raise ValueError("matrix polynomial is not hermitian")
    for point in points:
        point = tuple(point)
        if not s.contains(point):
            continue
        m = a.evaluate(point)
        witness = linalg.psd_witness(m)
        if witness is not None:
            value = linalg.quad_form(m, witness)
            return PsdRefutation(point, tuple(witness), value)
    return None


def grid_points(box, n: int):
    """Rational grid with n+1 evenly spaced points per box axis."""
    axes = []
    for lo, hi in box:
        lo, hi = Fraction(lo), Fraction(hi)
        if n == 0:
            axes.append([lo])
        else:
            axes.append([lo + (hi - lo) * k / n for k in range(n + 1)])
    return list(product(*axes))
