"""Exact linear algebra for hermitian matrices over Q(i, sqrt2).

Two independent routes to the inertia (n+, n-, n0) of a hermitian matrix:
pivoted congruence elimination (LDL-style, with 2x2 blocks when the whole
remaining diagonal vanishes), and Descartes sign variations on the exact
characteristic polynomial (valid because hermitian spectra are real).
The congruence route also produces explicit witness vectors v with
v* M v < 0 for matrices that are not positive semidefinite.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar

Matrix = list  # list[list[Scalar]]


def to_scalar_matrix(m) -> Matrix:
    return [[x if isinstance(x, Scalar) else Scalar.of(x) for x in row] for row in m]


def is_hermitian(m) -> bool:
    n = len(m)
    if any(len(row) != n for row in m):
        return False
    for i in range(n):
        for j in range(i, n):
            if m[i][j] != m[j][i].conj():
                return False
    return True


def mat_vec(m, v):
    return [sum((m[i][j] * v[j] for j in range(len(v))), Scalar(0)) for i in range(len(m))]


def quad_form(m, v):
    """v* M v for a column vector v."""
    mv = mat_vec(m, v)
    return sum((v[i].conj() * mv[i] for i in range(len(v))), Scalar(0))


def _check_hermitian(m):
    if not is_hermitian(m):
        raise ValueError("matrix is not hermitian")


def hermitian_inertia(m) -> tuple[int, int, int]:
    """(n+, n-, n0) by pivoted congruence elimination."""
    m = to_scalar_matrix(m)
    _check_hermitian(m)
    n = len(m)
    a = [row[:] for row in m]
    alive = list(range(n))
    pos = neg = 0
    while alive:
        pivot = next((i for i in alive if not a[i][i].is_zero()), None)
        if pivot is not None:
            d = a[pivot][pivot]
            if d.sign() > 0:
                pos += 1
            else:
                neg += 1
            alive.remove(pivot)
            for i in alive:
                if a[i][pivot].is_zero():
                    continue
                f = a[i][pivot] / d
                for j in alive:
                    a[i][j] = a[i][j] - f * a[pivot][j]
            continue
        # whole remaining diagonal is zero; look for an off-diagonal entry
        off = None
        for i in alive:
            for j in alive:
                if i != j and not a[i][j].is_zero():
                    off = (i, j)
                    break
            if off:
                break
        if off is None:
            break  # zero block: all remaining eigenvalues are 0
        i, j = off
        # 2x2 block [[0, m],[conj(m), 0]] contributes one +, one -
        pos += 1
        neg += 1
        mij = a[i][j]
        alive.remove(i)
        alive.remove(j)
        # Schur complement w.r.t. the 2x2 pivot P = [[0, mij],[mij*, 0]]:
        # inv(P) = [[0, 1/mij*],[1/mij, 0]]
        inv_m = mij.inv()
        inv_mc = mij.conj().inv()
        rows_i = a[i][:]
        rows_j = a[j][:]
        for r in alive:
            bi, bj = a[r][i], a[r][j]
            for c in alive:
                corr = bi * inv_mc * rows_j[c] + bj * inv_m * rows_i[c]
                a[r][c] = a[r][c] - corr
    return pos, neg, n - pos - neg


def psd_witness(m):
    """None if the hermitian matrix is PSD, else a vector v with v* M v < 0.

    A zero pivot with a nonzero residual row is itself definitive: the
    returned witness makes the quadratic form strictly negative.
    """
    m = to_scalar_matrix(m)
    _check_hermitian(m)
    n = len(m)
    a = [row[:] for row in m]
    # e accumulates row operations so that (E M E^H) equals the live block
    e = [[Scalar(1 if i == j else 0) for j in range(n)] for i in range(n)]
    alive = list(range(n))

    def lift(coeffs):
        # witness v = E^H c, i.e. v_t = sum_k conj(e[k][t]) c[k]
        v = [Scalar(0)] * n
        for k, ck in coeffs.items():
            for t in range(n):
                v[t] = v[t] + e[k][t].conj() * ck
        return v

    while alive:
        pivot = None
        for i in alive:
            s = a[i][i].sign()
            if s < 0:
                return lift({i: Scalar(1)})
            if s > 0 and pivot is None:
                pivot = i
        if pivot is None:
            # remaining diagonal all zero: any nonzero off-diagonal refutes
            for i in alive:
                for j in alive:
                    if i != j and not a[i][j].is_zero():
                        # c = e_i - conj(s) e_j gives c* A c = -2 |s|^2
                        s = a[i][j]
                        return lift({i: Scalar(1), j: -s.conj()})
            return None
        d = a[pivot][pivot]
        alive.remove(pivot)
        for i in alive:
            if a[i][pivot].is_zero():
                continue
            f = a[i][pivot] / d
            for t in range(n):
                e[i][t] = e[i][t] - f * e[pivot][t]
            for j in alive:
                a[i][j] = a[i][j] - f * a[pivot][j]
    return None


def is_psd(m) -> bool:
    return psd_witness(m) is None


# -- characteristic polynomial route (rational symmetric matrices) --------

def charpoly(m) -> list[Fraction]:
    """Coefficients of det(t I - M), ascending, for a rational square matrix.

    Faddeev-LeVerrier recursion; exact over Fractions.
    """
    n = len(m)
    m = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [row[:] for row in m]
    for k in range(1, n + 1):
        if k > 1:
            for i in range(n):
                mk[i][i] += coeffs[n - k + 1]
            mk = [[sum(m[i][t] * mk[t][j] for t in range(n)) for j in range(n)]
                  for i in range(n)]
        trace = sum(mk[i][i] for i in range(n))
        coeffs[n - k] = -trace / k
    return coeffs


def inertia_from_charpoly(m) -> tuple[int, int, int]:
    """(n+, n-, n0) of a symmetric rational matrix via Descartes counts on
    the characteristic polynomial (all roots real, so the counts are exact)."""
    n = len(m)
    for i in range(n):
        for j in range(i, n):
            if Fraction(m[i][j]) != Fraction(m[j][i]):
                raise ValueError("matrix is not symmetric")
    c = charpoly(m)
    n0 = 0
    while n0 <= n and c[n0] == 0:
        n0 += 1
    body = c[n0:]

    def variations(seq):
        signs = [(x > 0) - (x < 0) for x in seq if x != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    npos = variations(body)
    nneg = variations([(-1) ** k * body[k] for k in range(len(body))])
    return npos, nneg, n0
