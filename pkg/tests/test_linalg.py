"""Exact inertia and PSD checks against floating eigenvalue oracles."""

import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import rand_fraction
from starpos import linalg
from starpos.scalars import I, Scalar


def rand_symmetric(rng, n, span=4):
    m = [[rand_fraction(rng, span) for _ in range(n)] for _ in range(n)]
    return [[(m[i][j] + m[j][i]) / 2 for j in range(n)] for i in range(n)]


def rand_hermitian(rng, n):
    m = [[Scalar(rand_fraction(rng), 0, rand_fraction(rng)) for _ in range(n)]
         for _ in range(n)]
    out = [[Scalar(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = (m[i][j] + m[j][i].conj()) * Fraction(1, 2)
    return out


def eig_inertia(m, tol=1e-8):
    arr = np.array([[complex(Scalar.of(x) if not isinstance(x, Scalar) else x)
                     for x in row] for row in m])
    vals = np.linalg.eigvalsh(arr)
    return (int(np.sum(vals > tol)), int(np.sum(vals < -tol)),
            int(np.sum(np.abs(vals) <= tol)))


def test_known_inertias():
    assert linalg.hermitian_inertia([[1, 0], [0, -1]]) == (1, 1, 0)
    assert linalg.hermitian_inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert linalg.hermitian_inertia([[0, 0], [0, 0]]) == (0, 0, 2)
    assert linalg.hermitian_inertia([[2]]) == (1, 0, 0)


def test_inertia_matches_eigenvalues_symmetric():
    rng = random.Random(17)
    for _ in range(120):
        n = rng.randint(1, 6)
        m = rand_symmetric(rng, n)
        assert linalg.hermitian_inertia(m) == eig_inertia(m)


def test_inertia_matches_eigenvalues_hermitian():
    rng = random.Random(18)
    for _ in range(80):
        n = rng.randint(1, 5)
        m = rand_hermitian(rng, n)
        assert linalg.hermitian_inertia(m) == eig_inertia(m)


def test_singular_matrices_count_zeros():
    rng = random.Random(19)
    for _ in range(60):
        n = rng.randint(2, 5)
        r = rng.randint(1, n - 1)
        # rank-r Gram matrix: B^T B with B r x n
        b = [[rand_fraction(rng) for _ in range(n)] for _ in range(r)]
        m = [[sum(b[k][i] * b[k][j] for k in range(r)) for j in range(n)]
             for i in range(n)]
        pos, neg, zero = linalg.hermitian_inertia(m)
        assert neg == 0
        assert pos <= r
        assert pos + zero == n


def test_charpoly_route_agrees():
    rng = random.Random(20)
    for _ in range(120):
        n = rng.randint(1, 6)
        m = rand_symmetric(rng, n)
        assert linalg.inertia_from_charpoly(m) == linalg.hermitian_inertia(m)


def test_psd_witness_value_negative():
    rng = random.Random(21)
    found = 0
    for _ in range(150):
        n = rng.randint(1, 5)
        m = rand_symmetric(rng, n)
        w = linalg.psd_witness(m)
        if w is None:
            assert eig_inertia(m)[1] == 0
        else:
            found += 1
            value = linalg.quad_form(linalg.to_scalar_matrix(m), w)
            assert value.is_real() and value.sign() < 0
    assert found > 30


def test_psd_witness_hermitian():
    m = [[Scalar(0), I], [-I, Scalar(0)]]
    w = linalg.psd_witness(m)
    assert w is not None
    assert linalg.quad_form(m, w).sign() < 0


def test_psd_requires_hermitian():
    with pytest.raises(ValueError):
        linalg.psd_witness([[0, 1], [2, 0]])


def test_congruence_invariance():
    rng = random.Random(22)
    for _ in range(60):
        n = rng.randint(2, 4)
        m = rand_symmetric(rng, n)
        # random integer unimodular-ish transform: product of shears
        s = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for _ in range(4):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                c = rng.randint(-2, 2)
                for t in range(n):
                    s[i][t] += c * s[j][t]
        sms = [[sum(s[k][i] * m[k][l] * s[l][j] for k in range(n) for l in range(n))
                for j in range(n)] for i in range(n)]
        assert linalg.hermitian_inertia(sms) == linalg.hermitian_inertia(m)


def test_charpoly_known():
    c = linalg.charpoly([[0, 1], [1, 0]])
    assert c == [Fraction(-1), Fraction(0), Fraction(1)]
