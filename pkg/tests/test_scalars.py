"""Field axioms, exact sign decisions, and conjugation on Q(i, sqrt2)."""

from fractions import Fraction

import pytest

from conftest import rand_nonzero_scalar, rand_scalar
from starpos.scalars import I, ONE, SQRT2, Scalar, ZERO, parse_rational


def test_sign_zero():
    assert ZERO.sign() == 0


def test_sign_one_minus_sqrt2():
    assert (ONE - SQRT2).sign() == -1


def test_sign_mixed_fraction_case():
    # (3/4)^2 = 9/16 beats 2 (1/2)^2 = 8/16
    s = Scalar(Fraction(3, 4), Fraction(-1, 2))
    assert s.sign() == 1


def test_sign_rejects_complex():
    with pytest.raises(ValueError):
        (I + 1).sign()


def test_norm_of_one_plus_i():
    assert (ONE + I) * (ONE - I) == Scalar(2)


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == Scalar(2)


def test_conj_of_i_sqrt2():
    assert (I * SQRT2).conj() == -(I * SQRT2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_parse_rational_decimal_exact():
    assert parse_rational("1.4") == Fraction(7, 5)
    assert parse_rational("-0.25") == Fraction(-1, 4)
    assert parse_rational("3/4") == Fraction(3, 4)


def test_field_axioms_random(rng):
    for _ in range(200):
        x, y, z = (rand_scalar(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        assert x * y == y * x


def test_inverse_round_trip(rng):
    for _ in range(100):
        x = rand_nonzero_scalar(rng)
        assert x * x.inv() == ONE
        assert (ONE / x) * x == ONE


def test_sign_multiplicative_on_reals(rng):
    for _ in range(200):
        x = rand_scalar(rng, real=True)
        y = rand_scalar(rng, real=True)
        assert (x * y).sign() == x.sign() * y.sign()


def test_conj_involution_and_positivity(rng):
    for _ in range(200):
        x = rand_scalar(rng)
        assert x.conj().conj() == x
        norm = x.conj() * x
        assert norm.is_real()
        assert norm.sign() >= 0
        assert (norm.sign() == 0) == x.is_zero()


def test_sign_agrees_with_float(rng):
    for _ in range(300):
        x = rand_scalar(rng, real=True)
        approx = float(x)
        if abs(approx) > 1e-9:
            assert x.sign() == (1 if approx > 0 else -1)


def test_power_and_hash():
    assert SQRT2 ** 4 == Scalar(4)
    assert SQRT2 ** (-2) == Scalar(Fraction(1, 2))
    assert len({SQRT2, Scalar(0, 1), I}) == 2


def test_ordering_comparisons():
    assert SQRT2 > 1
    assert SQRT2 < Fraction(3, 2)
    assert not SQRT2 <= 1
