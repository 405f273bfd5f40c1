import random
from fractions import Fraction

import pytest

from starpos.scalars import Scalar


@pytest.fixture
def rng():
    return random.Random(20240817)


def rand_fraction(rng, span=6, den=4):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_scalar(rng, span=5, real=False):
    if real:
        return Scalar(rand_fraction(rng, span), rand_fraction(rng, span))
    return Scalar(rand_fraction(rng, span), rand_fraction(rng, span),
                  rand_fraction(rng, span), rand_fraction(rng, span))


def rand_nonzero_scalar(rng, span=5, real=False):
    while True:
        s = rand_scalar(rng, span, real)
        if not s.is_zero():
            return s
