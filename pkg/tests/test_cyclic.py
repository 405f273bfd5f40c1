"""Cyclic algebras: relations, embedding, projections, ordering criterion."""

from fractions import Fraction

import pytest

from conftest import rand_fraction
from starpos import numfield as nf
from starpos.cyclic import CyclicAlgebra, mat_eq, mat_identity, mat_mul


@pytest.fixture
def sqrt2_field():
    return nf.NumberField([-2, 0, 1])


@pytest.fixture
def quaternionic(sqrt2_field):
    # (Q(sqrt2)/Q, sigma, -1) with e* = -e
    sigma = sqrt2_field.automorphism([0, -1])
    return CyclicAlgebra(sqrt2_field, sigma, -1, [-1])


def rand_element(algebra, rng):
    return algebra.element([[rand_fraction(rng) for _ in range(algebra.field.degree)]
                            for _ in range(algebra.n)])


def test_defining_relations(quaternionic, sqrt2_field):
    e = quaternionic.e()
    theta = quaternionic.embed(sqrt2_field.generator())
    assert e * e == quaternionic.embed(sqrt2_field.rational(-1))
    sigma_theta = quaternionic.embed(quaternionic.sigma(sqrt2_field.generator()))
    assert theta * e == e * sigma_theta
    x = quaternionic.element([[1, 2], [3, 4]])
    assert quaternionic.one() * x == x
    assert x * quaternionic.one() == x


def test_mul_associative(quaternionic, rng):
    for _ in range(60):
        x, y, z = (rand_element(quaternionic, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_star_antimultiplicative(quaternionic, rng):
    for _ in range(60):
        x, y = rand_element(quaternionic, rng), rand_element(quaternionic, rng)
        assert (x * y).star() == y.star() * x.star()
        assert x.star().star() == x


def test_grading_star_compatibility(quaternionic):
    # component k goes to component -k mod n under the involution
    e = quaternionic.e()
    estar = e.star()
    assert estar.parts[0].is_zero()
    assert estar.parts[1] == quaternionic.field.rational(-1)  # e* = -e


def test_epsilon_relations(quaternionic, sqrt2_field, rng):
    eps_e = quaternionic.epsilon(quaternionic.e())
    power = eps_e
    for _ in range(quaternionic.n - 1):
        power = mat_mul(sqrt2_field, power, eps_e)
    a_id = quaternionic.epsilon(quaternionic.embed(sqrt2_field.rational(-1)))
    assert mat_eq(power, a_id)
    assert mat_eq(quaternionic.epsilon(quaternionic.one()),
                  mat_identity(sqrt2_field, 2))
    for _ in range(40):
        l = sqrt2_field.element([rand_fraction(rng), rand_fraction(rng)])
        lhs = mat_mul(sqrt2_field, quaternionic.epsilon(quaternionic.embed(l)), eps_e)
        rhs = mat_mul(sqrt2_field, eps_e,
                      quaternionic.epsilon(quaternionic.embed(quaternionic.sigma(l))))
        assert mat_eq(lhs, rhs)


def test_epsilon_multiplicative_and_star(quaternionic, sqrt2_field, rng):
    for _ in range(40):
        x, y = rand_element(quaternionic, rng), rand_element(quaternionic, rng)
        assert mat_eq(quaternionic.epsilon(x * y),
                      mat_mul(sqrt2_field, quaternionic.epsilon(x),
                              quaternionic.epsilon(y)))
        assert mat_eq(quaternionic.epsilon(x.star()),
                      quaternionic.tau(quaternionic.epsilon(x)))


def test_projection_inverts_embedding(quaternionic, rng):
    for _ in range(60):
        x = rand_element(quaternionic, rng)
        assert quaternionic.frak_p(quaternionic.epsilon(x)) == x


def test_projection_simple_values(quaternionic, sqrt2_field):
    zero = sqrt2_field.zero()
    l = sqrt2_field.element([Fraction(3), Fraction(1)])
    m = [[l, zero], [zero, zero]]  # E_11 tensor l
    assert quaternionic.frak_p(m) == quaternionic.embed(l * Fraction(1, 2))
    mz = [[zero, zero], [zero, zero]]
    assert quaternionic.frak_p(mz).is_zero()


def test_projection_bimodule_property(quaternionic, sqrt2_field, rng):
    # frak_p(eps(b1) M eps(b2)) = b1 frak_p(M) b2
    for _ in range(30):
        b1, b2 = rand_element(quaternionic, rng), rand_element(quaternionic, rng)
        m = [[sqrt2_field.element([rand_fraction(rng), rand_fraction(rng)])
              for _ in range(2)] for _ in range(2)]
        conj = mat_mul(sqrt2_field, quaternionic.epsilon(b1),
                       mat_mul(sqrt2_field, m, quaternionic.epsilon(b2)))
        assert quaternionic.frak_p(conj) == b1 * quaternionic.frak_p(m) * b2


def test_trace_tower(quaternionic, rng):
    for _ in range(60):
        x = rand_element(quaternionic, rng)
        assert quaternionic.ntrace(x) == nf.ntrace(quaternionic.p_to_field(x))
    assert quaternionic.ntrace(quaternionic.one()) == 1
    e = quaternionic.e()
    theta = quaternionic.embed(quaternionic.field.generator())
    assert quaternionic.p_to_field(e * theta).is_zero()


def test_trace_positive_on_squares(quaternionic, rng):
    # in the lambda > 0 instance the trace of x* x is a nonnegative rational
    for _ in range(60):
        x = rand_element(quaternionic, rng)
        assert quaternionic.ntrace(x.star() * x) >= 0


def test_lambdas_and_orderings(sqrt2_field):
    sigma = sqrt2_field.automorphism([0, -1])
    minus = CyclicAlgebra(sqrt2_field, sigma, -1, [-1])   # e* = -e
    assert minus.lambdas() == [sqrt2_field.one(), sqrt2_field.one()]
    assert minus.star_orderings_exist()

    plus = CyclicAlgebra(sqrt2_field, sigma, -1, [1])     # e* = e
    assert plus.lambdas() == [sqrt2_field.one(), sqrt2_field.rational(-1)]
    assert not plus.star_orderings_exist()

    split = CyclicAlgebra(sqrt2_field, sigma, 1, [1])     # a = +1, e* = e
    assert split.lambdas() == [sqrt2_field.one(), sqrt2_field.one()]
    assert split.star_orderings_exist()


def test_star_ordering_requires_totally_real():
    gauss = nf.NumberField([1, 0, 1])
    sigma = gauss.automorphism([0, -1])
    algebra = CyclicAlgebra(gauss, sigma, -1, [-1])
    with pytest.raises(ValueError):
        algebra.star_orderings_exist()


def test_invalid_involutions_rejected(sqrt2_field):
    sigma = sqrt2_field.automorphism([0, -1])
    with pytest.raises(ValueError, match="axiom"):
        CyclicAlgebra(sqrt2_field, sigma, -1, [0, 1])     # c = theta
    with pytest.raises(ValueError, match="order"):
        ident = sqrt2_field.automorphism([0, 1])
        CyclicAlgebra(sqrt2_field, ident, -1, [1])        # sigma must move theta


def test_sigma_twisted_star_unit_is_valid(sqrt2_field):
    # e* = (1 + theta) e fails star-of-star; the validator must name an axiom
    sigma = sqrt2_field.automorphism([0, -1])
    with pytest.raises(ValueError, match="axiom"):
        CyclicAlgebra(sqrt2_field, sigma, -1, [1, 1])


def test_general_n_cyclic_shift():
    # n = 3 cyclic field Q[x]/(x^3 - 3x + 1), sigma: theta -> theta^2 - 2
    field = nf.NumberField([1, -3, 0, 1])
    sigma = field.automorphism([-2, 0, 1])
    assert sigma.order() == 3
    algebra = CyclicAlgebra(field, sigma, 1, [1])   # e* = e^2, a = 1
    e = algebra.e()
    assert e * e * e == algebra.one()
    lam = algebra.lambdas()
    assert lam[0] == field.one()
    for x in (algebra.e(), algebra.embed(field.generator())):
        assert algebra.frak_p(algebra.epsilon(x)) == x
    assert algebra.star_orderings_exist()
