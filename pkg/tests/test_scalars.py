from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oddhecke.errors import ModulusError, UnitError
from oddhecke.nsymq import split_weight_polynomial
from oddhecke.scalars import (ParamScalar, cyclotomic_degree, cyclotomic_poly, gaussian_binomial, q_gen,
                              q_power, scalar, scalar_arith, scalar_invert_unit)
from strategies import q_scalars, scalars

q = q_gen()
t = ParamScalar.gen("t")
u = ParamScalar.gen("u")


def qpoly(*coeffs, modulus=None):
    return ParamScalar({(d, 0, 0, 0): c for d, c in enumerate(coeffs) if c}, modulus)


def test_difference_of_squares():
    assert scalar_arith(q + 1, q - 1, "mul") == q ** 2 - 1


def test_cube_root_of_unity():
    q3 = q_gen(3)
    assert scalar_arith(q3 ** 2, q3, "mul") == scalar(1, 3)


def test_cancellation():
    assert scalar_arith(t + u, t - u, "add") == t * 2


def test_unknown_op():
    with pytest.raises(ValueError):
        scalar_arith(q, q, "div")


def test_zero_terms_dropped():
    s = ParamScalar({(1, 0, 0, 0): 0, (0, 0, 0, 0): 2})
    assert s.terms == {(0, 0, 0, 0): 2}
    assert not (q - q)
    assert str(q - q) == "0"


def test_rational_coefficients_normalise():
    half = ParamScalar.const(Fraction(2, 4))
    assert half * 2 == scalar(1)
    assert str(half) == "1/2"


def test_modulus_mismatch():
    with pytest.raises(ModulusError):
        q_gen(3) + q_gen(4)


def test_reduction_keeps_degrees_below_phi():
    for m in (3, 4, 5, 6, 12):
        x = q_power(17, m) + q_power(-5, m) * 3
        assert all(0 <= k[0] < cyclotomic_degree(m) for k in x.terms)


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_q_is_primitive_root(m):
    for k in range(1, m):
        assert q_power(k, m) != scalar(1, m)
    assert q_power(m, m) == scalar(1, m)


def test_invert_monomial():
    assert scalar_invert_unit(t * 2) == ParamScalar({(0, -1, 0, 0): Fraction(1, 2)})


def test_invert_root_of_unity():
    assert scalar_invert_unit(q_gen(3)) == q_power(2, 3)


def test_invert_non_unit():
    with pytest.raises(UnitError):
        scalar_invert_unit(t + u)
    with pytest.raises(UnitError):
        scalar_invert_unit(scalar(0))


def test_invert_non_monomial_in_quotient():
    x = q_gen(5) + 2
    assert x * x.inverse() == scalar(1, 5)


def test_polynomial_parameters_reject_negative_powers():
    with pytest.raises(UnitError):
        ParamScalar.gen("u", -1)
    with pytest.raises(UnitError):
        u.inverse()


def test_rendering():
    assert str(q ** 2 * 3 - t * u + 1) == "1 + 3*q^2 - t*u"
    assert str(ParamScalar.gen("alpha", 2) * q_power(-1)) == "q^-1*alpha^2"


def test_gaussian_binomial_values():
    assert gaussian_binomial(7, 2) == qpoly(1, 1, 2, 2, 3, 3, 3, 2, 2, 1, 1)
    assert gaussian_binomial(4, 2) == qpoly(1, 1, 2, 1, 1)
    for n in range(6):
        assert gaussian_binomial(n, 0) == scalar(1)
    assert gaussian_binomial(3, -1) == scalar(0)
    assert gaussian_binomial(3, 4) == scalar(0)


def test_gaussian_binomial_by_inversions():
    # sum over k-subsets S of {1..n} of q^(number of pairs i < j with i not in S, j in S)
    for n in range(7):
        for k in range(n + 1):
            total = scalar(0)
            for subset in combinations(range(n), k):
                inv = sum(1 for i in range(n) for j in subset if i < j and i not in subset)
                total = total + q_power(inv)
            assert gaussian_binomial(n, k) == total


def test_gaussian_recursion():
    for n in range(1, 11):
        for k in range(n + 1):
            rhs = q_power(k) * gaussian_binomial(n - 1, k) + gaussian_binomial(n - 1, k - 1)
            assert gaussian_binomial(n, k) == rhs


def test_gaussian_equals_tuple_sum():
    for n in range(9):
        for k in range(n + 1):
            assert gaussian_binomial(n, k) == split_weight_polynomial(n, k)


def test_gaussian_under_modulus():
    # at q = i: 1 + i - 2 - i + 1 = 0
    m = 4
    direct = gaussian_binomial(4, 2).with_modulus(m)
    assert gaussian_binomial(4, 2, modulus=m) == direct
    assert direct == scalar(0, m)


# -- properties -----------------------------------------------------------------

@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == scalar(0)


@given(st.sampled_from([2, 3, 4, 5, 6]), st.data())
def test_cyclotomic_reduction_is_homomorphism(m, data):
    a = data.draw(q_scalars())
    b = data.draw(q_scalars())
    assert (a * b).with_modulus(m) == a.with_modulus(m) * b.with_modulus(m)
    assert (a + b).with_modulus(m) == a.with_modulus(m) + b.with_modulus(m)


@given(st.sampled_from([3, 4, 5, 7]), st.integers(-8, 8))
def test_power_inverse_in_quotient(m, k):
    x = q_power(k, m)
    assert x * x.inverse() == scalar(1, m)
