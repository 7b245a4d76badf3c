import cmath
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gtqd.cyclotomic import Cyclotomic, cyclotomic_polynomial, euler_phi, root_of_unity

x = sympy.Symbol("x")


@pytest.mark.parametrize("m", list(range(1, 41)) + [60, 84, 120])
def test_cyclotomic_polynomial_matches_sympy(m):
    want = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(m)) == [int(c) for c in want]
    assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)


def test_small_identities():
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    z3 = root_of_unity(3)
    assert z3 + z3 ** 2 + 1 == 0
    z8 = root_of_unity(8)
    assert (z8 + z8.inv()) ** 2 == 2
    assert (1 + z8).inv() * (1 + z8) == 1
    assert root_of_unity(4) ** 2 == -1


def test_equality_across_orders():
    assert root_of_unity(4, 1) == root_of_unity(8, 2)
    assert root_of_unity(6, 3) == Cyclotomic.from_rational(-1)
    assert hash(root_of_unity(4, 1)) == hash(root_of_unity(12, 3))
    assert Cyclotomic.from_rational(Fraction(1, 2), 5) == Fraction(1, 2)


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.from_rational(0, 7).inv()


def test_json_round_trip():
    a = root_of_unity(20, 3) * 3 - Fraction(2, 7)
    assert Cyclotomic.from_json(a.to_json()) == a


orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 20, 24])


@st.composite
def elements(draw, order=None):
    m = order if order is not None else draw(orders)
    k = draw(st.integers(1, 4))
    terms = draw(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, m - 1), st.integers(1, 3)), min_size=0, max_size=k))
    out = Cyclotomic.from_rational(0, m)
    for c, e, d in terms:
        out = out + root_of_unity(m, e) * Fraction(c, d)
    return out


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9


@settings(max_examples=150, deadline=None)
@given(elements(), elements())
def test_field_operations_agree_with_complex_embedding(a, b):
    assert close((a + b).embed_complex(), a.embed_complex() + b.embed_complex())
    assert close((a * b).embed_complex(), a.embed_complex() * b.embed_complex())
    assert close(a.conj().embed_complex(), a.embed_complex().conjugate())
    if not b.is_zero():
        assert close((a / b).embed_complex(), a.embed_complex() / b.embed_complex())


@settings(max_examples=100, deadline=None)
@given(elements())
def test_inverse_matches_sympy(a):
    if a.is_zero():
        return
    m = a.order
    poly = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(a.coefficients())), x)
    phi = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    inv = sympy.invert(poly, phi) if phi.degree() > 0 else sympy.Poly(1 / poly.as_expr(), x)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in sympy.Poly(inv, x).all_coeffs()[::-1]]
    assert a.inv() == Cyclotomic.from_coefficients(m, coeffs)


@settings(max_examples=100, deadline=None)
@given(elements())
def test_norm_is_rational_and_galois_is_a_field_map(a):
    n = a.norm()
    assert isinstance(n, Fraction)
    b = a * a + 1
    for k in range(1, a.order + 1):
        if math.gcd(k, a.order) == 1:
            assert b.galois(k) == a.galois(k) * a.galois(k) + 1


@given(st.integers(1, 30), st.integers(-50, 50))
def test_root_of_unity_embedding(m, k):
    assert close(root_of_unity(m, k).embed_complex(), cmath.exp(2j * cmath.pi * k / m))
