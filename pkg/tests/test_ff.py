import itertools
import math

import pytest
from hypothesis import given, strategies as st
from sympy import GF, Poly, symbols
from sympy.polys.galoistools import gf_mul, gf_rem

from symcay.ff import (Field, element_of_order, frobenius, is_irreducible, is_prime, make_field,
                       multiplicative_order, primitive_element)
from symcay.limits import BoundExceeded, HypothesisError, override

x = symbols("x")

FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2), (7, 2), (2, 6), (13, 1)]


def lex_smallest_irreducible(p, d):
    """Sympy oracle; tuples ordered leading coefficient first, constant term last."""
    for tail in itertools.product(range(p), repeat=d):
        coeffs = [1, *tail]
        if Poly(coeffs, x, modulus=p).is_irreducible:
            return coeffs
    raise AssertionError


def as_sympy(elem):
    """Coefficient list, leading first, for galoistools."""
    return list(reversed(elem.coeffs))


def test_prime_field():
    f = make_field(2, 1)
    assert f.size == 2
    assert primitive_element(f).value == 1


def test_gf16_modulus():
    f = make_field(2, 4)
    assert f.modulus_string() == "x^4+x+1"
    assert list(reversed(f.modulus)) == lex_smallest_irreducible(2, 4)


@pytest.mark.parametrize("p,d", FIELDS)
def test_modulus_is_lex_smallest_irreducible(p, d):
    f = make_field(p, d)
    assert list(reversed(f.modulus)) == lex_smallest_irreducible(p, d)


def test_gf27():
    f = make_field(3, 3)
    assert f.size == 27
    assert list(reversed(f.modulus)) == lex_smallest_irreducible(3, 3)


def test_make_field_errors():
    with pytest.raises(HypothesisError, match="not prime"):
        make_field(4, 2)
    with override(max_field_size=1000):
        make_field.cache_clear()
        with pytest.raises(BoundExceeded):
            make_field(2, 11)
    make_field.cache_clear()


@pytest.mark.parametrize("p,d", FIELDS)
def test_multiplication_matches_sympy(p, d):
    f = make_field(p, d)
    mod = list(reversed(f.modulus))
    dom = GF(p)
    for a in range(0, f.size, max(1, f.size // 11)):
        for b in range(0, f.size, max(1, f.size // 7)):
            ea, eb = f.element(a), f.element(b)
            want = gf_rem(gf_mul(as_sympy(ea), as_sympy(eb), p, dom), mod, p, dom)
            got = as_sympy(ea * eb)
            while got and got[0] == 0:
                got = got[1:]
            assert got == want


def test_primitive_element_orders():
    assert multiplicative_order(primitive_element(make_field(2, 4))) == 15
    assert multiplicative_order(primitive_element(make_field(3, 3))) == 26


@pytest.mark.parametrize("p,d", FIELDS)
def test_primitive_element_lex_smallest(p, d):
    f = make_field(p, d)
    w = primitive_element(f)
    n = f.size - 1

    def brute_order(v):
        acc, t = v, 1
        while acc != 1:
            acc = f.mul(acc, v)
            t += 1
        return t

    assert brute_order(w.value) == n
    assert all(brute_order(v) < n for v in range(1, w.value))
    assert primitive_element(Field(p, d, list(f.modulus))).value == w.value


def test_frobenius_examples():
    f = make_field(2, 4)
    w = primitive_element(f)
    for v in f.elements():
        assert frobenius(f, v, 0) == v
        assert frobenius(f, frobenius(f, v, 2), 2) == v
    assert frobenius(f, w, 2) == w * w * w * w


def test_multiplicative_order_examples():
    f = make_field(2, 4)
    w = primitive_element(f)
    assert multiplicative_order(f.one) == 1
    assert multiplicative_order(w ** 3) == 15 // math.gcd(15, 3) == 5
    assert multiplicative_order(w ** 5) == 3
    with pytest.raises(ValueError):
        multiplicative_order(f.zero)


def test_element_of_order():
    f = make_field(2, 6)
    assert multiplicative_order(element_of_order(f, 9)) == 9
    with pytest.raises(HypothesisError):
        element_of_order(f, 5)


@st.composite
def field_pairs(draw):
    p, d = draw(st.sampled_from(FIELDS))
    f = make_field(p, d)
    a = draw(st.integers(0, f.size - 1))
    b = draw(st.integers(0, f.size - 1))
    return f, f.element(a), f.element(b)


@given(field_pairs())
def test_frobenius_additive(data):
    f, a, b = data
    assert frobenius(f, a + b, 1) == frobenius(f, a, 1) + frobenius(f, b, 1)
    assert frobenius(f, a * b, 1) == frobenius(f, a, 1) * frobenius(f, b, 1)


@given(field_pairs())
def test_order_divides_group_order(data):
    f, a, _ = data
    if a:
        t = multiplicative_order(a)
        assert (f.size - 1) % t == 0
        assert (a ** t).value == 1


@given(field_pairs())
def test_field_axioms(data):
    f, a, b = data
    assert a + b - b == a
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert -a + a == f.zero


@given(st.integers(2, 2000))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == all(n % k for k in range(2, int(n ** 0.5) + 1))


def test_is_irreducible_against_sympy():
    for p, d in [(2, 3), (3, 2), (2, 4)]:
        for tail in itertools.product(range(p), repeat=d):
            coeffs = [1, *tail]
            assert is_irreducible(list(reversed(coeffs)), p) == Poly(coeffs, x, modulus=p).is_irreducible
