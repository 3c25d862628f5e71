import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polardeg.errors import CompositeCharacteristic, DivisionByZero, UnsupportedSize
from polardeg.fields import (FieldElement, embed, field_inverse, is_irreducible, is_prime,
                             make_field, parse_element, smallest_irreducible)

FIELDS = [(2, 1), (3, 1), (101, 1), (2, 2), (3, 2), (5, 3), (7, 2), (2, 8)]


def test_prime_fields():
    F = make_field(3, 1)
    assert (F.p, F.k, F.q) == (3, 1, 3)
    assert F.modulus is None
    assert make_field(101).q == 101


def test_f4_modulus():
    # t^2 + t + 1 is the only irreducible quadratic over F_2
    F = make_field(2, 2)
    assert F.modulus == (1, 1, 1)
    assert F.q == 4


def test_modulus_is_smallest_irreducible():
    # brute force over all monic cubics over F_3 in the same (c0, c1, c2) order
    from itertools import product
    first = None
    for c in product(range(3), repeat=3):
        poly = (c[0], c[1], c[2], 1)
        if all(sum(pc * x ** i for i, pc in enumerate(poly)) % 3 for x in range(3)):
            first = poly
            break
    assert make_field(3, 3).modulus == first == smallest_irreducible(3, 3)


def test_errors():
    with pytest.raises(CompositeCharacteristic):
        make_field(4)
    with pytest.raises(CompositeCharacteristic):
        make_field(1)
    with pytest.raises(UnsupportedSize):
        make_field(2, 63)
    with pytest.raises(UnsupportedSize):
        make_field(3, 0)
    with pytest.raises(DivisionByZero):
        make_field(7).inv(0)


def test_inverse_examples():
    assert make_field(3).inv(2) == 2
    for p, k in FIELDS:
        assert make_field(p, k).inv(1) == 1
    assert field_inverse(make_field(101).element(37)).value == 71
    assert 37 * 71 % 101 == 1


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2 ** 31 - 1)
    assert not is_prime(2 ** 31 + 1)
    assert not is_prime(561)  # Carmichael


def test_is_irreducible():
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)        # (t + 1)^2
    assert is_irreducible((1, 0, 1), 3)
    assert not is_irreducible((1, 0, 0, 1), 3)     # (t + 1)^3 over F_3


def test_element_wrapper():
    F = make_field(3, 2)
    a = F.element([1, 2])
    assert str(a) == "[1,2]"
    assert a * a.inverse() == F.element(1)
    assert a ** (F.q - 1) == F.element(1)
    assert parse_element(F, "[1,2]") == a
    assert -a + a == F.element(0)
    with pytest.raises(ValueError):
        F.parse("[1,2,0]")
    with pytest.raises(ValueError):
        make_field(5).parse("x")


def test_embedding_is_a_homomorphism():
    F, G = make_field(3, 2), make_field(3, 4)
    rng = random.Random(5)
    for _ in range(30):
        a, b = F.random_element(rng), F.random_element(rng)
        assert embed(F, G, F.add(a, b)) == G.add(embed(F, G, a), embed(F, G, b))
        assert embed(F, G, F.mul(a, b)) == G.mul(embed(F, G, a), embed(F, G, b))
    # prime subfield maps to itself
    assert [embed(make_field(3), G, c) for c in range(3)] == [0, 1, 2]


@st.composite
def field_and_elements(draw, count=3):
    p, k = draw(st.sampled_from(FIELDS))
    F = make_field(p, k)
    xs = [draw(st.integers(0, F.q - 1)) for _ in range(count)]
    return F, xs


@settings(max_examples=150, deadline=None)
@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(a, b) == F.add(a, F.neg(b))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(b, a) == F.mul(b, F.inv(a))


@settings(max_examples=100, deadline=None)
@given(field_and_elements(2))
def test_frobenius(data):
    F, (a, b) = data
    p = F.p
    assert F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p))
    # a^q = a
    assert F.pow(a, F.q) == a


@settings(max_examples=100, deadline=None)
@given(field_and_elements(1))
def test_text_roundtrip(data):
    F, (a,) = data
    t = F.to_text(a)
    assert F.parse(t) == a
    assert F.to_text(F.parse(t)) == t
    assert isinstance(F.element(a), FieldElement)
