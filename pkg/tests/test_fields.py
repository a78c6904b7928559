import random

import pytest

from flexlab.errors import CapExceeded, ConfigError, DivisionByZero, MixedFields
from flexlab.fields import (
    GF,
    ZModElem,
    default_modulus,
    element_text,
    function_field,
    parse_element,
    parse_field,
    trial_division_irreducible,
)

ALL_KINDS = [GF(5), GF(2), GF(4), GF(8), GF(9), GF(27), function_field(3), function_field(2, "T")]


def random_elem(field, rng):
    if field.order is not None:
        return field.random(rng)
    num = field.random(rng, deg=rng.randrange(4))
    den = field.random(rng, deg=rng.randrange(3))
    return num / den if den else num


def test_default_moduli_are_lexicographically_least():
    assert default_modulus(2, 2) == (1, 1, 1)          # u^2+u+1
    assert default_modulus(2, 3) == (1, 1, 0, 1)       # u^3+u+1
    assert default_modulus(2, 4) == (1, 1, 0, 0, 1)    # u^4+u+1
    assert default_modulus(3, 2) == (1, 0, 1)          # u^2+1
    assert default_modulus(3, 3) == (1, 2, 0, 1)       # u^3+2u+1
    assert default_modulus(5, 2) == (2, 0, 1)          # u^2+2


def test_trial_division_agrees_with_known_factorizations():
    assert trial_division_irreducible(2, (1, 1, 1))
    assert not trial_division_irreducible(2, (1, 0, 1))          # (u+1)^2
    assert not trial_division_irreducible(2, (1, 0, 0, 0, 1))    # (u^2+u+1)^2
    assert trial_division_irreducible(3, (1, 0, 1))
    assert not trial_division_irreducible(3, (2, 0, 1))          # (u+1)(u+2)
    assert trial_division_irreducible(7, (1, 0, 1))              # -1 is not a square mod 7
    assert not trial_division_irreducible(7, (3, 0, 1))          # u^2+3 = (u-2)(u+2) mod 7


def test_trial_division_cap():
    with pytest.raises(CapExceeded):
        GF(2 ** 36)


def test_field_axioms_on_random_elements():
    rng = random.Random(20260815)
    for field in ALL_KINDS:
        zero, one = field.zero, field.one
        for _ in range(60):
            a, b, c = (random_elem(field, rng) for _ in range(3))
            assert a + b == b + a
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + zero == a
            assert a * one == a
            assert a - a == zero
            assert a + (-a) == zero
            if a:
                assert a * a.inverse() == one
                assert (a / a) == one
            assert a ** 3 == a * a * a
            assert a ** 0 == one


def test_multiplicative_group_order():
    for field in [GF(5), GF(7), GF(4), GF(8), GF(9), GF(27), GF(16)]:
        q = field.order
        for e in field.elements():
            if e:
                assert e ** (q - 1) == field.one


def test_frobenius_is_a_field_automorphism():
    rng = random.Random(7)
    for field in [GF(4), GF(8), GF(27), GF(25), function_field(3), GF(5)]:
        for _ in range(40):
            a = random_elem(field, rng)
            b = random_elem(field, rng)
            assert (a + b).frobenius() == a.frobenius() + b.frobenius()
            assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        if field.kind == "extension":
            a = random_elem(field, rng)
            assert a.frobenius(field.k) == a


def test_frobenius_moves_the_indeterminate():
    F = function_field(3)
    S = F.gen
    assert S.frobenius() == S ** 3
    assert ((S + 1) / S).frobenius() == (S ** 3 + 1) / S ** 3


def test_spec_syntax_examples():
    assert GF(5)(2) * GF(5)(3) == GF(5)(1)
    F4 = GF(4)
    assert F4.gen * (F4.gen + 1) == F4.one
    F = function_field(3)
    S = F.gen
    assert (S ** 3 - 1) / (S - 1) == S ** 2 + S + 1


def test_rational_functions_stay_reduced():
    F = function_field(3)
    S = F.gen
    x = (S ** 2 - 1) / (S + 1)
    assert x == S - 1
    num, den = x.val
    assert den == (1,)
    y = (S + 1) / (S ** 2 + S)
    assert y.val == ((1,), (0, 1))  # 1/S
    assert (S / S) == F.one


def test_mixed_fields_raise():
    with pytest.raises(MixedFields):
        GF(4).gen + GF(9).gen
    with pytest.raises(MixedFields):
        GF(5)(1) + GF(7)(1)
    # but the prime field embeds into its own extensions
    assert GF(2)(1) + GF(4).gen == GF(4).gen + 1


def test_division_by_zero():
    for field in [GF(5), GF(4), function_field(3)]:
        with pytest.raises(DivisionByZero):
            field.one / field.zero
        with pytest.raises(DivisionByZero):
            field.zero.inverse()
        with pytest.raises(DivisionByZero):
            field.zero ** (-1)


def test_element_index_roundtrip():
    for field in [GF(7), GF(8), GF(27)]:
        seen = set()
        for e in field.elements():
            i = e.index()
            assert field.from_index(i) == e
            seen.add(i)
        assert seen == set(range(field.order))


def test_enumeration_cap():
    big = GF(2 ** 21)
    with pytest.raises(CapExceeded):
        list(big.elements())
    with pytest.raises(CapExceeded):
        function_field(2).elements()


def test_field_interning_and_equality():
    assert GF(9) is GF(9)
    assert GF(9) == GF(3 ** 2)
    assert GF(9, modulus=(2, 2, 1)) != GF(9)
    assert function_field(3) != function_field(3, "T")
    with pytest.raises(ConfigError):
        GF(12)
    with pytest.raises(ConfigError):
        GF(9, modulus=(2, 0, 1))  # u^2+2 = (u+1)(u+2) over F3


def test_parse_field_roundtrip():
    for field in ALL_KINDS:
        assert parse_field(str(field)) is field
    assert parse_field("F9") is GF(9)
    assert parse_field("F2[u]/(u^2+u+1)") is GF(4)
    assert parse_field("F3(S)") is function_field(3)
    with pytest.raises(ConfigError):
        parse_field("F6")
    with pytest.raises(ConfigError):
        parse_field("Q")


def test_parse_element_roundtrip():
    rng = random.Random(99)
    for field in ALL_KINDS:
        for _ in range(25):
            x = random_elem(field, rng)
            assert parse_element(element_text(x), field) == x
            if field.kind != "prime":  # bare integers carry no field of their own
                assert parse_element(element_text(x)) == x


def test_parse_element_spec_syntax():
    F4 = GF(4)
    assert parse_element("u^2+u+1 @ F2[u]/(u^2+u+1)") == F4.zero
    assert parse_element("u+1", F4) == F4.gen + 1
    x = parse_element("(S^3+1)/(S+2) @ F3(S)")
    assert x * (function_field(3).gen + 2) == function_field(3).gen ** 3 + 1
    assert parse_element("3", GF(5)) == GF(5)(3)
    with pytest.raises(ConfigError):
        parse_element("v+1", F4)
    with pytest.raises(ConfigError):
        parse_element("u+1")


def test_squares_and_roots():
    for field in [GF(7), GF(9), GF(13), GF(16), GF(25), GF(8)]:
        q = field.order
        squares = [e for e in field.elements() if e.is_square()]
        if field.p == 2:
            assert len(squares) == q
        else:
            assert len(squares) == (q + 1) // 2
        for e in field.elements():
            s = e * e
            r = s.sqrt()
            assert r is not None and r * r == s
        nonsquares = [e for e in field.elements() if not e.is_square()]
        for e in nonsquares[:5]:
            assert e.sqrt() is None


def test_zmod_ring():
    a = ZModElem(12, 7)
    b = ZModElem(12, 10)
    assert a + b == 5
    assert a - b == ZModElem(12, -3)
    assert a * b == 70 % 12
    assert a.inverse() * a == 1
    assert (a ** -1) == a.inverse()
    with pytest.raises(DivisionByZero):
        b.inverse()
    with pytest.raises(MixedFields):
        a + ZModElem(13, 1)


def test_char_p_arithmetic_in_rational_functions():
    F = function_field(5, "T")
    T = F.gen
    assert (T + 1) ** 5 == T ** 5 + 1
    x = (T ** 2 + 3) / (T + 1)
    assert x.frobenius() == x ** 5
