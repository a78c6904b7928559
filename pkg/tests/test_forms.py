"""Ternary forms: coefficient order, calculus, substitution, and the
truncated power-coefficient extraction."""

import random

import pytest

from flexlab.errors import ConfigError, DegreeMismatch, SingularMatrix
from flexlab.fields import GF, function_field
from flexlab.forms import (
    CUBIC_ORDER,
    Mat3,
    TernaryForm,
    parse_form,
    proportional,
    random_form,
)


def test_cubic_coefficient_order():
    f = GF(11)
    form = TernaryForm.from_cubic_coeffs(f, range(10))
    assert form[(3, 0, 0)] == 0
    assert form[(0, 3, 0)] == 1
    assert form[(0, 0, 3)] == 2
    assert form[(2, 1, 0)] == 3
    assert form[(2, 0, 1)] == 4
    assert form[(1, 2, 0)] == 5
    assert form[(0, 2, 1)] == 6
    assert form[(1, 0, 2)] == 7
    assert form[(0, 1, 2)] == 8
    assert form[(1, 1, 1)] == 9
    assert form.cubic_coeffs() == tuple(f(i) for i in range(10))
    assert len(CUBIC_ORDER) == 10


def test_eval():
    f7 = GF(7)
    F = parse_form("Y^2*Z - X^3", f7)
    assert F(1, 2, 3) == f7(4)
    assert F(0, 0, 1) == f7.zero
    K = function_field(3, var="T")
    G = parse_form("Y^2*Z - X^3 - T*Z^3", K)
    assert G(0, 1, 1) == K(1) - K.gen


def test_partials_respect_characteristic():
    f3 = GF(3)
    F = parse_form("X^3 + X^2*Y", f3)
    assert F.partial(0) == parse_form("2*X*Y", f3)
    assert F.partial(1) == parse_form("X^2", f3)
    f5 = GF(5)
    F = parse_form("X^3 + X^2*Y", f5)
    assert F.partial(0) == parse_form("3*X^2 + 2*X*Y", f5)


def test_euler_identity():
    rng = random.Random(20260815)
    for field in (GF(2), GF(3), GF(4), GF(5), GF(9)):
        X, Y, Z = (TernaryForm.variable(field, i) for i in range(3))
        for _ in range(20):
            F = random_form(field, 3, rng)
            combo = X * F.partial(0) + Y * F.partial(1) + Z * F.partial(2)
            assert combo == 3 * F


def test_substitute():
    f5 = GF(5)
    F = parse_form("X^3 + 2*X*Y*Z", f5)
    assert F.substitute(Mat3.identity(f5)) == F
    swap = Mat3(f5, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert F.substitute(swap) == parse_form("Y^3 + 2*X*Y*Z", f5)
    rng = random.Random(3)
    for field in (GF(5), GF(4)):
        for _ in range(10):
            F = random_form(field, 3, rng)
            M = Mat3.random_invertible(field, rng)
            N = Mat3.random_invertible(field, rng)
            assert F.substitute(M * N) == F.substitute(M).substitute(N)
            v = tuple(field.random(rng) for _ in range(3))
            assert F.substitute(M)(*v) == F(*M.apply(v))


def test_power_coefficient_against_full_product():
    rng = random.Random(9)
    f5 = GF(5)
    for _ in range(10):
        F = random_form(f5, 3, rng)
        full = F * F * F
        for key in [(3, 3, 3), (9, 0, 0), (4, 4, 1), (2, 3, 4)]:
            assert F.power_coefficient(3, key) == full[key]
    assert F.power_coefficient(2, (3, 3, 3)) == f5.zero  # degree mismatch


def test_power_coefficient_known_values():
    # (X+Y+Z)^3 has XYZ-coefficient 6
    for q, want in ((7, 6), (2, 0), (3, 0)):
        f = GF(q)
        L = parse_form("X + Y + Z", f)
        assert L.power_coefficient(3, (1, 1, 1)) == f(want)
    # Fermat cubic: (XYZ)^(p-1) coefficient of F^(p-1) is the multinomial
    # (p-1)! / (((p-1)/3)!)^3 when 3 | p-1, and 0 otherwise
    f7 = GF(7)
    F = parse_form("X^3 + Y^3 + Z^3", f7)
    assert F.power_coefficient(6, (6, 6, 6)) == f7(6)  # 90 mod 7
    f5 = GF(5)
    F = parse_form("X^3 + Y^3 + Z^3", f5)
    assert F.power_coefficient(4, (4, 4, 4)) == f5.zero


def test_proportional():
    f7 = GF(7)
    F = parse_form("X^3 + 2*Y^3", f7)
    assert proportional(F, 3 * F)
    assert not proportional(F, F + parse_form("Z^3", f7))
    assert proportional(TernaryForm.zero(f7, 3), TernaryForm.zero(f7, 3))
    assert not proportional(F, TernaryForm.zero(f7, 3))


def test_parse_and_str_roundtrip():
    rng = random.Random(17)
    for field in (GF(9), function_field(3)):
        for _ in range(10):
            F = random_form(field, 3, rng)
            assert parse_form(str(F), field) == F
    with pytest.raises(ConfigError):
        parse_form("X^3 + W^3", GF(5))
    with pytest.raises(DegreeMismatch):
        parse_form("X^3 + X^2", GF(5))


def test_homogeneity_enforced():
    f5 = GF(5)
    with pytest.raises(DegreeMismatch):
        TernaryForm(f5, 3, {(1, 1, 0): f5.one})
    with pytest.raises(DegreeMismatch):
        parse_form("X^3", f5) + parse_form("X^2", f5) * parse_form("Y^2", f5)


def test_mat3():
    rng = random.Random(21)
    for field in (GF(7), GF(8)):
        eye = Mat3.identity(field)
        for _ in range(15):
            M = Mat3.random_invertible(field, rng)
            N = Mat3.random_invertible(field, rng)
            assert M * M.inverse() == eye
            assert M.inverse() * M == eye
            assert (M * N).det() == M.det() * N.det()
            v = tuple(field.random(rng) for _ in range(3))
            assert (M * N).apply(v) == M.apply(N.apply(v))
    with pytest.raises(SingularMatrix):
        Mat3(GF(7), [[1, 2, 3], [2, 4, 6], [0, 0, 1]]).inverse()
