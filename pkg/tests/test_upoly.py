"""Univariate polynomial layer: arithmetic, factorization, flattening,
interpolation, resultants, and the dynamic-evaluation root decision."""

import random

import pytest

from flexlab.errors import InternalContractViolation
from flexlab.fields import GF, function_field
from flexlab.upoly import (
    UPoly,
    cauchy_interpolate,
    common_y_root_exists,
    equal_degree_split,
    extgcd,
    factor,
    flatten_extension,
    gcd,
    interpolate,
    is_irreducible,
    minpoly_over_prime,
    pow_mod,
    radical,
    rational_roots,
    roots,
    subfield_embedding,
    sylvester_resultant,
)


def rand_poly(field, deg, rng):
    cs = [field.random(rng) for _ in range(deg)]
    cs.append(field.one)
    return UPoly(field, cs)


def test_divmod_identity():
    rng = random.Random(7)
    for field in (GF(7), GF(8), GF(9)):
        for _ in range(40):
            a = rand_poly(field, rng.randrange(0, 7), rng)
            b = rand_poly(field, rng.randrange(0, 5), rng)
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.degree() < b.degree()
            assert (a * b) // b == a


def test_gcd_and_bezout():
    rng = random.Random(8)
    field = GF(5)
    for _ in range(40):
        a = rand_poly(field, rng.randrange(1, 6), rng)
        b = rand_poly(field, rng.randrange(1, 6), rng)
        c = rand_poly(field, rng.randrange(0, 4), rng)
        g = gcd(a * c, b * c)
        assert g % c.monic() == UPoly(field, ())
        d, s, t = extgcd(a, b)
        assert s * a + t * b == d
        assert d == gcd(a, b)


def test_factor_known_shapes():
    f2, f3 = GF(2), GF(3)
    x2 = UPoly.x(f2)
    # x^2 + 1 = (x + 1)^2 over F2
    unit, facs = factor(x2 * x2 + UPoly.const(f2, 1))
    assert unit == f2.one
    assert facs == [(UPoly.of(f2, (1, 1)), 2)]
    # x^4 + x + 1 is the degree-4 default modulus: irreducible
    assert is_irreducible(UPoly.of(f2, (1, 1, 0, 0, 1)))
    assert not is_irreducible(UPoly.of(f2, (1, 0, 1)))
    # x^9 - x over F3: three linear factors and three quadratics
    f = UPoly.of(f3, [0, 2] + [0] * 7 + [1])  # x^9 - x
    _, facs = factor(f)
    degs = sorted(g.degree() for g, m in facs for _ in range(m))
    assert degs == [1, 1, 1, 2, 2, 2]
    assert all(m == 1 for _, m in facs)


def test_factor_multiply_roundtrip_and_determinism():
    rng = random.Random(20260815)
    for field in (GF(2), GF(3), GF(4), GF(9), GF(25)):
        for _ in range(12):
            f = rand_poly(field, rng.randrange(1, 9), rng)
            unit, facs = factor(f)
            prod = UPoly.const(field, unit)
            for g, m in facs:
                assert is_irreducible(g)
                assert g.lc() == field.one
                for _ in range(m):
                    prod = prod * g
            assert prod == f
            assert factor(f) == (unit, facs)


def test_roots_and_multiplicity():
    f7 = GF(7)
    f = UPoly.of(f7, (-2, 1)) * UPoly.of(f7, (-3, 1)) * UPoly.of(f7, (-3, 1))
    assert [r.val for r in roots(f)] == [2, 3]
    f9 = GF(9)
    # x^9 - x vanishes on the whole field
    f = UPoly.of(f9, [0, -1] + [0] * 7 + [1])
    assert len(roots(f)) == 9


def test_radical():
    f3 = GF(3)
    lin = UPoly.of(f3, (1, 1))
    quad = UPoly.of(f3, (1, 0, 1))  # x^2 + 1, irreducible over F3
    assert is_irreducible(quad)
    f = lin * lin * lin * quad
    assert radical(f) == lin * quad
    # multiplicity divisible by the characteristic exercises the p-th root
    cube = lin * lin * lin
    assert radical(cube) == lin


def test_minpoly_over_prime():
    f9 = GF(9)
    assert minpoly_over_prime(f9.gen) == f9.modulus
    assert minpoly_over_prime(GF(7)(4)) == (3, 1)
    f16 = GF(16)
    a = f16.gen ** 5  # lies in the order-3 subgroup, i.e. in F4
    mp = minpoly_over_prime(a)
    assert len(mp) - 1 == 2
    acc = f16.zero
    for c in reversed(mp):
        acc = acc * a + c
    assert not acc


def test_flatten_prime_base():
    f5 = GF(5)
    g = UPoly.of(f5, (3, 0, 1))  # x^2 - 2, irreducible since 2 is not a square
    fl = flatten_extension(f5, g)
    assert fl.quotient_field.order == 25
    assert fl.root * fl.root == fl.quotient_field(2)
    assert fl.embed(f5(4)) == fl.quotient_field(4)


def test_flatten_linear_is_identity():
    f7 = GF(7)
    fl = flatten_extension(f7, UPoly.of(f7, (-3, 1)))
    assert fl.quotient_field is f7
    assert fl.root == f7(3)


def test_flatten_tower_char2():
    rng = random.Random(5)
    f4 = GF(4)
    u = f4.gen
    g = UPoly(f4, (u, f4.one, f4.one))  # x^2 + x + u, irreducible (trace 1)
    assert is_irreducible(g)
    fl = flatten_extension(f4, g)
    L = fl.quotient_field
    assert L.order == 16
    ug = fl.embed(u)
    assert ug * ug + ug + 1 == L.zero
    assert fl.root * fl.root + fl.root + ug == L.zero
    for _ in range(25):
        a, b = f4.random(rng), f4.random(rng)
        assert fl.embed(a + b) == fl.embed(a) + fl.embed(b)
        assert fl.embed(a * b) == fl.embed(a) * fl.embed(b)


def test_flatten_tower_char3():
    rng = random.Random(6)
    f9 = GF(9)
    c = next(e for e in f9.elements() if e and not e.is_square())
    g = UPoly(f9, (-c, f9.zero, f9.one))  # x^2 - c
    assert is_irreducible(g)
    fl = flatten_extension(f9, g)
    L = fl.quotient_field
    assert L.order == 81
    assert fl.root * fl.root == fl.embed(c)
    for _ in range(25):
        a, b = f9.random(rng), f9.random(rng)
        assert fl.embed(a * b - a) == fl.embed(a) * fl.embed(b) - fl.embed(a)
    # the embedded generator still satisfies its own modulus
    img = fl.embed(f9.gen)
    acc = L.zero
    for coeff in reversed(f9.modulus):
        acc = acc * img + coeff
    assert not acc


def test_flatten_wide_tower():
    f256 = GF(256)
    g = None
    for c in f256.elements():
        cand = UPoly(f256, (c, f256.one, f256.zero, f256.one))  # x^3 + x + c
        if c and is_irreducible(cand):
            g = cand
            break
    assert g is not None
    fl = flatten_extension(f256, g)
    L = fl.quotient_field
    assert L.order == 2 ** 24
    r = fl.root
    assert r * r * r + r + fl.embed(g.coeffs[0]) == L.zero


def test_subfield_embedding():
    rng = random.Random(11)
    f4, f16 = GF(4), GF(16)
    emb = subfield_embedding(f4, f16)
    img = emb(f4.gen)
    assert img * img + img + 1 == f16.zero
    for _ in range(20):
        a, b = f4.random(rng), f4.random(rng)
        assert emb(a * b) == emb(a) * emb(b)
        assert emb(a + b) == emb(a) + emb(b)
    assert subfield_embedding(f4, f16) is emb  # memoized
    with pytest.raises(InternalContractViolation):
        subfield_embedding(GF(9), f16)


def test_interpolation_roundtrip():
    rng = random.Random(13)
    for field in (GF(11), GF(16)):
        pts = [field.from_index(i) for i in range(9)]
        for _ in range(15):
            f = UPoly(field, [field.random(rng) for _ in range(6)])
            g = interpolate(field, pts, [f(x) for x in pts])
            assert g == f


def test_cauchy_reconstruction():
    rng = random.Random(14)
    field = GF(13)
    pts = [field(i) for i in range(9)]
    for _ in range(25):
        num = UPoly(field, [field.random(rng) for _ in range(4)])
        den = rand_poly(field, rng.randrange(0, 3), rng)
        if any(not den(x) for x in pts):
            continue
        g = gcd(num, den) if num else den
        if g.degree() > 0:
            num, den = num // g, den // g
        got = cauchy_interpolate(field, pts, [num(x) / den(x) for x in pts], 3, 2)
        assert got is not None
        assert got == (num, den)
    # three distinct values cannot come from a constant
    assert cauchy_interpolate(field, pts[:3], [field(1), field(2), field(5)], 0, 0) is None


def test_rational_roots():
    K = function_field(3)
    S = K.gen
    x = UPoly.x(K)
    r1 = K.zero
    r2 = K(2)
    r3 = S
    r4 = (S + 1) / (S * S + 1)
    f = x
    for r in (r2, r3, r4):
        f = f * (x - UPoly.const(K, r))
    f = f * (x * x - UPoly.const(K, S))  # no rational root: odd valuation
    got = rational_roots(f)
    assert set(got) == {r1, r2, r3, r4}


def test_sylvester_resultant_known():
    f7 = GF(7)
    Kx = UPoly.x(f7)
    one = UPoly.const(f7, 1)
    # Res_y(y^2 - x, y - x) = x^2 - x
    res = sylvester_resultant([-Kx, UPoly(f7, ()), one], [-Kx, one], f7)
    assert res == Kx * Kx - Kx
    K = function_field(3)
    S = UPoly.const(K, K.gen)
    xK = UPoly.x(K)
    oneK = UPoly.const(K, 1)
    res = sylvester_resultant([-S, UPoly(K, ()), oneK], [-xK, oneK], K)
    assert res == xK * xK - S


def test_sylvester_resultant_matches_substitution():
    rng = random.Random(15)
    field = GF(5)
    for _ in range(30):
        a0 = UPoly(field, [field.random(rng) for _ in range(3)])
        a1 = UPoly(field, [field.random(rng) for _ in range(2)])
        b0 = UPoly(field, [field.random(rng) for _ in range(3)])
        one = UPoly.const(field, 1)
        # Res_y(y^2 + a1 y + a0, y + b0) = a0 - a1 b0 + b0^2
        res = sylvester_resultant([a0, a1, one], [b0, one], field)
        assert res == a0 - a1 * b0 + b0 * b0


def test_common_y_root_exists():
    f5 = GF(5)

    def c(*vals):
        return UPoly.of(f5, vals)

    one = c(1)
    m = c(-1, 1) * c(-2, 1)  # (x-1)(x-2)
    # y - x and y - 1 agree only above x = 1
    assert common_y_root_exists(m, [[c(0, -1), one], [c(-1), one]])
    # above x = 2 only: y - x vs y - 2
    assert common_y_root_exists(m, [[c(0, -1), one], [c(-2), one]])
    # nowhere: y - x vs y - 3
    assert not common_y_root_exists(m, [[c(0, -1), one], [c(-3), one]])
    # zero-divisor split: p1 = (x-1)(y-1) vanishes identically above x=1,
    # where y-2 then has the root y=2; above x=2 it reads y-1, clashing
    # with y-2.  Solvable over (x-1)(x-2), not over (x-2) alone.
    p1 = [c(1, -1), c(-1, 1)]
    assert common_y_root_exists(m, [p1, [c(-2), one]])
    assert not common_y_root_exists(c(-2, 1), [p1, [c(-2), one]])
    # everything vanishing identically counts as solvable
    assert common_y_root_exists(m, [[UPoly(f5, ())]])
    # a unit constraint is never solvable
    assert not common_y_root_exists(m, [[one]])
    # constants that vanish only above part of the modulus
    assert common_y_root_exists(m, [[c(-1, 1)]])  # x - 1 dies above x=1


def test_equal_degree_split_deterministic():
    field = GF(7)
    f = UPoly.const(field, 1)
    for c in range(5):
        f = f * UPoly.of(field, (c, 1))
    out1 = equal_degree_split(f, 1)
    out2 = equal_degree_split(f, 1)
    assert out1 == out2
    assert len(out1) == 5
