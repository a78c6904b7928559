"""Affine/SL2/GL2/S3 group machinery: elements, censuses, fixed vectors."""

import json
import random

import pytest

from flexlab.errors import (
    BadFactorization,
    BudgetExceeded,
    CapExceeded,
    ConfigError,
    DivisionByZero,
    MixedFields,
    NotInAmbient,
)
from flexlab.fields import ZModElem
from flexlab.modgroups import (
    AffElem,
    CONTAINS_THREE_CYCLE,
    COUNTEREXAMPLE_FOUND,
    EXHAUSTED_NONE,
    HAS_GLOBAL_FIXED_POINT,
    Mat2,
    Perm3,
    aff_act,
    aff_mul,
    ambient_order,
    close,
    construct_lemma_6_2,
    count_all_subgroups,
    fixed_point_analysis,
    get_ambient,
    s3_dichotomy,
    search_counterexample_subgroups,
    subgroups_up_to_conjugacy,
    triangular_family,
    verify_lemma_2_1,
    verify_sl2_fixed_point,
)

I3 = Mat2.identity(3)


def aff(v0, v1, a, b, c, d):
    return AffElem((v0, v1), Mat2(3, a, b, c, d))


# ---------------------------------------------------------------------------
# Mat2 arithmetic

def test_mat2_basics():
    m = Mat2(5, 1, 2, 3, 4)
    assert m.det == ZModElem(5, -2)
    assert m.trace == ZModElem(5, 0)
    assert m.entries == (ZModElem(5, 1), ZModElem(5, 2), ZModElem(5, 3), ZModElem(5, 4))
    assert (m * m.inverse()) == Mat2.identity(5)
    assert m ** 3 == m * m * m
    assert m ** -2 == (m.inverse()) ** 2
    assert Mat2.scalar(7, -1) == Mat2(7, 6, 0, 0, 6)


def test_mat2_errors():
    with pytest.raises(DivisionByZero):
        Mat2(6, 2, 0, 0, 3).inverse()
    with pytest.raises(MixedFields):
        Mat2(5, 1, 0, 0, 1) * Mat2(7, 1, 0, 0, 1)
    with pytest.raises(MixedFields):
        Mat2(5, ZModElem(7, 1), 0, 0, 1)
    with pytest.raises(ConfigError):
        Mat2(0, 1, 0, 0, 1)


def test_mat2_order_and_action():
    t = Mat2(9, 1, 1, 0, 1)
    assert t.order() == 9
    assert Mat2(5, 4, 0, 0, 4).order() == 2
    assert t.act((2, 3)) == (5, 3)


# ---------------------------------------------------------------------------
# Affine composition and action

def test_aff_mul_examples():
    x = aff(2, 1, 1, 1, 0, 1)
    assert aff_mul(AffElem.identity(), x) == x
    assert aff_mul(x, AffElem.identity()) == x
    assert aff_mul(aff(1, 0, 1, 0, 0, 1), aff(0, 1, 1, 0, 0, 1)) == aff(1, 1, 1, 0, 0, 1)
    # linear part acts on the incoming translation
    got = aff_mul(aff(0, 0, -1, 0, 0, 1), aff(1, 0, 1, 0, 0, 1))
    assert got.v == (2, 0) and got.g == Mat2(3, -1, 0, 0, 1)


def test_aff_act_examples():
    w = (2, 1)
    assert aff_act(AffElem.identity(), w) == w
    assert aff_act(aff(1, 2, 1, 0, 0, 1), (0, 0)) == (1, 2)
    assert aff_act(aff(0, 0, -1, 0, 0, -1), (1, 1)) == (2, 2)


def test_aff_group_axioms_sampled():
    rng = random.Random(21)
    A = get_ambient("aff3")
    assert A.order == 432 == ambient_order("aff3")
    els = [A.public(rng.randrange(432)) for _ in range(40)]
    for x in els:
        inv = x.inverse()
        assert x * inv == AffElem.identity() == inv * x
        # inverse formula: (v, g)⁻¹ = (-g⁻¹v, g⁻¹)
        gi = x.g.inverse()
        assert inv.g == gi and inv.v == tuple((-c) % 3 for c in gi.act(x.v))
    for _ in range(200):
        x, y, z = (rng.choice(els) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        w = (rng.randrange(3), rng.randrange(3))
        assert aff_act(x * y, w) == aff_act(x, aff_act(y, w))


def test_aff_rejects_singular_linear_part():
    with pytest.raises(NotInAmbient):
        AffElem((0, 0), Mat2(3, 1, 1, 1, 1))
    with pytest.raises(NotInAmbient):
        AffElem((0, 0), Mat2(5, 1, 0, 0, 1))


# ---------------------------------------------------------------------------
# Permutations of three points

def test_perm3():
    c = Perm3.cycle(1, 2, 3)
    s = Perm3.cycle(1, 2)
    assert c.act(1) == 2 and c.act(3) == 1
    assert (s * c).images != (c * s).images
    assert c.order() == 3 and s.order() == 2
    assert (c * c * c) == Perm3.identity()
    assert str(s) == "(1 2)" and str(c) == "(1 2 3)" and str(Perm3.identity()) == "e"
    assert s.fixed_points() == (3,)
    with pytest.raises(ConfigError):
        Perm3((1, 1, 2))


# ---------------------------------------------------------------------------
# Closure

def test_close_examples():
    assert close([AffElem.identity()], "aff3").order == 1
    assert close([], "s3").order == 1
    assert close([Mat2(5, -1, 0, 0, -1)], "sl2(5)").order == 2
    assert close([Mat2(9, 1, 1, 0, 1)], "sl2(9)").order == 9


def test_close_membership_guards():
    with pytest.raises(NotInAmbient):
        close([Mat2(5, 2, 0, 0, 1)], "sl2(5)")  # determinant 2
    with pytest.raises(NotInAmbient):
        close([Mat2(7, 1, 0, 0, 1)], "sl2(5)")  # wrong modulus
    with pytest.raises(NotInAmbient):
        close([Perm3.identity()], "aff3")  # wrong element type
    assert close([Mat2(5, 2, 0, 0, 1)], "gl2(5)").order == 4


def test_close_produces_actual_subgroups():
    rng = random.Random(7)
    A = get_ambient("sl2(6)")
    for _ in range(10):
        gens = [A.public(rng.randrange(A.order)) for _ in range(2)]
        G = close(gens, A)
        els = set(G.elements)
        assert Mat2.identity(6) in els
        assert all(x.inverse() in els for x in els)
        assert all(x * y in els for x in list(els)[:8] for y in list(els)[:8])
        assert A.order % G.order == 0


# ---------------------------------------------------------------------------
# Censuses of subgroup conjugacy classes

def test_census_s3():
    rep = subgroups_up_to_conjugacy("s3")
    assert rep.num_classes == 4
    assert [r.subgroup.order for r in rep.rows] == [1, 2, 3, 6]


def test_census_aff3_has_46_classes():
    rep = subgroups_up_to_conjugacy("aff3")
    assert rep.num_classes == 46
    assert all(432 % r.subgroup.order == 0 for r in rep.rows)


def test_census_small_sl2_class_counts():
    # SL2(Z/2) ≅ S3 and SL2(Z/3), SL2(Z/5) have textbook subgroup lattices
    # (1, C2, C3, C4, C6, Q8, SL2(F3) for n=3); the n=4 count is this
    # census's own frozen regression value.
    assert subgroups_up_to_conjugacy("sl2(2)").num_classes == 4
    assert subgroups_up_to_conjugacy("sl2(3)").num_classes == 7
    assert subgroups_up_to_conjugacy("sl2(5)").num_classes == 12
    rep4 = subgroups_up_to_conjugacy("sl2(4)")
    assert ambient_order("sl2(4)") == 48
    assert rep4.num_classes == 19


def test_census_orbit_sum_matches_direct_enumeration():
    rep = subgroups_up_to_conjugacy("aff3")
    assert rep.orbit_size_total == count_all_subgroups("aff3") == 646
    rep4 = subgroups_up_to_conjugacy("sl2(4)")
    assert rep4.orbit_size_total == count_all_subgroups("sl2(4)")


def test_census_cap_and_unsupported_modulus():
    with pytest.raises(CapExceeded):
        subgroups_up_to_conjugacy("sl2(16)")  # order 3072 > default cap
    with pytest.raises(CapExceeded):
        subgroups_up_to_conjugacy("aff3", cap=100)
    with pytest.raises(ConfigError):
        subgroups_up_to_conjugacy("sl2(11)")  # seed rule needs factors ≤ 7
    with pytest.raises(ConfigError):
        get_ambient("so3")


def test_census_reports_are_deterministic():
    a = json.dumps(subgroups_up_to_conjugacy("sl2(6)").to_json())
    b = json.dumps(subgroups_up_to_conjugacy("sl2(6)").to_json())
    assert a == b
    js = json.loads(a)
    assert set(js) == {"ambient", "classes", "verdict"}
    assert all(set(row) == {"order", "generators", "elementwise", "common_fixed"}
               for row in js["classes"])


def test_public_elements_match_tables():
    rng = random.Random(3)
    for name in ("aff3", "sl2(6)", "s3"):
        A = get_ambient(name)
        for _ in range(60):
            i, j = rng.randrange(A.order), rng.randrange(A.order)
            assert A.public(i) * A.public(j) == A.public(int(A.mul[i, j]))
            assert A.public(int(A.inv[i])) == A.public(i).inverse()


# ---------------------------------------------------------------------------
# Fixed-point analysis

def test_fixed_point_analysis_examples():
    trivial = close([], "aff3")
    ew, common = fixed_point_analysis(trivial, "any-vector")
    assert ew and common == {(w0, w1) for w0 in range(3) for w1 in range(3)}
    # a nonzero pure translation fixes no vector at all
    shift = close([aff(1, 0, 1, 0, 0, 1)], "aff3")
    assert fixed_point_analysis(shift, "any-vector") == (False, set())
    # -I over Z/3 fixes only the origin
    minus = close([Mat2(3, -1, 0, 0, -1)], "sl2(3)")
    assert fixed_point_analysis(minus, "nonzero-vector") == (False, set())
    assert fixed_point_analysis(minus, "any-vector") == (True, {(0, 0)})


def test_fixed_point_modes():
    G = close([Mat2(4, 1, 2, 0, 1)], "sl2(4)")
    ew, common = fixed_point_analysis(G, "primitive-vector")
    assert ew and (1, 0) in common and all((w0 + w1) % 2 for w0, w1 in common)
    with pytest.raises(ConfigError):
        fixed_point_analysis(G, "positive-vector")
    with pytest.raises(ConfigError):
        fixed_point_analysis(close([], "s3"), "nonzero-vector")


# ---------------------------------------------------------------------------
# The affine fixed-vector census

def test_affine_census_fixed_vector_property():
    rep = verify_lemma_2_1()
    assert rep.num_classes == 46 and rep.verdict == "pass"
    vacuous = [r for r in rep.rows if not r.elementwise]
    assert vacuous, "some classes should fail the elementwise hypothesis"
    for row in rep.rows:
        ew, common = fixed_point_analysis(row.subgroup, "any-vector")
        assert ew == row.elementwise
        assert tuple(sorted(common)) == row.common_fixed
        if ew:
            assert common


# ---------------------------------------------------------------------------
# SL2 primitive fixed vectors with CRT cross-check

@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8, 9])
def test_sl2_fixed_point_small_moduli(n):
    rep = verify_sl2_fixed_point(n)
    assert rep.verdict == "pass"
    for row in rep.rows:
        assert not (row.elementwise and not row.common_fixed)


def test_sl2_fixed_point_guards():
    with pytest.raises(CapExceeded):
        verify_sl2_fixed_point(16)
    with pytest.raises(ConfigError):
        verify_sl2_fixed_point(1)


# ---------------------------------------------------------------------------
# Counterexample searches

def test_search_certified_exhaustion():
    for n in (4, 9):
        out = search_counterexample_subgroups(n)
        assert out.verdict == EXHAUSTED_NONE and out.witness is None
        assert out.classes_scanned > 0


def test_search_finds_counterexample_at_6():
    out = search_counterexample_subgroups(6)
    assert out.verdict == COUNTEREXAMPLE_FOUND and out.found
    G = out.witness.subgroup
    assert G.order == 6
    ew, common = fixed_point_analysis(G, "nonzero-vector")
    assert ew is True and common == set()
    js = out.to_json()
    assert js["verdict"] == COUNTEREXAMPLE_FOUND and len(js["classes"]) == 1


def test_search_budget_is_inconclusive_not_exhausted():
    with pytest.raises(BudgetExceeded):
        search_counterexample_subgroups(12, budget=100)


# ---------------------------------------------------------------------------
# The scalar Klein-four construction

def test_scalar_construction_3_5_7():
    rep = construct_lemma_6_2(3, 5, 7)
    assert rep.n == 105
    assert rep.A == Mat2.scalar(105, 29)
    assert rep.B == Mat2.scalar(105, 34)
    assert rep.AB == Mat2.scalar(105, 41)
    assert rep.group.order == 4
    assert rep.elementwise is True and rep.common_nonzero == ()
    # the defining congruences, re-checked from scratch
    assert rep.A.a % 15 == 14 and rep.A.a % 7 == 1
    assert rep.B.a % 3 == 1 and rep.B.a % 35 == 34
    assert rep.AB.a % 21 == 20 and rep.AB.a % 5 == 1
    assert all(m.is_sl2() for m in rep.group.elements)


def test_scalar_construction_3_5_11():
    rep = construct_lemma_6_2(3, 5, 11)
    assert rep.n == 165 and rep.group.order == 4
    assert rep.elementwise is True and rep.common_nonzero == ()


def test_scalar_construction_rejects_bad_factors():
    for bad in [(3, 4, 5), (2, 5, 7), (3, 5, 9), (1, 5, 7), (3, 3, 5)]:
        with pytest.raises(BadFactorization):
            construct_lemma_6_2(*bad)


# ---------------------------------------------------------------------------
# Triangular family in GL2(F_p)

def test_triangular_family():
    rep = triangular_family(5)
    assert rep.group.order == 20
    assert rep.elementwise is True and rep.common_nonzero == ()
    assert rep.det_one.order == 5 and (1, 0) in rep.det_one_common
    assert triangular_family(3).group.order == 6
    # every member really has eigenvalue 1
    for m in rep.group.elements:
        assert (m.a - 1) * (m.d - 1) % 5 == (m.b * m.c) % 5
    with pytest.raises(ConfigError):
        triangular_family(4)
    with pytest.raises(ConfigError):
        triangular_family(2)


# ---------------------------------------------------------------------------
# Dichotomy for subgroups of S3

def test_s3_dichotomy_exhaustive():
    c, s = Perm3.cycle(1, 2, 3), Perm3.cycle(1, 2)
    subs = [close(g, "s3") for g in
            ([], [Perm3.cycle(1, 2)], [Perm3.cycle(1, 3)], [Perm3.cycle(2, 3)],
             [c], [s, c])]
    assert sorted(G.order for G in subs) == [1, 2, 2, 2, 3, 6]
    labels = [s3_dichotomy(G) for G in subs]
    assert labels == [HAS_GLOBAL_FIXED_POINT] * 4 + [CONTAINS_THREE_CYCLE] * 2
    for G, label in zip(subs, labels):
        has3 = any(x.is_three_cycle() for x in G.elements)
        _, common = fixed_point_analysis(G, "any-vector")
        assert (label == CONTAINS_THREE_CYCLE) == has3 == (not common)
