"""Places of F_p(T), reductions, Frobenius sampling, and local-global scans."""

import json
import os
import random
import subprocess
import sys

import pytest

from flexlab.cubic import ProjPoint, TernaryCubic
from flexlab.errors import (
    CapExceeded,
    ConfigError,
    InconclusiveBeyondHeight,
    MixedFields,
    RequiresCharNot3,
    SingularCurve,
)
from flexlab.fields import GF, function_field
from flexlab.forms import CUBIC_ORDER, TernaryForm
from flexlab.localglobal import (
    BadReduction,
    CurveOverK,
    ECGroupStructure,
    Place,
    PlaceVerdict,
    ScanReport,
    WeierstrassCurve,
    _exact_order_is,
    _global_exact_order,
    _point_height,
    ec_group_structure,
    frobenius_flex_affine,
    global_flex_search,
    has_exact_order_point,
    local_flex_scan,
    local_torsion_scan,
    monodromy_predict,
    places_up_to,
    reduce_at,
)
from flexlab.modgroups import (
    AffElem,
    Mat2,
    Perm3,
    aff_mul,
    construct_lemma_6_2,
    triangular_family,
)

F2, F3, F4, F5, F7 = GF(2), GF(3), GF(4), GF(5), GF(7)

C4_TEXT = "Y^2*Z - X^3 - X^2*Z - T*Z^3"
C1_TEXT = "X*Y^2 - X^2*Z - Z^3 + T*Y^3"


def curve_c4():
    return CurveOverK.cubic_from_form(C4_TEXT, 3, label="C4")


def curve_c1():
    return CurveOverK.cubic_from_form(C1_TEXT, 3, label="C1")


def random_smooth(field, rng):
    while True:
        coeffs = {k: field.from_index(rng.randrange(field.order))
                  for k in CUBIC_ORDER}
        if not any(coeffs.values()):
            continue
        C = TernaryCubic(TernaryForm(field, 3, coeffs))
        if C.is_smooth():
            return C


def aff_pow(e, m):
    out = e
    for _ in range(m - 1):
        out = aff_mul(out, e)
    return out


# ---------------------------------------------------------------------------
# Places

def test_places_p2_d2():
    assert [str(v) for v in places_up_to(2, 2)] == ["T", "T + 1", "T^2 + T + 1", "inf"]


def test_places_p3_d1():
    assert [str(v) for v in places_up_to(3, 1)] == ["T", "T + 1", "T + 2", "inf"]


def test_places_p2_d3_count():
    vs = places_up_to(2, 3)
    assert len(vs) == 6
    assert vs[-1].infinite and vs[-1].degree == 1
    assert [v.degree for v in vs[:-1]] == sorted(v.degree for v in vs[:-1])


def test_places_are_lex_within_degree():
    vs = [v for v in places_up_to(5, 2) if not v.infinite and v.degree == 2]
    keys = [tuple(reversed(v.f)) for v in vs]
    assert keys == sorted(keys)


def test_place_residue_fields():
    v = Place(2, (1, 1, 1))
    K = v.residue_field()
    assert K.order == 4 and v.degree == 2
    assert Place(5, (3, 1)).residue_field() is GF(5)


def test_place_validation():
    with pytest.raises(ConfigError):
        Place(4, (0, 1))            # composite characteristic
    with pytest.raises(ConfigError):
        Place(2, (1, 0, 1))         # T^2 + 1 = (T+1)^2 is reducible
    with pytest.raises(ConfigError):
        Place(5, (1, 2))            # not monic
    with pytest.raises(ConfigError):
        places_up_to(3, 0)
    with pytest.raises(CapExceeded):
        places_up_to(2, 20)
    with pytest.raises(ConfigError):
        Place(5, None).poly()


# ---------------------------------------------------------------------------
# Weierstrass curves and their groups

def test_weierstrass_group_law_axioms():
    rng = random.Random(17)
    for K in (F2, F3, F5, GF(9), GF(8)):
        for _ in range(8):
            E = WeierstrassCurve(K, *(K.from_index(rng.randrange(K.order))
                                      for _ in range(5)))
            if E.is_singular():
                continue
            pts = E.points()
            for P in pts:
                assert E.contains(P)
                assert E.add(P, E.negate(P)) is None
                assert E.add(P, None) == P
            for _ in range(10):
                P, Q, R = (rng.choice(pts) for _ in range(3))
                assert E.add(P, Q) == E.add(Q, P)
                assert E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R))
                assert E.contains(E.add(P, Q))


def test_weierstrass_discriminant_of_x3_plus_t():
    k = function_field(5, var="T")
    E = WeierstrassCurve.short(k, 0, k((0, 1)))
    assert E.discriminant() == k((0, 0, 3))  # -432 T^2 = 3 T^2 over F_5


def test_ec_group_structure_examples():
    assert ec_group_structure(WeierstrassCurve.short(F5, 1, 0)) == \
        ECGroupStructure(5, 4, 2, 2)
    assert ec_group_structure(WeierstrassCurve.short(F5, 0, 1)) == \
        ECGroupStructure(5, 6, 1, 6)


def test_ec_group_structure_hasse_window_over_f2():
    import itertools
    seen = set()
    for a in itertools.product(range(2), repeat=5):
        E = WeierstrassCurve(F2, *a)
        if E.is_singular():
            continue
        s = ec_group_structure(E)
        assert 1 <= s.N <= 5
        seen.add(s.N)
    assert seen == {1, 2, 3, 4, 5}


def test_ec_group_structure_rejects_singular():
    with pytest.raises(SingularCurve):
        ec_group_structure(WeierstrassCurve.short(F5, 0, 0))


def test_ec_structure_json_keys():
    s = ec_group_structure(WeierstrassCurve.short(F5, 0, 1))
    assert s.to_json() == {"q": 5, "order": 6, "invariants": [1, 6]}


def test_has_exact_order_point_examples():
    E1 = WeierstrassCurve.short(F5, 0, 1)
    assert has_exact_order_point(E1, 6)
    assert has_exact_order_point(E1, 1)
    assert not has_exact_order_point(WeierstrassCurve.short(F5, 1, 0), 4)
    with pytest.raises(ConfigError):
        has_exact_order_point(E1, 0)


def test_has_exact_order_matches_pointwise_oracle():
    rng = random.Random(23)
    for K in (F2, F3, F4, F5, GF(7), GF(9)):
        for _ in range(6):
            E = WeierstrassCurve(K, *(K.from_index(rng.randrange(K.order))
                                      for _ in range(5)))
            if E.is_singular():
                continue
            for n in range(1, 13):
                oracle = any(_exact_order_is(E, P, n) for P in E.points())
                assert has_exact_order_point(E, n) == oracle


# ---------------------------------------------------------------------------
# Curves over F_p(T) and reduction at places

def test_cubic_from_form_clears_denominators():
    X = curve_c4()
    assert X.kind == "cubic" and not X.is_constant()
    texts = [str(c) for c in X.coeffs]
    assert len(texts) == 10


def test_weierstrass_coeff_clearing_with_weights():
    k = function_field(5, var="T")
    t = k((0, 1))
    X = CurveOverK.weierstrass(5, (k(1) / t, k(2)), label="E")
    # clearing T from a4 multiplies a_i by T^{w_i}: a4 -> T^3, a6 -> 2 T^6
    a4, a6 = X.coeffs[3], X.coeffs[4]
    assert tuple(c.val for c in a4.coeffs) == (0, 0, 0, 1)
    assert tuple(c.val for c in a6.coeffs) == (0, 0, 0, 0, 0, 0, 2)


def test_curve_constructor_validation():
    with pytest.raises(ConfigError):
        CurveOverK.cubic(5, [1] * 9)
    with pytest.raises(ConfigError):
        CurveOverK.weierstrass(5, (1, 2, 3))
    with pytest.raises(ConfigError):
        CurveOverK("quartic", 5, [1] * 10, "X")
    with pytest.raises(ConfigError):
        CurveOverK.cubic(6, [1] * 10)


def test_reduce_x3_plus_t_bad_exactly_at_t():
    E = CurveOverK.weierstrass(5, ((), (0, 1)), label="E")
    bad = reduce_at(E, Place(5, (0, 1)))
    assert isinstance(bad, BadReduction) and bad.place.f == (0, 1)
    good = reduce_at(E, Place(5, (1, 1)))
    assert isinstance(good, WeierstrassCurve)
    assert good.a6 == F5(4)  # a6 = T at T = -1


def test_reduce_c4_at_t_plus_1_has_c5_shape():
    X = curve_c4()
    red = reduce_at(X, Place(3, (1, 1)))
    assert isinstance(red, TernaryCubic)
    assert red.is_smooth()
    expected = TernaryCubic.parse("Y^2*Z - X^3 - X^2*Z + Z^3", F3)
    assert red.form.cubic_coeffs() == expected.form.cubic_coeffs()
    c5 = TernaryCubic.parse("Y^2*Z - X^3 - X^2*Z - Z^3", F3)
    support = lambda C: {m for m, c in zip(CUBIC_ORDER, C.form.cubic_coeffs()) if c}
    assert support(red) == support(c5)


def test_reduce_c4_bad_at_t_and_infinity():
    X = curve_c4()
    assert isinstance(reduce_at(X, Place(3, (0, 1))), BadReduction)
    assert isinstance(reduce_at(X, Place(3, None)), BadReduction)
    assert [str(v) for v in X.bad_places(2)] == ["T", "inf"]


def test_reduce_at_degree_two_place():
    X = CurveOverK.weierstrass(5, ((0, 1), (1,)), label="E")  # a4 = T, a6 = 1
    v = next(w for w in places_up_to(5, 2) if w.degree == 2)
    red = reduce_at(X, v)
    if isinstance(red, WeierstrassCurve):
        assert red.field.order == 25
        ec_group_structure(red)  # invariants re-verified internally


def test_reduce_constant_curve_good_everywhere():
    X = CurveOverK.cubic_from_form("X^3 + Y^3 + Z^3 + X*Y*Z", 5, label="H")
    assert X.is_constant()
    for v in places_up_to(5, 2):
        red = reduce_at(X, v)
        assert isinstance(red, TernaryCubic)


def test_reduce_at_wrong_characteristic():
    with pytest.raises(MixedFields):
        reduce_at(curve_c4(), Place(5, (0, 1)))


def test_weierstrass_reduction_at_infinity_by_weights():
    # a4 = T^3 sits below weight * e = 4, so it drops out at infinity, while
    # the top coefficient of a6 = T^6 + 1 survives.
    X = CurveOverK.weierstrass(5, ((0, 0, 0, 1), (1, 0, 0, 0, 0, 0, 1)),
                               label="E")
    red = reduce_at(X, Place(5, None))
    assert isinstance(red, WeierstrassCurve)
    assert red.a4 == F5.zero and red.a6 == F5.one


# ---------------------------------------------------------------------------
# Frobenius on the nine flexes

def test_fermat_f2_frobenius_is_order_two_fixing_three():
    e = frobenius_flex_affine(TernaryCubic.parse("X^3 + Y^3 + Z^3", F2))
    fixed = [(a, b) for a in range(3) for b in range(3) if e.act((a, b)) == (a, b)]
    assert len(fixed) == 3
    sq = aff_mul(e, e)
    assert sq.v == (0, 0) and sq.g == Mat2.identity(3)
    assert not (e.v == (0, 0) and e.g == Mat2.identity(3))


def test_all_rational_flexes_give_identity():
    e = frobenius_flex_affine(TernaryCubic.parse("X^3 + Y^3 + Z^3", F4))
    assert e.v == (0, 0) and e.g == Mat2.identity(3)


def test_frobenius_rejects_char_three_and_infinite_fields():
    with pytest.raises(RequiresCharNot3):
        frobenius_flex_affine(TernaryCubic.parse("Y^2*Z - X^3 - X*Z^2 - Z^3", F3))
    k = function_field(5)
    with pytest.raises(ConfigError):
        frobenius_flex_affine(TernaryCubic.parse("X^3 + Y^3 + Z^3", k))


def test_frobenius_functoriality_under_base_change():
    # Prime base: the degree-m base change must sample the m-th power.
    for text, degs in [("X^2*Z + X*Y^2 + X*Z^2 + Y*Z^2", (2, 4, 8)),
                       ("X^2*Z + X*Y^2 + Y*Z^2", (2, 3, 6))]:
        C = TernaryCubic.parse(text, F2)
        e = frobenius_flex_affine(C)
        for m in degs:
            Em = frobenius_flex_affine(C.base_change(GF(2 ** m)))
            em = aff_pow(e, m)
            assert (Em.v, Em.g.key) == (em.v, em.g.key)


def test_frobenius_cycle_type_matches_orbit_degrees():
    rng = random.Random(271)
    labels = [(a, b) for a in range(3) for b in range(3)]
    for K in (F2, F4, F5, F7):
        for _ in range(6):
            C = random_smooth(K, rng)
            rep = C.flex_closure_report()
            e = frobenius_flex_affine(C)
            cycles = []
            seen = set()
            for w in labels:
                if w in seen:
                    continue
                n, x = 1, e.act(w)
                seen.add(w)
                while x != w:
                    seen.add(x)
                    x = e.act(x)
                    n += 1
                cycles.append(n)
            assert sorted(cycles) == sorted(o.degree for o in rep.entries)
            fixed = sum(1 for w in labels if e.act(w) == w)
            assert fixed == rep.n_rat


# ---------------------------------------------------------------------------
# Monodromy prediction

def test_identity_sample_predicts_yes():
    mp = monodromy_predict([AffElem.identity()])
    assert mp.prediction and mp.samplewise and mp.elementwise
    assert len(mp.common) == 9
    assert mp.to_json()["order"] == 1


def test_triangular_family_signature():
    gens = list(triangular_family(3).group.generators)
    mp = monodromy_predict(gens, "primitive-vector")
    assert mp.elementwise and not mp.common
    assert mp.samplewise and not mp.prediction


def test_lemma62_group_signature_via_explicit_closure():
    rep = construct_lemma_6_2(3, 5, 7)
    mp = monodromy_predict(list(rep.group.generators), "nonzero-vector")
    assert mp.group.order == 4
    assert mp.elementwise and not mp.common
    assert not mp.local_failure_expected


def test_monodromy_predict_perm3_samples():
    mp = monodromy_predict([Perm3.cycle(1, 2)])
    assert mp.group.order == 2
    assert mp.samplewise  # a transposition fixes the third point
    assert mp.prediction  # the fixed point is shared by the closure


def test_monodromy_predict_validation():
    with pytest.raises(ConfigError):
        monodromy_predict([])
    with pytest.raises(ConfigError):
        monodromy_predict([AffElem.identity(), Perm3.identity()])
    with pytest.raises(MixedFields):
        monodromy_predict([Mat2.identity(3), Mat2.identity(5)])


# ---------------------------------------------------------------------------
# Global flex search

def test_global_flex_search_c4():
    out = global_flex_search(curve_c4(), 2)
    k = function_field(3, var="T")
    assert out == (ProjPoint(k, (k.zero, k.one, k.zero)),)
    assert _point_height(out[0]) == 0


def test_global_flex_search_c1_empty_is_conclusive():
    assert global_flex_search(curve_c1(), 2) == ()


def test_global_flex_search_constant_curve_height_zero():
    X = CurveOverK.cubic_from_form("X^3 + Y^3 + Z^3 + X*Y*Z", 5, label="H")
    out = global_flex_search(X, 1)
    assert len(out) == 3
    Ck = X.over_k()
    for P in out:
        assert Ck.is_flex(P)
        assert _point_height(P) == 0


def test_global_flex_search_validation():
    with pytest.raises(ConfigError):
        global_flex_search(CurveOverK.weierstrass(5, (1, 1)), 2)
    with pytest.raises(ConfigError):
        global_flex_search(curve_c4(), -1)
    sing = CurveOverK.cubic_from_form("X^3 + Y^3 + Z^3", 3, label="S")
    with pytest.raises(SingularCurve):
        global_flex_search(sing, 1)


def test_point_height_after_clearing():
    k = function_field(5, var="T")
    t = k((0, 1))
    P = ProjPoint(k, (t * t, t * t * t, k.one))
    assert _point_height(P) == 3
    Q = ProjPoint(k, (k.one / t, k.one, k.zero))
    assert _point_height(Q) == 1


# ---------------------------------------------------------------------------
# Global torsion search

def test_global_exact_order_constant_shortcut():
    E = CurveOverK.weierstrass(5, ((), (1,)), label="E")
    assert _global_exact_order(E, 6, 2) == (True, "constant-base")
    E2 = CurveOverK.weierstrass(5, ((1,), ()), label="E2")
    verdict, how = _global_exact_order(E2, 4, 2)
    assert verdict is False and how == "constant-base"
    assert _global_exact_order(E, 1, 2)[0] is True


def test_global_exact_order_scaled_point_interpolates():
    # y^2 = x^3 + T^4 x + T^6 carries (x0 T^2, y0 T^3) for each (x0, y0) on
    # y^2 = x^3 + x + 1 over F_5, whose group is Z/9.
    En = CurveOverK.weierstrass(5, ((0, 0, 0, 0, 1), (0, 0, 0, 0, 0, 0, 1)),
                                label="En")
    verdict, how = _global_exact_order(En, 3, 3)
    assert verdict is True and how == "interpolated-point"


def test_global_exact_order_fiber_obstruction():
    Eno = CurveOverK.weierstrass(5, ((0, 1), (1,)), label="Eno")
    verdict, how = _global_exact_order(Eno, 7, 2)
    assert verdict is False and "exact order 7" in how


def test_global_exact_order_rejects_singular():
    sing = CurveOverK.weierstrass(5, ((), ()), label="S")
    with pytest.raises(SingularCurve):
        _global_exact_order(sing, 2, 2)


# ---------------------------------------------------------------------------
# Scans: torsion

def test_torsion_scan_constant_unmet_hypothesis_still_agrees():
    E = CurveOverK.weierstrass(5, ((), (1,)), label="E1")
    rep = local_torsion_scan(E, 6, 2)
    assert rep.hypothesis_met is False            # 6 does not divide 5 - 1
    assert rep.locals_everywhere and rep.global_verdict and rep.agree
    assert rep.prediction is True
    assert rep.monodromy is None


def test_torsion_scan_met_hypothesis_n4():
    rep = local_torsion_scan(CurveOverK.weierstrass(5, ((1,), ()), label="E2"), 4, 2)
    assert rep.hypothesis_met is True             # 4 divides 5 - 1
    assert not rep.locals_everywhere and not rep.global_verdict and rep.agree


def test_torsion_scan_p_part_hypothesis():
    rep = local_torsion_scan(CurveOverK.weierstrass(3, ((2,), (1,)), label="E3"), 3, 2)
    assert rep.hypothesis_met is True             # n = p, prime-to-p part is 1
    assert rep.agree


def test_torsion_scan_constant_locals_match_base_verdict():
    E = CurveOverK.weierstrass(5, ((), (1,)), label="E1")
    base = has_exact_order_point(WeierstrassCurve.short(F5, 0, 1), 6)
    rep = local_torsion_scan(E, 6, 2)
    for pv in rep.places:
        if pv.good:
            assert pv.local == base
    v3 = next(v for v in places_up_to(5, 3) if v.degree == 3)
    assert has_exact_order_point(reduce_at(E, v3), 6) == base


def test_torsion_scan_validation():
    with pytest.raises(ConfigError):
        local_torsion_scan(curve_c4(), 3, 2)
    E = CurveOverK.weierstrass(5, ((), (1,)), label="E")
    with pytest.raises(ConfigError):
        local_torsion_scan(E, 0, 2)


# ---------------------------------------------------------------------------
# Scans: flexes

def test_flex_scan_constant_curve_agrees():
    X = CurveOverK.cubic_from_form("X^3 + Y^3 + Z^3 + X*Y*Z", 5, label="H5")
    rep = local_flex_scan(X, 2)
    assert rep.locals_everywhere and rep.global_verdict and rep.agree
    assert rep.prediction is True
    assert rep.monodromy is not None
    base = bool(X.over_k().rational_flexes())
    for pv in rep.places:
        if pv.good:
            assert pv.local == base


def test_flex_scan_char3_c4_agrees():
    rep = local_flex_scan(curve_c4(), 3)
    assert rep.global_verdict and rep.agree and rep.prediction


def test_flex_scan_char3_c1_shows_local_global_failure():
    rep = local_flex_scan(curve_c1(), 3)
    assert rep.locals_everywhere          # every residue field sees its flex
    assert not rep.global_verdict         # but none of them is k-rational
    assert not rep.agree                  # the char-3 supersingular signature


def test_flex_scan_nonconstant_char_not3_agrees():
    for text, p in [("X^3 + Y^3 + T*Z^3 + X*Y*Z", 5),
                    ("X^3 + Y^3 + Z^3 + T*X*Y*Z", 2)]:
        X = CurveOverK.cubic_from_form(text, p, label=f"X{p}")
        rep = local_flex_scan(X, 3)
        assert rep.agree, f"disagreement for {text} over F_{p}(T)"
        assert rep.prediction == rep.global_verdict


def test_flex_scan_report_json_shape():
    rep = local_flex_scan(curve_c4(), 2)
    data = rep.to_json()
    assert set(data) == {"curve", "kind", "degree_bound", "places", "monodromy",
                         "prediction", "global", "agree", "hypothesis_met"}
    for row in data["places"]:
        assert set(row) == {"f", "degree", "good", "local"}
    assert set(data["monodromy"]) == {"order", "elementwise", "common"}
    assert data["hypothesis_met"] is None
    json.dumps(data)


def test_torsion_report_json_has_order_field():
    E = CurveOverK.weierstrass(5, ((), (1,)), label="E1")
    data = local_torsion_scan(E, 6, 2).to_json()
    assert data["n"] == 6 and data["monodromy"] is None
    assert data["hypothesis_met"] is False
    json.dumps(data)


def test_flex_scan_rejects_weierstrass_input():
    with pytest.raises(ConfigError):
        local_flex_scan(CurveOverK.weierstrass(5, (1, 1)), 2)


def test_scan_deterministic_under_threading():
    X = CurveOverK.cubic_from_form("X^3 + Y^3 + T*Z^3 + X*Y*Z", 5, label="X5")
    serial = local_flex_scan(X, 2).to_json()
    code = (
        "import json\n"
        "from flexlab.localglobal import CurveOverK, local_flex_scan\n"
        "X = CurveOverK.cubic_from_form('X^3 + Y^3 + T*Z^3 + X*Y*Z', 5, label='X5')\n"
        "print(json.dumps(local_flex_scan(X, 2).to_json(), sort_keys=True))\n"
    )
    env = dict(os.environ, FLEXLAB_THREADS="3")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env, check=True)
    assert json.loads(out.stdout) == json.loads(json.dumps(serial, sort_keys=True))
