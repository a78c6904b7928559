"""The bundled five-curve golden table over F3(S): every frozen fact is
re-derived from scratch and any drift raises GoldenMismatch."""

import pytest

from flexlab import golden
from flexlab.errors import GoldenMismatch
from flexlab.fields import function_field

FROZEN = [
    {"label": "C1", "n_cube": 0, "n_all": 1, "supersingular": True,
     "flexes": ["[0 : 1 : S]"]},
    {"label": "C2", "n_cube": 0, "n_all": 3, "supersingular": False,
     "flexes": ["[0 : 1 : 2*S]", "[1 : 0 : 2*S^2]", "[1 : 2*S : 0]"]},
    {"label": "C3", "n_cube": 1, "n_all": 1, "supersingular": True,
     "flexes": ["[0 : 1 : 0]"]},
    {"label": "C4", "n_cube": 1, "n_all": 3, "supersingular": False,
     "flexes": ["[0 : 1 : 0]", "[1 : 1 : (2)/(S)]", "[1 : 2 : (2)/(S)]"]},
    {"label": "C5", "n_cube": 3, "n_all": 3, "supersingular": False,
     "flexes": ["[0 : 1 : 0]", "[1 : 1 : 2]", "[1 : 2 : 2]"]},
]


def test_all_rows_verify_and_match_frozen_results():
    outcomes = golden.verify_all()
    assert len(outcomes) == 5
    for out, frozen in zip(outcomes, FROZEN):
        js = out.to_json()
        for key, val in frozen.items():
            assert js[key] == val, (out.label, key)


@pytest.mark.parametrize("which", [1, 2, 3, 4, 5, "C1", "c3", "C5"])
def test_row_lookup_by_number_and_label(which):
    out = golden.verify_example_3_4(which)
    assert out.n_all in (1, 3)


def test_unknown_row_rejected():
    with pytest.raises(GoldenMismatch):
        golden.verify_example_3_4(0)
    with pytest.raises(GoldenMismatch):
        golden.verify_example_3_4("C9")


def test_cube_subfield_membership():
    K = function_field(3)
    S = K.gen
    assert golden._in_cube_subfield(K.one)
    assert golden._in_cube_subfield(S ** 3)
    assert golden._in_cube_subfield((S ** 6 + S ** 3) / (S ** 3 + 2))
    assert not golden._in_cube_subfield(S)
    assert not golden._in_cube_subfield(K.one / S)
    assert not golden._in_cube_subfield(S ** 2 / (S ** 3 + 1))


def test_tampered_table_is_caught(monkeypatch):
    rows = golden.golden_table()
    bad = list(rows)
    bad[2] = golden.GoldenRow("C3", rows[2].equation, "X^3",
                              rows[2].flex_coords, rows[2].n_cube,
                              rows[2].n_all, rows[2].supersingular)
    monkeypatch.setattr(golden, "golden_table", lambda: tuple(bad))
    with pytest.raises(GoldenMismatch):
        golden.verify_example_3_4(3)
    # the untouched rows still pass
    golden.verify_example_3_4(1)
