"""A bundled golden table of five cubics over F3(S) and its verifier.

Each row fixes a curve whose coefficients involve only the cube S^3, its
expected Hessian (up to scalar), the complete list of inflection points over
F3(S), how many of those have every coordinate inside the subfield F3(S^3),
and whether the curve is supersingular.  The verifier recomputes all of it
from scratch and raises GoldenMismatch on the first deviation, so a passing
run certifies the whole pipeline (Hessians, elimination-based flex search,
tangent multiplicities, and the Hasse-invariant test) against frozen data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GoldenMismatch
from .fields import Field, FieldElem, function_field
from .forms import parse_form, proportional
from .cubic import ProjPoint, TernaryCubic


@dataclass(frozen=True)
class GoldenRow:
    label: str
    equation: str
    hessian: str
    flex_coords: tuple
    n_cube: int
    n_all: int
    supersingular: bool


@dataclass
class GoldenOutcome:
    """What the verifier established for one row."""

    label: str
    equation: str
    n_cube: int
    n_all: int
    supersingular: bool
    flexes: list

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "equation": self.equation,
            "n_cube": self.n_cube,
            "n_all": self.n_all,
            "supersingular": self.supersingular,
            "flexes": [str(P) for P in self.flexes],
        }


def golden_field() -> Field:
    return function_field(3)


def golden_table():
    """The five frozen rows, with flex coordinates as exact elements."""
    K = golden_field()
    S = K.gen
    o, z = K.one, K.zero
    return (
        GoldenRow("C1", "X*Y^2 - X^2*Z - Z^3 + S^3*Y^3", "X^3",
                  ((z, o, S),), 0, 1, True),
        GoldenRow("C2", "S^6*X^3 + S^3*Y^3 + Z^3 + X*Y*Z", "X*Y*Z",
                  ((z, o, -S), (o, z, -(S * S)), (o, -S, z)), 0, 3, False),
        GoldenRow("C3", "Y^2*Z - X^3 - X*Z^2 - Z^3", "Z^3",
                  ((z, o, z),), 1, 1, True),
        GoldenRow("C4", "Y^2*Z - X^3 - X^2*Z - S^3*Z^3", "X^2*Z - Y^2*Z",
                  ((z, o, z), (-S, S, o), (-S, -S, o)), 1, 3, False),
        GoldenRow("C5", "Y^2*Z - X^3 - X^2*Z - Z^3", "X^2*Z - Y^2*Z",
                  ((z, o, z), (-o, -o, o), (-o, o, o)), 3, 3, False),
    )


def _in_cube_subfield(x: FieldElem) -> bool:
    """Whether a rational function of S lies in F3(S^3): in lowest terms
    both numerator and denominator must be supported on cube exponents."""
    num, den = x.val
    return (all(not c for i, c in enumerate(num) if i % 3)
            and all(not c for i, c in enumerate(den) if i % 3))


def _row(which) -> GoldenRow:
    rows = golden_table()
    if isinstance(which, int):
        if not 1 <= which <= len(rows):
            raise GoldenMismatch(f"no golden row numbered {which}")
        return rows[which - 1]
    label = str(which).upper()
    for row in rows:
        if row.label == label:
            return row
    raise GoldenMismatch(f"no golden row labeled {which!r}")


def verify_example_3_4(which) -> GoldenOutcome:
    """Re-derive one golden row (by label "C1".."C5" or number 1..5) and
    check every frozen fact about it; GoldenMismatch on any deviation."""
    row = _row(which)
    K = golden_field()
    C = TernaryCubic.parse(row.equation, K)

    if not C.is_smooth():
        raise GoldenMismatch(f"{row.label}: expected a smooth curve")

    he = C.hessian().form
    he_expected = parse_form(row.hessian, K)
    if not proportional(he, he_expected):
        raise GoldenMismatch(
            f"{row.label}: Hessian {he} is not proportional to {row.hessian}")

    expected = [ProjPoint(K, t) for t in row.flex_coords]
    for P in expected:
        if not C.contains(P):
            raise GoldenMismatch(f"{row.label}: listed flex {P} is not on the curve")
        if he(*P.coords):
            raise GoldenMismatch(f"{row.label}: Hessian does not vanish at {P}")
        if not C.is_flex(P):
            raise GoldenMismatch(
                f"{row.label}: {P} fails the tangent-multiplicity test")

    computed = C.rational_flexes()
    if set(computed) != set(expected):
        raise GoldenMismatch(
            f"{row.label}: computed flexes {computed} differ from the table")
    if len(computed) != row.n_all:
        raise GoldenMismatch(
            f"{row.label}: {len(computed)} flexes; the table says {row.n_all}")

    n_cube = sum(1 for P in computed
                 if all(_in_cube_subfield(c) for c in P.coords))
    if n_cube != row.n_cube:
        raise GoldenMismatch(
            f"{row.label}: {n_cube} flexes over the cube subfield; "
            f"the table says {row.n_cube}")

    ss = C.hasse_invariant_zero()
    if ss != row.supersingular:
        raise GoldenMismatch(
            f"{row.label}: supersingular flag {ss}; the table says "
            f"{row.supersingular}")

    return GoldenOutcome(label=row.label, equation=row.equation,
                         n_cube=n_cube, n_all=len(computed),
                         supersingular=ss, flexes=computed)


def verify_all():
    """All five rows, in order."""
    return [verify_example_3_4(i) for i in range(1, 6)]
