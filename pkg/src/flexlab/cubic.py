"""Plane projective cubics over exact fields.

Smoothness certificates by bivariate elimination, Hessians in every
characteristic (including the degree-matched char-2 substitute), inflection
points with their fields of definition, and the chord-tangent composition
law with a flex as origin.
"""

from __future__ import annotations

from .errors import (CapExceeded, ConfigError, DegreeMismatch,
                     InternalContractViolation, NotSmooth, OriginNotFlex,
                     PointNotOnCurve, PointNotOnLine, SingularCurve, ZeroForm)
from .fields import ENUMERATION_CAP, Field, FieldElem
from .forms import Mat3, TernaryForm, parse_form
from . import upoly
from .upoly import UPoly


class ProjPoint:
    """A point of P^2 over a Field, stored with the first nonzero
    coordinate scaled to one (so equality is plain tuple equality)."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords):
        cs = tuple(field(c) for c in coords)
        if len(cs) != 3:
            raise ConfigError("projective points here have three coordinates")
        pivot = next((c for c in cs if c), None)
        if pivot is None:
            raise ConfigError("(0 : 0 : 0) is not a projective point")
        if pivot != field.one:
            inv = pivot.inverse()
            cs = tuple(c * inv for c in cs)
        self.field = field
        self.coords = cs

    def __eq__(self, other):
        if isinstance(other, ProjPoint):
            return self.field == other.field and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coords))

    def __str__(self):
        return "[" + " : ".join(str(c) for c in self.coords) + "]"

    def __repr__(self):
        return str(self)

    def __iter__(self):
        return iter(self.coords)

    def frobenius(self, n: int = 1) -> "ProjPoint":
        """Coordinate-wise x -> x^(p^n); a point of the same field."""
        return ProjPoint(self.field, tuple(c.frobenius(n) for c in self.coords))

    def sort_key(self):
        if self.field.order is not None:
            return tuple(c.index() for c in self.coords)
        return tuple(str(c) for c in self.coords)


def point_degree(P: ProjPoint, base: Field) -> int:
    """Size of the Frobenius orbit of P over the subfield ``base``."""
    f = P.field
    if base.p != f.p or f.k % base.k:
        raise ConfigError(f"{base} is not a subfield of {f}")
    Q = P.frobenius(base.k)
    d = 1
    while Q != P:
        Q = Q.frobenius(base.k)
        d += 1
        if d > f.k:
            raise InternalContractViolation("Frobenius orbit failed to close")
    return d


class Line:
    """A line in P^2, stored by its coefficient vector (aX + bY + cZ),
    normalized the same way as point coordinates."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        cs = tuple(field(c) for c in coeffs)
        if len(cs) != 3:
            raise ConfigError("a line needs three coefficients")
        pivot = next((c for c in cs if c), None)
        if pivot is None:
            raise ConfigError("the zero vector does not define a line")
        if pivot != field.one:
            inv = pivot.inverse()
            cs = tuple(c * inv for c in cs)
        self.field = field
        self.coeffs = cs

    @classmethod
    def through(cls, P: ProjPoint, Q: ProjPoint) -> "Line":
        if P.field != Q.field:
            raise ConfigError("points live over different fields")
        a, b, c = P.coords
        d, e, f = Q.coords
        cross = (b * f - c * e, c * d - a * f, a * e - b * d)
        if not any(cross):
            raise ConfigError(f"{P} and {Q} coincide; no unique line")
        return cls(P.field, cross)

    def contains(self, P: ProjPoint) -> bool:
        a, b, c = self.coeffs
        x, y, z = P.coords
        return not (a * x + b * y + c * z)

    def form(self) -> TernaryForm:
        return TernaryForm(self.field, 1, {(1, 0, 0): self.coeffs[0],
                                           (0, 1, 0): self.coeffs[1],
                                           (0, 0, 1): self.coeffs[2]})

    def spanning_points(self):
        """Two distinct points on the line, chosen deterministically."""
        a, b, c = self.coeffs
        f = self.field
        zero, one = f.zero, f.one
        cands = []
        if not a:
            cands.append((one, zero, zero))
        if not b:
            cands.append((zero, one, zero))
        if not c:
            cands.append((zero, zero, one))
        cands += [(b, -a, zero), (c, zero, -a), (zero, c, -b)]
        pts = []
        for v in cands:
            if not any(v):
                continue
            P = ProjPoint(f, v)
            if P not in pts:
                pts.append(P)
            if len(pts) == 2:
                return tuple(pts)
        raise InternalContractViolation("a line always has two points")

    def __eq__(self, other):
        if isinstance(other, Line):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"<line {self.form()}>"


# ---------------------------------------------------------------------------
# Chart helpers: a ternary form as polynomials on the z = 1 chart and on the
# line z = 0.

def _ylists_z1(G: TernaryForm):
    """G(x, y, 1) as a list of UPoly-in-x coefficients, low y-degree first
    (empty list for the zero form)."""
    K = G.field
    buckets: dict = {}
    for (i, j, _k), c in G.coeffs.items():
        buckets.setdefault(j, {})[i] = c
    out = []
    for j in range(max(buckets, default=-1) + 1):
        b = buckets.get(j, {})
        n = max(b, default=-1)
        out.append(UPoly(K, [b.get(i, K.zero) for i in range(n + 1)]))
    return upoly.ystrip(out)


def _binary_z0(G: TernaryForm) -> UPoly:
    """G(x, 1, 0) as a UPoly in x; the point [1:0:0] is not covered and
    needs a separate check."""
    K = G.field
    out = [K.zero] * (G.degree + 1)
    for (i, _j, k), c in G.coeffs.items():
        if k == 0:
            out[i] = c
    return UPoly(K, out)


def _gcd_list(polys):
    g = polys[0]
    for q in polys[1:]:
        g = upoly.gcd(g, q)
    return g


# ---------------------------------------------------------------------------
# Smoothness. The form is smooth iff its gradient scheme is empty; we decide
# that exactly with resultants along the z = 1 chart plus a direct sweep of
# the line z = 0, verifying candidate abscissae by dynamic evaluation.

def _line_z0_clean(forms) -> bool:
    """No singular point on the line Z = 0 (forms = F and its partials)."""
    if not any(G(1, 0, 0) for G in forms):
        return False
    restricted = [b for b in (_binary_z0(G) for G in forms) if b]
    if not restricted:
        return False  # the whole line is singular
    return _gcd_list(restricted).degree() < 1


def _chart_z1_clean(forms):
    """True/False for a definite answer on the z = 1 chart, None when the
    elimination degenerates (all pairwise resultants vanish)."""
    field = forms[0].field
    polys = [p for p in (_ylists_z1(G) for G in forms) if p]
    if not polys:
        raise InternalContractViolation("a nonzero cubic vanished on a chart")
    ypos = [p for p in polys if len(p) >= 2]
    yfree = [p[0] for p in polys if len(p) == 1]
    if not ypos:
        return _gcd_list(yfree).degree() < 1
    constraints = list(yfree)
    for i in range(len(ypos)):
        for j in range(i + 1, len(ypos)):
            R = upoly.sylvester_resultant(ypos[i], ypos[j], field)
            if R:
                constraints.append(R)
    if not constraints:
        if len(ypos) == 1:
            # a single nonconstant condition cuts out a curve: never empty
            return False
        return None
    g = _gcd_list(constraints)
    if g.degree() < 1:
        return True
    return not upoly.common_y_root_exists(g, polys)


def _retry_matrices(field: Field):
    mats = []
    for pm in ((0, 2, 1), (1, 0, 2), (2, 1, 0), (1, 2, 0), (2, 0, 1)):
        mats.append(Mat3(field, [[1 if pm[r] == c else 0 for c in range(3)]
                                 for r in range(3)]))
    if field.order is not None:
        params = [field.from_index(i) for i in range(1, min(field.order, 5))]
    else:
        params = [field.one, field.gen, field.gen + 1]
    for t in params:
        mats.append(Mat3(field, [[1, 0, 0], [t, 1, 0], [0, 0, 1]]))
        mats.append(Mat3(field, [[1, 0, t], [0, 1, 0], [0, 0, 1]]))
        mats.append(Mat3(field, [[1, 0, 0], [0, 1, t], [t, 0, 1]]))
    return mats


def _smooth_check(F: TernaryForm, depth: int = 0) -> bool:
    forms = [F] + [F.partial(i) for i in range(3)]
    if not _line_z0_clean(forms):
        return False
    verdict = _chart_z1_clean(forms)
    if verdict is not None:
        return verdict
    # Every pairwise resultant collapsed; smoothness is invariant under any
    # invertible substitution, so retry in sheared coordinates.
    mats = _retry_matrices(F.field)
    if depth >= len(mats):
        raise InternalContractViolation(
            "singular-locus elimination degenerated in every retry frame")
    return _smooth_check(F.substitute(mats[depth]), depth + 1)


# ---------------------------------------------------------------------------
# The degree-matched char-2 Hessian substitute: each output coefficient is a
# fixed cubic expression in the ten input coefficients.  Index key:
# (a,...,j) = coefficients of (X^3, Y^3, Z^3, X^2Y, X^2Z, XY^2, Y^2Z, XZ^2,
# YZ^2, XYZ) and each row below lists triples of indices to multiply.

_CHAR2_HESSIAN = {
    (3, 0, 0): ((3, 4, 9), (0, 3, 8), (3, 3, 7), (0, 4, 6), (4, 4, 5)),
    (0, 3, 0): ((5, 6, 9), (5, 5, 8), (1, 5, 7), (3, 6, 6), (1, 4, 6)),
    (0, 0, 3): ((7, 8, 9), (4, 8, 8), (2, 3, 8), (6, 7, 7), (2, 5, 7)),
    (2, 1, 0): ((3, 9, 9), (0, 6, 9), (0, 5, 8), (0, 1, 7), (3, 4, 6), (1, 4, 4)),
    (2, 0, 1): ((4, 9, 9), (0, 8, 9), (3, 4, 8), (0, 6, 7), (0, 2, 5), (2, 3, 3)),
    (1, 2, 0): ((5, 9, 9), (1, 4, 9), (0, 1, 8), (1, 3, 7), (0, 6, 6), (4, 5, 6)),
    (0, 2, 1): ((6, 9, 9), (1, 7, 9), (1, 4, 8), (5, 6, 7), (2, 5, 5), (1, 2, 3)),
    (1, 0, 2): ((7, 9, 9), (2, 3, 9), (0, 8, 8), (3, 7, 8), (0, 2, 6), (2, 4, 5)),
    (0, 1, 2): ((8, 9, 9), (2, 5, 9), (5, 7, 8), (1, 7, 7), (2, 3, 6), (1, 2, 4)),
    (1, 1, 1): ((9, 9, 9), (0, 6, 8), (4, 5, 8), (3, 6, 7), (1, 4, 7), (2, 3, 5),
                (0, 1, 2)),
}


class TernaryCubic:
    """A nonzero ternary cubic form, with the curve-theoretic operations."""

    __slots__ = ("field", "form", "_partials", "_smooth", "_hessian")

    def __init__(self, form: TernaryForm):
        if not isinstance(form, TernaryForm):
            raise ConfigError("a TernaryCubic wraps a TernaryForm")
        if form.degree != 3:
            raise DegreeMismatch(f"cubic expected, got degree {form.degree}")
        if not form:
            raise ZeroForm("the zero form cuts out no curve")
        self.field = form.field
        self.form = form
        self._partials = None
        self._smooth = None
        self._hessian = None

    @classmethod
    def from_coeffs(cls, field: Field, values) -> "TernaryCubic":
        return cls(TernaryForm.from_cubic_coeffs(field, values))

    @classmethod
    def parse(cls, text: str, field: Field) -> "TernaryCubic":
        return cls(parse_form(text, field))

    def __eq__(self, other):
        if isinstance(other, TernaryCubic):
            return self.form == other.form
        return NotImplemented

    def __hash__(self):
        return hash(self.form)

    def __str__(self):
        return str(self.form)

    def __repr__(self):
        return f"<cubic {self.form} over {self.field}>"

    def __call__(self, x, y, z) -> FieldElem:
        return self.form(x, y, z)

    # -- basics ----------------------------------------------------------

    def partials(self):
        if self._partials is None:
            self._partials = tuple(self.form.partial(i) for i in range(3))
        return self._partials

    def contains(self, P: ProjPoint) -> bool:
        return not self.form(*P.coords)

    def base_change(self, target: Field, emb=None) -> "TernaryCubic":
        """The same equation with coefficients pushed into an extension."""
        if emb is None:
            emb = upoly.subfield_embedding(self.field, target)
        return TernaryCubic(self.form.map_coefficients(target, emb))

    def _polar(self, v, w) -> FieldElem:
        """Directional derivative sum_i v_i (dF/dX_i)(w)."""
        gx, gy, gz = self.partials()
        return v[0] * gx(*w) + v[1] * gy(*w) + v[2] * gz(*w)

    # -- smoothness and Hessians ------------------------------------------

    def is_smooth(self) -> bool:
        if self._smooth is None:
            self._smooth = _smooth_check(self.form)
        return self._smooth

    def hessian(self) -> "TernaryCubic":
        """det of the second-partials matrix (char != 2), or the classical
        degree-matched coefficient recipe in characteristic 2.  The result
        may be reducible or singular; a zero form is only possible when the
        input itself is singular."""
        if self._hessian is not None:
            return self._hessian
        if self.field.p != 2:
            h = [[self.form.partial(i).partial(j) for j in range(3)]
                 for i in range(3)]
            he = (h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
                  - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
                  + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]))
        else:
            cs = self.form.cubic_coeffs()
            out = {}
            for mono, rows in _CHAR2_HESSIAN.items():
                acc = self.field.zero
                for (i, j, k) in rows:
                    acc = acc + cs[i] * cs[j] * cs[k]
                if acc:
                    out[mono] = acc
            he = TernaryForm(self.field, 3, out)
        if not he:
            if self.is_smooth():
                raise InternalContractViolation(
                    "the Hessian of a smooth cubic vanished identically")
            raise ZeroForm(
                "the Hessian vanishes identically for this singular cubic")
        self._hessian = TernaryCubic(he)
        return self._hessian

    def hasse_invariant_zero(self) -> bool:
        """Whether the coefficient of (XYZ)^(p-1) in F^(p-1) vanishes (the
        supersingularity test for smooth cubics)."""
        p = self.field.p
        if p > 31:
            raise CapExceeded(f"(p-1)-th power expansion with p={p}; cap is 31")
        return not self.form.power_coefficient(p - 1, (p - 1, p - 1, p - 1))

    # -- local intersection theory ----------------------------------------

    def line_multiplicity(self, line: Line, P0: ProjPoint) -> int:
        """Intersection multiplicity of the line with the cubic at P0."""
        if not self.contains(P0):
            raise PointNotOnCurve(f"{P0} is not on the cubic")
        if not line.contains(P0):
            raise PointNotOnLine(f"{P0} is not on the line")
        A, B = line.spanning_points()
        P1 = B if A == P0 else A
        # restriction to the line: F(a P0 + b P1) = c1 a^2 b + c2 a b^2 + c3 b^3
        if self._polar(P1.coords, P0.coords):
            return 1
        if self._polar(P0.coords, P1.coords):
            return 2
        if self.form(*P1.coords):
            return 3
        raise SingularCurve("the line lies inside the cubic")

    def tangent_line(self, P: ProjPoint) -> Line:
        if not self.contains(P):
            raise PointNotOnCurve(f"{P} is not on the cubic")
        g = tuple(gi(*P.coords) for gi in self.partials())
        if not any(g):
            raise NotSmooth(f"singular point {P}; no tangent line")
        return Line(self.field, g)

    def is_flex(self, P: ProjPoint) -> bool:
        return self.line_multiplicity(self.tangent_line(P), P) == 3

    # -- point enumeration --------------------------------------------------

    def rational_points(self):
        """All points of the curve over its (finite) base field, in the
        fixed chart order [1:y:z], [0:1:z], [0:0:1]."""
        field = self.field
        if field.order is None:
            raise CapExceeded("point enumeration needs a finite base field")
        q = field.order
        if q * q + q + 1 > ENUMERATION_CAP:
            raise CapExceeded(
                f"P^2({field}) has {q * q + q + 1} points; cap is {ENUMERATION_CAP}")
        try:
            from . import fastscan
        except ImportError:
            fastscan = None
        if fastscan is not None and fastscan.supported(field):
            return fastscan.curve_points(self)
        F = self.form
        out = []
        one, zero = field.one, field.zero
        for y in field.elements():
            for z in field.elements():
                if not F(one, y, z):
                    out.append(ProjPoint(field, (one, y, z)))
        for z in field.elements():
            if not F(zero, one, z):
                out.append(ProjPoint(field, (zero, one, z)))
        if not F(zero, zero, one):
            out.append(ProjPoint(field, (zero, zero, one)))
        return out

    def flexes(self, K: Field | None = None):
        """All K-rational inflection points (K defaults to the base field;
        an extension base-changes the curve first).

        Finite base: sweep the curve's points for zeros of the Hessian, and
        certify every hit independently with the tangent-multiplicity test.
        Rational-function base: the elimination route (see rational_flexes).
        """
        C = self if K is None or K is self.field else self.base_change(K)
        if C.field.order is None:
            return C.rational_flexes()
        if not C.is_smooth():
            raise NotSmooth("flexes are computed for smooth cubics")
        he = C.hessian().form
        out = []
        for P in C.rational_points():
            if not he(*P.coords):
                if not C.is_flex(P):
                    raise InternalContractViolation(
                        f"{P} lies on curve and Hessian but fails the "
                        "tangent-multiplicity test")
                out.append(P)
        out.sort(key=lambda P: P.sort_key())
        return out

    def rational_flexes(self):
        """Base-field flexes by elimination (no point enumeration); exact
        over both finite fields and F_p(S)."""
        if not self.is_smooth():
            raise NotSmooth("flexes are computed for smooth cubics")
        K = self.field
        he = self.hessian().form
        found = []

        def take(coords):
            P = ProjPoint(K, coords)
            if self.is_flex(P) and P not in found:
                found.append(P)

        # the line z = 0
        if not self.form(1, 0, 0) and not he(1, 0, 0):
            take((K.one, K.zero, K.zero))
        bF, bH = _binary_z0(self.form), _binary_z0(he)
        if not bF:
            raise InternalContractViolation("a smooth cubic contains z = 0")
        g0 = bF if not bH else upoly.gcd(bF, bH)
        for x0 in _field_roots(g0):
            take((x0, K.one, K.zero))
        # the affine chart z = 1
        f_y = _ylists_z1(self.form)
        he_y = _ylists_z1(he)
        if len(f_y) == 1:
            raise InternalContractViolation("a smooth cubic with no y term")
        if len(he_y) == 1:
            elim = he_y[0]
        else:
            elim = upoly.sylvester_resultant(f_y, he_y, K)
            if not elim:
                raise InternalContractViolation(
                    "curve and Hessian share a component despite smoothness")
        if elim.degree() >= 1:
            for x0 in _field_roots(elim):
                fy0 = UPoly(K, [c(x0) for c in f_y])
                hey0 = UPoly(K, [c(x0) for c in he_y])
                if not fy0:
                    raise InternalContractViolation("reducible smooth cubic")
                gy = fy0 if not hey0 else upoly.gcd(fy0, hey0)
                if gy.degree() >= 1:
                    for y0 in _field_roots(gy):
                        take((x0, y0, K.one))
        found.sort(key=lambda P: P.sort_key())
        return found

    # -- the chord-tangent law ----------------------------------------------

    def third_intersection(self, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
        """The residual intersection of the cubic with the line through P
        and Q (the tangent line when P == Q), multiplicities honored."""
        for pt in (P, Q):
            if not self.contains(pt):
                raise PointNotOnCurve(f"{pt} is not on the cubic")
        if P == Q:
            T = self.tangent_line(P)
            A, B = T.spanning_points()
            P1 = B if A == P else A
            c2 = self._polar(P.coords, P1.coords)
            c3 = self.form(*P1.coords)
            if not c2 and not c3:
                raise SingularCurve("a tangent line lies inside the cubic")
            v = tuple(-c3 * a + c2 * b for a, b in zip(P.coords, P1.coords))
            return ProjPoint(self.field, v)
        c1 = self._polar(Q.coords, P.coords)
        c2 = self._polar(P.coords, Q.coords)
        if not c1 and not c2:
            raise SingularCurve("a chord lies inside the cubic")
        v = tuple(-c2 * a + c1 * b for a, b in zip(P.coords, Q.coords))
        return ProjPoint(self.field, v)

    def chord_tangent_add(self, O: ProjPoint, P: ProjPoint,
                          Q: ProjPoint) -> ProjPoint:
        """P + Q for the group law with origin O (which must be a flex)."""
        if not self.is_flex(O):
            raise OriginNotFlex(f"{O} is not an inflection point")
        R = self.third_intersection(P, Q)
        return self.third_intersection(R, O)

    def three_torsion_count(self, O: ProjPoint, K: Field | None = None) -> int:
        """#{P in C(K) : P + P + P = O} under the chord-tangent law with
        origin O (K defaults to the base field)."""
        C = self
        if K is not None and K is not self.field:
            emb = upoly.subfield_embedding(self.field, K)
            C = self.base_change(K, emb)
            O = ProjPoint(K, tuple(emb(c) for c in O.coords))
        if not C.is_flex(O):
            raise OriginNotFlex(f"{O} is not an inflection point")

        def add(A, B):
            return C.third_intersection(C.third_intersection(A, B), O)

        count = 0
        for P in C.rational_points():
            if add(add(P, P), P) == O:
                count += 1
        return count

    # -- closure data (implemented in the closure module) --------------------

    def flex_closure_report(self):
        from . import closure
        return closure.flex_closure_report(self)

    def hesse_normal_form(self):
        from . import closure
        return closure.hesse_normal_form(self)


def _field_roots(f: UPoly):
    """Roots of f in its own coefficient field, for both finite fields and
    F_p(S)."""
    if f.field.order is None:
        return upoly.rational_roots(f)
    return upoly.roots(f)
