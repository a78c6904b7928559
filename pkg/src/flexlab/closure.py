"""Flex fields of definition and the Hesse-pencil normal form.

The closure report factors the inflection scheme of a smooth cubic over a
finite field into Frobenius orbits: an eliminant in x from the curve and its
Hessian, then a y-resolvent over each residue field, with every orbit
representative certified by the tangent-multiplicity test and an explicit
orbit-length count.  The normal-form routine picks the two smallest flexes
over the smallest field carrying two of them, completes them to a collinear
triple, and rewrites the curve as X^3 + Y^3 + Z^3 + lam*XYZ by exact linear
algebra on the tangent triangle of that triple.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import lcm

from .errors import (CapExceeded, InternalContractViolation, LemmaViolated,
                     NotSmooth, RequiresCharNot3)
from .fields import Field, FieldElem
from .forms import Mat3, TernaryForm
from . import upoly
from .upoly import UPoly
from .cubic import (Line, ProjPoint, TernaryCubic, point_degree,
                    _binary_z0, _ylists_z1)


def _ident(a):
    return a


def _chain(*fns):
    live = [f for f in fns if f is not _ident]
    if not live:
        return _ident
    if len(live) == 1:
        return live[0]

    def go(a):
        for f in live:
            a = f(a)
        return a

    return go


def _embed_mat(M: Mat3, target: Field, emb) -> Mat3:
    return Mat3(target, [[emb(e) for e in row] for row in M.rows])


def _embed_point(P: ProjPoint, target: Field, emb) -> ProjPoint:
    return ProjPoint(target, tuple(emb(c) for c in P.coords))


def _row_mat(row, M: Mat3):
    """Row covector times matrix (how linear-form coefficients transform)."""
    return tuple(sum((row[i] * M.rows[i][j] for i in range(3)),
                     M.field.zero) for j in range(3))


def _diag(field: Field, a, b, c) -> Mat3:
    z = field.zero
    return Mat3(field, [[field(a), z, z], [z, field(b), z], [z, z, field(c)]])


# ---------------------------------------------------------------------------
# Frobenius orbits of flexes.

@dataclass
class FlexOrbit:
    """One Frobenius orbit of inflection points: a representative over an
    explicit host field, the orbit length over the base, and the embedding
    of the base into the host."""

    point: ProjPoint
    degree: int
    host: Field
    embed: object = dc_field(repr=False, default=_ident)


def _eval_ylist(ylist, emb, xbar, L: Field) -> UPoly:
    """Specialize a y-list of x-polynomials at x = xbar, coefficients pushed
    through emb into L; the result is a polynomial in y over L."""
    out = []
    for cx in ylist:
        acc = L.zero
        for c in reversed(cx.coeffs):
            acc = acc * xbar + emb(c)
        out.append(acc)
    return UPoly(L, out)


def _algebraic_flexes(C: TernaryCubic):
    """All flexes of C over an algebraic closure of its finite base field,
    grouped into Frobenius orbits with certified representatives."""
    K = C.field
    if K.order is None:
        raise CapExceeded("orbit analysis needs a finite base field")
    if not C.is_smooth():
        raise NotSmooth("flex orbits are computed for smooth cubics")
    F = C.form
    he = C.hessian().form
    orbits = []

    def certify(host, emb, coords, expected):
        P = ProjPoint(host, coords)
        Ch = C if host is K else C.base_change(host, emb)
        if not Ch.is_flex(P):
            raise InternalContractViolation(
                f"{P} failed flex certification over {host}")
        if point_degree(P, K) != expected:
            raise InternalContractViolation(
                f"orbit of {P} has the wrong length over {K}")
        orbits.append(FlexOrbit(point=P, degree=expected, host=host, embed=emb))

    # the point [1:0:0], then the rest of the line z = 0 (as [x:1:0])
    if not F(1, 0, 0) and not he(1, 0, 0):
        certify(K, _ident, (K.one, K.zero, K.zero), 1)
    bF, bH = _binary_z0(F), _binary_z0(he)
    if not bF:
        raise InternalContractViolation("a smooth cubic contains the line z = 0")
    g0 = bF if not bH else upoly.gcd(bF, bH)
    if g0.degree() >= 1:
        for gfac, _mult in upoly.factor(g0)[1]:
            d1 = gfac.degree()
            if d1 == 1:
                certify(K, _ident, (-gfac.coeffs[0], K.one, K.zero), 1)
            else:
                fl = upoly.flatten_extension(K, gfac)
                L1 = fl.quotient_field
                certify(L1, fl.embed, (fl.root, L1.one, L1.zero), d1)

    # the affine chart z = 1: eliminate y, then resolve y over each x-orbit
    f_y = _ylists_z1(F)
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
        for gfac, _mult in upoly.factor(elim)[1]:
            d1 = gfac.degree()
            if d1 == 1:
                L1, emb1, xbar = K, _ident, -gfac.coeffs[0]
            else:
                fl = upoly.flatten_extension(K, gfac)
                L1, emb1, xbar = fl.quotient_field, fl.embed, fl.root
            fy1 = _eval_ylist(f_y, emb1, xbar, L1)
            hey1 = _eval_ylist(he_y, emb1, xbar, L1)
            if not fy1:
                raise InternalContractViolation("reducible smooth cubic")
            gy = fy1 if not hey1 else upoly.gcd(fy1, hey1)
            if gy.degree() < 1:
                continue  # a spurious eliminant root (leading-term drop)
            for hfac, _m2 in upoly.factor(gy)[1]:
                d2 = hfac.degree()
                if d2 == 1:
                    certify(L1, emb1, (xbar, -hfac.coeffs[0], L1.one), d1)
                else:
                    fl2 = upoly.flatten_extension(L1, hfac)
                    L2 = fl2.quotient_field
                    certify(L2, _chain(emb1, fl2.embed),
                            (fl2.embed(xbar), fl2.root, L2.one), d1 * d2)

    orbits.sort(key=lambda o: (o.degree, str(o.point)))
    return orbits


# ---------------------------------------------------------------------------
# The closure report.

@dataclass
class FlexReport:
    """Inflection points of a smooth cubic over the algebraic closure,
    grouped by field of definition."""

    field: Field
    entries: list
    n_rat: int
    n_alg: int
    supersingular: bool
    splitting_degree: int

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "flexes": [{"degree": o.degree, "point": str(o.point)}
                       for o in self.entries],
            "n_rat": self.n_rat,
            "n_alg": self.n_alg,
            "supersingular": self.supersingular,
        }


def flex_closure_report(C: TernaryCubic) -> FlexReport:
    K = C.field
    if K.order is None:
        raise CapExceeded("the closure report needs a finite base field")
    if not C.is_smooth():
        raise NotSmooth("the closure report is defined for smooth cubics")
    orbits = _algebraic_flexes(C)
    n_alg = sum(o.degree for o in orbits)
    n_rat = sum(1 for o in orbits if o.degree == 1)
    ss = C.hasse_invariant_zero()
    if K.p == 3:
        if n_alg not in (1, 3):
            raise InternalContractViolation(
                f"{n_alg} flexes over the closure in characteristic 3")
        if (n_alg == 1) != ss:
            raise InternalContractViolation(
                "flex count disagrees with the Hasse invariant")
    elif n_alg != 9:
        raise InternalContractViolation(
            f"{n_alg} flexes over the closure (nine expected)")
    e = lcm(*(o.degree for o in orbits))
    if K.p == 3:
        if e > 3:
            raise LemmaViolated(
                f"characteristic-3 splitting degree {e} exceeds 3")
    else:
        if e not in (1, 2, 3, 4, 6, 8):
            raise LemmaViolated(f"splitting degree {e} is not an allowed order")
        if K.order % 3 == 1 and e > 6:
            raise LemmaViolated(
                f"splitting degree {e} with cube roots of unity in the base")
    return FlexReport(field=K, entries=orbits, n_rat=n_rat, n_alg=n_alg,
                      supersingular=ss, splitting_degree=e)


# ---------------------------------------------------------------------------
# Hesse normal form.

@dataclass
class HesseResult:
    """Outcome of the normal-form search: when reachable, an invertible M
    and scalar s over ``field`` with  s * (X^3+Y^3+Z^3+lam*XYZ) = F(M x),
    F being the input pushed into ``field`` by ``embed``."""

    reachable: bool
    field: Field
    lam: FieldElem | None = None
    matrix: Mat3 | None = None
    scalar: FieldElem | None = None
    case: str = ""
    reason: str = ""
    embed: object = dc_field(repr=False, default=_ident)

    def to_json(self) -> dict:
        out = {"reachable": self.reachable, "field": str(self.field),
               "case": self.case}
        if self.reachable:
            out["lambda"] = str(self.lam)
            out["matrix"] = [[str(e) for e in row] for row in self.matrix.rows]
            out["scalar"] = str(self.scalar)
        else:
            out["reason"] = self.reason
        return out


def _match_two(F: TernaryForm, G1: TernaryForm, G2: TernaryForm):
    """(a, b) with a*G1 + b*G2 == F exactly, or None when no such pair
    exists (also when G1, G2 fail to be independent)."""
    L = F.field
    keys = sorted(set(F.coeffs) | set(G1.coeffs) | set(G2.coeffs))
    rows = [(G1.coeffs.get(k, L.zero), G2.coeffs.get(k, L.zero),
             F.coeffs.get(k, L.zero)) for k in keys]
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
            if not det:
                continue
            inv = det.inverse()
            a = (rows[i][2] * rows[j][1] - rows[i][1] * rows[j][2]) * inv
            b = (rows[i][0] * rows[j][2] - rows[i][2] * rows[j][0]) * inv
            if (G1 * a + G2 * b) - F:
                return None
            return a, b
    return None


def _minimal_flex_pair(C: TernaryCubic):
    """(host, embed, P0, P1): the lexicographically least pair of distinct
    flexes over the smallest field of definition carrying at least two."""
    K = C.field
    orbits = _algebraic_flexes(C)
    rational = sorted((o.point for o in orbits if o.degree == 1),
                      key=lambda P: P.sort_key())
    if len(rational) >= 2:
        return K, _ident, rational[0], rational[1]
    higher = [o for o in orbits if o.degree >= 2]
    if not higher:
        raise InternalContractViolation(
            "no pair of flexes over any extension")
    dmin = min(o.degree for o in higher)
    lead = sorted((o for o in higher if o.degree == dmin),
                  key=lambda o: str(o.point))[0]
    L, emb = lead.host, lead.embed
    cands = [_embed_point(P, L, emb) for P in rational]
    Q = lead.point
    for _ in range(dmin):
        cands.append(Q)
        Q = Q.frobenius(K.k)
    cands.sort(key=lambda P: P.sort_key())
    return L, emb, cands[0], cands[1]


def _with_omega(L: Field):
    """(host, embed, omega) with omega a primitive cube root of unity."""
    if L.p == 3:
        raise RequiresCharNot3(
            "cube roots of unity degenerate in characteristic 3")
    f = UPoly(L, [L.one, L.one, L.one])  # x^2 + x + 1
    rs = upoly.roots(f)
    if rs:
        return L, _ident, rs[0]
    fl = upoly.flatten_extension(L, f)
    return fl.quotient_field, fl.embed, fl.root


def _cube_root(L: Field, c: FieldElem):
    """(host, embed, r) with r**3 equal to c pushed into the host.  When c
    is a non-cube the callers have already adjoined omega, so x^3 - c is
    irreducible and a degree-3 extension resolves it."""
    if not c:
        raise InternalContractViolation("cube root of zero requested")
    f = UPoly(L, [-c, L.zero, L.zero, L.one])
    rs = upoly.roots(f)
    if rs:
        return L, _ident, rs[0]
    fl = upoly.flatten_extension(L, f)
    return fl.quotient_field, fl.embed, fl.root


_PENCIL_KEYS = {(3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)}


def hesse_normal_form(C: TernaryCubic) -> HesseResult:
    """Rewrite the cubic as X^3 + Y^3 + Z^3 + lam*XYZ over an explicit
    extension, or certify that no member of that pencil is equivalent to it
    (exactly the supersingular curves in characteristic 3)."""
    K = C.field
    if K.order is None:
        raise CapExceeded("the normal-form search needs a finite base field")
    if not C.is_smooth():
        raise NotSmooth("singular cubics have no Hesse normal form")

    if K.p == 3 and C.hasse_invariant_zero():
        return HesseResult(
            reachable=False, field=K, case="char3-supersingular",
            reason="a single geometric flex, while every smooth member of "
                   "the pencil in characteristic 3 has three")

    # already a pencil member (up to scale): no coordinate change needed
    cs = C.form.coeffs
    if set(cs) <= _PENCIL_KEYS:
        a = cs.get((3, 0, 0), K.zero)
        if a and a == cs.get((0, 3, 0), K.zero) == cs.get((0, 0, 3), K.zero):
            lam = cs.get((1, 1, 1), K.zero) * a.inverse()
            return _finish(C, K, _ident, lam, Mat3.identity(K), a, "pencil")

    L, emb0, P0, P1 = _minimal_flex_pair(C)
    CL = C if L is K else C.base_change(L, emb0)
    P2 = CL.third_intersection(P0, P1)
    if P2 == P0 or P2 == P1 or not CL.is_flex(P2):
        raise InternalContractViolation(
            "the line through two flexes failed to close a collinear triple")
    T0, T1, T2 = (CL.tangent_line(P) for P in (P0, P1, P2))
    Lf = Line.through(P0, P1)
    if not Lf.contains(P2):
        raise InternalContractViolation("flex triple is not collinear")

    A = Mat3(L, [T0.coeffs, T1.coeffs, T2.coeffs])
    if A.det():
        return _frame_triangle(C, L, emb0, Lf, A)
    if K.p == 3:
        raise InternalContractViolation(
            "concurrent tangent triangle on an ordinary characteristic-3 cubic")
    return _frame_concurrent(C, L, emb0, Lf, (T0, T1, T2))


def _frame_triangle(C, L, emb0, Lf, A):
    """Tangents in general position: send them to the coordinate lines and
    the flex line to X + Y + Z."""
    Ainv = A.inverse()
    al, be, ga = _row_mat(Lf.coeffs, Ainv)
    if not (al and be and ga):
        raise InternalContractViolation("flex line through a triangle vertex")
    M2 = Ainv * _diag(L, al.inverse(), be.inverse(), ga.inverse())
    CLform = C.form.map_coefficients(L, emb0) if L is not C.field else C.form
    F2 = CLform.substitute(M2)
    lin = TernaryForm(L, 1, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    sum3 = lin * lin * lin
    xyz = TernaryForm(L, 3, {(1, 1, 1): 1})
    got = _match_two(F2, sum3, xyz)
    if got is None or not got[0] or not got[1]:
        raise InternalContractViolation(
            "curve is not in the pencil of its flex line and tangent triangle")
    a2, b2 = got

    if L.p == 3:
        # (X+Y+Z)^3 is already X^3+Y^3+Z^3 here
        return _finish(C, L, emb0, b2 * a2.inverse(), M2, a2, "triangle")

    L2, emb2, om = _with_omega(L)
    if L2 is not L:
        M2, a2, b2 = _embed_mat(M2, L2, emb2), emb2(a2), emb2(b2)
    W = Mat3(L2, [[L2.one, L2.one, L2.one],
                  [L2.one, om, om * om],
                  [L2.one, om * om, om]])
    acoef = a2 * 27 + b2
    if not acoef:
        raise InternalContractViolation(
            "degenerate pencil member while separating the flex line")
    L3, emb3, rho = _cube_root(L2, b2 * acoef.inverse())
    if L3 is not L2:
        M2, W, b2 = (_embed_mat(M2, L3, emb3), _embed_mat(W, L3, emb3),
                     emb3(b2))
    M_total = M2 * W * _diag(L3, rho, 1, 1)
    lam = -(rho * 3)
    return _finish(C, L3, _chain(emb0, emb2, emb3), lam, M_total, b2,
                   "triangle")


def _frame_concurrent(C, L, emb0, Lf, tangents):
    """Tangents through a common vertex: send the vertex to [0:0:1], align
    the tangent slopes with the cube roots of unity, and the flex line to
    Z = 0's complement; the result lands on lam = 0."""
    T0, T1, T2 = tangents
    a0, b0, c0 = T0.coeffs
    a1, b1, c1 = T1.coeffs
    cross = (b0 * c1 - c0 * b1, c0 * a1 - a0 * c1, a0 * b1 - b0 * a1)
    if not any(cross):
        raise InternalContractViolation("coincident tangent lines in a triple")
    V = ProjPoint(L, cross)
    if not T2.contains(V):
        raise InternalContractViolation(
            "tangent lines of a flex triple are pairwise but not triply "
            "concurrent")

    L2, emb2, om = _with_omega(L)
    emb02 = _chain(emb0, emb2)
    CLform = C.form.map_coefficients(L2, emb02) if L2 is not C.field else C.form
    tt = [tuple(emb2(c) for c in T.coeffs) for T in (T0, T1, T2)]
    lf = tuple(emb2(c) for c in Lf.coeffs)
    Vc = tuple(emb2(c) for c in V.coords)

    # a basis whose last column is the vertex
    pivot = next(i for i, c in enumerate(Vc) if c)
    units = [j for j in range(3) if j != pivot]
    cols = [tuple(L2.one if r == j else L2.zero for r in range(3))
            for j in units] + [Vc]
    N = Mat3(L2, [[cols[c][r] for c in range(3)] for r in range(3)])
    slopes = [_row_mat(t, N)[:2] for t in tt]
    if any(_row_mat(t, N)[2] for t in tt):
        raise InternalContractViolation("tangent through the vertex moved off it")

    targets = [(L2.one, L2.one), (L2.one, om), (L2.one, om * om)]
    B = _slope_align(L2, slopes, targets)
    MB = Mat3(L2, [[B[0][0], B[0][1], L2.zero],
                   [B[1][0], B[1][1], L2.zero],
                   [L2.zero, L2.zero, L2.one]])
    M3 = N * MB
    al, be, ga = _row_mat(lf, M3)
    if not ga:
        raise InternalContractViolation("flex line through the tangent vertex")
    gi = ga.inverse()
    M4 = Mat3(L2, [[L2.one, L2.zero, L2.zero],
                   [L2.zero, L2.one, L2.zero],
                   [-(al * gi), -(be * gi), gi]])
    M34 = M3 * M4
    F4 = CLform.substitute(M34)
    z3 = TernaryForm(L2, 3, {(0, 0, 3): 1})
    x3y3 = TernaryForm(L2, 3, {(3, 0, 0): 1, (0, 3, 0): 1})
    got = _match_two(F4, z3, x3y3)
    if got is None or not got[0] or not got[1]:
        raise InternalContractViolation(
            "curve is not in the pencil of its flex line and tangent triangle")
    a4, b4 = got
    L3, emb3, zeta = _cube_root(L2, b4 * a4.inverse())
    if L3 is not L2:
        M34, b4 = _embed_mat(M34, L3, emb3), emb3(b4)
    M_total = M34 * _diag(L3, 1, 1, zeta)
    return _finish(C, L3, _chain(emb02, emb3), L3.zero, M_total, b4,
                   "concurrent")


def _slope_align(L2: Field, slopes, targets):
    """The 2x2 change of (X, Y) sending three distinct line slopes through
    [0:0:1] to the three target slopes, by a nullspace computation."""
    rows = []
    for (c, d), (tx, ty) in zip(slopes, targets):
        # det [ (c,d) * B ; (tx,ty) ] = 0, unknowns b00 b01 b10 b11
        rows.append([c * ty, -(c * tx), d * ty, -(d * tx)])
    ker = _nullspace(L2, rows, 4)
    if len(ker) != 1:
        raise InternalContractViolation(
            f"slope alignment kernel has dimension {len(ker)}")
    b00, b01, b10, b11 = ker[0]
    if not (b00 * b11 - b01 * b10):
        raise InternalContractViolation("slope alignment is not invertible")
    return ((b00, b01), (b10, b11))


def _nullspace(field: Field, rows, n):
    """Basis of the kernel of the given row list, by Gaussian elimination."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        v = [field.zero] * n
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -mat[i][fc]
        basis.append(tuple(v))
    return basis


def _finish(C, host, emb, lam, M, scalar, case) -> HesseResult:
    """Exact verification shared by every branch: the substituted form must
    equal scalar * (X^3+Y^3+Z^3+lam*XYZ), with lam outside the singular
    locus of the pencil."""
    F = C.form.map_coefficients(host, emb) if host is not C.field else C.form
    target = TernaryForm(host, 3, {(3, 0, 0): scalar, (0, 3, 0): scalar,
                                   (0, 0, 3): scalar, (1, 1, 1): scalar * lam})
    if not M.det():
        raise InternalContractViolation("normal-form matrix is singular")
    if F.substitute(M) - target:
        raise InternalContractViolation(
            "normal-form verification failed: substituted form is not the "
            "expected pencil member")
    if lam * lam * lam == host(-27):
        raise InternalContractViolation(
            "normal form landed on a singular pencil member")
    return HesseResult(reachable=True, field=host, lam=lam, matrix=M,
                       scalar=scalar, case=case, embed=emb)
