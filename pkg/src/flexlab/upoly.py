"""Univariate polynomials over any coefficient Field, and the algorithms on
them that the geometry needs.

The algorithmic inventory:

* arithmetic, gcd / extended gcd, modular exponentiation;
* factorization over finite fields (distinct-degree plus Cantor-Zassenhaus,
  with the trace construction in characteristic 2), radicals via inverse
  Frobenius, and root extraction;
* minimal polynomials over the prime field by Krylov linear algebra, and
  "flattening": turning K[x]/(g) for an extension K and irreducible g into a
  single explicit-modulus field together with the embedding of K and a root
  of g;
* Lagrange and Cauchy (rational-function) interpolation;
* rational root extraction over F_p(S) by the rational-root theorem in the
  UFD F_p[S];
* Sylvester resultants of bivariate polynomials by fraction-free Bareiss
  elimination, and a dynamic-evaluation decision procedure for "do these
  y-polynomials share a root above some root of m(x)?" that splits the
  modulus whenever a zero divisor shows up, so it never needs to factor
  anything over the coefficient field.

Randomized splitting steps draw from an rng seeded by hashing the inputs, so
every run of every routine here is deterministic.
"""

from __future__ import annotations

import hashlib
import random

from .errors import (
    BadFactorization,
    DivisionByZero,
    InternalContractViolation,
)
from .fields import (
    EXTENSION,
    GF,
    PRIME,
    Field,
    FieldElem,
    pdivmod,
    pgcd,
    pmul,
    pstrip,
)


def deterministic_rng(*parts) -> random.Random:
    """An rng whose seed is a hash of the (canonically printed) inputs."""
    digest = hashlib.sha256(repr(parts).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


class UPoly:
    """Dense univariate polynomial over a Field; immutable.

    Coefficients run from degree 0 upward with no trailing zeros, so the
    zero polynomial has an empty coefficient tuple and ``degree() == -1``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def of(cls, field: Field, values) -> "UPoly":
        return cls(field, [field(v) for v in values])

    @classmethod
    def x(cls, field: Field) -> "UPoly":
        return cls(field, (field.zero, field.one))

    @classmethod
    def const(cls, field: Field, value) -> "UPoly":
        return cls(field, (field(value),))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> FieldElem:
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c)
            if i == 0:
                parts.append(f"({cs})" if "+" in cs or "/" in cs else cs)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                if c == self.field.one:
                    parts.append(xs)
                else:
                    head = f"({cs})" if "+" in cs or "/" in cs else cs
                    parts.append(f"{head}*{xs}")
        return "+".join(parts)

    def __add__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly(self.field, out)

    def __neg__(self):
        return UPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldElem) or isinstance(other, int):
            s = self.field(other)
            return UPoly(self.field, [c * s for c in self.coeffs])
        if not isinstance(other, UPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly(self.field, ())
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
        return UPoly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        if not other:
            raise DivisionByZero("polynomial division by zero")
        db = other.degree()
        if self.degree() < db:
            return UPoly(self.field, ()), self
        inv = other.lc().inverse()
        zero = self.field.zero
        r = list(self.coeffs)
        q = [zero] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c:
                c = c * inv
                q[i - db] = c
                for j, bc in enumerate(other.coeffs):
                    r[i - db + j] = r[i - db + j] - c * bc
        return UPoly(self.field, q), UPoly(self.field, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UPoly":
        if not self or self.lc() == self.field.one:
            return self
        return self * self.lc().inverse()

    def derivative(self) -> "UPoly":
        return UPoly(self.field, [i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, point):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def shift_compose(self, a) -> "UPoly":
        """self(x + a)."""
        out = UPoly(self.field, ())
        xp = UPoly.of(self.field, (a, 1))
        for c in reversed(self.coeffs):
            out = out * xp + UPoly(self.field, (c,))
        return out


def gcd(f: UPoly, g: UPoly) -> UPoly:
    while g:
        f, g = g, f % g
    return f.monic()


def extgcd(f: UPoly, g: UPoly):
    """(d, s, t) with s*f + t*g = d, d monic or zero."""
    field = f.field
    r0, r1 = f, g
    s0, s1 = UPoly.const(field, 1), UPoly(field, ())
    t0, t1 = UPoly(field, ()), UPoly.const(field, 1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        c = r0.lc().inverse()
        r0, s0, t0 = r0 * c, s0 * c, t0 * c
    return r0, s0, t0


def pow_mod(base: UPoly, e: int, m: UPoly) -> UPoly:
    if e < 0:
        raise InternalContractViolation("negative exponent in pow_mod")
    result = UPoly.const(base.field, 1) % m
    base = base % m
    while e:
        if e & 1:
            result = (result * base) % m
        e >>= 1
        if e:
            base = (base * base) % m
    return result


# ---------------------------------------------------------------------------
# Factorization over finite fields.

def _pth_root_elem(c: FieldElem) -> FieldElem:
    f = c.field
    if f.kind == PRIME:
        return c
    if f.kind == EXTENSION:
        return c ** (f.p ** (f.k - 1))
    raise InternalContractViolation("p-th roots need a finite field")


def pth_root_poly(f: UPoly) -> UPoly:
    """g with g(x)^p = f(x), for f with exponents all divisible by p."""
    p = f.field.p
    out = []
    for i, c in enumerate(f.coeffs):
        if i % p == 0:
            out.append(_pth_root_elem(c))
        elif c:
            raise InternalContractViolation("not a p-th power polynomial")
    return UPoly(f.field, out)


def radical(f: UPoly) -> UPoly:
    """Product of the distinct monic irreducible factors of f (finite field)."""
    if f.field.order is None:
        raise InternalContractViolation("radical over F_p(S) is out of scope")
    if not f:
        raise InternalContractViolation("radical of the zero polynomial")
    f = f.monic()
    if f.degree() == 0:
        return f
    d = f.derivative()
    if not d:
        return radical(pth_root_poly(f))
    g = gcd(f, d)
    w = f // g
    # w holds each factor of multiplicity prime to p exactly once; what is
    # left of g after stripping all w-factors is a perfect p-th power.
    rest = g
    h = gcd(rest, w)
    while h.degree() > 0:
        rest = rest // h
        h = gcd(rest, w)
    if rest.degree() == 0:
        return w
    return w * radical(pth_root_poly(rest))


def distinct_degree_factor(f: UPoly):
    """For squarefree monic f: [(product of irreducibles of degree d, d)]."""
    q = f.field.order
    out = []
    h = UPoly.x(f.field)
    x = UPoly.x(f.field)
    d = 0
    while f.degree() > 0:
        d += 1
        if 2 * d > f.degree():
            out.append((f, f.degree()))
            break
        h = pow_mod(h, q, f)
        g = gcd(h - x, f)
        if g.degree() > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    return out


def equal_degree_split(f: UPoly, d: int, rng=None):
    """Split squarefree monic f, all of whose irreducible factors have
    degree d, into those factors (Cantor-Zassenhaus)."""
    field = f.field
    if f.degree() == d:
        return [f]
    if rng is None:
        rng = deterministic_rng("edf", str(field), tuple(str(c) for c in f.coeffs), d)
    q = field.order
    while True:
        a = UPoly(field, [field.random(rng) for _ in range(f.degree())])
        if a.degree() < 1:
            continue
        g = gcd(a, f)
        if 0 < g.degree() < f.degree():
            break
        if field.p == 2:
            # absolute trace of a into F_2, computed mod f
            k = field.k * d
            t = a % f
            acc = t
            for _ in range(k - 1):
                t = (t * t) % f
                acc = acc + t
            g = gcd(acc, f)
        else:
            b = pow_mod(a, (q ** d - 1) // 2, f)
            g = gcd(b - UPoly.const(field, 1), f)
        if 0 < g.degree() < f.degree():
            break
    return sorted(
        equal_degree_split(g.monic(), d, rng) + equal_degree_split((f // g).monic(), d, rng),
        key=lambda h: [c.index() for c in h.coeffs],
    )


def factor(f: UPoly):
    """(leading unit, [(monic irreducible, multiplicity), ...]) over a finite
    field, deterministically ordered."""
    if f.field.order is None:
        raise InternalContractViolation("factorization over F_p(S) is out of scope")
    if not f:
        raise InternalContractViolation("factorization of the zero polynomial")
    unit = f.lc()
    f = f.monic()
    if f.degree() == 0:
        return unit, []
    out = []
    for part, d in distinct_degree_factor(radical(f)):
        for irr in equal_degree_split(part, d):
            mult = 0
            while True:
                quo, rem = divmod(f, irr)
                if rem:
                    break
                f = quo
                mult += 1
            out.append((irr, mult))
    if f.degree() != 0:
        raise BadFactorization("multiplicity accounting failed")
    out.sort(key=lambda im: (im[0].degree(), [c.index() for c in im[0].coeffs]))
    return unit, out


def roots(f: UPoly):
    """Distinct roots of f in its own (finite) coefficient field, sorted."""
    if not f:
        raise InternalContractViolation("roots of the zero polynomial")
    field = f.field
    if f.degree() == 0:
        return []
    x = UPoly.x(field)
    g = gcd(pow_mod(x, field.order, f) - x, f)
    if g.degree() == 0:
        return []
    out = [-h.coeffs[0] for h in equal_degree_split(g, 1)]
    out.sort(key=lambda r: r.index())
    return out


def is_irreducible(f: UPoly) -> bool:
    if f.degree() < 1:
        return False
    if f.degree() == 1:
        return True
    ddf = distinct_degree_factor(radical(f.monic()))
    return len(ddf) == 1 and ddf[0][0].degree() == f.degree() == ddf[0][1]


# ---------------------------------------------------------------------------
# Linear algebra over F_p: minimal polynomials and flattening of towers.

def _solve_unique(rows, rhs_list, p):
    """Solve M x = rhs for each rhs (all int vectors mod p); M square
    invertible, destructive on copies."""
    n = len(rows)
    m = [list(row) + [r[i] for r in rhs_list] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] % p), None)
        if piv is None:
            raise InternalContractViolation("singular matrix in flattening")
        m[col], m[piv] = m[piv], m[col]
        inv = pow(m[col][col], -1, p)
        m[col] = [v * inv % p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] % p:
                c = m[r][col]
                m[r] = [(vr - c * vc) % p for vr, vc in zip(m[r], m[col])]
    return [[m[i][n + j] for i in range(n)] for j in range(len(rhs_list))]


def minpoly_over_prime(a: FieldElem) -> tuple:
    """Monic minimal polynomial of a over F_p, as an int tuple."""
    field = a.field
    p = field.p
    if field.kind == PRIME:
        return ((-a.val) % p, 1)
    k = field.k

    def vec(e):
        v = list(e.val) + [0] * (k - len(e.val))
        return v

    # row-reduce powers of a incrementally, tracking the combination
    basis = []  # (pivot, vector, combo)
    power = field.one
    combo_len = k + 1
    for i in range(k + 1):
        v = vec(power)
        combo = [0] * combo_len
        combo[i] = 1
        for pivot, bv, bc in basis:
            c = v[pivot]
            if c:
                v = [(x - c * y) % p for x, y in zip(v, bv)]
                combo = [(x - c * y) % p for x, y in zip(combo, bc)]
        pivot = next((j for j, x in enumerate(v) if x % p), None)
        if pivot is None:
            inv = pow(combo[i], -1, p)
            cs = [c * inv % p for c in combo[: i + 1]]
            return pstrip(cs)
        inv = pow(v[pivot], -1, p)
        basis.append((pivot, [x * inv % p for x in v], [x * inv % p for x in combo]))
        power = power * a
    raise InternalContractViolation("minimal polynomial search overran the dimension")


class Flattened:
    """Result of collapsing K[x]/(g) to a single explicit-modulus field L:
    ``embed`` maps K into L and ``root`` is the image of x (a root of g)."""

    __slots__ = ("quotient_field", "embed", "root")

    def __init__(self, quotient_field, embed, root):
        self.quotient_field = quotient_field
        self.embed = embed
        self.root = root


def flatten_extension(K: Field, g: UPoly) -> Flattened:
    """Collapse K[x]/(g), for monic irreducible g over the finite field K,
    into an explicit extension of F_p.

    The returned field's modulus is re-verified by trial division at
    construction, so a reducible g cannot slip through silently.
    """
    if g.field != K or not g or g.lc() != K.one:
        raise InternalContractViolation("flattening needs a monic polynomial over K")
    p = K.p
    d = g.degree()
    if d == 1:
        return Flattened(K, lambda a: K(a), -g.coeffs[0])
    if K.kind == PRIME:
        try:
            L = GF(p ** d, modulus=tuple(c.val for c in g.coeffs))
        except ValueError as exc:
            raise BadFactorization(f"flattening modulus was reducible: {exc}") from exc
        return Flattened(L, lambda a, L=L: L(a.val if isinstance(a, FieldElem) else a), L.gen)

    k = K.k
    n = k * d
    zero, one = K.zero, K.one

    def rmul(a, b):
        # product in K[x]/(g) on length-d coefficient lists over K
        out = [zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
        for i in range(2 * d - 2, d - 1, -1):
            c = out[i]
            if c:
                out[i] = zero
                for j, gc in enumerate(g.coeffs[:-1]):
                    out[i - d + j] = out[i - d + j] - c * gc
        return out[:d]

    def rvec(a):
        v = []
        for c in a:
            cv = list(c.val) + [0] * (k - len(c.val))
            v.extend(cv)
        return v

    rng = deterministic_rng("flatten", str(K), tuple(str(c) for c in g.coeffs))
    candidates = []
    for c in range(p):
        candidates.append([K(c), one] + [zero] * (d - 2))  # x + c
    for c in range(1, p):
        candidates.append([K.gen * c, one] + [zero] * (d - 2))  # x + c*u
    while True:
        if candidates:
            theta = candidates.pop(0)
        else:
            theta = [K.random(rng) for _ in range(d)]
        # Krylov: powers of theta as F_p vectors
        rows = []
        power = [one] + [zero] * (d - 1)
        ok = True
        basis = []
        for i in range(n):
            v = rvec(power)
            w = list(v)
            for pivot, bv in basis:
                cc = w[pivot]
                if cc:
                    w = [(x - cc * y) % p for x, y in zip(w, bv)]
            pivot = next((j for j, x in enumerate(w) if x % p), None)
            if pivot is None:
                ok = False
                break
            inv = pow(w[pivot], -1, p)
            basis.append((pivot, [x * inv % p for x in w]))
            rows.append(v)
            power = rmul(power, theta)
        if not ok:
            continue
        minpoly_vec = rvec(power)  # theta^n
        break

    # theta^n = sum c_i theta^i: solve, giving the modulus x^n - sum c_i x^i
    mat = [[rows[i][j] for i in range(n)] for j in range(n)]  # columns are theta^i
    sols = _solve_unique(mat, [minpoly_vec], p)
    cs = sols[0]
    modulus = tuple((-c) % p for c in cs) + (1,)
    try:
        L = GF(p ** n, modulus=modulus)
    except ValueError as exc:
        raise BadFactorization(f"flattening modulus was reducible: {exc}") from exc

    # express u (generator of K) and x in the theta-power basis
    u_vec = rvec([K.gen] + [zero] * (d - 1))
    x_vec = rvec([zero, one] + [zero] * (d - 2))
    u_sol, x_sol = _solve_unique(mat, [u_vec, x_vec], p)
    u_img = L(tuple(u_sol))
    root = L(tuple(x_sol))

    def embed(a, K=K, L=L, u_img=u_img):
        a = K(a)
        acc = L.zero
        for c in reversed(a.val if a.val else (0,)):
            acc = acc * u_img + c
        return acc

    return Flattened(L, embed, root)


_EMBEDDINGS: dict = {}


def subfield_embedding(A: Field, L: Field):
    """An F_p-embedding of A = F_{p^a} into L = F_{p^b} (a | b), as a
    callable; deterministic (the least root of A's modulus is used)."""
    key = (A, L)
    got = _EMBEDDINGS.get(key)
    if got is not None:
        return got
    if A.p != L.p or L.k % A.k != 0:
        raise InternalContractViolation(f"no embedding {A} -> {L}")
    if A.kind == PRIME:
        fn = lambda a: L(a.val if isinstance(a, FieldElem) else a)  # noqa: E731
        _EMBEDDINGS[key] = fn
        return fn
    if A == L:
        fn = lambda a: a  # noqa: E731
        _EMBEDDINGS[key] = fn
        return fn
    mod = UPoly.of(L, A.modulus)
    rs = roots(mod)
    if not rs:
        raise InternalContractViolation(f"modulus of {A} has no root in {L}")
    img = rs[0]

    def fn(a, A=A, L=L, img=img):
        a = A(a)
        acc = L.zero
        for c in reversed(a.val if a.val else (0,)):
            acc = acc * img + c
        return acc

    _EMBEDDINGS[key] = fn
    return fn


_PREIMAGE_MATRICES: dict = {}


def _as_fp_vec(x: FieldElem, n: int):
    v = x.val
    if isinstance(v, int):
        v = (v,)
    return list(v) + [0] * (n - len(v))


def embedding_preimage(A: Field, L: Field, c: FieldElem) -> FieldElem:
    """The unique a in A with subfield_embedding(A, L)(a) == c.

    Inverts the canonical embedding by F_p-linear algebra; raises
    InternalContractViolation when c lies outside the image."""
    if A == L:
        return c
    emb = subfield_embedding(A, L)
    p, n, s = L.p, L.k, A.k
    cols = _PREIMAGE_MATRICES.get((A, L))
    if cols is None:
        cols = []
        g = A.one
        for _ in range(s):
            cols.append(_as_fp_vec(emb(g), n))
            g = g * A.gen if A.gen is not None else g
        _PREIMAGE_MATRICES[(A, L)] = cols
    c = L(c)
    rows = [[cols[j][i] for j in range(s)] + [_as_fp_vec(c, n)[i]]
            for i in range(n)]
    piv = []
    r = 0
    for col in range(s):
        sel = next((i for i in range(r, n) if rows[i][col] % p), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        piv.append(col)
        r += 1
    sol = [0] * s
    for i, col in enumerate(piv):
        sol[col] = rows[i][s]
    a = A(sol[0]) if A.kind == PRIME else A(tuple(sol))
    if emb(a) != c:
        raise InternalContractViolation(f"{c!r} has no preimage in {A}")
    return a


# ---------------------------------------------------------------------------
# Interpolation.

def interpolate(field: Field, xs, ys) -> UPoly:
    """The Lagrange interpolant through (xs[i], ys[i]), distinct xs."""
    out = UPoly(field, ())
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        num = UPoly.const(field, yi)
        den = field.one
        for j, xj in enumerate(xs):
            if j != i:
                num = num * UPoly.of(field, (-xj, 1))
                den = den * (xi - xj)
        out = out + num * den.inverse()
    return out


def cauchy_interpolate(field: Field, xs, ys, num_deg: int, den_deg: int):
    """Rational function num/den with deg num <= num_deg, deg den <= den_deg,
    den monic and nonvanishing on xs, through all the points; None when no
    such function exists.  Needs len(xs) >= num_deg + den_deg + 1."""
    if len(xs) < num_deg + den_deg + 1:
        raise InternalContractViolation("too few interpolation nodes")
    h = interpolate(field, xs, ys)
    M = UPoly.const(field, 1)
    for xi in xs:
        M = M * UPoly.of(field, (-xi, 1))
    r0, r1 = M, h
    t0, t1 = UPoly(field, ()), UPoly.const(field, 1)
    while r1 and r1.degree() > num_deg:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    num, den = r1, t1
    if not den or den.degree() > den_deg:
        return None
    if not num:
        den = UPoly.const(field, 1)
    else:
        g = gcd(num, den)
        if g.degree() > 0:
            num, den = num // g, den // g
        c = den.lc().inverse()
        num, den = num * c, den * c
    for xi, yi in zip(xs, ys):
        dv = den(xi)
        if not dv:
            return None
        if num(xi) != yi * dv:
            return None
    return num, den


# ---------------------------------------------------------------------------
# Rational roots over F_p(S), via the rational-root theorem in F_p[S].

def _divisors_of(poly_tuple, p):
    """All monic divisors of a nonzero polynomial over F_p (int tuples)."""
    base = GF(p)
    f = UPoly.of(base, poly_tuple)
    _, facs = factor(f)
    divs = [UPoly.const(base, 1)]
    for irr, mult in facs:
        grown = []
        for d in divs:
            cur = d
            for _ in range(mult + 1):
                grown.append(cur)
                cur = cur * irr
        divs = grown
    return [tuple(c.val for c in d.coeffs) for d in divs]


def rational_roots(f: UPoly):
    """All roots in F_p(S) itself of f over F_p(S), each exactly once."""
    field = f.field
    if field.order is not None:
        raise InternalContractViolation("rational_roots is the F_p(S) route")
    if not f:
        raise InternalContractViolation("roots of the zero polynomial")
    p = field.p
    out = []
    # strip roots at 0
    coeffs = list(f.coeffs)
    low = 0
    while low < len(coeffs) and not coeffs[low]:
        low += 1
    if low:
        out.append(field.zero)
        coeffs = coeffs[low:]
    if len(coeffs) <= 1:
        return out
    # clear denominators: multiply by the lcm of the denominators
    lcm = (1,)
    for c in coeffs:
        den = c.val[1]
        g = pgcd(p, lcm, den)
        lcm = pmul(p, lcm, _pdiv_exact(p, den, g))
    ints = []
    for c in coeffs:
        num, den = c.val
        scale = _pdiv_exact(p, lcm, den)
        ints.append(pmul(p, num, scale))
    # remove the content
    content = ()
    for t in ints:
        if t:
            content = pgcd(p, content, t) if content else t
    if len(content) > 1:
        ints = [_pdiv_exact(p, t, content) if t else t for t in ints]
    c0, cm = ints[0], ints[-1]
    if not c0:
        raise InternalContractViolation("trailing coefficient vanished twice")
    for nd in _divisors_of(c0, p):
        for dd in _divisors_of(cm, p):
            for lam in range(1, p):
                num = tuple(v * lam % p for v in nd)
                cand = field(num) / field(dd)
                if not f(cand) and cand not in out:
                    out.append(cand)
    return out


def _pdiv_exact(p, a, b):
    q, r = pdivmod(p, a, b)
    if r:
        raise InternalContractViolation("inexact polynomial division")
    return q


# ---------------------------------------------------------------------------
# Bivariate support: y-polynomials whose coefficients are UPolys in x.
# Represented as plain lists of UPoly, low y-degree first, no trailing zeros.

def ystrip(ycoeffs):
    out = list(ycoeffs)
    while out and not out[-1]:
        out.pop()
    return out


def sylvester_resultant(a, b, field: Field) -> UPoly:
    """Res_y of two y-polynomials with UPoly coefficients (true degrees),
    by fraction-free Bareiss elimination over K[x]."""
    a, b = ystrip(a), ystrip(b)
    if not a or not b:
        return UPoly(field, ())
    m, n = len(a) - 1, len(b) - 1
    if m == 0 and n == 0:
        return UPoly.const(field, 1)
    if m == 0:
        return pow_poly(a[0], n)
    if n == 0:
        return pow_poly(b[0], m)
    size = m + n
    zero = UPoly(field, ())
    grid = []
    for i in range(n):
        row = [zero] * i + list(reversed(a)) + [zero] * (size - m - 1 - i)
        grid.append(row)
    for i in range(m):
        row = [zero] * i + list(reversed(b)) + [zero] * (size - n - 1 - i)
        grid.append(row)
    sign = 1
    prev = UPoly.const(field, 1)
    for col in range(size - 1):
        piv = next((r for r in range(col, size) if grid[r][col]), None)
        if piv is None:
            return UPoly(field, ())
        if piv != col:
            grid[col], grid[piv] = grid[piv], grid[col]
            sign = -sign
        pivot = grid[col][col]
        for r in range(col + 1, size):
            for c in range(col + 1, size):
                num = pivot * grid[r][c] - grid[r][col] * grid[col][c]
                q, rem = divmod(num, prev)
                if rem:
                    raise InternalContractViolation("Bareiss division was inexact")
                grid[r][c] = q
            grid[r][col] = zero
        prev = pivot
    det = grid[size - 1][size - 1]
    return det if sign > 0 else -det


def pow_poly(f: UPoly, e: int) -> UPoly:
    out = UPoly.const(f.field, 1)
    for _ in range(e):
        out = out * f
    return out


def _ynormalize(ycoeffs, m):
    """Reduce a y-poly mod m and monicize its true leading coefficient.

    Returns ("zero",), ("ok", coeffs-with-lead-one), or, when the leading
    coefficient is a zero divisor mod m, ("split", proper-factor-of-m).
    """
    cs = [c % m for c in ycoeffs]
    while cs:
        top = cs[-1]
        if not top:
            cs.pop()
            continue
        d, s, _ = extgcd(top, m)
        if d.degree() == 0:
            cs = [(c * s) % m for c in cs]
            cs[-1] = UPoly.const(m.field, 1)
            return ("ok", cs)
        return ("split", d)
    return ("zero",)


def _ydivmod_monic(a, b, m):
    """Remainder of a by b (b monic in y) with coefficients mod m."""
    r = [c % m for c in a]
    db = len(b) - 1
    while len(r) - 1 >= db:
        lead = r[-1]
        if lead:
            shift = len(r) - 1 - db
            for j in range(db + 1):
                r[shift + j] = (r[shift + j] - lead * b[j]) % m
        r.pop()
    while r and not r[-1]:
        r.pop()
    return r


def common_y_root_exists(modulus: UPoly, ypolys) -> bool:
    """Is there an x0 with modulus(x0) = 0 (in the algebraic closure) at
    which all the given y-polynomials share a common y-root, or at which
    they all vanish identically?

    Dynamic evaluation: works in K[x]/(modulus) and splits the modulus
    whenever a zero divisor turns up, so no factorization over K is needed.
    The answer covers every root of the modulus, split or not.
    """
    m = modulus.monic()
    if m.degree() < 1:
        return False

    def split_on(d):
        return (common_y_root_exists(d, ypolys)
                or common_y_root_exists(m // d, ypolys))

    g = None  # running gcd, as a monic-in-y list of UPoly coefficients
    for yp in ypolys:
        cur = list(yp)
        if g is not None:
            cur = _ydivmod_monic(cur, g, m)
        state = _ynormalize(cur, m)
        if state[0] == "zero":
            continue
        if state[0] == "split":
            return split_on(state[1])
        cand = state[1]
        if g is None:
            if len(cand) == 1:
                return False  # a unit: no common zero above any root of m
            g = cand
            continue
        # replace g by gcd(g, cand); both monic in y, deg cand < deg g
        a, b = g, cand
        while True:
            if len(b) == 1:
                return False
            rem = _ydivmod_monic(a, b, m)
            state = _ynormalize(rem, m)
            if state[0] == "zero":
                g = b
                break
            if state[0] == "split":
                return split_on(state[1])
            a, b = b, state[1]
    if g is None:
        return True  # every polynomial vanished identically mod m
    return len(g) >= 2
