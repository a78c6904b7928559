"""Ternary forms (homogeneous polynomials in X, Y, Z) and 3x3 matrices over
a Field.

Forms are sparse: a dict from exponent triples (i, j, k), with i+j+k equal
to the degree, to nonzero coefficients.  Cubics additionally expose their
coefficients in a fixed ten-slot order:

    (a, b, c, d, e, f, g, h, i, j)  <->
    (X^3, Y^3, Z^3, X^2*Y, X^2*Z, Y^2*X, Y^2*Z, Z^2*X, Z^2*Y, X*Y*Z)

which is the order used everywhere a cubic is read or printed as a flat
coefficient list.

The only non-obvious operation is ``power_coefficient``: the coefficient of
one target monomial in F^m, computed by repeated multiplication while
discarding every monomial that already exceeds the target in some exponent
(such a monomial can never shrink back, so it cannot contribute).
"""

from __future__ import annotations

from .errors import ConfigError, DegreeMismatch, SingularMatrix
from .exprparse import evaluate
from .fields import Field, FieldElem

CUBIC_ORDER = (
    (3, 0, 0), (0, 3, 0), (0, 0, 3),
    (2, 1, 0), (2, 0, 1), (1, 2, 0), (0, 2, 1), (1, 0, 2), (0, 1, 2),
    (1, 1, 1),
)

VARIABLE_NAMES = ("X", "Y", "Z")


class TernaryForm:
    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: Field, degree: int, coeffs=None):
        clean = {}
        for key, value in (coeffs or {}).items():
            if sum(key) != degree or len(key) != 3 or min(key) < 0:
                raise DegreeMismatch(f"monomial {key} in a degree-{degree} form")
            value = field(value)
            if value:
                clean[key] = value
        self.field = field
        self.degree = degree
        self.coeffs = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def variable(cls, field: Field, idx: int) -> "TernaryForm":
        key = tuple(1 if i == idx else 0 for i in range(3))
        return cls(field, 1, {key: field.one})

    @classmethod
    def from_cubic_coeffs(cls, field: Field, values) -> "TernaryForm":
        values = list(values)
        if len(values) != 10:
            raise ConfigError(f"a cubic needs 10 coefficients, got {len(values)}")
        return cls(field, 3, dict(zip(CUBIC_ORDER, values)))

    @classmethod
    def zero(cls, field: Field, degree: int) -> "TernaryForm":
        return cls(field, degree, {})

    # -- inspection -----------------------------------------------------------

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, key) -> FieldElem:
        return self.coeffs.get(tuple(key), self.field.zero)

    def cubic_coeffs(self):
        if self.degree != 3:
            raise DegreeMismatch("ten-coefficient form of a non-cubic")
        return tuple(self[m] for m in CUBIC_ORDER)

    def __eq__(self, other):
        if isinstance(other, TernaryForm):
            return (self.field == other.field and self.degree == other.degree
                    and self.coeffs == other.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.degree, tuple(sorted(self.coeffs.items()))))

    def __str__(self):
        if not self.coeffs:
            return "0"
        if self.degree == 3 and all(k in CUBIC_ORDER for k in self.coeffs):
            keys = [m for m in CUBIC_ORDER if m in self.coeffs]
        else:
            keys = sorted(self.coeffs, reverse=True)
        parts = []
        for key in keys:
            c = self.coeffs[key]
            mono = "*".join(
                (name if e == 1 else f"{name}^{e}")
                for name, e in zip(VARIABLE_NAMES, key) if e
            )
            cs = str(c)
            if not mono:
                parts.append(f"({cs})" if "+" in cs or "/" in cs else cs)
            elif c == self.field.one:
                parts.append(mono)
            else:
                head = f"({cs})" if "+" in cs or "/" in cs else cs
                parts.append(f"{head}*{mono}")
        return "+".join(parts)

    def __repr__(self):
        return f"<form {self}>"

    # -- arithmetic -----------------------------------------------------------

    def _scale(self, s) -> "TernaryForm":
        s = self.field(s)
        return TernaryForm(self.field, self.degree,
                           {k: v * s for k, v in self.coeffs.items()})

    def __add__(self, other):
        if isinstance(other, TernaryForm):
            if other.degree != self.degree:
                raise DegreeMismatch(
                    f"adding degree {self.degree} and degree {other.degree} forms")
            out = dict(self.coeffs)
            for k, v in other.coeffs.items():
                out[k] = out.get(k, self.field.zero) + v
            return TernaryForm(self.field, self.degree, out)
        if isinstance(other, (int, FieldElem)):
            return self + TernaryForm(self.field, 0, {(0, 0, 0): other})
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TernaryForm(self.field, self.degree,
                           {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (TernaryForm, int, FieldElem)):
            return self + (-other if isinstance(other, TernaryForm) else -self.field(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TernaryForm):
            out = {}
            zero = self.field.zero
            for k1, v1 in self.coeffs.items():
                for k2, v2 in other.coeffs.items():
                    key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                    out[key] = out.get(key, zero) + v1 * v2
            return TernaryForm(self.field, self.degree + other.degree, out)
        if isinstance(other, (int, FieldElem)):
            return self._scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self._scale(self.field(other).inverse())
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ConfigError("form exponents must be nonnegative integers")
        out = TernaryForm(self.field, 0, {(0, 0, 0): self.field.one})
        for _ in range(e):
            out = out * self
        return out

    # -- evaluation and calculus ----------------------------------------------

    def __call__(self, x, y, z) -> FieldElem:
        f = self.field
        pt = (f(x), f(y), f(z))
        powers = []
        for v in pt:
            ps = [f.one]
            for _ in range(self.degree):
                ps.append(ps[-1] * v)
            powers.append(ps)
        acc = f.zero
        for (i, j, k), c in self.coeffs.items():
            acc = acc + c * powers[0][i] * powers[1][j] * powers[2][k]
        return acc

    def map_coefficients(self, target: Field, fn) -> "TernaryForm":
        """The same form with every coefficient pushed through fn into target."""
        return TernaryForm(target, self.degree,
                           {k: fn(v) for k, v in self.coeffs.items()})

    def partial(self, idx: int) -> "TernaryForm":
        out = {}
        for key, c in self.coeffs.items():
            e = key[idx]
            if e == 0:
                continue
            nk = list(key)
            nk[idx] = e - 1
            out[tuple(nk)] = c * e
        return TernaryForm(self.field, max(self.degree - 1, 0), out)

    def substitute(self, M: "Mat3") -> "TernaryForm":
        """The form F(M * (X, Y, Z)^T)."""
        lines = []
        for r in range(3):
            lf = TernaryForm(self.field, 1,
                             {(1, 0, 0): M.rows[r][0],
                              (0, 1, 0): M.rows[r][1],
                              (0, 0, 1): M.rows[r][2]})
            lines.append(lf)
        out = TernaryForm.zero(self.field, self.degree)
        for (i, j, k), c in self.coeffs.items():
            term = (lines[0] ** i) * (lines[1] ** j) * (lines[2] ** k)
            out = out + term._scale(c)
        return out

    def power_coefficient(self, m: int, target) -> FieldElem:
        """Coefficient of the ``target`` monomial in self**m."""
        target = tuple(target)
        if m < 0:
            raise ConfigError("negative form power")
        if sum(target) != m * self.degree:
            return self.field.zero
        zero = self.field.zero
        acc = {(0, 0, 0): self.field.one}
        for _ in range(m):
            nxt = {}
            for k1, v1 in acc.items():
                for k2, v2 in self.coeffs.items():
                    key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                    if key[0] > target[0] or key[1] > target[1] or key[2] > target[2]:
                        continue
                    s = nxt.get(key, zero) + v1 * v2
                    if s:
                        nxt[key] = s
                    elif key in nxt:
                        del nxt[key]
            acc = nxt
            if not acc:
                return zero
        return acc.get(target, zero)


def proportional(a: TernaryForm, b: TernaryForm) -> bool:
    """Whether b is a nonzero scalar multiple of a (zero matches only zero)."""
    if a.field != b.field or a.degree != b.degree:
        return False
    if not a or not b:
        return not a and not b
    if set(a.coeffs) != set(b.coeffs):
        return False
    key = next(iter(a.coeffs))
    lam = b.coeffs[key] / a.coeffs[key]
    return all(b.coeffs[k] == v * lam for k, v in a.coeffs.items())


def parse_form(text: str, field: Field) -> TernaryForm:
    """A form from an expression in X, Y, Z; other names resolve to the
    field's own generator (so T works over F_p(T), u over F_p[u]/(...))."""

    def name(token):
        idx = {"X": 0, "Y": 1, "Z": 2}.get(token)
        if idx is not None:
            return TernaryForm.variable(field, idx)
        if field.var is not None and token == field.var:
            return field.gen
        raise ConfigError(f"unknown name {token!r} in a form over {field}")

    value = evaluate(text, field, name)
    if isinstance(value, (int, FieldElem)):
        value = TernaryForm(field, 0, {(0, 0, 0): value})
    if not isinstance(value, TernaryForm):
        raise ConfigError(f"not a form: {text!r}")
    return value


def random_form(field: Field, degree: int, rng, deg=None) -> TernaryForm:
    keys = [(i, j, degree - i - j) for i in range(degree + 1)
            for j in range(degree + 1 - i)]
    if field.order is None:
        cs = {k: field.random(rng, deg=rng.randrange(0, (deg or 2) + 1)) for k in keys}
    else:
        cs = {k: field.random(rng) for k in keys}
    return TernaryForm(field, degree, cs)


class Mat3:
    """A 3x3 matrix over a Field."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = tuple(tuple(field(v) for v in row) for row in rows)
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ConfigError("a 3x3 matrix needs 3 rows of 3 entries")

    @classmethod
    def identity(cls, field: Field) -> "Mat3":
        return cls(field, [[1 if i == j else 0 for j in range(3)] for i in range(3)])

    @classmethod
    def random_invertible(cls, field: Field, rng) -> "Mat3":
        while True:
            m = cls(field, [[field.random(rng) for _ in range(3)] for _ in range(3)])
            if m.det():
                return m

    def __eq__(self, other):
        if isinstance(other, Mat3):
            return self.field == other.field and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"<mat3 {self.rows!r}>"

    def __mul__(self, other):
        if isinstance(other, Mat3):
            rows = [[sum((self.rows[i][k] * other.rows[k][j] for k in range(3)),
                         self.field.zero) for j in range(3)] for i in range(3)]
            return Mat3(self.field, rows)
        return NotImplemented

    def apply(self, vec):
        x, y, z = (self.field(v) for v in vec)
        return tuple(self.rows[i][0] * x + self.rows[i][1] * y + self.rows[i][2] * z
                     for i in range(3))

    def transpose(self) -> "Mat3":
        return Mat3(self.field, [[self.rows[j][i] for j in range(3)] for i in range(3)])

    def det(self) -> FieldElem:
        r = self.rows
        return (r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]))

    def inverse(self) -> "Mat3":
        d = self.det()
        if not d:
            raise SingularMatrix("matrix is not invertible")
        r = self.rows
        inv = d.inverse()
        cof = [[(r[(i + 1) % 3][(j + 1) % 3] * r[(i + 2) % 3][(j + 2) % 3]
                 - r[(i + 1) % 3][(j + 2) % 3] * r[(i + 2) % 3][(j + 1) % 3])
                for j in range(3)] for i in range(3)]
        # adjugate is the transpose of the cofactor grid
        return Mat3(self.field, [[cof[j][i] * inv for j in range(3)] for i in range(3)])
