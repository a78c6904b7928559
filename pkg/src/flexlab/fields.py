"""Exact coefficient fields: F_p, F_{p^k} with an explicit modulus, and F_p(S).

Every element is immutable and canonically represented, so ``==`` is plain
structural equality and any value can serve as a dict key.  Extension fields
always carry their modulus explicitly (no hidden Conway tables); the default
modulus of F_{p^k} is the lexicographically least monic irreducible of degree
k (coefficients compared from the highest degree down), found by trial
division, so a report mentioning the "default" F4, F8 or F9 is reproducible
from this file alone.

Representations:

* prime field: an integer in ``[0, p)``;
* extension field: a tuple of integers, low degree first, trailing zeros
  stripped, reduced modulo the field's modulus;
* rational functions: a pair ``(num, den)`` of such tuples with den monic
  and gcd(num, den) = 1; the zero element is ``((), (1,))``.

Two hard caps keep everything desk-sized: enumerating a field's elements
refuses orders above 2**20, and irreducibility testing (trial division by all
monic polynomials of degree <= k/2) refuses moduli for which p**(k//2) would
exceed 2**17 candidate divisors.
"""

from __future__ import annotations

import re

from . import exprparse
from .errors import (
    CapExceeded,
    ConfigError,
    DivisionByZero,
    InternalContractViolation,
    MixedFields,
)

ENUMERATION_CAP = 1 << 20
TRIAL_DIVISION_CAP = 1 << 17

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# Dense univariate arithmetic over F_p on plain int tuples (low degree first,
# no trailing zeros, zero polynomial = ()).  These run hot inside extension
# field and rational function arithmetic, so they stay free of class overhead.

def pstrip(c) -> tuple:
    i = len(c)
    while i and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def padd(p, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return pstrip(out)


def pneg(p, a):
    return tuple(-x % p for x in a)


def psub(p, a, b):
    return padd(p, a, pneg(p, b))


def pscale(p, a, s):
    s %= p
    if s == 0:
        return ()
    return pstrip([x * s % p for x in a])


def pmul(p, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return pstrip([v % p for v in out])


def pdivmod(p, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    db = len(b) - 1
    if len(a) < len(b):
        return (), a
    inv = pow(b[-1], -1, p)
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = c * inv % p
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % p
    return pstrip(q), pstrip(r[:db])


def pmod(p, a, b):
    return pdivmod(p, a, b)[1]


def pmonic(p, a):
    if not a:
        return a
    return pscale(p, a, pow(a[-1], -1, p))


def pgcd(p, a, b):
    while b:
        a, b = b, pmod(p, a, b)
    return pmonic(p, a)


def pextgcd(p, a, b):
    """Return (g, s, t) with s*a + t*b = g and g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = pdivmod(p, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(p, s0, pmul(p, q, s1))
        t0, t1 = t1, psub(p, t0, pmul(p, q, t1))
    if r0:
        c = pow(r0[-1], -1, p)
        r0 = pscale(p, r0, c)
        s0 = pscale(p, s0, c)
        t0 = pscale(p, t0, c)
    return r0, s0, t0


def _int_digits(m, p, width):
    out = []
    for _ in range(width):
        out.append(m % p)
        m //= p
    return tuple(out)


def trial_division_irreducible(p: int, f: tuple) -> bool:
    """Is the monic polynomial f irreducible over F_p?

    Decided by trial division against every monic polynomial of degree up to
    deg(f)/2.  Raises CapExceeded when that would mean more than 2**17
    divisors of the top degree.  Characteristic 2 runs on bit-packed
    integers, which keeps degree-24 moduli affordable.
    """
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    half = k // 2
    if p ** half > TRIAL_DIVISION_CAP:
        raise CapExceeded(
            f"irreducibility test of a degree-{k} modulus over F_{p} needs "
            f"{p ** half} trial divisors; cap is {TRIAL_DIVISION_CAP}")
    if p == 2:
        packed = 0
        for i, c in enumerate(f):
            if c:
                packed |= 1 << i
        for d in range(1, half + 1):
            for g in range(1 << d, 1 << (d + 1)):
                r = packed
                while r and r.bit_length() > d:
                    r ^= g << (r.bit_length() - 1 - d)
                if r == 0:
                    return False
        return True
    for d in range(1, half + 1):
        for m in range(p ** d):
            g = _int_digits(m, p, d) + (1,)
            if not pmod(p, f, g):
                return False
    return True


_DEFAULT_MODULI: dict = {}


def default_modulus(p: int, k: int) -> tuple:
    """Lexicographically least monic irreducible of degree k over F_p."""
    key = (p, k)
    got = _DEFAULT_MODULI.get(key)
    if got is None:
        for m in range(p ** k):
            f = _int_digits(m, p, k) + (1,)
            if f[0] != 0 and trial_division_irreducible(p, f):
                got = f
                break
        else:  # pragma: no cover - irreducibles of every degree exist
            raise InternalContractViolation(f"no irreducible of degree {k} over F_{p}")
        _DEFAULT_MODULI[key] = got
    return got


# ---------------------------------------------------------------------------
# Fields and their elements.

PRIME = "prime"
EXTENSION = "extension"
RATIONAL_FUNCTION = "rational-function"

_FIELDS: dict = {}


class Field:
    """A prime field F_p, an extension F_p[u]/(modulus), or F_p(S).

    Construct through :func:`GF` or :func:`function_field`, which intern
    instances; equality is structural on (kind, p, k, modulus, variable).
    """

    __slots__ = ("kind", "p", "k", "order", "modulus", "var",
                 "zero", "one", "gen", "_key", "_hash")

    def __init__(self, kind, p, k, modulus, var):
        self.kind = kind
        self.p = p
        self.k = k
        self.modulus = modulus
        self.var = var
        self.order = p ** k if kind != RATIONAL_FUNCTION else None
        self._key = (kind, p, k, modulus, var)
        self._hash = hash(self._key)
        if kind == PRIME:
            self.zero = FieldElem(self, 0)
            self.one = FieldElem(self, 1)
            self.gen = None
        elif kind == EXTENSION:
            self.zero = FieldElem(self, ())
            self.one = FieldElem(self, (1,))
            self.gen = FieldElem(self, (0, 1))
        else:
            self.zero = FieldElem(self, ((), (1,)))
            self.one = FieldElem(self, ((1,), (1,)))
            self.gen = FieldElem(self, ((0, 1), (1,)))

    def __eq__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return str(self)

    def __str__(self):
        if self.kind == PRIME:
            return f"F{self.p}"
        if self.kind == EXTENSION:
            return f"F{self.p}[{self.var}]/({poly_text(self.modulus, self.var)})"
        return f"F{self.p}({self.var})"

    # -- construction of elements ------------------------------------------

    def __call__(self, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.field._key == self._key:
                return x
            if x.field.kind == PRIME and x.field.p == self.p and self.kind != PRIME:
                return self._from_int(x.val)
            raise MixedFields(f"cannot take {x!r} into {self}")
        if isinstance(x, int):
            return self._from_int(x % self.p)
        if isinstance(x, tuple):
            coeffs = pstrip([c % self.p for c in x])
            if self.kind == PRIME:
                if len(coeffs) > 1:
                    raise ConfigError(f"{self} holds no polynomials of positive degree")
                return FieldElem(self, coeffs[0] if coeffs else 0)
            if self.kind == EXTENSION:
                return FieldElem(self, pmod(self.p, coeffs, self.modulus))
            return FieldElem(self, (coeffs, (1,)))
        raise ConfigError(f"cannot interpret {x!r} as an element of {self}")

    def _from_int(self, c) -> "FieldElem":
        if self.kind == PRIME:
            return FieldElem(self, c)
        if self.kind == EXTENSION:
            return FieldElem(self, (c,) if c else ())
        return FieldElem(self, ((c,) if c else (), (1,)))

    # -- enumeration --------------------------------------------------------

    def from_index(self, i: int) -> "FieldElem":
        """The i-th element in the fixed base-p positional order."""
        if self.order is None:
            raise CapExceeded(f"{self} is infinite and has no element index")
        if not 0 <= i < self.order:
            raise ConfigError(f"element index {i} out of range for {self}")
        if self.kind == PRIME:
            return FieldElem(self, i)
        return FieldElem(self, pstrip(_int_digits(i, self.p, self.k)))

    def elements(self):
        if self.order is None:
            raise CapExceeded(f"cannot enumerate the infinite field {self}")
        if self.order > ENUMERATION_CAP:
            raise CapExceeded(
                f"enumerating {self} means {self.order} elements; cap is {ENUMERATION_CAP}")
        return (self.from_index(i) for i in range(self.order))

    def random(self, rng, deg=None) -> "FieldElem":
        """A uniformly random element; rational functions need a degree
        bound and then produce a random polynomial in the indeterminate."""
        if self.order is not None:
            return self.from_index(rng.randrange(self.order))
        if deg is None:
            raise ConfigError(f"random element of {self} needs a degree bound")
        return self(tuple(rng.randrange(self.p) for _ in range(deg + 1)))


def GF(q: int, modulus=None, var=None) -> Field:
    """The finite field with q = p^k elements, interned.

    With k >= 2 an explicit modulus (int tuple, low degree first, monic of
    degree k over F_p) may be supplied; otherwise the default modulus is
    looked up.  The generator is printed with the given variable name,
    ``u`` by default.
    """
    if not isinstance(q, int) or q < 2:
        raise ConfigError(f"F{q} is not a finite field")
    p = q
    for c in range(2, q):
        if c * c > q:
            break
        if q % c == 0:
            p = c
            break
    k, t = 0, q
    while t % p == 0 and t > 1:
        t //= p
        k += 1
    if t != 1:
        raise ConfigError(f"{q} is not a prime power")
    if k == 1:
        if modulus is not None or var is not None:
            raise ConfigError(f"prime field F{p} takes no modulus or variable")
        key = (PRIME, p, 1, None, None)
        field = _FIELDS.get(key)
        if field is None:
            field = _FIELDS.setdefault(key, Field(*key))
        return field
    if var is None:
        var = "u"
    if modulus is None:
        modulus = default_modulus(p, k)
    else:
        modulus = pstrip([c % p for c in modulus])
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ConfigError(
                f"modulus for F{q} must be monic of degree {k} over F_{p}")
        if not trial_division_irreducible(p, modulus):
            raise ConfigError(
                f"modulus {poly_text(modulus, var)} is reducible over F_{p}")
    key = (EXTENSION, p, k, modulus, var)
    field = _FIELDS.get(key)
    if field is None:
        field = _FIELDS.setdefault(key, Field(*key))
    return field


def function_field(p: int, var: str = "S") -> Field:
    """The rational function field F_p(var), interned."""
    if not is_prime(p):
        raise ConfigError(f"characteristic {p} is not prime")
    key = (RATIONAL_FUNCTION, p, 1, None, var)
    field = _FIELDS.get(key)
    if field is None:
        field = _FIELDS.setdefault(key, Field(*key))
    return field


def _rf_make(p, num, den):
    """Reduce a numerator/denominator pair to canonical form."""
    if not den:
        raise DivisionByZero("rational function with zero denominator")
    if not num:
        return ((), (1,))
    g = pgcd(p, num, den)
    if len(g) > 1:
        num = pdivmod(p, num, g)[0]
        den = pdivmod(p, den, g)[0]
    c = pow(den[-1], -1, p)
    if c != 1:
        num = pscale(p, num, c)
        den = pscale(p, den, c)
    return (num, den)


class FieldElem:
    """An immutable element of a :class:`Field`; see the module docstring
    for the canonical representation per field kind."""

    __slots__ = ("field", "val")

    def __init__(self, field, val):
        self.field = field
        self.val = val

    # -- housekeeping --------------------------------------------------------

    def __bool__(self):
        kind = self.field.kind
        if kind == PRIME:
            return self.val != 0
        if kind == EXTENSION:
            return self.val != ()
        return self.val[0] != ()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field._key == other.field._key and self.val == other.val
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field._hash, self.val))

    def __repr__(self):
        return f"<{element_text(self)}>"

    def __str__(self):
        kind = self.field.kind
        if kind == PRIME:
            return str(self.val)
        if kind == EXTENSION:
            return poly_text(self.val, self.field.var)
        num, den = self.val
        if den == (1,):
            return poly_text(num, self.field.var)
        return f"({poly_text(num, self.field.var)})/({poly_text(den, self.field.var)})"

    def _pair(self, other):
        """Bring (self, other) into one field, widening a prime-field operand
        into the other's extension or rational-function field if needed."""
        if isinstance(other, FieldElem):
            if other.field._key == self.field._key:
                return self, other
            if (other.field.kind == PRIME and other.field.p == self.field.p
                    and self.field.kind != PRIME):
                return self, self.field._from_int(other.val)
            if (self.field.kind == PRIME and other.field.p == self.field.p
                    and other.field.kind != PRIME):
                return other.field._from_int(self.val), other
            raise MixedFields(f"{self!r} and {other!r} live in different fields")
        if isinstance(other, int):
            return self, self.field(other)
        return None

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        f = a.field
        kind = f.kind
        if kind == PRIME:
            return FieldElem(f, (a.val + b.val) % f.p)
        if kind == EXTENSION:
            return FieldElem(f, padd(f.p, a.val, b.val))
        n1, d1 = a.val
        n2, d2 = b.val
        num = padd(f.p, pmul(f.p, n1, d2), pmul(f.p, n2, d1))
        return FieldElem(f, _rf_make(f.p, num, pmul(f.p, d1, d2)))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        kind = f.kind
        if kind == PRIME:
            return FieldElem(f, -self.val % f.p)
        if kind == EXTENSION:
            return FieldElem(f, pneg(f.p, self.val))
        num, den = self.val
        return FieldElem(f, (pneg(f.p, num), den))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        f = a.field
        kind = f.kind
        if kind == PRIME:
            return FieldElem(f, a.val * b.val % f.p)
        if kind == EXTENSION:
            return FieldElem(f, pmod(f.p, pmul(f.p, a.val, b.val), f.modulus))
        n1, d1 = a.val
        n2, d2 = b.val
        return FieldElem(f, _rf_make(f.p, pmul(f.p, n1, n2), pmul(f.p, d1, d2)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        f = self.field
        kind = f.kind
        if kind == PRIME:
            try:
                return FieldElem(f, pow(self.val, -1, f.p))
            except ValueError:
                raise DivisionByZero(f"0 has no inverse in {f}") from None
        if kind == EXTENSION:
            if not self.val:
                raise DivisionByZero(f"0 has no inverse in {f}")
            g, s, _ = pextgcd(f.p, self.val, f.modulus)
            if g != (1,):
                raise InternalContractViolation(
                    f"modulus of {f} shares a factor with {self}")
            return FieldElem(f, pmod(f.p, s, f.modulus))
        num, den = self.val
        if not num:
            raise DivisionByZero(f"0 has no inverse in {f}")
        return FieldElem(f, _rf_make(f.p, den, num))

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        f = self.field
        if f.kind == PRIME:
            try:
                return FieldElem(f, pow(self.val, n, f.p))
            except ValueError:
                raise DivisionByZero(f"0 has no inverse in {f}") from None
        if n < 0:
            return self.inverse() ** (-n)
        result = f.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- field-theoretic extras ----------------------------------------------

    def frobenius(self, n: int = 1) -> "FieldElem":
        """Apply x -> x^p, n times."""
        f = self.field
        if f.kind == PRIME:
            return self
        if f.kind == EXTENSION:
            out = self
            for _ in range(n % f.k if f.k else n):
                out = out ** f.p
            return out
        num, den = self.val
        step = f.p ** n

        def stretch(a):
            if not a:
                return ()
            out = [0] * ((len(a) - 1) * step + 1)
            for i, c in enumerate(a):
                out[i * step] = c
            return tuple(out)

        return FieldElem(f, (stretch(num), stretch(den)))

    def index(self) -> int:
        """Position of this element in the fixed base-p order."""
        f = self.field
        if f.order is None:
            raise CapExceeded(f"{f} is infinite and has no element index")
        if f.kind == PRIME:
            return self.val
        total = 0
        for i in range(len(self.val) - 1, -1, -1):
            total = total * f.p + self.val[i]
        return total

    def is_square(self) -> bool:
        f = self.field
        if f.order is None:
            raise CapExceeded(f"squareness in {f} is not decided here")
        if f.p == 2 or not self:
            return True
        return (self ** ((f.order - 1) // 2)) == f.one

    def sqrt(self):
        """A square root, or None when the element is not a square."""
        f = self.field
        if f.order is None:
            raise CapExceeded(f"square roots in {f} are not extracted here")
        q = f.order
        if not self:
            return f.zero
        if f.p == 2:
            return self ** (q // 2)
        if not self.is_square():
            return None
        if q % 4 == 3:
            return self ** ((q + 1) // 4)
        # Tonelli-Shanks with the first non-square (in index order) as helper.
        t, s = q - 1, 0
        while t % 2 == 0:
            t //= 2
            s += 1
        z = None
        for i in range(2, q):
            cand = f.from_index(i)
            if cand and not cand.is_square():
                z = cand
                break
        if z is None:
            raise InternalContractViolation(f"no non-square found in {f}")
        m, c, u, r = s, z ** t, self ** t, self ** ((t + 1) // 2)
        while u != f.one:
            d, i = u * u, 1
            while d != f.one:
                d = d * d
                i += 1
            b = c ** (1 << (m - i - 1))
            m, c, u, r = i, b * b, u * b * b, r * b
        return r


# ---------------------------------------------------------------------------
# Text syntax:  prime `3`;  extension `u+1 @ F2[u]/(u^2+u+1)`;
# rational function `(S^3+1)/(S+2) @ F3(S)`.

def poly_text(coeffs, var: str) -> str:
    """Render an int-tuple polynomial with terms from the highest degree down."""
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
    return "+".join(parts)


def element_text(x: FieldElem) -> str:
    """Full unambiguous text form, field included."""
    if x.field.kind == PRIME:
        return str(x)
    return f"{x} @ {x.field}"


_PRIME_RE = re.compile(r"F(\d+)")
_EXT_RE = re.compile(r"F(\d+)\[([A-Za-z_]\w*)\]/\((.*)\)")
_RF_RE = re.compile(r"F(\d+)\(([A-Za-z_]\w*)\)")


def parse_field(text: str) -> Field:
    s = "".join(text.split())
    m = _PRIME_RE.fullmatch(s)
    if m:
        return GF(int(m.group(1)))
    m = _EXT_RE.fullmatch(s)
    if m:
        p, var, modtext = int(m.group(1)), m.group(2), m.group(3)
        if not is_prime(p):
            raise ConfigError(f"explicit moduli go over a prime field, not F{p}")
        rf = function_field(p, var)
        mod = parse_element(modtext, rf)
        num, den = mod.val
        if den != (1,):
            raise ConfigError(f"modulus {modtext!r} is not a polynomial")
        return GF(p ** (len(num) - 1), modulus=num, var=var)
    m = _RF_RE.fullmatch(s)
    if m:
        p = int(m.group(1))
        if not is_prime(p):
            raise ConfigError(f"rational functions need a prime field, not F{p}")
        return function_field(p, m.group(2))
    raise ConfigError(f"cannot read field {text!r}")


def parse_element(text: str, field: Field | None = None) -> FieldElem:
    """Parse `expr` or `expr @ field`; a bare expr needs the field argument."""
    if "@" in text:
        expr, _, ftext = text.rpartition("@")
        stated = parse_field(ftext)
        if field is not None and stated != field:
            raise ConfigError(f"element {text!r} does not live in {field}")
        field = stated
    else:
        expr = text
    if field is None:
        raise ConfigError(f"element {text!r} names no field")

    def var(name):
        if field.gen is not None and name == field.var:
            return field.gen
        raise ConfigError(f"unknown variable {name!r} for {field}")

    return field(exprparse.evaluate(expr, field, var))


# ---------------------------------------------------------------------------
# Z/nZ, for the residue rings that are not fields.

class ZModElem:
    """An integer residue with its modulus; canonical value in [0, n)."""

    __slots__ = ("n", "val")

    def __init__(self, n: int, val: int):
        if n <= 0:
            raise ConfigError(f"modulus must be positive, got {n}")
        self.n = n
        self.val = val % n

    def _coerce(self, other):
        if isinstance(other, ZModElem):
            if other.n != self.n:
                raise MixedFields(f"mixed moduli {self.n} and {other.n}")
            return other
        if isinstance(other, int):
            return ZModElem(self.n, other)
        return None

    def __eq__(self, other):
        if isinstance(other, ZModElem):
            return self.n == other.n and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.n
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.val))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"<{self.val} mod {self.n}>"

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ZModElem(self.n, self.val + other.val)

    __radd__ = __add__

    def __neg__(self):
        return ZModElem(self.n, -self.val)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ZModElem(self.n, self.val - other.val)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ZModElem(self.n, self.val * other.val)

    __rmul__ = __mul__

    def inverse(self) -> "ZModElem":
        try:
            return ZModElem(self.n, pow(self.val, -1, self.n))
        except ValueError:
            raise DivisionByZero(f"{self.val} is not invertible mod {self.n}") from None

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        try:
            return ZModElem(self.n, pow(self.val, e, self.n))
        except ValueError:
            raise DivisionByZero(f"{self.val} is not invertible mod {self.n}") from None
