"""Exact group machinery for the groups through which Galois acts on flexes
and torsion: the affine group F3² ⋊ GL2(F3), SL2 and GL2 over small residue
rings Z/n, and the symmetric group S3.

Everything is exhaustively enumerated and deterministic.  An ambient group is
materialised once with full multiplication, inverse and action tables; on top
of that the module builds complete conjugacy-class censuses of subgroups
(bottom-up extensions of prime index inside normalizers, seeded with the
perfect kernel components that appear once 5 or 7 divides the modulus),
analyses fixed vectors of subgroup actions in three admission modes, and
packages the specific verification jobs the workbench needs:

* the 46-class census of the affine group, with the statement that a class
  whose elements each fix a vector has a common fixed vector
  (`verify_lemma_2_1`),
* the analogous statement for primitive vectors under SL2(Z/n), together
  with its Chinese-remainder cross-check over the prime-power parts of n
  (`verify_sl2_fixed_point`),
* the scalar Klein-four group inside SL2(Z/abc) for pairwise coprime odd
  factors, which fixes vectors elementwise but not globally
  (`construct_lemma_6_2`),
* certified exhaustive searches for such elementwise-but-not-globally
  fixing subgroups at a given modulus (`search_counterexample_subgroups`),
* the triangular family {(a b; 0 1)} inside GL2(F_p) (`triangular_family`),
* the fixed-point / 3-cycle dichotomy for subgroups of S3 (`s3_dichotomy`).

Reports are reproducible byte for byte: elements are ordered
lexicographically by their entry tuples, class representatives are the
lexicographically least subgroup in their conjugacy class, and report rows
are sorted by a total deterministic key.
"""

from __future__ import annotations

import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod

import numpy as np

from .errors import (
    BadFactorization,
    BudgetExceeded,
    CapExceeded,
    ConfigError,
    DivisionByZero,
    InternalContractViolation,
    LemmaViolated,
    MixedFields,
    NotInAmbient,
)
from .fields import ZModElem, is_prime

__all__ = [
    "Mat2",
    "AffElem",
    "Perm3",
    "aff_mul",
    "aff_act",
    "Ambient",
    "get_ambient",
    "ambient_order",
    "Subgroup",
    "close",
    "fixed_point_analysis",
    "CensusReport",
    "ClassRow",
    "subgroups_up_to_conjugacy",
    "count_all_subgroups",
    "verify_lemma_2_1",
    "verify_sl2_fixed_point",
    "SearchOutcome",
    "search_counterexample_subgroups",
    "Lemma62Report",
    "construct_lemma_6_2",
    "TriangularFamilyReport",
    "triangular_family",
    "s3_dichotomy",
    "HAS_GLOBAL_FIXED_POINT",
    "CONTAINS_THREE_CYCLE",
    "EXHAUSTED_NONE",
    "COUNTEREXAMPLE_FOUND",
    "MODES",
]

MODES = ("any-vector", "nonzero-vector", "primitive-vector")

HAS_GLOBAL_FIXED_POINT = "HasGlobalFixedPoint"
CONTAINS_THREE_CYCLE = "ContainsThreeCycle"
EXHAUSTED_NONE = "ExhaustedNone"
COUNTEREXAMPLE_FOUND = "CounterexampleFound"

# Hard ceiling on the size of any ambient group we are willing to tabulate;
# the multiplication table is order² int16 entries, so 4096 keeps every table
# under 32 MiB.
_TABLE_CAP = 4096


def _as_residue(x, n: int, what: str) -> int:
    if isinstance(x, ZModElem):
        if x.n != n:
            raise MixedFields(f"{what} has modulus {x.n}, expected {n}")
        return x.val
    if isinstance(x, (int, np.integer)):
        return int(x) % n
    raise ConfigError(f"{what} must be an integer or ZModElem, got {type(x).__name__}")


# --------------------------------------------------------------------------
# Element types
# --------------------------------------------------------------------------


class Mat2:
    """A 2×2 matrix over Z/nZ, entries reduced into [0, n).

    This is the element type for the SL2(Z/n) and GL2(Z/n) ambient groups and
    the linear part of affine transformations.  Instances are immutable in
    spirit: nothing in the package mutates them after construction.
    """

    __slots__ = ("n", "a", "b", "c", "d")

    def __init__(self, n: int, a, b, c, d):
        if not isinstance(n, int) or n <= 0:
            raise ConfigError(f"matrix modulus must be a positive integer, got {n!r}")
        self.n = n
        self.a = _as_residue(a, n, "entry a")
        self.b = _as_residue(b, n, "entry b")
        self.c = _as_residue(c, n, "entry c")
        self.d = _as_residue(d, n, "entry d")

    @classmethod
    def identity(cls, n: int) -> "Mat2":
        return cls(n, 1, 0, 0, 1)

    @classmethod
    def scalar(cls, n: int, s) -> "Mat2":
        return cls(n, s, 0, 0, s)

    @property
    def key(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def entries(self) -> tuple:
        return tuple(ZModElem(self.n, x) for x in self.key)

    @property
    def det(self) -> ZModElem:
        return ZModElem(self.n, self.a * self.d - self.b * self.c)

    @property
    def trace(self) -> ZModElem:
        return ZModElem(self.n, self.a + self.d)

    def is_sl2(self) -> bool:
        return self.det.val == 1

    def is_gl2(self) -> bool:
        return gcd(self.det.val, self.n) == 1

    def __mul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        if other.n != self.n:
            raise MixedFields(f"mixed matrix moduli {self.n} and {other.n}")
        return Mat2(
            self.n,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Mat2":
        det = self.a * self.d - self.b * self.c
        try:
            di = pow(det, -1, self.n)
        except ValueError:
            raise DivisionByZero(
                f"matrix {self} has determinant {det % self.n}, "
                f"not invertible mod {self.n}"
            ) from None
        return Mat2(self.n, di * self.d, -di * self.b, -di * self.c, di * self.a)

    def __pow__(self, e: int) -> "Mat2":
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = Mat2.identity(self.n)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def order(self) -> int:
        if not self.is_gl2():
            raise DivisionByZero(f"{self} is not invertible mod {self.n}")
        k, y = 1, self
        ident = Mat2.identity(self.n)
        while y != ident:
            y = y * self
            k += 1
        return k

    def act(self, w) -> tuple:
        w0 = _as_residue(w[0], self.n, "vector entry")
        w1 = _as_residue(w[1], self.n, "vector entry")
        return ((self.a * w0 + self.b * w1) % self.n, (self.c * w0 + self.d * w1) % self.n)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.n == other.n and self.key == other.key

    def __hash__(self):
        return hash((self.n,) + self.key)

    def __str__(self):
        return f"[{self.a} {self.b}; {self.c} {self.d}]"

    def __repr__(self):
        return f"Mat2({self.n}; {self.a},{self.b},{self.c},{self.d})"


class AffElem:
    """An affine transformation (v, g) of F3²: translation v and linear part
    g ∈ GL2(F3).  Composition is (v,g)·(v',g') = (v + g(v'), g g') and the
    action on a vector w is (v,g)·w = v + g(w)."""

    __slots__ = ("v", "g")

    def __init__(self, v, g: Mat2):
        if not isinstance(g, Mat2) or g.n != 3:
            raise NotInAmbient("the linear part of an AffElem must be a Mat2 over Z/3")
        if not g.is_gl2():
            raise NotInAmbient(f"linear part {g} is singular mod 3")
        self.v = (_as_residue(v[0], 3, "translation entry"),
                  _as_residue(v[1], 3, "translation entry"))
        self.g = g

    @classmethod
    def identity(cls) -> "AffElem":
        return cls((0, 0), Mat2.identity(3))

    def __mul__(self, other):
        if not isinstance(other, AffElem):
            return NotImplemented
        gv = self.g.act(other.v)
        return AffElem(((self.v[0] + gv[0]) % 3, (self.v[1] + gv[1]) % 3),
                       self.g * other.g)

    def inverse(self) -> "AffElem":
        gi = self.g.inverse()
        w = gi.act(self.v)
        return AffElem(((-w[0]) % 3, (-w[1]) % 3), gi)

    def act(self, w) -> tuple:
        gw = self.g.act(w)
        return ((self.v[0] + gw[0]) % 3, (self.v[1] + gw[1]) % 3)

    @property
    def key(self) -> tuple:
        # Matrix entries first, then the translation: this is the canonical
        # lexicographic ordering used for ambient element indices.
        return self.g.key + self.v

    def __eq__(self, other):
        if not isinstance(other, AffElem):
            return NotImplemented
        return self.v == other.v and self.g == other.g

    def __hash__(self):
        return hash(("aff", self.v, self.g.key))

    def __str__(self):
        return f"(({self.v[0]},{self.v[1]}), {self.g})"

    def __repr__(self):
        return f"AffElem(v={self.v}, g={self.g!r})"


def aff_mul(x: AffElem, y: AffElem) -> AffElem:
    """Compose two affine transformations: (v,g)·(v',g') = (v + g(v'), gg')."""
    return x * y


def aff_act(x: AffElem, w) -> tuple:
    """Apply an affine transformation to a vector: (v,g)·w = v + g(w)."""
    return x.act(w)


class Perm3:
    """A permutation of {1, 2, 3}, stored as its image tuple (π(1), π(2), π(3))."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != [1, 2, 3]:
            raise ConfigError(f"not a permutation of {{1,2,3}}: {images}")
        self.images = images

    @classmethod
    def identity(cls) -> "Perm3":
        return cls((1, 2, 3))

    @classmethod
    def cycle(cls, *points) -> "Perm3":
        """The cyclic permutation points[0] → points[1] → ... → points[0]."""
        if len(set(points)) != len(points) or not set(points) <= {1, 2, 3}:
            raise ConfigError(f"bad cycle {points}")
        images = [1, 2, 3]
        for i, p in enumerate(points):
            images[p - 1] = points[(i + 1) % len(points)]
        return cls(images)

    def __mul__(self, other):
        if not isinstance(other, Perm3):
            return NotImplemented
        return Perm3(tuple(self.images[other.images[i] - 1] for i in range(3)))

    def inverse(self) -> "Perm3":
        images = [0, 0, 0]
        for i, p in enumerate(self.images):
            images[p - 1] = i + 1
        return Perm3(images)

    def act(self, point: int) -> int:
        if point not in (1, 2, 3):
            raise ConfigError(f"S3 acts on {{1,2,3}}, got {point}")
        return self.images[point - 1]

    def order(self) -> int:
        k, y = 1, self
        while y.images != (1, 2, 3):
            y = y * self
            k += 1
        return k

    def fixed_points(self) -> tuple:
        return tuple(p for p in (1, 2, 3) if self.images[p - 1] == p)

    def is_three_cycle(self) -> bool:
        return self.order() == 3

    @property
    def key(self) -> tuple:
        return self.images

    def __eq__(self, other):
        if not isinstance(other, Perm3):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(("perm3", self.images))

    def __str__(self):
        moved = [p for p in (1, 2, 3) if self.images[p - 1] != p]
        if not moved:
            return "e"
        start = moved[0]
        cyc, p = [start], self.images[start - 1]
        while p != start:
            cyc.append(p)
            p = self.images[p - 1]
        if len(cyc) == len(moved):
            return "(" + " ".join(str(p) for p in cyc) + ")"
        raise InternalContractViolation(f"impossible cycle shape for {self.images}")

    def __repr__(self):
        return f"Perm3{self.images}"


# --------------------------------------------------------------------------
# Ambient groups with precomputed tables
# --------------------------------------------------------------------------


def _factorize(n: int) -> dict:
    fac, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        fac[n] = fac.get(n, 0) + 1
    return fac


def _sl2_order(n: int) -> int:
    out = 1
    for p, k in _factorize(n).items():
        out *= p ** (3 * k - 2) * (p * p - 1)
    return out


def _gl2_order(n: int) -> int:
    out = 1
    for p, k in _factorize(n).items():
        out *= p ** (4 * k - 3) * (p - 1) * (p * p - 1)
    return out


def ambient_order(spec) -> int:
    """Group order of an ambient descriptor, computed by formula (no tables)."""
    kind, n = _parse_ambient_name(spec)
    if kind == "aff3":
        return 432
    if kind == "s3":
        return 6
    if kind == "sl2":
        return _sl2_order(n)
    return _gl2_order(n)


def _parse_ambient_name(spec) -> tuple:
    if isinstance(spec, Ambient):
        return spec.kind, spec.n
    if not isinstance(spec, str):
        raise ConfigError(f"ambient descriptor must be a string, got {type(spec).__name__}")
    s = spec.strip().lower()
    if s in ("aff3", "affine-f3", "aff(3)"):
        return "aff3", 3
    if s in ("s3", "s3-as-permutations"):
        return "s3", None
    m = re.fullmatch(r"(sl2|gl2)\s*\(\s*(?:z/)?(\d+)\s*\)", s)
    if m:
        n = int(m.group(2))
        if n < 2:
            raise ConfigError(f"matrix group modulus must be at least 2, got {n}")
        return m.group(1), n
    raise ConfigError(
        f"unrecognised ambient {spec!r}; expected one of aff3, s3, sl2(n), gl2(n)")


class Ambient:
    """A fully tabulated ambient group.

    Elements are identified with indices 0..order-1 into `elems`, the list of
    raw entry tuples in lexicographic order.  `mul`, `inv` and `act` are
    numpy tables; `elem_orders` holds each element's order.  `act` maps an
    element index and a vector index to the image vector index (the affine
    group and the matrix groups act on length-2 vectors over Z/n indexed as
    w0·n + w1; S3 acts on the three points {1,2,3} indexed 0..2).
    """

    __slots__ = ("name", "kind", "n", "order", "elems", "index", "mul", "inv",
                 "e", "elem_orders", "act", "nvec", "_public", "_fix_cache")

    def __init__(self, kind: str, n):
        self.kind = kind
        self.n = n
        if kind == "aff3":
            self.name = "aff3"
            raws = [
                (a, b, c, d, v0, v1)
                for a in range(3) for b in range(3)
                for c in range(3) for d in range(3)
                if (a * d - b * c) % 3
                for v0 in range(3) for v1 in range(3)
            ]
            self.nvec = 9
        elif kind == "s3":
            self.name = "s3"
            raws = [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]
            self.nvec = 3
        elif kind in ("sl2", "gl2"):
            self.name = f"{kind}({n})"
            want_one = kind == "sl2"
            raws = []
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        for d in range(n):
                            det = (a * d - b * c) % n
                            if det == 1 if want_one else gcd(det, n) == 1:
                                raws.append((a, b, c, d))
            self.nvec = n * n
        else:
            raise ConfigError(f"unknown ambient kind {kind!r}")
        raws.sort()
        self.elems = raws
        self.order = len(raws)
        expected = ambient_order(self.name if kind != "aff3" else "aff3")
        if self.order != expected:
            raise InternalContractViolation(
                f"enumerated {self.order} elements of {self.name}, expected {expected}")
        self.index = {r: i for i, r in enumerate(raws)}
        self._build_tables()
        self._public = None
        self._fix_cache = {}

    # -- table construction ------------------------------------------------

    def _build_tables(self):
        N = self.order
        if self.kind == "s3":
            mul = np.zeros((N, N), dtype=np.int16)
            for i, x in enumerate(self.elems):
                for j, y in enumerate(self.elems):
                    mul[i, j] = self.index[tuple(x[y[k] - 1] for k in range(3))]
            act = np.zeros((N, 3), dtype=np.int16)
            for i, x in enumerate(self.elems):
                for p in range(3):
                    act[i, p] = x[p] - 1
        else:
            arr = np.array(self.elems, dtype=np.int64)
            n = 3 if self.kind == "aff3" else self.n
            a, b, c, d = (arr[:, k] for k in range(4))
            pa = (a[:, None] * a[None, :] + b[:, None] * c[None, :]) % n
            pb = (a[:, None] * b[None, :] + b[:, None] * d[None, :]) % n
            pc = (c[:, None] * a[None, :] + d[:, None] * c[None, :]) % n
            pd = (c[:, None] * b[None, :] + d[:, None] * d[None, :]) % n
            key = ((pa * n + pb) * n + pc) * n + pd
            digits = 4
            if self.kind == "aff3":
                v0, v1 = arr[:, 4], arr[:, 5]
                q0 = (v0[:, None] + a[:, None] * v0[None, :] + b[:, None] * v1[None, :]) % 3
                q1 = (v1[:, None] + c[:, None] * v0[None, :] + d[:, None] * v1[None, :]) % 3
                key = (key * n + q0) * n + q1
                digits = 6
            lookup = np.full(n ** digits, -1, dtype=np.int32)
            flat_keys = np.zeros(N, dtype=np.int64)
            for i, r in enumerate(self.elems):
                k = 0
                for x in r:
                    k = k * n + x
                flat_keys[i] = k
            lookup[flat_keys] = np.arange(N, dtype=np.int32)
            mul = lookup[key].astype(np.int16)
            if (mul < 0).any():
                raise InternalContractViolation(
                    f"product escaped the enumerated ambient {self.name}")
            # action on vectors (w0, w1), indexed w0*n + w1
            w = np.arange(n * n)
            w0, w1 = w // n, w % n
            i0 = (a[:, None] * w0[None, :] + b[:, None] * w1[None, :]) % n
            i1 = (c[:, None] * w0[None, :] + d[:, None] * w1[None, :]) % n
            if self.kind == "aff3":
                i0 = (i0 + arr[:, 4][:, None]) % n
                i1 = (i1 + arr[:, 5][:, None]) % n
            act = (i0 * n + i1).astype(np.int16)
        self.mul = mul
        self.act = act
        if self.kind == "aff3":
            eraw = (1, 0, 0, 1, 0, 0)
        elif self.kind == "s3":
            eraw = (1, 2, 3)
        else:
            eraw = (1, 0, 0, 1)
        self.e = self.index[eraw]
        self.inv = np.argmax(mul == self.e, axis=1).astype(np.int16)
        orders = np.zeros(self.order, dtype=np.int16)
        for i in range(self.order):
            k, y = 1, i
            while y != self.e:
                y = int(mul[y, i])
                k += 1
            orders[i] = k
        self.elem_orders = orders

    # -- element conversion --------------------------------------------------

    def to_index(self, elem) -> int:
        if self.kind == "aff3":
            if not isinstance(elem, AffElem):
                raise NotInAmbient(
                    f"elements of {self.name} are AffElem, got {type(elem).__name__}")
            return self.index[elem.key]
        if self.kind == "s3":
            if not isinstance(elem, Perm3):
                raise NotInAmbient(
                    f"elements of {self.name} are Perm3, got {type(elem).__name__}")
            return self.index[elem.key]
        if not isinstance(elem, Mat2):
            raise NotInAmbient(
                f"elements of {self.name} are Mat2, got {type(elem).__name__}")
        if elem.n != self.n:
            raise NotInAmbient(f"matrix modulus {elem.n} does not match {self.name}")
        if self.kind == "sl2" and not elem.is_sl2():
            raise NotInAmbient(
                f"{elem} has determinant {elem.det.val} ≠ 1, not in {self.name}")
        if self.kind == "gl2" and not elem.is_gl2():
            raise NotInAmbient(f"{elem} is singular mod {self.n}, not in {self.name}")
        return self.index[elem.key]

    def public(self, i: int):
        if self._public is None:
            self._public = [None] * self.order
        cached = self._public[i]
        if cached is None:
            raw = self.elems[i]
            if self.kind == "aff3":
                cached = AffElem(raw[4:], Mat2(3, *raw[:4]))
            elif self.kind == "s3":
                cached = Perm3(raw)
            else:
                cached = Mat2(self.n, *raw)
            self._public[i] = cached
        return cached

    # -- vectors and admission modes -----------------------------------------

    def vector_of(self, vidx: int):
        if self.kind == "s3":
            return vidx + 1
        n = 3 if self.kind == "aff3" else self.n
        return (vidx // n, vidx % n)

    def mode_mask(self, mode: str) -> np.ndarray:
        if mode not in MODES:
            raise ConfigError(f"unknown admission mode {mode!r}; expected one of {MODES}")
        if self.kind == "s3":
            if mode != "any-vector":
                raise ConfigError(
                    "S3 acts on points, not vectors; only any-vector admission applies")
            return np.ones(3, dtype=bool)
        n = 3 if self.kind == "aff3" else self.n
        w = np.arange(n * n)
        w0, w1 = w // n, w % n
        if mode == "any-vector":
            return np.ones(n * n, dtype=bool)
        if mode == "nonzero-vector":
            return w != 0
        # primitive: order exactly n in (Z/n)², i.e. gcd(w0, w1, n) = 1
        return np.gcd(np.gcd(w0, w1), n) == 1

    def fix_table(self) -> np.ndarray:
        """Boolean table: fix_table()[i, v] ⟺ element i fixes vector v."""
        cached = self._fix_cache.get("fix")
        if cached is None:
            cached = self.act == np.arange(self.nvec, dtype=np.int16)[None, :]
            self._fix_cache["fix"] = cached
        return cached


_AMBIENT_CACHE: dict = {}


def get_ambient(spec) -> Ambient:
    """Materialise (and cache) an ambient group from its descriptor."""
    if isinstance(spec, Ambient):
        return spec
    kind, n = _parse_ambient_name(spec)
    name = kind if kind in ("aff3", "s3") else f"{kind}({n})"
    cached = _AMBIENT_CACHE.get(name)
    if cached is None:
        order = ambient_order(name)
        if order > _TABLE_CAP:
            raise CapExceeded(
                f"|{name}| = {order} exceeds the tabulation ceiling {_TABLE_CAP}")
        cached = Ambient(kind, n)
        _AMBIENT_CACHE[name] = cached
    return cached


# --------------------------------------------------------------------------
# Subgroups
# --------------------------------------------------------------------------


class Subgroup:
    """A subgroup of one ambient group, stored as a closed element set.

    Normally table-backed (constructed by `close` or by the census); the
    explicit constructor `from_elements` supports groups whose ambient is too
    large to tabulate, such as the scalar Klein-four group mod 105, and
    verifies closure, identity and inverses directly on the elements.
    """

    __slots__ = ("ambient", "ambient_name", "gen_idx", "idx_set",
                 "_pub_gens", "_pub_elems", "_arr", "_fp")

    def __init__(self, ambient, gen_idx, idx_set, *, _pub=None):
        self.ambient = ambient
        self.ambient_name = ambient.name if ambient is not None else None
        self.gen_idx = tuple(gen_idx) if gen_idx is not None else None
        self.idx_set = frozenset(idx_set) if idx_set is not None else None
        self._pub_gens, self._pub_elems = (None, None) if _pub is None else _pub
        self._arr = None
        self._fp = None
        if ambient is not None and len(self.idx_set) > 0:
            if ambient.order % len(self.idx_set):
                raise InternalContractViolation(
                    f"subgroup order {len(self.idx_set)} does not divide "
                    f"|{ambient.name}| = {ambient.order}")

    @classmethod
    def from_elements(cls, ambient_name: str, generators, elements) -> "Subgroup":
        elements = list(elements)
        eset = set(elements)
        if len(eset) != len(elements):
            raise ConfigError("duplicate elements in explicit subgroup")
        for g in generators:
            if g not in eset:
                raise InternalContractViolation("generator missing from element set")
        ident = None
        for x in elements:
            for y in elements:
                p = x * y
                if p not in eset:
                    raise InternalContractViolation(
                        f"explicit subgroup not closed: {x} · {y} escapes")
                if p == x:
                    ident = y
        if ident is None or any(x * ident != x for x in elements):
            raise InternalContractViolation("explicit subgroup has no identity")
        for x in elements:
            if x.inverse() not in eset:
                raise InternalContractViolation(f"explicit subgroup misses {x}⁻¹")
        sub = cls(None, None, None, _pub=(tuple(generators), tuple(elements)))
        sub.ambient_name = ambient_name
        return sub

    @property
    def order(self) -> int:
        return len(self.idx_set) if self.idx_set is not None else len(self._pub_elems)

    @property
    def indices(self) -> np.ndarray:
        if self._arr is None:
            self._arr = np.array(sorted(self.idx_set), dtype=np.int16)
        return self._arr

    @property
    def generators(self) -> tuple:
        if self._pub_gens is None:
            self._pub_gens = tuple(self.ambient.public(i) for i in self.gen_idx)
        return self._pub_gens

    @property
    def elements(self) -> tuple:
        if self._pub_elems is None:
            self._pub_elems = tuple(self.ambient.public(int(i)) for i in self.indices)
        return self._pub_elems

    def contains(self, elem) -> bool:
        if self.ambient is not None:
            try:
                return self.ambient.to_index(elem) in self.idx_set
            except NotInAmbient:
                return False
        return elem in set(self._pub_elems)

    def fingerprint(self) -> tuple:
        if self._fp is None:
            if self.ambient is not None:
                orders = np.sort(self.ambient.elem_orders[self.indices])
                self._fp = (self.order, orders.astype(np.int16).tobytes())
            else:
                self._fp = (self.order,
                            bytes(sorted(x.order() for x in self._pub_elems)))
        return self._fp

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<Subgroup of {self.ambient_name}, order {self.order}>"


def close(gens, ambient) -> Subgroup:
    """The subgroup generated by `gens` inside `ambient`, by breadth-first
    closure under right multiplication.  Raises NotInAmbient if a generator
    does not belong to the ambient group."""
    A = get_ambient(ambient)
    gidx = sorted({A.to_index(g) for g in gens})
    mul = A.mul
    seen = {A.e}
    frontier = [A.e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gidx:
                y = int(mul[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(A, tuple(gidx), frozenset(seen))


# --------------------------------------------------------------------------
# Fixed-point analysis
# --------------------------------------------------------------------------


def fixed_point_analysis(G: Subgroup, mode: str = "any-vector"):
    """Analyse the fixed vectors of a subgroup action.

    Returns a pair (elementwise, common): `elementwise` is True when every
    element of G fixes at least one vector admitted by `mode`, and `common`
    is the set of admitted vectors fixed by every element of G.  The affine
    group acts on F3² by w ↦ v + g(w); SL2/GL2 act linearly on (Z/n)²; S3
    acts on the three points (any-vector mode only).
    """
    if G.ambient is not None:
        A = G.ambient
        dom = A.mode_mask(mode)
        fixed = A.fix_table()[G.indices]
        elementwise = bool((fixed & dom[None, :]).any(axis=1).all())
        common_mask = fixed.all(axis=0) & dom
        common = {A.vector_of(int(v)) for v in np.flatnonzero(common_mask)}
        return elementwise, common
    return _fixed_point_analysis_explicit(G, mode)


def _fixed_point_analysis_explicit(G: Subgroup, mode: str):
    if mode not in MODES:
        raise ConfigError(f"unknown admission mode {mode!r}; expected one of {MODES}")
    mats = G._pub_elems
    if not all(isinstance(m, Mat2) for m in mats):
        raise ConfigError("explicit fixed-point analysis supports matrix groups only")
    n = mats[0].n
    if n * n > (1 << 22):
        raise CapExceeded(f"vector space (Z/{n})² too large to scan exhaustively")
    w = np.arange(n * n)
    w0, w1 = w // n, w % n
    if mode == "any-vector":
        dom = np.ones(n * n, dtype=bool)
    elif mode == "nonzero-vector":
        dom = w != 0
    else:
        dom = np.gcd(np.gcd(w0, w1), n) == 1
    common_mask = dom.copy()
    elementwise = True
    for m in mats:
        fixed = (((m.a * w0 + m.b * w1) % n == w0)
                 & ((m.c * w0 + m.d * w1) % n == w1))
        if not (fixed & dom).any():
            elementwise = False
        common_mask &= fixed
    common = {(int(w0[i]), int(w1[i])) for i in np.flatnonzero(common_mask)}
    return elementwise, common


# --------------------------------------------------------------------------
# Census machinery
# --------------------------------------------------------------------------


def _conjugating_mask(A: Ambient, gens: np.ndarray, target_sorted: np.ndarray) -> np.ndarray:
    """Boolean mask over t ∈ ambient: t·g·t⁻¹ ∈ target for every generator g."""
    t = np.arange(A.order)
    if gens.size == 0:
        return np.ones(A.order, dtype=bool)
    P = A.mul[A.mul[t[:, None], gens[None, :]], A.inv[t][:, None]]
    return np.isin(P, target_sorted).all(axis=1)


def _normalizer_mask(A: Ambient, sub_arr: np.ndarray, gens: tuple) -> np.ndarray:
    # t normalizes H iff it conjugates every generator into H (conjugation is
    # injective and |tHt⁻¹| = |H|, so generator containment gives equality).
    return _conjugating_mask(A, np.array(gens, dtype=np.int64), sub_arr)


def _extensions(A: Ambient, sub_arr: np.ndarray, gens: tuple, element_mask):
    """All subgroups H·⟨x⟩ of prime index over H = `sub_arr`, for x running
    over the normalizer of H.  Each extension is returned once: every element
    of a prime-index extension K generates K over H, so discovering K marks
    all of K∖H as processed.  When `element_mask` is given, extensions
    containing excluded elements are pruned (soundly, since any subgroup all
    of whose elements are admissible has a chief chain of admissible
    subgroups)."""
    mul = A.mul
    nmask = _normalizer_mask(A, sub_arr, gens)
    in_H = np.zeros(A.order, dtype=bool)
    in_H[sub_arr] = True
    processed = in_H.copy()
    out = []
    for x in np.flatnonzero(nmask).tolist():
        if processed[x]:
            continue
        powers = []
        y = x
        while not in_H[y]:
            powers.append(y)
            y = int(mul[y, x])
        k = len(powers) + 1
        if not is_prime(k):
            processed[mul[sub_arr, x]] = True
            continue
        parts = [sub_arr] + [mul[sub_arr, p] for p in powers]
        K = np.sort(np.concatenate(parts))
        processed[K] = True
        if element_mask is not None and not element_mask[K].all():
            continue
        out.append((K, gens + (x,)))
    return out


def _perfect_seeds(A: Ambient, element_mask):
    """Seed subgroups beyond the trivial group: the perfect subgroups.

    For the solvable ambients (aff3, s3, and SL2/GL2 with modulus a product
    of powers of 2 and 3) every subgroup is reached from the trivial group by
    prime-index extensions, so no extra seeds are needed.  When 5 or 7
    divides the modulus (to the first power), the only nontrivial perfect
    subgroups are products of the CRT kernel components isomorphic to
    SL2(F5) / SL2(F7): a perfect subgroup projects trivially to the solvable
    prime-power factors, and SL2(F5), SL2(F7) have no perfect proper
    subgroups (their unique involution is −I, ruling out embedded simple
    groups, and Lagrange rules out the rest)."""
    if A.kind not in ("sl2", "gl2"):
        return []
    n = A.n
    big = [p for p in (5, 7) if n % p == 0]
    seeds = []
    for r in range(1, len(big) + 1):
        for combo in combinations(big, r):
            m = n // prod(combo)
            gens = []
            for p in combo:
                rest = n // p
                for tv in ((1, 1, 0, 1), (1, 0, 1, 1)):
                    entries = tuple(
                        _crt2(tv[j], p, (1, 0, 0, 1)[j], rest) for j in range(4))
                    gens.append(A.index[entries])
            sub = close([A.public(g) for g in gens], A)
            expected = prod(_sl2_order(p) for p in combo)
            if sub.order != expected:
                raise InternalContractViolation(
                    f"kernel component for {combo} in {A.name} has order "
                    f"{sub.order}, expected {expected}")
            K = sub.indices
            if element_mask is not None and not element_mask[K].all():
                continue
            seeds.append((K, tuple(sorted(sub.gen_idx))))
    return seeds


def _crt2(r1: int, m1: int, r2: int, m2: int) -> int:
    if m1 == 1:
        return r2 % m2
    if m2 == 1:
        return r1 % m1
    u = pow(m1, -1, m2)
    return (r1 + m1 * ((r2 - r1) * u % m2)) % (m1 * m2)


def _guard_census_modulus(A: Ambient):
    if A.kind not in ("sl2", "gl2"):
        return
    fac = _factorize(A.n)
    if any(p not in (2, 3, 5, 7) for p in fac):
        raise ConfigError(
            f"subgroup census supports moduli with prime factors among "
            f"2, 3, 5, 7; got {A.n}")
    if fac.get(5, 0) > 1 or fac.get(7, 0) > 1:
        raise ConfigError(
            f"subgroup census requires the modulus to be squarefree at 5 and 7; "
            f"got {A.n}")


def _census_classes(A: Ambient, element_mask=None):
    """Complete list of conjugacy classes of subgroups (all of whose elements
    satisfy `element_mask`, if given), as (sorted index array, generators)
    pairs in discovery order."""
    _guard_census_modulus(A)
    threads = _thread_count()
    classes = []
    seen = set()
    by_fp = {}

    def fingerprint(arr):
        return (arr.size, np.sort(A.elem_orders[arr]).astype(np.int16).tobytes())

    def try_add(arr, gens):
        key = arr.astype(np.int16).tobytes()
        if key in seen:
            return False
        seen.add(key)
        fp = fingerprint(arr)
        bucket = by_fp.setdefault(fp, [])
        garr = np.array(gens, dtype=np.int64)
        for pos in bucket:
            if _conjugating_mask(A, garr, classes[pos][0]).any():
                return False
        classes.append((arr, gens))
        bucket.append(len(classes) - 1)
        return True

    trivial = np.array([A.e], dtype=np.int16)
    frontier = []
    if try_add(trivial, ()):
        frontier.append(len(classes) - 1)
    for arr, gens in _perfect_seeds(A, element_mask):
        if try_add(arr, gens):
            frontier.append(len(classes) - 1)

    while frontier:
        jobs = [classes[pos] for pos in frontier]
        if threads > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                batches = list(pool.map(
                    lambda hw: _extensions(A, hw[0], hw[1], element_mask), jobs))
        else:
            batches = [_extensions(A, arr, gens, element_mask) for arr, gens in jobs]
        frontier = []
        for batch in batches:
            for arr, gens in batch:
                if try_add(arr, gens):
                    frontier.append(len(classes) - 1)
    return classes


def _thread_count() -> int:
    raw = os.environ.get("FLEXLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"FLEXLAB_THREADS must be an integer, got {raw!r}") from None


def _lex_least_conjugate(A: Ambient, arr: np.ndarray, gens: tuple):
    """Replace a class representative by the lexicographically least subgroup
    in its conjugacy class (as a sorted element-index tuple), conjugating the
    generators along."""
    t = np.arange(A.order)
    P = A.mul[A.mul[t[:, None], arr[None, :].astype(np.int64)], A.inv[t][:, None]]
    S = np.sort(P, axis=1)
    tstar = int(np.lexsort(S.T[::-1])[0])
    new_arr = S[tstar].astype(np.int16).copy()
    ti = int(A.inv[tstar])
    new_gens = tuple(int(A.mul[int(A.mul[tstar, g]), ti]) for g in gens)
    return new_arr, new_gens


# --------------------------------------------------------------------------
# Census reports
# --------------------------------------------------------------------------


@dataclass
class ClassRow:
    """One conjugacy class of subgroups in a census report."""

    subgroup: Subgroup
    normalizer_order: int
    elementwise: bool
    common_fixed: tuple

    def to_json(self) -> dict:
        return {
            "order": self.subgroup.order,
            "generators": [str(g) for g in self.subgroup.generators],
            "elementwise": self.elementwise,
            "common_fixed": [list(v) if isinstance(v, tuple) else v
                             for v in self.common_fixed],
        }


@dataclass
class CensusReport:
    """A complete conjugacy-class census of subgroups of one ambient group,
    annotated with fixed-point verdicts in one admission mode."""

    ambient_name: str
    mode: str
    rows: list
    verdict: str

    @property
    def num_classes(self) -> int:
        return len(self.rows)

    @property
    def orbit_size_total(self) -> int:
        """Σ over classes of [ambient : normalizer] — the number of subgroups
        the census accounts for, by orbit-stabilizer."""
        order = ambient_order(self.ambient_name)
        return sum(order // row.normalizer_order for row in self.rows)

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient_name,
            "classes": [row.to_json() for row in self.rows],
            "verdict": self.verdict,
        }


_DEFAULT_MODE = {"aff3": "any-vector", "s3": "any-vector",
                 "sl2": "primitive-vector", "gl2": "nonzero-vector"}


def _build_report(A: Ambient, classes, mode: str, verdict: str) -> CensusReport:
    rows = []
    for arr, gens in classes:
        arr2, gens2 = _lex_least_conjugate(A, arr, gens)
        sub = Subgroup(A, gens2, frozenset(arr2.tolist()))
        nmask = _normalizer_mask(A, sub.indices, sub.gen_idx) if gens2 else \
            np.ones(A.order, dtype=bool)
        elementwise, common = fixed_point_analysis(sub, mode)
        rows.append(ClassRow(sub, int(nmask.sum()), elementwise,
                             tuple(sorted(common))))
    rows.sort(key=lambda r: (r.subgroup.order, r.subgroup.fingerprint(),
                             tuple(r.subgroup.indices.tolist())))
    report = CensusReport(A.name, mode, rows, verdict)
    _verify_pairwise_nonconjugate(A, rows)
    return report


def _verify_pairwise_nonconjugate(A: Ambient, rows):
    by_fp = {}
    for row in rows:
        by_fp.setdefault(row.subgroup.fingerprint(), []).append(row)
    for bucket in by_fp.values():
        for r1, r2 in combinations(bucket, 2):
            gens = np.array(r1.subgroup.gen_idx, dtype=np.int64)
            if _conjugating_mask(A, gens, r2.subgroup.indices).any():
                raise InternalContractViolation(
                    f"census of {A.name} produced two conjugate classes "
                    f"of order {r1.subgroup.order}")


def subgroups_up_to_conjugacy(ambient, cap: int = 3000) -> CensusReport:
    """The full census of conjugacy classes of subgroups of an ambient group
    of order at most `cap`, built bottom-up: the trivial group and the
    perfect kernel components, then iterated extensions of prime index by
    normalizer elements, deduplicated by exhaustive conjugation tests.

    The report is annotated with the ambient's natural admission mode
    (any-vector for the affine group and S3, primitive for SL2, nonzero for
    GL2) and is deterministic byte for byte."""
    order = ambient_order(ambient)
    if order > cap:
        raise CapExceeded(
            f"ambient order {order} exceeds the census cap {cap}")
    A = get_ambient(ambient)
    classes = _census_classes(A)
    return _build_report(A, classes, _DEFAULT_MODE[A.kind], "pass")


def count_all_subgroups(ambient, cap: int = 3000) -> int:
    """Independent direct enumeration: the total number of subgroups of the
    ambient group, counted one by one (deduplicated as element sets, never by
    conjugacy).  Used to cross-check Σ [ambient : normalizer] over the census
    classes."""
    order = ambient_order(ambient)
    if order > cap:
        raise CapExceeded(f"ambient order {order} exceeds the cap {cap}")
    A = get_ambient(ambient)
    _guard_census_modulus(A)
    seen = set()
    frontier = []

    def try_add(arr, gens):
        key = arr.astype(np.int16).tobytes()
        if key in seen:
            return
        seen.add(key)
        frontier.append((arr, gens))

    try_add(np.array([A.e], dtype=np.int16), ())
    for arr, gens in _perfect_seeds(A, None):
        try_add(arr, gens)
    while frontier:
        batch, frontier = frontier, []
        for arr, gens in batch:
            for k_arr, k_gens in _extensions(A, arr, gens, None):
                try_add(k_arr, k_gens)
    return len(seen)


# --------------------------------------------------------------------------
# Verification jobs
# --------------------------------------------------------------------------


def verify_lemma_2_1() -> CensusReport:
    """Census the affine group F3²⋊GL2(F3) and verify that it has exactly 46
    conjugacy classes of subgroups, and that every class whose elements each
    fix some vector of F3² has a nonempty common fixed set.  Classes that
    fail the elementwise hypothesis are reported as vacuous rows.  Raises
    LemmaViolated if the count or the implication fails."""
    report = subgroups_up_to_conjugacy("aff3")
    if report.num_classes != 46:
        raise LemmaViolated(
            f"affine census found {report.num_classes} classes, expected 46")
    for row in report.rows:
        if row.elementwise and not row.common_fixed:
            raise LemmaViolated(
                f"affine subgroup class of order {row.subgroup.order} fixes "
                f"vectors elementwise but has no common fixed vector")
    return report


def verify_sl2_fixed_point(n: int, cap: int = 3000) -> CensusReport:
    """Census SL2(Z/n) and verify, class by class, that whenever every
    element fixes a primitive vector of (Z/n)² there is a common primitive
    fixed vector.  For composite n the verdicts are additionally cross-checked
    against the prime-power parts: both `elementwise` and `common ≠ ∅`
    must equal the conjunction of the same verdicts for the projected
    subgroups mod each prime power.  Raises LemmaViolated on any failure."""
    if not isinstance(n, int) or n < 2:
        raise ConfigError(f"modulus must be an integer ≥ 2, got {n!r}")
    order = _sl2_order(n)
    if order > cap:
        raise CapExceeded(f"|SL2(Z/{n})| = {order} exceeds the cap {cap}")
    report = subgroups_up_to_conjugacy(f"sl2({n})", cap=cap)
    fac = _factorize(n)
    parts = sorted(p ** k for p, k in fac.items())
    part_ambients = [get_ambient(f"sl2({q})") for q in parts] if len(parts) > 1 else []
    for row in report.rows:
        if row.elementwise and not row.common_fixed:
            raise LemmaViolated(
                f"subgroup class of SL2(Z/{n}) of order {row.subgroup.order} "
                f"fixes primitive vectors elementwise but shares none")
        if part_ambients:
            ew_parts, common_parts = True, True
            for q, Aq in zip(parts, part_ambients):
                img = _project_subgroup(row.subgroup, q, Aq)
                ew_q, common_q = fixed_point_analysis(img, "primitive-vector")
                ew_parts &= ew_q
                common_parts &= bool(common_q)
            if ew_parts != row.elementwise or common_parts != bool(row.common_fixed):
                raise LemmaViolated(
                    f"CRT cross-check failed for a subgroup class of SL2(Z/{n}) "
                    f"of order {row.subgroup.order}: mod-n verdict "
                    f"({row.elementwise}, {bool(row.common_fixed)}) vs parts "
                    f"({ew_parts}, {common_parts})")
    return report


def _project_subgroup(G: Subgroup, q: int, Aq: Ambient) -> Subgroup:
    """Image of a subgroup of SL2(Z/n) under reduction mod q | n."""
    A = G.ambient
    idx = set()
    for i in G.indices.tolist():
        a, b, c, d = A.elems[i]
        idx.add(Aq.index[(a % q, b % q, c % q, d % q)])
    gens = []
    for g in G.gen_idx:
        a, b, c, d = A.elems[g]
        gens.append(Aq.index[(a % q, b % q, c % q, d % q)])
    return Subgroup(Aq, tuple(dict.fromkeys(gens)), frozenset(idx))


@dataclass
class SearchOutcome:
    """Result of an exhaustive counterexample search over subgroup classes."""

    n: int
    mode: str
    verdict: str
    witness: ClassRow | None
    classes_scanned: int

    @property
    def found(self) -> bool:
        return self.verdict == COUNTEREXAMPLE_FOUND

    def to_json(self) -> dict:
        return {
            "ambient": f"sl2({self.n})",
            "classes": [self.witness.to_json()] if self.witness else [],
            "verdict": self.verdict,
        }


def search_counterexample_subgroups(
        n: int, mode: str = "nonzero-vector", budget: int = 3000) -> SearchOutcome:
    """Search SL2(Z/n) exhaustively for a subgroup whose elements each fix an
    admitted vector while no admitted vector is fixed by all of them.

    The search enumerates every conjugacy class of subgroups consisting
    entirely of elements that fix some admitted vector (any candidate
    counterexample lies in that family, and the family is closed under
    conjugation, so class-level enumeration is exhaustive).  Returns a
    certified `ExhaustedNone` outcome when no counterexample exists, or the
    first counterexample class in canonical order.  If the ambient group is
    larger than `budget` the search is inconclusive and raises
    BudgetExceeded — deliberately distinct from the certified exhaustion."""
    if not isinstance(n, int) or n < 2:
        raise ConfigError(f"modulus must be an integer ≥ 2, got {n!r}")
    order = _sl2_order(n)
    if order > budget:
        raise BudgetExceeded(
            f"|SL2(Z/{n})| = {order} exceeds the search budget {budget}; "
            f"the search would be inconclusive")
    A = get_ambient(f"sl2({n})")
    dom = A.mode_mask(mode)
    element_mask = (A.fix_table() & dom[None, :]).any(axis=1)
    classes = _census_classes(A, element_mask)
    report = _build_report(A, classes, mode, "restricted-census")
    for row in report.rows:
        if row.elementwise and not row.common_fixed:
            return SearchOutcome(n, mode, COUNTEREXAMPLE_FOUND, row,
                                 report.num_classes)
    return SearchOutcome(n, mode, EXHAUSTED_NONE, None, report.num_classes)


@dataclass
class Lemma62Report:
    """The scalar Klein-four subgroup of SL2(Z/abc) built from three pairwise
    coprime odd factors, with its fixed-vector verdicts."""

    a: int
    b: int
    c: int
    n: int
    A: Mat2
    B: Mat2
    AB: Mat2
    group: Subgroup
    elementwise: bool
    common_nonzero: tuple
    verdict: str

    def to_json(self) -> dict:
        return {
            "ambient": f"sl2({self.n})",
            "classes": [{
                "order": self.group.order,
                "generators": [str(self.A), str(self.B)],
                "elementwise": self.elementwise,
                "common_fixed": [list(v) for v in self.common_nonzero],
            }],
            "verdict": self.verdict,
        }


def construct_lemma_6_2(a: int, b: int, c: int) -> Lemma62Report:
    """Construct the order-4 scalar subgroup {I, A, B, AB} of SL2(Z/abc) for
    pairwise coprime odd integers a, b, c ≥ 3, where A ≡ −I mod ab, A ≡ I
    mod c, B ≡ I mod a, B ≡ −I mod bc (hence AB ≡ −I mod ac, AB ≡ I mod b).
    Verifies that every element fixes a nonzero vector of (Z/n)² while no
    nonzero vector is fixed by the whole group."""
    for v in (a, b, c):
        if not isinstance(v, int) or v < 3:
            raise BadFactorization(f"factors must be integers ≥ 3, got {v!r}")
        if v % 2 == 0:
            raise BadFactorization(f"factors must be odd, got {v}")
    for u, v in ((a, b), (a, c), (b, c)):
        if gcd(u, v) != 1:
            raise BadFactorization(f"factors must be pairwise coprime; gcd({u},{v}) > 1")
    n = a * b * c
    x = _crt2(-1 % (a * b), a * b, 1, c)
    y = _crt2(1, a, -1 % (b * c), b * c)
    A = Mat2.scalar(n, x)
    B = Mat2.scalar(n, y)
    AB = A * B
    ident = Mat2.identity(n)
    elems = (ident, A, B, AB)
    if len({m.key for m in elems}) != 4 or (A * A) != ident or (B * B) != ident:
        raise InternalContractViolation(
            f"scalar construction for ({a},{b},{c}) did not produce a Klein "
            f"four-group")
    for m in elems:
        if not m.is_sl2():
            raise InternalContractViolation(f"{m} has determinant ≠ 1 mod {n}")
    checks = [
        (A, a * b, n - 1), (A, c, 1),
        (B, a, 1), (B, b * c, n - 1),
        (AB, a * c, n - 1), (AB, b, 1),
    ]
    for m, modulus, target in checks:
        if (m.a - target) % modulus or (m.d - target) % modulus:
            raise InternalContractViolation(
                f"congruence failure: {m} should be {target % modulus}·I "
                f"mod {modulus}")
    group = Subgroup.from_elements(f"sl2({n})", (A, B), elems)
    elementwise, common = fixed_point_analysis(group, "nonzero-vector")
    if not elementwise:
        raise LemmaViolated(
            f"an element of the scalar group mod {n} fixes no nonzero vector")
    if common:
        raise LemmaViolated(
            f"the scalar group mod {n} unexpectedly has a common nonzero "
            f"fixed vector")
    return Lemma62Report(a, b, c, n, A, B, AB, group, elementwise,
                         tuple(sorted(common)), COUNTEREXAMPLE_FOUND)


@dataclass
class TriangularFamilyReport:
    """The triangular group {(a b; 0 1)} ⊂ GL2(F_p) with its fixed-vector
    verdicts, plus the determinant-1 restriction for contrast."""

    p: int
    group: Subgroup
    elementwise: bool
    common_nonzero: tuple
    det_one: Subgroup
    det_one_common: tuple
    verdict: str

    def to_json(self) -> dict:
        return {
            "ambient": f"gl2({self.p})",
            "classes": [
                {
                    "order": self.group.order,
                    "generators": [str(g) for g in self.group.generators],
                    "elementwise": self.elementwise,
                    "common_fixed": [list(v) for v in self.common_nonzero],
                },
                {
                    "order": self.det_one.order,
                    "generators": [str(g) for g in self.det_one.generators],
                    "elementwise": True,
                    "common_fixed": [list(v) for v in self.det_one_common],
                },
            ],
            "verdict": self.verdict,
        }


def triangular_family(p: int) -> TriangularFamilyReport:
    """The full triangular group {(a b; 0 1) : a ∈ F_p^×, b ∈ F_p} inside
    GL2(F_p), of order p(p−1).  Every element has eigenvalue 1 and therefore
    fixes a nonzero vector, yet for p ≥ 3 no nonzero vector is fixed by the
    whole group.  Restricting to determinant 1 collapses the family to the
    unipotent group {(1 b; 0 1)}, which fixes (1, 0)."""
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ConfigError(f"triangular family needs an odd prime, got {p!r}")
    A = get_ambient(f"gl2({p})")
    r = _primitive_root(p)
    gens = [Mat2(p, r, 0, 0, 1), Mat2(p, 1, 1, 0, 1)]
    group = close(gens, A)
    if group.order != p * (p - 1):
        raise InternalContractViolation(
            f"triangular family mod {p} closed to order {group.order}, "
            f"expected {p * (p - 1)}")
    elementwise, common = fixed_point_analysis(group, "nonzero-vector")
    if not elementwise:
        raise LemmaViolated(
            f"a triangular matrix mod {p} fixes no nonzero vector")
    if common:
        raise LemmaViolated(
            f"the triangular family mod {p} unexpectedly has a common "
            f"nonzero fixed vector")
    det_one = close([Mat2(p, 1, 1, 0, 1)], A)
    if det_one.order != p:
        raise InternalContractViolation(
            f"unipotent subgroup mod {p} has order {det_one.order}, expected {p}")
    ew1, common1 = fixed_point_analysis(det_one, "nonzero-vector")
    if not ew1 or (1, 0) not in common1:
        raise LemmaViolated(
            f"determinant-1 restriction mod {p} should fix (1, 0) globally")
    return TriangularFamilyReport(p, group, elementwise, tuple(sorted(common)),
                                  det_one, tuple(sorted(common1)),
                                  "elementwise-yes-common-no")


def _primitive_root(p: int) -> int:
    fac = _factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise InternalContractViolation(f"no primitive root mod {p}")


def s3_dichotomy(G: Subgroup) -> str:
    """Classify a subgroup of S3 acting on {1,2,3}: either some point is
    fixed by every element (HasGlobalFixedPoint) or the subgroup contains a
    3-cycle (ContainsThreeCycle) — exactly one of the two.  Raises
    LemmaViolated if the dichotomy fails."""
    if G.ambient is None or G.ambient.kind != "s3":
        raise ConfigError("s3_dichotomy expects a subgroup of the s3 ambient")
    has_three_cycle = any(
        int(G.ambient.elem_orders[i]) == 3 for i in G.indices.tolist())
    _, common = fixed_point_analysis(G, "any-vector")
    if has_three_cycle and common:
        raise LemmaViolated(
            "subgroup of S3 contains a 3-cycle yet fixes a point globally")
    if not has_three_cycle and not common:
        raise LemmaViolated(
            "subgroup of S3 has no 3-cycle yet fixes no point globally")
    return CONTAINS_THREE_CYCLE if has_three_cycle else HAS_GLOBAL_FIXED_POINT
