"""Vectorized point sweeps over small finite fields.

Elements are handled as their canonical indices (base-p digit packing), with
dense addition and multiplication tables built once per field: addition is
digitwise mod p on the index digits, multiplication goes through discrete
logs with respect to a fixed generator.  Form evaluation is then a chain of
table gathers, and a full P^2 sweep for a curve touches every chart in the
same order as the scalar code path.
"""

from __future__ import annotations

import numpy as np

from .fields import Field

_SCAN_CAP = 512  # largest field order that gets dense tables

_TABLES: dict = {}


def supported(field: Field) -> bool:
    return (field.order is not None and field.order <= _SCAN_CAP
            and field.kind in ("prime", "extension"))


class _Tables:
    __slots__ = ("field", "add", "mul", "elems", "one_idx")

    def __init__(self, field: Field):
        q, p = field.order, field.p
        k = field.k
        idx = np.arange(q, dtype=np.int32)
        digits = np.empty((q, k), dtype=np.int32)
        rest = idx.copy()
        for j in range(k):
            digits[:, j] = rest % p
            rest //= p
        weights = p ** np.arange(k, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        self.add = (summed @ weights).astype(np.int32)

        g = _generator(field)
        exp = np.empty(q - 1, dtype=np.int32)
        acc = field.one
        for i in range(q - 1):
            exp[i] = acc.index()
            acc = acc * g
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.mul = np.zeros((q, q), dtype=np.int32)
        nz = exp[(log[1:, None] + log[None, 1:]) % (q - 1)]
        self.mul[1:, 1:] = nz

        self.field = field
        self.elems = list(field.elements())
        self.one_idx = field.one.index()


def _generator(field: Field):
    """Any element of full multiplicative order, by index sweep."""
    q = field.order
    n = q - 1
    primes = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    for i in range(1, q):
        g = field.from_index(i)
        if all(g ** (n // r) != field.one for r in primes):
            return g
    raise AssertionError("a finite field always has a generator")


def _tables(field: Field) -> _Tables:
    tbl = _TABLES.get(field)
    if tbl is None:
        tbl = _TABLES.setdefault(field, _Tables(field))
    return tbl


def _eval_form(tbl: _Tables, form, Xi, Yi, Zi):
    """Index array of form values at index-coordinate arrays."""
    MUL, ADD = tbl.mul, tbl.add
    deg = form.degree

    def powers(A):
        ps = [np.full_like(A, tbl.one_idx), A]
        for _ in range(deg - 1):
            ps.append(MUL[ps[-1], A])
        return ps

    xp, yp, zp = powers(Xi), powers(Yi), powers(Zi)
    acc = np.zeros_like(Xi)
    for (i, j, k), c in form.coeffs.items():
        t = MUL[xp[i], yp[j]]
        t = MUL[t, zp[k]]
        acc = ADD[acc, MUL[c.index(), t]]
    return acc


def curve_points(C):
    """All rational points of the cubic, chart order [1:y:z] (y-major),
    then [0:1:z], then [0:0:1] -- identical to the scalar sweep."""
    from .cubic import ProjPoint

    field = C.field
    tbl = _tables(field)
    q = field.order
    elems = tbl.elems
    one, zero = field.one, field.zero
    pts = []

    idx = np.arange(q, dtype=np.int32)
    Y = np.repeat(idx, q)
    Z = np.tile(idx, q)
    X = np.full(q * q, tbl.one_idx, dtype=np.int32)
    vals = _eval_form(tbl, C.form, X, Y, Z)
    for h in np.flatnonzero(vals == 0):
        y, z = divmod(int(h), q)
        pts.append(ProjPoint(field, (one, elems[y], elems[z])))

    X0 = np.zeros(q, dtype=np.int32)
    Y0 = np.full(q, tbl.one_idx, dtype=np.int32)
    vals = _eval_form(tbl, C.form, X0, Y0, idx)
    for h in np.flatnonzero(vals == 0):
        pts.append(ProjPoint(field, (zero, one, elems[int(h)])))

    if not C.form(0, 0, 1):
        pts.append(ProjPoint(field, (zero, zero, one)))
    return pts
