"""Dense exact linear algebra: canonical RREF, rank, nullspace, det, solve.

Everything reduces to one primitive, an incremental row-space accumulator
(`RowReducer`) that keeps a mutually reduced pivot basis — i.e. the unique
reduced row echelon form of whatever rows were fed in.  Three interchangeable
cores implement it: Fraction arithmetic over Q, packed-big-integer arithmetic
over F_p, and the optional C kernel from _native.py for large F_p problems.
All cores produce the same canonical output; determinism does not depend on
which one runs.

Canonical conventions (shared by every consumer in this package):
  * pivot search is leftmost-column-first;
  * nullspace bases come from the RREF, one vector per free column in
    ascending column order, each scaled so its first nonzero coordinate is 1;
  * particular solutions set all free variables to zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import PrimeField, ensure_same_field
from . import _native


class ShapeMismatch(ValueError):
    """Raised on incompatible matrix/vector shapes."""


# ---------------------------------------------------------------------------
# row-reduction cores
# ---------------------------------------------------------------------------

_SLOT = 192          # bits per packed slot; products stay < 2^124, plus slack
_SLOTB = _SLOT // 8
_MASK = (1 << _SLOT) - 1
_NATIVE_MIN_CELLS = 4096   # below this, ctypes overhead beats the C loop


class _FractionCore:
    """Pure-Python core over Q (or any tiny workload over F_p, via coercion)."""

    def __init__(self, field, ncols, plimit):
        self.field = field
        self.ncols = ncols
        self.plimit = plimit
        self.rows = []          # mutually reduced rows (lists of scalars)
        self.pivcols = []
        self.residual = []

    def clone(self):
        c = _FractionCore(self.field, self.ncols, self.plimit)
        c.rows = [list(r) for r in self.rows]
        c.pivcols = list(self.pivcols)
        c.residual = [list(r) for r in self.residual]
        return c

    def add_rows(self, rows, stop):
        F = self.field
        zero = F.zero
        for vec in rows:
            if stop is not None and len(self.pivcols) >= stop:
                return
            w = list(vec)
            for t, c in enumerate(self.pivcols):
                f = w[c]
                if not F.is_zero(f):
                    prow = self.rows[t]
                    for k in range(self.ncols):
                        pk = prow[k]
                        if not F.is_zero(pk):
                            w[k] = F.sub(w[k], F.mul(f, pk))
            lead = -1
            for k in range(self.plimit):
                if not F.is_zero(w[k]):
                    lead = k
                    break
            if lead < 0:
                for k in range(self.plimit, self.ncols):
                    if not F.is_zero(w[k]):
                        self.residual.append(w)
                        break
                continue
            inv = F.inv(w[lead])
            w = [F.mul(inv, x) if not F.is_zero(x) else zero for x in w]
            for t in range(len(self.rows)):
                f = self.rows[t][lead]
                if not F.is_zero(f):
                    prow = self.rows[t]
                    for k in range(self.ncols):
                        wk = w[k]
                        if not F.is_zero(wk):
                            prow[k] = F.sub(prow[k], F.mul(f, wk))
            self.rows.append(w)
            self.pivcols.append(lead)

    def snapshot(self):
        return list(self.pivcols), [list(r) for r in self.rows]


class _FpPackedCore:
    """Pure-Python core over F_p packing each row into one big integer.

    A row of n residues lives in one int with 192-bit slots; the elimination
    row operation w += (p - c) * pivot is then a single bignum multiply-add at
    C speed inside CPython.  Slots never overflow: pivot rows are kept fully
    reduced (< p < 2^62), so every addition contributes < 2^124 per slot.
    """

    def __init__(self, field, ncols, plimit):
        self.field = field
        self.p = field.p
        self.ncols = ncols
        self.plimit = plimit
        self.rows = []          # packed, mutually reduced, slots < p
        self.pivcols = []
        self.residual = []      # packed

    def clone(self):
        c = _FpPackedCore(self.field, self.ncols, self.plimit)
        c.rows = list(self.rows)
        c.pivcols = list(self.pivcols)
        c.residual = list(self.residual)
        return c

    def _pack(self, vals):
        return int.from_bytes(
            b"".join(v.to_bytes(_SLOTB, "little") for v in vals), "little"
        )

    def _unpack(self, x):
        bs = x.to_bytes(self.ncols * _SLOTB, "little")
        p = self.p
        return [
            int.from_bytes(bs[i * _SLOTB : (i + 1) * _SLOTB], "little") % p
            for i in range(self.ncols)
        ]

    def add_rows(self, rows, stop):
        p = self.p
        for vec in rows:
            if stop is not None and len(self.pivcols) >= stop:
                return
            w = self._pack([v % p for v in vec])
            for t, c in enumerate(self.pivcols):
                f = ((w >> (c * _SLOT)) & _MASK) % p
                if f:
                    w += (p - f) * self.rows[t]
            vals = self._unpack(w)
            lead = -1
            for k in range(self.plimit):
                if vals[k]:
                    lead = k
                    break
            if lead < 0:
                if any(vals[self.plimit :]):
                    self.residual.append(self._pack(vals))
                continue
            inv = pow(vals[lead], p - 2, p)
            packed = self._pack([v * inv % p for v in vals])
            for t in range(len(self.rows)):
                f = (self.rows[t] >> (lead * _SLOT)) & _MASK
                if f:
                    self.rows[t] = self._pack(
                        self._unpack(self.rows[t] + (p - f) * packed)
                    )
            self.rows.append(packed)
            self.pivcols.append(lead)

    def snapshot(self):
        return list(self.pivcols), [self._unpack(r) for r in self.rows]


class _FpNativeCore:
    """ctypes bridge to the compiled kernel (large F_p workloads)."""

    def __init__(self, field, ncols, plimit, kernel):
        import numpy as np

        self.np = np
        self.field = field
        self.p = field.p
        self.ncols = ncols
        self.plimit = plimit
        self.kernel = kernel
        self.cap = 32
        self.buf = np.zeros((self.cap, ncols), dtype=np.uint64)
        self.pivbuf = np.zeros(self.cap, dtype=np.int64)
        self.npiv = 0
        self.residual = []      # list of numpy rows

    def clone(self):
        c = _FpNativeCore.__new__(_FpNativeCore)
        c.np = self.np
        c.field = self.field
        c.p = self.p
        c.ncols = self.ncols
        c.plimit = self.plimit
        c.kernel = self.kernel
        c.cap = self.cap
        c.buf = self.buf.copy()
        c.pivbuf = self.pivbuf.copy()
        c.npiv = self.npiv
        c.residual = [r.copy() for r in self.residual]
        return c

    @property
    def pivcols(self):
        return self.pivbuf[: self.npiv].tolist()

    def add_rows(self, rows, stop):
        import ctypes

        np = self.np
        rows = list(rows)
        if not rows:
            return
        p = self.p
        batch = np.array(
            [[v % p for v in vec] for vec in rows], dtype=np.uint64
        )
        need = self.npiv + len(rows)
        if need > self.cap:
            cap = max(need, 2 * self.cap)
            newbuf = np.zeros((cap, self.ncols), dtype=np.uint64)
            newbuf[: self.npiv] = self.buf[: self.npiv]
            newpiv = np.zeros(cap, dtype=np.int64)
            newpiv[: self.npiv] = self.pivbuf[: self.npiv]
            self.buf, self.pivbuf, self.cap = newbuf, newpiv, cap
        resid = np.zeros((len(rows), self.ncols), dtype=np.uint64)
        nres = ctypes.c_long(0)
        u64p = ctypes.POINTER(ctypes.c_uint64)
        longp = ctypes.POINTER(ctypes.c_long)
        npiv = self.kernel.fp_accumulate(
            self.buf.ctypes.data_as(u64p),
            self.pivbuf.ctypes.data_as(longp),
            self.npiv,
            self.cap,
            batch.ctypes.data_as(u64p),
            len(rows),
            self.ncols,
            self.plimit,
            p,
            -1 if stop is None else stop,
            resid.ctypes.data_as(u64p),
            ctypes.byref(nres),
            len(rows),
        )
        if npiv < 0:
            raise RuntimeError("native accumulator capacity underflow")
        self.npiv = npiv
        for i in range(nres.value):
            self.residual.append(resid[i].copy())

    def snapshot(self):
        piv = self.pivcols
        rows = [[int(x) for x in self.buf[t]] for t in range(self.npiv)]
        return piv, rows


def _make_core(field, ncols, plimit, size_hint):
    if isinstance(field, PrimeField):
        if size_hint >= _NATIVE_MIN_CELLS:
            kernel = _native.get_kernel()
            if kernel is not None and field.p < (1 << 62):
                return _FpNativeCore(field, ncols, plimit, kernel)
        return _FpPackedCore(field, ncols, plimit)
    return _FractionCore(field, ncols, plimit)


class RowReducer:
    """Incremental canonical row-space basis over a field.

    Feed rows with add_row/add_rows; `rank` grows as independent rows arrive.
    `rref()` returns the unique RREF of everything fed so far.  When
    ``pivot_limit`` is set, pivots are only chosen among the first
    ``pivot_limit`` columns and rows that vanish there (but not beyond) are
    archived in ``residual_rows`` — that is what backs LinearSolver.
    """

    def __init__(self, field, ncols, *, pivot_limit=None, size_hint=0):
        if ncols < 0:
            raise ShapeMismatch("negative column count")
        self.field = field
        self.ncols = ncols
        self.pivot_limit = ncols if pivot_limit is None else pivot_limit
        self._core = _make_core(field, ncols, self.pivot_limit, size_hint)
        self._snap = None

    @property
    def rank(self):
        return len(self._core.pivcols)

    def add_rows(self, rows, stop_rank=None):
        self._snap = None
        self._core.add_rows(rows, stop_rank)
        return self.rank

    def seed(self, pivcols, rows):
        """Install an already mutually-reduced pivot block without elimination.

        Caller contract: the reducer is empty, each rows[t] has a 1 at
        pivcols[t] and zeros at every other pivcols[*] entry.  Used to absorb
        a block that is known to be in RREF (e.g. a kernel basis shifted by a
        monomial-multiplication index map) at zero cost.
        """
        if self.rank:
            raise ValueError("seed() requires an empty reducer")
        self._snap = None
        core = self._core
        if isinstance(core, _FpNativeCore):
            np = core.np
            need = len(rows)
            if need > core.cap:
                core.cap = max(need * 2, core.cap)
                core.buf = np.zeros((core.cap, core.ncols), dtype=np.uint64)
                core.pivbuf = np.zeros(core.cap, dtype=np.int64)
            for t, (pc, row) in enumerate(zip(pivcols, rows)):
                core.buf[t] = row
                core.pivbuf[t] = pc
            core.npiv = len(rows)
        elif isinstance(core, _FpPackedCore):
            p = core.p
            core.rows = [core._pack([v % p for v in row]) for row in rows]
            core.pivcols = list(pivcols)
        else:
            F = core.field
            core.rows = [[F.coerce(x) for x in row] for row in rows]
            core.pivcols = list(pivcols)

    def add_row(self, vec):
        before = self.rank
        self.add_rows([vec])
        return self.rank > before

    def clone(self):
        c = RowReducer.__new__(RowReducer)
        c.field = self.field
        c.ncols = self.ncols
        c.pivot_limit = self.pivot_limit
        c._core = self._core.clone()
        c._snap = None
        return c

    def contains(self, vec) -> bool:
        """True iff vec lies in the row space accumulated so far."""
        return not self.clone().add_row(vec)

    def rref(self):
        """Return (pivot_columns, rows): the canonical RREF, sorted by pivot."""
        if self._snap is None:
            piv, rows = self._core.snapshot()
            order = sorted(range(len(piv)), key=lambda t: piv[t])
            self._snap = (
                [piv[t] for t in order],
                [rows[t] for t in order],
            )
        return self._snap

    @property
    def residual_rows(self):
        core = self._core
        if isinstance(core, _FpPackedCore):
            return [core._unpack(r) for r in core.residual]
        if isinstance(core, _FpNativeCore):
            return [[int(x) for x in r] for r in core.residual]
        return [list(r) for r in core.residual]


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class ExactMatrix:
    """Immutable dense matrix over Q or F_p (row-major list of lists)."""

    def __init__(self, field, rows):
        self.field = field
        self.rows = [[field.coerce(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ShapeMismatch("ragged rows")
        self._rref = None

    @classmethod
    def identity(cls, field, n):
        return cls(
            field,
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
        )

    def __repr__(self):
        return f"ExactMatrix({self.field.name}, {self.nrows}x{self.ncols})"

    def _reduced(self):
        if self._rref is None:
            red = RowReducer(
                self.field, self.ncols, size_hint=self.nrows * self.ncols
            )
            red.add_rows(self.rows)
            self._rref = red.rref()
        return self._rref

    def rref(self):
        """(pivot_columns, rref_rows) — the unique reduced echelon form."""
        return self._reduced()

    def rank(self) -> int:
        return len(self._reduced()[0])

    def nullspace(self):
        """Canonical kernel basis; see module docstring for the conventions."""
        F = self.field
        piv, rows = self._reduced()
        pivset = set(piv)
        basis = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = [F.zero] * self.ncols
            v[f] = F.one
            for t, pc in enumerate(piv):
                v[pc] = F.neg(rows[t][f])
            for x in v:
                if not F.is_zero(x):
                    inv = F.inv(x)
                    v = [F.mul(inv, y) for y in v]
                    break
            basis.append(v)
        return basis

    def det(self):
        if self.nrows != self.ncols:
            raise ShapeMismatch("determinant of a non-square matrix")
        if self.nrows == 0:
            return self.field.one
        if isinstance(self.field, PrimeField):
            return _det_fp(self.rows, self.field.p)
        return _det_q(self.rows)

    def solver(self):
        return LinearSolver(self)

    def solve(self, b):
        """One particular solution of self.x = b (free vars zero), or None."""
        return self.solver().solve(b)

    def mul_vec(self, v):
        F = self.field
        if len(v) != self.ncols:
            raise ShapeMismatch("matrix/vector shape mismatch")
        out = []
        for row in self.rows:
            acc = F.zero
            for a, x in zip(row, v):
                if not (F.is_zero(a) or F.is_zero(x)):
                    acc = F.add(acc, F.mul(a, x))
            out.append(acc)
        return out


class LinearSolver:
    """Reusable solver: factor the matrix once, solve many right-hand sides."""

    def __init__(self, m: ExactMatrix):
        self.field = m.field
        self.ncols = m.ncols
        self.nrows = m.nrows
        F = m.field
        red = RowReducer(
            F,
            m.ncols + m.nrows,
            pivot_limit=m.ncols,
            size_hint=m.nrows * (m.ncols + m.nrows),
        )
        aug = []
        for i, row in enumerate(m.rows):
            ext = list(row) + [F.zero] * m.nrows
            ext[m.ncols + i] = F.one
            aug.append(ext)
        red.add_rows(aug)
        piv, rows = red.rref()
        self.pivots = list(zip(piv, [r[m.ncols :] for r in rows]))
        self.constraints = [r[m.ncols :] for r in red.residual_rows]
        self.rank = len(piv)

    def _dot(self, coeffs, b):
        F = self.field
        acc = F.zero
        for a, x in zip(coeffs, b):
            if not (F.is_zero(a) or F.is_zero(x)):
                acc = F.add(acc, F.mul(a, x))
        return acc

    def solve(self, b):
        F = self.field
        b = [F.coerce(x) for x in b]
        if len(b) != self.nrows:
            raise ShapeMismatch("rhs length mismatch")
        for e in self.constraints:
            if not F.is_zero(self._dot(e, b)):
                return None
        x = [F.zero] * self.ncols
        for pc, e in self.pivots:
            x[pc] = self._dot(e, b)
        return x


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def _det_fp(rows, p):
    m = [[x % p for x in row] for row in rows]
    n = len(m)
    det = 1
    for c in range(n):
        pr = next((r for r in range(c, n) if m[r][c]), None)
        if pr is None:
            return 0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det % p
        det = det * m[c][c] % p
        inv = pow(m[c][c], p - 2, p)
        for r in range(c + 1, n):
            f = m[r][c] * inv % p
            if f:
                mr, mc = m[r], m[c]
                for k in range(c, n):
                    mr[k] = (mr[k] - f * mc[k]) % p
    return det


def bareiss_det_int(m):
    """Fraction-free determinant of an integer matrix (mutates its copy)."""
    m = [list(row) for row in m]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pr = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pr is None:
                return 0
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_q(rows):
    from fractions import Fraction
    from math import lcm

    scale = Fraction(1)
    int_rows = []
    for row in rows:
        denom = lcm(*(x.denominator for x in row)) if row else 1
        scale *= denom
        int_rows.append([int(x * denom) for x in row])
    return Fraction(bareiss_det_int(int_rows)) / scale


# ---------------------------------------------------------------------------
# spec surface
# ---------------------------------------------------------------------------

@dataclass
class LinearAlgebraKit:
    """Rank / nullspace / det / solve bundle for one matrix."""

    matrix: ExactMatrix
    rank: int = dc_field(init=False)
    nullspace: list = dc_field(init=False)

    def __post_init__(self):
        self.rank = self.matrix.rank()
        self.nullspace = self.matrix.nullspace()
        self._solver = None

    @property
    def det(self):
        return self.matrix.det()

    def solve(self, b):
        if self._solver is None:
            self._solver = self.matrix.solver()
        return self._solver.solve(b)


def linear_algebra_kit(m: ExactMatrix) -> LinearAlgebraKit:
    return LinearAlgebraKit(m)


def stack_matrices(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    ensure_same_field(a.field, b.field)
    if a.ncols != b.ncols:
        raise ShapeMismatch("column mismatch in stack")
    return ExactMatrix(a.field, a.rows + b.rows)
