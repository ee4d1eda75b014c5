"""Exact linear algebra over the rationals.

Two exact routes produce a reduced row echelon form:

``"fraction"``
    textbook Gauss-Jordan on :class:`fractions.Fraction` entries.

``"modular"``
    rows that are (or become) single-entry are peeled off exactly, the
    remaining block is reduced modulo word-sized primes by the kernels in
    :mod:`hyperhodge._kernels`, and the non-pivot part of the RREF is
    recovered by CRT + rational reconstruction.  The candidate is accepted
    only after an exact check that every input row lies in its row span;
    together with the mod-p rank (a lower bound for the rational rank) this
    pins down the RREF uniquely.

Results are always exact.  ``"auto"`` uses the fraction route for tiny
matrices and the modular route otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import DimensionMismatch

SparseRow = Mapping[int, Fraction]

_ZERO = Fraction(0)
_SMALL = 400  # rows*cols at or below which "auto" takes the fraction route
_MAX_PRIMES = 4000
_PROBES = 24


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating-point entries are not accepted; pass int, Fraction or 'p/q'")
    return Fraction(x)


@dataclass(frozen=True)
class QMatrix:
    """Dense immutable matrix of rationals, row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimensions")
        ent = tuple(_q(x) for x in self.entries)
        if len(ent) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(ent)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "QMatrix":
        for c in columns:
            if len(c) != nrows:
                raise DimensionMismatch("column length differs from row count")
        return cls(nrows, len(columns), tuple(columns[j][i] for i in range(nrows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, (_ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[list[Fraction]]:
        return [list(self.column(j)) for j in range(self.cols)]

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def hstack(self, other: "QMatrix") -> "QMatrix":
        if other.rows != self.rows:
            raise DimensionMismatch("hstack needs equal row counts")
        return QMatrix.from_rows([list(self.row(i)) + list(other.row(i)) for i in range(self.rows)], self.cols + other.cols)

    def select_columns(self, idx: Sequence[int]) -> "QMatrix":
        return QMatrix.from_rows([[self[i, j] for j in idx] for i in range(self.rows)], len(idx))

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            ocols = other.columns()
            out = []
            for i in range(self.rows):
                r = self.row(i)
                out.append([sum((a * b for a, b in zip(r, c) if a and b), _ZERO) for c in ocols])
            return QMatrix.from_rows(out, other.cols)
        v = [_q(x) for x in other]
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        return [sum((a * b for a, b in zip(self.row(i), v) if a and b), _ZERO) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        return [{j: x for j, x in enumerate(self.row(i)) if x} for i in range(self.rows)]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form, stored by its non-pivot part.

    ``reduced_rows[k]`` holds the nonzero entries of the k-th RREF row at
    free (non-pivot) columns; the entry at ``pivot_columns[k]`` is 1 and the
    entries at the other pivot columns are 0.
    """

    nrows: int
    ncols: int
    pivot_columns: tuple
    reduced_rows: tuple

    @property
    def rank(self) -> int:
        return len(self.pivot_columns)

    @cached_property
    def free_columns(self) -> tuple:
        piv = set(self.pivot_columns)
        return tuple(j for j in range(self.ncols) if j not in piv)

    @cached_property
    def _pivot_index(self) -> dict:
        return {c: k for k, c in enumerate(self.pivot_columns)}

    @cached_property
    def rref(self) -> QMatrix:
        out = [[_ZERO] * self.ncols for _ in range(self.nrows)]
        for k, (c, row) in enumerate(zip(self.pivot_columns, self.reduced_rows)):
            out[k][c] = Fraction(1)
            for j, x in row.items():
                out[k][j] = x
        return QMatrix.from_rows(out, self.ncols)

    def reduce(self, vector: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Remainder of ``vector`` modulo the row space.

        The result is the unique vector supported on free columns that
        differs from the input by an element of the row space.
        """
        piv = self._pivot_index
        out: dict[int, Fraction] = {}
        for j, x in vector.items():
            if not x:
                continue
            k = piv.get(j)
            if k is None:
                out[j] = out.get(j, _ZERO) + x
            else:
                for jj, y in self.reduced_rows[k].items():
                    out[jj] = out.get(jj, _ZERO) - x * y
        return {j: x for j, x in out.items() if x}

    def contains(self, vector: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vector)

    def kernel_basis(self) -> list[list[Fraction]]:
        cols: dict[int, list] = {j: [] for j in self.free_columns}
        for c, row in zip(self.pivot_columns, self.reduced_rows):
            for j, x in row.items():
                cols[j].append((c, x))
        out = []
        for j in self.free_columns:
            v = [_ZERO] * self.ncols
            v[j] = Fraction(1)
            for c, x in cols[j]:
                v[c] = -x
            out.append(v)
        return out


# ---------------------------------------------------------------------------
# fraction route


def _fraction_rref(rows: Sequence[SparseRow], ncols: int) -> RrefResult:
    m = []
    for r in rows:
        dense = [_ZERO] * ncols
        for j, x in r.items():
            dense[j] = _q(x)
        m.append(dense)
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == len(m):
            break
        sel = next((i for i in range(pr, len(m)) if m[i][c]), None)
        if sel is None:
            continue
        m[pr], m[sel] = m[sel], m[pr]
        inv = 1 / m[pr][c]
        m[pr] = [x * inv for x in m[pr]]
        for i in range(len(m)):
            if i != pr and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[pr])]
        pivots.append(c)
        pr += 1
    pset = set(pivots)
    reduced = tuple({j: x for j, x in enumerate(m[k]) if x and j not in pset} for k in range(len(pivots)))
    return RrefResult(len(rows), ncols, tuple(pivots), reduced)


# ---------------------------------------------------------------------------
# modular route


def _integer_row(row: SparseRow) -> dict[int, int]:
    row = {j: _q(x) for j, x in row.items() if x}
    den = 1
    for x in row.values():
        den = den * x.denominator // math.gcd(den, x.denominator)
    return {j: int(x * den) for j, x in row.items()}


def _peel(rows: list[dict[int, int]]) -> tuple[set, list[dict[int, int]]]:
    """Exactly eliminate columns hit by single-entry rows.

    A single-entry row is a multiple of a unit vector in the row space, so
    its column is a pivot with an all-zero reduced row, and the column may
    be cleared from every other row.  Repeat until no single-entry row is
    left.  Returns the peeled pivot columns and the untouched remainder.
    """
    rows = [dict(r) for r in rows]
    colidx: dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            colidx.setdefault(c, set()).add(i)
    alive = [bool(r) for r in rows]
    stack = [i for i, r in enumerate(rows) if len(r) == 1]
    peeled = set()
    while stack:
        i = stack.pop()
        if not alive[i] or len(rows[i]) != 1:
            continue
        (c,) = rows[i]
        peeled.add(c)
        alive[i] = False
        for j in colidx.pop(c):
            if j == i or not alive[j]:
                continue
            del rows[j][c]
            if len(rows[j]) == 1:
                stack.append(j)
            elif not rows[j]:
                alive[j] = False
    return peeled, [rows[i] for i in range(len(rows)) if alive[i]]


def rational_reconstruction(a: int, m: int) -> Fraction | None:
    """The fraction r/s with |r|, s <= sqrt(m/2) and r = a*s mod m, if any."""
    a %= m
    bound = math.isqrt(m // 2)
    if a <= bound:
        return Fraction(a)
    if m - a <= bound:
        return Fraction(a - m)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _reconstruct(acc: np.ndarray, modulus: int):
    out = np.empty(acc.shape, dtype=object)
    flat_in = acc.reshape(-1)
    flat_out = out.reshape(-1)
    for t, a in enumerate(flat_in):
        x = rational_reconstruction(int(a), modulus)
        if x is None:
            return None
        flat_out[t] = x
    return out


def _verify(residual, free_pos, piv_pos, nfrac) -> bool:
    """Exact check that each residual row equals sum_k row[P_k] * RREF_k."""
    f = len(free_pos)
    if nfrac.size:
        den = 1
        for x in nfrac.reshape(-1):
            den = den * x.denominator // math.gcd(den, x.denominator)
        nint = np.empty(nfrac.shape, dtype=object)
        nint.reshape(-1)[:] = [int(x * den) for x in nfrac.reshape(-1)]
    else:
        den = 1
        nint = nfrac
    for row in residual:
        if f == 0:
            break
        acc = np.zeros(f, dtype=object)
        for c, v in row.items():
            j = free_pos.get(c)
            if j is not None:
                acc[j] += den * v
            else:
                acc -= v * nint[piv_pos[c]]
        if any(acc):
            return False
    return True


def _modular_rref(rows: Sequence[SparseRow], ncols: int) -> RrefResult:
    introws = [_integer_row(r) for r in rows]
    peeled, residual = _peel(introws)
    if not residual:
        pivots = tuple(sorted(peeled))
        return RrefResult(len(rows), ncols, pivots, tuple({} for _ in pivots))

    active = sorted({c for r in residual for c in r})
    pos = {c: i for i, c in enumerate(active)}
    indptr = np.zeros(len(residual) + 1, dtype=np.int64)
    indices, values = [], []
    for i, r in enumerate(residual):
        for c in sorted(r):
            indices.append(pos[c])
            values.append(r[c])
        indptr[i + 1] = len(indices)
    indices = np.asarray(indices, dtype=np.int64)
    big = max(abs(v) for v in values) >= 2**62
    vals = np.asarray(values, dtype=object if big else np.int64)

    best = None  # (rank, pivots)
    acc = None
    last_probe = None
    next_try = 0
    modulus = 1
    for t in range(_MAX_PRIMES):
        p = _kernels.prime(t)
        data = (vals % p).astype(np.int64)
        basis, piv = _kernels.rref_mod_p(indptr, indices, data, len(active), p)
        key = (len(piv), tuple(int(c) for c in piv))
        if best is not None and key != best:
            # rational pivots come no later than pivots mod p of equal rank
            better = key[0] > best[0] or (
                key[0] == best[0] and all(a <= b for a, b in zip(key[1], best[1]))
            )
            if not better:
                continue  # unlucky prime
            best, acc, modulus, last_probe = None, None, 1, None
        if best is None:
            best = key
        if not best[0]:
            continue
        pset = set(best[1])
        free_local = [j for j in range(len(active)) if j not in pset]
        block = basis[:, free_local].astype(object)
        if acc is None:
            acc = block
        else:
            inv = pow(modulus % p, -1, p)
            acc = acc + modulus * (((block - acc) % p) * inv % p)
        modulus *= p
        # full reconstruction is costly: wait until a spread of probe entries
        # reconstructs to the same fractions on two consecutive primes
        flat = acc.reshape(-1)
        picks = flat[:: max(1, flat.size // _PROBES)]
        probe = [rational_reconstruction(int(a), modulus) for a in picks]
        stable = None not in probe and probe == last_probe
        last_probe = probe
        if not stable or t < next_try:
            continue
        nfrac = _reconstruct(acc, modulus)
        if nfrac is None:
            next_try = 2 * t + 1  # probes misled us; back off geometrically
            continue
        free_pos = {active[j]: i for i, j in enumerate(free_local)}
        piv_pos = {active[c]: k for k, c in enumerate(best[1])}
        if not _verify(residual, free_pos, piv_pos, nfrac):
            next_try = 2 * t + 1
            continue
        res_rows = {}
        free_cols = [active[j] for j in free_local]
        for k, c in enumerate(best[1]):
            res_rows[active[c]] = {free_cols[i]: x for i, x in enumerate(nfrac[k]) if x}
        pivots = tuple(sorted(peeled | set(res_rows)))
        reduced = tuple(res_rows.get(c, {}) for c in pivots)
        return RrefResult(len(rows), ncols, pivots, reduced)
    raise RuntimeError("modular RREF did not certify within the prime budget")


# ---------------------------------------------------------------------------
# public API


def rref_rows(rows: Sequence[SparseRow], ncols: int, method: str = "auto") -> RrefResult:
    """RREF of a matrix given as sparse rows (dicts column -> rational)."""
    for r in rows:
        for j in r:
            if not 0 <= j < ncols:
                raise DimensionMismatch(f"column index {j} outside 0..{ncols - 1}")
    if method == "auto":
        method = "fraction" if len(rows) * ncols <= _SMALL else "modular"
    if method == "fraction":
        return _fraction_rref(rows, ncols)
    if method == "modular":
        return _modular_rref(rows, ncols)
    raise ValueError(f"unknown method {method!r}")


def rref(m: QMatrix, method: str = "auto") -> RrefResult:
    return rref_rows(m.sparse_rows(), m.cols, method)


def rank(m: QMatrix, method: str = "auto") -> int:
    return rref(m, method).rank


def kernel_basis(m: QMatrix, method: str = "auto") -> list[list[Fraction]]:
    return rref(m, method).kernel_basis()


class LinearSystem:
    """``M x = b`` for a fixed sparse rational ``M`` and many right-hand sides.

    ``solve`` returns the RREF particular solution: the unique solution
    supported on the pivot columns of ``M`` (free variables set to zero).
    """

    def __init__(self, rows: Sequence[SparseRow], ncols: int, method: str = "auto"):
        self.rows = [{j: _q(x) for j, x in r.items() if x} for r in rows]
        self.ncols = ncols
        self.method = method

    @cached_property
    def rref(self) -> RrefResult:
        return rref_rows(self.rows, self.ncols, self.method)

    def kernel_basis(self) -> list[list[Fraction]]:
        return self.rref.kernel_basis()

    def solve(self, rhs: Sequence) -> list[Fraction] | None:
        b = [_q(x) for x in rhs]
        if len(b) != len(self.rows):
            raise DimensionMismatch(f"rhs has length {len(b)}, system has {len(self.rows)} rows")
        x = [_ZERO] * self.ncols
        if not any(b):
            return x
        pivots = self.rref.pivot_columns
        r = len(pivots)
        ppos = {c: k for k, c in enumerate(pivots)}
        aug = []
        for row, bi in zip(self.rows, b):
            a = {ppos[j]: v for j, v in row.items() if j in ppos}
            if bi:
                a[r] = bi
            aug.append(a)
        red = rref_rows(aug, r + 1, self.method)
        if red.rank and red.pivot_columns[-1] == r:
            return None
        if red.rank != r:
            raise RuntimeError("pivot columns of the system are not independent")
        for k, c in enumerate(pivots):
            x[c] = red.reduced_rows[k].get(r, _ZERO)
        for row, bi in zip(self.rows, b):
            if sum((v * x[j] for j, v in row.items()), _ZERO) != bi:
                raise RuntimeError("solution failed exact re-substitution")
        return x


def solve(m: QMatrix, rhs: Sequence, method: str = "auto") -> list[Fraction] | None:
    """One solution of ``m x = rhs`` with free variables zero, or ``None``."""
    if len(rhs) != m.rows:
        raise DimensionMismatch(f"rhs has length {len(rhs)}, matrix has {m.rows} rows")
    return LinearSystem(m.sparse_rows(), m.cols, method).solve(rhs)


def span_basis(vectors: Iterable[Sequence], dim: int) -> list[list[Fraction]]:
    """A basis (the nonzero RREF rows) of the span of ``vectors`` in Q^dim."""
    rows = [{j: _q(x) for j, x in enumerate(v) if x} for v in vectors]
    red = rref_rows(rows, dim)
    return [r[:] for r in red.rref.to_rows()[:red.rank]]
