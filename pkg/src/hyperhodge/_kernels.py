"""Modular Gauss-Jordan kernels.

The hot loop of every graded-piece computation is row reduction of an
integer matrix modulo a word-sized prime.  Two interchangeable backends
implement it:

* a numba ``@njit`` kernel (default when numba imports), and
* a pure-numpy fallback that vectorises over columns.

Set ``HYPERHODGE_NO_NUMBA=1`` to force the numpy path.  Both backends take
the matrix in CSR form (``indptr``, ``indices``, ``data`` already reduced
mod ``p``) and stream the rows in order, keeping a fully reduced basis.
The returned basis is sorted by pivot column, so it is the RREF of the
matrix over GF(p) with the zero rows dropped.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("HYPERHODGE_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLE:
        raise ImportError("numba disabled by HYPERHODGE_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

# p < 2**31 keeps a*b < 2**62 inside int64.
PRIME_CEILING = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


_PRIMES: list[int] = []


def prime(i: int) -> int:
    """The i-th prime below 2**31, counting downwards from 2**31 - 1."""
    while len(_PRIMES) <= i:
        c = (_PRIMES[-1] if _PRIMES else PRIME_CEILING) - 1
        while not _is_prime(c):
            c -= 1
        _PRIMES.append(c)
    return _PRIMES[i]


# ---------------------------------------------------------------------------
# numpy fallback


def rref_stream_numpy(indptr, indices, data, ncols, p):
    nrows = len(indptr) - 1
    maxr = min(nrows, ncols)
    basis = np.zeros((maxr, ncols), dtype=np.int64)
    pivcol = np.empty(maxr, dtype=np.int64)
    where = np.full(ncols, -1, dtype=np.int64)
    r = 0
    for i in range(nrows):
        if r == ncols:
            break
        s, e = indptr[i], indptr[i + 1]
        if s == e:
            continue
        work = np.zeros(ncols, dtype=np.int64)
        np.add.at(work, indices[s:e], data[s:e])
        work %= p
        hit = np.nonzero((where >= 0) & (work != 0))[0]
        for c in hit:
            # basis rows vanish on the other pivot columns, so work[c] is stable
            work = (work - work[c] * basis[where[c]]) % p
        nz = np.flatnonzero(work)
        if nz.size == 0:
            continue
        q = nz[0]
        work = work * pow(int(work[q]), p - 2, p) % p
        if r:
            col = basis[:r, q]
            rows = np.flatnonzero(col)
            if rows.size:
                basis[rows] = (basis[rows] - np.outer(col[rows], work)) % p
        basis[r] = work
        pivcol[r] = q
        where[q] = r
        r += 1
    order = np.argsort(pivcol[:r], kind="stable")
    return basis[:r][order], pivcol[:r][order]


# ---------------------------------------------------------------------------
# numba kernel

if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod(a, p):
        result = 1
        base = a % p
        e = p - 2
        while e > 0:
            if e & 1:
                result = result * base % p
            base = base * base % p
            e >>= 1
        return result

    @njit(cache=True)
    def _rref_stream_nb(indptr, indices, data, ncols, p):
        nrows = indptr.shape[0] - 1
        maxr = min(nrows, ncols)
        basis = np.zeros((maxr, ncols), dtype=np.int64)
        pivcol = np.empty(maxr, dtype=np.int64)
        where = np.full(ncols, -1, dtype=np.int64)
        work = np.zeros(ncols, dtype=np.int64)
        r = 0
        for i in range(nrows):
            if r == ncols:
                break
            s = indptr[i]
            e = indptr[i + 1]
            if s == e:
                continue
            for t in range(s, e):
                j = indices[t]
                work[j] = (work[j] + data[t]) % p
            for c in range(ncols):
                k = where[c]
                if k >= 0 and work[c] != 0:
                    coef = work[c]
                    for j in range(ncols):
                        b = basis[k, j]
                        if b != 0:
                            work[j] = (work[j] - coef * b) % p
            q = -1
            for c in range(ncols):
                if work[c] != 0:
                    q = c
                    break
            if q < 0:
                continue
            inv = _inv_mod(work[q], p)
            for j in range(q, ncols):
                if work[j] != 0:
                    work[j] = work[j] * inv % p
            for k in range(r):
                coef = basis[k, q]
                if coef != 0:
                    for j in range(q, ncols):
                        w = work[j]
                        if w != 0:
                            basis[k, j] = (basis[k, j] - coef * w) % p
            for j in range(ncols):
                basis[r, j] = work[j]
                work[j] = 0
            pivcol[r] = q
            where[q] = r
            r += 1
        order = np.argsort(pivcol[:r], kind="mergesort")
        return basis[:r][order], pivcol[:r][order]

    def rref_stream_numba(indptr, indices, data, ncols, p):
        return _rref_stream_nb(
            np.asarray(indptr, dtype=np.int64),
            np.asarray(indices, dtype=np.int64),
            np.asarray(data, dtype=np.int64),
            int(ncols),
            int(p),
        )

else:  # pragma: no cover
    rref_stream_numba = None


def rref_mod_p(indptr, indices, data, ncols, p):
    """Row-reduce a CSR integer matrix (entries already in [0, p)) over GF(p).

    Returns ``(basis, pivots)``: the nonzero RREF rows as an int64 array and
    their pivot columns, both ordered by pivot column.
    """
    if HAVE_NUMBA:
        return rref_stream_numba(indptr, indices, data, ncols, p)
    return rref_stream_numpy(indptr, indices, data, ncols, p)
