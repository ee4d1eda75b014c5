"""Spectral sequences of finite filtered cochain complexes over Q.

A filtration is decreasing, F^0 K = K and F^L K = 0, and every level is a
subcomplex.  Pages use the classical description

    Z_r^p = F^p ∩ d^(-1)(F^(p+r)),      Z_(-1)^p = F^p,
    E_r^p = Z_r^p / (Z_(r-1)^(p+1) + d Z_(r-1)^(p-r+1)),

with d_r induced by d.  Bidegrees follow the usual (p, q) convention with
total degree m = p + q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .errors import DimensionMismatch, InputError, InvalidComplex, TooManyFiltrationLevels
from .linalg import QMatrix, kernel_basis, rref_rows, span_basis

Vec = list  # list[Fraction]


# ---------------------------------------------------------------------------
# subspace helpers; a subspace is an RREF basis (list of row vectors)


def _basis(vectors: Sequence[Vec], dim: int) -> list[Vec]:
    vs = [v for v in vectors if any(v)]
    if not vs or dim == 0:
        return []
    return span_basis(vs, dim)


def _contains(space: list[Vec], v: Vec, dim: int) -> bool:
    if not any(v):
        return True
    return len(_basis(space + [v], dim)) == len(space)


def _apply(mat: QMatrix, v: Vec) -> Vec:
    return list(mat @ v)




def _preimage(mat: QMatrix, source: list[Vec], target: list[Vec], dim: int) -> list[Vec]:
    """{x in span(source) : mat x in span(target)}."""
    if not source:
        return []
    images = [_apply(mat, v) for v in source]
    cols = images + [[-x for x in v] for v in target]
    m = QMatrix.from_columns(cols, mat.rows)
    if m.rows == 0:
        return list(source)
    out = []
    for k in kernel_basis(m, "fraction"):
        out.append([sum((k[i] * source[i][t] for i in range(len(source))), Fraction(0)) for t in range(dim)])
    return _basis(out, dim)


def _extend(sub: list[Vec], big: list[Vec], dim: int) -> list[Vec]:
    """Vectors of ``big`` completing a basis of ``sub`` to one of span(sub + big)."""
    reps: list[Vec] = []
    cur = list(sub)
    for v in big:
        nb = _basis(cur + [v], dim)
        if len(nb) > len(cur):
            reps.append(v)
            cur = nb
    return reps


def _coords(basis: list[Vec], v: Vec, dim: int) -> list[Fraction] | None:
    """Coefficients c with sum c_i basis_i = v, or None."""
    if not basis:
        return [] if not any(v) else None
    m = QMatrix.from_columns(basis, dim)
    rows = m.sparse_rows()
    k = len(basis)
    aug = [dict(r) for r in rows]
    for i, x in enumerate(v):
        if x:
            aug[i][k] = Fraction(x)
    red = rref_rows(aug, k + 1, "fraction")
    if red.rank and red.pivot_columns[-1] == k:
        return None
    # columns of basis are independent, so every column 0..k-1 is a pivot
    return [red.reduced_rows[i].get(k, Fraction(0)) for i in range(k)]


def _unit(n: int) -> list[Vec]:
    return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]


def _rank_of(vectors: list[Vec], dim: int) -> int:
    return len(_basis(vectors, dim))


# ---------------------------------------------------------------------------


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise InputError("floating-point entries are not accepted; use 'p/q' strings")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {x!r}") from exc


@dataclass(frozen=True)
class CochainComplex:
    """K^a -> ... -> K^b with d^m : K^m -> K^(m+1) for a <= m < b."""

    a: int
    dims: tuple[int, ...]
    differentials: tuple[QMatrix, ...]

    def __post_init__(self):
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise DimensionMismatch("need one differential between consecutive degrees")
        for i, dm in enumerate(self.differentials):
            if (dm.rows, dm.cols) != (self.dims[i + 1], self.dims[i]):
                raise DimensionMismatch(
                    f"d^{self.a + i} has shape {dm.rows}x{dm.cols}, "
                    f"expected {self.dims[i + 1]}x{self.dims[i]}"
                )

    @property
    def b(self) -> int:
        return self.a + len(self.dims) - 1

    @property
    def degrees(self) -> range:
        return range(self.a, self.b + 1)

    def dim(self, m: int) -> int:
        return self.dims[m - self.a] if self.a <= m <= self.b else 0

    def d(self, m: int) -> QMatrix:
        """d^m, a zero map outside the stored range."""
        if self.a <= m < self.b:
            return self.differentials[m - self.a]
        return QMatrix.zeros(self.dim(m + 1), self.dim(m))

    def check(self) -> None:
        for m in range(self.a, self.b - 1):
            if not (self.d(m + 1) @ self.d(m)).is_zero():
                raise InvalidComplex("d∘d = 0", f"fails at degree {m}")

    def whole(self, m: int) -> list[Vec]:
        return _unit(self.dim(m))

    def cycles(self, m: int) -> list[Vec]:
        return _preimage(self.d(m), self.whole(m), [], self.dim(m))

    def boundaries(self, m: int) -> list[Vec]:
        src = self.whole(m - 1)
        return _basis([_apply(self.d(m - 1), v) for v in src], self.dim(m))

    def cohomology_dims(self) -> dict[int, int]:
        return {m: len(self.cycles(m)) - len(self.boundaries(m)) for m in self.degrees}


@dataclass(frozen=True, eq=False)
class FilteredComplex:
    """A cochain complex with a decreasing filtration by subcomplexes.

    ``levels[m - a][p]`` is a basis of F^p K^m for p < len(levels[m - a]);
    higher levels are zero.  Construction validates every invariant and
    raises :class:`InvalidComplex` naming the first one that fails.
    """

    complex: CochainComplex
    levels: tuple

    def __post_init__(self):
        K = self.complex
        if len(self.levels) != len(K.dims):
            raise DimensionMismatch("need one filtration list per degree")
        K.check()
        cleaned = []
        for m, lv in zip(K.degrees, self.levels):
            dim = K.dim(m)
            row = []
            for mat in lv:
                for v in mat:
                    if len(v) != dim:
                        raise DimensionMismatch(f"filtration vector of length {len(v)} in degree {m} (dim {dim})")
                row.append(_basis([list(map(_frac, v)) for v in mat], dim))
            cleaned.append(tuple(row))
        object.__setattr__(self, "levels", tuple(cleaned))
        for m in K.degrees:
            dim = K.dim(m)
            if dim and (not self._raw(m) or len(self._raw(m)[0]) != dim):
                raise InvalidComplex("exhaustive: F^0 must be the whole space", f"degree {m}")
            for p in range(1, self.length):
                hi = self.F(p, m)
                lo = self.F(p - 1, m)
                if len(_basis(lo + hi, dim)) != len(lo):
                    raise InvalidComplex("nested: F^(p+1) ⊆ F^p", f"degree {m}, level {p}")
            for p in range(self.length):
                for v in self.F(p, m):
                    if not _contains(self.F(p, m + 1), _apply(K.d(m), v), K.dim(m + 1)):
                        raise InvalidComplex("compatible: d(F^p) ⊆ F^p", f"degree {m}, level {p}")

    def _raw(self, m: int):
        return self.levels[m - self.complex.a]

    @cached_property
    def length(self) -> int:
        """L with F^L = 0 everywhere."""
        return max([len(lv) for lv in self.levels] + [1])

    def F(self, p: int, m: int) -> list[Vec]:
        K = self.complex
        if not K.a <= m <= K.b:
            return []
        if p <= 0:
            return K.whole(m)
        lv = self._raw(m)
        return list(lv[p]) if p < len(lv) else []

    def distinct_levels(self) -> int:
        """Number of distinct nonzero subspaces F^0, F^1, ... (counting F^0)."""
        count = 0
        for p in range(self.length):
            if any(self.F(p, m) for m in self.complex.degrees) and (
                p == 0 or any(len(self.F(p, m)) != len(self.F(p - 1, m)) for m in self.complex.degrees)
            ):
                count += 1
        return count

    # -- pages ------------------------------------------------------------

    @cached_property
    def _zcache(self) -> dict:
        return {}

    def Z(self, r: int, p: int, m: int) -> list[Vec]:
        K = self.complex
        if r < 0:
            return self.F(p, m)
        # F^p depends on p only through max(p, 0), and is zero past the length
        key = (max(p, 0), min(max(p + r, 0), self.length), m)
        hit = self._zcache.get(key)
        if hit is None:
            hit = _preimage(K.d(m), self.F(p, m), self.F(p + r, m + 1), K.dim(m))
            self._zcache[key] = hit
        return list(hit)

    @cached_property
    def _pages(self) -> dict:
        return {}

    def dZ(self, r: int, p: int, m: int) -> list[Vec]:
        """d Z_r^(p, m-1), a subspace of K^m."""
        K = self.complex
        return _basis([_apply(K.d(m - 1), v) for v in self.Z(r, p, m - 1)], K.dim(m))

    def denominator(self, r: int, p: int, m: int) -> list[Vec]:
        dim = self.complex.dim(m)
        return _basis(self.Z(r - 1, p + 1, m) + self.dZ(r - 1, p - r + 1, m), dim)


@dataclass(frozen=True)
class SpectralPage:
    """E_r with dimensions keyed by (p, q) and d_r keyed by source (p, q).

    ``differentials[(p, q)]`` is the matrix of d_r : E_r^(p,q) -> E_r^(p+r, q-r+1)
    in the bases ``representatives``.
    """

    r: int
    entries: dict
    differentials: dict
    representatives: dict = field(repr=False, default_factory=dict)

    def total_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (p, q), v in self.entries.items():
            out[p + q] = out.get(p + q, 0) + v
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p + q) * v for (p, q), v in self.entries.items())

    def is_degenerate(self) -> bool:
        return all(mat.is_zero() for mat in self.differentials.values())


def _page_data(fc: FilteredComplex, r: int):
    K = fc.complex
    reps, dens = {}, {}
    for m in K.degrees:
        dim = K.dim(m)
        for p in range(fc.length):
            z = fc.Z(r, p, m)
            den = fc.denominator(r, p, m)
            reps[(p, m - p)] = _extend(den, z, dim)
            dens[(p, m - p)] = den
    return reps, dens


def page(fc: FilteredComplex, r: int) -> SpectralPage:
    cache = fc._pages
    if r in cache:
        return cache[r]
    pg = _page(fc, r)
    cache[r] = pg
    return pg


def _page(fc: FilteredComplex, r: int) -> SpectralPage:
    if r < 0:
        raise ValueError("page index must be non-negative")
    K = fc.complex
    reps, dens = _page_data(fc, r)
    diffs = {}
    for (p, q), src in reps.items():
        m = p + q
        tgt_key = (p + r, q - r + 1)
        tgt = reps.get(tgt_key, [])
        den = dens.get(tgt_key, [])
        dim1 = K.dim(m + 1)
        cols = []
        for v in src:
            w = _apply(K.d(m), v) if dim1 else []
            if not tgt:
                cols.append([])
                continue
            c = _coords(tgt + den, w, dim1)
            if c is None:  # pragma: no cover - d maps Z_r^p into Z_r^(p+r)
                raise AssertionError("d_r image outside the target page")
            cols.append(c[: len(tgt)])
        diffs[(p, q)] = QMatrix.from_columns(cols, len(tgt)) if cols else QMatrix.zeros(len(tgt), 0)
    entries = {k: len(v) for k, v in reps.items()}
    pg = SpectralPage(r, entries, diffs, reps)
    for (p, q), mat in diffs.items():
        nxt = diffs.get((p + r, q - r + 1))
        if nxt is not None and mat.cols and nxt.rows and not (nxt @ mat).is_zero():
            raise AssertionError(f"d_{r} ∘ d_{r} != 0 at {(p, q)}")
    return pg


def infinity_index(fc: FilteredComplex) -> int:
    """A page index past which every differential vanishes."""
    K = fc.complex
    return fc.length + (K.b - K.a) + 1


def e_infinity(fc: FilteredComplex) -> SpectralPage:
    return page(fc, infinity_index(fc))


def degeneration_page(fc: FilteredComplex) -> int:
    """Smallest r >= 1 such that d_s = 0 for every s >= r."""
    last_nonzero = 0
    for r in range(1, infinity_index(fc) + 1):
        if not page(fc, r).is_degenerate():
            last_nonzero = r
    return last_nonzero + 1


# ---------------------------------------------------------------------------
# truncations


def make_filtration(complex_: CochainComplex, kind: str, cut: int | None = None) -> FilteredComplex:
    """Filtration by truncations.

    ``kind`` is ``"stupid"`` (sigma_{>=q}: zero below q, everything from q on)
    or ``"canonical"`` (tau_{<=p}: everything below p, cycles at p, zero
    above).  With ``cut`` the result has the two levels K ⊇ trunc(cut);
    without it, F^p = sigma_{>=a+p} or tau_{<=b-p} for all p.
    """
    K = complex_
    if kind not in {"stupid", "canonical"}:
        raise InputError(f"unknown truncation {kind!r}; use 'stupid' or 'canonical'")

    def trunc(c: int, m: int) -> list[Vec]:
        if kind == "stupid":
            return K.whole(m) if m >= c else []
        if m < c:
            return K.whole(m)
        return K.cycles(m) if m == c else []

    if cut is not None:
        cuts = [cut]
    elif kind == "stupid":
        cuts = [K.a + p for p in range(1, len(K.dims))]
    else:
        cuts = [K.b - p for p in range(1, len(K.dims))]
    levels = []
    for m in K.degrees:
        lv = [K.whole(m)] + [trunc(c, m) for c in cuts]
        while len(lv) > 1 and not lv[-1]:
            lv.pop()
        levels.append(tuple(lv))
    return FilteredComplex(K, tuple(levels))


# ---------------------------------------------------------------------------
# the long exact sequence of W0 ⊂ K


def _induced_rank(images: list[Vec], bounds: list[Vec], dim: int) -> int:
    return _rank_of(images + bounds, dim) - _rank_of(bounds, dim)


@dataclass(frozen=True)
class LongExactSequence:
    degrees: tuple[int, ...]
    h_sub: dict
    h_total: dict
    h_quot: dict
    rank_i: dict
    rank_j: dict
    rank_delta: dict
    exact: bool
    failures: tuple = ()

    def as_dict(self) -> dict:
        key = lambda d: {str(m): v for m, v in sorted(d.items())}  # noqa: E731
        return {
            "degrees": list(self.degrees),
            "H_W0": key(self.h_sub),
            "H_K": key(self.h_total),
            "H_K_mod_W0": key(self.h_quot),
            "rank_i": key(self.rank_i),
            "rank_j": key(self.rank_j),
            "rank_delta": key(self.rank_delta),
            "exact": self.exact,
            "failures": list(self.failures),
        }


def two_term_les(fc: FilteredComplex) -> LongExactSequence:
    """H(W0) -> H(K) -> H(K/W0) -> H(W0)[1] for W0 = F^1 and K = F^0.

    Exactness at every node is checked by rank identities plus the
    vanishing of the three composites.
    """
    if fc.length > 2:
        raise TooManyFiltrationLevels(f"two-term sequence needs at most 2 filtration levels, got {fc.length}")
    K = fc.complex
    deg = list(K.degrees)
    W = {m: fc.F(1, m) for m in deg}
    C = {m: _extend(W[m], K.whole(m), K.dim(m)) for m in deg}

    def quot_coords(m: int, v: Vec) -> list[Fraction]:
        c = _coords(C[m] + W[m], v, K.dim(m))
        assert c is not None
        return c[: len(C[m])]

    def sub_coords(m: int, v: Vec) -> list[Fraction]:
        c = _coords(W[m], v, K.dim(m))
        assert c is not None
        return c

    def comb(basis: list[Vec], coeffs: Sequence[Fraction], dim: int) -> Vec:
        out = [Fraction(0)] * dim
        for c, b in zip(coeffs, basis):
            if c:
                for t in range(dim):
                    out[t] += c * b[t]
        return out

    def restricted(basis: dict, coords) -> dict:
        out = {}
        for m in deg:
            rows = len(basis.get(m + 1, []))
            cols = [coords(m + 1, _apply(K.d(m), v)) for v in basis[m]] if m + 1 in basis else []
            out[m] = QMatrix.from_columns(cols, rows) if cols else QMatrix.zeros(rows, len(basis[m]))
        return out

    def coh(dmap: dict, dims: dict):
        cyc, bd = {}, {}
        for m in deg:
            n = dims[m]
            cyc[m] = _preimage(dmap[m], _unit(n), [], n)
            prev = dmap.get(m - 1)
            bd[m] = _basis(prev.columns(), n) if prev is not None else []
        return cyc, bd

    dW = restricted(W, sub_coords)
    dQ = restricted(C, quot_coords)
    ZW, BW = coh(dW, {m: len(W[m]) for m in deg})
    ZQ, BQ = coh(dQ, {m: len(C[m]) for m in deg})
    ZK = {m: K.cycles(m) for m in deg}
    BK = {m: K.boundaries(m) for m in deg}

    hW = {m: len(ZW[m]) - len(BW[m]) for m in deg}
    hK = {m: len(ZK[m]) - len(BK[m]) for m in deg}
    hQ = {m: len(ZQ[m]) - len(BQ[m]) for m in deg}

    ri, rj, rd = {}, {}, {}
    failures = []
    for m in deg:
        dim = K.dim(m)
        i_img = [comb(W[m], z, dim) for z in ZW[m]]
        ri[m] = _induced_rank(i_img, BK[m], dim)
        j_img = [quot_coords(m, z) for z in ZK[m]]
        rj[m] = _induced_rank(j_img, BQ[m], len(C[m]))
        if m + 1 in W:
            d_img = [sub_coords(m + 1, _apply(K.d(m), comb(C[m], z, dim))) for z in ZQ[m]]
            rd[m] = _induced_rank(d_img, BW[m + 1], len(W[m + 1]))
        else:
            d_img = []
            rd[m] = 0
        # composites vanish in cohomology
        if any(not _contains(BQ[m], quot_coords(m, v), len(C[m])) for v in i_img):
            failures.append(f"j∘i != 0 in degree {m}")
        for z in ZK[m]:
            if m + 1 in W:
                lift = comb(C[m], quot_coords(m, z), dim)
                img = sub_coords(m + 1, _apply(K.d(m), lift))
                if not _contains(BW[m + 1], img, len(W[m + 1])):
                    failures.append(f"δ∘j != 0 in degree {m}")
                    break
        if m + 1 in W:
            for v in d_img:
                if not _contains(BK[m + 1], comb(W[m + 1], v, K.dim(m + 1)), K.dim(m + 1)):
                    failures.append(f"i∘δ != 0 in degree {m}")
                    break
    for m in deg:
        if hW[m] != rd.get(m - 1, 0) + ri[m]:
            failures.append(f"rank identity fails at H^{m}(W0)")
        if hK[m] != ri[m] + rj[m]:
            failures.append(f"rank identity fails at H^{m}(K)")
        if hQ[m] != rj[m] + rd[m]:
            failures.append(f"rank identity fails at H^{m}(K/W0)")
    return LongExactSequence(tuple(deg), hW, hK, hQ, ri, rj, rd, not failures, tuple(failures))


# ---------------------------------------------------------------------------
# JSON


def _fmt(x: Fraction) -> str:
    return str(x)


def complex_from_dict(data: dict) -> FilteredComplex:
    try:
        a, b = data["degrees"]
        dims = [int(x) for x in data["dims"]]
        raw_d = data.get("differentials", [])
        raw_f = data.get("filtration")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed filtered complex: {exc}") from exc
    if b - a + 1 != len(dims) or any(x < 0 for x in dims):
        raise DimensionMismatch("degrees and dims disagree")
    if len(raw_d) != len(dims) - 1:
        raise DimensionMismatch(f"expected {len(dims) - 1} differentials, got {len(raw_d)}")
    mats = []
    for i, dm in enumerate(raw_d):
        rows, cols = dims[i + 1], dims[i]
        if dm and isinstance(dm[0], list):
            entries = [x for row in dm for x in row]
            if len(dm) != rows or any(len(row) != cols for row in dm):
                raise DimensionMismatch(f"differential {i} is not {rows}x{cols}")
        else:
            entries = list(dm)
            if len(entries) != rows * cols:
                raise DimensionMismatch(f"differential {i} has {len(entries)} entries, expected {rows * cols}")
        vals = [_frac(x) for x in entries]
        mats.append(QMatrix.from_rows([vals[r * cols:(r + 1) * cols] for r in range(rows)], cols))
    K = CochainComplex(a, tuple(dims), tuple(mats))
    if raw_f is None:
        levels = tuple((K.whole(m),) for m in K.degrees)
    else:
        if len(raw_f) != len(dims):
            raise DimensionMismatch("need one filtration list per degree")
        levels = tuple(tuple([[_frac(x) for x in col] for col in mat] for mat in lv) for lv in raw_f)
    return FilteredComplex(K, levels)


def complex_to_dict(fc: FilteredComplex) -> dict:
    K = fc.complex
    return {
        "degrees": [K.a, K.b],
        "dims": list(K.dims),
        "differentials": [[_fmt(x) for x in dm.entries] for dm in K.differentials],
        "filtration": [[[[_fmt(x) for x in v] for v in mat] for mat in lv] for lv in fc.levels],
    }


def load_complex(path: str | Path) -> FilteredComplex:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    return complex_from_dict(data)


def dump_complex(fc: FilteredComplex, path: str | Path) -> None:
    Path(path).write_text(json.dumps(complex_to_dict(fc), indent=2, sort_keys=True) + "\n")


def page_to_dict(pg: SpectralPage) -> dict:
    return {
        "r": pg.r,
        "entries": {f"{p},{q}": v for (p, q), v in sorted(pg.entries.items()) if v},
        "differentials": {
            f"{p},{q}": [[_fmt(x) for x in row] for row in mat.to_rows()]
            for (p, q), mat in sorted(pg.differentials.items())
            if mat.rows and mat.cols and not mat.is_zero()
        },
    }


# ---------------------------------------------------------------------------
# random models for property tests and benchmarks


def _rand_q(rng, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 2))


def random_complex(rng, *, max_degrees: int = 5, max_dim: int = 6, bound: int = 3) -> CochainComplex:
    """A random complex built as cohomology ⊕ acyclic pairs, then conjugated
    by random invertible matrices so the differentials are dense."""
    length = rng.randint(1, max_degrees)
    a = rng.randint(-1, 1)
    dims = [rng.randint(0, max_dim) for _ in range(length)]
    # rank of d^m bounded by what is left in K^m and K^(m+1)
    ranks = []
    used = [0] * length
    for i in range(length - 1):
        r = rng.randint(0, max(0, min(dims[i] - used[i], dims[i + 1])))
        ranks.append(r)
        used[i + 1] = r
    mats = []
    offs_src = [used[i] for i in range(length)]  # first rows of K^m are boundaries
    for i, r in enumerate(ranks):
        m = [[Fraction(0)] * dims[i] for _ in range(dims[i + 1])]
        for t in range(r):
            m[t][offs_src[i] + t] = Fraction(1)
        mats.append(m)
    changes = []
    for n in dims:
        while True:
            P = [[_rand_q(rng, bound) for _ in range(n)] for _ in range(n)]
            inv = _inverse(P)
            if inv is not None:
                changes.append((P, inv))
                break
    out = []
    for i, m in enumerate(mats):
        P1, _ = changes[i + 1]
        _, Q0 = changes[i]
        prod = _mul(_mul(P1, m), Q0) if dims[i] and dims[i + 1] else m
        out.append(QMatrix.from_rows(prod, dims[i]) if dims[i + 1] else QMatrix.zeros(0, dims[i]))
    return CochainComplex(a, tuple(dims), tuple(out))


def _mul(x, y):
    return [[sum((x[i][k] * y[k][j] for k in range(len(y))), Fraction(0)) for j in range(len(y[0]))]
            for i in range(len(x))]


def _inverse(m):
    n = len(m)
    if n == 0:
        return []
    cols = [[m[i][j] for i in range(n)] for j in range(n)]
    if _rank_of(cols, n) < n:
        return None
    inv_cols = [_coords(cols, e, n) for e in _unit(n)]
    return [[inv_cols[j][i] for j in range(n)] for i in range(n)]


def random_filtered_complex(rng, *, max_degrees: int = 5, max_dim: int = 6, max_levels: int = 4,
                            bound: int = 3) -> FilteredComplex:
    """Each level is spanned by random vectors of the previous level and their
    images under d, which keeps every level a subcomplex."""
    K = random_complex(rng, max_degrees=max_degrees, max_dim=max_dim, bound=bound)
    nlev = rng.randint(1, max_levels)
    levels = [[K.whole(m)] for m in K.degrees]
    for _ in range(1, nlev):
        new: dict[int, list[Vec]] = {m: [] for m in K.degrees}
        for m in K.degrees:
            prev = levels[m - K.a][-1]
            if not prev:
                continue
            for _ in range(rng.randint(0, len(prev))):
                coeffs = [_rand_q(rng, bound) for _ in prev]
                v = [sum((c * b[t] for c, b in zip(coeffs, prev)), Fraction(0)) for t in range(K.dim(m))]
                new[m].append(v)
                if m + 1 <= K.b:
                    new[m + 1].append(_apply(K.d(m), v))
        for m in K.degrees:
            levels[m - K.a].append(_basis(new[m], K.dim(m)))
    trimmed = []
    for lv in levels:
        while len(lv) > 1 and not lv[-1]:
            lv.pop()
        trimmed.append(tuple(lv))
    return FilteredComplex(K, tuple(trimmed))
