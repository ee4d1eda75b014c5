"""Hodge numbers, Betti numbers and complement cohomology of a smooth hypersurface.

Everything here is dimension bookkeeping on top of the Jacobian ring:
h^(n+1-j, j-1)_prim = dim (R/J)_(jd-n-2), weak Lefschetz for the Betti
numbers away from the middle, and the Gysin sequence of the pair
(P^(n+1), Y) for the complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .griffiths import numerator_degree, pole_filtration_dim
from .jacobian import HypersurfaceContext, hilbert_function


@dataclass(frozen=True)
class PrimitiveHodgeNumbers:
    """entries[p'] = h^(n-p', p')_prim, starting at h^(n,0)."""

    n: int
    entries: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.entries)

    def hodge_number(self, p: int, q: int) -> int:
        if p + q != self.n or p < 0 or q < 0:
            return 0
        return self.entries[q]

    def is_palindromic(self) -> bool:
        return self.entries == self.entries[::-1]


def primitive_hodge_numbers(ctx: HypersurfaceContext) -> PrimitiveHodgeNumbers:
    n = ctx.n
    vals = tuple(hilbert_function(ctx, numerator_degree(ctx, j)) for j in range(1, n + 2))
    return PrimitiveHodgeNumbers(n, vals)


def hodge_filtration_dims(ctx: HypersurfaceContext) -> list[int]:
    """[dim F^0, ..., dim F^n] of primitive H^n(Y, C)."""
    h = primitive_hodge_numbers(ctx).entries
    n = ctx.n
    # F^k collects h^(p, n-p) for p >= k, i.e. entries[0..n-k]
    return [sum(h[: n - k + 1]) for k in range(n + 1)]


def euler_characteristic(n: int, d: int) -> int:
    if d < 1:
        raise ValueError("degree must be at least 1")
    num = (1 - d) ** (n + 2) - 1
    assert num % d == 0
    return num // d + n + 2


def _ambient_betti(n: int) -> list[int]:
    """b_0..b_(2n+2) of P^(n+1)."""
    return [1 if q % 2 == 0 else 0 for q in range(2 * n + 3)]


def betti_table(ctx: HypersurfaceContext) -> list[int]:
    n = ctx.n
    out = [1 if q % 2 == 0 else 0 for q in range(2 * n + 1)]
    out[n] = primitive_hodge_numbers(ctx).total + (1 if n % 2 == 0 else 0)
    return out


def _gysin_ranks(bY: list[int], bX: list[int]) -> dict[int, int]:
    """rank of H^(q-2)(Y) -> H^q(X).  Both sides are spanned by hyperplane powers
    where nonzero and the map multiplies by deg Y, so the rank is 0 or 1."""
    ranks = {}
    for q in range(len(bX) + 1):
        src = bY[q - 2] if 0 <= q - 2 < len(bY) else 0
        tgt = bX[q] if q < len(bX) else 0
        ranks[q] = 1 if src and tgt else 0
    return ranks


@dataclass(frozen=True)
class ComplementCohomology:
    """Cohomology of U = P^(n+1) - Y.

    ``weights`` uses the shifted convention in which the weight-q part of
    H^q(U) is the image of H^q(P^(n+1)); for q = n+1 it is reported as
    {n+1: ..., n+2: ...}.
    """

    n: int
    dims: tuple[int, ...]
    weights: dict = field(default_factory=dict)
    hodge_filtration: tuple[int, ...] = ()

    def dim(self, q: int) -> int:
        return self.dims[q] if 0 <= q < len(self.dims) else 0


def _chase(n: int, bY: list[int]) -> tuple[list[int], dict[int, int]]:
    bX = _ambient_betti(n)
    g = _gysin_ranks(bY, bX)
    dims = []
    for q in range(len(bX)):
        prev = bY[q - 1] if 0 <= q - 1 < len(bY) else 0
        dims.append((bX[q] - g[q]) + (prev - g[q + 1]))
    return dims, g


def complement_cohomology(ctx: HypersurfaceContext) -> ComplementCohomology:
    n = ctx.n
    dims, g = _chase(n, betti_table(ctx))
    top = dims[n + 1]
    fdims = tuple(pole_filtration_dim(ctx, k) for k in range(n + 2))
    # restriction H^(n+1)(P^(n+1)) -> H^(n+1)(U) has image zero: the only class is
    # a hyperplane power and it comes from Y through the Gysin map
    low = _ambient_betti(n)[n + 1] - g[n + 1]
    weights = {0: {0: dims[0]}, n + 1: {n + 1: low, n + 2: top - low}}
    return ComplementCohomology(n, tuple(dims), weights, fdims)


def consistency_report(ctx: HypersurfaceContext) -> dict:
    """Cross-checks between independently computed quantities.

    Each entry has ``passed`` plus the numbers that were compared.
    """
    n, d = ctx.n, ctx.d
    prim = primitive_hodge_numbers(ctx)
    betti = betti_table(ctx)
    chi = euler_characteristic(n, d)
    off = sum((-1) ** q * b for q, b in enumerate(betti) if q != n)
    implied = (-1) ** n * (chi - off)
    checks = {}
    checks["euler"] = {
        "passed": implied == betti[n],
        "chi": chi,
        "b_n": betti[n],
        "b_n_from_chi": implied,
    }

    # Gysin sequence  ... -> H^q(X) -> H^q(U) -> H^(q-1)(Y) -> H^(q+1)(X) -> ...
    # with H^(n+1)(U) taken from the pole-order filtration, not from the chase.
    bX = _ambient_betti(n)
    dims, g = _chase(n, betti)
    dimsU = list(dims)
    dimsU[n + 1] = pole_filtration_dim(ctx, 0)
    nodes_ok = True
    alt = 0
    for q in range(len(bX)):
        res_q = bX[q] - g[q]
        bY_prev = betti[q - 1] if 0 <= q - 1 < len(betti) else 0
        bnd_q = bY_prev - g[q + 1]
        nodes_ok &= dimsU[q] == res_q + bnd_q
        nodes_ok &= q <= n + 1 or dimsU[q] == 0
        alt += (-1) ** q * (bX[q] - dimsU[q] + bY_prev)
    checks["gysin_exactness"] = {
        "passed": nodes_ok and alt == 0,
        "alternating_sum": alt,
        "complement_dims": dimsU,
    }

    hf = [hilbert_function(ctx, e) for e in range(ctx.socle_degree + 1)]
    checks["symmetry"] = {
        "passed": hf == hf[::-1] and prim.is_palindromic() and betti == betti[::-1],
        "hilbert_function": hf,
        "primitive_hodge_numbers": list(prim.entries),
    }
    return {"passed": all(c["passed"] for c in checks.values()), "checks": checks}
