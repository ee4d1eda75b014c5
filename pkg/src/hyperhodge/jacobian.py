"""The Jacobian ring R/J of a smooth projective hypersurface.

For ``f`` homogeneous of degree ``d`` in ``n + 2`` variables, ``J`` is
generated by the partials of ``f``.  Each graded piece ``J_e`` is spanned
by the products ``m * df/dx_i`` with ``m`` running over monomials of degree
``e - d + 1``; generators are enumerated variable-major (all multiples of
``df/dx0`` first, each block in monomial-basis order).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegreeTooSmall, NonHomogeneous, SingularHypersurface
from .linalg import LinearSystem, RrefResult, rref_rows
from .polyring import GradedPoly, monomial_basis, monomial_index


@dataclass(frozen=True)
class GradedPieceDecomposition:
    degree: int
    pivot_monomials: tuple
    coset_basis: tuple
    rref_data: RrefResult

    @property
    def dimension(self) -> int:
        return len(self.coset_basis)


@dataclass(eq=False)
class HypersurfaceContext:
    """X = P^(n+1), Y = {f = 0}.  Build with :func:`build_context`."""

    n: int
    d: int
    f: GradedPoly
    jacobian_generators: tuple
    _pieces: dict = field(default_factory=dict, repr=False)
    _systems: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def nvars(self) -> int:
        return self.n + 2

    @property
    def socle_degree(self) -> int:
        return (self.n + 2) * (self.d - 2)

    # -- graded pieces ----------------------------------------------------

    def generator_rows(self, e: int) -> list[dict[int, Fraction]]:
        """Coefficient vectors of the spanning set of J_e, one per generator."""
        nv = self.nvars
        idx = monomial_index(nv, e)
        mons = monomial_basis(nv, e - self.d + 1)
        rows = []
        for g in self.jacobian_generators:
            gt = list(g.terms.items())
            for m in mons:
                row = {}
                for gm, c in gt:
                    j = idx[tuple(a + b for a, b in zip(m, gm))]
                    row[j] = row.get(j, 0) + c
                rows.append(row)
        return rows

    def decomposition(self, e: int) -> GradedPieceDecomposition:
        dec = self._pieces.get(e)
        if dec is None:
            basis = monomial_basis(self.nvars, e)
            red = rref_rows(self.generator_rows(e), len(basis)) if e >= 0 else rref_rows([], 0)
            dec = GradedPieceDecomposition(
                e,
                tuple(basis[j] for j in red.pivot_columns),
                tuple(basis[j] for j in red.free_columns),
                red,
            )
            with self._lock:
                dec = self._pieces.setdefault(e, dec)
        return dec

    def membership_system(self, e: int) -> LinearSystem:
        """The system sum_i B_i * df/dx_i = A in degree e, columns = generators."""
        sysm = self._systems.get(e)
        if sysm is None:
            nmon = len(monomial_basis(self.nvars, e))
            cols = self.generator_rows(e)
            rows: list[dict] = [{} for _ in range(nmon)]
            for g, col in enumerate(cols):
                for j, c in col.items():
                    rows[j][g] = c
            sysm = LinearSystem(rows, len(cols))
            with self._lock:
                sysm = self._systems.setdefault(e, sysm)
        return sysm

    def _split_generators(self, e: int, x: Sequence[Fraction]) -> list[GradedPoly]:
        nv = self.nvars
        deg = e - self.d + 1
        mons = monomial_basis(nv, deg)
        k = len(mons)
        return [
            GradedPoly(nv, deg, {mons[t]: x[i * k + t] for t in range(k) if x[i * k + t]})
            for i in range(nv)
        ]

    def syzygies(self, e: int) -> list[list[GradedPoly]]:
        """A basis of tuples (B_0, ..., B_{n+1}) of degree e-d+1 with sum B_i df/dx_i = 0."""
        if e - self.d + 1 < 0:
            return []
        return [self._split_generators(e, v) for v in self.membership_system(e).kernel_basis()]


def fermat(n: int, d: int) -> GradedPoly:
    nv = n + 2
    return GradedPoly(nv, d, {tuple(d if j == i else 0 for j in range(nv)): 1 for i in range(nv)})


def build_context(n: int, f: GradedPoly) -> HypersurfaceContext:
    """Validate ``f`` and certify that {f = 0} is smooth."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if f.nvars != n + 2:
        raise NonHomogeneous(f"f has {f.nvars} variables, expected {n + 2}")
    if f.is_zero():
        raise DegreeTooSmall("f is the zero polynomial")
    d = f.degree
    if d < 1:
        raise DegreeTooSmall(f"degree {d} < 1")
    gens = tuple(f.derivative(i) for i in range(n + 2))
    ctx = HypersurfaceContext(n, d, f, gens)
    euler = None
    for i, g in enumerate(gens):
        t = g * GradedPoly.monomial(tuple(int(j == i) for j in range(n + 2)))
        euler = t if euler is None else euler + t
    if euler != f.scale(d):
        raise AssertionError("Euler identity failed")
    check = max(ctx.socle_degree + 1, 0)
    defect = hilbert_function(ctx, check, _certify=True)
    if defect:
        raise SingularHypersurface(check, defect)
    return ctx


def hilbert_function(ctx: HypersurfaceContext, e: int, _certify: bool = False) -> int:
    """dim (R/J)_e."""
    if e < 0:
        return 0
    if e > ctx.socle_degree and not _certify:
        return 0  # R/J is generated in degree 1 and vanishes at socle+1
    return ctx.decomposition(e).dimension


def canonical_rep(ctx: HypersurfaceContext, a: GradedPoly) -> GradedPoly:
    """Representative of A mod J supported on the coset-basis monomials."""
    e = a.degree
    if a.is_zero() or e < 0:
        return GradedPoly.zero(ctx.nvars, e)
    dec = ctx.decomposition(e)
    rem = dec.rref_data.reduce(a.to_vector())
    return GradedPoly.from_vector(ctx.nvars, e, rem)


def membership_lift(ctx: HypersurfaceContext, a: GradedPoly) -> list[GradedPoly] | None:
    """B_0..B_{n+1} with sum B_i df/dx_i = A, or None if A is not in J.

    The B_i are the RREF particular solution of the degree-e membership
    system (free generator coefficients set to zero).
    """
    e = a.degree
    deg = e - ctx.d + 1
    if a.is_zero():
        return [GradedPoly.zero(ctx.nvars, deg) for _ in range(ctx.nvars)]
    if deg < 0:
        return None
    if canonical_rep(ctx, a):
        return None
    sysm = ctx.membership_system(e)
    nmon = len(monomial_basis(ctx.nvars, e))
    rhs = [Fraction(0)] * nmon
    for j, c in a.to_vector().items():
        rhs[j] = c
    x = sysm.solve(rhs)
    if x is None:  # pragma: no cover - excluded by canonical_rep above
        return None
    lift = ctx._split_generators(e, x)
    if combine(ctx, lift) != a:
        raise AssertionError("membership lift failed re-substitution")
    return lift


def combine(ctx: HypersurfaceContext, lift: Sequence[GradedPoly]) -> GradedPoly:
    """sum_i B_i * df/dx_i."""
    total = None
    for b, g in zip(lift, ctx.jacobian_generators):
        t = b * g
        total = t if total is None else total + t
    return total


def hilbert_series_oracle(n: int, d: int) -> list[int]:
    """Coefficients of (1 + t + ... + t^(d-2))^(n+2) up to the socle degree."""
    if d < 2:
        return []  # J is the unit ideal and sigma < 0
    coeffs = [1]
    for _ in range(n + 2):
        nxt = [0] * (len(coeffs) + d - 2)
        for i, c in enumerate(coeffs):
            for j in range(d - 1):
                nxt[i + j] += c
        coeffs = nxt
    return coeffs


def random_smooth_context(n: int, d: int, rng, *, terms: int = 4, bound: int = 3, tries: int = 50):
    """Fermat plus a few small random integer terms, resampled until smooth.

    ``rng`` is a :class:`random.Random`.  Raises ``SingularHypersurface`` if
    every attempt fails.
    """
    base = fermat(n, d)
    mons = [m for m in monomial_basis(n + 2, d) if max(m) < d]
    last: SingularHypersurface | None = None
    for _ in range(tries):
        extra = {}
        for m in rng.sample(mons, min(terms, len(mons))):
            c = rng.randint(-bound, bound)
            if c:
                extra[m] = Fraction(c, rng.randint(1, bound))
        f = base + GradedPoly(n + 2, d, extra)
        try:
            return build_context(n, f)
        except SingularHypersurface as exc:
            last = exc
    assert last is not None
    raise last
