"""Residues of rational top forms into primitive middle cohomology of Y.

The residue of A * Omega0 / f^j is read off the normal form: the pole-order-j
component is its part of Hodge type (n+1-j, j-1).  Since the restriction of
H^(n+1)(P^(n+1)) to the complement is zero, the residue map is injective on
classes, so a class and its residue determine each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .griffiths import FormSum, normal_form, pole_filtration_dim
from .hodge import hodge_filtration_dims
from .jacobian import HypersurfaceContext
from .polyring import GradedPoly


def hodge_type(n: int, j: int) -> tuple[int, int]:
    return (n + 1 - j, j - 1)


@dataclass(frozen=True, eq=False)
class ResidueClass:
    n: int
    components: dict[int, GradedPoly]

    @property
    def types(self) -> dict[int, tuple[int, int]]:
        return {j: hodge_type(self.n, j) for j in self.components}

    def support(self) -> list[tuple[int, int]]:
        """Hodge types carrying a nonzero component."""
        return [hodge_type(self.n, j) for j in sorted(self.components) if self.components[j]]

    def is_zero(self) -> bool:
        return not any(self.components.values())

    def filtration_level(self) -> int:
        """Largest k with the class in F^k; the zero class returns n + 1."""
        live = [j for j, c in self.components.items() if c]
        return self.n + 1 - max(live) if live else self.n + 1

    def lies_in(self, k: int) -> bool:
        return all(p >= k for p, _ in self.support())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueClass):
            return NotImplemented
        mine = {j: c for j, c in self.components.items() if c}
        theirs = {j: c for j, c in other.components.items() if c}
        return self.n == other.n and mine == theirs

    def __hash__(self) -> int:
        return hash((self.n, frozenset((j, c) for j, c in self.components.items() if c)))


def residue(s: FormSum) -> ResidueClass:
    nf = normal_form(s)
    n = s.ctx.n if s.ctx is not None else 0
    return ResidueClass(n, dict(nf.components))


residue_of = residue  # alias that survives the package-level re-export


def residue_filtration_check(s: FormSum, k: int) -> bool:
    """Whether residue(s) lies in F^k.

    Raises AssertionError if ``s`` is written with poles of order at most
    n+1-k yet its residue escapes F^k (that would contradict the
    pole-order/Hodge comparison).
    """
    res = residue(s)
    inside = res.lies_in(k)
    if s.ctx is not None:
        low_poles = all(j <= s.ctx.n + 1 - k for j in s.terms)
        if low_poles and not inside:
            raise AssertionError(f"pole order <= {s.ctx.n + 1 - k} but residue not in F^{k}")
    return inside


def theorem41_report(ctx: HypersurfaceContext, k: int) -> dict:
    """dim F^k H^n(Y)_0 against dim Res(I_(k+1)) + dim of the ambient summand."""
    if not 0 <= k <= ctx.n:
        raise ValueError(f"k must lie in 0..{ctx.n}")
    lhs = hodge_filtration_dims(ctx)[k]
    res_part = pole_filtration_dim(ctx, k + 1)
    ambient = 0  # primitive H^n of projective space vanishes
    return {
        "k": k,
        "dim_F_k": lhs,
        "dim_residue_part": res_part,
        "dim_ambient_part": ambient,
        "holds": lhs == res_part + ambient,
    }
