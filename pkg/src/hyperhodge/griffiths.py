"""Rational top forms A * Omega0 / f^k on P^(n+1) and their cohomology classes.

``Omega0`` is the Euler form.  A form of pole order ``k`` needs a numerator
of degree ``k*d - n - 2``.  Classes are compared through :class:`NormalForm`,
the tuple of canonical Jacobian-ring representatives obtained by splitting
each numerator and pushing its J-part one pole order down.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DegreeMismatch, MixedContexts, NotInIdeal, PoleOrderOne, PoleOrderOutOfRange
from .jacobian import HypersurfaceContext, canonical_rep, combine, hilbert_function, membership_lift
from .polyring import GradedPoly

SECOND_KIND_JUSTIFICATION = (
    "second kind is equivalent to exact here: forms of the second kind are the image of "
    "H^(n+1)(P^(n+1), C) restricted to the complement of Y; that group is zero in odd degree "
    "and spanned by a power of the hyperplane class in even degree, which restricts to zero "
    "because Y is a multiple of a hyperplane"
)


def numerator_degree(ctx: HypersurfaceContext, k: int) -> int:
    return k * ctx.d - ctx.n - 2


@dataclass(frozen=True, eq=False)
class RationalTopForm:
    ctx: HypersurfaceContext
    k: int
    A: GradedPoly

    def __repr__(self) -> str:
        return f"RationalTopForm(k={self.k}, A={self.A})"


def make_form(ctx: HypersurfaceContext, A: GradedPoly, k: int) -> RationalTopForm:
    if not 1 <= k <= ctx.n + 2:
        raise PoleOrderOutOfRange(f"pole order {k} outside 1..{ctx.n + 2}")
    e = numerator_degree(ctx, k)
    if A.nvars != ctx.nvars:
        raise DegreeMismatch(e, A.degree, f"numerator in {ctx.nvars} variables")
    if A.degree != e:
        if A.is_zero():
            A = GradedPoly.zero(ctx.nvars, e)
        else:
            raise DegreeMismatch(e, A.degree)
    return RationalTopForm(ctx, k, A)


class FormSum:
    """A finite sum of rational top forms over one context, one term per pole order."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: HypersurfaceContext | None, terms: Mapping[int, GradedPoly] | None = None):
        self.ctx = ctx
        clean: dict[int, GradedPoly] = {}
        for k, a in (terms or {}).items():
            if a.is_zero():
                continue
            if ctx is None:
                raise MixedContexts("a nonzero FormSum needs a context")
            make_form(ctx, a, k)
            clean[k] = a
        self._terms = clean

    @classmethod
    def empty(cls, ctx: HypersurfaceContext | None = None) -> "FormSum":
        return cls(ctx)

    @classmethod
    def of(cls, forms: Iterable[RationalTopForm]) -> "FormSum":
        out = cls(None)
        for w in forms:
            out = out + cls(w.ctx, {w.k: w.A})
        return out

    @property
    def terms(self) -> dict[int, GradedPoly]:
        return dict(self._terms)

    @property
    def forms(self) -> list[RationalTopForm]:
        return [RationalTopForm(self.ctx, k, self._terms[k]) for k in sorted(self._terms)]

    def is_empty(self) -> bool:
        return not self._terms

    def _join(self, other: "FormSum") -> HypersurfaceContext | None:
        if self.ctx is None:
            return other.ctx
        if other.ctx is None or other.ctx is self.ctx:
            return self.ctx
        raise MixedContexts("forms belong to different hypersurface contexts")

    def __add__(self, other: "FormSum") -> "FormSum":
        if not isinstance(other, FormSum):
            return NotImplemented
        ctx = self._join(other)
        out = dict(self._terms)
        for k, a in other._terms.items():
            out[k] = out[k] + a if k in out else a
        return FormSum(ctx, out)

    def scale(self, c) -> "FormSum":
        c = Fraction(c)
        return FormSum(self.ctx, {k: a.scale(c) for k, a in self._terms.items()})

    def __neg__(self) -> "FormSum":
        return self.scale(-1)

    def __sub__(self, other: "FormSum") -> "FormSum":
        if not isinstance(other, FormSum):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, c) -> "FormSum":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {self._terms[k]}" for k in sorted(self._terms))
        return f"FormSum({{{body}}})"


def form_sum(ctx: HypersurfaceContext, terms: Mapping[int, GradedPoly]) -> FormSum:
    return FormSum(ctx, terms)


@dataclass(frozen=True, eq=False)
class NormalForm:
    """Canonical representatives per pole order j = 1..n+1 (zeros included)."""

    ctx: HypersurfaceContext | None
    components: Mapping[int, GradedPoly]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components.values())

    def nonzero(self) -> dict[int, GradedPoly]:
        return {j: c for j, c in self.components.items() if not c.is_zero()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.nonzero() == other.nonzero()

    def __hash__(self) -> int:
        return hash(frozenset(self.nonzero().items()))

    def _lin(self, other: "NormalForm", a: Fraction, b: Fraction) -> "NormalForm":
        ctx = self.ctx or other.ctx
        if self.ctx is not None and other.ctx is not None and self.ctx is not other.ctx:
            raise MixedContexts("normal forms belong to different contexts")
        keys = set(self.components) | set(other.components)
        comps = {}
        for j in sorted(keys):
            x = self.components.get(j)
            y = other.components.get(j)
            if x is None:
                comps[j] = y.scale(b)
            elif y is None:
                comps[j] = x.scale(a)
            else:
                comps[j] = x.scale(a) + y.scale(b)
        return NormalForm(ctx, comps)

    def __add__(self, other: "NormalForm") -> "NormalForm":
        return self._lin(other, Fraction(1), Fraction(1))

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        return self._lin(other, Fraction(1), Fraction(-1))

    def scale(self, c) -> "NormalForm":
        c = Fraction(c)
        return NormalForm(self.ctx, {j: p.scale(c) for j, p in self.components.items()})

    def __rmul__(self, c) -> "NormalForm":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{j}: {p}" for j, p in sorted(self.nonzero().items()))
        return f"NormalForm({{{body}}})"


def reduce_once(form: RationalTopForm, lift: Sequence[GradedPoly] | None = None) -> RationalTopForm:
    """One pole-lowering step.

    With A = sum B_i df/dx_i, A Omega0/f^k and (sum dB_i/dx_i) Omega0 / ((k-1) f^(k-1))
    differ by an exact form.  ``lift`` overrides the default RREF lift; it is
    checked by re-substitution.
    """
    ctx, k, A = form.ctx, form.k, form.A
    if k < 2:
        raise PoleOrderOne("cannot lower the pole order of a pole-order-1 form")
    if lift is None:
        lift = membership_lift(ctx, A)
        if lift is None:
            raise NotInIdeal(f"numerator {A} is not in the Jacobian ideal")
    else:
        lift = list(lift)
        if len(lift) != ctx.nvars or combine(ctx, lift) != A:
            raise NotInIdeal("supplied lift does not reproduce the numerator")
    total = GradedPoly.zero(ctx.nvars, numerator_degree(ctx, k - 1))
    for i, b in enumerate(lift):
        total = total + b.derivative(i)
    return RationalTopForm(ctx, k - 1, total.scale(Fraction(1, k - 1)))


def _split(ctx: HypersurfaceContext, a: GradedPoly) -> tuple[GradedPoly, GradedPoly]:
    c = canonical_rep(ctx, a)
    return c, a - c


def reduce_at(s: FormSum, j: int, lift: Sequence[GradedPoly] | None = None) -> FormSum:
    """Push the J-part of the pole-order-j numerator down to order j-1.

    The canonical part stays at order j.  The result is cohomologous to ``s``.
    """
    a = s.terms.get(j)
    if a is None or j < 2:
        return s
    ctx = s.ctx
    c, rest = _split(ctx, a)
    if rest.is_zero():
        return s
    low = reduce_once(RationalTopForm(ctx, j, rest), lift)
    terms = s.terms
    terms[j] = c
    terms[j - 1] = terms[j - 1] + low.A if (j - 1) in terms else low.A
    return FormSum(ctx, terms)


def normal_form(s: FormSum, lift_for: Callable[[RationalTopForm], Sequence[GradedPoly]] | None = None) -> NormalForm:
    """Canonical parts by pole order, reducing from the top order down.

    ``lift_for`` may supply an alternative lift for each J-part that gets
    reduced; the class does not depend on that choice.
    """
    ctx = s.ctx
    if ctx is None:
        return NormalForm(None, {})
    top = ctx.n + 1
    terms = s.terms
    comps: dict[int, GradedPoly] = {}
    for j in range(max([top + 1, *terms]), 0, -1):
        a = terms.pop(j, None)
        if a is None:
            if j <= top:
                comps[j] = GradedPoly.zero(ctx.nvars, numerator_degree(ctx, j))
            continue
        c, rest = _split(ctx, a)
        if j <= top:
            comps[j] = c
        elif not c.is_zero():  # pragma: no cover - the top graded piece is zero
            raise AssertionError("nonzero Jacobian class above the socle")
        if not rest.is_zero():
            w = RationalTopForm(ctx, j, rest)
            low = reduce_once(w, lift_for(w) if lift_for else None).A
            terms[j - 1] = terms[j - 1] + low if (j - 1) in terms else low
    return NormalForm(ctx, dict(sorted(comps.items())))


def is_exact(s: FormSum) -> bool:
    return normal_form(s).is_zero()


def is_second_kind(s: FormSum) -> bool:
    """Equal to :func:`is_exact` for hypersurfaces in projective space (see
    ``SECOND_KIND_JUSTIFICATION``)."""
    return is_exact(s)


def second_kind_report(s: FormSum) -> dict:
    val = is_second_kind(s)
    return {"second_kind": val, "exact": val, "justification": SECOND_KIND_JUSTIFICATION}


def pole_filtration_dim(ctx: HypersurfaceContext, k: int) -> int:
    """dim F^k H^(n+1)(X - Y, C), summing Jacobian pieces of pole orders 1..n+2-k."""
    if not 0 <= k <= ctx.n + 1:
        raise PoleOrderOutOfRange(f"filtration index {k} outside 0..{ctx.n + 1}")
    return sum(hilbert_function(ctx, numerator_degree(ctx, j)) for j in range(1, ctx.n + 3 - k))
