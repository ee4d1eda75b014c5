import random
from fractions import Fraction

import pytest

from hyperhodge.errors import DegreeMismatch, MixedContexts, NotInIdeal, PoleOrderOne, PoleOrderOutOfRange
from hyperhodge.griffiths import (
    SECOND_KIND_JUSTIFICATION,
    FormSum,
    NormalForm,
    is_exact,
    is_second_kind,
    make_form,
    normal_form,
    numerator_degree,
    pole_filtration_dim,
    reduce_at,
    reduce_once,
    second_kind_report,
)
from hyperhodge.jacobian import build_context, fermat, hilbert_function, membership_lift
from hyperhodge.polyring import GradedPoly, parse_poly

from _util import rand_q, random_form_sum, random_poly


def P(text, nvars=3, degree=None):
    return parse_poly(text, nvars, degree)


def test_make_form(cubic_curve, quartic_surface):
    assert make_form(cubic_curve, P("x0*x1*x2"), 2).k == 2
    with pytest.raises(DegreeMismatch):
        make_form(cubic_curve, P("x0"), 2)
    assert make_form(quartic_surface, GradedPoly.monomial((0, 0, 0, 0)), 1).A.degree == 0
    with pytest.raises(PoleOrderOutOfRange):
        make_form(cubic_curve, P("x0"), 4)
    with pytest.raises(PoleOrderOutOfRange):
        make_form(cubic_curve, P("x0"), 0)


def test_reduce_once_examples(cubic_curve):
    out = reduce_once(make_form(cubic_curve, P("x0^2*x1^2*x2^2"), 3))
    assert out.k == 2 and out.A.is_zero()
    g = P("2*x0 - 5*x1 + x2")
    out = reduce_once(make_form(cubic_curve, P("x0^2") * g, 2))
    assert out.k == 1 and out.A == GradedPoly.monomial((0, 0, 0), Fraction(2, 3))
    zero = reduce_once(make_form(cubic_curve, GradedPoly.zero(3, 6), 3))
    assert zero.k == 2 and zero.A.is_zero()


def test_reduce_once_errors(cubic_curve):
    with pytest.raises(NotInIdeal):
        reduce_once(make_form(cubic_curve, P("x0*x1*x2"), 2))
    with pytest.raises(PoleOrderOne):
        reduce_once(make_form(cubic_curve, GradedPoly.zero(3, 0), 1))
    with pytest.raises(NotInIdeal):
        reduce_once(make_form(cubic_curve, P("x0^2*x1"), 2), lift=[P("x1"), P("x1"), P("x1")])


def test_normal_form_examples(cubic_curve):
    nf = normal_form(FormSum(cubic_curve, {2: P("x0*x1*x2")}))
    assert nf.nonzero() == {2: P("x0*x1*x2")}
    assert normal_form(FormSum(cubic_curve, {3: P("x0^2*x1^2*x2^2")})).is_zero()
    empty = normal_form(FormSum.empty(cubic_curve))
    assert empty.is_zero() and set(empty.components) == {1, 2}
    assert normal_form(FormSum.empty()).is_zero()


def test_exactness(cubic_curve):
    w = FormSum(cubic_curve, {2: P("x0*x1*x2")})
    assert is_exact(FormSum.empty(cubic_curve))
    assert not is_exact(w)
    assert is_exact(w + (-1) * w)
    assert is_second_kind(w) is False
    rep = second_kind_report(w)
    assert rep["justification"] == SECOND_KIND_JUSTIFICATION and rep["exact"] is False


def test_pole_filtration_dims(cubic_curve, quartic_surface):
    assert [pole_filtration_dim(quartic_surface, k) for k in range(4)] == [21, 21, 20, 1]
    assert [pole_filtration_dim(cubic_curve, k) for k in range(3)] == [2, 2, 1]
    with pytest.raises(PoleOrderOutOfRange):
        pole_filtration_dim(cubic_curve, 3)


def test_mixed_contexts(cubic_curve):
    other = build_context(1, fermat(1, 3))
    with pytest.raises(MixedContexts):
        FormSum(cubic_curve, {2: P("x0*x1*x2")}) + FormSum(other, {2: P("x0*x1*x2")})


def test_form_sum_merges_pole_orders(cubic_curve):
    a = FormSum(cubic_curve, {2: P("x0^3")})
    b = FormSum(cubic_curve, {2: P("-x0^3 + x1^3")})
    assert (a + b).terms == {2: P("x1^3")}
    assert FormSum.of([make_form(cubic_curve, P("x0^3"), 2), make_form(cubic_curve, P("x1^3"), 2)]).terms == {
        2: P("x0^3 + x1^3")
    }


@pytest.mark.parametrize("fixture", ["cubic_curve", "quartic_surface", "random_cubic_surface"])
def test_normal_form_properties(fixture, request):
    ctx = request.getfixturevalue(fixture)
    rng = random.Random(hash(fixture) % 1000)
    for _ in range(15):
        s1 = random_form_sum(rng, ctx)
        s2 = random_form_sum(rng, ctx)
        a, b = rand_q(rng), rand_q(rng)
        n1, n2 = normal_form(s1), normal_form(s2)
        assert normal_form(a * s1 + b * s2) == a * n1 + b * n2
        # components are canonical and sized by the Jacobian ring
        for j, c in n1.components.items():
            assert set(c.terms) <= set(ctx.decomposition(c.degree).coset_basis) or c.is_zero()
            if hilbert_function(ctx, numerator_degree(ctx, j)) == 0:
                assert c.is_zero()
        # idempotent
        assert normal_form(FormSum(ctx, n1.nonzero())) == n1
        # order of reductions does not matter
        t = s1
        for _ in range(4):
            t = reduce_at(t, rng.randint(2, ctx.n + 2))
        assert normal_form(t) == n1


def test_lift_perturbation_invariance(quartic_surface):
    ctx = quartic_surface
    rng = random.Random(5)

    def perturbed(w):
        base = membership_lift(ctx, w.A)
        e = w.A.degree
        syz = ctx.syzygies(e)
        out = list(base)
        for s in rng.sample(syz, min(3, len(syz))):
            c = rand_q(rng)
            out = [x + y.scale(c) for x, y in zip(out, s)]
        return out

    for _ in range(10):
        s = random_form_sum(rng, ctx)
        assert normal_form(s, lift_for=perturbed) == normal_form(s)


def test_top_pole_order_reduces_away(quartic_surface):
    rng = random.Random(6)
    top = quartic_surface.n + 2
    s = FormSum(quartic_surface, {top: random_poly(rng, 4, numerator_degree(quartic_surface, top), 10)})
    assert top not in normal_form(s).components


def test_normal_form_linear_ops(cubic_curve):
    n1 = normal_form(FormSum(cubic_curve, {2: P("x0*x1*x2")}))
    assert (n1 - n1).is_zero()
    assert (n1 + n1) == n1.scale(2)
    assert isinstance(n1, NormalForm)
