import random
from fractions import Fraction

import pytest

from hyperhodge.errors import DegreeTooSmall, NonHomogeneous, SingularHypersurface
from hyperhodge.jacobian import (
    build_context,
    canonical_rep,
    combine,
    fermat,
    hilbert_function,
    hilbert_series_oracle,
    membership_lift,
    random_smooth_context,
)
from hyperhodge.polyring import GradedPoly, monomial_basis, parse_poly

from _util import random_poly, series_coefficient


def P(text, nvars=3, degree=None):
    return parse_poly(text, nvars, degree)


def test_fermat_cubic_context(cubic_curve):
    assert cubic_curve.socle_degree == 3
    assert cubic_curve.jacobian_generators[0] == P("3*x0^2")


def test_singular_curve_rejected():
    with pytest.raises(SingularHypersurface) as info:
        build_context(1, P("x0*x1*x2"))
    assert info.value.degree == 4
    assert "singular hypersurface" in str(info.value)


def test_cone_is_singular():
    # x0^3 + x1^3 does not involve x2: singular at (0:0:1)
    with pytest.raises(SingularHypersurface):
        build_context(1, P("x0^3 + x1^3"))


def test_fermat_quartic_smooth(quartic_surface):
    assert quartic_surface.socle_degree == 8
    assert hilbert_function(quartic_surface, 9) == 0
    assert quartic_surface.decomposition(9).dimension == 0


def test_bad_inputs():
    with pytest.raises(NonHomogeneous):
        build_context(2, P("x0^3 + x1^3 + x2^3"))
    with pytest.raises(DegreeTooSmall):
        build_context(1, GradedPoly.zero(3, 0))
    with pytest.raises(DegreeTooSmall):
        build_context(1, GradedPoly.monomial((0, 0, 0), 5))


def test_linear_hypersurface():
    ctx = build_context(1, P("x0 + 2*x1"))
    assert ctx.socle_degree == -3
    assert [hilbert_function(ctx, e) for e in range(3)] == [0, 0, 0]
    assert hilbert_series_oracle(1, 1) == []


def test_hilbert_function_examples(cubic_curve, quartic_surface):
    assert hilbert_function(cubic_curve, 0) == 1
    assert hilbert_function(cubic_curve, 3) == 1
    assert hilbert_function(quartic_surface, 4) == 19
    assert hilbert_function(cubic_curve, 4) == 0


def test_hilbert_series_oracle_examples():
    assert hilbert_series_oracle(1, 3) == [1, 3, 3, 1]
    s = hilbert_series_oracle(2, 4)
    assert s[4] == 19 and s[8] == 1 and len(s) == 9
    assert hilbert_series_oracle(3, 5)[5] == 101


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [2, 3, 4])
def test_hilbert_function_matches_oracles(n, d):
    ctx = build_context(n, fermat(n, d))
    oracle = hilbert_series_oracle(n, d)
    for e in range(ctx.socle_degree + 2):
        hf = hilbert_function(ctx, e)
        assert hf == (oracle[e] if e < len(oracle) else 0)
        assert hf == series_coefficient(n, d, e)


def test_gorenstein_symmetry_random_quartics():
    rng = random.Random(21)
    for _ in range(2):
        ctx = random_smooth_context(2, 4, rng)
        hf = [hilbert_function(ctx, e) for e in range(9)]
        assert hf == hf[::-1] == hilbert_series_oracle(2, 4)


def test_membership_examples(cubic_curve):
    lift = membership_lift(cubic_curve, P("x0^2*x1"))
    assert lift == [P("1/3*x1"), GradedPoly.zero(3, 1), GradedPoly.zero(3, 1)]
    assert membership_lift(cubic_curve, P("x0*x1*x2")) is None
    zero = membership_lift(cubic_curve, GradedPoly.zero(3, 3))
    assert zero is not None and all(b.is_zero() for b in zero)
    assert membership_lift(cubic_curve, P("x0")) is None


def test_canonical_rep_examples(cubic_curve):
    assert canonical_rep(cubic_curve, P("x0^2*x1 + x1^2*x2")).is_zero()
    assert canonical_rep(cubic_curve, P("x0*x1*x2")) == P("x0*x1*x2")
    assert (0, 0, 0) not in cubic_curve.decomposition(3).pivot_monomials


def test_lift_iff_canonical_zero(random_cubic_surface):
    ctx = random_cubic_surface
    rng = random.Random(1)
    for e in range(2, 7):
        for _ in range(10):
            a = random_poly(rng, ctx.nvars, e, 5)
            rep = canonical_rep(ctx, a)
            assert canonical_rep(ctx, rep) == rep
            in_j = a - rep
            lift = membership_lift(ctx, in_j)
            assert lift is not None and combine(ctx, lift) == in_j
            assert (membership_lift(ctx, a) is None) == (not rep.is_zero())


def test_canonical_rep_is_linear(quartic_surface):
    rng = random.Random(2)
    for _ in range(10):
        a = random_poly(rng, 4, 4)
        b = random_poly(rng, 4, 4)
        c = Fraction(rng.randint(-5, 5), 3)
        lhs = canonical_rep(quartic_surface, a.scale(c) + b)
        assert lhs == canonical_rep(quartic_surface, a).scale(c) + canonical_rep(quartic_surface, b)


def test_coset_basis_support(quartic_surface):
    dec = quartic_surface.decomposition(4)
    rng = random.Random(3)
    rep = canonical_rep(quartic_surface, random_poly(rng, 4, 4, 20))
    assert set(rep.terms) <= set(dec.coset_basis)
    assert len(dec.coset_basis) + dec.rref_data.rank == len(monomial_basis(4, 4))


def test_syzygies(cubic_curve):
    syz = cubic_curve.syzygies(4)
    # Koszul relations x_j^2 d_i f - x_i^2 d_j f in degree 4: 3 of them, no others
    assert len(syz) == 3
    for s in syz:
        assert combine(cubic_curve, s).is_zero()
    assert cubic_curve.syzygies(1) == []


def test_context_cache_consistent_across_threads(quartic_surface):
    from concurrent.futures import ThreadPoolExecutor

    ctx = build_context(2, fermat(2, 4))
    with ThreadPoolExecutor(4) as pool:
        dims = list(pool.map(lambda e: hilbert_function(ctx, e), [4, 4, 8, 8, 4, 0]))
    assert dims == [19, 19, 1, 1, 19, 1]


@pytest.mark.slow
def test_random_quintic_threefold_hodge_numbers():
    ctx = random_smooth_context(3, 5, random.Random(1))
    assert ctx.f != fermat(3, 5)
    assert [hilbert_function(ctx, j * 5 - 5) for j in range(1, 5)] == [1, 101, 101, 1]
