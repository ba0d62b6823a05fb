"""Truncated skew power series: windows, products, Ore witnesses."""

import random

import numpy as np
import pytest

from skewcodes import SkewPoly, TruncSeries
from skewcodes.errors import (MixedStructureError, PrecisionError,
                              RingUnavailableError)
from skewcodes.skewseries import (kernel_left_x, ore_left, q_bound,
                                  require_series_ring, series_mul,
                                  series_times_scalar, solve_right_permutable,
                                  x_times_series, xn_times_series)
from conftest import rand_coords, rand_element


def rand_series(rng, ctx, prec):
    return TruncSeries(ctx, prec,
                       rand_coords(rng, ctx.field.q, (prec, ctx.algebra.dim)))


def test_series_ring_availability(series_bundles, m2f4_diag):
    for b in series_bundles:
        require_series_ring(b.ctx)
        assert b.ctx.m_delta is not None
    with pytest.raises(RingUnavailableError, match="nilpotent"):
        require_series_ring(m2f4_diag.ctx)
    with pytest.raises(RingUnavailableError):
        TruncSeries.from_elements(m2f4_diag.ctx, [m2f4_diag.algebra.one], 3)
    with pytest.raises(RingUnavailableError):
        kernel_left_x(m2f4_diag.ctx, 2)


def test_q_bound_is_linear_in_window(series_bundles):
    for b in series_bundles:
        m = b.ctx.m_delta
        for n in range(6):
            assert q_bound(b.ctx, n) == (n + 1) * m - 1, b.name


def test_q_independence_of_left_truncation(series_bundles):
    """Extending the left operand past q_bound never changes the product."""
    rng = random.Random(31)
    N = 8
    for b in series_bundles:
        ctx = b.ctx
        q = q_bound(ctx, N)
        for _ in range(25):
            s_long = rand_series(rng, ctx, q + 5)
            s_short = s_long.truncate(q)
            t_long = rand_series(rng, ctx, N + 5)
            t_short = t_long.truncate(N)
            p1 = series_mul(s_short, t_short, prec=N)
            p2 = series_mul(s_long, t_long, prec=N)
            assert p1.prec == N == p2.prec
            assert np.array_equal(p1.coeffs, p2.coeffs), b.name


def test_truncated_associativity(series_bundles):
    """(st)u = s(tu) on the window both association orders reach."""
    rng = random.Random(32)
    N = 4
    for b in series_bundles:
        ctx = b.ctx
        m = ctx.m_delta
        for _ in range(20):
            s = rand_series(rng, ctx, N * m * m)
            t = rand_series(rng, ctx, N * m)
            u = rand_series(rng, ctx, N)
            left = (s * t) * u
            right = s * (t * u)
            assert left.prec == N == right.prec, b.name
            assert left == right, b.name


def test_mul_window_accounting(m2f4_inner):
    ctx = m2f4_inner.ctx
    rng = random.Random(33)
    s = rand_series(rng, ctx, 12)
    t = rand_series(rng, ctx, 9)
    assert series_mul(s, t).prec == min(9, 12 // ctx.m_delta)
    assert series_mul(s, t, prec=4).prec == 4
    with pytest.raises(PrecisionError):
        series_mul(s, t, prec=7)
    with pytest.raises(PrecisionError):
        s.truncate(13)
    with pytest.raises(ValueError):
        s.coeff(12)


def test_mixed_context_product_rejected(m2f4_inner, f4c5_group):
    s = TruncSeries.from_elements(m2f4_inner.ctx, [m2f4_inner.algebra.one], 4)
    t = TruncSeries.from_elements(f4c5_group.ctx, [f4c5_group.algebra.one], 4)
    with pytest.raises(MixedStructureError):
        series_mul(s, t)


def test_scalar_product_matches_constant_series(series_bundles):
    rng = random.Random(34)
    for b in series_bundles:
        ctx = b.ctx
        for _ in range(20):
            s = rand_series(rng, ctx, 12)
            a = rand_element(rng, ctx.algebra)
            direct = series_times_scalar(s, a)
            const = TruncSeries.from_elements(ctx, [a], direct.prec)
            assert direct == series_mul(s, const), b.name


def test_x_times_matches_polynomial_layer(series_bundles):
    """Left multiplication by X agrees with the polynomial commutation rule."""
    rng = random.Random(35)
    from skewcodes import xn_times
    for b in series_bundles:
        ctx = b.ctx
        for n in range(4):
            L = rng.randrange(1, 5)
            f = SkewPoly(ctx, rand_coords(rng, ctx.field.q,
                                          (L, ctx.algebra.dim)))
            prec = L + n + 2
            s = TruncSeries.from_poly(f, prec)
            via_series = xn_times_series(s, n)
            via_poly = TruncSeries.from_poly(xn_times(f, n), prec)
            assert via_series.agrees_with(via_poly), b.name


def test_xn_times_equals_iterated(series_bundles):
    rng = random.Random(36)
    for b in series_bundles:
        s = rand_series(rng, b.ctx, 10)
        step = s
        for n in range(4):
            direct = xn_times_series(s, n)
            assert direct.prec == step.prec
            assert np.array_equal(direct.coeffs, step.coeffs), b.name
            step = x_times_series(step)


def test_shift_is_right_x_power(series_bundles):
    """shift(n) appends n zero coefficients below: s X^n."""
    rng = random.Random(37)
    for b in series_bundles:
        s = rand_series(rng, b.ctx, 6)
        sh = s.shift(3)
        assert sh.prec == 9
        assert not np.any(sh.coeffs[:3])
        assert np.array_equal(sh.coeffs[3:], s.coeffs)


def test_ore_left_witness_verifies(series_bundles):
    """X^n f = g X^k with n minimal for the constant-term chain."""
    rng = random.Random(38)
    for b in series_bundles:
        ctx = b.ctx
        for _ in range(40):
            L = rng.randrange(1, 6)
            f = SkewPoly(ctx, rand_coords(rng, ctx.field.q,
                                          (L, ctx.algebra.dim)))
            w = ore_left(f)
            assert w.k == 1
            assert w.verify(f), b.name
            chain = f.coeff(0)
            for _ in range(w.n):
                prev = chain
                chain = ctx.delta(chain)
            assert chain.is_zero()
            if w.n > 0:
                assert not prev.is_zero()
        f = SkewPoly(ctx, rand_coords(rng, ctx.field.q,
                                      (3, ctx.algebra.dim)))
        w2 = ore_left(f, k=2)
        assert w2.k == 2 and w2.verify(f), b.name


def test_ore_left_refused_when_chain_never_vanishes(m2f4_diag):
    """delta fixes diag(0,a), so no power of X clears that constant term."""
    a = m2f4_diag.algebra
    eigen = a.basis_element(7)
    assert m2f4_diag.ctx.delta(eigen) == eigen
    f = SkewPoly.constant(m2f4_diag.ctx, eigen)
    with pytest.raises(RingUnavailableError, match="chain"):
        ore_left(f)
    ok = SkewPoly.constant(m2f4_diag.ctx, a.basis_element(0))
    w = ore_left(ok)
    assert w.n == 1 and w.verify(ok)


def test_right_permutability_witness(series_bundles):
    """f X^m = X s is solvable, and the witness checks coefficientwise."""
    rng = random.Random(39)
    for b in series_bundles:
        ctx = b.ctx
        for _ in range(15):
            f = rand_series(rng, ctx, 8)
            w = solve_right_permutable(f, 6)
            assert w is not None, b.name
            lhs = f.shift(w.m)
            rhs = x_times_series(w.s)
            n = min(lhs.prec, rhs.prec)
            assert n > 0
            assert lhs.agrees_with(rhs), b.name


def test_x_has_no_left_kernel_on_series(series_bundles):
    for b in series_bundles:
        for n in range(1, 5):
            assert kernel_left_x(b.ctx, n) == [], b.name
