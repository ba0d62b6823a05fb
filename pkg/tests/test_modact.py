"""Right module actions on vectors of polynomials, series, Laurent series."""

import random

import numpy as np
import pytest

from skewcodes import SkewPoly, TruncLaurent, TruncSeries
from skewcodes.errors import MixedStructureError
from skewcodes.fields import DTYPE
from skewcodes.modact import (RightModuleSpec, VecLaurent, VecPoly, VecSeries,
                              central_laurent, check_module,
                              flsx_scalar_action, module_verify,
                              natural_module, regular_module,
                              veclaurent_times_ring, veclaurent_times_scalar,
                              veclaurent_times_scalar_direct,
                              vecpoly_times_ring, vecpoly_times_scalar,
                              vecseries_times_ring, vecseries_times_scalar)
from conftest import rand_coords, rand_element


def rand_vecpoly(rng, spec, ctx, maxdeg):
    L = rng.randrange(1, maxdeg + 2)
    return VecPoly(spec, ctx, rand_coords(rng, spec.field.q, (L, spec.n)))


def rand_vecseries(rng, spec, ctx, prec):
    return VecSeries(spec, ctx, prec,
                     rand_coords(rng, spec.field.q, (prec, spec.n)))


def rand_veclaurent(rng, spec, ctx, ord_, length):
    arr = rand_coords(rng, spec.field.q, (length, spec.n))
    arr[0, 0] = 1
    return VecLaurent(spec, ctx, ord_, arr, ord_ + length)


def rand_poly(rng, ctx, maxdeg):
    L = rng.randrange(1, maxdeg + 2)
    return SkewPoly(ctx, rand_coords(rng, ctx.field.q,
                                     (L, ctx.algebra.dim)))


def test_module_verify_accepts_the_shipped_modules(all_bundles, module_a):
    for b in all_bundles:
        assert module_verify(regular_module(b.algebra)).ok, b.name
    assert module_verify(module_a).ok
    assert module_a.n == 4 and module_a.name == "natural"


def test_trivial_action_valid_only_where_basis_products_stay_basis(
        f4c5_group, m2f4_inner):
    """All-identity action: lawful for a group basis, not for matrix units."""
    ag = f4c5_group.algebra
    eye = np.broadcast_to(np.eye(ag.dim, dtype=DTYPE),
                          (ag.dim, ag.dim, ag.dim)).copy()
    assert module_verify(check_module(RightModuleSpec(ag, eye, "trivial"))).ok
    am = m2f4_inner.algebra
    eyem = np.broadcast_to(np.eye(am.dim, dtype=DTYPE),
                           (am.dim, am.dim, am.dim)).copy()
    rep = module_verify(RightModuleSpec(am, eyem, "trivial"))
    assert not rep.ok
    assert any("R(1)" in f for f in rep.failures)
    with pytest.raises(MixedStructureError):
        check_module(RightModuleSpec(am, eyem, "trivial"))


def test_regular_module_reproduces_ring_products(all_bundles):
    """Acting on the regular module is multiplication in the algebra/ring."""
    rng = random.Random(51)
    for b in all_bundles:
        spec = regular_module(b.algebra)
        for _ in range(10):
            u = rand_element(rng, b.algebra)
            a = rand_element(rng, b.algebra)
            assert np.array_equal(spec.act_row(u.coords, a),
                                  (u * a).coords), b.name
        ctx = b.ctx
        for _ in range(10):
            f = rand_poly(rng, ctx, 3)
            g = rand_poly(rng, ctx, 3)
            v = VecPoly(spec, ctx, f.coeffs)
            prod = vecpoly_times_ring(v, g)
            want = (f * g).coeffs
            lead = np.zeros((0, spec.n), dtype=DTYPE) if want.shape[0] == 0 \
                else want
            assert np.array_equal(prod.coeffs[:lead.shape[0]], lead), b.name
            assert not prod.coeffs[lead.shape[0]:].any(), b.name


def test_natural_module_is_row_action_by_parent_matrices(m2f4_inner,
                                                         module_a):
    """Row convention: e_2 E_21 = e_1 and e_1 E_21 = 0."""
    res = m2f4_inner.restriction
    E21 = res.to_restricted(res.parent.basis_element(2))
    e1 = np.zeros(4, dtype=DTYPE)
    e1[0] = 1
    e2 = np.zeros(4, dtype=DTYPE)
    e2[2] = 1
    assert np.array_equal(module_a.act_row(e2, E21), e1)
    assert not module_a.act_row(e1, E21).any()


def test_vecpoly_scalar_action_is_associative(all_bundles):
    rng = random.Random(52)
    for b in all_bundles:
        spec = regular_module(b.algebra)
        for _ in range(15):
            v = rand_vecpoly(rng, spec, b.ctx, 3)
            a = rand_element(rng, b.algebra)
            c = rand_element(rng, b.algebra)
            lhs = vecpoly_times_scalar(vecpoly_times_scalar(v, a), c)
            rhs = vecpoly_times_scalar(v, a * c)
            assert lhs == rhs, b.name


def test_vecpoly_ring_action_is_associative(all_bundles):
    rng = random.Random(53)
    for b in all_bundles:
        spec = regular_module(b.algebra)
        ctx = b.ctx
        for _ in range(15):
            v = rand_vecpoly(rng, spec, ctx, 3)
            f = rand_poly(rng, ctx, 3)
            g = rand_poly(rng, ctx, 3)
            lhs = vecpoly_times_ring(vecpoly_times_ring(v, f), g)
            rhs = vecpoly_times_ring(v, f * g)
            assert lhs == rhs, b.name


def test_x_acts_as_shift_on_vecpoly(all_bundles):
    rng = random.Random(54)
    for b in all_bundles:
        spec = regular_module(b.algebra)
        v = rand_vecpoly(rng, spec, b.ctx, 3)
        moved = vecpoly_times_ring(v, SkewPoly.x_power(b.ctx))
        assert moved == v.shift(1), b.name


def test_vecseries_scalar_matches_constant_series(series_bundles):
    rng = random.Random(55)
    for b in series_bundles:
        spec = regular_module(b.algebra)
        ctx = b.ctx
        for _ in range(10):
            s = rand_vecseries(rng, spec, ctx, 12)
            a = rand_element(rng, b.algebra)
            direct = vecseries_times_scalar(s, a)
            assert direct.prec == 12 // ctx.m_delta
            const = TruncSeries.from_elements(ctx, [a], direct.prec)
            composed = vecseries_times_ring(s, const)
            assert direct == composed, b.name


def test_vecseries_ring_action_is_associative(series_bundles):
    rng = random.Random(56)
    for b in series_bundles:
        spec = regular_module(b.algebra)
        ctx = b.ctx
        m = ctx.m_delta
        N = 3
        for _ in range(10):
            s = rand_vecseries(rng, spec, ctx, N * m * m)
            f = TruncSeries(ctx, N * m,
                            rand_coords(rng, ctx.field.q,
                                        (N * m, ctx.algebra.dim)))
            g = TruncSeries(ctx, N,
                            rand_coords(rng, ctx.field.q,
                                        (N, ctx.algebra.dim)))
            lhs = vecseries_times_ring(vecseries_times_ring(s, f), g)
            from skewcodes.skewseries import series_mul
            rhs = vecseries_times_ring(s, series_mul(f, g))
            assert lhs.agrees_with(rhs), b.name
            assert min(lhs.prec, rhs.prec) == N


def test_veclaurent_scalar_direct_equals_composed(laurent_bundles):
    """Closed chain expansion vs series shuttle: values and windows."""
    rng = random.Random(57)
    for b in laurent_bundles:
        spec = regular_module(b.algebra)
        ctx = b.ctx
        for _ in range(15):
            s = rand_veclaurent(rng, spec, ctx, rng.randrange(-3, 2), 10)
            a = rand_element(rng, b.algebra)
            composed = veclaurent_times_scalar(s, a)
            direct = veclaurent_times_scalar_direct(s, a)
            assert composed.ord == direct.ord, b.name
            assert composed.end == direct.end, b.name
            assert np.array_equal(composed.coeffs, direct.coeffs), b.name


def test_veclaurent_scalar_window_anchors(m2f4_inner):
    """Window accounting stays put: two pinned cases."""
    rng = random.Random(58)
    spec = regular_module(m2f4_inner.algebra)
    ctx = m2f4_inner.ctx
    a = m2f4_inner.algebra.basis_element(3)
    s = rand_veclaurent(rng, spec, ctx, 0, 8)
    assert veclaurent_times_scalar(s, a).end == 4
    t = rand_veclaurent(rng, spec, ctx, -2, 10)
    assert veclaurent_times_scalar(t, a).end == 3


def test_veclaurent_ring_action_is_associative(laurent_bundles):
    from skewcodes.skewlaurent import laurent_mul
    sizes = {"m2f4-inner": (20, 8), "f4c5-group": (36, 3)}
    rng = random.Random(59)
    for b in laurent_bundles:
        L, reps = sizes[b.name]
        spec = regular_module(b.algebra)
        ctx = b.ctx
        for _ in range(reps):
            s = rand_veclaurent(rng, spec, ctx, -1, L)
            f = TruncLaurent(ctx, 0,
                             rand_coords(rng, ctx.field.q,
                                         (L, ctx.algebra.dim)), L)
            g = TruncLaurent(ctx, 0,
                             rand_coords(rng, ctx.field.q,
                                         (L, ctx.algebra.dim)), L)
            lhs = veclaurent_times_ring(veclaurent_times_ring(s, f), g)
            rhs = veclaurent_times_ring(s, laurent_mul(f, g))
            assert lhs.agrees_with(rhs), b.name


def test_central_series_acts_by_plain_convolution(laurent_bundles):
    """F((X)) scalars: flsx convolution agrees with the generic ring path
    and keeps the wider window."""
    rng = random.Random(60)
    for b in laurent_bundles:
        spec = regular_module(b.algebra)
        ctx = b.ctx
        for _ in range(10):
            s = rand_veclaurent(rng, spec, ctx, -2, 10)
            coeffs = [rng.randrange(ctx.field.q) for _ in range(4)]
            coeffs[0] = 1
            f_ord = rng.randrange(-2, 2)
            by_conv = flsx_scalar_action(s, f_ord, coeffs, None)
            assert by_conv.end == s.end + f_ord
            emb = central_laurent(ctx, f_ord, coeffs, None)
            by_ring = veclaurent_times_ring(s, emb)
            assert by_conv.end >= by_ring.end
            assert by_conv.agrees_with(by_ring), b.name


def test_central_constants_commute_and_embedding_is_commutative(
        laurent_bundles):
    """Constants c 1_A commute with everything; the embedded copy of
    F((X)) is a commutative subring (X itself does not commute with A)."""
    from skewcodes.skewlaurent import laurent_mul
    rng = random.Random(61)
    for b in laurent_bundles:
        ctx = b.ctx
        one = central_laurent(ctx, 0, [1], None)
        arr = rand_coords(rng, ctx.field.q, (10, ctx.algebra.dim))
        arr[0, 0] = 1
        t = TruncLaurent(ctx, -2, arr, 8)
        assert laurent_mul(one, t).agrees_with(laurent_mul(t, one)), b.name
        c = central_laurent(ctx, -1, [1, 0, 1, 1], None)
        d = central_laurent(ctx, 2, [1, 1], None)
        cd = laurent_mul(c, d)
        assert cd == laurent_mul(d, c), b.name
        assert cd == central_laurent(ctx, 1, [1, 1, 1, 0, 1], None), b.name


def test_scalar_after_ring_equals_ring_after_scalar(laurent_bundles):
    """(s f) a agrees with s (f a)."""
    from skewcodes.skewlaurent import laurent_mul
    rng = random.Random(62)
    for b in laurent_bundles:
        spec = regular_module(b.algebra)
        ctx = b.ctx
        for _ in range(8):
            s = rand_veclaurent(rng, spec, ctx, 0, 16)
            arr = rand_coords(rng, ctx.field.q, (16, ctx.algebra.dim))
            arr[0, 0] = 1
            f = TruncLaurent(ctx, 0, arr, 16)
            a = rand_element(rng, b.algebra)
            const = TruncLaurent.from_elements(ctx, 0, [a], None)
            lhs = veclaurent_times_scalar(veclaurent_times_ring(s, f), a)
            rhs = veclaurent_times_ring(s, laurent_mul(f, const))
            assert lhs.agrees_with(rhs), b.name


def test_mixed_structures_rejected(m2f4_inner, f4c5_group):
    spec_m = regular_module(m2f4_inner.algebra)
    v = VecPoly.unit_row(spec_m, m2f4_inner.ctx, 0)
    with pytest.raises(MixedStructureError):
        vecpoly_times_scalar(v, f4c5_group.algebra.one)
    g = SkewPoly.one(f4c5_group.ctx)
    with pytest.raises(MixedStructureError):
        vecpoly_times_ring(v, g)
