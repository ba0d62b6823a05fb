"""(sigma, delta) verification, the mirror derivation and the N-operators."""

import numpy as np
import pytest

from skewcodes import (LinearMap, field, matrix_algebra, n_operator,
                       nilpotency_index, quotient_algebra_yz, restrict_scalars,
                       verify_skew_derivation)
from skewcodes import _gflinalg as la
from skewcodes.errors import AxiomError


def test_presets_build_and_report_nilpotency(all_bundles):
    want = {
        "m2f4-inner": (2, 2),
        "f4c5-group": (4, 4),
        "m2f4-diag": (None, None),
        "fyz-quotient": (2, None),
    }
    for b in all_bundles:
        md, mdp = want[b.name]
        assert b.ctx.m_delta == md, b.name
        assert b.ctx.m_delta_prime == mdp, b.name


def test_delta_prime_is_minus_delta_sigma_inverse(all_bundles):
    for b in all_bundles:
        ctx = b.ctx
        if ctx.sigma_inv is None:
            assert ctx.delta_prime is None
            continue
        expect = -(ctx.delta @ ctx.sigma_inv)
        assert ctx.delta_prime == expect
        # and delta = -delta' sigma, the mirrored identity
        assert (-(ctx.delta_prime @ ctx.sigma)) == ctx.delta


def test_fyz_delta_prime_fixes_y(fyz_quotient):
    ctx = fyz_quotient.ctx
    one, y, z = ctx.algebra.basis()
    assert ctx.delta_prime(y) == y
    assert nilpotency_index(ctx.delta_prime) is None


def test_rejects_non_multiplicative_sigma():
    a = quotient_algebra_yz(field(2))
    one, y, z = a.basis()
    bad = LinearMap.from_images(a, [one, one + y, z])  # sigma(y) has a unit part
    with pytest.raises(AxiomError):
        verify_skew_derivation(a, bad, LinearMap.zero(a))


def test_rejects_broken_derivation():
    a = matrix_algebra(field(2), 2)
    # delta = transpose is additive but fails the twisted Leibniz rule
    images = [a.basis_element([0, 2, 1, 3][i]) for i in range(4)]
    bad = LinearMap.from_images(a, images)
    with pytest.raises(AxiomError):
        verify_skew_derivation(a, LinearMap.identity(a), bad)


def test_n_operator_recursion(all_bundles):
    for b in all_bundles:
        ctx = b.ctx
        spec = ctx.field
        table = ctx.ntable
        table.ensure(6)
        for n in range(6):
            for i in range(n + 2):
                lhs = table.matrix(i, n + 1)
                prev_lo = table.matrix(i - 1, n) if 1 <= i <= n + 1 else None
                prev_hi = table.matrix(i, n) if i <= n else None
                acc = la.zeros((ctx.algebra.dim, ctx.algebra.dim))
                if prev_lo is not None:
                    acc = spec.add_arrays(acc, la.mat_mul(spec, ctx.sigma.matrix, prev_lo))
                if prev_hi is not None:
                    acc = spec.add_arrays(acc, la.mat_mul(spec, ctx.delta.matrix, prev_hi))
                assert np.array_equal(lhs, acc), (b.name, i, n)


def test_n_operator_boundary_cases(all_bundles):
    for b in all_bundles:
        ctx = b.ctx
        spec = ctx.field
        table = ctx.ntable
        table.ensure(5)
        sig_pow = la.eye(ctx.algebra.dim)
        del_pow = la.eye(ctx.algebra.dim)
        for n in range(6):
            assert np.array_equal(table.matrix(n, n), sig_pow), b.name
            assert np.array_equal(table.matrix(0, n), del_pow), b.name
            sig_pow = la.mat_mul(spec, ctx.sigma.matrix, sig_pow)
            del_pow = la.mat_mul(spec, ctx.delta.matrix, del_pow)


def test_n_operator_vanishing_band(series_bundles):
    """N_i^j = 0 once j >= (i+1) m, the pigeonhole bound behind truncation."""
    for b in series_bundles:
        ctx = b.ctx
        m = ctx.m_delta
        table = ctx.ntable
        hi = 3 * m + 2
        table.ensure(hi)
        for i in range(3):
            for j in range((i + 1) * m, hi + 1):
                assert not table.matrix(i, j).any(), (b.name, i, j)


def test_n_operator_helper_matches_table(m2f4_inner):
    ctx = m2f4_inner.ctx
    ctx.ntable.ensure(4)
    for n in range(5):
        for i in range(n + 1):
            assert n_operator(ctx, i, n).matrix is not None
            assert np.array_equal(n_operator(ctx, i, n).matrix,
                                  ctx.ntable.matrix(i, n))


def test_sigma_must_fix_unit():
    a = quotient_algebra_yz(field(2))
    one, y, z = a.basis()
    bad = LinearMap.from_images(a, [one + y, y, z])
    with pytest.raises(AxiomError):
        verify_skew_derivation(a, bad, LinearMap.zero(a))


def test_non_invertible_sigma_is_allowed_without_mirror():
    a = quotient_algebra_yz(field(2))
    one, y, z = a.basis()
    sigma = LinearMap.from_images(a, [one, a.zero, a.zero])  # kills the radical
    ctx = verify_skew_derivation(a, sigma, LinearMap.zero(a))
    assert ctx.sigma_inv is None
    assert ctx.delta_prime is None and ctx.m_delta_prime is None
