"""Truncated skew power series and the Ore denominator-set diagnostics.

A TruncSeries holds the class of a series modulo X^N (N = prec).  The ring
exists iff delta is nilpotent; products then reduce to truncated polynomial
products because the left factor only needs q + 1 = N * m_delta coefficients:
N_i^q vanishes once q >= (i + 1) * m_delta (i applications of sigma split the
delta-runs into at most i + 1 blocks, each shorter than m_delta).

The denominator-set diagnostics work coefficientwise:

    f X^m = X s  <=>  0 = delta(s_0),
                      0 = sigma(s_{j-1}) + delta(s_j)        (0 < j < m),
                      f_{j-m} = sigma(s_{j-1}) + delta(s_j)  (j >= m)

and X s = 0 for a finitely supported s of support < N adds the closing
equation sigma(s_{N-1}) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _gflinalg as la
from .algebra import AlgebraElement
from .errors import MixedStructureError, PrecisionError, RingUnavailableError
from .fields import DTYPE
from .skewmap import SkewDerivation
from .skewpoly import SkewPoly, _pad, format_poly_arr, mul_arrays, xn_arrays


def require_series_ring(ctx: SkewDerivation) -> int:
    """Return m_delta, or raise if the series ring does not exist."""
    if ctx.m_delta is None:
        raise RingUnavailableError(
            "series ring unavailable: delta is not nilpotent")
    return ctx.m_delta


def q_bound(ctx: SkewDerivation, n: int) -> int:
    """Left-factor degree bound: coefficient n of s t only sees s_0..s_q."""
    m = require_series_ring(ctx)
    return (n + 1) * m - 1


class TruncSeries:
    """Class of a skew power series modulo X^prec."""

    __slots__ = ("ctx", "prec", "coeffs")

    def __init__(self, ctx: SkewDerivation, prec: int, coeffs: np.ndarray):
        require_series_ring(ctx)
        if prec < 0:
            raise ValueError("precision must be >= 0")
        coeffs = np.asarray(coeffs, dtype=DTYPE)
        if coeffs.shape != (prec, ctx.algebra.dim):
            raise ValueError(f"coefficient block must be {prec} x {ctx.algebra.dim}")
        self.ctx = ctx
        self.prec = prec
        self.coeffs = coeffs
        self.coeffs.flags.writeable = False

    @classmethod
    def from_elements(cls, ctx: SkewDerivation, elems, prec: Optional[int] = None) -> "TruncSeries":
        elems = list(elems)
        if prec is None:
            prec = len(elems)
        arr = la.zeros((prec, ctx.algebra.dim))
        for i, e in enumerate(elems[:prec]):
            if e.algebra != ctx.algebra:
                raise MixedStructureError("coefficient from a different algebra")
            arr[i] = e.coords
        return cls(ctx, prec, arr)

    @classmethod
    def from_poly(cls, f: SkewPoly, prec: int) -> "TruncSeries":
        return cls(f.ctx, prec, _pad(f.coeffs, prec))

    def to_poly(self) -> SkewPoly:
        """Forget the O(X^prec) tail, keeping the stored coefficients."""
        return SkewPoly(self.ctx, self.coeffs)

    def coeff(self, i: int) -> AlgebraElement:
        if not 0 <= i < self.prec:
            raise PrecisionError(f"coefficient {i} outside stored window [0, {self.prec})")
        return AlgebraElement(self.ctx.algebra, self.coeffs[i].copy())

    def truncate(self, prec: int) -> "TruncSeries":
        if prec > self.prec:
            raise PrecisionError(f"cannot extend precision {self.prec} to {prec}")
        return TruncSeries(self.ctx, prec, self.coeffs[:prec])

    def _check(self, other: "TruncSeries") -> None:
        if self.ctx != other.ctx:
            raise MixedStructureError("series from different contexts")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        n = min(self.prec, other.prec)
        return TruncSeries(self.ctx, n,
                           self.ctx.field.add_arrays(self.coeffs[:n], other.coeffs[:n]))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        n = min(self.prec, other.prec)
        f = self.ctx.field
        return TruncSeries(self.ctx, n,
                           f.add_arrays(self.coeffs[:n], f.neg_arrays(other.coeffs[:n])))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.ctx, self.prec, self.ctx.field.neg_arrays(self.coeffs))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        return series_mul(self, other)

    def shift(self, n: int) -> "TruncSeries":
        """Right multiplication by X^n; the window end moves up with it."""
        out = la.zeros((self.prec + n, self.ctx.algebra.dim))
        out[n:] = self.coeffs
        return TruncSeries(self.ctx, self.prec + n, out)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def agrees_with(self, other: "TruncSeries") -> bool:
        """Equality on the common window."""
        self._check(other)
        n = min(self.prec, other.prec)
        return bool(np.array_equal(self.coeffs[:n], other.coeffs[:n]))

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncSeries) and self.ctx == other.ctx
                and self.prec == other.prec
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.ctx, self.prec, self.coeffs.tobytes()))

    def __str__(self) -> str:
        body = format_poly_arr(self.ctx.algebra, self.coeffs)
        return f"{body} + O(X^{self.prec})"

    def __repr__(self) -> str:
        return f"<trunc series {self}>"


def series_mul(s: TruncSeries, t: TruncSeries, prec: Optional[int] = None) -> TruncSeries:
    """Product truncated to prec coefficients (largest supported by default).

    Needs s.prec >= prec * m_delta and t.prec >= prec.
    """
    s._check(t)
    ctx = s.ctx
    m = require_series_ring(ctx)
    n_max = min(t.prec, s.prec // m)
    if prec is None:
        prec = n_max
    elif prec > n_max:
        raise PrecisionError(
            f"requested {prec} output coefficients; operands support {n_max} "
            f"(left has {s.prec}, needs {prec * m}; right has {t.prec})")
    out = mul_arrays(ctx, s.coeffs[: prec * m], t.coeffs[:prec], out_limit=prec)
    return TruncSeries(ctx, prec, _pad(out, prec))


def series_times_scalar(s: TruncSeries, a: AlgebraElement,
                        prec: Optional[int] = None) -> TruncSeries:
    """s * a for a scalar a: coefficient i is sum_{j=i}^{(i+1)m-1} s_j N_i^j(a)."""
    ctx = s.ctx
    m = require_series_ring(ctx)
    if a.algebra != ctx.algebra:
        raise MixedStructureError("scalar from a different algebra")
    n_max = s.prec // m
    if prec is None:
        prec = n_max
    elif prec > n_max:
        raise PrecisionError(
            f"requested {prec} output coefficients; series precision {s.prec} "
            f"supports {n_max} (needs {prec * m})")
    spec = ctx.field
    table = ctx.ntable
    if prec:
        table.ensure((prec * m) - 1)
    out = la.zeros((prec, ctx.algebra.dim))
    for i in range(prec):
        acc = la.zeros(ctx.algebra.dim)
        for j in range(i, (i + 1) * m):
            b = la.mat_vec(spec, table.matrix(i, j), a.coords)
            if b.any() and s.coeffs[j].any():
                acc = spec.add_arrays(acc, ctx.algebra.mul_coords(s.coeffs[j], b))
        out[i] = acc
    return TruncSeries(ctx, prec, out)


def x_times_series(s: TruncSeries) -> TruncSeries:
    """X * s: coefficient j becomes sigma(s_{j-1}) + delta(s_j); window kept."""
    ctx = s.ctx
    spec = ctx.field
    out = la.zeros((s.prec, ctx.algebra.dim))
    out[1:] = la.mat_mul(spec, s.coeffs[:-1], ctx.sigma.matrix.T)
    out = spec.add_arrays(out, la.mat_mul(spec, s.coeffs, ctx.delta.matrix.T))
    return TruncSeries(ctx, s.prec, out)


def xn_times_series(s: TruncSeries, n: int) -> TruncSeries:
    """X^n * s via the N-operator expansion; window kept."""
    if n < 0:
        raise ValueError("xn_times_series needs n >= 0")
    out = xn_arrays(s.ctx, s.coeffs, n, out_limit=s.prec)
    return TruncSeries(s.ctx, s.prec, _pad(out, s.prec))


# ---- Ore denominator-set machinery ----

@dataclass(frozen=True)
class OreWitness:
    """Left Ore relation X^n f = g X^k."""

    n: int
    g: SkewPoly
    k: int = 1

    def verify(self, f: SkewPoly) -> bool:
        from .skewpoly import xn_times
        return xn_times(f, self.n) == self.g.shift(self.k)


def _element_chain_length(ctx: SkewDerivation, coords: np.ndarray) -> int:
    """Minimal n with delta^n applied to the element zero; raises if none."""
    cur = coords
    for n in range(ctx.algebra.dim + 1):
        if not cur.any():
            return n
        cur = la.mat_vec(ctx.field, ctx.delta.matrix, cur)
    raise RingUnavailableError(
        "no left Ore witness: delta chain on the constant term never vanishes")


def ore_left(f: SkewPoly, k: int = 1) -> OreWitness:
    """Witness X^n f = g X^k with n minimal at each of the k steps.

    Writing f = f_0 + h X, take the minimal n with delta^n(f_0) = 0; then
    X^n f = (X^n h + sum_{j=1}^{n} N_j^n(f_0) X^{j-1}) X.
    """
    if k < 1:
        raise ValueError("ore_left needs k >= 1")
    ctx = f.ctx
    table = ctx.ntable
    total_n = 0
    cur = f
    for _ in range(k):
        if cur.is_zero():
            g = cur
            n = 0
        else:
            f0 = cur.coeffs[0]
            n = _element_chain_length(ctx, f0)
            h = SkewPoly(ctx, cur.coeffs[1:])
            from .skewpoly import xn_times
            g = xn_times(h, n)
            if f0.any() and n:
                table.ensure(n)
                extra = la.zeros((n, ctx.algebra.dim))
                for j in range(1, n + 1):
                    extra[j - 1] = la.mat_vec(ctx.field, table.matrix(j, n), f0)
                g = g + SkewPoly(ctx, extra)
        total_n += n
        cur = g
    return OreWitness(total_n, cur, k)


@dataclass(frozen=True)
class PermutabilityWitness:
    """Solution of f X^m = X s to the stated precision."""

    m: int
    s: TruncSeries


def _chain_system(ctx: SkewDerivation, n_eqs: int, n_unknowns: int) -> np.ndarray:
    """Block matrix of s -> (sigma(s_{j-1}) + delta(s_j))_{j < n_eqs}."""
    r = ctx.algebra.dim
    m = la.zeros((n_eqs * r, n_unknowns * r))
    for j in range(n_eqs):
        if j < n_unknowns:
            m[j * r:(j + 1) * r, j * r:(j + 1) * r] = ctx.delta.matrix
        if 0 < j <= n_unknowns:
            m[j * r:(j + 1) * r, (j - 1) * r: j * r] = ctx.sigma.matrix
    return m


def solve_right_permutable(f: TruncSeries, n_max: int,
                           prec: Optional[int] = None) -> Optional[PermutabilityWitness]:
    """Smallest m <= n_max with f X^m = X s solvable to the window, if any.

    The solution is verified coefficientwise before being returned.
    """
    ctx = f.ctx
    n = f.prec if prec is None else prec
    if n > f.prec:
        raise PrecisionError(f"requested window {n} exceeds stored precision {f.prec}")
    if n == 0:
        return PermutabilityWitness(0, TruncSeries(ctx, 0, la.zeros((0, ctx.algebra.dim))))
    r = ctx.algebra.dim
    system = _chain_system(ctx, n, n)
    for m in range(n_max + 1):
        rhs = la.zeros(n * r)
        for j in range(m, n):
            rhs[j * r:(j + 1) * r] = f.coeffs[j - m]
        x = la.solve(ctx.field, system, rhs)
        if x is None:
            continue
        s = TruncSeries(ctx, n, x.reshape(n, r))
        shifted_f = TruncSeries(ctx, n, _pad_shift(f.coeffs, m, n))
        if x_times_series(s).agrees_with(shifted_f):
            return PermutabilityWitness(m, s)
    return None


def _pad_shift(coeffs: np.ndarray, m: int, n: int) -> np.ndarray:
    out = la.zeros((n, coeffs.shape[1]))
    upto = min(n - m, coeffs.shape[0])
    if upto > 0:
        out[m: m + upto] = coeffs[:upto]
    return out


def kernel_left_x(ctx: SkewDerivation, n: int) -> list[TruncSeries]:
    """Basis of finitely supported s (support < n) with X s = 0 exactly.

    Includes the closing equation sigma(s_{n-1}) = 0, so every basis vector is
    an honest witness against right reversibility; empty basis means no such
    witness exists at this support size.
    """
    require_series_ring(ctx)
    if n == 0:
        return []
    system = _chain_system(ctx, n + 1, n)
    basis = la.nullspace(ctx.field, system)
    r = ctx.algebra.dim
    return [TruncSeries(ctx, n, v.reshape(n, r)) for v in basis]
