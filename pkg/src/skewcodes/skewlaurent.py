"""Truncated skew Laurent series.

The Laurent ring A((X; sigma, delta)) exists iff sigma is invertible and both
delta and delta' = -delta o sigma^{-1} are nilpotent.  Then with m' the
nilpotency index of delta' and sigma' = sigma^{-1}:

    X^{-1} s = sum_{k=0}^{m'-1} sigma' delta'^k(s) X^{-1-k}

(the k = m' term vanishes), and right multiplication by X^l is a plain shift
for every integer l.

A TruncLaurent stores (ord, coeffs, end): the series is known exactly modulo
X^end, coefficients live on exponents [ord, ord + len(coeffs)), and the slots
from there up to end are known zeros.  end = None means the element is exact
(a Laurent polynomial).  Every operation returns the largest window its
inputs support: X^{-1} maps window [o, e) to [o - m', e - m'), left
multiplication by X^n and shifts preserve window length, and products use
N_out = min(N_right, floor(N_left / m_delta)) on the series parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _gflinalg as la
from .algebra import AlgebraElement
from .errors import MixedStructureError, RingUnavailableError
from .fields import DTYPE
from .skewmap import SkewDerivation
from .skewpoly import SkewPoly, _trim, format_poly_arr, mul_arrays, xn_arrays
from .skewseries import TruncSeries


# ---- availability report ----

@dataclass(frozen=True)
class LaurentAvailability:
    series: bool
    laurent: bool
    sigma_invertible: bool
    m_delta: Optional[int]
    m_delta_prime: Optional[int]
    series_witness: Optional[str]
    laurent_witness: Optional[str]

    def lines(self) -> list[str]:
        out = ["polynomials: yes"]
        if self.series:
            out.append(f"series: yes (m_delta = {self.m_delta})")
        else:
            out.append(f"series: no ({self.series_witness})")
        if self.laurent:
            out.append(f"laurent: yes (m_delta' = {self.m_delta_prime})")
        else:
            out.append(f"laurent: no ({self.laurent_witness})")
        return out


def _non_nilpotent_witness(ctx: SkewDerivation, mat: np.ndarray, name: str) -> str:
    a = ctx.algebra
    r = a.dim
    full = la.mat_pow(ctx.field, mat, r)
    for j in range(r):
        col = la.mat_vec(ctx.field, full, la.eye(r)[j])
        if col.any():
            img = la.mat_vec(ctx.field, mat, la.eye(r)[j])
            lbl = a.labels[j]
            if np.array_equal(img, la.eye(r)[j]):
                return f"{name}({lbl}) = {lbl}"
            return f"{name}^{r}({lbl}) = {a.format_coords(col)} != 0"
    raise AssertionError("witness requested for a nilpotent map")


def laurent_ring_exists(ctx: SkewDerivation) -> LaurentAvailability:
    """Existence report for the polynomial, series and Laurent rings."""
    series = ctx.m_delta is not None
    s_wit = None if series else _non_nilpotent_witness(ctx, ctx.delta.matrix, "delta")
    if ctx.sigma_inv is None:
        return LaurentAvailability(series, False, False, ctx.m_delta, None,
                                   s_wit, "sigma is not invertible")
    l_wit = None
    laurent = series and ctx.m_delta_prime is not None
    if not series:
        l_wit = s_wit
    elif ctx.m_delta_prime is None:
        l_wit = _non_nilpotent_witness(ctx, ctx.delta_prime.matrix, "delta'")
    return LaurentAvailability(series, laurent, True, ctx.m_delta,
                               ctx.m_delta_prime, s_wit, l_wit)


def require_laurent_ring(ctx: SkewDerivation) -> int:
    """Return m_delta_prime, or raise if the Laurent ring does not exist."""
    avail = laurent_ring_exists(ctx)
    if not avail.laurent:
        raise RingUnavailableError(f"laurent ring unavailable: {avail.laurent_witness}")
    return ctx.m_delta_prime


# ---- the truncated Laurent class ----

_WINDOW_DEFAULT = object()


def _min_end(*ends):
    finite = [e for e in ends if e is not None]
    return min(finite) if finite else None


class TruncLaurent:
    """Class of a skew Laurent series modulo X^end (end = None: exact)."""

    __slots__ = ("ctx", "ord", "coeffs", "end")

    def __init__(self, ctx: SkewDerivation, ord_: int, coeffs: np.ndarray,
                 end: Optional[int]):
        require_laurent_ring(ctx)
        coeffs = np.asarray(coeffs, dtype=DTYPE)
        if coeffs.ndim != 2 or coeffs.shape[1] != ctx.algebra.dim:
            raise ValueError(f"coefficient block must be L x {ctx.algebra.dim}")
        # strip leading zeros (raising ord) and trailing zeros (end unchanged)
        lead = 0
        while lead < coeffs.shape[0] and not coeffs[lead].any():
            lead += 1
        ord_ += lead
        coeffs = _trim(coeffs[lead:])
        if coeffs.shape[0] == 0:
            ord_ = end if end is not None else 0
        elif end is not None and end < ord_ + coeffs.shape[0]:
            raise ValueError("window end precedes the stored coefficients")
        self.ctx = ctx
        self.ord = ord_
        self.coeffs = coeffs.copy()
        self.coeffs.flags.writeable = False
        self.end = end

    # ---- constructors and views ----

    @classmethod
    def from_series(cls, s: TruncSeries) -> "TruncLaurent":
        return cls(s.ctx, 0, s.coeffs, s.prec)

    @classmethod
    def from_poly(cls, f: SkewPoly) -> "TruncLaurent":
        return cls(f.ctx, 0, f.coeffs, None)

    @classmethod
    def from_elements(cls, ctx: SkewDerivation, ord_: int, elems,
                      end: Optional[int] = _WINDOW_DEFAULT) -> "TruncLaurent":
        """end omitted: window covering the given coefficients; end=None: exact."""
        elems = list(elems)
        arr = la.zeros((len(elems), ctx.algebra.dim))
        for i, e in enumerate(elems):
            if e.algebra != ctx.algebra:
                raise MixedStructureError("coefficient from a different algebra")
            arr[i] = e.coords
        if end is _WINDOW_DEFAULT:
            end = ord_ + len(elems)
        return cls(ctx, ord_, arr, end)

    @classmethod
    def exact_zero(cls, ctx: SkewDerivation) -> "TruncLaurent":
        return cls(ctx, 0, la.zeros((0, ctx.algebra.dim)), None)

    def to_series(self, prec: Optional[int] = None) -> TruncSeries:
        """View as a power series; needs ord >= 0 (zeros pad below ord)."""
        if self.coeffs.shape[0] and self.ord < 0:
            raise ValueError(f"order {self.ord} < 0: not a power series")
        if prec is None:
            prec = self.end if self.end is not None else max(self.support_end, 0)
        if self.end is not None and prec > self.end:
            raise ValueError(f"requested precision {prec} beyond window end {self.end}")
        arr = la.zeros((prec, self.ctx.algebra.dim))
        for i in range(self.coeffs.shape[0]):
            e = self.ord + i
            if 0 <= e < prec:
                arr[e] = self.coeffs[i]
        return TruncSeries(self.ctx, prec, arr)

    @property
    def support_end(self) -> int:
        """One past the largest stored exponent."""
        return self.ord + self.coeffs.shape[0]

    def coeff(self, e: int) -> AlgebraElement:
        if self.end is not None and e >= self.end:
            raise ValueError(f"coefficient {e} outside window (end {self.end})")
        if self.ord <= e < self.support_end:
            return AlgebraElement(self.ctx.algebra, self.coeffs[e - self.ord].copy())
        return self.ctx.algebra.zero

    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def shift(self, n: int) -> "TruncLaurent":
        """Right multiplication by X^n, n any integer: a plain shift."""
        return TruncLaurent(self.ctx, self.ord + n, self.coeffs,
                            None if self.end is None else self.end + n)

    def _check(self, other: "TruncLaurent") -> None:
        if self.ctx != other.ctx:
            raise MixedStructureError("laurent series from different contexts")

    def _window_arr(self, lo: int, hi: int) -> np.ndarray:
        """Stored coefficients on exponents [lo, hi), zeros where unstored."""
        out = la.zeros((hi - lo, self.ctx.algebra.dim))
        a0 = max(lo, self.ord)
        a1 = min(hi, self.support_end)
        if a1 > a0:
            out[a0 - lo: a1 - lo] = self.coeffs[a0 - self.ord: a1 - self.ord]
        return out

    def __add__(self, other: "TruncLaurent") -> "TruncLaurent":
        self._check(other)
        end = _min_end(self.end, other.end)
        lo = min(self.ord, other.ord)
        hi = max(self.support_end, other.support_end)
        if end is not None:
            hi = min(hi, end)
        hi = max(hi, lo)
        arr = self.ctx.field.add_arrays(self._window_arr(lo, hi),
                                        other._window_arr(lo, hi))
        return TruncLaurent(self.ctx, lo, arr, end)

    def __sub__(self, other: "TruncLaurent") -> "TruncLaurent":
        return self + (-other)

    def __neg__(self) -> "TruncLaurent":
        return TruncLaurent(self.ctx, self.ord,
                            self.ctx.field.neg_arrays(self.coeffs), self.end)

    def __mul__(self, other: "TruncLaurent") -> "TruncLaurent":
        return laurent_mul(self, other)

    def agrees_with(self, other: "TruncLaurent") -> bool:
        """Equality of all coefficients on the common window."""
        self._check(other)
        end = _min_end(self.end, other.end)
        lo = min(self.ord, other.ord)
        hi = max(self.support_end, other.support_end)
        if end is not None:
            hi = min(hi, end)
        if hi <= lo:
            return True
        return bool(np.array_equal(self._window_arr(lo, hi),
                                   other._window_arr(lo, hi)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncLaurent) and self.ctx == other.ctx
                and self.ord == other.ord and self.end == other.end
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.ctx, self.ord, self.end, self.coeffs.tobytes()))

    def __str__(self) -> str:
        body = format_poly_arr(self.ctx.algebra, self.coeffs, offset=self.ord)
        if self.end is None:
            return body
        return f"{body} + O(X^{self.end})"

    def __repr__(self) -> str:
        return f"<trunc laurent {self}>"


# ---- core operations ----

def xinv_times(s: TruncLaurent) -> TruncLaurent:
    """X^{-1} s = sum_{k<m'} sigma' delta'^k(s) X^{-1-k}; window drops by m'."""
    ctx = s.ctx
    mp = require_laurent_ring(ctx)
    spec = ctx.field
    L = s.coeffs.shape[0]
    end = None if s.end is None else s.end - mp
    if L == 0:
        return TruncLaurent(ctx, 0, s.coeffs, end)
    maps = ctx.xinv_maps()
    out = la.zeros((L + mp - 1, ctx.algebra.dim))
    for k in range(mp):
        rows = la.mat_mul(spec, s.coeffs, maps[k].T)
        pos = mp - 1 - k
        out[pos: pos + L] = spec.add_arrays(out[pos: pos + L], rows)
    if end is not None:
        out = out[: max(0, end - (s.ord - mp))]
    return TruncLaurent(ctx, s.ord - mp, out, end)


def xnegn_times(s: TruncLaurent, n: int) -> TruncLaurent:
    """X^{-n} s by iterating xinv_times (production path)."""
    if n < 0:
        raise ValueError("xnegn_times needs n >= 0")
    for _ in range(n):
        s = xinv_times(s)
    return s


def _composition_maps(ctx: SkewDerivation, n: int) -> list[np.ndarray]:
    """C_{n,k} = sum over k_1+..+k_n = k, k_j < m', of the composition
    sigma' delta'^{k_1} ... sigma' delta'^{k_n}, for k = 0 .. n(m'-1)."""
    mp = require_laurent_ring(ctx)
    spec = ctx.field
    r = ctx.algebra.dim
    maps = ctx.xinv_maps()
    cur: list[np.ndarray] = [la.eye(r)]
    for _ in range(n):
        nxt = [la.zeros((r, r)) for _ in range(len(cur) + mp - 1)]
        for kk in range(mp):
            for k0, c in enumerate(cur):
                nxt[kk + k0] = spec.add_arrays(nxt[kk + k0],
                                               la.mat_mul(spec, maps[kk], c))
        cur = nxt
    return cur


def xnegn_direct(s: TruncLaurent, n: int) -> TruncLaurent:
    """X^{-n} s via the closed multinomial expansion (test oracle).

    X^{-n} s = sum_{k=0}^{n(m'-1)} C_{n,k}(s) X^{-n-k}; windows match the
    iterated path exactly.
    """
    if n < 0:
        raise ValueError("xnegn_direct needs n >= 0")
    ctx = s.ctx
    mp = require_laurent_ring(ctx)
    spec = ctx.field
    if n == 0:
        return s
    L = s.coeffs.shape[0]
    end = None if s.end is None else s.end - n * mp
    if L == 0:
        return TruncLaurent(ctx, 0, s.coeffs, end)
    comps = _composition_maps(ctx, n)
    width = n * (mp - 1)
    out = la.zeros((L + width, ctx.algebra.dim))
    for k in range(width + 1):
        if la.is_zero(comps[k]):
            continue
        rows = la.mat_mul(spec, s.coeffs, comps[k].T)
        pos = width - k
        out[pos: pos + L] = spec.add_arrays(out[pos: pos + L], rows)
    if end is not None:
        out = out[: max(0, end - (s.ord - n * mp))]
    return TruncLaurent(ctx, s.ord - n * mp, out, end)


def laurent_mul(s: TruncLaurent, t: TruncLaurent) -> TruncLaurent:
    """s t on the largest window the operands support.

    Decomposes s = s_hat X^{o_s}, t = t_hat X^{o_t}; moves X^{o_s} across
    t_hat (xn expansion for o_s >= 0, iterated X^{-1} otherwise), multiplies
    the series parts truncated, and shifts.
    """
    s._check(t)
    ctx = s.ctx
    m = ctx.m_delta
    # zero operands: s = 0 mod X^{end_s} makes s t = 0 mod X^{end_s + ord(t)}
    if s.is_zero() or t.is_zero():
        if (s.is_zero() and s.end is None) or (t.is_zero() and t.end is None):
            return TruncLaurent.exact_zero(ctx)
        cand = []
        if s.is_zero():
            cand.append(s.end + t.ord)
        if t.is_zero():
            cand.append(s.ord + t.end)
        end = min(cand)
        return TruncLaurent(ctx, end, la.zeros((0, ctx.algebra.dim)), end)
    # s = s_hat X^{o_s}, t = t_hat X^{o_t}; move X^{o_s} across t_hat
    o_s, o_t = s.ord, t.ord
    n_t = None if t.end is None else t.end - o_t
    if o_s >= 0:
        arr = xn_arrays(ctx, t.coeffs, o_s, out_limit=n_t)
        w = TruncLaurent(ctx, 0, arr, n_t)
    else:
        w = xnegn_times(TruncLaurent(ctx, 0, t.coeffs, n_t), -o_s)
    shift = w.ord + o_t
    n_s = None if s.end is None else s.end - o_s
    n_w = None if w.end is None else w.end - w.ord
    if w.is_zero():
        if w.end is None:
            return TruncLaurent.exact_zero(ctx)
        end = w.end + o_t
        return TruncLaurent(ctx, end, la.zeros((0, ctx.algebra.dim)), end)
    # series product of s_hat (window n_s) and w_hat (window n_w)
    if n_s is None and n_w is None:
        return TruncLaurent(ctx, shift, mul_arrays(ctx, s.coeffs, w.coeffs), None)
    if n_s is None:
        n_out = n_w
    elif n_w is None:
        n_out = n_s // m
    else:
        n_out = min(n_w, n_s // m)
    w_arr = w._window_arr(w.ord, w.ord + n_out)
    s_arr = s.coeffs if n_s is None else s.coeffs[: n_out * m]
    prod = mul_arrays(ctx, s_arr, w_arr, out_limit=n_out)
    out = la.zeros((n_out, ctx.algebra.dim))
    out[: prod.shape[0]] = prod
    return TruncLaurent(ctx, shift, out, shift + n_out)
