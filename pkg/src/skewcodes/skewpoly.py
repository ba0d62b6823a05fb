"""Skew polynomials over a SkewDerivation context, left coefficients.

f = sum_i f_i X^i with the commutation rule X a = sigma(a) X + delta(a),
extended coefficientwise to X f = sigma(f) X + delta(f).  The closed product
formula collects N operators:

    (sum_i g_i X^i) f = sum_i (sum_{k=i}^{n} g_k N_i^k(f)) X^i

where N_i^k acts on f coefficientwise and X^i shifts.  An independent
rewriting path (iterate X f = sigma(f) X + delta(f)) is kept as an oracle.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from . import _gflinalg as la
from .algebra import AlgebraElement, LinearMap
from .errors import MixedStructureError
from .fields import DTYPE
from .skewmap import SkewDerivation


def _trim(arr: np.ndarray) -> np.ndarray:
    n = arr.shape[0]
    while n > 0 and not arr[n - 1].any():
        n -= 1
    return arr[:n]


def _pad(arr: np.ndarray, length: int) -> np.ndarray:
    if arr.shape[0] >= length:
        return arr[:length]
    out = la.zeros((length, arr.shape[1]))
    out[: arr.shape[0]] = arr
    return out


# ---- raw-array engines (shared with the series and Laurent layers) ----

def mul_arrays(ctx: SkewDerivation, g: np.ndarray, f: np.ndarray,
               out_limit: Optional[int] = None) -> np.ndarray:
    """Coefficient rows of (g f), optionally truncated to out_limit rows."""
    spec = ctx.field
    g, f = _trim(g), _trim(f)
    dg, df = g.shape[0] - 1, f.shape[0] - 1
    if dg < 0 or df < 0:
        return la.zeros((0, ctx.algebra.dim))
    full = dg + df + 1
    out_len = full if out_limit is None else min(out_limit, full)
    out = la.zeros((out_len, ctx.algebra.dim))
    lmats = {k: ctx.algebra.left_mult_matrix(g[k]) for k in range(dg + 1) if g[k].any()}
    table = ctx.ntable
    table.ensure(dg)
    for i in range(min(dg, out_len - 1) + 1):
        t_len = min(df + 1, out_len - i)
        frows = f[:t_len]
        acc = None
        for k in range(i, dg + 1):
            if k not in lmats:
                continue
            comp = la.mat_mul(spec, lmats[k], table.matrix(i, k)).T
            b = la.mat_mul(spec, frows, comp)
            acc = b if acc is None else spec.add_arrays(acc, b)
        if acc is not None:
            out[i: i + t_len] = spec.add_arrays(out[i: i + t_len], acc)
    return out


def x_times_arrays(ctx: SkewDerivation, f: np.ndarray) -> np.ndarray:
    """X f = sigma(f) X + delta(f), coefficientwise, exact."""
    spec = ctx.field
    out = la.zeros((f.shape[0] + 1, ctx.algebra.dim))
    out[1:] = la.mat_mul(spec, f, ctx.sigma.matrix.T)
    out[:-1] = spec.add_arrays(out[:-1], la.mat_mul(spec, f, ctx.delta.matrix.T))
    return out


def mul_iterative_arrays(ctx: SkewDerivation, g: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Oracle product by repeated left multiplication with X."""
    spec = ctx.field
    g, f = _trim(g), _trim(f)
    if g.shape[0] == 0 or f.shape[0] == 0:
        return la.zeros((0, ctx.algebra.dim))
    out = la.zeros((g.shape[0] + f.shape[0] - 1, ctx.algebra.dim))
    cur = f
    for i in range(g.shape[0]):
        if g[i].any():
            lm = ctx.algebra.left_mult_matrix(g[i])
            out[: cur.shape[0]] = spec.add_arrays(out[: cur.shape[0]],
                                                  la.mat_mul(spec, cur, lm.T))
        if i < g.shape[0] - 1:
            cur = x_times_arrays(ctx, cur)
    return out


def xn_arrays(ctx: SkewDerivation, f: np.ndarray, n: int,
              out_limit: Optional[int] = None) -> np.ndarray:
    """X^n f = sum_k N_k^n(f) X^k on coefficient rows."""
    spec = ctx.field
    f = _trim(f)
    if f.shape[0] == 0:
        return la.zeros((0, ctx.algebra.dim))
    full = n + f.shape[0]
    out_len = full if out_limit is None else min(out_limit, full)
    out = la.zeros((out_len, ctx.algebra.dim))
    table = ctx.ntable
    table.ensure(n)
    for k in range(min(n, out_len - 1) + 1):
        t_len = min(f.shape[0], out_len - k)
        rows = la.mat_mul(spec, f[:t_len], table.matrix(k, n).T)
        out[k: k + t_len] = spec.add_arrays(out[k: k + t_len], rows)
    return out


def apply_map_rows(ctx: SkewDerivation, m: np.ndarray, rows: np.ndarray) -> np.ndarray:
    return la.mat_mul(ctx.field, rows, m.T)


# ---- the polynomial class ----

class SkewPoly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: SkewDerivation, coeffs: np.ndarray):
        self.ctx = ctx
        self.coeffs = _trim(np.asarray(coeffs, dtype=DTYPE))
        self.coeffs.flags.writeable = False

    # ---- constructors ----

    @classmethod
    def from_elements(cls, ctx: SkewDerivation,
                      elems: Sequence[AlgebraElement]) -> "SkewPoly":
        for e in elems:
            if e.algebra != ctx.algebra:
                raise MixedStructureError("coefficient from a different algebra")
        if not elems:
            return cls.zero(ctx)
        return cls(ctx, np.stack([e.coords for e in elems]))

    @classmethod
    def zero(cls, ctx: SkewDerivation) -> "SkewPoly":
        return cls(ctx, la.zeros((0, ctx.algebra.dim)))

    @classmethod
    def one(cls, ctx: SkewDerivation) -> "SkewPoly":
        return cls.constant(ctx, ctx.algebra.one)

    @classmethod
    def constant(cls, ctx: SkewDerivation, a: AlgebraElement) -> "SkewPoly":
        return cls.monomial(ctx, a, 0)

    @classmethod
    def monomial(cls, ctx: SkewDerivation, a: AlgebraElement, n: int) -> "SkewPoly":
        if a.algebra != ctx.algebra:
            raise MixedStructureError("coefficient from a different algebra")
        arr = la.zeros((n + 1, ctx.algebra.dim))
        arr[n] = a.coords
        return cls(ctx, arr)

    @classmethod
    def x_power(cls, ctx: SkewDerivation, n: int = 1) -> "SkewPoly":
        return cls.monomial(ctx, ctx.algebra.one, n)

    # ---- basic structure ----

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return self.coeffs.shape[0] - 1

    def coeff(self, i: int) -> AlgebraElement:
        if 0 <= i < self.coeffs.shape[0]:
            return AlgebraElement(self.ctx.algebra, self.coeffs[i].copy())
        return self.ctx.algebra.zero

    def elements(self) -> list[AlgebraElement]:
        return [self.coeff(i) for i in range(self.coeffs.shape[0])]

    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def _check(self, other: "SkewPoly") -> None:
        if self.ctx != other.ctx:
            raise MixedStructureError("polynomials from different contexts")

    # ---- arithmetic ----

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        return SkewPoly(self.ctx, self.ctx.field.add_arrays(
            _pad(self.coeffs, n), _pad(other.coeffs, n)))

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        f = self.ctx.field
        return SkewPoly(self.ctx, f.add_arrays(
            _pad(self.coeffs, n), f.neg_arrays(_pad(other.coeffs, n))))

    def __neg__(self) -> "SkewPoly":
        return SkewPoly(self.ctx, self.ctx.field.neg_arrays(self.coeffs))

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        return SkewPoly(self.ctx, mul_arrays(self.ctx, self.coeffs, other.coeffs))

    def shift(self, n: int) -> "SkewPoly":
        """Right multiplication by X^n (a plain coefficient shift)."""
        if self.is_zero():
            return self
        out = la.zeros((self.coeffs.shape[0] + n, self.ctx.algebra.dim))
        out[n:] = self.coeffs
        return SkewPoly(self.ctx, out)

    def scale_left(self, a: AlgebraElement) -> "SkewPoly":
        """a * f, coefficientwise left multiplication."""
        lm = self.ctx.algebra.left_mult_matrix(a.coords)
        return SkewPoly(self.ctx, apply_map_rows(self.ctx, lm, self.coeffs))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SkewPoly) and self.ctx == other.ctx
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.ctx, self.coeffs.tobytes()))

    def __str__(self) -> str:
        return format_poly_arr(self.ctx.algebra, self.coeffs)

    def __repr__(self) -> str:
        return f"<skew poly {self}>"


def format_poly_arr(algebra, coeffs: np.ndarray, var: str = "X",
                    offset: int = 0) -> str:
    terms = []
    for i in range(coeffs.shape[0]):
        row = coeffs[i]
        if not row.any():
            continue
        e = i + offset
        cs = algebra.format_coords(row)
        if e == 0:
            terms.append(f"({cs})" if " + " in cs else cs)
            continue
        xs = var if e == 1 else f"{var}^{e}"
        if np.array_equal(row, algebra.unit):
            terms.append(xs)
        elif " + " in cs:
            terms.append(f"({cs})*{xs}")
        else:
            terms.append(f"{cs}*{xs}")
    return " + ".join(terms) if terms else "0"


# ---- named operations ----

def poly_mul(g: SkewPoly, f: SkewPoly) -> SkewPoly:
    """Product via the closed N-operator formula."""
    return g * f


def poly_mul_iterative(g: SkewPoly, f: SkewPoly) -> SkewPoly:
    """Oracle product via repeated X-rewriting; same contract as poly_mul."""
    g._check(f)
    return SkewPoly(g.ctx, mul_iterative_arrays(g.ctx, g.coeffs, f.coeffs))


def xn_times(f: SkewPoly, n: int) -> SkewPoly:
    """X^n * f via the N-operator expansion."""
    if n < 0:
        raise ValueError("xn_times needs n >= 0")
    return SkewPoly(f.ctx, xn_arrays(f.ctx, f.coeffs, n))


def apply_coeffwise(m: LinearMap, f: SkewPoly) -> SkewPoly:
    """Apply a linear map to every coefficient."""
    if m.algebra != f.ctx.algebra:
        raise MixedStructureError("map on a different algebra")
    return SkewPoly(f.ctx, apply_map_rows(f.ctx, m.matrix, f.coeffs))


def left_from_right(ctx: SkewDerivation,
                    right_coeffs: Sequence[AlgebraElement]) -> SkewPoly:
    """Convert sum_i X^i a_i to left-coefficient form.

    The X^i coefficient is sum_{j >= i} N_i^j(a_j).
    """
    spec = ctx.field
    n = len(right_coeffs)
    out = la.zeros((n, ctx.algebra.dim))
    table = ctx.ntable
    if n:
        table.ensure(n - 1)
    for j, a in enumerate(right_coeffs):
        if a.algebra != ctx.algebra:
            raise MixedStructureError("coefficient from a different algebra")
        if not a.coords.any():
            continue
        for i in range(j + 1):
            out[i] = spec.add_arrays(
                out[i], la.mat_vec(spec, table.matrix(i, j), a.coords))
    return SkewPoly(ctx, out)


def right_from_left(f: SkewPoly) -> list[AlgebraElement]:
    """Right coefficients a_i with f = sum_i X^i a_i; needs sigma invertible."""
    ctx = f.ctx
    if ctx.sigma_inv is None:
        raise ValueError("right coefficients need an invertible sigma")
    rem = f.coeffs.copy()
    d = rem.shape[0] - 1
    out: list[np.ndarray] = [la.zeros(ctx.algebra.dim) for _ in range(d + 1)]
    inv_pows: dict[int, np.ndarray] = {}
    while d >= 0:
        rem = _trim(rem)
        d = rem.shape[0] - 1
        if d < 0:
            break
        if d not in inv_pows:
            inv_pows[d] = la.mat_pow(ctx.field, ctx.sigma_inv.matrix, d)
        b = la.mat_vec(ctx.field, inv_pows[d], rem[d])
        out[d] = b
        piece = xn_arrays(ctx, b.reshape(1, -1), d)
        rem = ctx.field.add_arrays(_pad(rem, piece.shape[0]),
                                   ctx.field.neg_arrays(piece))
    return [AlgebraElement(ctx.algebra, v) for v in out]
