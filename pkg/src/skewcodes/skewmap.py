"""Skew derivation pairs (sigma, delta) on an Algebra and the N operator table.

sigma must be a unital ring endomorphism and delta a sigma-derivation:
delta(x y) = sigma(x) delta(y) + delta(x) y.  When sigma is invertible the
right-hand pair is sigma' = sigma^{-1}, delta' = -delta o sigma^{-1}.

N_i^n are the maps collecting the X^i coefficient of X^n acting on scalars:
N_i^{n+1} = sigma N_{i-1}^n + delta N_i^n, N_0^0 = id, with N_{-1}^n = 0 and
N_{n+1}^n = 0.  In particular N_0^n = delta^n and N_n^n = sigma^n.
"""

from __future__ import annotations

import threading
from typing import Optional

import numpy as np

from . import _gflinalg as la
from .algebra import Algebra, AlgebraElement, LinearMap
from .errors import AxiomError, MixedStructureError


def nilpotency_index(m: LinearMap) -> Optional[int]:
    """Minimal e <= dim with m^e = 0, or None if m^dim != 0."""
    spec = m.algebra.field
    cur = la.eye(m.algebra.dim)
    for e in range(1, m.algebra.dim + 1):
        cur = la.mat_mul(spec, cur, m.matrix)
        if la.is_zero(cur):
            return e
    return None


class SkewDerivation:
    """A verified (sigma, delta) pair.  Construct via verify_skew_derivation."""

    def __init__(self, algebra: Algebra, sigma: LinearMap, delta: LinearMap,
                 _token=None):
        if _token is not _CONSTRUCT:
            raise TypeError("use verify_skew_derivation() to build a SkewDerivation")
        self.algebra = algebra
        self.sigma = sigma
        self.delta = delta
        self.sigma_inv = sigma.inverse()
        self.delta_prime = None if self.sigma_inv is None else -(delta @ self.sigma_inv)
        self.m_delta = nilpotency_index(delta)
        self.m_delta_prime = (None if self.delta_prime is None
                              else nilpotency_index(self.delta_prime))
        self._ntable = NOperatorTable(self)
        self._xinv_maps: Optional[list[np.ndarray]] = None

    @property
    def field(self):
        return self.algebra.field

    @property
    def ntable(self) -> "NOperatorTable":
        return self._ntable

    def xinv_maps(self) -> list[np.ndarray]:
        """Matrices of sigma' delta'^k for k = 0 .. m_delta_prime - 1."""
        if self.delta_prime is None or self.m_delta_prime is None:
            raise AxiomError("right-hand maps unavailable: sigma not invertible "
                             "or delta' not nilpotent")
        if self._xinv_maps is None:
            spec = self.field
            out = []
            cur = la.eye(self.algebra.dim)
            for _ in range(self.m_delta_prime):
                out.append(la.mat_mul(spec, self.sigma_inv.matrix, cur))
                cur = la.mat_mul(spec, self.delta_prime.matrix, cur)
            self._xinv_maps = out
        return self._xinv_maps

    def __eq__(self, other) -> bool:
        return (isinstance(other, SkewDerivation) and self.algebra == other.algebra
                and self.sigma == other.sigma and self.delta == other.delta)

    def __hash__(self) -> int:
        return hash((self.algebra, self.sigma, self.delta))

    def __repr__(self) -> str:
        return f"<skew derivation on {self.algebra!r}>"


_CONSTRUCT = object()


def verify_skew_derivation(algebra: Algebra, sigma: LinearMap,
                           delta: LinearMap) -> SkewDerivation:
    """Check the (sigma, delta) axioms on all basis pairs; raise on failure.

    sigma non-invertibility is not an error: the pair is still valid, only the
    right-hand machinery (delta', Laurent) is unavailable.
    """
    if sigma.algebra != algebra or delta.algebra != algebra:
        raise MixedStructureError("maps defined on a different algebra")
    a = algebra
    one = a.one
    if sigma(one) != one:
        raise AxiomError(f"sigma(1) = {sigma(one)} != 1")
    basis = a.basis()
    for i, bi in enumerate(basis):
        si, di = sigma(bi), delta(bi)
        for j, bj in enumerate(basis):
            prod = bi * bj
            if sigma(prod) != si * sigma(bj):
                raise AxiomError(
                    f"sigma not multiplicative at ({a.labels[i]}, {a.labels[j]})")
            if delta(prod) != si * delta(bj) + di * bj:
                raise AxiomError(
                    f"delta fails the sigma-derivation rule at "
                    f"({a.labels[i]}, {a.labels[j]})")
    return SkewDerivation(algebra, sigma, delta, _token=_CONSTRUCT)


class NOperatorTable:
    """Memoized table of the N_i^n maps as index matrices.

    Rows are filled on demand up to the largest n requested; extension holds a
    lock so concurrent readers of already-built rows stay consistent.
    """

    def __init__(self, ctx: SkewDerivation):
        self.ctx = ctx
        self._rows: list[list[np.ndarray]] = [[la.eye(ctx.algebra.dim)]]
        self._lock = threading.Lock()

    @property
    def n_max(self) -> int:
        return len(self._rows) - 1

    def ensure(self, n: int) -> None:
        if n <= self.n_max:
            return
        with self._lock:
            spec = self.ctx.field
            s, d = self.ctx.sigma.matrix, self.ctx.delta.matrix
            zero = la.zeros((self.ctx.algebra.dim, self.ctx.algebra.dim))
            while self.n_max < n:
                prev = self._rows[-1]
                m = len(self._rows)
                row = []
                for i in range(m + 1):
                    left = prev[i - 1] if i >= 1 else zero
                    right = prev[i] if i <= m - 1 else zero
                    row.append(spec.add_arrays(la.mat_mul(spec, s, left),
                                               la.mat_mul(spec, d, right)))
                self._rows.append(row)

    def matrix(self, i: int, n: int) -> np.ndarray:
        if not (0 <= i <= n):
            raise IndexError(f"N_{i}^{n} undefined: need 0 <= i <= n")
        self.ensure(n)
        return self._rows[n][i]

    def map(self, i: int, n: int) -> LinearMap:
        return LinearMap(self.ctx.algebra, self.matrix(i, n))


def n_operator(ctx: SkewDerivation, i: int, n: int) -> LinearMap:
    """The map N_i^n of the context."""
    return ctx.ntable.map(i, n)
