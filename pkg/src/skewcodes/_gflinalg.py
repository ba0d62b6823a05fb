"""Exact dense linear algebra over GF(q) on integer index arrays.

Matrices are numpy arrays of field indices (see fields.DTYPE); every routine
takes the owning FieldSpec first.  Column convention for maps (M @ x), row
convention helpers for module actions (v @ M).
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .fields import DTYPE, FieldSpec


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=DTYPE)


def eye(n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=DTYPE)
    np.fill_diagonal(m, 1)
    return m


def mat_mul(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(m, n) @ (n, l) over GF(q)."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[1] == 0:
        return zeros((a.shape[0], b.shape[1]))
    prod = spec.MUL[a[:, :, None], b[None, :, :]]
    return spec.sum_axis(prod, axis=1)


def mat_vec(spec: FieldSpec, m: np.ndarray, v: np.ndarray) -> np.ndarray:
    """M @ v for a single column vector v."""
    return mat_mul(spec, m, v.reshape(-1, 1))[:, 0]


def rows_mat(spec: FieldSpec, rows: np.ndarray, m: np.ndarray) -> np.ndarray:
    """rows @ M: apply M on the right of every row vector."""
    return mat_mul(spec, rows, m)


def scale(spec: FieldSpec, a: np.ndarray, c: int) -> np.ndarray:
    return spec.MUL[a, c]


def mat_add(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return spec.add_arrays(a, b)


def mat_sub(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return spec.add_arrays(a, spec.neg_arrays(b))


def mat_pow(spec: FieldSpec, a: np.ndarray, e: int) -> np.ndarray:
    out = eye(a.shape[0])
    for _ in range(e):
        out = mat_mul(spec, out, a)
    return out


def _eliminate(spec: FieldSpec, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (rref, pivot column list)."""
    m = m.astype(DTYPE).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        sel = None
        for i in range(r, rows):
            if m[i, c] != 0:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            m[[r, sel]] = m[[sel, r]]
        inv = spec.inv(int(m[r, c]))
        m[r] = spec.MUL[m[r], inv]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = spec.neg(int(m[i, c]))
                m[i] = spec.add_arrays(m[i], spec.MUL[m[r], f])
        pivots.append(c)
        r += 1
    return m, pivots


def rank(spec: FieldSpec, m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(_eliminate(spec, m)[1])


def inv(spec: FieldSpec, m: np.ndarray) -> Optional[np.ndarray]:
    """Inverse of a square matrix, or None if singular."""
    n = m.shape[0]
    if n == 0:
        return eye(0)
    aug = np.concatenate([m, eye(n)], axis=1).astype(DTYPE)
    red, pivots = _eliminate(spec, aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        return None
    return red[:, n:]


def solve(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One solution x of A @ x = b, or None."""
    rows = a.shape[0]
    aug = np.concatenate([a, b.reshape(rows, 1)], axis=1).astype(DTYPE)
    red, pivots = _eliminate(spec, aug)
    n = a.shape[1]
    if pivots and pivots[-1] == n:
        return None
    x = zeros(n)
    for i, c in enumerate(pivots):
        x[c] = red[i, n]
    return x


def nullspace(spec: FieldSpec, a: np.ndarray) -> list[np.ndarray]:
    """Basis of {x : A @ x = 0} as a list of index vectors."""
    n = a.shape[1]
    if a.shape[0] == 0:
        return [eye(n)[i] for i in range(n)]
    red, pivots = _eliminate(spec, a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        x = zeros(n)
        x[fc] = 1
        for i, pc in enumerate(pivots):
            x[pc] = spec.neg(int(red[i, fc]))
        basis.append(x)
    return basis


def is_zero(m: np.ndarray) -> bool:
    return bool(np.all(m == 0))
