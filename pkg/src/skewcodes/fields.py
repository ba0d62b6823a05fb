"""Exact arithmetic in GF(p^k) via integer indices and lookup tables.

An element with coefficient vector (c_0, ..., c_{k-1}) against the power
basis 1, a, ..., a^{k-1} of F_p[a]/(modulus) is stored as the integer index
sum(c_i * p**i).  A FieldSpec owns the full q x q multiplication table plus
addition, negation, inversion and Frobenius tables, so both scalar and bulk
numpy arithmetic are table lookups.  Everything is exact.
"""

from __future__ import annotations

import functools
from typing import Optional, Sequence

import numpy as np

from .errors import MixedStructureError

# dtype for all index arrays; tables are capped well below the int16 range
DTYPE = np.int16

# table construction is quadratic in q, keep it at desk scale
_MAX_ORDER = 1024

# one irreducible modulus per built-in (p, k), coefficients low to high
_DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mul_mod(u: list[int], v: list[int], modulus: Sequence[int], p: int) -> list[int]:
    """Product of coefficient lists modulo (modulus, p).  modulus is monic."""
    k = len(modulus) - 1
    out = [0] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        for j, vj in enumerate(v):
            out[i + j] = (out[i + j] + ui * vj) % p
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c == 0:
            continue
        out[d] = 0
        for t in range(k):
            out[d - k + t] = (out[d - k + t] - c * modulus[t]) % p
    out = out[:k] + [0] * max(0, k - len(out))
    return out[:k]


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder of coefficient lists over Z_p; den != 0."""
    num = list(num)
    dd = len(den) - 1
    while dd > 0 and den[dd] == 0:
        dd -= 1
    inv_lead = pow(den[dd], p - 2, p) if p > 2 else den[dd]
    q = [0] * max(1, len(num) - dd)
    for d in range(len(num) - 1, dd - 1, -1):
        c = num[d]
        if c == 0:
            continue
        f = (c * inv_lead) % p
        q[d - dd] = f
        for t in range(dd + 1):
            num[d - dd + t] = (num[d - dd + t] - f * den[t]) % p
    return q, num[:dd] if dd > 0 else [0]


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive divisor check: no monic divisor of degree 1..k//2."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for enc in range(p**d):
            div = [(enc // p**i) % p for i in range(d)] + [1]
            _, rem = _poly_divmod(list(modulus), div, p)
            if all(c == 0 for c in rem):
                return False
    return True


class FieldSpec:
    """GF(p^k) with index-level tables.  Construct via field()."""

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None,
                 symbol: str = "a"):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree k = {k} must be >= 1")
        q = p**k
        if q > _MAX_ORDER:
            raise ValueError(f"field order {q} exceeds supported table size {_MAX_ORDER}")
        if modulus is None:
            if k == 1:
                modulus = (0, 1)
            elif (p, k) in _DEFAULT_MODULI:
                modulus = _DEFAULT_MODULI[(p, k)]
            else:
                raise ValueError(f"no built-in modulus for GF({p}^{k}); pass one explicitly")
        modulus = tuple(int(c) % p for c in modulus[:-1]) + (int(modulus[-1]),)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}: got {modulus}")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self.symbol = symbol
        self._build_tables()

    # ---- table construction ----

    def _idx_to_coeffs(self, idx: int) -> list[int]:
        return [(idx // self.p**i) % self.p for i in range(self.k)]

    def _coeffs_to_idx(self, coeffs: Sequence[int]) -> int:
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs[: self.k]))

    def _mul_raw(self, i: int, j: int) -> int:
        prod = _poly_mul_mod(self._idx_to_coeffs(i), self._idx_to_coeffs(j),
                             self.modulus, self.p)
        return self._coeffs_to_idx(prod)

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        coeffs = np.zeros((q, k), dtype=np.int64)
        for i in range(q):
            coeffs[i] = self._idx_to_coeffs(i)
        powers = np.array([p**i for i in range(k)], dtype=np.int64)
        self.ADD = (((coeffs[:, None, :] + coeffs[None, :, :]) % p) @ powers).astype(DTYPE)
        self.NEG = (((-coeffs) % p) @ powers).astype(DTYPE)

        # multiplicative tables through a generator of the cyclic group
        gen = None
        for cand in range(1, q):
            seen = 1
            cur = cand
            while cur != 1:
                cur = self._mul_raw(cur, cand)
                seen += 1
            if seen == q - 1:
                gen = cand
                break
        assert gen is not None
        exp = np.zeros(2 * (q - 1), dtype=DTYPE)
        log = np.zeros(q, dtype=np.int64)
        cur = 1
        for e in range(q - 1):
            exp[e] = cur
            log[cur] = e
            cur = self._mul_raw(cur, gen)
        exp[q - 1:] = exp[: q - 1]
        self._exp, self._log = exp, log
        self.MUL = np.zeros((q, q), dtype=DTYPE)
        nz = np.arange(1, q)
        self.MUL[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        self.INV = np.zeros(q, dtype=DTYPE)
        self.INV[1:] = exp[((q - 1) - log[nz]) % (q - 1)]
        self.FROB = np.zeros(q, dtype=DTYPE)
        self.FROB[1:] = exp[(log[nz] * p) % (q - 1)]

    # ---- scalar index ops ----

    def add(self, i: int, j: int) -> int:
        return int(self.ADD[i, j])

    def sub(self, i: int, j: int) -> int:
        return int(self.ADD[i, self.NEG[j]])

    def neg(self, i: int) -> int:
        return int(self.NEG[i])

    def mul(self, i: int, j: int) -> int:
        return int(self.MUL[i, j])

    def inv(self, i: int) -> int:
        if i == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return int(self.INV[i])

    def pow_(self, i: int, e: int) -> int:
        if e < 0:
            i, e = self.inv(i), -e
        if i == 0:
            return 0 if e else 1
        return int(self._exp[(int(self._log[i]) * e) % (self.q - 1)])

    def frob(self, i: int, t: int = 1) -> int:
        out = i
        for _ in range(t % self.k if self.k > 1 else 1):
            out = int(self.FROB[out])
        return out

    # ---- bulk index-array ops ----

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.ADD[a, b]

    def neg_arrays(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a.copy()
        return self.NEG[a]

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.MUL[a, b]

    def sum_axis(self, a: np.ndarray, axis: int) -> np.ndarray:
        if a.shape[axis] == 0:
            shape = list(a.shape)
            del shape[axis]
            return np.zeros(shape, dtype=DTYPE)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        a = np.moveaxis(a, axis, 0)
        acc = a[0]
        for t in range(1, a.shape[0]):
            acc = self.ADD[acc, a[t]]
        return acc

    # ---- element helpers ----

    def element(self, value) -> "FieldElement":
        """Coerce an index, int, coefficient list or FieldElement."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise MixedStructureError("element from a different field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self._coeffs_to_idx(value))
        return FieldElement(self, int(value) % self.p if self.k == 1 else int(value))

    def from_int(self, n: int) -> "FieldElement":
        """Image of the integer n under the prime-subfield embedding."""
        return FieldElement(self, n % self.p)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        return FieldElement(self, self._coeffs_to_idx(coeffs))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        if self.k == 1:
            raise ValueError("prime field has no extension generator")
        return FieldElement(self, self.p)

    def elements(self):
        return [FieldElement(self, i) for i in range(self.q)]

    def format_index(self, idx: int) -> str:
        coeffs = self._idx_to_coeffs(idx)
        if self.k == 1:
            return str(coeffs[0])
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = self.symbol if i == 1 else f"{self.symbol}^{i}"
                terms.append(var if c == 1 else f"{c}*{var}")
        return "+".join(terms) if terms else "0"

    # ---- identity ----

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldSpec)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


@functools.lru_cache(maxsize=None)
def field(p: int, k: int = 1, modulus: Optional[tuple[int, ...]] = None,
          symbol: str = "a") -> FieldSpec:
    """Cached FieldSpec constructor; tables are built once per field."""
    return FieldSpec(p, k, modulus, symbol)


class FieldElement:
    """Immutable element of a FieldSpec, stored as its index."""

    __slots__ = ("spec", "idx")

    def __init__(self, spec: FieldSpec, idx: int):
        if not 0 <= idx < spec.q:
            raise ValueError(f"index {idx} out of range for {spec!r}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "idx", int(idx))

    def __setattr__(self, *a):
        raise AttributeError("FieldElement is immutable")

    def _check(self, other: "FieldElement") -> None:
        if self.spec != other.spec:
            raise MixedStructureError(
                f"mixed fields: {self.spec!r} and {other.spec!r}")

    def __add__(self, other):
        other = self.spec.element(other)
        self._check(other)
        return FieldElement(self.spec, self.spec.add(self.idx, other.idx))

    __radd__ = __add__

    def __sub__(self, other):
        other = self.spec.element(other)
        self._check(other)
        return FieldElement(self.spec, self.spec.sub(self.idx, other.idx))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.idx))

    def __mul__(self, other):
        other = self.spec.element(other)
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.idx, other.idx))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self.spec.element(other)
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.idx, self.spec.inv(other.idx)))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow_(self.idx, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.idx))

    def frobenius(self, t: int = 1) -> "FieldElement":
        return FieldElement(self.spec, self.spec.frob(self.idx, t))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.spec._idx_to_coeffs(self.idx))

    def is_zero(self) -> bool:
        return self.idx == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.spec.k == 1 and self.idx == other % self.spec.p
        return (isinstance(other, FieldElement)
                and self.spec == other.spec and self.idx == other.idx)

    def __hash__(self) -> int:
        return hash((self.spec, self.idx))

    def __str__(self) -> str:
        return self.spec.format_index(self.idx)

    def __repr__(self) -> str:
        return f"<{self} in {self.spec!r}>"
