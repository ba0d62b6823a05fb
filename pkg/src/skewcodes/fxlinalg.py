"""Exact linear algebra over the commutative polynomial ring F[X].

Everything here works over the principal ideal domain F[X] for a finite
field F: Hermite (row echelon) form with a unimodular transform, Smith form
U G V = D with the divisibility chain, membership of a vector in a row
module, purification (the smallest direct summand containing a row module)
and the direct-summand test via unit invariant factors.

Pivoting is deterministic: among candidate pivots of minimal degree the
lowest row index wins (Smith form: lexicographically smallest position), so
repeated runs produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import MixedStructureError
from .fields import DTYPE, FieldElement, FieldSpec


# ---- dense univariate polynomials ----

def _trim1(arr: np.ndarray) -> np.ndarray:
    L = arr.shape[0]
    while L > 0 and arr[L - 1] == 0:
        L -= 1
    return arr[:L]


class Poly:
    """Polynomial over a finite field, dense ascending coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fieldspec: FieldSpec, coeffs) -> None:
        arr = np.asarray(
            [c.idx if isinstance(c, FieldElement) else fieldspec.element(c).idx
             for c in coeffs], dtype=DTYPE)
        self.field = fieldspec
        self.coeffs = _trim1(arr)
        self.coeffs.setflags(write=False)

    @classmethod
    def _raw(cls, fieldspec: FieldSpec, arr: np.ndarray) -> "Poly":
        p = object.__new__(cls)
        object.__setattr__(p, "field", fieldspec)
        a = _trim1(np.asarray(arr, dtype=DTYPE))
        a.setflags(write=False)
        object.__setattr__(p, "coeffs", a)
        return p

    def __setattr__(self, name, value):
        if name in self.__slots__ and hasattr(self, "coeffs"):
            raise AttributeError("Poly is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def zero(cls, fieldspec: FieldSpec) -> "Poly":
        return cls(fieldspec, [])

    @classmethod
    def one(cls, fieldspec: FieldSpec) -> "Poly":
        return cls(fieldspec, [1])

    @classmethod
    def constant(cls, fieldspec: FieldSpec, c) -> "Poly":
        return cls(fieldspec, [c])

    @classmethod
    def x_power(cls, fieldspec: FieldSpec, n: int = 1) -> "Poly":
        return cls(fieldspec, [0] * n + [1])

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def is_unit(self) -> bool:
        return self.coeffs.shape[0] == 1

    def is_one(self) -> bool:
        return self.coeffs.shape[0] == 1 and int(self.coeffs[0]) == 1

    def lead(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return int(self.coeffs[-1])

    def coeff(self, i: int) -> int:
        return int(self.coeffs[i]) if 0 <= i <= self.degree else 0

    def _check(self, other: "Poly") -> None:
        if self.field != other.field:
            raise MixedStructureError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        fs = self.field
        L = max(self.coeffs.shape[0], other.coeffs.shape[0])
        a = np.zeros(L, dtype=DTYPE)
        a[: self.coeffs.shape[0]] = self.coeffs
        b = np.zeros(L, dtype=DTYPE)
        b[: other.coeffs.shape[0]] = other.coeffs
        return Poly._raw(fs, fs.add_arrays(a, b))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly._raw(self.field, self.field.neg_arrays(self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        fs = self.field
        if self.is_zero() or other.is_zero():
            return Poly.zero(fs)
        out = np.zeros(self.degree + other.degree + 1, dtype=DTYPE)
        for i in range(self.coeffs.shape[0]):
            c = int(self.coeffs[i])
            if c == 0:
                continue
            seg = np.asarray([fs.mul(c, int(b)) for b in other.coeffs],
                             dtype=DTYPE)
            out[i: i + seg.shape[0]] = fs.add_arrays(out[i: i + seg.shape[0]], seg)
        return Poly._raw(fs, out)

    def scale(self, c: int) -> "Poly":
        fs = self.field
        if c == 0:
            return Poly.zero(fs)
        return Poly._raw(fs, np.asarray([fs.mul(c, int(b)) for b in self.coeffs],
                                        dtype=DTYPE))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead()))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        fs = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly.zero(fs), self
        rem = np.array(self.coeffs, dtype=DTYPE)
        q = np.zeros(self.degree - other.degree + 1, dtype=DTYPE)
        inv_lead = fs.inv(other.lead())
        d = other.degree
        for i in range(self.degree - d, -1, -1):
            c = fs.mul(int(rem[i + d]), inv_lead)
            if c == 0:
                continue
            q[i] = c
            for j in range(d + 1):
                rem[i + j] = fs.sub(int(rem[i + j]),
                                    fs.mul(c, int(other.coeffs[j])))
        return Poly._raw(fs, q), Poly._raw(fs, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.field == other.field
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs.tobytes()))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        fs = self.field
        terms = []
        for e in range(self.degree, -1, -1):
            c = int(self.coeffs[e])
            if c == 0:
                continue
            cs = fs.format_index(c)
            wrapped = f"({cs})" if ("+" in cs or "-" in cs) else cs
            if e == 0:
                terms.append(cs)
            elif e == 1:
                terms.append("X" if c == 1 else f"{wrapped}X")
            else:
                terms.append(f"X^{e}" if c == 1 else f"{wrapped}X^{e}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"<poly {self}>"


# ---- polynomial matrices ----

class PolyMatrix:
    """Rectangular matrix with Poly entries (immutable)."""

    __slots__ = ("field", "rows", "shape")

    def __init__(self, fieldspec: FieldSpec, rows: Sequence[Sequence[Poly]]):
        tup = tuple(tuple(e for e in row) for row in rows)
        if tup:
            width = len(tup[0])
            for row in tup:
                if len(row) != width:
                    raise ValueError("ragged rows")
                for e in row:
                    if not isinstance(e, Poly) or e.field != fieldspec:
                        raise MixedStructureError("entry over the wrong field")
        else:
            width = 0
        self.field = fieldspec
        self.rows = tup
        self.shape = (len(tup), width)

    @classmethod
    def from_coeff_lists(cls, fieldspec: FieldSpec,
                         rows: Sequence[Sequence[Sequence]]) -> "PolyMatrix":
        return cls(fieldspec, [[Poly(fieldspec, e) for e in row] for row in rows])

    @classmethod
    def identity(cls, fieldspec: FieldSpec, n: int) -> "PolyMatrix":
        one, zero = Poly.one(fieldspec), Poly.zero(fieldspec)
        return cls(fieldspec, [[one if i == j else zero for j in range(n)]
                               for i in range(n)])

    @classmethod
    def zeros(cls, fieldspec: FieldSpec, k: int, n: int) -> "PolyMatrix":
        zero = Poly.zero(fieldspec)
        return cls(fieldspec, [[zero] * n for _ in range(k)])

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.field != other.field:
            raise MixedStructureError("matrices over different fields")
        k, n = self.shape
        n2, m = other.shape
        if n != n2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = Poly.zero(self.field)
        out = []
        for i in range(k):
            row = []
            for j in range(m):
                acc = zero
                for t in range(n):
                    a, b = self.rows[i][t], other.rows[t][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.field, out)

    def stack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.field != other.field or self.shape[1] != other.shape[1]:
            raise ValueError("cannot stack")
        return PolyMatrix(self.field, list(self.rows) + list(other.rows))

    def take_rows(self, idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.field, [self.rows[i] for i in idx])

    def drop_zero_rows(self) -> "PolyMatrix":
        return PolyMatrix(self.field,
                          [r for r in self.rows if any(not e.is_zero() for e in r)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyMatrix) and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.field, self.rows))

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]"
                         for row in self.rows)

    def __repr__(self) -> str:
        k, n = self.shape
        return f"<polymatrix {k}x{n}>"


def _to_lists(g: PolyMatrix) -> list[list[Poly]]:
    return [list(row) for row in g.rows]


def det_poly(g: PolyMatrix) -> Poly:
    """Determinant by fraction-free (Bareiss) elimination; exact."""
    k, n = g.shape
    if k != n:
        raise ValueError("determinant of a non-square matrix")
    fs = g.field
    if k == 0:
        return Poly.one(fs)
    a = _to_lists(g)
    prev = Poly.one(fs)
    sign = 1
    for t in range(k - 1):
        if a[t][t].is_zero():
            for i in range(t + 1, k):
                if not a[i][t].is_zero():
                    a[t], a[i] = a[i], a[t]
                    sign = -sign
                    break
            else:
                return Poly.zero(fs)
        for i in range(t + 1, k):
            for j in range(t + 1, k):
                num = a[t][t] * a[i][j] - a[i][t] * a[t][j]
                a[i][j] = num // prev
            a[i][t] = Poly.zero(fs)
        prev = a[t][t]
    d = a[k - 1][k - 1]
    if sign < 0:
        d = -d
    return d


def is_unimodular(g: PolyMatrix) -> bool:
    k, n = g.shape
    return k == n and det_poly(g).is_unit()


# ---- Hermite form ----

def hermite_form(g: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix]:
    """(H, U) with U unimodular, U G = H row echelon, monic pivots, entries
    above each pivot reduced below the pivot degree."""
    fs = g.field
    k, n = g.shape
    h = _to_lists(g)
    u = _to_lists(PolyMatrix.identity(fs, k))
    pr = 0
    pivots: list[tuple[int, int]] = []
    for col in range(n):
        if pr >= k:
            break
        while True:
            cands = [i for i in range(pr, k) if not h[i][col].is_zero()]
            if not cands:
                break
            best = min(cands, key=lambda i: (h[i][col].degree, i))
            if best != pr:
                h[pr], h[best] = h[best], h[pr]
                u[pr], u[best] = u[best], u[pr]
            done = True
            for i in range(pr + 1, k):
                if h[i][col].is_zero():
                    continue
                q = h[i][col] // h[pr][col]
                if not q.is_zero():
                    for j in range(n):
                        h[i][j] = h[i][j] - q * h[pr][j]
                    for j in range(k):
                        u[i][j] = u[i][j] - q * u[pr][j]
                if not h[i][col].is_zero():
                    done = False
            if done:
                break
        if pr < k and not h[pr][col].is_zero():
            c = fs.inv(h[pr][col].lead())
            if c != 1:
                h[pr] = [e.scale(c) for e in h[pr]]
                u[pr] = [e.scale(c) for e in u[pr]]
            for i in range(pr):
                q = h[i][col] // h[pr][col]
                if not q.is_zero():
                    for j in range(n):
                        h[i][j] = h[i][j] - q * h[pr][j]
                    for j in range(k):
                        u[i][j] = u[i][j] - q * u[pr][j]
            pivots.append((pr, col))
            pr += 1
    return PolyMatrix(fs, h), PolyMatrix(fs, u)


def hermite_pivots(h: PolyMatrix) -> list[tuple[int, int]]:
    """Pivot positions of an echelon matrix (first nonzero entry per row)."""
    out = []
    for i, row in enumerate(h.rows):
        for j, e in enumerate(row):
            if not e.is_zero():
                out.append((i, j))
                break
    return out


def rank(g: PolyMatrix) -> int:
    h, _ = hermite_form(g)
    return len(hermite_pivots(h))


def rank_rational(g: PolyMatrix) -> int:
    """Rank over the rational function field F(X) by fraction-free
    cross-multiplication elimination (independent of hermite_form)."""
    fs = g.field
    k, n = g.shape
    a = _to_lists(g)
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, k):
            if not a[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, k):
            if a[i][col].is_zero():
                continue
            head, lead = a[r][col], a[i][col]
            for j in range(n):
                a[i][j] = head * a[i][j] - lead * a[r][j]
        r += 1
        if r == k:
            break
    return r


# ---- Smith form ----

@dataclass(frozen=True)
class SmithDecomposition:
    u: PolyMatrix
    d: PolyMatrix
    v: PolyMatrix

    @property
    def diagonal(self) -> list[Poly]:
        k, n = self.d.shape
        return [self.d.rows[i][i] for i in range(min(k, n))]

    @property
    def rank(self) -> int:
        return sum(1 for e in self.diagonal if not e.is_zero())

    def verify(self, g: PolyMatrix) -> bool:
        if (self.u @ g) @ self.v != self.d:
            return False
        if not is_unimodular(self.u) or not is_unimodular(self.v):
            return False
        diag = self.diagonal
        k, n = self.d.shape
        for i in range(k):
            for j in range(n):
                if i != j and not self.d.rows[i][j].is_zero():
                    return False
        seen_zero = False
        for i, e in enumerate(diag):
            if e.is_zero():
                seen_zero = True
                continue
            if seen_zero:
                return False
            if not (e.is_unit() or int(e.coeffs[-1]) == 1):
                return False
            if i + 1 < len(diag) and not diag[i + 1].is_zero() \
                    and not e.divides(diag[i + 1]):
                return False
        return True


def smith_form(g: PolyMatrix) -> SmithDecomposition:
    """U G V = D with monic, divisibility-ordered diagonal."""
    fs = g.field
    k, n = g.shape
    d = _to_lists(g)
    u = _to_lists(PolyMatrix.identity(fs, k))
    v = _to_lists(PolyMatrix.identity(fs, n))

    def row_sub(i, j, q):  # row_i -= q * row_j
        for t in range(n):
            d[i][t] = d[i][t] - q * d[j][t]
        for t in range(k):
            u[i][t] = u[i][t] - q * u[j][t]

    def col_sub(j, i, q):  # col_j -= q * col_i
        for t in range(k):
            d[t][j] = d[t][j] - q * d[t][i]
        for t in range(n):
            v[t][j] = v[t][j] - q * v[t][i]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for t in range(k):
            d[t][i], d[t][j] = d[t][j], d[t][i]
        for t in range(n):
            v[t][i], v[t][j] = v[t][j], v[t][i]

    for t in range(min(k, n)):
        while True:
            best = None
            for i in range(t, k):
                for j in range(t, n):
                    if not d[i][j].is_zero():
                        key = (d[i][j].degree, i, j)
                        if best is None or key < best[0]:
                            best = (key, i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                row_swap(t, bi)
            if bj != t:
                col_swap(t, bj)
            dirty = False
            for i in range(t + 1, k):
                if d[i][t].is_zero():
                    continue
                q = d[i][t] // d[t][t]
                row_sub(i, t, q)
                if not d[i][t].is_zero():
                    dirty = True
            for j in range(t + 1, n):
                if d[t][j].is_zero():
                    continue
                q = d[t][j] // d[t][t]
                col_sub(j, t, q)
                if not d[t][j].is_zero():
                    dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, k):
                for j in range(t + 1, n):
                    if not d[t][t].divides(d[i][j]):
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # pull the offending row up so the next round shrinks the pivot
            for j in range(n):
                d[t][j] = d[t][j] + d[offender][j]
            for j in range(k):
                u[t][j] = u[t][j] + u[offender][j]
        if not d[t][t].is_zero() and d[t][t].lead() != 1:
            c = fs.inv(d[t][t].lead())
            d[t] = [e.scale(c) for e in d[t]]
            u[t] = [e.scale(c) for e in u[t]]
    return SmithDecomposition(PolyMatrix(fs, u), PolyMatrix(fs, d),
                              PolyMatrix(fs, v))


# ---- membership, closure, direct summands ----

class EchelonSolver:
    """Hermite data for one basis, reused across many membership queries."""

    __slots__ = ("g", "h", "u", "pivots")

    def __init__(self, g: PolyMatrix) -> None:
        self.g = g
        self.h, self.u = hermite_form(g)
        self.pivots = hermite_pivots(self.h)

    def solve(self, v: Sequence[Poly]) -> Optional[list[Poly]]:
        """Coordinates x over F[X] with x G = v, or None."""
        fs = self.g.field
        k, n = self.g.shape
        v = list(v)
        if k == 0:
            return [] if all(e.is_zero() for e in v) else None
        if len(v) != n:
            raise ValueError(f"vector length {len(v)} does not match width {n}")
        h, u = self.h, self.u
        y = [Poly.zero(fs)] * k
        r = v
        for (i, c) in self.pivots:
            q, rem = divmod(r[c], h.rows[i][c])
            if not rem.is_zero():
                return None
            if not q.is_zero():
                y[i] = q
                for j in range(n):
                    r[j] = r[j] - q * h.rows[i][j]
        if any(not e.is_zero() for e in r):
            return None
        x = [Poly.zero(fs)] * k
        for j in range(k):
            acc = Poly.zero(fs)
            for i in range(k):
                if not y[i].is_zero() and not u.rows[i][j].is_zero():
                    acc = acc + y[i] * u.rows[i][j]
            x[j] = acc
        return x

    def contains(self, v: Sequence[Poly]) -> bool:
        return self.solve(v) is not None


def membership(v: Sequence[Poly], g: PolyMatrix) -> Optional[list[Poly]]:
    """Coordinates x over F[X] with x G = v, or None."""
    return EchelonSolver(g).solve(v)


def row_module_contains(g: PolyMatrix, h: PolyMatrix) -> bool:
    """True iff every row of h lies in the row module of g."""
    return all(membership(row, g) is not None for row in h.rows)


def row_module_equal(g: PolyMatrix, h: PolyMatrix) -> bool:
    return row_module_contains(g, h) and row_module_contains(h, g)


def closure(g: PolyMatrix) -> PolyMatrix:
    """Canonical basis (Hermite form, zero rows dropped) of the smallest
    F[X]-direct summand of F^n[X] containing the row module of g.

    With U G V = D, the row module of G equals that of D V^{-1}, whose rows
    are the invariant factors times rows of V^{-1}; the purification keeps
    those rows of V^{-1} (the factors divided out).
    """
    fs = g.field
    s = smith_form(g)
    rho = s.rank
    hv, uv = hermite_form(s.v)
    if hv != PolyMatrix.identity(fs, s.v.shape[0]):
        raise AssertionError("V from smith_form is not unimodular")
    vinv = uv
    basis = vinv.take_rows(range(rho))
    h, _ = hermite_form(basis)
    return h.drop_zero_rows()


def is_direct_summand(g: PolyMatrix) -> bool:
    """True iff the rows span a direct summand of F^n[X] of rank equal to the
    number of rows: every Smith invariant factor is a nonzero constant."""
    s = smith_form(g)
    diag = s.diagonal
    k = g.shape[0]
    if s.rank != k:
        return False
    return all(not e.is_zero() and e.is_unit() for e in diag[:k])
