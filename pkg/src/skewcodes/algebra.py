"""Finite-dimensional associative unital algebras over a FieldSpec.

An Algebra is a basis a_0..a_{r-1}, a structure tensor c with
a_i a_j = sum_l c[i, j, l] a_l, and a unit vector.  Elements are coordinate
rows (numpy index arrays); linear maps are r x r index matrices in column
convention (column j = image of a_j).
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from . import _gflinalg as la
from .errors import AxiomError, MixedStructureError
from .fields import DTYPE, FieldElement, FieldSpec, field


class Algebra:
    def __init__(self, fieldspec: FieldSpec, tensor: np.ndarray, unit: np.ndarray,
                 labels: Optional[Sequence[str]] = None, meta: Optional[dict] = None):
        r = tensor.shape[0]
        if tensor.shape != (r, r, r):
            raise ValueError(f"structure tensor must be (r, r, r), got {tensor.shape}")
        if unit.shape != (r,):
            raise ValueError(f"unit must have shape ({r},)")
        self.field = fieldspec
        self.dim = r
        self.tensor = tensor.astype(DTYPE)
        self.unit = unit.astype(DTYPE)
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(r)]
        if len(self.labels) != r:
            raise ValueError("label count does not match dimension")
        self.meta = dict(meta or {})
        self._hash = hash((self.field, r, self.tensor.tobytes(), self.unit.tobytes()))

    # ---- raw coordinate ops ----

    def mul_coords(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        w = self.field.mul_arrays(x[:, None], y[None, :])
        t = self.field.mul_arrays(w[:, :, None], self.tensor)
        return self.field.sum_axis(self.field.sum_axis(t, 0), 0)

    def left_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> x * y in column convention."""
        t = self.field.mul_arrays(x[:, None, None], self.tensor)
        return self.field.sum_axis(t, 0).T.copy()

    def right_mult_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix of x -> x * y in column convention."""
        t = self.field.mul_arrays(y[None, :, None], self.tensor)
        return self.field.sum_axis(t, 1).T.copy()

    # ---- element constructors ----

    def element(self, coords) -> "AlgebraElement":
        if isinstance(coords, AlgebraElement):
            if coords.algebra != self:
                raise MixedStructureError("element from a different algebra")
            return coords
        arr = np.asarray(
            [c.idx if isinstance(c, FieldElement) else self.field.element(c).idx
             for c in coords], dtype=DTYPE)
        if arr.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} coordinates, got {arr.shape}")
        return AlgebraElement(self, arr)

    def from_coords(self, arr: np.ndarray) -> "AlgebraElement":
        return AlgebraElement(self, np.asarray(arr, dtype=DTYPE))

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, la.zeros(self.dim))

    @property
    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit.copy())

    def basis(self) -> list["AlgebraElement"]:
        return [AlgebraElement(self, la.eye(self.dim)[i]) for i in range(self.dim)]

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, la.eye(self.dim)[i])

    def format_coords(self, coords: np.ndarray) -> str:
        terms = []
        for i in range(self.dim):
            c = int(coords[i])
            if c == 0:
                continue
            cs = self.field.format_index(c)
            label = self.labels[i]
            if label == "1":
                terms.append(cs if "+" not in cs else f"({cs})")
            elif c == 1:
                terms.append(label)
            elif "+" in cs:
                terms.append(f"({cs})*{label}")
            else:
                terms.append(f"{cs}*{label}")
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Algebra) and self.field == other.field
                and self.dim == other.dim
                and np.array_equal(self.tensor, other.tensor)
                and np.array_equal(self.unit, other.unit))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        name = self.meta.get("name", f"algebra dim {self.dim}")
        return f"<{name} over {self.field!r}>"


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: np.ndarray):
        self.algebra = algebra
        self.coords = coords.astype(DTYPE)
        self.coords.flags.writeable = False

    def _check(self, other: "AlgebraElement") -> None:
        if self.algebra != other.algebra:
            raise MixedStructureError("elements of different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra,
                              self.algebra.field.add_arrays(self.coords, other.coords))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        f = self.algebra.field
        return AlgebraElement(self.algebra,
                              f.add_arrays(self.coords, f.neg_arrays(other.coords)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.field.neg_arrays(self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra,
                                  self.algebra.mul_coords(self.coords, other.coords))
        c = self.algebra.field.element(other)
        return AlgebraElement(self.algebra, la.scale(self.algebra.field, self.coords, c.idx))

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return other.__mul__(self)
        return self.__mul__(other)

    def scale(self, c) -> "AlgebraElement":
        c = self.algebra.field.element(c)
        return AlgebraElement(self.algebra, la.scale(self.algebra.field, self.coords, c.idx))

    def is_zero(self) -> bool:
        return bool(np.all(self.coords == 0))

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraElement) and self.algebra == other.algebra
                and np.array_equal(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash((self.algebra, self.coords.tobytes()))

    def __str__(self) -> str:
        return self.algebra.format_coords(self.coords)

    def __repr__(self) -> str:
        return f"<{self} in {self.algebra!r}>"


class LinearMap:
    """F-linear endomorphism of an Algebra; column j = image of basis a_j."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: Algebra, matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=DTYPE)
        if matrix.shape != (algebra.dim, algebra.dim):
            raise ValueError(f"matrix must be {algebra.dim} x {algebra.dim}")
        self.algebra = algebra
        self.matrix = matrix
        self.matrix.flags.writeable = False

    @classmethod
    def from_images(cls, algebra: Algebra, images: Sequence[AlgebraElement]) -> "LinearMap":
        cols = np.stack([im.coords for im in images], axis=1)
        return cls(algebra, cols)

    @classmethod
    def from_function(cls, algebra: Algebra,
                      fn: Callable[[AlgebraElement], AlgebraElement]) -> "LinearMap":
        return cls.from_images(algebra, [fn(b) for b in algebra.basis()])

    @classmethod
    def identity(cls, algebra: Algebra) -> "LinearMap":
        return cls(algebra, la.eye(algebra.dim))

    @classmethod
    def zero(cls, algebra: Algebra) -> "LinearMap":
        return cls(algebra, la.zeros((algebra.dim, algebra.dim)))

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.algebra:
            raise MixedStructureError("map applied to element of a different algebra")
        return AlgebraElement(self.algebra,
                              la.mat_vec(self.algebra.field, self.matrix, x.coords))

    def apply_rows(self, rows: np.ndarray) -> np.ndarray:
        """Apply to a stack of coordinate rows: rows @ matrix.T."""
        return la.mat_mul(self.algebra.field, rows, self.matrix.T)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        return self.apply(x)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        return LinearMap(self.algebra,
                         la.mat_mul(self.algebra.field, self.matrix, other.matrix))

    __matmul__ = compose

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.algebra,
                         la.mat_add(self.algebra.field, self.matrix, other.matrix))

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.algebra,
                         la.mat_sub(self.algebra.field, self.matrix, other.matrix))

    def __neg__(self) -> "LinearMap":
        return LinearMap(self.algebra, self.algebra.field.neg_arrays(self.matrix))

    def power(self, e: int) -> "LinearMap":
        return LinearMap(self.algebra, la.mat_pow(self.algebra.field, self.matrix, e))

    def is_zero(self) -> bool:
        return la.is_zero(self.matrix)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix, la.eye(self.algebra.dim)))

    def rank(self) -> int:
        return la.rank(self.algebra.field, self.matrix)

    def inverse(self) -> Optional["LinearMap"]:
        m = la.inv(self.algebra.field, self.matrix)
        return None if m is None else LinearMap(self.algebra, m)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinearMap) and self.algebra == other.algebra
                and np.array_equal(self.matrix, other.matrix))

    def __hash__(self) -> int:
        return hash((self.algebra, self.matrix.tobytes()))

    def __repr__(self) -> str:
        return f"<linear map on {self.algebra!r}>"


# ---- verification ----

class AlgebraReport:
    def __init__(self, failures: list[str]):
        self.failures = failures
        self.valid = not failures

    def __bool__(self) -> bool:
        return self.valid


def verify_algebra(a: Algebra) -> AlgebraReport:
    """Check associativity on all basis triples and two-sided unit laws."""
    failures: list[str] = []
    spec, r, c = a.field, a.dim, a.tensor
    flat = c.reshape(r * r, r)
    lhs = la.mat_mul(spec, flat, flat.reshape(r, r * r)).reshape(r, r, r, r)
    rhs = np.empty_like(lhs)
    for i in range(r):
        rhs[i] = la.mat_mul(spec, flat, c[i]).reshape(r, r, r)
    if not np.array_equal(lhs, rhs):
        bad = np.argwhere(np.any(lhs != rhs, axis=-1))[0]
        i, j, l = (int(v) for v in bad)
        failures.append(
            f"associativity fails at ({a.labels[i]}, {a.labels[j]}, {a.labels[l]})")
    for j in range(r):
        bj = la.eye(r)[j]
        if not np.array_equal(a.mul_coords(a.unit, bj), bj):
            failures.append(f"unit * {a.labels[j]} != {a.labels[j]}")
            break
        if not np.array_equal(a.mul_coords(bj, a.unit), bj):
            failures.append(f"{a.labels[j]} * unit != {a.labels[j]}")
            break
    return AlgebraReport(failures)


def check_algebra(a: Algebra) -> Algebra:
    rep = verify_algebra(a)
    if not rep.valid:
        raise AxiomError(rep.failures[0])
    return a


# ---- constructors ----

def matrix_algebra(fieldspec: FieldSpec, n: int) -> Algebra:
    """Full matrix algebra M_n over the field, basis E_{st} row-major."""
    r = n * n
    tensor = la.zeros((r, r, r))
    for s in range(n):
        for t in range(n):
            for u in range(n):
                for v in range(n):
                    if t == u:
                        tensor[s * n + t, u * n + v, s * n + v] = 1
    unit = la.zeros(r)
    for s in range(n):
        unit[s * n + s] = 1
    labels = [f"E{s + 1}{t + 1}" for s in range(n) for t in range(n)]
    return check_algebra(Algebra(fieldspec, tensor, unit, labels,
                                 meta={"kind": "matrix", "n": n,
                                       "name": f"M{n}({fieldspec!r})"}))


def group_algebra_cyclic(fieldspec: FieldSpec, n: int, symbol: str = "g") -> Algebra:
    """Group algebra of the cyclic group of order n, basis 1, g, ..., g^{n-1}."""
    tensor = la.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            tensor[i, j, (i + j) % n] = 1
    unit = la.zeros(n)
    unit[0] = 1
    labels = ["1"] + [symbol if i == 1 else f"{symbol}^{i}" for i in range(1, n)]
    return check_algebra(Algebra(fieldspec, tensor, unit, labels,
                                 meta={"kind": "group_cyclic", "n": n,
                                       "name": f"C{n} group algebra"}))


def quotient_algebra_yz(fieldspec: FieldSpec) -> Algebra:
    """F[Y, Z] / (Y^2, Z^2, YZ): basis 1, y, z with all products of y, z zero."""
    tensor = la.zeros((3, 3, 3))
    for j in range(3):
        tensor[0, j, j] = 1
        tensor[j, 0, j] = 1
    unit = la.zeros(3)
    unit[0] = 1
    return check_algebra(Algebra(fieldspec, tensor, unit, ["1", "y", "z"],
                                 meta={"kind": "quotient_yz",
                                       "name": "F[Y,Z]/(Y^2,Z^2,YZ)"}))


def quotient_algebra_tn(fieldspec: FieldSpec, poly: Sequence) -> Algebra:
    """F[t] / (f) for a monic f of degree n >= 1, basis 1, t, ..., t^{n-1}."""
    coeffs = [fieldspec.element(c) for c in poly]
    if not coeffs or coeffs[-1] != fieldspec.one:
        raise ValueError("defining polynomial must be monic")
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("defining polynomial must have degree >= 1")
    red = la.zeros((2 * n, n))
    for i in range(n):
        red[i, i] = 1
    for d in range(n, 2 * n):
        row = la.zeros(2 * n)
        for t in range(n):
            row[d - n + t] = fieldspec.neg(coeffs[t].idx)
        acc = la.zeros(n)
        for t in range(2 * n):
            if row[t]:
                if t < n:
                    acc[t] = fieldspec.add(int(acc[t]), int(row[t]))
                else:
                    acc = fieldspec.add_arrays(acc, la.scale(fieldspec, red[t], int(row[t])))
        red[d] = acc
    tensor = la.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            tensor[i, j] = red[i + j]
    unit = la.zeros(n)
    unit[0] = 1
    labels = ["1"] + ["t" if i == 1 else f"t^{i}" for i in range(1, n)]
    return check_algebra(Algebra(fieldspec, tensor, unit, labels,
                                 meta={"kind": "quotient_tn", "n": n,
                                       "poly": tuple(c.idx for c in coeffs),
                                       "name": f"F[t]/(deg {n})"}))


# ---- restriction of scalars ----

class ScalarRestriction:
    """View of an algebra over GF(p^k) as an algebra over GF(p).

    Restricted basis is b_{(i, j)} = g^j a_i in blocks of k per parent basis
    element, where g is the parent field generator.
    """

    def __init__(self, parent: Algebra):
        K = parent.field
        if K.k == 1:
            raise ValueError("parent field is already prime")
        F = field(K.p, 1)
        r, k = parent.dim, K.k
        rr = r * k
        # b_{(i,j)} = g^j a_i where g is the parent field generator (index p^j)
        tensor = la.zeros((rr, rr, rr))
        for i1 in range(r):
            for j1 in range(k):
                for i2 in range(r):
                    for j2 in range(k):
                        gg = K.mul(K.p**j1, K.p**j2)
                        prod = parent.tensor[i1, i2]
                        for l in range(r):
                            cl = int(prod[l])
                            if cl == 0:
                                continue
                            d = K.mul(gg, cl)
                            for t, ct in enumerate(K._idx_to_coeffs(d)):
                                if ct:
                                    tensor[i1 * k + j1, i2 * k + j2, l * k + t] = ct
        unit = la.zeros(rr)
        for i in range(r):
            for t in range(k):
                c = K._idx_to_coeffs(int(parent.unit[i]))[t]
                if c:
                    unit[i * k + t] = c
        labels = []
        for i in range(r):
            for j in range(k):
                if j == 0:
                    labels.append(parent.labels[i])
                else:
                    gs = K.symbol if j == 1 else f"{K.symbol}^{j}"
                    if parent.labels[i] == "1":
                        labels.append(gs)
                    else:
                        labels.append(f"{gs}*{parent.labels[i]}")
        meta = dict(parent.meta)
        meta.update({"kind": "restricted", "parent_kind": parent.meta.get("kind"),
                     "name": f"restriction of {parent.meta.get('name', 'algebra')}"})
        self.parent = parent
        self.algebra = check_algebra(Algebra(F, tensor, unit, labels, meta=meta))

    def to_restricted(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.parent:
            raise MixedStructureError("element is not in the parent algebra")
        K, k = self.parent.field, self.parent.field.k
        coords = la.zeros(self.algebra.dim)
        for i in range(self.parent.dim):
            cc = K._idx_to_coeffs(int(x.coords[i]))
            for t in range(k):
                coords[i * k + t] = cc[t]
        return AlgebraElement(self.algebra, coords)

    def to_parent(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.algebra:
            raise MixedStructureError("element is not in the restricted algebra")
        K, k = self.parent.field, self.parent.field.k
        coords = la.zeros(self.parent.dim)
        for i in range(self.parent.dim):
            cc = [int(x.coords[i * k + t]) for t in range(k)]
            coords[i] = K._coeffs_to_idx(cc)
        return AlgebraElement(self.parent, coords)

    def frobenius(self, t: int = 1) -> LinearMap:
        """Componentwise field Frobenius x -> x^(p^t) on the K-coordinates.

        Only GF(p)-linear, hence a LinearMap on the restricted algebra.
        """
        K, k = self.parent.field, self.parent.field.k
        r = self.parent.dim
        m = la.zeros((self.algebra.dim, self.algebra.dim))
        for i in range(r):
            for j in range(k):
                cc = K._idx_to_coeffs(K.frob(K.p**j, t))
                for u in range(k):
                    m[i * k + u, i * k + j] = cc[u]
        return LinearMap(self.algebra, m)


def restrict_scalars(parent: Algebra) -> ScalarRestriction:
    return ScalarRestriction(parent)


# ---- derivations ----

def inner_derivation(algebra: Algebra, sigma: LinearMap, m: AlgebraElement) -> LinearMap:
    """The sigma-twisted inner derivation x -> m x - sigma(x) m."""
    if m.algebra != algebra or sigma.algebra != algebra:
        raise MixedStructureError("mismatched algebra in inner_derivation")
    lm = algebra.left_mult_matrix(m.coords)
    rm = algebra.right_mult_matrix(m.coords)
    spec = algebra.field
    return LinearMap(algebra, la.mat_sub(spec, lm, la.mat_mul(spec, rm, sigma.matrix)))
