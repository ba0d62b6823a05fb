"""Command-line surface.

One self-describing workspace file (JSON) per invocation names the field,
the algebra, the twisting maps (sigma, delta), an optional module, and any
named element payloads; subcommands then operate on that context. Exit
status: 0 all checks passed, 1 a mathematical check failed or a requested
ring does not exist, 2 malformed input. All output is deterministic.

Workspace schema (JSON object; sections marked * are optional):

  field      {"p": int, "k": int*, "modulus": [int, ...]*}
  algebra    {"kind": "matrix"|"group_cyclic"|"quotient_yz"|"quotient_tn",
              "n": int (matrix/group sizes), "poly": [fe, ...] (quotient_tn),
              "restrict_scalars": bool*}
  sigma      {"kind": "identity"|"frobenius"|"group_power"|"matrix",
              "t": int* (frobenius), "power": int (group_power),
              "matrix": [[fe, ...], ...] (column convention)}
  delta      {"kind": "zero"|"inner"|"matrix",
              "element": elem (inner), "matrix": [[fe, ...], ...]}
  module*    {"kind": "regular"|"natural"|"trivial", "n": int (trivial)}
  prec*      int (default 8)
  elements*, polynomials*, series*, laurent*, vectors*, messages*
             {name: payload, ...}
  generators* [name, ...]  (default payload for the code subcommands)

Field elements (fe) are an index int or a list of base-p digits. Algebra
elements (elem) are a list of dim field elements, or for a scalar-restricted
matrix algebra {"parent_matrix": [[fe, fe], [fe, fe]]}. Ring polynomials are
lists of elems (ascending powers). Series payloads are {"coeffs": [elem,
...], "prec": int*}; Laurent payloads {"ord": int, "coeffs": [elem, ...],
"end": int|null}. Vectors are coefficient stacks [[fe * n], ...] (row i is
the X^i coefficient); messages are lists of F[X] polynomials [[fe, ...],
...].
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from . import _gflinalg as la
from .algebra import (Algebra, AlgebraElement, LinearMap, ScalarRestriction,
                      group_algebra_cyclic, inner_derivation, matrix_algebra,
                      quotient_algebra_tn, quotient_algebra_yz,
                      restrict_scalars)
from .codes import (code_from_generators, correspondence_roundtrip,
                    cyclic_closure, decode, encode)
from .errors import (AxiomError, MixedStructureError, PrecisionError,
                     RingUnavailableError)
from .fields import DTYPE, FieldSpec, field
from .fxlinalg import Poly
from .modact import (RightModuleSpec, VecPoly, check_module, natural_module,
                     regular_module)
from .presets import PRESETS, load_preset
from .skewlaurent import TruncLaurent, laurent_mul, laurent_ring_exists
from .skewmap import SkewDerivation, verify_skew_derivation
from .skewpoly import SkewPoly
from .skewseries import TruncSeries, ore_left, series_mul

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2


class InputError(ValueError):
    """Workspace file or payload is malformed."""


# ---- workspace parsing ----

class Workspace:
    def __init__(self, raw: dict):
        if not isinstance(raw, dict):
            raise InputError("workspace must be a JSON object")
        self.raw = raw
        self.fs = self._build_field(_get(raw, "field", dict))
        self.parent: Optional[Algebra] = None
        self.restriction: Optional[ScalarRestriction] = None
        self.algebra = self._build_algebra(_get(raw, "algebra", dict))
        sigma = self._build_sigma(_get(raw, "sigma", dict))
        delta = self._build_delta(_get(raw, "delta", dict), sigma)
        self.ctx = verify_skew_derivation(self.algebra, sigma, delta)
        self.prec = raw.get("prec", 8)
        if not isinstance(self.prec, int) or self.prec < 1:
            raise InputError("prec must be a positive integer")
        self._module: Optional[RightModuleSpec] = None

    # -- structure builders --

    def _build_field(self, spec: dict) -> FieldSpec:
        p = _get(spec, "p", int)
        k = spec.get("k", 1)
        modulus = spec.get("modulus")
        if not isinstance(k, int) or k < 1:
            raise InputError("field k must be a positive integer")
        try:
            return field(p, k, tuple(modulus) if modulus else None)
        except (ValueError, TypeError) as e:
            raise InputError(f"bad field: {e}") from e

    def _build_algebra(self, spec: dict) -> Algebra:
        kind = _get(spec, "kind", str)
        if kind == "matrix":
            a = matrix_algebra(self.fs, _get(spec, "n", int))
        elif kind == "group_cyclic":
            a = group_algebra_cyclic(self.fs, _get(spec, "n", int))
        elif kind == "quotient_yz":
            a = quotient_algebra_yz(self.fs)
        elif kind == "quotient_tn":
            poly = [self._field_elem(self.fs, c) for c in _get(spec, "poly", list)]
            a = quotient_algebra_tn(self.fs, poly)
        else:
            raise InputError(f"unknown algebra kind {kind!r}")
        if spec.get("restrict_scalars", False):
            self.parent = a
            self.restriction = restrict_scalars(a)
            a = self.restriction.algebra
        return a

    def _build_sigma(self, spec: dict) -> LinearMap:
        kind = _get(spec, "kind", str)
        if kind == "identity":
            return LinearMap.identity(self.algebra)
        if kind == "frobenius":
            if self.restriction is None:
                raise InputError("frobenius sigma needs restrict_scalars")
            t = spec.get("t", 1)
            if not isinstance(t, int) or t < 1:
                raise InputError("frobenius power t must be a positive integer")
            return self.restriction.frobenius(t)
        if kind == "group_power":
            meta = self.algebra.meta
            if meta.get("kind") != "group_cyclic":
                raise InputError("group_power sigma needs a group_cyclic algebra")
            n = meta["n"]
            u = _get(spec, "power", int)
            mat = la.zeros((n, n))
            for i in range(n):
                mat[(u * i) % n, i] = 1
            return LinearMap(self.algebra, mat)
        if kind == "matrix":
            return LinearMap(self.algebra, self._map_matrix(spec))
        raise InputError(f"unknown sigma kind {kind!r}")

    def _build_delta(self, spec: dict, sigma: LinearMap) -> LinearMap:
        kind = _get(spec, "kind", str)
        if kind == "zero":
            return LinearMap.zero(self.algebra)
        if kind == "inner":
            m = self.algebra_elem(_get(spec, "element", object))
            return inner_derivation(self.algebra, sigma, m)
        if kind == "matrix":
            return LinearMap(self.algebra, self._map_matrix(spec))
        raise InputError(f"unknown delta kind {kind!r}")

    def _map_matrix(self, spec: dict) -> np.ndarray:
        rows = _get(spec, "matrix", list)
        dim = self.algebra.dim
        if len(rows) != dim or any(not isinstance(r, list) or len(r) != dim
                                   for r in rows):
            raise InputError(f"map matrix must be {dim}x{dim}")
        mat = la.zeros((dim, dim))
        for i, row in enumerate(rows):
            for j, e in enumerate(row):
                mat[i, j] = self._field_elem(self.fs, e)
        return mat

    @property
    def module(self) -> RightModuleSpec:
        if self._module is None:
            spec = self.raw.get("module", {"kind": "regular"})
            kind = _get(spec, "kind", str)
            if kind == "regular":
                self._module = regular_module(self.algebra)
            elif kind == "natural":
                if self.restriction is None or \
                        self.restriction.parent.meta.get("kind") != "matrix":
                    raise InputError("natural module needs a scalar-restricted "
                                     "matrix algebra")
                self._module = natural_module(self.restriction)
            elif kind == "trivial":
                n = _get(spec, "n", int)
                act = np.broadcast_to(np.eye(n, dtype=DTYPE),
                                      (self.algebra.dim, n, n)).copy()
                self._module = check_module(
                    RightModuleSpec(self.algebra, act, name="trivial"))
            else:
                raise InputError(f"unknown module kind {kind!r}")
        return self._module

    # -- element parsing --

    def _field_elem(self, fs: FieldSpec, spec) -> int:
        if isinstance(spec, bool) or not isinstance(spec, (int, list)):
            raise InputError(f"bad field element {spec!r}")
        try:
            if isinstance(spec, int):
                if not 0 <= spec < fs.q:
                    raise ValueError(f"index {spec} outside [0, {fs.q})")
                return spec
            return fs.from_coeffs(spec).idx
        except (ValueError, TypeError) as e:
            raise InputError(f"bad field element {spec!r}: {e}") from e

    def algebra_elem(self, spec) -> AlgebraElement:
        a = self.algebra
        if isinstance(spec, dict):
            pm = spec.get("parent_matrix")
            if pm is None:
                raise InputError("element object needs a parent_matrix key")
            if self.restriction is None or \
                    self.restriction.parent.meta.get("kind") != "matrix":
                raise InputError("parent_matrix needs a scalar-restricted "
                                 "matrix algebra")
            parent = self.restriction.parent
            nn = parent.meta["n"]
            if len(pm) != nn or any(not isinstance(r, list) or len(r) != nn
                                    for r in pm):
                raise InputError(f"parent_matrix must be {nn}x{nn}")
            coords = la.zeros(parent.dim)
            flat = [e for row in pm for e in row]
            for i, e in enumerate(flat):
                coords[i] = self._field_elem(parent.field, e)
            return self.restriction.to_restricted(parent.element(coords))
        if not isinstance(spec, list) or len(spec) != a.dim:
            raise InputError(f"element must list {a.dim} coordinates")
        coords = la.zeros(a.dim)
        for i, e in enumerate(spec):
            coords[i] = self._field_elem(a.field, e)
        return a.from_coords(coords)

    def ring_poly(self, spec) -> SkewPoly:
        if not isinstance(spec, list):
            raise InputError("ring polynomial must be a list of elements")
        return SkewPoly.from_elements(self.ctx,
                                      [self.algebra_elem(e) for e in spec])

    def series(self, spec, prec: Optional[int]) -> TruncSeries:
        if isinstance(spec, list):
            spec = {"coeffs": spec}
        coeffs = [self.algebra_elem(e) for e in _get(spec, "coeffs", list)]
        n = prec if prec is not None else spec.get("prec", max(len(coeffs), self.prec))
        return TruncSeries.from_elements(self.ctx, coeffs, n)

    def laurent(self, spec) -> TruncLaurent:
        if isinstance(spec, list):
            spec = {"coeffs": spec}
        coeffs = [self.algebra_elem(e) for e in _get(spec, "coeffs", list)]
        ord_ = spec.get("ord", 0)
        end = spec.get("end", ord_ + len(coeffs))
        return TruncLaurent.from_elements(self.ctx, ord_, coeffs, end)

    def vecpoly(self, spec) -> VecPoly:
        mod = self.module
        if not isinstance(spec, list) or any(not isinstance(r, list) or
                                             len(r) != mod.n for r in spec):
            raise InputError(f"vector must be a list of rows of width {mod.n}")
        arr = la.zeros((len(spec), mod.n))
        for i, row in enumerate(spec):
            for j, e in enumerate(row):
                arr[i, j] = self._field_elem(mod.field, e)
        return VecPoly(mod, self.ctx, arr)

    def message(self, spec) -> list[Poly]:
        if not isinstance(spec, list):
            raise InputError("message must be a list of F[X] polynomials")
        fs = self.module.field
        out = []
        for p in spec:
            if not isinstance(p, list):
                raise InputError("each message entry must be a coefficient list")
            out.append(Poly(fs, [self._field_elem(fs, c) for c in p]))
        return out

    def payload(self, section: str, ref: str):
        """Resolve a named or inline payload from a CLI argument."""
        if ref.lstrip().startswith(("[", "{")):
            try:
                return json.loads(ref)
            except json.JSONDecodeError as e:
                raise InputError(f"bad inline payload: {e}") from e
        table = self.raw.get(section, {})
        if not isinstance(table, dict) or ref not in table:
            raise InputError(f"no entry {ref!r} in workspace section "
                             f"{section!r}")
        return table[ref]


def _get(d, key: str, typ):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"missing key {key!r}")
    v = d[key]
    if typ is object:
        return v
    if typ is int and isinstance(v, bool) or not isinstance(v, typ):
        raise InputError(f"key {key!r} has the wrong type")
    return v


def load_workspace(path: str) -> Workspace:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from e
    return Workspace(raw)


# ---- subcommands ----

def cmd_verify(args) -> int:
    ws = load_workspace(args.workspace)
    a = ws.algebra
    print(f"field: GF({ws.fs.q})")
    print(f"algebra: {a.meta.get('name', 'custom')}, dim {a.dim} "
          f"over GF({a.field.q}): axioms ok")
    print("sigma: endomorphism ok"
          + (" (invertible)" if ws.ctx.sigma_inv is not None
             else " (not invertible)"))
    print("delta: sigma-derivation ok")
    md = ws.ctx.m_delta
    mdp = ws.ctx.m_delta_prime
    print(f"m_delta: {md if md is not None else 'none'}")
    print(f"m_delta_prime: {mdp if mdp is not None else 'none'}")
    for line in laurent_ring_exists(ws.ctx).lines():
        print(line)
    return EXIT_OK


def cmd_mul(args) -> int:
    ws = load_workspace(args.workspace)
    prec = args.prec
    if args.ring == "poly":
        lhs = ws.ring_poly(ws.payload("polynomials", args.lhs))
        rhs = ws.ring_poly(ws.payload("polynomials", args.rhs))
        print(lhs * rhs)
    elif args.ring == "series":
        lhs = ws.series(ws.payload("series", args.lhs), prec)
        rhs = ws.series(ws.payload("series", args.rhs), prec)
        print(series_mul(lhs, rhs))
    else:
        lhs = ws.laurent(ws.payload("laurent", args.lhs))
        rhs = ws.laurent(ws.payload("laurent", args.rhs))
        print(laurent_mul(lhs, rhs))
    return EXIT_OK


def cmd_nop(args) -> int:
    ws = load_workspace(args.workspace)
    i, n = args.i, args.n
    if not 0 <= i <= n:
        raise InputError(f"need 0 <= i <= n, got i={i}, n={n}")
    ws.ctx.ntable.ensure(n)
    mat = ws.ctx.ntable.matrix(i, n)
    a = ws.algebra
    print(f"N_{i}^{n} on basis elements:")
    for j, lbl in enumerate(a.labels):
        print(f"  {lbl} -> {a.format_coords(mat[:, j])}")
    return EXIT_OK


def cmd_ore(args) -> int:
    ws = load_workspace(args.workspace)
    f = ws.ring_poly(ws.payload("polynomials", args.f))
    w = ore_left(f, args.k)
    print(f"f = {f}")
    print(f"X^{w.n} f = g X^{w.k} with")
    print(f"g = {w.g}")
    ok = w.verify(f)
    print(f"verified: {'yes' if ok else 'NO'}")
    return EXIT_OK if ok else EXIT_MATH


def _generators(ws: Workspace, args) -> list[VecPoly]:
    refs = args.generators
    if not refs:
        refs = ws.raw.get("generators", [])
        if not isinstance(refs, list) or not refs:
            raise InputError("no generators: pass -g or add a 'generators' "
                             "list to the workspace")
    return [ws.vecpoly(ws.payload("vectors", r)) for r in refs]


def cmd_code(args) -> int:
    ws = load_workspace(args.workspace)
    gens = _generators(ws, args)
    if args.action == "check":
        code = code_from_generators(gens, ws.module, ws.ctx)
        for line in code.lines():
            print(line)
        return EXIT_OK if code.pure and code.stable else EXIT_MATH
    if args.action == "closure":
        code = cyclic_closure(gens, ws.module, ws.ctx)
        for line in code.lines():
            print(line)
        return EXIT_OK
    if args.action == "roundtrip":
        code = cyclic_closure(gens, ws.module, ws.ctx)
        for line in code.lines():
            print(line)
        rep = correspondence_roundtrip(code)
        for line in rep.lines():
            print(line)
        return EXIT_OK if rep.ok else EXIT_MATH
    # encode
    code = cyclic_closure(gens, ws.module, ws.ctx)
    if args.message is None:
        raise InputError("encode needs -m MESSAGE")
    msg = ws.message(ws.payload("messages", args.message))
    word = encode(msg, code)
    print(f"rate: {code.k}/{code.n}")
    print(f"codeword: {word}")
    back = decode(word, code)
    ok = back is not None and [str(p) for p in back] == [str(p) for p in msg]
    print(f"decode returns the message: {'yes' if ok else 'NO'}")
    return EXIT_OK if ok else EXIT_MATH


def cmd_example(args) -> int:
    bundle = load_preset(args.name)
    print(f"example: {bundle.name}")
    failed = 0
    for label, ok in bundle.checks():
        print(f"{'ok  ' if ok else 'FAIL'} {label}")
        failed += not ok
    for line in laurent_ring_exists(bundle.ctx).lines():
        print(line)
    return EXIT_OK if failed == 0 else EXIT_MATH


# ---- dispatch ----

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="skewcodes",
        description="Exact arithmetic in twisted polynomial, series and "
                    "Laurent rings over finite-dimensional algebras, with "
                    "the associated convolutional code checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify the workspace structures and "
                                      "report which rings exist")
    p.add_argument("-w", "--workspace", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mul", help="multiply two named or inline payloads")
    p.add_argument("-w", "--workspace", required=True)
    p.add_argument("-r", "--ring", choices=["poly", "series", "laurent"],
                   default="poly")
    p.add_argument("--prec", type=int, default=None,
                   help="override the series precision")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("nop", help="print the coefficient operator N_i^n")
    p.add_argument("-w", "--workspace", required=True)
    p.add_argument("-i", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_nop)

    p = sub.add_parser("ore", help="print and verify a left Ore witness "
                                   "X^n f = g X^k")
    p.add_argument("-w", "--workspace", required=True)
    p.add_argument("-f", required=True, help="polynomial payload")
    p.add_argument("-k", type=int, default=1)
    p.set_defaults(func=cmd_ore)

    p = sub.add_parser("code", help="convolutional code checks")
    p.add_argument("action", choices=["check", "closure", "roundtrip",
                                      "encode"])
    p.add_argument("-w", "--workspace", required=True)
    p.add_argument("-g", "--generators", action="append", default=[],
                   help="vector payload name or inline JSON (repeatable)")
    p.add_argument("-m", "--message", default=None,
                   help="message payload for encode")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("example", help="re-run a named worked example")
    p.add_argument("name", choices=sorted(PRESETS))
    p.set_defaults(func=cmd_example)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (AxiomError, RingUnavailableError, MixedStructureError) as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
