"""Command-line front end; every command prints a JSON report.

Exit codes: 0 success, 1 unreadable or invalid input, 2 a mathematical
precondition failed (the report names the error), 3 ``verify-theorems``
ran but some check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import ternary as tn
from . import tri_ternary as tt
from .algebra import Algebra, center, inner_automorphism, is_derivation, validate
from .catalog import (
    MAP_PRESETS,
    TRIAN_PRESETS,
    TRIPLE_PRESETS,
    TrianEntry,
    algebra_preset,
    dump_json,
    map_preset,
    trian_from_json,
    trian_preset,
    triple_preset,
)
from .errors import InputError, MathError, ParseError
from .linalg import Matrix, RowSpace, rank
from .serialize import (
    algebra_from_json,
    algebra_to_json,
    bimodule_to_json,
    components_from_json,
    components_to_json,
    matrix_from_json,
    matrix_to_json,
    triple_from_json,
    triple_to_json,
    vector_to_json,
)
from .triangular import center_pullback
from .verify import DEFAULT_SEED, DEFAULT_TRIALS, run_suite

COMMANDS = ("der", "terder", "decompose", "decompose-auto", "inner-check", "td-extract",
            "td-repair", "center", "trian-build", "factor", "split", "der0", "verify-theorems")

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_VERIFY = 0, 1, 2, 3


def _check(tag: str, passed: bool, **detail) -> dict:
    return {"tag": tag, "passed": bool(passed), "detail": detail}


# input resolution -----------------------------------------------------------

def _load_json_file(path: str):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _file_or_name(value: str):
    """A JSON document when ``value`` names an existing file, else the string itself."""
    if value.endswith(".json") or Path(value).is_file():
        return _load_json_file(value)
    return value


class Inputs:
    def __init__(self, args):
        self.args = args
        self._trian: TrianEntry | None = None
        self._algebra: Algebra | None = None
        self.linked_trian: str | None = None
        self.description: dict = {}

    def trian(self, required: bool = True) -> TrianEntry | None:
        if self._trian is None:
            a = self.args
            source = a.trian
            if source is None and a.preset in TRIAN_PRESETS:
                source = a.preset
            if source is None:
                source = self.linked_trian
            if source is None and a.preset in MAP_PRESETS:
                source = MAP_PRESETS[a.preset][0]
            if source is None and a.preset in TRIPLE_PRESETS:
                source = TRIPLE_PRESETS[a.preset][0]
            if source is None:
                if required:
                    raise ParseError("this command needs a triangular algebra (--trian)")
                return None
            data = _file_or_name(source)
            self._trian = trian_from_json(data, source if isinstance(data, str) else "")
            self.description["trian"] = source
        return self._trian

    def algebra(self) -> Algebra:
        if self._algebra is None:
            a = self.args
            if a.algebra is not None:
                self._algebra = algebra_from_json(_file_or_name(a.algebra))
                self.description["algebra"] = a.algebra
            elif a.preset is not None and a.preset not in TRIAN_PRESETS + tuple(MAP_PRESETS) \
                    + tuple(TRIPLE_PRESETS):
                self._algebra = algebra_preset(a.preset)
                self.description["algebra"] = a.preset
            else:
                self._algebra = self.trian().algebra.algebra
        return self._algebra

    def triple(self):
        a = self.args
        source = a.triple or (a.preset if a.preset in TRIPLE_PRESETS else None)
        if source is None:
            raise ParseError("this command needs a triple (--triple)")
        self.description["triple"] = source
        data = _file_or_name(source)
        if isinstance(data, str):
            entry, tri = triple_preset(data)
            self.linked_trian = self.linked_trian or TRIPLE_PRESETS[data][0]
            return tri, "derivation"
        if isinstance(data, dict) and isinstance(data.get("trian"), str):
            self.linked_trian = self.linked_trian or data["trian"]
        return triple_from_json(data)

    def sigma(self):
        a = self.args
        source = a.sigma or (a.preset if a.preset in MAP_PRESETS else None)
        if source is None:
            raise ParseError("this command needs a map (--sigma)")
        self.description["sigma"] = source
        data = _file_or_name(source)
        if isinstance(data, str):
            self.linked_trian = self.linked_trian or MAP_PRESETS[data][0]
            return map_preset(data)[1]
        if not isinstance(data, dict) or "sigma" not in data:
            raise ParseError("map file needs a 'sigma' matrix")
        if isinstance(data.get("trian"), str):
            self.linked_trian = self.linked_trian or data["trian"]
        return matrix_from_json(data["sigma"])


def _check_size(alg: Algebra, tri):
    if tri.n != alg.dim:
        raise ParseError(f"triple of size {tri.n} for an algebra of dimension {alg.dim}")


# commands -----------------------------------------------------------------

def cmd_der(inp: Inputs):
    alg = inp.algebra()
    basis = tn.derivation_space(alg)
    n = alg.dim
    nullity = n * n - rank_of_rows(tn.leibniz_rows(alg, (0,)), n * n)
    checks = [_check("rank-nullity", nullity == len(basis), nullity=nullity),
              _check("is-derivation", all(is_derivation(alg, d) for d in basis), count=len(basis))]
    return {"dimension": len(basis), "basis": [matrix_to_json(d) for d in basis]}, checks


def rank_of_rows(rows, ncols: int) -> int:
    return rank(Matrix(rows, ncols)) if rows else 0


def cmd_terder(inp: Inputs):
    alg = inp.algebra()
    basis = tn.terder_space(alg)
    der = tn.derivation_space(alg)
    checks = [_check("dimension-law", len(basis) == len(der) + 2 * alg.dim, der=len(der),
                     dim=alg.dim, terder=len(basis)),
              _check("is-terder", all(tn.is_terder(alg, t) for t in basis), count=len(basis))]
    return {"dimension": len(basis), "basis": [triple_to_json(t) for t in basis]}, checks


def cmd_decompose(inp: Inputs):
    tri, _ = inp.triple()
    alg = inp.algebra()
    _check_size(alg, tri)
    d, x, y = tn.decompose_terder(alg, tri)
    checks = [_check("recompose", tn.compose_terder(alg, d, x, y) == tri),
              _check("d-is-derivation", is_derivation(alg, d))]
    return {"d": matrix_to_json(d), "x": vector_to_json(x), "y": vector_to_json(y)}, checks


def cmd_decompose_auto(inp: Inputs):
    tri, _ = inp.triple()
    alg = inp.algebra()
    _check_size(alg, tri)
    sigma, x, y = tn.decompose_terauto(alg, tri)
    checks = [_check("recompose", tn.compose_terauto(alg, sigma, x, y) == tri)]
    return {"sigma": matrix_to_json(sigma), "x": vector_to_json(x), "y": vector_to_json(y)}, checks


def cmd_inner_check(inp: Inputs):
    tri, _ = inp.triple()
    entry = inp.trian(required=False)
    alg = inp.algebra()
    _check_size(alg, tri)
    w = tn.is_inner_terder(alg, tri)
    result = {"inner": w is not None,
              "witness": None if w is None else dict(zip("abc", map(vector_to_json, w)))}
    checks = []
    if w is not None:
        checks.append(_check("witness-substitution", tn.inner_terder(alg, *w) == tri))
    if entry is not None and all(entry.algebra.faithful()):
        w2 = tt.is_inner_terder_triangular(entry.algebra, tri)
        result["triangular_witness"] = None if w2 is None else {
            "a1": vector_to_json(w2[0]), "b1": vector_to_json(w2[1])}
        checks.append(_check("routes-agree", (w is None) == (w2 is None)))
    return result, checks


def cmd_td_extract(inp: Inputs):
    tri, _ = inp.triple()
    t = inp.trian().algebra
    _check_size(t.algebra, tri)
    comps = tt.extract_td(t, tri)
    conds = tt.check_td_conditions(t, comps)
    checks = [_check("roundtrip", tt.assemble_td(t, comps) == tri),
              _check("conditions", all(conds), **conds._asdict())]
    return {"components": components_to_json(comps), "conditions": conds._asdict()}, checks


def cmd_td_repair(inp: Inputs):
    a = inp.args
    if a.components:
        data = _load_json_file(a.components)
        if isinstance(data.get("trian"), str):
            inp.linked_trian = data["trian"]
        t = inp.trian().algebra
        comps = components_from_json(data, t.A.dim, t.M.dim, t.B.dim)
        inp.description["components"] = a.components
    else:
        tri, _ = inp.triple()
        t = inp.trian().algebra
        _check_size(t.algebra, tri)
        comps = tt.extract_td(t, tri, check=False)
    before = tt.check_td_conditions(t, comps)
    fixed = tt.repair_td(t, comps)
    after = tt.extract_td(t, fixed)
    keep = ("delta2", "mu3", "tau1", "tau2", "tau3", "n1", "n1p", "n2")
    checks = [_check("repaired-is-terder", tn.is_terder(t.algebra, fixed)),
              _check("kept-components", all(getattr(after, k) == getattr(comps, k) for k in keep))]
    return {"input_conditions": before._asdict(), "input_components": components_to_json(comps),
            "repaired": triple_to_json(fixed), "repaired_components": components_to_json(after)}, checks


def cmd_center(inp: Inputs):
    entry = inp.trian(required=False) if inp.args.algebra is None else None
    alg = inp.algebra()
    basis = center(alg)
    result = {"dimension": len(basis), "basis": [vector_to_json(v) for v in basis]}
    checks = []
    if entry is not None:
        pb = center_pullback(entry.algebra)
        result["pullback_basis"] = [vector_to_json(v) for v in pb]
        checks.append(_check("pullback-equals-center", RowSpace(pb, alg.dim) == RowSpace(basis, alg.dim)))
    return result, checks


def cmd_trian_build(inp: Inputs):
    entry = inp.trian()
    t = entry.algebra
    left, right = t.faithful()
    result = {"algebra": algebra_to_json(t.algebra), "A": algebra_to_json(t.A),
              "B": algebra_to_json(t.B), "M": bimodule_to_json(t.M),
              "blocks": {k: [r.start, r.stop] for k, r in t.block_ranges.items()},
              "faithful": {"left": left, "right": right}}
    return result, [_check("valid-algebra", not validate(t.algebra))]


def cmd_factor(inp: Inputs):
    sigma = inp.sigma()
    t = inp.trian().algebra
    conj, tau = tt.factor_automorphism(t, sigma)
    checks = [_check("tau-fixes-p", tau @ t.p == t.p),
              _check("recompose", inner_automorphism(t.algebra, conj) @ tau == sigma)]
    return {"conjugator": vector_to_json(conj), "tau": matrix_to_json(tau)}, checks


def cmd_split(inp: Inputs):
    t = inp.trian().algebra
    if inp.args.derivation:
        data = _load_json_file(inp.args.derivation)
        if not isinstance(data, dict) or "d" not in data:
            raise ParseError("derivation file needs a 'd' matrix")
        ders = [matrix_from_json(data["d"], (t.dim, t.dim))]
        inp.description["derivation"] = inp.args.derivation
    else:
        ders = tn.derivation_space(t.algebra)
    parts = []
    ok = True
    for d in ders:
        inner, d0 = tt.split_derivation(t, d)
        ok = ok and inner + d0 == d and not any(d0 @ t.p)
        parts.append({"d": matrix_to_json(d), "inner": matrix_to_json(inner), "d0": matrix_to_json(d0)})
    return {"splits": parts}, [_check("d-equals-inner-plus-d0", ok, count=len(ders))]


def cmd_der0(inp: Inputs):
    t = inp.trian().algebra
    d0 = tt.der0_space(t)
    i0 = tt.innder0_space(t)
    pb = tt.der0_pullback_space(t)
    n2 = t.dim * t.dim
    der = tn.derivation_space(t.algebra)
    innder = t.dim - len(center(t.algebra))
    s0 = RowSpace([m.entries() for m in d0], n2)
    checks = [
        _check("pullback-equals-der0", s0 == RowSpace([m.entries() for m in pb], n2)),
        _check("innder0-inside-der0", all(m.entries() in s0 for m in i0)),
        _check("outer-dimension", len(d0) - len(i0) == len(der) - innder,
               der0=len(d0), innder0=len(i0), der=len(der), innder=innder),
    ]
    return {"der0_dimension": len(d0), "der0_basis": [matrix_to_json(m) for m in d0],
            "innder0_dimension": len(i0), "innder0_basis": [matrix_to_json(m) for m in i0]}, checks


def cmd_verify(inp: Inputs):
    a = inp.args
    entry = inp.trian(required=False) if a.algebra is None else None
    alg = None if entry is not None else inp.algebra()
    results = run_suite(alg, entry, seed=a.seed, trials=a.trials)
    checks = [c.to_json() for c in results]
    return {"all_passed": all(c.passed for c in results), "seed": a.seed, "trials": a.trials}, checks


HANDLERS = {
    "der": cmd_der, "terder": cmd_terder, "decompose": cmd_decompose,
    "decompose-auto": cmd_decompose_auto, "inner-check": cmd_inner_check,
    "td-extract": cmd_td_extract, "td-repair": cmd_td_repair, "center": cmd_center,
    "trian-build": cmd_trian_build, "factor": cmd_factor, "split": cmd_split,
    "der0": cmd_der0, "verify-theorems": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triality", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--preset", help="preset name (algebra, triangular algebra, map or triple)")
        p.add_argument("--algebra", help="algebra JSON file or preset name")
        p.add_argument("--trian", help="triangular algebra JSON file or preset name")
        p.add_argument("--triple", help="triple JSON file or preset name")
        p.add_argument("--out", help="write the report here instead of stdout")
        if name == "td-repair":
            p.add_argument("--components", help="block components JSON file")
        if name == "factor":
            p.add_argument("--sigma", help="automorphism JSON file or preset name")
        if name == "split":
            p.add_argument("--derivation", help="JSON file with a derivation under key 'd'")
        if name == "verify-theorems":
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
            p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    return parser


def run(args) -> tuple[int, dict]:
    for opt in ("sigma", "components", "derivation"):
        if not hasattr(args, opt):
            setattr(args, opt, None)
    inp = Inputs(args)
    report = {"command": args.command}
    try:
        result, checks = HANDLERS[args.command](inp)
        code = EXIT_OK
        if args.command == "verify-theorems" and not result["all_passed"]:
            code = EXIT_VERIFY
        report.update(result=result, checks=checks, status="ok" if code == EXIT_OK else "failed")
    except InputError as exc:
        code = EXIT_INPUT
        report.update(status="error", checks=[], error={"name": type(exc).__name__, "message": str(exc)})
    except MathError as exc:
        code = EXIT_MATH
        report.update(status="error", checks=[], error={"name": type(exc).__name__, "message": str(exc)})
    report["input"] = inp.description
    return code, report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, report = run(args)
    text = dump_json(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
