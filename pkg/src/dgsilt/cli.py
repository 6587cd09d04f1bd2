"""Batch command-line front end.

Commands: validate, report, mutate, dot, order. Input is the line-oriented
quiver format of :mod:`dgsilt.quiverfile`. Exit codes: 0 success, 1 failed
--assert verdict, 2 parse or validation error (including inapplicable
parameters), 3 engine-ineligible input (cyclic quiver). Reports carry a
digest of the canonical serialization, so identical inputs produce byte
identical output; there are no timestamps.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import engine
from .algebra import algebra_from_quiver, h0_dimension
from .criteria import (
    LOOP_PRESENT,
    ext_table,
    global_dimension,
    mutation_check,
    nu_obstruction_cycle,
    projdim_simple,
)
from .errors import (
    CyclicQuiverError,
    DgsiltError,
    GlobalDimensionExceededError,
    QuiverParseError,
    ResolutionCapExceededError,
)
from .quiver import DgQuiver, validate
from .quiverfile import serialize

SCHEMA = "dgsilt-report/1"
CAP_ENV = "DGSILT_RESOLUTION_CAP"

EXIT_OK = 0
EXIT_ASSERT = 1
EXIT_INPUT = 2
EXIT_ENGINE = 3


def _digest(q: DgQuiver) -> str:
    return hashlib.sha256(serialize(q).encode("utf-8")).hexdigest()


def _report(command: str, path: str, q: DgQuiver, results, provenance=()) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "input": {"path": path, "digest": _digest(q)},
        "results": results,
        "provenance": list(provenance),
    }


def _emit(report: dict, as_json: bool, render) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        render(report)


def _load(path: str) -> DgQuiver:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    from .quiverfile import parse

    return parse(text).to_quiver()


def cmd_validate(args) -> int:
    q = _load(args.path)
    rep = validate(q)
    results = {
        "valid": rep.ok,
        "violations": [
            {"code": v.code, "message": v.message, "subject": v.subject}
            for v in rep.violations
        ],
    }
    report = _report("validate", args.path, q, results)

    def render(r):
        res = r["results"]
        print(f"quiver {r['input']['path']} (digest {r['input']['digest'][:12]})")
        if res["valid"]:
            print("valid: all dg-quiver invariants hold (d*d = 0 included)")
        else:
            print("invalid:")
            for v in res["violations"]:
                print(f"  [{v['code']}] {v['message']}")

    _emit(report, args.json, render)
    return EXIT_OK if rep.ok else EXIT_INPUT


def _require_valid(q: DgQuiver) -> None:
    rep = validate(q)
    if not rep.ok:
        raise QuiverParseError(0, "; ".join(v.message for v in rep.violations))


def cmd_report(args) -> int:
    q = _load(args.path)
    _require_valid(q)
    g = global_dimension(q)
    d = args.d if args.d is not None else max(g, 1)
    nmax = args.nmax if args.nmax is not None else max(g, 1)
    if d < g:
        print(f"error: --d {d} is below the global dimension {g}", file=sys.stderr)
        return EXIT_INPUT
    verdicts = [mutation_check(q, v, d) for v in sorted(q.vertices)]
    cycle = nu_obstruction_cycle(q, d)
    table = ext_table(q, nmax)
    results = {
        "global_dimension": g,
        "d": d,
        "proj_dim_simples": {v.id: projdim_simple(q, v) for v in sorted(q.vertices)},
        "ext_table": [
            {"i": i, "j": j, "n": n, "dim": dim} for i, j, n, dim in table.nonzero()
        ],
        "mutation_verdicts": [
            {
                "vertex": v.vertex,
                "admissible": v.admissible,
                "reason": v.reason,
                "offending": list(v.offending),
            }
            for v in verdicts
        ],
        "nu_obstruction_cycle": None if cycle is None else [
            {"arrow": a.id, "source": a.source.id, "target": a.target.id}
            for a in cycle
        ],
    }
    report = _report("report", args.path, q, results)

    def render(r):
        res = r["results"]
        print(f"quiver {r['input']['path']} (digest {r['input']['digest'][:12]})")
        print(f"global dimension: {res['global_dimension']}")
        print("projective dimensions of vertex simples:")
        for v, p in res["proj_dim_simples"].items():
            print(f"  {v}: {p}")
        print(f"ext table, nonzero entries up to n = {nmax}:")
        for e in res["ext_table"]:
            if e["n"]:
                print(f"  Ext^{e['n']}(S_{e['i']}, S_{e['j']}) = {e['dim']}")
        print(f"mutation verdicts at d = {res['d']}:")
        for v in res["mutation_verdicts"]:
            if v["admissible"]:
                print(f"  {v['vertex']}: admissible")
            elif v["reason"] == LOOP_PRESENT:
                print(f"  {v['vertex']}: criterion inapplicable "
                      f"(degree -d+1 loop: {', '.join(v['offending'])})")
            else:
                print(f"  {v['vertex']}: not admissible "
                      f"(offending arrows: {', '.join(v['offending'])})")
        if res["nu_obstruction_cycle"] is None:
            print("nu_d-finiteness obstruction: none found")
        else:
            desc = " -> ".join(
                f"{c['arrow']}({c['source']}->{c['target']})"
                for c in res["nu_obstruction_cycle"])
            print(f"nu_d-finiteness obstruction: cycle {desc}")

    _emit(report, args.json, render)
    if args.assert_admissible:
        if not all(v.admissible for v in verdicts):
            return EXIT_ASSERT
    return EXIT_OK


def cmd_mutate(args) -> int:
    q = _load(args.path)
    _require_valid(q)
    cap = args.cap
    if cap is None and os.environ.get(CAP_ENV):
        cap = int(os.environ[CAP_ENV])
    engine.set_resolution_cap_override(cap)
    try:
        try:
            a = algebra_from_quiver(q)
        except CyclicQuiverError:
            print("error: engine requires an acyclic quiver; criteria-only "
                  "commands remain available", file=sys.stderr)
            return EXIT_ENGINE
        g = global_dimension(q)
        d = args.d if args.d is not None else max(g, 1)
        if d < g:
            print(f"error: --d {d} is below the global dimension {g}", file=sys.stderr)
            return EXIT_INPUT
        nmax = args.nmax if args.nmax is not None else d + 1
        if args.vertex not in [v.id for v in q.vertices]:
            print(f"error: unknown vertex {args.vertex!r}", file=sys.stderr)
            return EXIT_INPUT
        s = engine.seed(a)
        verdict = mutation_check(q, q.vertex(args.vertex), d)
        fine = engine.fine_mutation_check(s, args.vertex, d)
        m = engine.mutate(s, args.vertex)
        e = engine.endomorphism_algebra(m)
        table = engine.minimal_model_quiver(e, nmax)
        silt_d = engine.is_d_silting(m, d)
        silt_d1 = engine.is_d_silting(m, d + 1)
        dri = None
        if args.dri_window:
            rep = engine.dri_window(m, d, args.dri_window)
            dri = {"ok": rep.ok, "per_n": {str(k): v for k, v in rep.per_n.items()}}
        results = {
            "vertex": args.vertex,
            "d": d,
            "criteria_verdict": {
                "admissible": verdict.admissible,
                "reason": verdict.reason,
                "offending": list(verdict.offending),
            },
            "fine_mutation_check": fine,
            "mutated_quiver_arrows": [
                {"source": s_, "target": t_, "degree": deg, "count": c}
                for (s_, t_, deg), c in table.arrow_counts().items()
            ],
            "h0_dimension_total": sum(
                h0_dimension(e, i, j) for i in e.vertices for j in e.vertices),
            "is_d_silting": {str(d): silt_d, str(d + 1): silt_d1},
            "dri_window": dri,
        }
        report = _report("mutate", args.path, q, results,
                         provenance=("seed",) + m.provenance)

        def render(r):
            res = r["results"]
            print(f"quiver {r['input']['path']} (digest {r['input']['digest'][:12]})")
            print(f"left mutation at vertex {res['vertex']}, d = {res['d']}")
            cv = res["criteria_verdict"]
            state = ("admissible" if cv["admissible"] else
                     "inapplicable (loop)" if cv["reason"] == LOOP_PRESENT
                     else f"not admissible ({', '.join(cv['offending'])})")
            print(f"arrow criterion: {state}")
            print(f"fine mutation check: {res['fine_mutation_check']}")
            print("mutated minimal-model quiver arrow counts:")
            for e_ in res["mutated_quiver_arrows"]:
                print(f"  {e_['source']} -> {e_['target']}  degree {e_['degree']}"
                      f"  x{e_['count']}")
            print(f"total H^0 dimension of the mutated endomorphism algebra: "
                  f"{res['h0_dimension_total']}")
            for dd, val in res["is_d_silting"].items():
                print(f"is {dd}-silting: {val}")
            if res["dri_window"] is not None:
                w = res["dri_window"]
                print(f"representation-infinite window: ok={w['ok']} per_n={w['per_n']}")

        _emit(report, args.json, render)
        if args.assert_silting and not silt_d:
            return EXIT_ASSERT
        return EXIT_OK
    finally:
        engine.set_resolution_cap_override(None)


def cmd_dot(args) -> int:
    q = _load(args.path)
    _require_valid(q)
    lines = ["digraph dgquiver {"]
    for v in sorted(q.vertices):
        lines.append(f'  "{v.id}";')
    for a in sorted(q.arrows):
        if args.degree_style == "labeled":
            attrs = f'label="{a.id} ({a.degree})"'
        elif a.degree == 0:
            attrs = f'label="{a.id}", style=solid'
        elif a.degree == -1:
            attrs = f'label="{a.id}", style=dashed'
        else:
            attrs = f'label="{a.id} ({a.degree})", style=dotted'
        lines.append(f'  "{a.source.id}" -> "{a.target.id}" [{attrs}];')
    lines.append("}")
    print("\n".join(lines))
    return EXIT_OK


def _apply_sequence(s, seq: str):
    current = s
    if seq.strip():
        for v in seq.split(","):
            current = engine.mutate(current, v.strip())
    return current


def cmd_order(args) -> int:
    q = _load(args.path)
    _require_valid(q)
    try:
        a = algebra_from_quiver(q)
    except CyclicQuiverError:
        print("error: engine requires an acyclic quiver; criteria-only "
              "commands remain available", file=sys.stderr)
        return EXIT_ENGINE
    s = engine.seed(a)
    left = _apply_sequence(s, args.left)
    right = _apply_sequence(s, args.right)
    ge = engine.silt_order_check(left, right)
    le = engine.silt_order_check(right, left)
    relation = ("equal" if ge and le else ">=" if ge else "<=" if le
                else "incomparable")
    results = {
        "left": args.left, "right": args.right,
        "left_ge_right": ge, "right_ge_left": le, "relation": relation,
    }
    report = _report("order", args.path, q, results,
                     provenance=("seed",) + left.provenance + right.provenance)

    def render(r):
        res = r["results"]
        print(f"left  = seed then mutations [{res['left']}]")
        print(f"right = seed then mutations [{res['right']}]")
        print(f"left >= right: {res['left_ge_right']}")
        print(f"right >= left: {res['right_ge_left']}")
        print(f"relation: {res['relation']}")

    _emit(report, args.json, render)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dgsilt",
        description="Exact toolkit for dg path algebras and silting mutation.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a quiver file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("report", help="criteria report: gl.dim, Ext table, verdicts")
    p.add_argument("path")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--assert", dest="assert_admissible", action="store_true",
                   help="exit 1 unless every vertex is admissible")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("mutate", help="run the engine mutation at a vertex")
    p.add_argument("path")
    p.add_argument("--vertex", required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--dri-window", type=int, default=0,
                   help="also verify the representation-infinite window up to n")
    p.add_argument("--cap", type=int, default=None,
                   help=f"resolution cap override (or env {CAP_ENV})")
    p.add_argument("--assert", dest="assert_silting", action="store_true",
                   help="exit 1 unless the mutation is d-silting")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("dot", help="emit a DOT graph")
    p.add_argument("path")
    p.add_argument("--degree-style", choices=("styled", "labeled"),
                   default="styled")
    p.set_defaults(fn=cmd_dot)

    p = sub.add_parser("order", help="compare two mutation sequences")
    p.add_argument("path")
    p.add_argument("--left", default="", help="comma-separated vertices, empty = seed")
    p.add_argument("--right", default="", help="comma-separated vertices, empty = seed")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_order)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except QuiverParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except GlobalDimensionExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResolutionCapExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ENGINE
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except DgsiltError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
