"""Command-line front end: reachability runs, intersection benchmarks, enumeration.

Exit codes: 0 success/safe, 1 an UNSAFE step was found, 2 usage or parse
error, 3 enumeration budget exceeded. LOGICZONO_MAX_FACTORS overrides the
default enumeration budget; --max-factors overrides both.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time

import numpy as np

from .bitvec import BitMatrix, BitVector
from .errors import BudgetExceeded, NetParseError
from .network import parse_network
from .points import (
    DEFAULT_MAX_FACTORS,
    EnumerationBudget,
    PointSet,
    count_points,
    enumerate_points,
)
from .reach import ReachProblem, SafetySpec, check_unsafe, reach
from .sets import (
    IdAllocator,
    LogicalZonotope,
    as_cplz,
    intersect,
    intersect_overapprox_lz,
    mink_and,
    promote,
)
from . import setio

TIMING_REPS = 10  # median of this many runs, after one discarded warm-up


def _budget_from(args) -> EnumerationBudget:
    if args.max_factors is not None:
        return EnumerationBudget(max_factors=args.max_factors)
    env = os.environ.get("LOGICZONO_MAX_FACTORS")
    if env:
        return EnumerationBudget(max_factors=int(env))
    return EnumerationBudget(max_factors=DEFAULT_MAX_FACTORS)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise OSError(f"cannot open {path}: {exc.strerror}") from exc


def _read_json(path: str):
    try:
        return setio.read_json(path)
    except OSError as exc:
        raise OSError(f"cannot open {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON ({exc})") from exc


def _median_time_ms(fn) -> float:
    fn()  # warm-up discarded
    samples = []
    for _ in range(TIMING_REPS):
        t0 = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(samples)


# --- reach -------------------------------------------------------------------


def _split_subproblems(bindings: dict[str, list]) -> list[dict]:
    """Cartesian product over union alternatives of each binding."""
    problems = [dict()]
    for name, alternatives in bindings.items():
        problems = [dict(p, **{name: alt}) for p in problems for alt in alternatives]
    return problems


def _split_input_maps(per_step_or_single, steps: int):
    if isinstance(per_step_or_single, list):
        step_maps = per_step_or_single
    else:
        step_maps = [per_step_or_single] * steps
    split = [_split_subproblems(m) for m in step_maps[:steps]]
    combos = [list()]
    for alternatives in split:
        combos = [c + [alt] for c in combos for alt in alternatives]
    return combos


def cmd_reach(args) -> int:
    net = parse_network(_read_text(args.net))
    alloc = IdAllocator()
    budget = _budget_from(args)

    init_bindings = setio.load_bindings(_read_json(args.init), alloc)
    if args.inputs:
        input_bindings = setio.load_input_bindings(_read_json(args.inputs), alloc)
    else:
        if net.inputs:
            raise ValueError("the network declares inputs; provide --inputs")
        input_bindings = {}

    init_combos = _split_subproblems(init_bindings)
    input_combos = _split_input_maps(input_bindings, args.steps)
    n_sub = len(init_combos) * len(input_combos)
    if n_sub > 1:
        print(f"note: point-list bindings split the run into {n_sub} subproblems")

    safety_sets = None
    if args.unsafe:
        doc = _read_json(args.unsafe)
        if not isinstance(doc, dict) or "state" not in doc or "set" not in doc:
            raise ValueError('unsafe file must be {"state": NAME, "set": {...}}')
        safety_sets = (doc["state"], setio.sets_from_json(doc["set"], alloc))

    n_steps = args.steps + 1
    times = [0.0] * n_steps
    sizes: list[int | None] = [None] * n_steps
    unsafe_at: list[BitVector | None] = [None] * n_steps
    joint_points: list[PointSet | None] = [None] * n_steps

    for init_map in init_combos:
        for input_steps in input_combos:
            problem = ReachProblem(net=net, init=init_map, inputs=input_steps, steps=args.steps)
            result = reach(problem, mode=args.mode, alloc=alloc, budget=budget, rep=args.rep)
            for k in range(n_steps):
                times[k] += result.times[k]
            if args.enumerate:
                for k in range(n_steps):
                    if n_sub == 1:
                        sizes[k] = count_points(result.joint(k), budget)
                    else:
                        pts = enumerate_points(result.joint(k), budget)
                        joint_points[k] = pts if joint_points[k] is None else joint_points[k].union(pts)
            if safety_sets is not None:
                state_name, unsafe_alternatives = safety_sets
                for unsafe_set in unsafe_alternatives:
                    verdicts = check_unsafe(result, SafetySpec(state_name, unsafe_set), alloc, budget)
                    for v in verdicts:
                        if not v.safe and unsafe_at[v.step] is None:
                            unsafe_at[v.step] = v.witness

    if args.enumerate and n_sub > 1:
        sizes = [len(p) if p is not None else None for p in joint_points]

    checking = safety_sets is not None
    header = f"{'step':>4}  {'time_ms':>9}  {'size':>10}" + ("  verdict" if checking else "")
    print(header)
    rows = []
    for k in range(1, n_steps):
        size_txt = str(sizes[k]) if sizes[k] is not None else "not enumerated"
        row = {"step": k, "time_ms": round(times[k] * 1e3, 3), "size": sizes[k]}
        line = f"{k:>4}  {times[k] * 1e3:>9.3f}  {size_txt:>10}"
        if checking:
            verdict = "UNSAFE" if unsafe_at[k] is not None else "SAFE"
            row["verdict"] = verdict
            row["witness"] = unsafe_at[k].to01() if unsafe_at[k] is not None else None
            line += f"  {verdict}"
            if unsafe_at[k] is not None:
                line += f" (witness {unsafe_at[k].to01()})"
        print(line)
        rows.append(row)
    if checking:
        v0 = "UNSAFE" if unsafe_at[0] is not None else "SAFE"
        w0 = f" (witness {unsafe_at[0].to01()})" if unsafe_at[0] is not None else ""
        print(f"step 0 (initial): {v0}{w0}")

    if args.json:
        report = {
            "command": "reach",
            "net": args.net,
            "steps": args.steps,
            "rep": args.rep,
            "mode": args.mode,
            "subproblems": n_sub,
            "per_step": rows,
        }
        if checking:
            report["step0_verdict"] = "UNSAFE" if unsafe_at[0] is not None else "SAFE"
        setio.write_json(args.json, report)

    if checking and any(w is not None for w in unsafe_at):
        return 1
    return 0


# --- intersect ---------------------------------------------------------------


def _random_lz(rng: np.random.Generator, dim: int, gens: int) -> LogicalZonotope:
    c = BitVector.from_bits(rng.integers(0, 2, size=dim))
    G = BitMatrix.from_bool(rng.integers(0, 2, size=(dim, gens)).astype(bool))
    return LogicalZonotope(c, G)


def _intersection_routes(l1: LogicalZonotope, l2: LogicalZonotope, alloc: IdAllocator, budget):
    """LZ overapproximation, polynomial overapproximation, exact intersection."""
    p1 = as_cplz(promote(l1, alloc))
    p2 = as_cplz(promote(l2, alloc))
    routes = {
        "lz": (lambda: intersect_overapprox_lz(l1, l2)),
        "plz": (lambda: mink_and(p1, p2, alloc)),
        "cplz": (lambda: intersect(p1, p2, alloc)),
    }
    records = {}
    points = {}
    for kind, fn in routes.items():
        ms = _median_time_ms(fn)
        result = fn()
        pts = enumerate_points(result, budget)
        records[kind] = {"time_ms": round(ms, 4), "size": len(pts)}
        points[kind] = pts
    if not points["cplz"].issubset(points["lz"]) or not points["cplz"].issubset(points["plz"]):
        raise AssertionError("exact intersection escaped an overapproximation; this is a bug")
    return records, points


def cmd_intersect(args) -> int:
    alloc = IdAllocator()
    budget = _budget_from(args)
    records = []

    if args.a or args.b:
        if not (args.a and args.b):
            raise ValueError("--a and --b must be given together")
        sa = setio.sets_from_json(_read_json(args.a), alloc)
        sb = setio.sets_from_json(_read_json(args.b), alloc)
        if len(sa) != 1 or len(sb) != 1:
            raise ValueError("explicit intersection operands must be single sets, not unions")
        ca, cb = sa[0], sb[0]
        ms = _median_time_ms(lambda: intersect(ca, cb, alloc))
        pts = enumerate_points(intersect(ca, cb, alloc), budget)
        rec = {"kind": "cplz", "operation": "intersect", "time_ms": round(ms, 4),
               "size": len(pts), "dim": ca.n, "a": args.a, "b": args.b}
        records.append(rec)
        print(f"exact intersection: size {len(pts)}, {ms:.4f} ms")
    else:
        gens = args.gens if args.gens is not None else max(args.dim - 1, 1)
        print(f"{'trial':>5}  {'lz_ms':>8} {'lz_size':>8}  {'plz_ms':>8} {'plz_size':>9}"
              f"  {'cplz_ms':>8} {'cplz_size':>10}")
        for t in range(args.trials):
            rng = np.random.default_rng([args.seed, t])
            l1 = _random_lz(rng, args.dim, gens)
            l2 = _random_lz(rng, args.dim, gens)
            recs, _ = _intersection_routes(l1, l2, alloc, budget)
            for kind in ("lz", "plz", "cplz"):
                records.append({
                    "kind": kind,
                    "operation": "intersection" if kind == "cplz" else "intersection_overapprox",
                    "time_ms": recs[kind]["time_ms"],
                    "size": recs[kind]["size"],
                    "dim": args.dim,
                    "gens": gens,
                    "seed": args.seed,
                    "trial": t,
                })
            print(f"{t:>5}  {recs['lz']['time_ms']:>8.4f} {recs['lz']['size']:>8}"
                  f"  {recs['plz']['time_ms']:>8.4f} {recs['plz']['size']:>9}"
                  f"  {recs['cplz']['time_ms']:>8.4f} {recs['cplz']['size']:>10}")
        medians = {}
        for kind in ("lz", "plz", "cplz"):
            sizes = [r["size"] for r in records if r["kind"] == kind]
            times = [r["time_ms"] for r in records if r["kind"] == kind]
            medians[kind] = {"size": statistics.median(sizes), "time_ms": statistics.median(times)}
        print("medians: " + "  ".join(
            f"{kind}: size {medians[kind]['size']}, {medians[kind]['time_ms']:.4f} ms"
            for kind in ("lz", "plz", "cplz")))

    if args.json:
        doc = {"command": "intersect", "records": records}
        if not (args.a or args.b):
            doc.update({"dim": args.dim, "gens": gens, "seed": args.seed, "trials": args.trials})
        setio.write_json(args.json, doc)
    return 0


# --- enumerate ---------------------------------------------------------------


def cmd_enumerate(args) -> int:
    alloc = IdAllocator()
    budget = _budget_from(args)
    parts = setio.sets_from_json(_read_json(args.set), alloc)
    pts = enumerate_points(parts[0], budget)
    for extra in parts[1:]:
        pts = pts.union(enumerate_points(extra, budget))
    print(json.dumps(pts.to_bitstrings()))
    return 0


# --- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logiczono",
        description="Generator-space logical set operations and boolean-network reachability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_reach = sub.add_parser("reach", help="run N-step reachability, optionally checking an unsafe set")
    p_reach.add_argument("--net", required=True, help="network description file")
    p_reach.add_argument("--init", required=True, help="JSON bindings for initial state sets")
    p_reach.add_argument("--inputs", help="JSON bindings for input sets (map, or per-step array)")
    p_reach.add_argument("--steps", type=int, required=True)
    p_reach.add_argument("--rep", choices=["lz", "plz", "cplz"], default="cplz")
    p_reach.add_argument("--mode", choices=["exact", "minkowski"], default="exact")
    p_reach.add_argument("--enumerate", action="store_true", help="report joint point counts per step")
    p_reach.add_argument("--unsafe", help='JSON {"state": NAME, "set": {...}}')
    p_reach.add_argument("--max-factors", type=int, default=None)
    p_reach.add_argument("--json", help="write a machine-readable report here")
    p_reach.set_defaults(func=cmd_reach)

    p_int = sub.add_parser("intersect", help="compare intersection routes on random or explicit sets")
    p_int.add_argument("--dim", type=int, default=5)
    p_int.add_argument("--gens", type=int, default=None, help="generators per operand (default dim-1)")
    p_int.add_argument("--seed", type=int, default=0)
    p_int.add_argument("--trials", type=int, default=1)
    p_int.add_argument("--a", help="explicit first operand (set-exchange JSON)")
    p_int.add_argument("--b", help="explicit second operand")
    p_int.add_argument("--max-factors", type=int, default=None)
    p_int.add_argument("--json", help="write a machine-readable report here")
    p_int.set_defaults(func=cmd_intersect)

    p_enum = sub.add_parser("enumerate", help="print the point set of a set-exchange file")
    p_enum.add_argument("--set", required=True)
    p_enum.add_argument("--max-factors", type=int, default=None)
    p_enum.set_defaults(func=cmd_enumerate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NetParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
