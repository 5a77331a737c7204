"""N-step reachability of boolean networks and unsafe-set checking.

Updates are synchronous: within one step every update expression reads
the same pre-step state sets, then the environment swaps. Input sets get
fresh factor ids every step (inputs are a free choice per step), while
state sets keep their ids so correlations between states propagate
exactly through the shared-factor operations.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .bitvec import BitVector, concat
from .errors import DimensionError
from .network import NetworkSpec, eval_expr_point, eval_expr_sets
from .points import (
    EnumerationBudget,
    PointSet,
    count_points,
    witness_point,
)
from .sets import (
    EXACT,
    MINKOWSKI,
    ConstrainedPolyLogicalZonotope,
    IdAllocator,
    canonicalize,
    drop_inert_ids,
    intersect,
    lz_flatten,
    refresh_ids,
    stack,
)

CPLZ = ConstrainedPolyLogicalZonotope

REP_LZ = "lz"
REP_PLZ = "plz"
REP_CPLZ = "cplz"
REPS = (REP_LZ, REP_PLZ, REP_CPLZ)


def _check_bindings(kind, declared, bound, widths):
    missing = [name for name, _ in declared if name not in bound]
    if missing:
        raise ValueError(f"missing {kind} set(s): {', '.join(missing)}")
    unknown = [name for name in bound if name not in dict(declared)]
    if unknown:
        raise ValueError(f"unknown {kind} name(s): {', '.join(unknown)}")
    for name, width in declared:
        if bound[name].n != width:
            raise DimensionError(
                f"{kind} set for {name} has dimension {bound[name].n}, declared width is {width}"
            )


@dataclass
class ReachProblem:
    """A network, initial state sets, per-step (or reused) input sets, and a horizon."""

    net: NetworkSpec
    init: dict[str, CPLZ]
    inputs: dict[str, CPLZ] | list[dict[str, CPLZ]] | None = None
    steps: int = 0

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("steps must be non-negative")
        _check_bindings("initial", self.net.states, self.init, self.net.widths)
        per_step = self.inputs_for_steps()
        for step_inputs in per_step:
            _check_bindings("input", self.net.inputs, step_inputs, self.net.widths)

    def inputs_for_steps(self) -> list[dict[str, CPLZ]]:
        if isinstance(self.inputs, list):
            if len(self.inputs) < self.steps:
                raise ValueError(
                    f"{len(self.inputs)} input maps given but {self.steps} steps requested"
                )
            return self.inputs[: self.steps]
        single = self.inputs or {}
        return [single] * self.steps


@dataclass
class SafetySpec:
    """An unsafe region attached to one named state variable."""

    state: str
    unsafe: CPLZ


@dataclass
class StepVerdict:
    step: int
    safe: bool
    witness: BitVector | None = None


@dataclass
class ReachResult:
    """Per-step state sets plus the joint point count and wall time per step.

    sizes[k] is None when point counts were not requested. Step 0 holds
    the initial sets themselves.
    """

    state_names: list[str]
    steps: list[dict[str, CPLZ]] = field(default_factory=list)
    sizes: list[int | None] = field(default_factory=list)
    times: list[float] = field(default_factory=list)
    mode: str = EXACT
    rep: str = REP_CPLZ

    def joint(self, k: int) -> CPLZ:
        """The step-k state vector stacked in declaration order."""
        sets = self.steps[k]
        acc = sets[self.state_names[0]]
        for name in self.state_names[1:]:
            acc = stack(acc, sets[name])
        return acc


def reach(
    problem: ReachProblem,
    mode: str = EXACT,
    alloc: IdAllocator | None = None,
    budget: EnumerationBudget | None = None,
    rep: str = REP_CPLZ,
    with_sizes: bool = False,
) -> ReachResult:
    """Iterate the network per the synchronous semantics for problem.steps steps.

    rep="lz" flattens every gate result to logical-zonotope form (an
    overapproximating run); "plz" and "cplz" run the polynomial
    constructions unchanged. Point counts are joint over the stacked
    state vector and only computed when with_sizes is set; the factor
    budget then applies.
    """
    if mode not in (EXACT, MINKOWSKI):
        raise ValueError(f"mode must be '{EXACT}' or '{MINKOWSKI}', got {mode!r}")
    if rep not in REPS:
        raise ValueError(f"rep must be one of {REPS}, got {rep!r}")
    alloc = alloc or IdAllocator()
    flatten = rep == REP_LZ
    if flatten:
        mode = MINKOWSKI

    env = dict(problem.init)
    if flatten:
        env = {name: lz_flatten(s, alloc) for name, s in env.items()}

    result = ReachResult(state_names=problem.net.state_names, mode=mode, rep=rep)
    result.steps.append(env)
    result.times.append(0.0)
    result.sizes.append(None)

    for step_inputs in problem.inputs_for_steps():
        t0 = time.perf_counter()
        bound = dict(env)
        for name, s in step_inputs.items():
            fresh = refresh_ids(s, alloc)
            bound[name] = lz_flatten(fresh, alloc) if flatten else fresh
        new_env = {}
        for name in problem.net.state_names:
            value = eval_expr_sets(
                problem.net.updates[name], bound, mode, alloc, flatten_lz=flatten
            )
            new_env[name] = value if flatten else drop_inert_ids(canonicalize(value))
        env = new_env
        result.steps.append(env)
        result.times.append(time.perf_counter() - t0)
        result.sizes.append(None)

    if with_sizes:
        for k in range(len(result.steps)):
            result.sizes[k] = count_points(result.joint(k), budget)
    return result


def check_unsafe(
    result: ReachResult,
    safety: SafetySpec,
    alloc: IdAllocator | None = None,
    budget: EnumerationBudget | None = None,
) -> list[StepVerdict]:
    """Per-step verdicts: SAFE iff the exact intersection with the unsafe set
    is empty; an UNSAFE verdict carries a witness point from the overlap."""
    if safety.state not in result.state_names:
        raise ValueError(f"{safety.state} is not a state of this result")
    alloc = alloc or IdAllocator(10**6)
    verdicts = []
    for k, sets in enumerate(result.steps):
        state_set = sets[safety.state]
        if state_set.n != safety.unsafe.n:
            raise DimensionError(
                f"unsafe set dimension {safety.unsafe.n} != state width {state_set.n}"
            )
        overlap = intersect(state_set, safety.unsafe, alloc)
        witness = witness_point(overlap, budget)
        verdicts.append(StepVerdict(step=k, safe=witness is None, witness=witness))
    return verdicts


def exhaustive_reach(
    net: NetworkSpec,
    init_points: dict[str, PointSet],
    input_points: dict[str, PointSet] | list[dict[str, PointSet]] | None,
    steps: int,
) -> list[PointSet]:
    """Brute-force reachable sets straight from the definition.

    Walks every combination of initial points and per-step input points,
    deduplicating the state frontier after each synchronous update, and
    returns the stacked joint state set per step. Independent oracle for
    the generator-space computation; state spaces must be desk-scale.
    """
    names = net.state_names
    frontier = {
        tuple(combo)
        for combo in itertools.product(*[init_points[name].bitvectors() for name in names])
    }

    def joint(front) -> PointSet:
        stacked = []
        for combo in front:
            acc = combo[0]
            for v in combo[1:]:
                acc = concat(acc, v)
            stacked.append(acc)
        n = sum(net.widths[name] for name in names)
        return PointSet.from_bitvectors(stacked, n)

    if isinstance(input_points, list):
        if len(input_points) < steps:
            raise ValueError(f"{len(input_points)} input maps given but {steps} steps requested")
        per_step = input_points[:steps]
    else:
        per_step = [input_points or {}] * steps

    out = [joint(frontier)]
    for step_inputs in per_step:
        input_names = list(step_inputs)
        input_choices = list(
            itertools.product(*[step_inputs[name].bitvectors() for name in input_names])
        )
        new_frontier = set()
        for combo in frontier:
            env = dict(zip(names, combo))
            for input_combo in input_choices:
                env.update(zip(input_names, input_combo))
                new_frontier.add(
                    tuple(eval_expr_point(net.updates[name], env) for name in names)
                )
        frontier = new_frontier
        out.append(joint(frontier))
    return out
