"""End-to-end synthesis: abstract, insert slots, build and solve the game,
repair the timing, write the scheduled system back out.

Stage order: validate, abstract, slots, bus-check, build, expand, solve,
timing, apply, simulate, emit.  The solve/timing/apply/simulate block is a
loop: a winning strategy whose timing system is infeasible, or whose
scheduled system fails the one-period fault simulation, is discarded and the
solver is asked for the next one.
"""

import json
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from . import errors
from .expr import Expr
from .game.arena import materialize
from .game.gameio import dump_arena, dump_strategy
from .game.strategy import Strategy, verify_strategy
from .model.core import FaultModel, validate
from .model.docio import dump_model, model_from_doc, templates_from_doc
from .model.simulate import ExhaustivePolicy, simulate
from .rational import rat_str
from .solver.cnf import solve_cnf
from .solver.dimacs import dump_dimacs, dump_varmap
from .solver.encode import encode_bounded_witness, encode_bounded_witness_interleaved
from .solver.extract import extract_strategy
from .solver.search import search_strategies
from .timing.apply import apply_timing
from .timing.canbus import check_can_conditions, profile_from_parts
from .timing.constraints import WcetTable, generate_ltm
from .timing.solve import solve_ltm
from .translate.bounds import compute_pc_bounds, to_pc_system
from .translate.build import build_game
from .translate.io import dump_pc_system
from .translate.slots import insert_slots

SOLVERS = ("search", "sat-simultaneous", "sat-interleaved")


@dataclass
class PipelineConfig:
    solver: str = "search"
    depth: int | None = None  # None: number of game vertices
    state_cap: int = 500_000
    seed: int = 0
    can_override: bool = False
    emit_dimacs: bool = False
    emit_game: bool = False
    arrival_margins: bool = True
    strategy_cap: int = 64
    wcet: WcetTable = field(default_factory=WcetTable)

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise errors.ParseError(f"unknown solver {self.solver!r}; pick one of {SOLVERS}")
        if self.depth is not None and self.depth < 1:
            raise errors.ParseError("depth must be >= 1")


@dataclass
class Stage:
    name: str
    status: str = "ok"
    detail: str = ""
    metrics: dict = field(default_factory=dict)
    seconds: float = 0.0


@dataclass
class RunReport:
    stages: list = field(default_factory=list)
    verdict: str = "failed"
    outputs: dict = field(default_factory=dict)

    def to_doc(self):
        return {
            "verdict": self.verdict,
            "stages": [
                {
                    "name": s.name,
                    "status": s.status,
                    **({"detail": s.detail} if s.detail else {}),
                    **({"metrics": s.metrics} if s.metrics else {}),
                    "seconds": round(s.seconds, 3),
                }
                for s in self.stages
            ],
            "outputs": self.outputs,
        }


@dataclass
class SynthesisResult:
    report: RunReport
    system: object = None  # scheduled TimedSystem
    strategy: Strategy | None = None
    pc_system: object = None  # synthesized abstraction
    constraint_system: object = None
    assignment: dict | None = None
    game: object = None
    arena: object = None


def _sat_strategies(arena, encode, depth):
    """Enumerate strategies from the witness encoding via blocking clauses."""
    instance = encode(arena, depth)
    clauses = list(instance.clauses)
    epos = instance.edge_positions()
    while True:
        model = solve_cnf((instance.nvars, clauses))
        if model is None:
            return
        strategy = extract_strategy(instance, model)
        yield strategy, instance
        block = [-instance.edge_var(epos[(p, i)]) for p, i in strategy.items()]
        if not block:
            return
        clauses.append(block)


def synthesized_pc_system(pc_with_slots, game, strategy: Strategy):
    """Write the strategy's slot choices back into the abstraction."""
    processes = []
    for pnum, p in enumerate(pc_with_slots.processes, start=1):
        actions = []
        for a in p.actions:
            if a.is_slot:
                point = (pnum, a.index)
                idx = strategy.get(point)
                if idx is None:
                    raise errors.PartialStrategy(
                        f"strategy leaves slot {p.name}@{rat_str(a.index)} undecided"
                    )
                choice = game.choices[point][idx]
                actions.append(replace(a, pattern=choice.pattern, chosen=choice.requires))
            else:
                actions.append(a)
        processes.append(replace(p, actions=tuple(actions)))
    return replace(pc_with_slots, processes=tuple(processes))


def synthesize(model_doc, templates_doc, config: PipelineConfig = PipelineConfig()) -> SynthesisResult:
    report = RunReport()
    result = SynthesisResult(report=report)

    def stage(name):
        s = Stage(name=name)
        report.stages.append(s)
        s._t0 = time.perf_counter()
        return s

    def finish(s, **metrics):
        s.seconds = time.perf_counter() - s._t0
        s.metrics.update(metrics)

    def fail(s, message):
        s.status = "failed"
        s.detail = message
        s.seconds = time.perf_counter() - s._t0
        raise errors.SynthesisFailed(s.name, message)

    # -- validate ------------------------------------------------------------
    s = stage("validate")
    doc = model_from_doc(model_doc) if not hasattr(model_doc, "system") else model_doc
    diags = validate(doc.system, doc.faults)
    if diags:
        fail(s, "; ".join(diags))
    if doc.goal is None:
        fail(s, "the model document declares no goal")
    finish(s, processes=len(doc.system.processes))

    # -- abstract --------------------------------------------------------------
    s = stage("abstract")
    bounds = compute_pc_bounds(doc.system)
    pc = to_pc_system(doc.system, bounds)
    finish(s, action_windows=len(bounds.actions), message_windows=len(bounds.messages))

    # -- slots ----------------------------------------------------------------
    s = stage("slots")
    specs = (
        templates_from_doc(templates_doc, [p.name for p in doc.system.processes])
        if not isinstance(templates_doc, list)
        else templates_doc
    )
    pcf = insert_slots(pc, specs)
    n_slots = sum(1 for p in pcf.processes for a in p.actions if a.is_slot)
    finish(s, slots=n_slots)

    # -- bus admission check --------------------------------------------------
    s = stage("bus-check")
    from .model.core import Send

    host_msgs = {
        a.pattern.index
        for p in doc.system.processes
        for a in p.actions
        if isinstance(a.pattern, Send)
    }
    ft_msgs = {
        pat.index
        for p in pcf.processes
        for a in p.actions
        if a.is_slot
        for pat, _w in a.candidates
        if isinstance(pat, Send)
    }
    verdict = None
    if ft_msgs and doc.can_profile is not None:
        profile = profile_from_parts(doc.can_profile, host_msgs, ft_msgs)
        verdict = check_can_conditions(profile)
        if not verdict.safe and not config.can_override:
            s.status = "failed"
            s.detail = "; ".join(m for _c, m in verdict.violations)
            s.seconds = time.perf_counter() - s._t0
            raise errors.CanCheckFailed(s.detail, verdict.violations)
    elif ft_msgs and not config.can_override:
        fail(s, "repair templates add messages but the model has no can_profile section")
    finish(s, checked=bool(verdict), safe=(verdict.safe if verdict else None))

    # -- build ----------------------------------------------------------------
    s = stage("build")
    game = build_game(pcf, doc.faults, doc.goal, can_verdict=verdict, can_override=config.can_override)
    result.game = game
    finish(s, choices=sum(len(v) for v in game.choices.values()))

    # -- expand ---------------------------------------------------------------
    s = stage("expand")
    try:
        arena = materialize(game, cap=config.state_cap)
    except errors.StateCapExceeded as exc:
        fail(s, str(exc))
    result.arena = arena
    finish(s, vertices=arena.n_vertices(), goal=len(arena.goal))

    # -- solve / timing / apply / simulate loop --------------------------------
    s = stage("solve")
    depth = config.depth if config.depth is not None else arena.n_vertices()
    if config.solver == "search":
        run, gen = search_strategies(arena, node_cap=10 * config.state_cap)
        candidates = ((strat, None) for strat in gen)
    elif config.solver == "sat-interleaved":
        candidates = _sat_strategies(arena, encode_bounded_witness_interleaved, depth)
    else:
        if arena.mode != "simultaneous":
            fail(
                s,
                "the simultaneous-progress encoding does not apply to the interleaved "
                "games this pipeline builds; use sat-interleaved or search",
            )
        candidates = _sat_strategies(arena, encode_bounded_witness, depth)

    chosen = None
    tried = 0
    last_reason = "solver produced no winning strategy"
    timing_stage_info = []
    for strategy, instance in candidates:
        tried += 1
        if tried > config.strategy_cap:
            last_reason = f"gave up after {config.strategy_cap} winning strategies"
            break
        if not verify_strategy(arena, strategy):
            continue  # defensive: solvers must only emit verified winners
        synth_pc = synthesized_pc_system(pcf, game, strategy)
        attempt = {"strategy_index": tried}
        found = None
        for margins in ([True, False] if config.arrival_margins else [False]):
            system_c = generate_ltm(doc.system, synth_pc, config.wcet, arrival_margins=margins)
            assignment = solve_ltm(system_c)
            if assignment is None:
                attempt[f"margins_{margins}"] = "infeasible"
                continue
            try:
                scheduled = apply_timing(doc.system, synth_pc, assignment, check=True)
                sim = simulate(
                    scheduled,
                    doc.faults,
                    doc.goal,
                    ExhaustivePolicy(state_cap=config.state_cap),
                )
            except errors.RefinementViolation as exc:
                attempt[f"margins_{margins}"] = f"refinement violation: {exc}"
                continue
            except errors.NonterminatingPeriod as exc:
                attempt[f"margins_{margins}"] = f"scheduled system stalls: {exc}"
                continue
            if sim.always_reached:
                found = (strategy, instance, synth_pc, system_c, assignment, scheduled, margins)
                break
            attempt[f"margins_{margins}"] = "simulation found a counterexample"
        timing_stage_info.append(attempt)
        if found:
            chosen = found
            break
        last_reason = "every timing attempt failed for the strategies tried"
    if chosen is None:
        fail(s, last_reason)
    strategy, instance, synth_pc, system_c, assignment, scheduled, margins = chosen
    finish(s, strategies_tried=tried, solver=config.solver)

    s = stage("timing")
    finish(
        s,
        constraints=len(system_c.constraints),
        variables=len(system_c.variables),
        arrival_margins=margins,
    )
    s = stage("apply")
    finish(s)
    s = stage("simulate")
    finish(s, verdict="always-reached")

    result.strategy = strategy
    result.pc_system = synth_pc
    result.constraint_system = system_c
    result.assignment = assignment
    result.system = scheduled
    result._instance = instance
    result._doc = doc
    report.verdict = "success"
    return result


def write_outputs(result: SynthesisResult, out_dir, config: PipelineConfig):
    """Write the artifacts; contents are deterministic for fixed inputs."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    doc = result._doc
    paths = {}

    def put(name, text):
        (out / name).write_text(text)
        paths[name] = str(out / name)

    put(
        "synthesized-system.json",
        dump_model(result.system, doc.faults, doc.goal, doc.can_profile),
    )
    put("strategy.json", dump_strategy(result.game, result.strategy))
    put("synthesized-abstraction.json", dump_pc_system(result.pc_system, result.system))
    put("timing-constraints.txt", result.constraint_system.dump())
    assignment_lines = [
        f"{name} = {rat_str(value)}" for name, value in sorted(result.assignment.items())
    ]
    put("timing-assignment.txt", "\n".join(assignment_lines) + "\n")
    if config.emit_game:
        put("game.txt", dump_arena(result.arena))
    if config.emit_dimacs and result._instance is not None:
        put("instance.cnf", dump_dimacs(result._instance))
        put("instance.varmap", dump_varmap(result._instance))
    result.report.outputs = paths
    return paths
