"""One-period simulation with fault injection.

Exhaustive mode enumerates every interleaving of discrete moves at interesting
instants together with every admissible fault activation, and checks the goal
at period end.  Random mode samples seeded walks through the same move space.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from ..errors import NonterminatingPeriod, StateCapExceeded
from ..expr import Expr
from ..rational import rat_str
from .core import FaultModel, TimedSystem
from .executor import (
    BLOCKED,
    Config,
    ProcessMessage,
    advance_time,
    apply_delivery,
    deliverable,
    enabled_moves,
    initial_config,
    step,
)


@dataclass(frozen=True)
class FaultyDeliver:
    """Deliver a message but drop its payload (message-loss fault variant)."""

    network: int
    fault_type: str

    def describe(self, system):
        return f"net{self.network}: deliver with fault {self.fault_type}"


@dataclass(frozen=True)
class AdvanceTime:
    target: Fraction

    def describe(self, system):
        return f"time -> {rat_str(self.target)}"


@dataclass
class TraceStep:
    time: Fraction
    label: str
    digest: str

    def render(self):
        return f"t={rat_str(self.time)} | {self.label} | {self.digest}"


@dataclass
class Trace:
    steps: list

    def render(self):
        return "\n".join(s.render() for s in self.steps)

    def labels(self):
        return [s.label for s in self.steps]


@dataclass
class Verdict:
    ok: bool
    counterexample: Trace | None
    explored: int

    @property
    def always_reached(self):
        return self.ok


@dataclass(frozen=True)
class ExhaustivePolicy:
    state_cap: int = 200_000


@dataclass(frozen=True)
class RandomPolicy:
    seed: int = 0
    samples: int = 200


def _digest(system, config, counts):
    parts = []
    for pnum, p in enumerate(system.processes, start=1):
        vals = ",".join(
            f"{n}={v}" for n, v in zip(p.var_names(), config.valuations[pnum - 1])
        )
        parts.append(f"{p.name}@{rat_str(config.pcs[pnum - 1])}{{{vals}}}")
    for nnum, ns in enumerate(config.nets, start=1):
        parts.append(f"net{nnum}=" + ("idle" if ns is None else f"msg{ns.index}->{ns.dest}"))
    if counts:
        parts.append("faults=" + ",".join(f"{k}:{v}" for k, v in counts))
    return " ".join(parts)


def _apply(system, config, counts, move):
    """Apply a simulation move (discrete, faulty delivery, or time advance)."""
    if isinstance(move, AdvanceTime):
        nxt = advance_time(system, config)
        return nxt, counts
    if isinstance(move, FaultyDeliver):
        new = apply_delivery(system, config, move.network, update_destination=False)
        bumped = tuple(
            (name, n + 1 if name == move.fault_type else n) for name, n in counts
        )
        return new, bumped
    return step(system, config, move), counts


def _moves(system, config, counts, faults):
    moves = list(enabled_moves(system, config))
    limits = dict(counts)
    for move in list(moves):
        if isinstance(move, ProcessMessage) and deliverable(system, config, move.network):
            for entry in faults.for_network(move.network):
                if limits.get(entry.fault_type, 0) < entry.max_per_period:
                    moves.append(FaultyDeliver(move.network, entry.fault_type))
    nxt = advance_time(system, config)
    if nxt is not None:
        moves.append(AdvanceTime(nxt.time))
    return moves


def _trace_from(system, path):
    steps = [TraceStep(Fraction(0), "start", _digest(system, path[0][1], path[0][2]))]
    for move, config, counts in path[1:]:
        steps.append(TraceStep(config.time, move.describe(system), _digest(system, config, counts)))
    return Trace(steps)


def simulate(
    system: TimedSystem,
    faults: FaultModel,
    goal: Expr,
    policy=ExhaustivePolicy(),
    config: Config | None = None,
) -> Verdict:
    """Check that `goal` holds at the end of every (or sampled) one-period play."""
    start = config if config is not None else initial_config(system)
    counts0 = tuple((e.fault_type, 0) for e in faults.entries)
    if isinstance(policy, RandomPolicy):
        return _simulate_random(system, faults, goal, policy, start, counts0)
    return _simulate_exhaustive(system, faults, goal, policy, start, counts0)


def _goal_holds(system, config, goal):
    return bool(goal.eval(config.qualified_env(system)))


def _simulate_exhaustive(system, faults, goal, policy, start, counts0):
    seen = {(start, counts0)}
    parent = {(start, counts0): None}
    stack = [(start, counts0)]
    explored = 0

    def path_to(state):
        chain = []
        while state is not None:
            prev = parent[state]
            if prev is None:
                chain.append((None, state[0], state[1]))
            else:
                prev_state, move = prev
                chain.append((move, state[0], state[1]))
                state = prev_state
                continue
            state = None
        chain.reverse()
        return chain

    while stack:
        state = stack.pop()
        config, counts = state
        explored += 1
        if config.time == system.period:
            if _goal_holds(system, config, goal):
                continue
            return Verdict(False, _trace_from(system, path_to(state)), explored)
        moves = _moves(system, config, counts, faults)
        if not moves:
            raise NonterminatingPeriod(
                f"stuck at t={rat_str(config.time)}: no move enabled and a deadline "
                f"blocks time from advancing",
                trace=_trace_from(system, path_to(state)),
            )
        for move in moves:
            result, new_counts = _apply(system, config, counts, move)
            if result is None or result is BLOCKED:
                continue
            nxt = (result, new_counts)
            if nxt not in seen:
                if len(seen) >= policy.state_cap:
                    raise StateCapExceeded(
                        f"exhaustive simulation exceeded {policy.state_cap} states"
                    )
                seen.add(nxt)
                parent[nxt] = (state, move)
                stack.append(nxt)
    return Verdict(True, None, explored)


def _simulate_random(system, faults, goal, policy, start, counts0):
    rng = random.Random(policy.seed)
    explored = 0
    for _ in range(policy.samples):
        config, counts = start, counts0
        path = [(None, config, counts)]
        while config.time != system.period:
            moves = _moves(system, config, counts, faults)
            if not moves:
                raise NonterminatingPeriod(
                    f"stuck at t={rat_str(config.time)} during random walk",
                    trace=_trace_from(system, path),
                )
            move = rng.choice(moves)
            result, counts = _apply(system, config, counts, move)
            if result is BLOCKED or result is None:
                continue
            config = result
            path.append((move, config, counts))
            explored += 1
        if not _goal_holds(system, config, goal):
            return Verdict(False, _trace_from(system, path), explored)
    return Verdict(True, None, explored)
