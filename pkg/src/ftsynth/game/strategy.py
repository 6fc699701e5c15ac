"""Positional distributed strategies and the winning check.

A strategy picks, per selection point (one local control vertex, or one
(process, PC) pair in symbolic games), exactly one option.  It never reads
other components' state; the winning check is: restrict control moves to the
selection and test that the initial vertices lie in the control attractor of
the goal set.
"""

from dataclasses import dataclass, field

from ..errors import PartialStrategy
from .attractor import attractor


@dataclass
class Strategy:
    choices: dict  # point -> option index

    def get(self, point):
        return self.choices.get(point)

    def __contains__(self, point):
        return point in self.choices

    def items(self):
        return self.choices.items()

    def describe(self, game):
        lines = []
        for point, idx in self.choices.items():
            lines.append(f"{game.describe_point(point)} -> {game.describe_option(point, idx)}")
        return "\n".join(lines)


def reachable_under(arena, strategy):
    """Vertices reachable from the initial ones when control plays `strategy`.

    Exploration stops at goal vertices: a play is won on arrival there.
    """
    seen = set(arena.init)
    queue = list(arena.init)
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        if v in arena.goal:
            continue
        if arena.is_env[v]:
            succs = arena.env_succ[v]
        else:
            succs = arena.control_succ_under(v, strategy.choices)
        for s in succs:
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return seen


def check_coverage(arena, strategy, reachable):
    """Raise PartialStrategy if a reachable pre-goal control vertex is uncovered."""
    for v in reachable:
        if arena.is_env[v] or v in arena.goal:
            continue
        movers = arena.movers(v)
        if not movers:
            continue
        missing = [p for p in movers if p not in strategy.choices]
        if arena.mode == "simultaneous":
            if missing:
                raise PartialStrategy(
                    f"strategy leaves {arena.game.describe_point(missing[0])} undecided at "
                    f"reachable vertex {arena.describe(v)}",
                    vertex=v,
                )
        else:
            if len(missing) == len(movers):
                raise PartialStrategy(
                    f"strategy covers no component at reachable vertex {arena.describe(v)}",
                    vertex=v,
                )


def verify_strategy(arena, strategy, record=False):
    """True iff every initial vertex is attracted to the goal under `strategy`."""
    if isinstance(strategy, dict):
        strategy = Strategy(strategy)
    reachable = reachable_under(arena, strategy)
    check_coverage(arena, strategy, reachable)
    result = attractor(arena, arena.goal, player=0, restriction=strategy.choices)
    ok = all(v in result.vertices for v in arena.init)
    if record:
        return ok, result
    return ok


def replay_plays(arena, strategy, choice=None, max_steps=None):
    """Exhaustively walk plays: control follows the recorded forcing move,
    the environment branches over all its successors.

    Returns (all_reached, deepest_step_count).  Used to confirm a verified
    strategy against an exhaustive adversary.
    """
    if isinstance(strategy, dict):
        strategy = Strategy(strategy)
    if choice is None:
        _ok, result = verify_strategy(arena, strategy, record=True)
        choice = result.choice
    limit = max_steps if max_steps is not None else 4 * arena.n_vertices() + 4
    deepest = 0
    stack = [(v, 0) for v in arena.init]
    seen = set()
    while stack:
        v, depth = stack.pop()
        if (v, depth) in seen:
            continue
        seen.add((v, depth))
        if v in arena.goal:
            deepest = max(deepest, depth)
            continue
        if depth >= limit:
            return False, deepest
        if arena.is_env[v]:
            succs = arena.env_succ[v]
            if not succs:
                return False, deepest
        else:
            if v not in choice:
                return False, deepest
            succs = [choice[v]]
        for s in succs:
            stack.append((s, depth + 1))
    return True, deepest
