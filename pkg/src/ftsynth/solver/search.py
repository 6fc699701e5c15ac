"""Forward search for positional distributed strategies.

The search walks a tree of partial selections.  Each node keeps the set of
vertices reachable when control plays only its decided points (undecided
points act as dead ends); branching decides the frontier point with the
fewest options first, trying options in reverse declaration order, which for
symbolic games means the most-synchronized PC preconditions first.  A node is
pruned when even with every undecided point unrestricted the goal is
unreachable.  Complete selections are accepted by the same attractor check
the verifier uses, so the search can never return an unverified strategy; an
exhausted tree is reported as such, never as a nonexistence proof.
"""

from dataclasses import dataclass

from .. import errors
from ..game.attractor import attractor
from ..game.strategy import Strategy, verify_strategy


@dataclass
class SearchResult:
    strategy: Strategy | None
    status: str  # "found" | "exhausted" | "cap"
    nodes: int


class _SearchRun:
    def __init__(self, arena, depth_cap=None, node_cap=200_000):
        self.arena = arena
        self.depth_cap = depth_cap
        self.node_cap = node_cap
        self.nodes = 0
        self.capped = False
        cone = attractor(arena, arena.goal, player=0)
        self.cone = cone.vertices

    def _closure(self, selection):
        """Reachable set under the partial selection plus its undecided frontier."""
        arena = self.arena
        seen = set(arena.init)
        queue = list(arena.init)
        frontier = []
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            if arena.is_env[v]:
                succs = arena.env_succ[v]
            else:
                for point in arena.movers(v):
                    if point not in selection and point not in frontier:
                        frontier.append(point)
                succs = arena.control_succ_under(v, selection)
            for s in succs:
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
        return seen, frontier

    def _optimistic_ok(self, selection):
        """Can the goal still be reached if undecided points stay free?"""
        arena = self.arena
        seen = set(arena.init)
        queue = list(arena.init)
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            if v in arena.goal:
                return True
            if arena.is_env[v]:
                succs = arena.env_succ[v]
            else:
                succs = [
                    s
                    for sel, s in arena.moves[v]
                    if all(point not in selection or selection[point] == idx for point, idx in sel)
                ]
            for s in succs:
                if s not in seen and s in self.cone:
                    seen.add(s)
                    queue.append(s)
        return False

    def strategies(self):
        if not all(v in self.cone for v in self.arena.init):
            return
        yield from self._dfs({})

    def _dfs(self, selection):
        self.nodes += 1
        if self.node_cap is not None and self.nodes > self.node_cap:
            self.capped = True
            return
        if not self._optimistic_ok(selection):
            return
        _reach, frontier = self._closure(selection)
        if not frontier:
            strategy = Strategy(dict(selection))
            try:
                if verify_strategy(self.arena, strategy):
                    yield strategy
            except errors.PartialStrategy:
                pass
            return
        if self.depth_cap is not None and len(selection) >= self.depth_cap:
            self.capped = True
            return
        point = min(
            frontier,
            key=lambda p: (len(self.arena.point_options(p)), frontier.index(p)),
        )
        options = range(len(self.arena.point_options(point)))
        for idx in reversed(options):
            selection[point] = idx
            yield from self._dfs(selection)
            del selection[point]
            if self.capped:
                return


def search_strategies(arena, depth_cap=None, node_cap=200_000):
    """Generator over winning strategies; inspect `.capped` on the run object."""
    run = _SearchRun(arena, depth_cap=depth_cap, node_cap=node_cap)
    return run, run.strategies()


def forward_search(arena, depth_cap=None, node_cap=200_000) -> SearchResult:
    """First winning strategy in search order, or the honest reason there is none yet."""
    run, gen = search_strategies(arena, depth_cap=depth_cap, node_cap=node_cap)
    for strategy in gen:
        return SearchResult(strategy=strategy, status="found", nodes=run.nodes)
    return SearchResult(
        strategy=None,
        status="cap" if run.capped else "exhausted",
        nodes=run.nodes,
    )
