"""Distributed games as products of local games plus explicit environment edges.

Global control vertices are products with at least one component in a local
control position.  In "simultaneous" mode a control move advances every
control component along one local edge each (the product formulation); in
"interleaving" mode a control move advances exactly one control component.
Environment vertices (all components in environment positions) move along the
explicitly listed global environment edges.
"""

import itertools
from dataclasses import dataclass, field

from .local import LocalGame


@dataclass
class DistributedGame:
    locals: list  # of LocalGame
    env_edges: dict  # global vertex tuple -> list of successor tuples
    init: tuple  # of global vertex tuples
    goal: tuple  # of global vertex tuples
    mode: str = "simultaneous"

    def __post_init__(self):
        self.init = tuple(self.init)
        self.goal = tuple(self.goal)

    def validate(self):
        diags = []
        if self.mode not in ("simultaneous", "interleaving"):
            diags.append(f"unknown mode {self.mode!r}")
        for k, g in enumerate(self.locals):
            for d in g.validate():
                diags.append(f"local game {k}: {d}")
        for source, targets in self.env_edges.items():
            if not self.is_env(source):
                diags.append(f"environment edge from non-environment vertex {source}")
            for t in targets:
                if t == source:
                    diags.append(f"environment self-loop at {source}")
                for k, (a, b) in enumerate(zip(source, t)):
                    if a != b and not self.locals[k].is_control(b):
                        diags.append(
                            f"environment edge {source} -> {t} moves component {k} "
                            f"to a non-control vertex"
                        )
        return diags

    # -- game interface used by the arena builder ---------------------------

    def initial_states(self):
        return list(self.init)

    def is_goal(self, state):
        return state in set(self.goal)

    def is_env(self, state):
        return all(not g.is_control(x) for g, x in zip(self.locals, state))

    def env_successors(self, state):
        return [("env", t) for t in self.env_edges.get(state, [])]

    def movers(self, state):
        return [
            (k, x)
            for k, (g, x) in enumerate(zip(self.locals, state))
            if g.is_control(x) and g.successors(x)
        ]

    def point_options(self, point):
        k, x = point
        return tuple(self.locals[k].successors(x))

    def apply_choice(self, state, point, option_idx):
        """Single-component move (interleaving formulation)."""
        k, x = point
        if state[k] != x:
            return None
        target = self.locals[k].successors(x)[option_idx]
        out = list(state)
        out[k] = target
        return tuple(out)

    def apply_combo(self, state, selections):
        """Simultaneous product move; `selections` maps point -> option index."""
        out = list(state)
        for k, (g, x) in enumerate(zip(self.locals, state)):
            if not g.is_control(x):
                continue
            succ = g.successors(x)
            if not succ:
                return None
            point = (k, x)
            if point not in selections:
                return None
            out[k] = succ[selections[point]]
        return tuple(out)

    def control_moves(self, state):
        """Enumerate control successors as (selection, successor) pairs.

        A selection is a tuple of ((point, option_idx), ...): singletons in
        interleaving mode, one entry per control component otherwise.
        """
        movers = self.movers(state)
        if not movers:
            return []
        if self.mode == "interleaving":
            out = []
            for point in movers:
                for idx in range(len(self.point_options(point))):
                    succ = self.apply_choice(state, point, idx)
                    if succ is not None:
                        out.append((((point, idx),), succ))
            return out
        axes = [
            [(point, idx) for idx in range(len(self.point_options(point)))]
            for point in movers
        ]
        out = []
        for combo in itertools.product(*axes):
            succ = self.apply_combo(state, dict(combo))
            if succ is not None:
                out.append((tuple(combo), succ))
        return out

    def all_points(self):
        """Every selection point of the game: (component, local control vertex)."""
        out = []
        for k, g in enumerate(self.locals):
            for x in g.v0:
                if g.successors(x):
                    out.append((k, x))
        return out

    def describe_state(self, state):
        return "(" + ",".join(str(x) for x in state) + ")"

    def describe_point(self, point):
        return f"G{point[0] + 1}:{point[1]}"

    def describe_option(self, point, idx):
        return str(self.point_options(point)[idx])

    def option_count(self):
        return sum(len(self.point_options(p)) for p in self.all_points())

    def product_size(self):
        """Number of product vertices (without reachability restriction)."""
        size = 1
        for g in self.locals:
            size *= len(g.v0) + len(g.v1)
        return size
