"""Reachable, integer-indexed materialization of a game.

Both the product games and the symbolic games expose the same small
interface (initial_states / is_env / env_successors / control_moves /
movers / point_options / apply_choice, plus describe helpers); `materialize`
walks the reachable states once and produces flat arrays the solvers and the
attractor work on.
"""

from dataclasses import dataclass, field

from ..errors import StateCapExceeded


@dataclass
class Arena:
    game: object
    mode: str
    states: list
    index: dict
    is_env: list
    env_succ: list  # per vertex: list of successor ids (env vertices)
    moves: list  # per vertex: list of (selection, successor id); selection = ((point, opt), ...)
    init: list
    goal: set

    def n_vertices(self):
        return len(self.states)

    def vertices(self):
        return range(len(self.states))

    def movers(self, v):
        seen = []
        for selection, _succ in self.moves[v]:
            for point, _idx in selection:
                if point not in seen:
                    seen.append(point)
        return seen

    def all_points(self):
        """Selection points, reachable ones first, in deterministic order."""
        seen = []
        for v in self.vertices():
            for point in self.movers(v):
                if point not in seen:
                    seen.append(point)
        return seen

    def point_options(self, point):
        return self.game.point_options(point)

    def control_succ_under(self, v, strategy):
        """Successor ids from control vertex v consistent with `strategy`."""
        out = []
        for selection, succ in self.moves[v]:
            if all(strategy.get(point) == idx for point, idx in selection):
                out.append(succ)
        return out

    def undecided_movers(self, v, strategy):
        return [p for p in self.movers(v) if p not in strategy]

    def describe(self, v):
        return self.game.describe_state(self.states[v])


def materialize(game, cap=500_000, extra_initials=None) -> Arena:
    """Explore every state reachable from the initial ones, breadth first."""
    init_states = list(game.initial_states())
    if extra_initials:
        for s in extra_initials:
            if s not in init_states:
                init_states.append(s)
    index = {}
    states = []
    order = []

    def intern(s):
        if s not in index:
            if len(states) >= cap:
                raise StateCapExceeded(f"state budget of {cap} exceeded while expanding the game")
            index[s] = len(states)
            states.append(s)
            order.append(s)
        return index[s]

    for s in init_states:
        intern(s)
    env_flags = []
    env_succ = []
    moves = []
    head = 0
    while head < len(states):
        s = states[head]
        v = head
        head += 1
        flag = game.is_env(s)
        env_flags.append(flag)
        if flag:
            succ = []
            for _label, t in game.env_successors(s):
                succ.append(intern(t))
            env_succ.append(succ)
            moves.append([])
        else:
            env_succ.append([])
            row = []
            for selection, t in game.control_moves(s):
                row.append((selection, intern(t)))
            moves.append(row)

    goal = {i for i, s in enumerate(states) if game.is_goal(s)}
    return Arena(
        game=game,
        mode=getattr(game, "mode", "interleaving"),
        states=states,
        index=index,
        is_env=env_flags,
        env_succ=env_succ,
        moves=moves,
        init=[index[s] for s in init_states],
        goal=goal,
    )
