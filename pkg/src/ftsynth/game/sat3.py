"""Reduction from 3-CNF satisfiability to positional distributed strategy
existence, used as a hardness-backed test-instance generator and oracle.

Three identical chooser components each map variable vertices to True/False
commitments; a fourth component tracks which check the environment started.
The environment either challenges a clause (its three literals' variables) or
challenges the consistency of one variable across the three choosers; replies
that satisfy the clause, or commit uniformly, route to an accepting vertex,
everything else routes to a rejecting sink.
"""

from dataclasses import dataclass

from ..errors import MalformedClause
from .distributed import DistributedGame
from .local import LocalGame
from .strategy import Strategy


@dataclass(frozen=True)
class Cnf3:
    n_vars: int
    clauses: tuple  # of 3-tuples of non-zero ints (negative = negated)

    def check(self):
        for c in self.clauses:
            if len(c) != 3:
                raise MalformedClause(f"clause {c} does not have exactly three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise MalformedClause(f"clause {c} has an out-of-range literal")

    def evaluate(self, assignment):
        """assignment: dict var -> bool."""
        return all(
            any(assignment[abs(l)] == (l > 0) for l in clause) for clause in self.clauses
        )


def _var(i):
    return f"x{i}"


def _t(i):
    return f"T{i}"


def _f(i):
    return f"F{i}"


def reduce_3sat(cnf: Cnf3) -> DistributedGame:
    """Build the product game; satisfiable iff a positional winning strategy exists."""
    cnf.check()
    n, m = cnf.n_vars, len(cnf.clauses)

    chooser_v0 = tuple(_var(i) for i in range(1, n + 1))
    chooser_v1 = ("S",) + tuple(x for i in range(1, n + 1) for x in (_t(i), _f(i)))
    chooser_edges = tuple(
        (v, t) for i in range(1, n + 1) for v, t in ((_var(i), _t(i)), (_var(i), _f(i)))
    )
    choosers = [LocalGame(chooser_v0, chooser_v1, chooser_edges) for _ in range(3)]

    tracker_v0 = ("OK0", "NO0") + tuple(f"v{j}_0" for j in range(1, m + n + 1))
    tracker_v1 = ("S", "OK1", "NO1") + tuple(f"v{j}_1" for j in range(1, m + n + 1))
    tracker_edges = tuple((f"v{j}_0", f"v{j}_1") for j in range(1, m + n + 1)) + (
        ("OK0", "OK1"),
        ("NO0", "NO1"),
    )
    tracker = LocalGame(tracker_v0, tracker_v1, tracker_edges)

    start = ("S", "S", "S", "S")
    accept = (_var(1), _var(1), _var(1), "OK0")
    reject = (_var(1), _var(1), _var(1), "NO0")

    env_edges = {}

    def add(src, dst):
        env_edges.setdefault(src, [])
        if dst not in env_edges[src]:
            env_edges[src].append(dst)

    # Challenge a clause, or challenge one variable's consistency.
    for j, clause in enumerate(cnf.clauses, start=1):
        vars3 = tuple(abs(l) for l in clause)
        add(start, (_var(vars3[0]), _var(vars3[1]), _var(vars3[2]), f"v{j}_0"))
    for i in range(1, n + 1):
        add(start, (_var(i), _var(i), _var(i), f"v{m + i}_0"))

    # Clause verdicts: every True/False reply combination either satisfies the
    # clause (route to accept) or not (route to reject).
    for j, clause in enumerate(cnf.clauses, start=1):
        vars3 = tuple(abs(l) for l in clause)
        for bits in range(8):
            values = [(bits >> k) & 1 == 1 for k in range(3)]
            marks = tuple(_t(vars3[k]) if values[k] else _f(vars3[k]) for k in range(3))
            satisfied = any(values[k] == (clause[k] > 0) for k in range(3))
            add(marks + (f"v{j}_1",), accept if satisfied else reject)

    # Consistency verdicts: uniform replies accept, the six mixed ones reject.
    for i in range(1, n + 1):
        for bits in range(8):
            values = [(bits >> k) & 1 == 1 for k in range(3)]
            marks = tuple(_t(i) if values[k] else _f(i) for k in range(3))
            target = accept if len(set(values)) == 1 else reject
            add(marks + (f"v{m + i}_1",), target)

    # Absorbing loops after a verdict.
    for i in range(1, n + 1):
        for bits in range(8):
            values = [(bits >> k) & 1 == 1 for k in range(3)]
            marks = tuple(_t(i) if values[k] else _f(i) for k in range(3))
            add(marks + ("OK1",), accept)
            add(marks + ("NO1",), reject)

    return DistributedGame(
        locals=choosers + [tracker],
        env_edges=env_edges,
        init=(start,),
        goal=(accept,),
        mode="simultaneous",
    )


def assignment_from_strategy(cnf: Cnf3, strategy: Strategy):
    """Read the variable assignment off the first chooser's selections."""
    game_points = {}
    for (component, vertex), idx in strategy.items():
        if component == 0:
            game_points[vertex] = idx
    assignment = {}
    for i in range(1, cnf.n_vars + 1):
        idx = game_points.get(_var(i))
        if idx is None:
            assignment[i] = True  # unconstrained variable
        else:
            # Options are declared (T, F) in edge order.
            assignment[i] = idx == 0
    return assignment


def strategy_from_assignment(cnf: Cnf3, game: DistributedGame, assignment) -> Strategy:
    """Point every chooser per the assignment; the tracker has single edges."""
    choices = {}
    for point in game.all_points():
        component, vertex = point
        if component < 3 and vertex.startswith("x"):
            i = int(vertex[1:])
            choices[point] = 0 if assignment[i] else 1
        else:
            choices[point] = 0
    return Strategy(choices)
