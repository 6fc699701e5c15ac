"""Bounded-witness CNF encodings for positional distributed strategies.

Depth-indexed vertex variables <v>_i say "v reaches the goal within d-i
steps"; edge variables <e> say "the strategy selects local edge e".  A
satisfying assignment simultaneously fixes a positional selection and a
witness set certifying that every selected play from the initial vertices
reaches the goal within d-1 steps.

Two control-progress rules are provided: the product rule quantifies over
whole edge combinations (every control component steps at once); the
interleaved rule emits one implication per single local edge, matching games
where one component moves per control turn.
"""

from dataclasses import dataclass, field


@dataclass
class CnfInstance:
    d: int
    n_states: int
    edges: list  # ordered (point, option_idx)
    clauses: list
    labels: dict  # var index -> human label
    arena: object = None

    @property
    def nvars(self):
        return self.d * self.n_states + len(self.edges)

    def vertex_var(self, v, i):
        """1-based depth i in 1..d."""
        return v * self.d + i

    def edge_var(self, position):
        return self.n_states * self.d + 1 + position

    def edge_positions(self):
        return {edge: pos for pos, edge in enumerate(self.edges)}


_COMBO_CAP = 1 << 16


def _base_instance(arena, d):
    # Edge variables cover the game's full (static) local edge set, not just
    # the reachable part, so the variable count is d*|V| + #local control edges.
    edges = []
    for point in arena.game.all_points():
        for idx in range(len(arena.point_options(point))):
            edges.append((point, idx))
    inst = CnfInstance(d=d, n_states=arena.n_vertices(), edges=edges, clauses=[], labels={}, arena=arena)
    for v in arena.vertices():
        for i in range(1, d + 1):
            inst.labels[inst.vertex_var(v, i)] = f"v[{arena.describe(v)}]@{i}"
    for pos, (point, idx) in enumerate(edges):
        inst.labels[inst.edge_var(pos)] = (
            f"e[{arena.game.describe_point(point)}->{arena.game.describe_option(point, idx)}]"
        )
    return inst


def _steps_1_to_5(arena, d, inst):
    clauses = inst.clauses
    epos = inst.edge_positions()

    # Initial layer: the initial vertices are set at depth 1 and every other
    # vertex is clear - except goal vertices, which by definition sit in the
    # witness at every depth.
    init = set(arena.init)
    for v in arena.vertices():
        lit = inst.vertex_var(v, 1)
        if v in init:
            clauses.append([lit])
        elif v not in arena.goal:
            clauses.append([-lit])

    # Goal vertices hold at every depth; everything else dies at depth d.
    for v in arena.vertices():
        if v in arena.goal:
            for i in range(1, d + 1):
                clauses.append([inst.vertex_var(v, i)])
        else:
            clauses.append([-inst.vertex_var(v, d)])

    # Positional selection: at most one edge per selection point.
    for point in arena.game.all_points():
        options = range(len(arena.point_options(point)))
        for a in options:
            for b in options:
                if a < b:
                    clauses.append(
                        [-inst.edge_var(epos[(point, a)]), -inst.edge_var(epos[(point, b)])]
                    )

    # A non-goal control vertex in the witness must select an edge for each
    # of its control components.
    for v in arena.vertices():
        if arena.is_env[v] or v in arena.goal:
            continue
        for point in arena.movers(v):
            options = [inst.edge_var(epos[(point, idx)]) for idx in range(len(arena.point_options(point)))]
            if not options:
                continue
            for i in range(1, d + 1):
                clauses.append([-inst.vertex_var(v, i)] + options)

    # Dead ends other than the goal can never be in the witness.
    for v in arena.vertices():
        if v in arena.goal:
            continue
        if arena.is_env[v]:
            if not arena.env_succ[v]:
                for i in range(1, d + 1):
                    clauses.append([-inst.vertex_var(v, i)])
        elif not arena.moves[v]:
            for i in range(1, d + 1):
                clauses.append([-inst.vertex_var(v, i)])


def _step_7_environment(arena, d, inst):
    clauses = inst.clauses
    for v in arena.vertices():
        if not arena.is_env[v] or v in arena.goal:
            continue
        for succ in arena.env_succ[v]:
            for j in range(1, d):
                clauses.append(
                    [-inst.vertex_var(v, j)]
                    + [inst.vertex_var(succ, jj) for jj in range(j + 1, d + 1)]
                )


def encode_bounded_witness(arena, d) -> CnfInstance:
    """Product-progress encoding: every control component steps simultaneously."""
    if arena.mode != "simultaneous":
        raise ValueError("the product-progress encoding needs a simultaneous-mode arena")
    if d < 1:
        raise ValueError("unrolling depth must be >= 1")
    inst = _base_instance(arena, d)
    _steps_1_to_5(arena, d, inst)
    epos = inst.edge_positions()

    for v in arena.vertices():
        if arena.is_env[v] or v in arena.goal:
            continue
        if len(arena.moves[v]) > _COMBO_CAP:
            raise ValueError(
                f"control vertex {arena.describe(v)} has {len(arena.moves[v])} edge "
                f"combinations; use the interleaved encoding"
            )
        for selection, succ in arena.moves[v]:
            edge_lits = [-inst.edge_var(epos[(point, idx)]) for point, idx in selection]
            for j in range(1, d):
                inst.clauses.append(
                    [-inst.vertex_var(v, j)] + edge_lits + [inst.vertex_var(succ, j + 1)]
                )

    _step_7_environment(arena, d, inst)
    return inst


def encode_bounded_witness_interleaved(arena, d) -> CnfInstance:
    """Per-edge progress encoding: one local move per control turn."""
    if arena.mode != "interleaving":
        raise ValueError("the interleaved encoding needs an interleaving-mode arena")
    if d < 1:
        raise ValueError("unrolling depth must be >= 1")
    inst = _base_instance(arena, d)
    _steps_1_to_5(arena, d, inst)
    epos = inst.edge_positions()

    for v in arena.vertices():
        if arena.is_env[v] or v in arena.goal:
            continue
        for selection, succ in arena.moves[v]:
            (point, idx), = selection
            evar = inst.edge_var(epos[(point, idx)])
            for j in range(1, d):
                inst.clauses.append(
                    [-evar, -inst.vertex_var(v, j)]
                    + [inst.vertex_var(succ, jj) for jj in range(j + 1, d + 1)]
                )

    _step_7_environment(arena, d, inst)
    return inst
