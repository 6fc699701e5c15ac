"""Attractor computation: the set of vertices from which a player can force
visiting a target set, with the forcing move recorded for each of them."""

from dataclasses import dataclass, field

from .local import LocalGame


@dataclass
class AttractorResult:
    vertices: set
    rank: dict  # vertex -> rounds needed to force the target
    choice: dict  # existential-player vertex -> chosen successor

    def __contains__(self, v):
        return v in self.vertices


def _attract(all_vertices, succ_of, exists_here, target):
    """Generic attractor: `exists_here(v)` tells whether the attracting player
    picks the move at v; the other player's vertices need every successor in."""
    vertices = set(target)
    rank = {v: 0 for v in vertices}
    choice = {}
    preds = {}
    remaining = {}
    for v in all_vertices:
        succs = succ_of(v)
        remaining[v] = len(succs)
        for s in succs:
            preds.setdefault(s, []).append(v)
    queue = list(target)
    head = 0
    while head < len(queue):
        s = queue[head]
        head += 1
        for v in preds.get(s, []):
            if v in vertices:
                continue
            if exists_here(v):
                vertices.add(v)
                rank[v] = rank[s] + 1
                choice[v] = s
                queue.append(v)
            else:
                remaining[v] -= 1
                if remaining[v] == 0 and succ_of(v):
                    vertices.add(v)
                    rank[v] = 1 + max(rank[t] for t in succ_of(v))
                    queue.append(v)
    return AttractorResult(vertices=vertices, rank=rank, choice=choice)


def attractor(arena, target, player=0, restriction=None) -> AttractorResult:
    """Attractor of `target` for `player` on a materialized arena.

    With a `restriction` (a strategy mapping selection points to option
    indices), control vertices only move along selected edges, mirroring the
    winning check that ignores unselected transitions.
    """
    target = set(target)

    def succ_of(v):
        if arena.is_env[v]:
            return arena.env_succ[v]
        if restriction is not None:
            return arena.control_succ_under(v, restriction)
        return [s for _sel, s in arena.moves[v]]

    if player == 0:
        exists_here = lambda v: not arena.is_env[v]
    else:
        exists_here = lambda v: arena.is_env[v]
    return _attract(arena.vertices(), succ_of, exists_here, target)


def attractor_local(game: LocalGame, target, player=0) -> AttractorResult:
    """Attractor on a single local game graph (player 0 owns v0)."""
    target = set(target)

    def succ_of(v):
        return game.successors(v)

    if player == 0:
        exists_here = game.is_control
    else:
        exists_here = lambda v: not game.is_control(v)
    return _attract(game.vertices(), succ_of, exists_here, target)
