"""Explicit expansion of symbolic games."""

from .arena import Arena, materialize


def expand_game(symbolic_game, cap=500_000, from_states=None) -> Arena:
    """Materialize the states reachable from the game's initial state.

    `from_states` widens the starting set (useful for exploring the full
    valuation space of tiny games).  Raises StateCapExceeded beyond `cap`.
    """
    return materialize(symbolic_game, cap=cap, extra_initials=from_states)


def plays_up_to(game, state, depth):
    """All play prefixes of a raw (unmaterialized) game up to `depth` moves.

    Returns a set of move-label tuples; used to compare a symbolic stepper
    against its explicit expansion.
    """
    out = set()

    def walk(s, prefix):
        out.add(prefix)
        if len(prefix) >= depth:
            return
        if game.is_env(s):
            for label, t in game.env_successors(s):
                walk(t, prefix + (label,))
        else:
            for selection, t in game.control_moves(s):
                label = "+".join(
                    game.describe_option(point, idx) for point, idx in selection
                )
                walk(t, prefix + (label,))

    walk(state, ())
    return out
