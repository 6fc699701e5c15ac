"""Strategy extraction from satisfying assignments of witness encodings."""

from ..errors import AmbiguousSelection
from ..game.strategy import Strategy
from .encode import CnfInstance


def extract_strategy(instance: CnfInstance, model) -> Strategy:
    """Read the selected edge per selection point off a satisfying model.

    The at-most-one clauses make a double selection impossible for models the
    solver produced; seeing one anyway signals an encoder bug.
    """
    epos = instance.edge_positions()
    per_point = {}
    for (point, idx), pos in epos.items():
        if model.get(instance.edge_var(pos), False):
            per_point.setdefault(point, []).append(idx)
    choices = {}
    for point, selected in per_point.items():
        if len(selected) > 1:
            raise AmbiguousSelection(
                f"model selects {len(selected)} edges at {instance.arena.game.describe_point(point)}"
            )
        choices[point] = selected[0]
    return Strategy(choices)
