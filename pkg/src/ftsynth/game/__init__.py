from .local import LocalGame
from .distributed import DistributedGame
from .arena import Arena, materialize
from .attractor import AttractorResult, attractor, attractor_local
from .strategy import Strategy, replay_plays, verify_strategy
from .sat3 import assignment_from_strategy, reduce_3sat
from .expand import expand_game

__all__ = [
    "Arena",
    "AttractorResult",
    "DistributedGame",
    "LocalGame",
    "Strategy",
    "assignment_from_strategy",
    "attractor",
    "attractor_local",
    "expand_game",
    "materialize",
    "reduce_3sat",
    "replay_plays",
    "verify_strategy",
]
