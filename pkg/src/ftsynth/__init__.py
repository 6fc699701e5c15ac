"""Fault-tolerance synthesis for periodic distributed systems.

The toolchain takes a timed model (processes with release/deadline windows,
networks with worst-case transmission times), a fault hypothesis, and a pool
of repair action templates; it abstracts the timing into program-counter
windows, builds a distributed reachability game against the faults, searches
for a positional strategy, and turns the winner back into concrete release
times and deadlines with a linear constraint pass.
"""

from .errors import FtsynthError
from .model.core import FaultModel, TimedSystem, validate
from .model.docio import model_from_doc, templates_from_doc
from .model.simulate import ExhaustivePolicy, RandomPolicy, simulate
from .pipeline import PipelineConfig, synthesize, write_outputs
from .translate.bounds import compute_pc_bounds, to_pc_system
from .translate.build import build_game
from .translate.slots import insert_slots

__version__ = "0.1.0"

__all__ = [
    "ExhaustivePolicy",
    "FaultModel",
    "FtsynthError",
    "PipelineConfig",
    "RandomPolicy",
    "TimedSystem",
    "build_game",
    "compute_pc_bounds",
    "insert_slots",
    "model_from_doc",
    "simulate",
    "synthesize",
    "templates_from_doc",
    "to_pc_system",
    "validate",
    "write_outputs",
]
