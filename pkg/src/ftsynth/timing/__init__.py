from .constraints import Constraint, TimingConstraintSystem, TimingVariable, WcetTable, generate_ltm
from .solve import solve_ltm
from .apply import apply_timing, check_refinement
from .canbus import CanBusProfile, CanVerdict, check_can_conditions, profile_from_parts

__all__ = [
    "CanBusProfile",
    "CanVerdict",
    "Constraint",
    "TimingConstraintSystem",
    "TimingVariable",
    "WcetTable",
    "apply_timing",
    "check_can_conditions",
    "check_refinement",
    "generate_ltm",
    "profile_from_parts",
    "solve_ltm",
]
