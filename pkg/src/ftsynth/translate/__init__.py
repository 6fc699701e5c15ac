from .bounds import PcBounds, compute_pc_bounds, to_pc_system
from .slots import SlotPlan, insert_slots, slot_box, slot_plan
from .build import SymbolicGame, build_game

__all__ = [
    "PcBounds",
    "SlotPlan",
    "SymbolicGame",
    "build_game",
    "compute_pc_bounds",
    "insert_slots",
    "slot_box",
    "slot_plan",
    "to_pc_system",
]
