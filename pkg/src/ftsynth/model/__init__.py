from .core import (
    Assign,
    FaultEntry,
    FaultModel,
    Network,
    NullOp,
    Process,
    Receive,
    Send,
    TimedAction,
    TimedSystem,
    VarDecl,
    validate,
)
from .executor import BLOCKED, Config, ExecuteLocal, ProcessMessage, ReceiveMove, RepeatCycle, SendToNetwork, initial_config, step
from .simulate import ExhaustivePolicy, RandomPolicy, Verdict, simulate

__all__ = [
    "Assign",
    "BLOCKED",
    "Config",
    "ExecuteLocal",
    "ExhaustivePolicy",
    "FaultEntry",
    "FaultModel",
    "Network",
    "NullOp",
    "Process",
    "ProcessMessage",
    "RandomPolicy",
    "Receive",
    "ReceiveMove",
    "RepeatCycle",
    "Send",
    "SendToNetwork",
    "TimedAction",
    "TimedSystem",
    "VarDecl",
    "Verdict",
    "initial_config",
    "simulate",
    "step",
    "validate",
]
