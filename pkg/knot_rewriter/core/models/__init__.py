from .diagram import (
    Sign,
    Role,
    Endpoint,
    GaussDiagram
)
from .move import (
    MoveKind,
    MoveInstance,
    MacroKind,
    MacroMove,
    REIDEMEISTER_KINDS
)
from .trace import (
    MacroStep,
    Trace,
    TraceStats
)

__all__ = [
    "Sign",
    "Role",
    "Endpoint",
    "GaussDiagram",
    "MoveKind",
    "MoveInstance",
    "MacroKind",
    "MacroMove",
    "REIDEMEISTER_KINDS",
    "MacroStep",
    "Trace",
    "TraceStats"
]
