from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .move import MoveInstance, MoveKind


@dataclass(frozen=True)
class MacroStep:
    """
    Reporting record for one endpoint transposition.

    ``label`` is FH, FT, FS or FO; the primitive steps it expanded to are
    ``steps[start:start + length]`` of the owning trace.
    """
    label: str
    position: int
    start: int
    length: int


@dataclass(frozen=True)
class Trace:
    """
    Ordered list of primitive move instances.

    A trace is valid for a start diagram when every step is legal on the
    diagram produced by the steps before it. ``macro_steps`` is reporting
    data only and never takes part in replay.
    """
    steps: Tuple[MoveInstance, ...] = ()
    macro_steps: Tuple[MacroStep, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "macro_steps", tuple(self.macro_steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[MoveInstance]:
        return iter(self.steps)

    def __getitem__(self, index: int) -> MoveInstance:
        return self.steps[index]

    def __add__(self, other: "Trace") -> "Trace":
        offset = len(self.steps)
        shifted = tuple(
            MacroStep(macro.label, macro.position, macro.start + offset, macro.length)
            for macro in other.macro_steps
        )
        return Trace(self.steps + other.steps, self.macro_steps + shifted)

    def kinds(self) -> List[MoveKind]:
        return [step.kind for step in self.steps]

    def appended(self, step: MoveInstance) -> "Trace":
        return Trace(self.steps + (step,), self.macro_steps)

    def as_macro(self, label: str, position: int) -> "Trace":
        """This trace wrapped as a single reported transposition."""
        return Trace(self.steps, (MacroStep(label, position, 0, len(self.steps)),))


@dataclass
class TraceStats:
    """Summary of a trace: per-kind counts, length, macros and peak size."""
    counts: Dict[MoveKind, int] = field(default_factory=lambda: {kind: 0 for kind in MoveKind})
    total: int = 0
    macro_transpositions: int = 0
    peak_chords: Optional[int] = None

    def to_dict(self) -> Dict[str, object]:
        """Convert to dictionary for reporting."""
        return {
            'counts': {kind.value: count for kind, count in self.counts.items()},
            'total': self.total,
            'macro_transpositions': self.macro_transpositions,
            'peak_chords': self.peak_chords,
        }
