from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .diagram import Role, Sign


class MoveKind(str, Enum):
    """Primitive move kinds; values are the trace file mnemonics."""
    R1_INSERT = "R1I"
    R1_REMOVE = "R1R"
    R2_INSERT = "R2I"
    R2_REMOVE = "R2R"
    R3 = "R3"
    FH = "FH"
    FT = "FT"

    @property
    def inverse(self) -> "MoveKind":
        return _INVERSE_KINDS.get(self, self)

    @property
    def chord_delta(self) -> int:
        return _CHORD_DELTAS[self]

    @property
    def is_forbidden(self) -> bool:
        return self in (MoveKind.FH, MoveKind.FT)


_INVERSE_KINDS = {
    MoveKind.R1_INSERT: MoveKind.R1_REMOVE,
    MoveKind.R1_REMOVE: MoveKind.R1_INSERT,
    MoveKind.R2_INSERT: MoveKind.R2_REMOVE,
    MoveKind.R2_REMOVE: MoveKind.R2_INSERT,
}

_CHORD_DELTAS = {
    MoveKind.R1_INSERT: 1,
    MoveKind.R1_REMOVE: -1,
    MoveKind.R2_INSERT: 2,
    MoveKind.R2_REMOVE: -2,
    MoveKind.R3: 0,
    MoveKind.FH: 0,
    MoveKind.FT: 0,
}

# Moves that keep a virtual knot's class; the forbidden moves are excluded.
REIDEMEISTER_KINDS = (
    MoveKind.R1_INSERT,
    MoveKind.R1_REMOVE,
    MoveKind.R2_INSERT,
    MoveKind.R2_REMOVE,
    MoveKind.R3,
)


@dataclass(frozen=True)
class MoveInstance:
    """
    A move kind plus its site on a specific diagram state.

    Site fields by kind:
        R1I: positions=(gap,), direction=role of the first inserted endpoint, sign
        R1R: chords=(chord,)
        R2I: positions=(gap_a, gap_b), variant, sign of tag ``a``
        R2R: chords=(chord of tag a, chord of tag b), variant
        R3:  positions=(top, middle, bottom) arc starts, variant
        FH/FT: positions=(p,) swapping the endpoints at p and p+1 (cyclic)
    """
    kind: MoveKind
    positions: Tuple[int, ...] = ()
    chords: Tuple[int, ...] = ()
    direction: Optional[Role] = None
    sign: Optional[Sign] = None
    variant: Optional[str] = None

    @classmethod
    def r1_insert(cls, gap: int, direction: Role, sign: Sign) -> "MoveInstance":
        return cls(MoveKind.R1_INSERT, positions=(gap,), direction=direction, sign=sign)

    @classmethod
    def r1_remove(cls, chord: int) -> "MoveInstance":
        return cls(MoveKind.R1_REMOVE, chords=(chord,))

    @classmethod
    def r2_insert(cls, gap_a: int, gap_b: int, variant: str, sign: Sign) -> "MoveInstance":
        return cls(MoveKind.R2_INSERT, positions=(gap_a, gap_b), variant=variant, sign=sign)

    @classmethod
    def r2_remove(cls, chord_a: int, chord_b: int, variant: str) -> "MoveInstance":
        return cls(MoveKind.R2_REMOVE, chords=(chord_a, chord_b), variant=variant)

    @classmethod
    def r3(cls, top: int, middle: int, bottom: int, variant: str) -> "MoveInstance":
        return cls(MoveKind.R3, positions=(top, middle, bottom), variant=variant)

    @classmethod
    def fh(cls, position: int) -> "MoveInstance":
        return cls(MoveKind.FH, positions=(position,))

    @classmethod
    def ft(cls, position: int) -> "MoveInstance":
        return cls(MoveKind.FT, positions=(position,))

    @property
    def position(self) -> int:
        return self.positions[0]


class MacroKind(str, Enum):
    """Derived head/tail transpositions."""
    FS = "FS"  # head past a tail of the same sign
    FO = "FO"  # head past a tail of the opposite sign


@dataclass(frozen=True)
class MacroMove:
    """Swap the Head and Tail endpoints at positions p and p+1 (cyclic)."""
    kind: MacroKind
    position: int
