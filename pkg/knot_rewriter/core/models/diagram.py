"""
Gauss Diagram Value Model

A Gauss diagram is an oriented circle carrying 2n chord endpoints. Each chord
runs from its Tail (the overcrossing passage) to its Head (the undercrossing
passage) and carries the sign of the crossing. The diagram is stored as the
cyclic sequence of endpoints read from a basepoint, plus one sign per chord.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Tuple


class Sign(int, Enum):
    """Local writhe of a crossing."""
    PLUS = 1
    MINUS = -1

    @property
    def symbol(self) -> str:
        return "+" if self is Sign.PLUS else "-"

    @property
    def opposite(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    @classmethod
    def from_symbol(cls, symbol: str) -> "Sign":
        if symbol == "+":
            return cls.PLUS
        if symbol == "-":
            return cls.MINUS
        raise ValueError(f"Invalid sign symbol: {symbol!r}")


class Role(str, Enum):
    """Which passage of a crossing an endpoint records."""
    TAIL = "T"  # overcrossing
    HEAD = "H"  # undercrossing

    @property
    def gauss_letter(self) -> str:
        return "O" if self is Role.TAIL else "U"

    @property
    def other(self) -> "Role":
        return Role.HEAD if self is Role.TAIL else Role.TAIL

    @classmethod
    def from_gauss_letter(cls, letter: str) -> "Role":
        if letter == "O":
            return cls.TAIL
        if letter == "U":
            return cls.HEAD
        raise ValueError(f"Invalid Gauss letter: {letter!r}")


@dataclass(frozen=True)
class Endpoint:
    """One passage through a crossing."""
    chord: int
    role: Role

    def __str__(self) -> str:
        return f"{self.role.value}{self.chord}"


@dataclass(frozen=True, eq=False)
class GaussDiagram:
    """
    Immutable Gauss diagram.

    Equality is exact (same endpoint sequence from the same basepoint, same
    signs) up to renaming of chord labels, which carry no meaning. Use
    ``diagrams_equal`` for equality up to rotation of the basepoint.
    """
    endpoints: Tuple[Endpoint, ...] = ()
    signs: Mapping[int, Sign] = field(default_factory=dict)
    _positions: Dict[Tuple[int, Role], int] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        object.__setattr__(self, "endpoints", tuple(self.endpoints))
        object.__setattr__(self, "signs", dict(self.signs))
        positions = {
            (endpoint.chord, endpoint.role): index
            for index, endpoint in enumerate(self.endpoints)
        }
        object.__setattr__(self, "_positions", positions)

    @classmethod
    def empty(cls) -> "GaussDiagram":
        return cls((), {})

    @property
    def size(self) -> int:
        """Number of endpoints on the circle (2n)."""
        return len(self.endpoints)

    @property
    def chord_count(self) -> int:
        return len(self.signs)

    @property
    def is_empty(self) -> bool:
        return not self.endpoints

    @property
    def max_label(self) -> int:
        labels = [endpoint.chord for endpoint in self.endpoints]
        labels.extend(self.signs)
        return max(labels, default=0)

    def chords(self) -> List[int]:
        """Chord labels in order of first occurrence from the basepoint."""
        seen: List[int] = []
        for endpoint in self.endpoints:
            if endpoint.chord not in seen:
                seen.append(endpoint.chord)
        return seen

    def has_chord(self, chord: int) -> bool:
        return chord in self.signs and (chord, Role.TAIL) in self._positions

    def position(self, chord: int, role: Role) -> int:
        """Index of the given endpoint; raises KeyError when absent."""
        return self._positions[(chord, role)]

    def sign(self, chord: int) -> Sign:
        return self.signs[chord]

    def at(self, index: int) -> Endpoint:
        """Endpoint at a cyclic index."""
        return self.endpoints[index % len(self.endpoints)]

    def rotated(self, offset: int) -> "GaussDiagram":
        """The same diagram read from the basepoint moved forward by offset."""
        if not self.endpoints:
            return self
        offset %= len(self.endpoints)
        return GaussDiagram(self.endpoints[offset:] + self.endpoints[:offset], self.signs)

    def with_endpoints(
        self,
        endpoints: Tuple[Endpoint, ...],
        signs: Optional[Mapping[int, Sign]] = None
    ) -> "GaussDiagram":
        return GaussDiagram(endpoints, self.signs if signs is None else signs)

    def relabeling(self) -> Dict[int, int]:
        """Map from current labels to 1..n in order of first occurrence."""
        return {chord: index for index, chord in enumerate(self.chords(), 1)}

    def shape(self) -> Tuple[Tuple[int, str, int], ...]:
        """Label-free description of the diagram used for equality."""
        relabel = self.relabeling()
        return tuple(
            (relabel[endpoint.chord], endpoint.role.value, int(self.signs.get(endpoint.chord, 0)))
            for endpoint in self.endpoints
        )

    def __iter__(self) -> Iterator[Endpoint]:
        return iter(self.endpoints)

    def __len__(self) -> int:
        return len(self.endpoints)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussDiagram):
            return NotImplemented
        return self.shape() == other.shape()

    def __hash__(self) -> int:
        return hash(self.shape())

    def __repr__(self) -> str:
        tokens = "".join(
            f"{endpoint.role.gauss_letter}{endpoint.chord}"
            f"{self.signs[endpoint.chord].symbol if endpoint.chord in self.signs else '?'}"
            for endpoint in self.endpoints
        )
        return f"GaussDiagram({tokens!r})"
