"""
Writhe and odd writhe of Gauss diagrams.

Both are unchanged by moves II and III. Odd writhe is also unchanged by move
I, so a trace that changes it must use a forbidden move.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict

from .gauss_code import interleaved
from .models import GaussDiagram


def writhe(diagram: GaussDiagram) -> int:
    """Sum of chord signs."""
    return sum(int(sign) for sign in diagram.signs.values())


def interleaving_counts(diagram: GaussDiagram) -> Dict[int, int]:
    """For every chord, how many other chords interleave with it."""
    counts = {chord: 0 for chord in diagram.chords()}
    for first, second in combinations(diagram.chords(), 2):
        if interleaved(diagram, first, second):
            counts[first] += 1
            counts[second] += 1
    return counts


def odd_writhe(diagram: GaussDiagram) -> int:
    """Sum of signs of the chords interleaving an odd number of other chords."""
    return sum(
        int(diagram.sign(chord))
        for chord, count in interleaving_counts(diagram).items()
        if count % 2 == 1
    )


@dataclass(frozen=True)
class InvariantValue:
    writhe: int
    odd_writhe: int

    @classmethod
    def of(cls, diagram: GaussDiagram) -> "InvariantValue":
        return cls(writhe(diagram), odd_writhe(diagram))

    def to_dict(self) -> Dict[str, int]:
        return {'writhe': self.writhe, 'odd_writhe': self.odd_writhe}
