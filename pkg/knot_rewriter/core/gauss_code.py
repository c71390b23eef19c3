"""
Gauss Code Parsing and Diagram Utilities

This module reads and writes signed Gauss codes (``O1+U2-...``), checks
diagram invariants, computes rotation-independent canonical forms and
generates random or exhaustive families of diagrams.
"""

import itertools
import random
import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .exceptions.rewriter_exceptions import GaussCodeError, UnknownChordError
from .models import Endpoint, GaussDiagram, Role, Sign

_TOKEN_RE = re.compile(r"([OU])([1-9][0-9]*)([+-])")
_SPACE_RE = re.compile(r"\s*")


@dataclass(frozen=True)
class GaussToken:
    """One ``O``/``U`` token of a Gauss code."""
    role: Role
    chord: int
    sign: Sign
    offset: int


@dataclass(frozen=True)
class Violation:
    """A broken diagram invariant."""
    code: str
    message: str
    chord: Optional[int] = None
    index: Optional[int] = None

    def __str__(self) -> str:
        return self.message


def scan_tokens(text: str) -> List[GaussToken]:
    """Split a Gauss code into tokens; whitespace between tokens is ignored."""
    tokens: List[GaussToken] = []
    offset = 0
    while True:
        offset = _SPACE_RE.match(text, offset).end()
        if offset >= len(text):
            return tokens
        match = _TOKEN_RE.match(text, offset)
        if not match:
            snippet = text[offset:offset + 8]
            raise GaussCodeError(f"Invalid token at offset {offset}: {snippet!r}", position=offset)
        role, label, sign = match.groups()
        tokens.append(GaussToken(Role.from_gauss_letter(role), int(label), Sign.from_symbol(sign), offset))
        offset = match.end()


def parse_gauss_code(text: str) -> GaussDiagram:
    """
    Parse a signed Gauss code into a validated diagram.

    Endpoint order follows token order from the basepoint; ``O`` tokens are
    Tails and ``U`` tokens Heads. Chord labels are kept as written.

    Raises:
        GaussCodeError: bad token, a label not occurring exactly twice, a label
            occurring twice with the same letter, or disagreeing signs.
    """
    tokens = scan_tokens(text)

    occurrences: Dict[int, List[GaussToken]] = {}
    for token in tokens:
        occurrences.setdefault(token.chord, []).append(token)

    miscounted = [(chord, len(found)) for chord, found in occurrences.items() if len(found) != 2]
    if miscounted:
        details = ", ".join(f"label {chord} occurs {count} time(s)" for chord, count in miscounted)
        raise GaussCodeError(
            f"Each label must occur exactly twice: {details}",
            chord=miscounted[0][0]
        )

    signs: Dict[int, Sign] = {}
    for chord, (first, second) in occurrences.items():
        if first.role == second.role:
            raise GaussCodeError(
                f"Label {chord} occurs twice as {first.role.gauss_letter}; "
                f"expected one O and one U",
                position=second.offset,
                chord=chord
            )
        if first.sign != second.sign:
            raise GaussCodeError(
                f"Sign mismatch for label {chord}: {first.sign.symbol} and {second.sign.symbol}",
                position=second.offset,
                chord=chord
            )
        signs[chord] = first.sign

    return GaussDiagram(tuple(Endpoint(token.chord, token.role) for token in tokens), signs)


def serialize(diagram: GaussDiagram, relabel: bool = True) -> str:
    """
    Write a diagram as a Gauss code from its basepoint.

    With ``relabel`` (the default) chords are renumbered 1..n in order of
    first occurrence; otherwise the diagram's own labels are written.
    """
    labels = diagram.relabeling() if relabel else {chord: chord for chord in diagram.chords()}
    return "".join(
        f"{endpoint.role.gauss_letter}{labels[endpoint.chord]}{diagram.sign(endpoint.chord).symbol}"
        for endpoint in diagram.endpoints
    )


def validate(diagram: GaussDiagram) -> List[Violation]:
    """Return every violated diagram invariant; an empty list means valid."""
    violations: List[Violation] = []

    seen: Dict[int, List[Tuple[int, Role]]] = {}
    for index, endpoint in enumerate(diagram.endpoints):
        if endpoint.chord < 1:
            violations.append(Violation(
                "bad-label", f"Chord label {endpoint.chord} at index {index} is not positive",
                chord=endpoint.chord, index=index
            ))
        seen.setdefault(endpoint.chord, []).append((index, endpoint.role))

    for chord, found in seen.items():
        first_index = found[0][0]
        if len(found) != 2:
            violations.append(Violation(
                "endpoint-count",
                f"Chord {chord} has {len(found)} endpoint(s); expected 2",
                chord=chord, index=first_index
            ))
        roles = [role for _, role in found]
        for role in Role:
            if roles.count(role) > 1:
                name = "Tail" if role is Role.TAIL else "Head"
                violations.append(Violation(
                    "duplicate-role", f"Chord {chord} has {roles.count(role)} {name}s",
                    chord=chord, index=found[1][0]
                ))
        if chord not in diagram.signs:
            violations.append(Violation(
                "missing-sign", f"Chord {chord} has no sign", chord=chord, index=first_index
            ))

    for chord in diagram.signs:
        if chord not in seen:
            violations.append(Violation(
                "orphan-sign", f"Sign given for chord {chord}, which has no endpoints", chord=chord
            ))

    return violations


def diagnose(text: str) -> List[Violation]:
    """
    Report every structural problem of a Gauss code without raising.

    Syntax errors are reported as a single violation. Sign disagreements
    between a label's two tokens are reported and the first sign is kept for
    the remaining checks.
    """
    try:
        tokens = scan_tokens(text)
    except GaussCodeError as e:
        return [Violation("syntax", str(e), index=e.position)]

    violations: List[Violation] = []
    signs: Dict[int, Sign] = {}
    for index, token in enumerate(tokens):
        known = signs.setdefault(token.chord, token.sign)
        if known != token.sign:
            violations.append(Violation(
                "sign-mismatch",
                f"Sign mismatch for chord {token.chord}: {known.symbol} and {token.sign.symbol}",
                chord=token.chord, index=index
            ))

    lenient = GaussDiagram(tuple(Endpoint(token.chord, token.role) for token in tokens), signs)
    return validate(lenient) + violations


def canonical_form(diagram: GaussDiagram) -> str:
    """
    Lexicographically least serialization over all basepoint rotations.

    Chords are relabeled by first occurrence after each rotation. The
    orientation of the circle is never reversed.
    """
    if diagram.is_empty:
        return ""
    return min(serialize(diagram.rotated(offset)) for offset in range(diagram.size))


def diagrams_equal(first: GaussDiagram, second: GaussDiagram) -> bool:
    """Equality up to the choice of basepoint."""
    if first.size != second.size:
        return False
    return canonical_form(first) == canonical_form(second)


def interleaved(diagram: GaussDiagram, chord_a: int, chord_b: int) -> bool:
    """True iff the endpoints of the two chords alternate around the circle."""
    for chord in (chord_a, chord_b):
        if not diagram.has_chord(chord):
            raise UnknownChordError(chord)
    if chord_a == chord_b:
        raise ValueError("interleaved() needs two distinct chords")

    low, high = sorted(diagram.position(chord_a, role) for role in Role)
    inside = sum(1 for role in Role if low < diagram.position(chord_b, role) < high)
    return inside == 1


def random_diagram(chords: int, seed: int) -> GaussDiagram:
    """
    Deterministic random diagram with the given number of chords.

    The 2n endpoint slots are shuffled uniformly among the chords; each chord
    gets a uniformly random role order and sign.
    """
    if chords < 0:
        raise ValueError("Chord count must be non-negative")

    rng = random.Random(seed)
    slots = list(range(2 * chords))
    rng.shuffle(slots)

    endpoints: List[Optional[Endpoint]] = [None] * (2 * chords)
    signs: Dict[int, Sign] = {}
    for chord in range(1, chords + 1):
        tail, head = slots[2 * chord - 2], slots[2 * chord - 1]
        if rng.random() < 0.5:
            tail, head = head, tail
        endpoints[tail] = Endpoint(chord, Role.TAIL)
        endpoints[head] = Endpoint(chord, Role.HEAD)
        signs[chord] = rng.choice((Sign.PLUS, Sign.MINUS))

    return GaussDiagram(tuple(endpoints), signs)


def _matchings(points: Sequence[int]) -> Iterator[List[Tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for index, partner in enumerate(rest):
        remaining = rest[:index] + rest[index + 1:]
        for matching in _matchings(remaining):
            yield [(first, partner)] + matching


def all_diagrams(chords: int) -> Iterator[GaussDiagram]:
    """Every valid diagram with the given number of chords (from basepoint 0)."""
    size = 2 * chords
    for matching in _matchings(tuple(range(size))):
        for tails_first in itertools.product((True, False), repeat=chords):
            for signs in itertools.product((Sign.PLUS, Sign.MINUS), repeat=chords):
                endpoints: List[Optional[Endpoint]] = [None] * size
                for chord, ((left, right), tail_first) in enumerate(zip(matching, tails_first), 1):
                    tail, head = (left, right) if tail_first else (right, left)
                    endpoints[tail] = Endpoint(chord, Role.TAIL)
                    endpoints[head] = Endpoint(chord, Role.HEAD)
                yield GaussDiagram(tuple(endpoints), dict(zip(range(1, chords + 1), signs)))
