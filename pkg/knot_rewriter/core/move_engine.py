"""
Move Engine

Local rewrites of Gauss diagrams: moves I, II and III in both directions and
the forbidden moves FH and FT. Every instance is addressed against the
diagram state it is applied to. Legality is checked directly against the
site; ``enumerate_moves`` lists exactly the instances that pass the check.

Insertion gaps for a diagram with m endpoints run 0..m (insert before the
endpoint at that index). R1 inserts on a non-empty diagram and the second
arc of an R2 insert may also use the wrap gap m+1, which splits the new arc
across the basepoint so that every removal has an exact inverse.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .exceptions.rewriter_exceptions import IllegalMoveError
from .models import Endpoint, GaussDiagram, MoveInstance, MoveKind, Role, Sign
from .variant_table import (
    R2Variant,
    R3Variant,
    VariantTable,
    bind,
    default_table,
    resolve_signs,
    signs_allowed,
)

ArcPair = Tuple[Endpoint, Endpoint]


@dataclass(frozen=True)
class R2Site:
    """Two arcs of adjacent same-role endpoints; ``starts[1]`` straddles when ``straddles``."""
    starts: Tuple[int, int]
    arcs: Tuple[ArcPair, ArcPair]
    straddles: bool


def _arc(diagram: GaussDiagram, start: int) -> ArcPair:
    return diagram.at(start), diagram.at(start + 1)


def find_r2_site(diagram: GaussDiagram, chord_a: int, chord_b: int) -> Optional[R2Site]:
    """
    Locate the move II site formed by two chords, if any.

    The four endpoints must split into two arcs of cyclically adjacent
    endpoints, one holding both Tails and one both Heads. The arc straddling
    the basepoint, if any, is the second arc; otherwise the arc with the
    smaller start index comes first.
    """
    if chord_a == chord_b:
        return None
    size = diagram.size
    s0, s1, s2, s3 = sorted(diagram.position(chord, role) for chord in (chord_a, chord_b) for role in Role)

    candidates = []
    if s1 == s0 + 1 and s3 == s2 + 1:
        candidates.append(((s0, s2), False))
    if s0 == 0 and s3 == size - 1 and s2 == s1 + 1:
        candidates.append(((s1, s3), True))

    for starts, straddles in candidates:
        arcs = (_arc(diagram, starts[0]), _arc(diagram, starts[1]))
        if all(arc[0].role == arc[1].role for arc in arcs):
            return R2Site(starts, arcs, straddles)
    return None


def match_r2_variant(
    arcs: Sequence[Sequence[Endpoint]],
    signs: Dict[int, Sign],
    table: VariantTable
) -> Optional[Tuple[R2Variant, Dict[str, int]]]:
    """First move II variant whose pattern and sign rules fit the arcs."""
    for variant in table.r2_variants:
        binding = bind(variant.pattern, arcs)
        if binding is not None and signs_allowed(variant.signs, binding, signs):
            return variant, binding
    return None


def match_r3_variant(
    diagram: GaussDiagram,
    positions: Sequence[int],
    table: VariantTable
) -> Optional[R3Variant]:
    """First move III variant matching the arcs starting at top, middle, bottom."""
    if _r3_geometry_problem(diagram, positions) is not None:
        return None
    arcs = [_arc(diagram, start) for start in positions]
    for variant in table.r3_variants:
        binding = bind(variant.pattern, arcs)
        if binding is not None and signs_allowed(variant.signs, binding, diagram.signs):
            return variant
    return None


def r2_remove_instance(
    diagram: GaussDiagram,
    chord_a: int,
    chord_b: int,
    table: Optional[VariantTable] = None
) -> Optional[MoveInstance]:
    """The R2 removal of two chords, with chords ordered as the variant binds them."""
    table = table if table is not None else default_table()
    if not (diagram.has_chord(chord_a) and diagram.has_chord(chord_b)):
        return None
    site = find_r2_site(diagram, chord_a, chord_b)
    if site is None:
        return None
    match = match_r2_variant(site.arcs, diagram.signs, table)
    if match is None:
        return None
    variant, binding = match
    first, second = variant.tags
    return MoveInstance.r2_remove(binding[first], binding[second], variant.id)


def _r3_geometry_problem(diagram: GaussDiagram, positions: Sequence[int]) -> Optional[str]:
    size = diagram.size
    if len(positions) != 3:
        return "move III needs three arc positions"
    if size < 6:
        return "move III needs at least three chords"
    if any(not 0 <= start < size for start in positions):
        return f"arc position out of range 0..{size - 1}"
    covered = {index % size for start in positions for index in (start, start + 1)}
    if len(covered) != 6:
        return "move III arcs overlap"
    return None


class MoveEngine:
    """Checks, enumerates, applies and inverts primitive moves against one variant table."""

    def __init__(self, table: Optional[VariantTable] = None):
        self.table = table if table is not None else default_table()

    # Legality

    def check(self, diagram: GaussDiagram, move: MoveInstance) -> Optional[str]:
        """Return why ``move`` is illegal on ``diagram``, or None when it is legal."""
        checker = {
            MoveKind.R1_INSERT: self._check_r1_insert,
            MoveKind.R1_REMOVE: self._check_r1_remove,
            MoveKind.R2_INSERT: self._check_r2_insert,
            MoveKind.R2_REMOVE: self._check_r2_remove,
            MoveKind.R3: self._check_r3,
            MoveKind.FH: self._check_forbidden,
            MoveKind.FT: self._check_forbidden,
        }[move.kind]
        return checker(diagram, move)

    def is_legal(self, diagram: GaussDiagram, move: MoveInstance) -> bool:
        return self.check(diagram, move) is None

    def _check_r1_insert(self, diagram: GaussDiagram, move: MoveInstance) -> Optional[str]:
        if len(move.positions) != 1 or move.direction is None or move.sign is None:
            return "move I insertion needs a gap, a direction and a sign"
        gap = move.position
        last = diagram.size + 1 if diagram.size else 0
        if not 0 <= gap <= last:
            return f"gap {gap} out of range 0..{last}"
        return None

    def _check_r1_remove(self, diagram: GaussDiagram, move: MoveInstance) -> Optional[str]:
        if len(move.chords) != 1:
            return "move I removal needs one chord"
        chord = move.chords[0]
        if not diagram.has_chord(chord):
            return f"unknown chord {chord}"
        tail = diagram.position(chord, Role.TAIL)
        head = diagram.position(chord, Role.HEAD)
        if abs(tail - head) == 1 or {tail, head} == {0, diagram.size - 1}:
            return None
        return f"head and tail of chord {chord} are not adjacent"

    def _check_r2_insert(self, diagram: GaussDiagram, move: MoveInstance) -> Optional[str]:
        if len(move.positions) != 2 or move.sign is None:
            return "move II insertion needs two gaps and a sign"
        variant = self.table.r2(move.variant or "")
        if variant is None:
            return f"unknown move II variant {move.variant!r}"
        gap_a, gap_b = move.positions
        size = diagram.size
        if not 0 <= gap_a <= size:
            return f"gap {gap_a} out of range 0..{size}"
        if not (gap_a <= gap_b <= size or gap_b == size + 1):
            return f"gap {gap_b} must lie in {gap_a}..{size + 1}"
        if resolve_signs(variant.signs, variant.tags, move.sign) is None:
            return f"sign {move.sign.symbol} violates variant {variant.id}"
        return None

    def _check_r2_remove(self, diagram: GaussDiagram, move: MoveInstance) -> Optional[str]:
        if len(move.chords) != 2:
            return "move II removal needs two chords"
        chord_a, chord_b = move.chords
        for chord in move.chords:
            if not diagram.has_chord(chord):
                return f"unknown chord {chord}"
        variant = self.table.r2(move.variant or "")
        if variant is None:
            return f"unknown move II variant {move.variant!r}"
        site = find_r2_site(diagram, chord_a, chord_b)
        if site is None:
            return f"chords {chord_a} and {chord_b} do not form a move II site"
        binding = bind(variant.pattern, site.arcs)
        first, second = variant.tags
        if binding is None or (binding[first], binding[second]) != (chord_a, chord_b):
            return f"chords {chord_a} and {chord_b} do not match variant {variant.id}"
        if not signs_allowed(variant.signs, binding, diagram.signs):
            return f"signs of chords {chord_a} and {chord_b} violate variant {variant.id}"
        return None

    def _check_r3(self, diagram: GaussDiagram, move: MoveInstance) -> Optional[str]:
        problem = _r3_geometry_problem(diagram, move.positions)
        if problem is not None:
            return problem
        variant = self.table.r3(move.variant or "")
        if variant is None:
            return f"unknown move III variant {move.variant!r}"
        binding = bind(variant.pattern, [_arc(diagram, start) for start in move.positions])
        if binding is None:
            return f"arcs at {move.positions} do not match variant {variant.id}"
        if not signs_allowed(variant.signs, binding, diagram.signs):
            return f"signs at {move.positions} violate variant {variant.id}"
        return None

    def _check_forbidden(self, diagram: GaussDiagram, move: MoveInstance) -> Optional[str]:
        role = Role.HEAD if move.kind is MoveKind.FH else Role.TAIL
        name = "head" if role is Role.HEAD else "tail"
        if len(move.positions) != 1:
            return f"{move.kind.value} needs one position"
        position = move.position
        reason = f"no adjacent {name} pair at position {position}"
        if diagram.size < 2 or not 0 <= position < diagram.size:
            return reason
        first, second = diagram.at(position), diagram.at(position + 1)
        if first.role != role or second.role != role or first.chord == second.chord:
            return reason
        return None

    # Enumeration

    def enumerate(self, diagram: GaussDiagram, kind: MoveKind) -> List[MoveInstance]:
        """Every legal instance of ``kind`` on ``diagram``."""
        enumerator = {
            MoveKind.R1_INSERT: self._enumerate_r1_insert,
            MoveKind.R1_REMOVE: self._enumerate_r1_remove,
            MoveKind.R2_INSERT: self._enumerate_r2_insert,
            MoveKind.R2_REMOVE: self._enumerate_r2_remove,
            MoveKind.R3: self._enumerate_r3,
            MoveKind.FH: self._enumerate_forbidden,
            MoveKind.FT: self._enumerate_forbidden,
        }[kind]
        return enumerator(diagram, kind)

    def _enumerate_r1_insert(self, diagram: GaussDiagram, kind: MoveKind) -> List[MoveInstance]:
        last = diagram.size + 1 if diagram.size else diagram.size
        return [
            MoveInstance.r1_insert(gap, direction, sign)
            for gap in range(last + 1)
            for direction in (Role.TAIL, Role.HEAD)
            for sign in (Sign.PLUS, Sign.MINUS)
        ]

    def _enumerate_r1_remove(self, diagram: GaussDiagram, kind: MoveKind) -> List[MoveInstance]:
        candidates = [MoveInstance.r1_remove(chord) for chord in diagram.chords()]
        return [move for move in candidates if self._check_r1_remove(diagram, move) is None]

    def _enumerate_r2_insert(self, diagram: GaussDiagram, kind: MoveKind) -> List[MoveInstance]:
        size = diagram.size
        gap_pairs = [(a, b) for a in range(size + 1) for b in range(a, size + 1)]
        gap_pairs.extend((a, size + 1) for a in range(size + 1))
        moves = []
        for gap_a, gap_b in gap_pairs:
            for variant in self.table.r2_variants:
                for sign in (Sign.PLUS, Sign.MINUS):
                    move = MoveInstance.r2_insert(gap_a, gap_b, variant.id, sign)
                    if self._check_r2_insert(diagram, move) is None:
                        moves.append(move)
        return moves

    def _enumerate_r2_remove(self, diagram: GaussDiagram, kind: MoveKind) -> List[MoveInstance]:
        pairs: List[Tuple[int, int]] = []
        for index in range(diagram.size):
            first, second = diagram.at(index), diagram.at(index + 1)
            if first.role == second.role and first.chord != second.chord:
                pair = tuple(sorted((first.chord, second.chord)))
                if pair not in pairs:
                    pairs.append(pair)

        moves: List[MoveInstance] = []
        for chord_a, chord_b in pairs:
            site = find_r2_site(diagram, chord_a, chord_b)
            if site is None:
                continue
            for variant in self.table.r2_variants:
                binding = bind(variant.pattern, site.arcs)
                if binding is None or not signs_allowed(variant.signs, binding, diagram.signs):
                    continue
                first, second = variant.tags
                move = MoveInstance.r2_remove(binding[first], binding[second], variant.id)
                if move not in moves:
                    moves.append(move)
        return moves

    def _enumerate_r3(self, diagram: GaussDiagram, kind: MoveKind) -> List[MoveInstance]:
        size = diagram.size
        if size < 6:
            return []
        moves: List[MoveInstance] = []
        for middle in range(size):
            first, second = _arc(diagram, middle)
            if first.role == second.role or first.chord == second.chord:
                continue
            head, tail = (first, second) if first.role is Role.HEAD else (second, first)
            top_at = diagram.position(head.chord, Role.TAIL)
            bottom_at = diagram.position(tail.chord, Role.HEAD)
            for top in ((top_at - 1) % size, top_at):
                for bottom in ((bottom_at - 1) % size, bottom_at):
                    for variant in self.table.r3_variants:
                        move = MoveInstance.r3(top, middle, bottom, variant.id)
                        if move not in moves and self._check_r3(diagram, move) is None:
                            moves.append(move)
        return moves

    def _enumerate_forbidden(self, diagram: GaussDiagram, kind: MoveKind) -> List[MoveInstance]:
        factory = MoveInstance.fh if kind is MoveKind.FH else MoveInstance.ft
        candidates = [factory(position) for position in range(diagram.size)]
        return [move for move in candidates if self._check_forbidden(diagram, move) is None]

    # Rewriting

    def apply(self, diagram: GaussDiagram, move: MoveInstance) -> GaussDiagram:
        """
        Apply a legal move.

        Raises:
            IllegalMoveError: the move is not legal on ``diagram``.
        """
        reason = self.check(diagram, move)
        if reason is not None:
            raise IllegalMoveError(reason, move)

        endpoints = list(diagram.endpoints)
        signs = dict(diagram.signs)
        kind = move.kind

        if kind is MoveKind.R1_INSERT:
            chord = diagram.max_label + 1
            pair = [Endpoint(chord, move.direction), Endpoint(chord, move.direction.other)]
            signs[chord] = move.sign
            endpoints = _insert_arcs(endpoints, move.position, pair, None, None)

        elif kind is MoveKind.R2_INSERT:
            variant = self.table.r2(move.variant)
            labels = {tag: diagram.max_label + offset for offset, tag in enumerate(variant.tags, 1)}
            for tag, sign in resolve_signs(variant.signs, variant.tags, move.sign).items():
                signs[labels[tag]] = sign
            arc_a, arc_b = (
                [Endpoint(labels[pattern.chord], pattern.role) for pattern in arc]
                for arc in variant.arcs
            )
            gap_a, gap_b = move.positions
            endpoints = _insert_arcs(endpoints, gap_a, arc_a, gap_b, arc_b)

        elif kind in (MoveKind.R1_REMOVE, MoveKind.R2_REMOVE):
            removed = set(move.chords)
            endpoints = [endpoint for endpoint in endpoints if endpoint.chord not in removed]
            for chord in removed:
                del signs[chord]

        elif kind is MoveKind.R3:
            for start in move.positions:
                first, second = start % len(endpoints), (start + 1) % len(endpoints)
                endpoints[first], endpoints[second] = endpoints[second], endpoints[first]

        else:
            first, second = move.position, (move.position + 1) % len(endpoints)
            endpoints[first], endpoints[second] = endpoints[second], endpoints[first]

        return GaussDiagram(tuple(endpoints), signs)

    def invert(self, move: MoveInstance, before: GaussDiagram) -> MoveInstance:
        """
        The move undoing ``move`` on the diagram it produces, restoring
        ``before`` exactly (basepoint included).
        """
        reason = self.check(before, move)
        if reason is not None:
            raise IllegalMoveError(reason, move)

        kind = move.kind
        if kind is MoveKind.R1_INSERT:
            return MoveInstance.r1_remove(before.max_label + 1)

        if kind is MoveKind.R2_INSERT:
            return MoveInstance.r2_remove(before.max_label + 1, before.max_label + 2, move.variant)

        if kind is MoveKind.R1_REMOVE:
            chord = move.chords[0]
            tail = before.position(chord, Role.TAIL)
            head = before.position(chord, Role.HEAD)
            if abs(tail - head) == 1:
                first = min(tail, head)
                return MoveInstance.r1_insert(first, before.at(first).role, before.sign(chord))
            wrap_gap = before.size - 1
            return MoveInstance.r1_insert(wrap_gap, before.at(before.size - 1).role, before.sign(chord))

        if kind is MoveKind.R2_REMOVE:
            chord_a, chord_b = move.chords
            site = find_r2_site(before, chord_a, chord_b)
            first_start, second_start = site.starts
            if site.straddles:
                gap_a, gap_b = first_start - 1, before.size - 3
            else:
                gap_a, gap_b = first_start, second_start - 2
            return MoveInstance.r2_insert(gap_a, gap_b, move.variant, before.sign(chord_a))

        if kind is MoveKind.R3:
            top, middle, bottom = move.positions
            return MoveInstance.r3(top, middle, bottom, self.table.r3(move.variant).post)

        return move


def _insert_arcs(
    endpoints: List[Endpoint],
    gap_a: int,
    arc_a: List[Endpoint],
    gap_b: Optional[int],
    arc_b: Optional[List[Endpoint]]
) -> List[Endpoint]:
    """Insert one or two arcs at gaps; a gap one past the end splits its arc over the basepoint."""
    size = len(endpoints)
    wraps_a = gap_b is None and size > 0 and gap_a == size + 1
    if wraps_a:
        return [arc_a[1]] + endpoints + [arc_a[0]]
    if gap_b is None:
        return endpoints[:gap_a] + arc_a + endpoints[gap_a:]
    if gap_b == size + 1:
        return [arc_b[1]] + endpoints[:gap_a] + arc_a + endpoints[gap_a:] + [arc_b[0]]
    return endpoints[:gap_a] + arc_a + endpoints[gap_a:gap_b] + arc_b + endpoints[gap_b:]


def enumerate_moves(
    diagram: GaussDiagram,
    kind: MoveKind,
    table: Optional[VariantTable] = None
) -> List[MoveInstance]:
    """Every legal instance of ``kind`` on ``diagram``."""
    return MoveEngine(table).enumerate(diagram, kind)


def check_move(
    diagram: GaussDiagram,
    move: MoveInstance,
    table: Optional[VariantTable] = None
) -> Optional[str]:
    return MoveEngine(table).check(diagram, move)


def is_legal(diagram: GaussDiagram, move: MoveInstance, table: Optional[VariantTable] = None) -> bool:
    return MoveEngine(table).is_legal(diagram, move)


def apply_move(
    diagram: GaussDiagram,
    move: MoveInstance,
    table: Optional[VariantTable] = None
) -> GaussDiagram:
    return MoveEngine(table).apply(diagram, move)


def invert_move(
    move: MoveInstance,
    before: GaussDiagram,
    table: Optional[VariantTable] = None
) -> MoveInstance:
    return MoveEngine(table).invert(move, before)
