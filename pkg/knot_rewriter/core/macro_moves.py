"""
Head/Tail Transpositions

FS and FO swap an adjacent Head and Tail of distinct chords. Neither is a
primitive move: each expands into five primitive steps that bring in two
helper chords with a move II, slide them with the forbidden moves and a
move III, and take them out again.

    FS (equal signs):     R2I, FT, FH, R3, R2R
    FO (opposite signs):  R2I, FH, R3, FT, R2R
"""

import logging
from typing import Optional, Tuple

from .exceptions.rewriter_exceptions import MacroExpansionError
from .models import Endpoint, GaussDiagram, MacroKind, MacroMove, MoveInstance, MoveKind, Role, Trace
from .move_engine import MoveEngine, match_r2_variant, match_r3_variant, r2_remove_instance
from .variant_table import VariantTable

logger = logging.getLogger(__name__)

# Placeholder labels for the helper chords until the variant fixes their order.
_HELPER_U = -1
_HELPER_V = -2


def macro_kind_at(diagram: GaussDiagram, position: int) -> MacroKind:
    """
    Which transposition swaps the endpoints at ``position`` and ``position + 1``.

    Raises:
        MacroExpansionError: the pair is not a Head and a Tail of distinct chords.
    """
    first, second = _site(diagram, position)
    same = diagram.sign(first.chord) == diagram.sign(second.chord)
    return MacroKind.FS if same else MacroKind.FO


def _site(diagram: GaussDiagram, position: int) -> Tuple[Endpoint, Endpoint]:
    if diagram.size < 4 or not 0 <= position < diagram.size:
        raise MacroExpansionError(f"no head/tail pair at position {position}")
    first, second = diagram.at(position), diagram.at(position + 1)
    if first.role == second.role or first.chord == second.chord:
        raise MacroExpansionError(
            f"endpoints {first} and {second} at position {position} are not a head and a tail of distinct chords"
        )
    return first, second


def expand_macro(
    diagram: GaussDiagram,
    macro: MacroMove,
    table: Optional[VariantTable] = None
) -> Trace:
    """
    Expand FS or FO at ``macro.position`` into a primitive trace.

    Replaying the result on ``diagram`` gives ``diagram`` with the two
    endpoints at the site swapped, basepoint unchanged.

    Raises:
        MacroExpansionError: the site is not a Head/Tail pair, the sign
            condition of the macro fails, or the table lacks a needed variant.
    """
    engine = MoveEngine(table)
    position = macro.position
    first, second = _site(diagram, position)

    actual = macro_kind_at(diagram, position)
    if actual is not macro.kind:
        raise MacroExpansionError(
            f"{macro.kind.value} needs {'equal' if macro.kind is MacroKind.FS else 'opposite'} signs; "
            f"chords {first.chord} and {second.chord} call for {actual.value}"
        )

    head_first = first.role is Role.HEAD
    head_chord = first.chord if head_first else second.chord
    tail_chord = second.chord if head_first else first.chord
    u_sign = diagram.sign(head_chord) if head_first else diagram.sign(head_chord).opposite

    # Helper tails go right before the head chord's tail, helper heads right
    # before the tail chord's head; the strands run antiparallel.
    tails_gap = diagram.position(head_chord, Role.TAIL)
    heads_gap = diagram.position(tail_chord, Role.HEAD)
    tails_arc = [Endpoint(_HELPER_V, Role.TAIL), Endpoint(_HELPER_U, Role.TAIL)]
    heads_arc = [Endpoint(_HELPER_U, Role.HEAD), Endpoint(_HELPER_V, Role.HEAD)]
    if tails_gap < heads_gap:
        gaps, arcs = (tails_gap, heads_gap), [tails_arc, heads_arc]
    else:
        gaps, arcs = (heads_gap, tails_gap), [heads_arc, tails_arc]

    match = match_r2_variant(arcs, {_HELPER_U: u_sign, _HELPER_V: u_sign.opposite}, engine.table)
    if match is None:
        raise MacroExpansionError("variant table has no antiparallel move II pattern for the helper chords")
    variant, binding = match
    first_tag = variant.tags[0]
    insert = MoveInstance.r2_insert(
        gaps[0], gaps[1], variant.id,
        u_sign if binding[first_tag] == _HELPER_U else u_sign.opposite
    )

    steps = [insert]
    state = engine.apply(diagram, insert)
    labels = {
        binding[tag]: diagram.max_label + offset
        for offset, tag in enumerate(variant.tags, 1)
    }
    u, v = labels[_HELPER_U], labels[_HELPER_V]

    def site_start(current: GaussDiagram) -> int:
        head_at = current.position(head_chord, Role.HEAD)
        tail_at = current.position(tail_chord, Role.TAIL)
        return head_at if head_first else tail_at

    def push(move: MoveInstance) -> None:
        nonlocal state
        steps.append(move)
        state = engine.apply(state, move)

    def r3_step(top: int) -> MoveInstance:
        positions = (top, site_start(state), state.position(u, Role.HEAD))
        r3_variant = match_r3_variant(state, positions, engine.table)
        if r3_variant is None:
            raise MacroExpansionError(f"variant table has no move III pattern for arcs at {positions}")
        return MoveInstance.r3(*positions, r3_variant.id)

    if macro.kind is MacroKind.FS:
        push(MoveInstance.ft(state.position(u, Role.TAIL)))
        push(MoveInstance.fh(state.position(v, Role.HEAD)))
        push(r3_step(state.position(head_chord, Role.TAIL)))
    else:
        push(MoveInstance.fh(state.position(v, Role.HEAD)))
        push(r3_step(state.position(u, Role.TAIL)))
        push(MoveInstance.ft(state.position(v, Role.TAIL)))

    remove = r2_remove_instance(state, u, v, engine.table)
    if remove is None:
        raise MacroExpansionError(f"helper chords {u} and {v} do not form a move II site")
    push(remove)

    logger.debug(
        "%s at %d: %s", macro.kind.value, position,
        " ".join(step.kind.value for step in steps)
    )
    return Trace(tuple(steps)).as_macro(macro.kind.value, position)


def uses_both_forbidden_moves(trace: Trace) -> bool:
    """True when the trace contains at least one FH and at least one FT step."""
    kinds = set(trace.kinds())
    return MoveKind.FH in kinds and MoveKind.FT in kinds
