"""
Rewriter

Turns any Gauss diagram into any other. Chords are contracted one at a time:
a chord's head is walked next to its tail by adjacent transpositions (FH, FT,
or the FS/FO expansions) and the chord is then removed with move I. Once a
diagram is empty, the steps that emptied a target diagram are inverted and
replayed in reverse to rebuild it.
"""

import logging
from typing import Iterator, List, Optional, Tuple

from .exceptions.rewriter_exceptions import ReplayError, TranspositionError, UnknownChordError
from .gauss_code import serialize
from .macro_moves import expand_macro, macro_kind_at
from .models import (
    GaussDiagram,
    MacroMove,
    MacroStep,
    MoveInstance,
    MoveKind,
    Role,
    Trace,
    TraceStats,
)
from .move_engine import MoveEngine
from .variant_table import VariantTable

logger = logging.getLogger(__name__)

# unknot() emits at most UNKNOT_LENGTH_CONSTANT * n**2 primitive steps for n chords.
UNKNOT_LENGTH_CONSTANT = 3


def iter_states(
    diagram: GaussDiagram,
    trace: Trace,
    table: Optional[VariantTable] = None
) -> Iterator[GaussDiagram]:
    """
    Yield the diagram after each step of ``trace``.

    Raises:
        ReplayError: a step is illegal on the diagram it is applied to.
    """
    engine = MoveEngine(table)
    state = diagram
    for index, step in enumerate(trace):
        reason = engine.check(state, step)
        if reason is not None:
            raise ReplayError(index, step, state, reason)
        state = engine.apply(state, step)
        yield state


def replay(diagram: GaussDiagram, trace: Trace, table: Optional[VariantTable] = None) -> GaussDiagram:
    """Apply every step of ``trace`` in order and return the final diagram."""
    state = diagram
    for state in iter_states(diagram, trace, table):
        pass
    return state


def transpose_endpoints(
    diagram: GaussDiagram,
    position: int,
    table: Optional[VariantTable] = None
) -> Tuple[Trace, GaussDiagram]:
    """
    Swap the endpoints at ``position`` and ``position + 1`` (cyclic).

    Two Heads take one FH, two Tails one FT; a Head and a Tail take the FS
    expansion when their chords have equal signs and FO otherwise.

    Raises:
        TranspositionError: both endpoints belong to one chord, or the
            position is out of range.
    """
    if diagram.size < 2 or not 0 <= position < diagram.size:
        raise TranspositionError(f"no endpoint pair at position {position}")
    first, second = diagram.at(position), diagram.at(position + 1)
    if first.chord == second.chord:
        raise TranspositionError(
            f"endpoints at {position} both belong to chord {first.chord}; remove it with move I instead"
        )

    if first.role == second.role:
        step = MoveInstance.fh(position) if first.role is Role.HEAD else MoveInstance.ft(position)
        trace = Trace((step,)).as_macro(step.kind.value, position)
    else:
        kind = macro_kind_at(diagram, position)
        trace = expand_macro(diagram, MacroMove(kind, position), table)

    return trace, replay(diagram, trace, table)


def _walk(diagram: GaussDiagram, chord: int) -> Tuple[int, int]:
    """Forward and backward distances from the chord's head to its tail."""
    head = diagram.position(chord, Role.HEAD)
    tail = diagram.position(chord, Role.TAIL)
    size = diagram.size
    return (tail - head) % size, (head - tail) % size


def contract_chord(
    diagram: GaussDiagram,
    chord: int,
    table: Optional[VariantTable] = None
) -> Tuple[Trace, GaussDiagram]:
    """
    Walk the chord's head next to its tail along the shorter side, then
    remove the chord with move I. Ties go forward.

    Raises:
        UnknownChordError: the chord is not in the diagram.
    """
    if not diagram.has_chord(chord):
        raise UnknownChordError(chord)

    trace = Trace()
    state = diagram
    forward, backward = _walk(state, chord)
    go_forward = forward <= backward
    while min(forward, backward) > 1:
        head = state.position(chord, Role.HEAD)
        position = head if go_forward else (head - 1) % state.size
        step_trace, state = transpose_endpoints(state, position, table)
        trace = trace + step_trace
        forward, backward = _walk(state, chord)

    removal = MoveInstance.r1_remove(chord)
    state = MoveEngine(table).apply(state, removal)
    return trace.appended(removal), state


def _contraction_order_key(diagram: GaussDiagram, chord: int) -> Tuple[int, int]:
    forward, backward = _walk(diagram, chord)
    return min(forward, backward) - 1, diagram.position(chord, Role.HEAD)


def unknot(diagram: GaussDiagram, table: Optional[VariantTable] = None) -> Trace:
    """
    A trace taking ``diagram`` to the empty diagram.

    The chord whose head is fewest transpositions from its tail goes first.
    Only R1R, R2I, R2R, R3, FH and FT steps occur.
    """
    trace = Trace()
    state = diagram
    while not state.is_empty:
        chord = min(state.chords(), key=lambda c: _contraction_order_key(state, c))
        logger.debug(
            "Contracting chord %d of %d (%d transpositions)",
            chord, state.chord_count, _contraction_order_key(state, chord)[0]
        )
        step_trace, state = contract_chord(state, chord, table)
        trace = trace + step_trace
    return trace


def _inverse_trace(
    diagram: GaussDiagram,
    trace: Trace,
    table: Optional[VariantTable]
) -> Tuple[List[MoveInstance], List[GaussDiagram]]:
    """Step-wise inverses of ``trace`` and the states they apply to, both in replay order."""
    engine = MoveEngine(table)
    states = [diagram] + list(iter_states(diagram, trace, table))
    inverses = [engine.invert(step, states[index]) for index, step in enumerate(trace)]
    return inverses[::-1], states[:0:-1]


def _readdress(move: MoveInstance, planned: GaussDiagram, actual: GaussDiagram) -> MoveInstance:
    """Rename chords of a step planned on one diagram for a diagram with identical layout."""
    if move.kind not in (MoveKind.R1_REMOVE, MoveKind.R2_REMOVE):
        return move
    rename = {
        expected.chord: found.chord
        for expected, found in zip(planned.endpoints, actual.endpoints)
    }
    return MoveInstance(
        move.kind,
        positions=move.positions,
        chords=tuple(rename[chord] for chord in move.chords),
        direction=move.direction,
        sign=move.sign,
        variant=move.variant,
    )


def readdress_trace(
    trace: Trace,
    planned: GaussDiagram,
    actual: GaussDiagram,
    table: Optional[VariantTable] = None
) -> Trace:
    """
    Rename the chords of a trace written against ``planned`` so it replays on
    ``actual``, a diagram with the same layout but its own labels.

    Chords inserted along the way are tracked too. Renaming stops at the first
    step that is illegal on ``planned``; the rest is kept as written so replay
    reports it.
    """
    engine = MoveEngine(table)
    steps: List[MoveInstance] = []
    for index, move in enumerate(trace):
        if engine.check(planned, move) is not None:
            steps.extend(trace.steps[index:])
            break
        step = _readdress(move, planned, actual)
        planned = engine.apply(planned, move)
        actual = engine.apply(actual, step)
        steps.append(step)
    return Trace(tuple(steps), trace.macro_steps)


def transform(
    source: GaussDiagram,
    target: GaussDiagram,
    table: Optional[VariantTable] = None
) -> Trace:
    """
    A trace taking ``source`` to a diagram equal to ``target``.

    ``source`` is unknotted, then the unknotting of ``target`` is undone step
    by step. Inverse steps are replayed forward against the diagram actually
    reached, so chord labels in the emitted trace are always valid.
    """
    engine = MoveEngine(table)
    forward = unknot(source, table)
    actual = replay(source, forward, table)

    backward = unknot(target, table)
    inverses, planned_states = _inverse_trace(target, backward, table)

    steps: List[MoveInstance] = []
    for move, planned in zip(inverses, planned_states):
        step = _readdress(move, planned, actual)
        actual = engine.apply(actual, step)
        steps.append(step)

    total = len(backward)
    rebuilt_macros = tuple(
        MacroStep(macro.label, macro.position, total - macro.start - macro.length, macro.length)
        for macro in reversed(backward.macro_steps)
    )
    logger.debug(
        "Transform %s -> %s: %d steps down, %d steps up",
        serialize(source), serialize(target), len(forward), len(steps)
    )
    return forward + Trace(tuple(steps), rebuilt_macros)


def trace_stats(
    trace: Trace,
    start: Optional[GaussDiagram] = None,
    table: Optional[VariantTable] = None
) -> TraceStats:
    """Per-kind counts and length; peak chord count when the start diagram is given."""
    stats = TraceStats()
    for step in trace:
        stats.counts[step.kind] += 1
    stats.total = len(trace)
    stats.macro_transpositions = len(trace.macro_steps)
    if start is not None:
        stats.peak_chords = max(
            [start.chord_count] + [state.chord_count for state in iter_states(start, trace, table)]
        )
    return stats
