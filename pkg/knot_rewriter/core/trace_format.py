"""
Trace File Format

One step per line, positions relative to the diagram before the step:

    R1I <gap> <T|H> <+|->
    R1R <chord>
    R2I <gapA> <gapB> <variant-id> <+|->
    R2R <chord1> <chord2> <variant-id>
    R3 <top> <middle> <bottom> <variant-id>
    FH <pos>
    FT <pos>

Lines starting with '#' are comments. Three comment forms carry data:
``# start: <code>``, ``# result: <code>`` and ``# macro <label> <pos> <length>``
(the transposition that the following ``length`` steps implement).
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

from .exceptions.rewriter_exceptions import TraceFormatError
from .gauss_code import canonical_form, serialize
from .models import GaussDiagram, MacroStep, MoveInstance, MoveKind, Role, Sign, Trace

_START = "# start:"
_RESULT = "# result:"
_MACRO = "# macro"
_MACRO_LABELS = ("FH", "FT", "FS", "FO")


@dataclass
class TraceDocument:
    """A parsed trace file."""
    trace: Trace
    start: Optional[str] = None
    result: Optional[str] = None


def format_step(move: MoveInstance) -> str:
    kind = move.kind
    if kind is MoveKind.R1_INSERT:
        return f"R1I {move.position} {move.direction.value} {move.sign.symbol}"
    if kind is MoveKind.R1_REMOVE:
        return f"R1R {move.chords[0]}"
    if kind is MoveKind.R2_INSERT:
        gap_a, gap_b = move.positions
        return f"R2I {gap_a} {gap_b} {move.variant} {move.sign.symbol}"
    if kind is MoveKind.R2_REMOVE:
        chord_a, chord_b = move.chords
        return f"R2R {chord_a} {chord_b} {move.variant}"
    if kind is MoveKind.R3:
        top, middle, bottom = move.positions
        return f"R3 {top} {middle} {bottom} {move.variant}"
    return f"{kind.value} {move.position}"


def _integer(token: str, line_number: Optional[int]) -> int:
    try:
        value = int(token)
    except ValueError:
        raise TraceFormatError(f"expected an integer, got {token!r}", line_number)
    if value < 0:
        raise TraceFormatError(f"expected a non-negative integer, got {value}", line_number)
    return value


def _sign(token: str, line_number: Optional[int]) -> Sign:
    try:
        return Sign.from_symbol(token)
    except ValueError:
        raise TraceFormatError(f"expected '+' or '-', got {token!r}", line_number)


def parse_step(line: str, line_number: Optional[int] = None) -> MoveInstance:
    """
    Parse one step line.

    Raises:
        TraceFormatError: unknown mnemonic or wrong arguments.
    """
    tokens = line.split()
    if not tokens:
        raise TraceFormatError("empty step", line_number)

    try:
        kind = MoveKind(tokens[0])
    except ValueError:
        raise TraceFormatError(f"unknown move {tokens[0]!r}", line_number)

    arity = {
        MoveKind.R1_INSERT: 3,
        MoveKind.R1_REMOVE: 1,
        MoveKind.R2_INSERT: 4,
        MoveKind.R2_REMOVE: 3,
        MoveKind.R3: 4,
        MoveKind.FH: 1,
        MoveKind.FT: 1,
    }[kind]
    args = tokens[1:]
    if len(args) != arity:
        raise TraceFormatError(f"{kind.value} takes {arity} argument(s), got {len(args)}", line_number)

    if kind is MoveKind.R1_INSERT:
        if args[1] not in ("T", "H"):
            raise TraceFormatError(f"direction must be T or H, got {args[1]!r}", line_number)
        return MoveInstance.r1_insert(_integer(args[0], line_number), Role(args[1]), _sign(args[2], line_number))
    if kind is MoveKind.R1_REMOVE:
        return MoveInstance.r1_remove(_integer(args[0], line_number))
    if kind is MoveKind.R2_INSERT:
        return MoveInstance.r2_insert(
            _integer(args[0], line_number), _integer(args[1], line_number),
            args[2], _sign(args[3], line_number)
        )
    if kind is MoveKind.R2_REMOVE:
        return MoveInstance.r2_remove(_integer(args[0], line_number), _integer(args[1], line_number), args[2])
    if kind is MoveKind.R3:
        top, middle, bottom = (_integer(token, line_number) for token in args[:3])
        return MoveInstance.r3(top, middle, bottom, args[3])
    position = _integer(args[0], line_number)
    return MoveInstance.fh(position) if kind is MoveKind.FH else MoveInstance.ft(position)


def dumps_trace(
    trace: Trace,
    start: Optional[GaussDiagram] = None,
    result: Optional[GaussDiagram] = None
) -> str:
    """
    Render a trace file.

    The start diagram is written with its own chord labels so that chord
    numbers in the steps refer to it; the result is written canonically.
    """
    lines: List[str] = []
    if start is not None:
        lines.append(f"{_START} {serialize(start, relabel=False)}".rstrip())

    macros = {macro.start: macro for macro in trace.macro_steps}
    for index, step in enumerate(trace):
        macro = macros.get(index)
        if macro is not None:
            lines.append(f"{_MACRO} {macro.label} {macro.position} {macro.length}")
        lines.append(format_step(step))

    if result is not None:
        lines.append(f"{_RESULT} {canonical_form(result)}".rstrip())
    return "\n".join(lines) + "\n"


def _parse_macro(line: str, start: int, line_number: int) -> MacroStep:
    tokens = line[len(_MACRO):].split()
    if len(tokens) != 3 or tokens[0] not in _MACRO_LABELS:
        raise TraceFormatError(f"malformed macro annotation {line!r}", line_number)
    return MacroStep(tokens[0], _integer(tokens[1], line_number), start, _integer(tokens[2], line_number))


def loads_trace(text: str) -> TraceDocument:
    """
    Parse a trace file.

    Raises:
        TraceFormatError: a step line or data-carrying comment is malformed.
    """
    steps: List[MoveInstance] = []
    macros: List[MacroStep] = []
    document = TraceDocument(Trace())

    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith(_START):
                document.start = line[len(_START):].strip()
            elif line.startswith(_RESULT):
                document.result = line[len(_RESULT):].strip()
            elif line.startswith(_MACRO + " "):
                macros.append(_parse_macro(line, len(steps), line_number))
            continue
        steps.append(parse_step(line, line_number))

    document.trace = Trace(tuple(steps), tuple(macros))
    return document


def read_trace(path: Union[str, Path]) -> TraceDocument:
    """Read a trace file from disk."""
    path = Path(path)
    if not path.exists():
        raise TraceFormatError(f"Trace file not found: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        return loads_trace(f.read())


def write_trace(
    path: Union[str, Path],
    trace: Trace,
    start: Optional[GaussDiagram] = None,
    result: Optional[GaussDiagram] = None
) -> Path:
    """Write a trace file, creating parent directories as needed."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps_trace(trace, start, result))
    return path
