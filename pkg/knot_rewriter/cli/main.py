import functools
import logging
import sys
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from ..config.settings import settings
from ..core.exceptions.rewriter_exceptions import RewriterError
from ..core.gauss_code import (
    all_diagrams,
    canonical_form,
    diagnose,
    diagrams_equal,
    parse_gauss_code,
    random_diagram,
    serialize,
)
from ..core.invariants import InvariantValue
from ..core.models import GaussDiagram, MoveKind
from ..core.move_engine import MoveEngine
from ..core.rendering import render_ascii, render_dot
from ..core.rewriter import replay as replay_trace
from ..core.rewriter import readdress_trace, trace_stats, transform as transform_diagrams, unknot as unknot_diagram
from ..core.trace_format import dumps_trace, format_step, parse_step, read_trace
from ..core.variant_table import VariantTable, default_table
from ..utils.helpers import pretty_print_json, read_code_argument, truncate_string

app = typer.Typer(help="Gauss diagram rewriting with Reidemeister and forbidden moves")
console = Console(highlight=False, soft_wrap=True)
err_console = Console(stderr=True, highlight=False, soft_wrap=True)

INPUT_HELP = "Read the Gauss code from a file instead of the argument"


class CliConfig(BaseModel):
    """Global flags layered over the environment settings."""
    table_path: Optional[Path] = None
    raw: bool = False
    seed: int = 0
    verbose: bool = False
    strict: bool = False

    @classmethod
    def from_flags(
        cls,
        table_path: Optional[Path],
        raw: bool,
        seed: Optional[int],
        verbose: bool
    ) -> "CliConfig":
        return cls(
            table_path=table_path or settings.variant_table,
            raw=raw,
            seed=settings.seed if seed is None else seed,
            verbose=verbose,
            strict=settings.strict_replay,
        )

    def load_table(self) -> VariantTable:
        if self.table_path is None:
            return default_table()
        return VariantTable.load(self.table_path)


def _configure_logging(config: CliConfig) -> None:
    logger = logging.getLogger("knot_rewriter")
    logger.handlers.clear()
    logger.addHandler(RichHandler(console=err_console, show_time=False, show_path=False))
    logger.setLevel(logging.DEBUG if config.verbose else settings.log_level)
    logger.propagate = False


def handle_error(func):
    """Decorator turning domain errors into exit status 1."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RewriterError as e:
            err_console.print(f"[red]Error: {escape(str(e))}[/red]")
            raise typer.Exit(1)
    return wrapper


def _config(ctx: typer.Context) -> CliConfig:
    if isinstance(ctx.obj, CliConfig):
        return ctx.obj
    return CliConfig.from_flags(None, False, None, False)


def _diagram(code: Optional[str], input_file: Optional[Path] = None) -> GaussDiagram:
    text = read_code_argument(code, input_file)
    if text is None:
        raise typer.BadParameter("give a Gauss code or --in FILE")
    return parse_gauss_code(text)


def _show(diagram: GaussDiagram, config: CliConfig) -> str:
    return serialize(diagram, relabel=False) if config.raw else canonical_form(diagram)


def _emit(text: str) -> None:
    console.print(text, markup=False, end="")


def _print(text: str) -> None:
    console.print(text, markup=False)


@app.callback()
def main_options(
    ctx: typer.Context,
    table: Optional[Path] = typer.Option(None, "--table", help="Variant table file (JSON or YAML)"),
    raw: bool = typer.Option(False, "--raw", help="Print diagrams as given instead of canonically"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for random generation"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log rewriting progress"),
):
    config = CliConfig.from_flags(table, raw, seed, verbose)
    ctx.obj = config
    _configure_logging(config)


@app.command("parse")
@handle_error
def parse_command(
    ctx: typer.Context,
    code: Optional[str] = typer.Argument(None, help="Signed Gauss code"),
    input_file: Optional[Path] = typer.Option(None, "--in", help=INPUT_HELP),
):
    """Parse a Gauss code and print it with its invariants."""
    config = _config(ctx)
    diagram = _diagram(code, input_file)
    values = InvariantValue.of(diagram)
    _print(_show(diagram, config))
    _print(f"# chords={diagram.chord_count} writhe={values.writhe} odd_writhe={values.odd_writhe}")


@app.command("validate")
@handle_error
def validate_command(
    code: Optional[str] = typer.Argument(None, help="Signed Gauss code"),
    input_file: Optional[Path] = typer.Option(None, "--in", help=INPUT_HELP),
):
    """Report every structural problem of a Gauss code."""
    text = read_code_argument(code, input_file)
    if text is None:
        raise typer.BadParameter("give a Gauss code or --in FILE")
    violations = diagnose(text)
    if not violations:
        _print("valid")
        return
    for violation in violations:
        _print(f"{violation.code}: {violation.message}")
    raise typer.Exit(1)


@app.command("canon")
@handle_error
def canon_command(
    code: Optional[str] = typer.Argument(None, help="Signed Gauss code"),
    input_file: Optional[Path] = typer.Option(None, "--in", help=INPUT_HELP),
):
    """Print the canonical form of a Gauss code."""
    _print(canonical_form(_diagram(code, input_file)))


@app.command("equal")
@handle_error
def equal_command(
    first: str = typer.Argument(..., help="First Gauss code"),
    second: str = typer.Argument(..., help="Second Gauss code"),
):
    """Compare two diagrams up to the choice of basepoint."""
    same = diagrams_equal(parse_gauss_code(first), parse_gauss_code(second))
    _print("true" if same else "false")


@app.command("random")
@handle_error
def random_command(
    ctx: typer.Context,
    chords: int = typer.Option(3, "--chords", "-n", min=0, help="Chords per diagram"),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Seed of the first diagram"),
    count: int = typer.Option(1, "--count", "-k", min=1, help="Number of diagrams"),
):
    """Generate random diagrams; diagram k uses seed S + k."""
    config = _config(ctx)
    base = config.seed if seed is None else seed
    for offset in range(count):
        _print(_show(random_diagram(chords, base + offset), config))


@app.command("enumerate")
@handle_error
def enumerate_command(
    ctx: typer.Context,
    chords: int = typer.Option(1, "--chords", "-n", min=0, max=4, help="Chords per diagram"),
):
    """List every diagram with the given number of chords."""
    config = _config(ctx)
    for diagram in all_diagrams(chords):
        _print(_show(diagram, config))


@app.command("moves")
@handle_error
def moves_command(
    ctx: typer.Context,
    code: Optional[str] = typer.Argument(None, help="Signed Gauss code"),
    kind: Optional[MoveKind] = typer.Option(None, "--kind", help="Move kind; all removal-type kinds when omitted"),
    input_file: Optional[Path] = typer.Option(None, "--in", help=INPUT_HELP),
):
    """List the legal moves on a diagram."""
    config = _config(ctx)
    diagram = _diagram(code, input_file)
    engine = MoveEngine(config.load_table())
    kinds = [kind] if kind is not None else [
        MoveKind.R1_REMOVE, MoveKind.R2_REMOVE, MoveKind.R3, MoveKind.FH, MoveKind.FT
    ]

    table = Table(title=f"Moves on {_show(diagram, config) or '(empty)'}")
    table.add_column("#", style="dim", justify="right")
    table.add_column("Step", style="cyan")
    table.add_column("Result", style="green")

    count = 0
    for move_kind in kinds:
        for move in engine.enumerate(diagram, move_kind):
            result = _show(engine.apply(diagram, move), config)
            table.add_row(str(count), format_step(move), truncate_string(result or "(empty)", 60))
            count += 1

    if count == 0:
        console.print("[yellow]No legal moves[/yellow]")
        return
    console.print(table)


@app.command("apply")
@handle_error
def apply_command(
    ctx: typer.Context,
    code: str = typer.Argument(..., help="Signed Gauss code"),
    step: str = typer.Argument(..., help="One trace step, e.g. 'FH 2'"),
):
    """Apply one step to a diagram."""
    config = _config(ctx)
    diagram = parse_gauss_code(code)
    engine = MoveEngine(config.load_table())
    _print(_show(engine.apply(diagram, parse_step(step)), config))


def _write_out(text: str, out: Optional[Path]) -> None:
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text)


@app.command("unknot")
@handle_error
def unknot_command(
    ctx: typer.Context,
    code: Optional[str] = typer.Argument(None, help="Signed Gauss code"),
    input_file: Optional[Path] = typer.Option(None, "--in", help=INPUT_HELP),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Also write the trace file here"),
):
    """Print a trace taking a diagram to the empty diagram."""
    config = _config(ctx)
    table = config.load_table()
    diagram = _diagram(code, input_file)
    trace = unknot_diagram(diagram, table)
    text = dumps_trace(trace, diagram, replay_trace(diagram, trace, table))
    _write_out(text, out)
    _emit(text)


@app.command("transform")
@handle_error
def transform_command(
    ctx: typer.Context,
    source: str = typer.Argument(..., help="Start Gauss code"),
    target: str = typer.Argument(..., help="Target Gauss code"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Also write the trace file here"),
):
    """Print a trace taking one diagram to another."""
    config = _config(ctx)
    table = config.load_table()
    start = parse_gauss_code(source)
    trace = transform_diagrams(start, parse_gauss_code(target), table)
    text = dumps_trace(trace, start, replay_trace(start, trace, table))
    _write_out(text, out)
    _emit(text)


@app.command("replay")
@handle_error
def replay_command(
    ctx: typer.Context,
    code: str = typer.Argument(..., help="Start Gauss code"),
    trace_file: Path = typer.Argument(..., help="Trace file"),
    strict: Optional[bool] = typer.Option(
        None, "--strict/--no-strict", help="Check the start and result annotations"
    ),
):
    """Verify a trace step by step and print the diagram it ends at."""
    config = _config(ctx)
    strict = config.strict if strict is None else strict
    table = config.load_table()
    start = parse_gauss_code(code)
    document = read_trace(trace_file)
    trace = document.trace

    # Steps address chords by the labels of the start annotation.
    if document.start is not None:
        annotated = parse_gauss_code(document.start)
        if annotated == start:
            trace = readdress_trace(trace, annotated, start, table)
        elif strict:
            err_console.print("[red]Error: start diagram differs from the trace's start annotation[/red]")
            raise typer.Exit(1)

    final = replay_trace(start, trace, table)

    if strict:
        if document.result is None:
            err_console.print("[red]Error: strict replay needs a '# result:' annotation[/red]")
            raise typer.Exit(1)
        if not diagrams_equal(final, parse_gauss_code(document.result)):
            err_console.print(
                f"[red]Error: replay ended at {escape(canonical_form(final))!r}, "
                f"trace claims {escape(document.result)!r}[/red]"
            )
            raise typer.Exit(1)

    _print(_show(final, config))


@app.command("stats")
@handle_error
def stats_command(
    ctx: typer.Context,
    trace_file: Path = typer.Argument(..., help="Trace file"),
    start: Optional[str] = typer.Option(None, "--start", help="Start diagram; defaults to the trace's start annotation"),
    as_json: bool = typer.Option(False, "--json", help="Print JSON instead of a table"),
):
    """Summarize a trace."""
    config = _config(ctx)
    document = read_trace(trace_file)
    code = start if start is not None else document.start
    diagram = parse_gauss_code(code) if code is not None else None
    stats = trace_stats(document.trace, diagram, config.load_table())

    if as_json:
        _print(pretty_print_json(stats.to_dict()))
        return

    table = Table(title="Trace statistics")
    table.add_column("Metric", style="cyan")
    table.add_column("Value", style="magenta", justify="right")
    for kind, count in stats.counts.items():
        table.add_row(kind.value, str(count))
    table.add_row("total", str(stats.total))
    table.add_row("transpositions", str(stats.macro_transpositions))
    table.add_row("peak chords", "N/A" if stats.peak_chords is None else str(stats.peak_chords))
    console.print(table)


@app.command("render")
@handle_error
def render_command(
    code: Optional[str] = typer.Argument(None, help="Signed Gauss code"),
    output_format: str = typer.Option("ascii", "--format", "-f", help="ascii or dot"),
    input_file: Optional[Path] = typer.Option(None, "--in", help=INPUT_HELP),
):
    """Draw a diagram as ASCII or as a DOT interleaving graph."""
    if output_format not in ("ascii", "dot"):
        raise typer.BadParameter("format must be 'ascii' or 'dot'", param_hint="--format")
    diagram = _diagram(code, input_file)
    text = render_ascii(diagram) if output_format == "ascii" else render_dot(diagram) + "\n"
    _emit(text)


# Whatever click build typer runs on; BadParameter derives from UsageError.
_UsageError = next(cls for cls in typer.BadParameter.__mro__ if cls.__name__ == "UsageError")


def run_cli(argv: Optional[List[str]] = None) -> int:
    """
    Run one command and return its exit status: 0 on success, 1 on a
    domain error, 2 on a usage error.
    """
    try:
        result = app(args=argv, prog_name="knot-rewriter", standalone_mode=False)
    except _UsageError as e:
        e.show()
        return 2
    except typer.Abort:
        err_console.print("[red]Aborted[/red]")
        return 1
    except RewriterError as e:
        err_console.print(f"[red]Error: {escape(str(e))}[/red]")
        return 1
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
