"""
Static rendering of Gauss diagrams: an ASCII chord chart and a Graphviz DOT
export of the chord interleaving graph.
"""

from itertools import combinations
from pathlib import Path
from typing import List

from jinja2 import Environment, FileSystemLoader

from .gauss_code import interleaved
from .invariants import interleaving_counts
from .models import GaussDiagram

TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates"

_CELL = 4

_jinja_env = Environment(
    loader=FileSystemLoader(str(TEMPLATES_DIR)),
    autoescape=False,
    trim_blocks=True,
    lstrip_blocks=True
)


def render_ascii(diagram: GaussDiagram) -> str:
    """
    One row per chord under the endpoint row; each chord spans from its
    first to its second endpoint and is marked T/H at its ends.
    """
    if diagram.is_empty:
        return "(empty diagram)\n"

    relabel = diagram.relabeling()
    width = diagram.size * _CELL
    label_width = len(str(diagram.chord_count)) + 3

    lines: List[str] = [
        " " * label_width + "".join(f"{index:<{_CELL}}" for index in range(diagram.size)).rstrip(),
        " " * label_width + "".join(
            f"{endpoint.role.value}{relabel[endpoint.chord]:<{_CELL - 1}}" for endpoint in diagram
        ).rstrip(),
    ]

    for chord in diagram.chords():
        row = [" "] * width
        ends = sorted(
            (index, endpoint.role.value)
            for index, endpoint in enumerate(diagram)
            if endpoint.chord == chord
        )
        (low, low_role), (high, high_role) = ends
        for column in range(low * _CELL + 1, high * _CELL):
            row[column] = "-"
        row[low * _CELL] = low_role
        row[high * _CELL] = high_role
        label = f"{relabel[chord]}{diagram.sign(chord).symbol}".rjust(label_width - 1)
        lines.append(f"{label} " + "".join(row).rstrip())

    return "\n".join(lines) + "\n"


def render_dot(diagram: GaussDiagram, name: str = "interleaving") -> str:
    """Chord interleaving graph as DOT; chords with odd degree are shaded."""
    relabel = diagram.relabeling()
    counts = interleaving_counts(diagram)
    nodes = [
        {
            "chord": relabel[chord],
            "sign": diagram.sign(chord).symbol,
            "odd": counts[chord] % 2 == 1,
        }
        for chord in diagram.chords()
    ]
    edges = [
        (relabel[first], relabel[second])
        for first, second in combinations(diagram.chords(), 2)
        if interleaved(diagram, first, second)
    ]
    template = _jinja_env.get_template("interleaving.dot.j2")
    return template.render(name=name, nodes=nodes, edges=edges)
