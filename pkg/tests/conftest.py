import random
from typing import List

import pytest

from knot_rewriter.core.gauss_code import parse_gauss_code
from knot_rewriter.core.models import GaussDiagram
from knot_rewriter.core.move_engine import MoveEngine
from knot_rewriter.core.variant_table import default_table


def swapped(diagram: GaussDiagram, position: int) -> GaussDiagram:
    """Direct transposition of the endpoints at position and position + 1."""
    endpoints = list(diagram.endpoints)
    other = (position + 1) % len(endpoints)
    endpoints[position], endpoints[other] = endpoints[other], endpoints[position]
    return GaussDiagram(tuple(endpoints), diagram.signs)


def head_tail_positions(diagram: GaussDiagram) -> List[int]:
    """Positions p where p, p+1 hold a Head and a Tail of distinct chords."""
    return [
        p for p in range(diagram.size)
        if diagram.at(p).role != diagram.at(p + 1).role
        and diagram.at(p).chord != diagram.at(p + 1).chord
    ]


@pytest.fixture
def table():
    return default_table()


@pytest.fixture
def engine(table):
    return MoveEngine(table)


@pytest.fixture
def trefoil():
    return parse_gauss_code("O1+U2+O3+U1+O2+U3+")


@pytest.fixture
def virtual_trefoil():
    return parse_gauss_code("O1+O2+U1+U2+")


@pytest.fixture
def rng():
    return random.Random(20240611)
