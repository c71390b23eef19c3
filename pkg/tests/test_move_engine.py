"""Tests for enumerating, applying and inverting primitive moves."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import head_tail_positions
from knot_rewriter.core.exceptions.rewriter_exceptions import IllegalMoveError
from knot_rewriter.core.gauss_code import parse_gauss_code, random_diagram, serialize, validate
from knot_rewriter.core.macro_moves import expand_macro, macro_kind_at
from knot_rewriter.core.models import GaussDiagram, MacroMove, MoveInstance, MoveKind, Role, Sign
from knot_rewriter.core.move_engine import (
    apply_move,
    check_move,
    enumerate_moves,
    find_r2_site,
    invert_move,
    is_legal,
)
from knot_rewriter.core.rewriter import iter_states


def site_rich_diagrams(count):
    """Random diagrams plus the intermediate states of head/tail expansions, which hold II and III sites."""
    diagrams = [parse_gauss_code("O1+O2+U1+O3+U2+U3+"), parse_gauss_code("O1+O2-U1+U2-")]
    for seed in range(count):
        diagram = random_diagram(2 + seed % 3, seed)
        diagrams.append(diagram)
        positions = head_tail_positions(diagram)
        if positions:
            position = positions[seed % len(positions)]
            trace = expand_macro(diagram, MacroMove(macro_kind_at(diagram, position), position))
            diagrams.extend(list(iter_states(diagram, trace))[:-1])
    return diagrams


def touched_indices(diagram, move):
    size = diagram.size
    if move.kind is MoveKind.R3:
        return {(start + offset) % size for start in move.positions for offset in (0, 1)}
    return {move.position, (move.position + 1) % size}


class TestEnumerateMoves:
    """Test listing legal instances."""

    def test_empty_has_no_forbidden_moves(self):
        """Test that the empty diagram has no FH sites."""
        assert enumerate_moves(GaussDiagram.empty(), MoveKind.FH) == []

    def test_kink_removal(self):
        """Test that a single kink can be removed."""
        assert enumerate_moves(parse_gauss_code("O1+U1+"), MoveKind.R1_REMOVE) == [MoveInstance.r1_remove(1)]

    def test_forbidden_sites(self):
        """Test FH and FT sites of a small diagram, including the cyclic pair."""
        diagram = parse_gauss_code("O1+O2-U1+U2-")
        assert enumerate_moves(diagram, MoveKind.FH) == [MoveInstance.fh(2)]
        assert enumerate_moves(diagram, MoveKind.FT) == [MoveInstance.ft(0)]

    def test_r2_removal(self):
        """Test the move II site of a bigon."""
        diagram = parse_gauss_code("O1+O2-U1+U2-")
        assert enumerate_moves(diagram, MoveKind.R2_REMOVE) == [MoveInstance.r2_remove(1, 2, "r2-par-th")]

    def test_r3_site(self):
        """Test that a move III site is listed."""
        diagram = parse_gauss_code("O1+O2+U1+O3+U2+U3+")
        assert MoveInstance.r3(0, 2, 4, "r3-ppp") in enumerate_moves(diagram, MoveKind.R3)

    def test_r1_insert_gaps(self):
        """Test gap counts for move I insertion."""
        assert len(enumerate_moves(GaussDiagram.empty(), MoveKind.R1_INSERT)) == 4
        # gaps 0..2 plus the wrap gap 3, two directions, two signs
        assert len(enumerate_moves(parse_gauss_code("O1+U1+"), MoveKind.R1_INSERT)) == 16

    def test_enumerated_moves_are_legal(self, engine):
        """Test that every enumerated instance passes the legality check."""
        for diagram in site_rich_diagrams(15):
            for kind in MoveKind:
                for move in engine.enumerate(diagram, kind):
                    assert engine.is_legal(diagram, move), (serialize(diagram), move)

    def test_r2_removal_matches_brute_force(self, engine, table):
        """Test R2 removal enumeration against every chord pair and variant."""
        for diagram in site_rich_diagrams(20):
            listed = set(engine.enumerate(diagram, MoveKind.R2_REMOVE))
            for first, second in itertools.permutations(diagram.chords(), 2):
                for variant in table.r2_variants:
                    move = MoveInstance.r2_remove(first, second, variant.id)
                    assert engine.is_legal(diagram, move) == (move in listed)

    def test_r3_matches_brute_force(self, engine, table):
        """Test move III enumeration against every position triple and variant."""
        diagrams = [d for d in site_rich_diagrams(8) if d.size <= 12]
        assert any(engine.enumerate(d, MoveKind.R3) for d in diagrams)
        for diagram in diagrams:
            listed = set(engine.enumerate(diagram, MoveKind.R3))
            for positions in itertools.product(range(diagram.size), repeat=3):
                for variant in table.r3_variants:
                    move = MoveInstance.r3(*positions, variant.id)
                    assert engine.is_legal(diagram, move) == (move in listed)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=10**6))
    def test_forbidden_moves_have_no_conditions(self, chords, seed):
        """Test that every adjacent same-role pair of distinct chords is a forbidden-move site."""
        diagram = random_diagram(chords, seed)
        heads = enumerate_moves(diagram, MoveKind.FH)
        tails = enumerate_moves(diagram, MoveKind.FT)
        for p in range(diagram.size):
            first, second = diagram.at(p), diagram.at(p + 1)
            if first.chord == second.chord or first.role != second.role:
                continue
            expected = MoveInstance.fh(p) if first.role is Role.HEAD else MoveInstance.ft(p)
            assert expected in (heads if first.role is Role.HEAD else tails)


class TestApplyMove:
    """Test rewrite semantics."""

    def test_fh(self):
        """Test FH swaps two adjacent heads."""
        result = apply_move(parse_gauss_code("O1+O2-U1+U2-"), MoveInstance.fh(2))
        assert serialize(result) == "O1+O2-U2-U1+"

    def test_r1_insert_on_empty(self):
        """Test a kink inserted into the empty diagram."""
        result = apply_move(GaussDiagram.empty(), MoveInstance.r1_insert(0, Role.TAIL, Sign.PLUS))
        assert serialize(result) == "O1+U1+"

    def test_r1_insert_wrap_gap(self):
        """Test that the wrap gap splits the kink over the basepoint."""
        result = apply_move(parse_gauss_code("O1+U1+"), MoveInstance.r1_insert(3, Role.TAIL, Sign.MINUS))
        assert serialize(result) == "U1-O2+U2+O1-"

    def test_r2_insert_on_empty(self):
        """Test the parallel and antiparallel bigons on the empty diagram."""
        parallel = apply_move(GaussDiagram.empty(), MoveInstance.r2_insert(0, 0, "r2-par-th", Sign.PLUS))
        antiparallel = apply_move(GaussDiagram.empty(), MoveInstance.r2_insert(0, 0, "r2-anti-th", Sign.PLUS))
        assert serialize(parallel) == "O1+O2-U1+U2-"
        assert serialize(antiparallel) == "O1+O2-U2-U1+"

    def test_r2_remove(self):
        """Test removing a bigon."""
        result = apply_move(parse_gauss_code("O1+O2-U1+U2-"), MoveInstance.r2_remove(1, 2, "r2-par-th"))
        assert result.is_empty

    def test_r3_swaps_each_arc(self):
        """Test that move III reverses all three arcs."""
        result = apply_move(parse_gauss_code("O1+O2+U1+O3+U2+U3+"), MoveInstance.r3(0, 2, 4, "r3-ppp"))
        assert serialize(result) == "O1+O2+O3+U2+U3+U1+"

    def test_r3_sign_condition(self):
        """Test that move III checks the sign rules."""
        diagram = parse_gauss_code("O1+O2-U1+O3+U2-U3+")
        reason = check_move(diagram, MoveInstance.r3(0, 2, 4, "r3-ppp"))
        assert reason is not None and "violate" in reason

    def test_illegal_fh_on_empty(self):
        """Test the error for FH on the empty diagram."""
        with pytest.raises(IllegalMoveError, match="no adjacent head pair at position 0"):
            apply_move(GaussDiagram.empty(), MoveInstance.fh(0))

    def test_fh_needs_two_heads(self):
        """Test that FH only swaps a pair of heads."""
        diagram = parse_gauss_code("U1+U2+O2+O1+")
        assert is_legal(diagram, MoveInstance.fh(0))
        assert not is_legal(diagram, MoveInstance.fh(1))
        assert is_legal(diagram, MoveInstance.ft(2))
        assert not is_legal(parse_gauss_code("O1+U1+"), MoveInstance.fh(1))

    def test_r1_remove_needs_adjacency(self, trefoil):
        """Test that a crossing chord cannot be removed by move I."""
        with pytest.raises(IllegalMoveError, match="not adjacent"):
            apply_move(trefoil, MoveInstance.r1_remove(1))

    def test_unknown_variant(self):
        """Test that an unknown variant id is illegal."""
        assert "unknown" in check_move(GaussDiagram.empty(), MoveInstance.r2_insert(0, 0, "r2-nope", Sign.PLUS))

    def test_gap_out_of_range(self):
        """Test gap ranges for move II insertion."""
        kink = parse_gauss_code("O1+U1+")
        assert is_legal(kink, MoveInstance.r2_insert(1, 3, "r2-par-th", Sign.PLUS))
        assert not is_legal(kink, MoveInstance.r2_insert(2, 1, "r2-par-th", Sign.PLUS))
        assert not is_legal(kink, MoveInstance.r2_insert(0, 4, "r2-par-th", Sign.PLUS))


class TestInvertMove:
    """Test exact inverses."""

    def test_fh_is_self_inverse(self):
        """Test invert(FH p) == FH p."""
        diagram = parse_gauss_code("O1+O2-U1+U2-")
        assert invert_move(MoveInstance.fh(2), diagram) == MoveInstance.fh(2)

    def test_r1_insert_inverse(self):
        """Test the inverse of a kink insertion removes the new chord."""
        diagram = parse_gauss_code("O3+U3+")
        assert invert_move(MoveInstance.r1_insert(0, Role.HEAD, Sign.PLUS), diagram) == MoveInstance.r1_remove(4)

    def test_r1_remove_over_basepoint(self):
        """Test the inverse of removing a kink split by the basepoint."""
        diagram = parse_gauss_code("U1+O2+U2+O1+")
        move = MoveInstance.r1_remove(1)
        inverse = invert_move(move, diagram)
        assert inverse == MoveInstance.r1_insert(3, Role.TAIL, Sign.PLUS)
        assert apply_move(apply_move(diagram, move), inverse) == diagram

    def test_r2_remove_inverse(self):
        """Test the inverse of a bigon removal."""
        diagram = parse_gauss_code("O1+O2-U1+U2-")
        inverse = invert_move(MoveInstance.r2_remove(1, 2, "r2-par-th"), diagram)
        assert inverse == MoveInstance.r2_insert(0, 0, "r2-par-th", Sign.PLUS)

    def test_r3_inverse_uses_post_state(self):
        """Test the inverse of move III."""
        diagram = parse_gauss_code("O1+O2+U1+O3+U2+U3+")
        assert invert_move(MoveInstance.r3(0, 2, 4, "r3-ppp"), diagram) == MoveInstance.r3(0, 2, 4, "r3-nnn")

    def test_illegal_move(self):
        """Test that inverting an illegal move raises."""
        with pytest.raises(IllegalMoveError):
            invert_move(MoveInstance.fh(0), GaussDiagram.empty())


class TestMoveAlgebra:
    """Test reversibility, locality and deltas for all enumerable instances."""

    def test_algebra(self, engine):
        """Test every instance on site-rich diagrams with up to 8 chords."""
        diagrams = site_rich_diagrams(25) + [random_diagram(n, 100 + n) for n in range(9)]
        for diagram in diagrams:
            for kind in MoveKind:
                moves = engine.enumerate(diagram, kind)
                if kind in (MoveKind.R1_INSERT, MoveKind.R2_INSERT):
                    moves = moves[::7]
                for move in moves:
                    self._check(engine, diagram, move)

    def _check(self, engine, diagram, move):
        after = engine.apply(diagram, move)
        assert validate(after) == []

        inverse = engine.invert(move, diagram)
        assert inverse.kind is move.kind.inverse
        assert engine.is_legal(after, inverse)
        assert engine.apply(after, inverse) == diagram

        assert after.chord_count - diagram.chord_count == move.kind.chord_delta

        before_signs = sorted(diagram.signs.values())
        after_signs = sorted(after.signs.values())
        kind = move.kind
        if kind is MoveKind.R2_INSERT:
            assert after_signs == sorted(before_signs + [Sign.PLUS, Sign.MINUS])
        elif kind is MoveKind.R2_REMOVE:
            assert before_signs == sorted(after_signs + [Sign.PLUS, Sign.MINUS])
        elif kind in (MoveKind.R3, MoveKind.FH, MoveKind.FT):
            assert after_signs == before_signs

        if kind in (MoveKind.R1_INSERT, MoveKind.R2_INSERT):
            kept = [e for e in after.endpoints if e.chord in diagram.signs]
            assert kept == list(diagram.endpoints)
        elif kind in (MoveKind.R1_REMOVE, MoveKind.R2_REMOVE):
            kept = [e for e in diagram.endpoints if e.chord not in move.chords]
            assert kept == list(after.endpoints)
        else:
            touched = touched_indices(diagram, move)
            for index in range(diagram.size):
                if index not in touched:
                    assert after.endpoints[index] == diagram.endpoints[index]


class TestFindR2Site:
    """Test move II site detection."""

    def test_straddling_arc_is_second(self):
        """Test that the arc over the basepoint is ordered second."""
        diagram = parse_gauss_code("O2-U1+U2-O1+")
        site = find_r2_site(diagram, 1, 2)
        assert site is not None
        assert site.straddles
        assert site.starts == (1, 3)

    def test_not_a_site(self, trefoil):
        """Test chords that do not form a bigon."""
        assert find_r2_site(trefoil, 1, 2) is None
