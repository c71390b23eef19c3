"""Tests for the FS/FO head/tail transpositions."""

import pytest

from conftest import head_tail_positions, swapped
from knot_rewriter.core.exceptions.rewriter_exceptions import MacroExpansionError
from knot_rewriter.core.gauss_code import parse_gauss_code, random_diagram, serialize
from knot_rewriter.core.macro_moves import expand_macro, macro_kind_at, uses_both_forbidden_moves
from knot_rewriter.core.models import MacroKind, MacroMove, MacroStep, MoveInstance, MoveKind, Trace
from knot_rewriter.core.rewriter import iter_states, replay

FS_KINDS = [MoveKind.R2_INSERT, MoveKind.FT, MoveKind.FH, MoveKind.R3, MoveKind.R2_REMOVE]
FO_KINDS = [MoveKind.R2_INSERT, MoveKind.FH, MoveKind.R3, MoveKind.FT, MoveKind.R2_REMOVE]


class TestMacroKindAt:
    """Test choosing between FS and FO."""

    def test_equal_signs(self):
        """Test that equal signs call for FS."""
        assert macro_kind_at(parse_gauss_code("U1+O2+O1+U2+"), 0) is MacroKind.FS

    def test_opposite_signs(self):
        """Test that opposite signs call for FO."""
        assert macro_kind_at(parse_gauss_code("U1+O2-O1+U2-"), 0) is MacroKind.FO

    def test_same_role_pair(self):
        """Test that two heads are not a head/tail site."""
        with pytest.raises(MacroExpansionError):
            macro_kind_at(parse_gauss_code("O1+O2+U1+U2+"), 2)

    def test_single_chord(self):
        """Test that a kink has no head/tail site of distinct chords."""
        with pytest.raises(MacroExpansionError):
            macro_kind_at(parse_gauss_code("O1+U1+"), 0)


class TestExpandMacro:
    """Test expansions into primitive steps."""

    def test_fs_sequence(self):
        """Test the FS step kinds and net effect."""
        diagram = parse_gauss_code("U1+O2+O1+U2+")
        trace = expand_macro(diagram, MacroMove(MacroKind.FS, 0))
        assert trace.kinds() == FS_KINDS
        assert trace.macro_steps == (MacroStep("FS", 0, 0, 5),)
        assert replay(diagram, trace) == swapped(diagram, 0)

    def test_fo_sequence(self):
        """Test the FO step kinds and net effect."""
        diagram = parse_gauss_code("U1+O2-O1+U2-")
        trace = expand_macro(diagram, MacroMove(MacroKind.FO, 0))
        assert trace.kinds() == FO_KINDS
        assert replay(diagram, trace) == swapped(diagram, 0)

    def test_helpers_add_two_chords(self):
        """Test that the expansion peaks at two extra chords."""
        diagram = parse_gauss_code("U1+O2+O1+U2+")
        trace = expand_macro(diagram, MacroMove(MacroKind.FS, 0))
        counts = [state.chord_count for state in iter_states(diagram, trace)]
        assert max(counts) == diagram.chord_count + 2
        assert counts[-1] == diagram.chord_count

    def test_wrong_kind(self):
        """Test that FO is refused on an equal-sign site."""
        with pytest.raises(MacroExpansionError, match="FO needs opposite signs"):
            expand_macro(parse_gauss_code("U1+O2+O1+U2+"), MacroMove(MacroKind.FO, 0))

    def test_out_of_range(self):
        """Test a position past the end of the diagram."""
        with pytest.raises(MacroExpansionError):
            expand_macro(parse_gauss_code("U1+O2+O1+U2+"), MacroMove(MacroKind.FS, 4))

    def test_every_site_of_random_diagrams(self):
        """Test every head/tail site of 300 random diagrams, including sites over the basepoint."""
        for seed in range(300):
            diagram = random_diagram(2 + seed % 6, seed)
            for position in head_tail_positions(diagram):
                kind = macro_kind_at(diagram, position)
                trace = expand_macro(diagram, MacroMove(kind, position))
                expected = FS_KINDS if kind is MacroKind.FS else FO_KINDS
                assert trace.kinds() == expected, (serialize(diagram), position)
                assert uses_both_forbidden_moves(trace)
                assert replay(diagram, trace) == swapped(diagram, position), (serialize(diagram), position)


class TestUsesBothForbiddenMoves:
    """Test the forbidden-move detector."""

    def test_single_fh(self):
        """Test that FH alone does not count."""
        assert not uses_both_forbidden_moves(Trace((MoveInstance.fh(0),)))
        assert uses_both_forbidden_moves(Trace((MoveInstance.fh(0), MoveInstance.ft(1))))
