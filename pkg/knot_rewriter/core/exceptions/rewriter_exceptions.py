from typing import Any, Optional


class RewriterError(Exception):
    """Base exception for knot rewriter errors."""
    pass


class GaussCodeError(RewriterError):
    """Exception raised when a Gauss code cannot be parsed."""

    def __init__(self, message: str, position: Optional[int] = None, chord: Optional[int] = None):
        super().__init__(message)
        self.position = position
        self.chord = chord


class UnknownChordError(RewriterError):
    """Exception raised when a chord identifier is not in the diagram."""

    def __init__(self, chord: int):
        super().__init__(f"Unknown chord: {chord}")
        self.chord = chord


class IllegalMoveError(RewriterError):
    """Exception raised when a move instance does not apply to a diagram."""

    def __init__(self, reason: str, move: Any = None):
        super().__init__(reason)
        self.reason = reason
        self.move = move


class MacroExpansionError(RewriterError):
    """Exception raised when an FS/FO expansion cannot be built."""
    pass


class TranspositionError(RewriterError):
    """Exception raised for a transposition of two endpoints of one chord."""
    pass


class ReplayError(RewriterError):
    """Exception raised when a trace step is illegal during replay."""

    def __init__(self, step_index: int, step: Any, state: Any, reason: str):
        super().__init__(f"step {step_index} illegal: {reason}")
        self.step_index = step_index
        self.step = step
        self.state = state
        self.reason = reason


class VariantTableError(RewriterError):
    """Exception raised for missing or inconsistent variant tables."""
    pass


class TraceFormatError(RewriterError):
    """Exception raised for malformed trace files."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
