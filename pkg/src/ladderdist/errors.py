"""Exception hierarchy.  CLI exit codes are attached to the classes."""


class LadderDistError(Exception):
    exit_code = 2


class ParseError(LadderDistError, ValueError):
    """Syntax error in a universe file or a multisegment literal."""

    exit_code = 2

    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class UniverseError(LadderDistError, ValueError):
    """Semantically invalid universe declaration."""

    exit_code = 3


class SegmentError(LadderDistError, ValueError):
    pass


class UndefinedGammaError(LadderDistError, ValueError):
    """A verdict needs the gamma bit of a line on which it is undefined."""

    exit_code = 3


class NotALadderError(LadderDistError, ValueError):
    pass


class SoundnessError(LadderDistError, AssertionError):
    """Two rules produced YES and NO for the same kind."""

    exit_code = 1
