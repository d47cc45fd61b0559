"""Exception types shared by the kernel, the CLI and the API.

All of them derive from ValueError so callers that only know about bad
input (the API routers, click commands) can catch one type.
"""
from typing import Optional


class KernelError(ValueError):
    """Base class for every error raised by the proof kernel."""


class ParseError(KernelError):
    """Text that does not conform to one of the grammars."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class UnknownSystemError(KernelError):
    pass


class UnknownRuleError(KernelError):
    pass


class WitnessRequiredError(KernelError):
    """An existential rule was applied with neither a witness nor a candidate pool."""


class SideConditionError(KernelError):
    """Second-degree premises of the wrong arity or shape."""


class LemmaDbError(KernelError):
    pass


class NDProofError(KernelError):
    pass


class CompilationDefect(KernelError):
    """The ND compiler produced a derivation the checker rejects."""


class SoundnessViolation(KernelError):
    """A consequence failed semantic certification during enumeration."""
