"""Exception hierarchy.

Library code raises these; only the command engine turns them into exit codes
(2 = usage / validation, 3 = resource bound).
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class Diagnostic:
    """One problem found while validating a term, spec or file."""

    severity: str  # "error" | "warning"
    message: str
    path: Tuple = ()
    line: Optional[int] = None
    column: Optional[int] = None

    def render(self) -> str:
        where = ""
        if self.line is not None:
            where = f"{self.line}:{self.column or 0}: "
        elif self.path:
            where = "/".join(str(p) for p in self.path) + ": "
        return f"{self.severity}: {where}{self.message}"


class AptcError(RuntimeError):
    exit_code = 2


class ValidationError(AptcError):
    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics: List[Diagnostic] = list(diagnostics)
        first = self.diagnostics[0].render() if self.diagnostics else "invalid input"
        more = len(self.diagnostics) - 1
        super().__init__(first + (f" (+{more} more)" if more > 0 else ""))


class SpecSyntaxError(AptcError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        loc = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{loc}{message}")


class UnknownVariableError(AptcError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown recursion variable '{name}'")


class UnknownEntryError(AptcError):
    pass


class GuardednessError(AptcError):
    def __init__(self, cycle: Sequence[str]):
        self.cycle = list(cycle)
        super().__init__("unguarded recursion: " + " -> ".join(self.cycle))


class StateTableError(AptcError):
    pass


class LtsFormatError(AptcError):
    pass


class ResourceError(AptcError):
    exit_code = 3


class StateBoundError(ResourceError):
    def __init__(self, bound: int, frontier: int):
        self.bound = bound
        self.frontier = frontier
        super().__init__(f"state bound {bound} exceeded (frontier size {frontier})")


class FuelExhaustedError(ResourceError):
    def __init__(self, fuel: int):
        self.fuel = fuel
        super().__init__(f"rewrite fuel {fuel} exhausted")


class SizeCapError(ResourceError):
    pass
