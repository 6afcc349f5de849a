"""
Exception types shared by every ramsey_lab module.
Negative mathematical answers are results, not errors; these are raised only
for malformed input, violated preconditions, or exhausted search budgets.
"""
from typing import Optional


class RamseyLabError(Exception):
    """Base class; `exit_code` is what the CLI returns for it."""
    exit_code = 2


class InvalidSpecError(RamseyLabError):
    """A graph, blowup spec or colouring violates its own invariants."""


class PreconditionError(RamseyLabError):
    """An operation was called outside its precondition."""


class ConfigError(RamseyLabError):
    """A run or experiment configuration is infeasible or malformed."""


class PipelineError(RamseyLabError):
    """The constructive pipeline produced an inconsistent state."""


class GraphFormatError(RamseyLabError):
    """Parser error carrying the 1-based line number of the offending line."""

    def __init__(self, message: str, line: Optional[int] = None, source: str = "<input>"):
        self.line = line
        self.source = source
        location = f"{source}:{line}" if line is not None else source
        super().__init__(f"{location}: {message}")


class InconclusiveError(RamseyLabError):
    """The search exceeded its node budget; never converted into a boolean."""
    exit_code = 3

    def __init__(self, message: str, nodes: int = 0):
        self.nodes = nodes
        super().__init__(message)


class DisjointnessViolation(RamseyLabError):
    """Stage one found two monochromatic triangles overlapping beyond the allowed pattern."""

    def __init__(self, certificate):
        self.certificate = certificate
        overlap = certificate.violation
        super().__init__(
            f"triangles {overlap.first} and {overlap.second} overlap in {list(overlap.shared)}: "
            f"{overlap.reason}"
        )
