"""Exception hierarchy shared by every module.

Library code raises; only :mod:`src.pipeline` turns exceptions into
per-instance ``error`` / ``skipped`` records, and only :mod:`src.main` maps
outcomes to exit codes.
"""

from __future__ import annotations


class PlanarFvsError(Exception):
    """Root of every error raised by this package."""


class InvalidInstance(PlanarFvsError):
    """The arcs / rotation system do not describe a valid embedded digraph."""


class DanglingEnd(InvalidInstance):
    """An arc-end is missing from the rotation system, repeated, or misplaced."""


class EulerViolation(InvalidInstance):
    """Face tracing of the rotation system breaks Euler's formula (not planar)."""


class MultiArcViolation(InvalidInstance):
    """Two arcs share tail and head although the declared digirth is at least 4."""


class PdgParseError(InvalidInstance):
    """A ``.pdg`` document could not be parsed."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class GuardExceeded(PlanarFvsError):
    """A desk-scale guard (vertex count, branch nodes, cycle count) was passed."""

    def __init__(self, guard: str, limit: int) -> None:
        super().__init__(f"{guard} guard exceeded (limit {limit})")
        self.guard = guard
        self.limit = limit


class NotConnected(PlanarFvsError):
    """The operation needs a connected graph."""


class CrossingInput(PlanarFvsError):
    """A cycle family expected to be non-crossing contains a crossing pair."""


class DigirthViolation(PlanarFvsError):
    """The graph has a directed cycle shorter than its declared digirth."""


class PreconditionViolated(PlanarFvsError):
    """A verifier was called on input outside its hypotheses."""

    def __init__(self, hypothesis: str) -> None:
        super().__init__(f"precondition violated: {hypothesis}")
        self.hypothesis = hypothesis


class LYViolation(PlanarFvsError):
    """Minimum feedback arc set and maximum dicycle packing sizes differ."""


class UncrossingFailed(PlanarFvsError):
    """No non-crossing family of the requested cardinality was produced."""


class Undefined(PlanarFvsError):
    """The requested quantity is undefined for this instance (e.g. ratio with τ* = 0)."""


class UnsupportedGirth(PlanarFvsError):
    """Bound formulas only exist for digirth at least 4."""


class Infeasible(PlanarFvsError):
    """A generator spec cannot be realised."""


class RetriesExhausted(PlanarFvsError):
    """Rejection sampling gave up before producing an acceptable instance."""
