"""Constants and defaults for the planar feedback-set toolkit."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

# Desk-scale guards. All of them can be overridden from the command line.
DEFAULT_GUARD_N = 30
DEFAULT_GUARD_NODES = 200_000
DEFAULT_GUARD_CYCLES = 5_000

# Brute-force oracles are exponential; keep them well below the solver guards.
BRUTE_FORCE_MAX_N = 14
BRUTE_FORCE_MAX_CYCLES = 20

# Smallest digirth for which the bound formulas are stated.
MIN_BOUND_GIRTH = 4

# τ(G) ≤ 3/2 · τ*(G) is the conjectured ratio for planar digraphs.
GW_RATIO = Fraction(3, 2)

# Record-stream schema. Bump when a field changes meaning.
SCHEMA_VERSION = 1

# Process exit codes.
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

FORMAT_TABLE = "table"
FORMAT_RECORDS = "records"

# Per-record outcome.
STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_ERROR = "error"
STATUS_SKIPPED = "skipped"

FAMILY_GRID = "grid"
FAMILY_CYLINDER_GRID = "cylinder-grid"
FAMILY_STACKED_CYCLES = "stacked-cycles"
FAMILY_RANDOM_PLANAR = "random-planar-filtered"
FAMILY_TOUCHING_CYCLES = "touching-cycles"
FAMILIES = (
    FAMILY_GRID,
    FAMILY_CYLINDER_GRID,
    FAMILY_STACKED_CYCLES,
    FAMILY_RANDOM_PLANAR,
    FAMILY_TOUCHING_CYCLES,
)

# Rejection sampling budget for the random family.
RANDOM_PLANAR_RETRIES = 50


@dataclass(frozen=True)
class Guards:
    """Limits the exact solvers stop at instead of running forever."""

    n: int = DEFAULT_GUARD_N
    nodes: int = DEFAULT_GUARD_NODES
    cycles: int = DEFAULT_GUARD_CYCLES

    def __post_init__(self) -> None:
        for name in ("n", "nodes", "cycles"):
            if getattr(self, name) <= 0:
                raise ValueError(f"guard {name} must be positive")
