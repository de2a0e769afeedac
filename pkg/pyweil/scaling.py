"""Package-wide defaults."""

__all__ = [
    "DEFAULT_PRECISION",
    "DEFAULT_TAIL_WINDOW",
    "DEFAULT_FGL_DEGREE",
    "DEFAULT_SAMPLE_COUNT",
    "DEFAULT_SEED",
    "PRECISION_WARNING_FRACTION",
    "DEFAULT_CHART_DEGREE",
    "DEFAULT_COCYCLE_LOSS",
]

# Significant base-p digits carried by a PadicNumber when none is requested.
DEFAULT_PRECISION = 20

# Number of top degrees inspected by convergence and Mahler decay certificates.
DEFAULT_TAIL_WINDOW = 5

# Total degree to which formal group laws are expanded by default.
DEFAULT_FGL_DEGREE = 6

DEFAULT_SAMPLE_COUNT = 100
DEFAULT_SEED = 20

# Additions that lose more than this fraction of their digits to cancellation emit a PrecisionWarning.
PRECISION_WARNING_FRACTION = 0.5

# Degree to which built-in chart transitions are expanded about a base point.
DEFAULT_CHART_DEGREE = 6

# Digits the triple-overlap cocycle check may lose to rounding.
DEFAULT_COCYCLE_LOSS = 4
