"""Numerical tolerances and resource caps used across the package.

Every probability / spectral comparison in the library goes through one of
these named constants so that tolerances are auditable in a single place.
"""

# Probability-mass comparisons (table invariants).
MASS_ATOL = 1e-12

# Input tables whose total mass deviates from 1 by at most this much are
# renormalized; larger deviations are rejected.
MASS_NORMALIZE_ATOL = 1e-9

# Entries more negative than this are rejected; entries in [-NEG_ATOL, 0)
# are treated as roundoff and clipped to zero.
NEG_ATOL = 1e-15

# The top singular value of a normalized kernel must equal 1 this tightly,
# otherwise the joint (or the factorization) is considered broken.
TOP_SINGULAR_ATOL = 1e-8

# Generic tolerance for spectral quantities (second singular values,
# symmetry checks between two exact routes).
SPECTRAL_ATOL = 1e-10

# Slack used by monotone-ladder assertions.
LADDER_ATOL = 1e-9

# Default cap on the number of cells a constructed joint may occupy.
DEFAULT_CELL_CAP = 10**6

# Quadrature over piecewise-constant spectral densities.
QUAD_ATOL = 1e-10
QUAD_PANEL_BUDGET = 10**4

# Angles within this distance of a multiple of pi/2 are snapped onto the
# axis so that exactly-axial atoms are treated exactly.
ANGLE_SNAP_ATOL = 1e-12

# Measure-symmetry comparisons (atom weights, density levels).
SYMMETRY_ATOL = 1e-12
