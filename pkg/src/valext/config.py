"""Tunable limits for desk-scale exact computation.

All limits are deliberate scope caps, not heuristics: within them every
answer is exact, beyond them operations raise CapabilityError rather than
guess.
"""

# Highest rank of a value group / monomial valuation.
MAX_RANK = 3

# Highest number of transcendental steps in one field tower.
MAX_TRANSCENDENTALS = 4

# Univariate factorization degree bound.
FACTOR_DEGREE_BOUND = 12

# Upper bound on the exponent m tried when testing whether g^(p^m) lands in a
# subfield (radiciality tests).
RADICIAL_EXPONENT_BUDGET = 8

# Default seed for every randomized routine (equal-degree splitting, sampled
# property checks).  All randomness in the package flows from one seed.
DEFAULT_SEED = 0
