"""
Solver settings.

Every value can be overridden from the environment (or a .env file). Library
code reads them as ``settings.NAME`` at call time.
"""
from environs import Env


env = Env()
env.read_env()

LOG_LEVEL = env.str("DCS_LOG_LEVEL", default="INFO")

# Float payoffs and weights are compared with this tolerance. Ints and
# Fractions are always compared exactly.
TOLERANCE = env.float("DCS_TOLERANCE", default=1e-9)


# BUDGETS
STRONG_NASH_BUDGET = env.int("DCS_STRONG_NASH_BUDGET", default=10**7)
ORDER_INDEPENDENT_CAP = env.int("DCS_ORDER_INDEPENDENT_CAP", default=22)
BRUTE_FORCE_MAX_PLAYERS = env.int("DCS_BRUTE_FORCE_MAX_PLAYERS", default=20)
BRUTE_FORCE_BUDGET = env.int("DCS_BRUTE_FORCE_BUDGET", default=2**21)
EXACT_BUDGET = env.int("DCS_EXACT_BUDGET", default=10**6)
ORDERING_BUDGET = env.int("DCS_ORDERING_BUDGET", default=40_320)
TREE_DEGREE_CAP = env.int("DCS_TREE_DEGREE_CAP", default=16)
EXACT_COVER_MAX = env.int("DCS_EXACT_COVER_MAX", default=20)
NASH_BUDGET = env.int("DCS_NASH_BUDGET", default=10**6)
CERTIFY_MAX_PLAYERS = env.int("DCS_CERTIFY_MAX_PLAYERS", default=12)
MONOTONE_CHECK_MAX_PLAYERS = env.int("DCS_MONOTONE_CHECK_MAX_PLAYERS", default=10)
TABLE_MAX_PROFILES = env.int("DCS_TABLE_MAX_PROFILES", default=10**6)


# INSTANCE FILES
FORMAT_VERSION = "1.0.0"
FORMAT_SUPPORTED_VERSION = "1.0.x"
GENERATOR_RECIPE = "1"
