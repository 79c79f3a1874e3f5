"""Package-wide constants."""

# Game kinds accepted in instance files
GAME_MAXFLOW = "maxflow"
GAME_BRANCHING = "branching"
GAME_MST = "mst"
GAME_BMATCHING = "bmatching"

GAME_KINDS = (GAME_MAXFLOW, GAME_BRANCHING, GAME_MST, GAME_BMATCHING)

# Solution methods selectable from the command line
METHOD_COMBINATORIAL = "combinatorial"
METHOD_LP = "lp"
METHOD_BOTH = "both"

METHODS = (METHOD_COMBINATORIAL, METHOD_LP, METHOD_BOTH)

# Process exit codes
EXIT_OK = 0
EXIT_NEGATIVE = 1  # "No" verdicts and core violations
EXIT_USAGE = 2  # usage, parse and validation errors

# Prefix that selects a built-in instance instead of a file path
FIXTURE_PREFIX = "fixture:"
