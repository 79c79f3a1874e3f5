from owenset.services.leximin.engine import (
    Agent,
    LeximinProblem,
    LeximinResult,
    LeximinRound,
    LpRoundSolver,
    RoundOutcome,
    RoundSolver,
    fix_iteratively,
    leximax,
    leximin,
)
from owenset.services.leximin.verification import (
    Dominated,
    NotDominated,
    dominates,
    verify_leximin,
)

__all__ = [
    "Agent",
    "Dominated",
    "LeximinProblem",
    "LeximinResult",
    "LeximinRound",
    "LpRoundSolver",
    "NotDominated",
    "RoundOutcome",
    "RoundSolver",
    "dominates",
    "fix_iteratively",
    "leximax",
    "leximin",
    "verify_leximin",
]
