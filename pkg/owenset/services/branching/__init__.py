from owenset.services.branching.dual import (
    BranchingDualRound,
    CutViolation,
    DualCutSolution,
    check_owen_membership,
    enumerated_branching_dual,
    laminar_owen_share,
    owen_from_split,
    separation_oracle,
    solve_branching_dual,
    split_problem,
)
from owenset.services.branching.edmonds import (
    BranchingResult,
    coalition_cost,
    edmonds,
    min_cost_branching,
)
from owenset.services.branching.instance import BranchingInstance
from owenset.services.branching.leximin import (
    ContiguousRoundSolver,
    CutRoundSolver,
    leximax_owen,
    leximin_owen,
    leximin_owen_concise,
)

__all__ = [
    "BranchingDualRound",
    "BranchingInstance",
    "BranchingResult",
    "ContiguousRoundSolver",
    "CutRoundSolver",
    "CutViolation",
    "DualCutSolution",
    "check_owen_membership",
    "coalition_cost",
    "edmonds",
    "enumerated_branching_dual",
    "laminar_owen_share",
    "leximax_owen",
    "leximin_owen",
    "leximin_owen_concise",
    "min_cost_branching",
    "owen_from_split",
    "separation_oracle",
    "solve_branching_dual",
    "split_problem",
]
