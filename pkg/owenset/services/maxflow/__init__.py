from owenset.services.maxflow.instance import FlowDual, MaxFlowInstance
from owenset.services.maxflow.leximin import FlowLeximinRun, leximin_owen, leximin_owen_run
from owenset.services.maxflow.owen import (
    check_owen_membership,
    flow_dual_program,
    leximax_owen,
    leximin_owen_lp,
    optimal_dual,
    owen_from_dual,
    owen_problem,
)
from owenset.services.maxflow.structure import PQStructure, build_pq_structure

__all__ = [
    "FlowDual",
    "FlowLeximinRun",
    "MaxFlowInstance",
    "PQStructure",
    "build_pq_structure",
    "check_owen_membership",
    "flow_dual_program",
    "leximax_owen",
    "leximin_owen",
    "leximin_owen_lp",
    "leximin_owen_run",
    "optimal_dual",
    "owen_from_dual",
    "owen_problem",
]
