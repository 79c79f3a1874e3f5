from owenset.services.bmatching.duplication import (
    DuplicatedInstance,
    DuplicationRun,
    duplicate_reduction,
    duplication_run,
    leximin_via_duplication,
)
from owenset.services.bmatching.instance import BMatchingInstance
from owenset.services.bmatching.leximin import (
    TightComponent,
    always_tight_edges,
    balanced_components,
    dual_ranges,
    has_unique_dual,
    leximax_owen,
    leximin_owen,
    owen_problem,
)
from owenset.services.bmatching.matching import (
    check_owen_membership,
    coalition_value,
    induced_instance,
    owen_from_dual,
)
from owenset.services.bmatching.programs import (
    BMatchDual,
    BMatchingResult,
    dual_program,
    max_weight_bmatching,
    primal_program,
)

__all__ = [
    "BMatchDual",
    "BMatchingInstance",
    "BMatchingResult",
    "DuplicatedInstance",
    "DuplicationRun",
    "TightComponent",
    "always_tight_edges",
    "balanced_components",
    "check_owen_membership",
    "coalition_value",
    "dual_program",
    "dual_ranges",
    "duplicate_reduction",
    "duplication_run",
    "has_unique_dual",
    "induced_instance",
    "leximax_owen",
    "leximin_owen",
    "leximin_via_duplication",
    "max_weight_bmatching",
    "owen_from_dual",
    "owen_problem",
    "primal_program",
]
