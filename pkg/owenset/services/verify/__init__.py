from owenset.services.verify.core import (
    CoreOk,
    CoreVerdict,
    CoreViolation,
    GameInstance,
    coalition_value,
    is_cost_game,
    verify_core,
)
from owenset.services.verify.generators import GeneratorParams, random_instance

__all__ = [
    "CoreOk",
    "CoreVerdict",
    "CoreViolation",
    "GameInstance",
    "GeneratorParams",
    "coalition_value",
    "is_cost_game",
    "random_instance",
    "verify_core",
]
