from owenset.services.common.types import (
    GameKind,
    Imputation,
    OwenVerdict,
    as_fraction,
    require_imputation,
)

__all__ = ["GameKind", "Imputation", "OwenVerdict", "as_fraction", "require_imputation"]
