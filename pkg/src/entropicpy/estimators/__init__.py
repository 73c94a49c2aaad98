from entropicpy.estimators.config import DerivativeMethod, EstimatorConfig
from entropicpy.estimators.derivatives import estimate_derivative
from entropicpy.estimators.mutual_information import (
    conditional_mutual_information,
    mutual_information,
)
from entropicpy.estimators.shuffle_test import (
    ToleranceEstimate,
    shuffle_tolerance,
)

__all__ = [
    "DerivativeMethod",
    "EstimatorConfig",
    "ToleranceEstimate",
    "conditional_mutual_information",
    "estimate_derivative",
    "mutual_information",
    "shuffle_tolerance",
]
