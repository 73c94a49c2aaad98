from entropicpy.bench.generators import (
    exact_derivatives,
    simulate,
    system_from_metadata,
)
from entropicpy.bench.scoring import (
    DimensionScore,
    SupportScore,
    score_support_recovery,
)
from entropicpy.bench.systems import (
    SystemName,
    SystemSpec,
    default_initial_condition,
    library_size_report,
    system_function,
    truth_matrix,
    truth_polynomials,
)

__all__ = [
    "DimensionScore",
    "SupportScore",
    "SystemName",
    "SystemSpec",
    "default_initial_condition",
    "exact_derivatives",
    "library_size_report",
    "score_support_recovery",
    "simulate",
    "system_from_metadata",
    "system_function",
    "truth_matrix",
    "truth_polynomials",
]
