import math

from entropicpy._typing import Value

# Default estimator knobs
DEFAULT_KNN_K = 2
DEFAULT_SHUFFLE_COUNT = 100
DEFAULT_ALPHA = 0.95
DEFAULT_RNG_SEED = 0
DEFAULT_JITTER_SCALE = 1e-10
DEFAULT_LOG_BASE = math.e
DEFAULT_N_JOBS = 1

# Default library degree
DEFAULT_DEGREE = 2

# Benchmark defaults
DEFAULT_NODE_COUNT = 10
DEFAULT_COUPLING = 0.1

# Targets with a standard deviation below this are treated as constant
DEGENERATE_TARGET_STD = Value(1e-12)

# Projections with a smaller relative residual reproduce the target exactly
EXACT_FIT_RTOL = Value(1e-10)

# Central difference targets are trusted up to this multiple of their
# estimated truncation error
TARGET_RESOLUTION_FACTOR = 2.0

# Largest library the platform is allowed to allocate (columns)
MAXIMUM_LIBRARY_COLUMNS = 2**31 - 1

# Model file format
MODEL_FORMAT_VERSION = 1

# Exit codes of the command line front end
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NUMERICAL = 4
EXIT_IO = 5

# Errors
NON_FINITE_ERROR = "{name} contains non-finite entries"
NOT_A_MATRIX_ERROR = "{name} must be a two dimensional array, got {ndim} dims"
EMPTY_MATRIX_ERROR = "{name} must not be empty"
RANK_TOL_ERROR = "rank_tol must be positive"
ROW_MISMATCH_ERROR = "{left} has {left_rows} rows but {right} has {right_rows}"
STATE_LENGTH_ERROR = "state has length {got}, expected {expected}"
NEGATIVE_DEGREE_ERROR = "max_degree must be non-negative"
DIMENSION_ERROR = "the number of state variables must be at least 1"
LIBRARY_CAPACITY_ERROR = (
    "the library would have {columns} columns, more than the supported {limit}"
)
VAR_NAMES_LENGTH_ERROR = "expected {expected} variable names, got {got}"
CUSTOM_LIBRARY_NAMES_ERROR = "every evaluator needs exactly one name"
CUSTOM_COLUMN_ERROR = "evaluator {name!r} returned {got} values for {rows} rows"
NOT_A_MONOMIAL_ERROR = "term {label!r} is not a monomial"
KNN_K_ERROR = "knn_k must be at least 1"
SHUFFLE_COUNT_ERROR = "shuffle_count must be at least 1"
ALPHA_ERROR = "alpha must be between 0 and 1"
JITTER_SCALE_ERROR = "jitter_scale must be non-negative"
LOG_BASE_ERROR = "log_base must be positive and different from 1"
N_JOBS_ERROR = "n_jobs must be at least 1"
TOO_FEW_SAMPLES_ERROR = "{samples} samples are not enough for knn_k={k}"
CENTRAL_DIFFERENCE_SAMPLES_ERROR = (
    "central differences need at least 3 observations, got {samples}"
)
MAP_MODE_SAMPLES_ERROR = "map mode needs at least 2 observations, got {samples}"
DT_ERROR = "dt must be positive for flows"
MISSING_DT_ERROR = "dt is required in flow mode unless derivatives are supplied"
MISSING_DERIVATIVES_ERROR = (
    "user supplied derivatives were requested but not given"
)
COEFFICIENT_COUNT_ERROR = (
    "coefficient estimator returned {got} values for {expected} columns"
)
SUPPORT_DUPLICATE_ERROR = "index {index} is already in the support"
SUPPORT_MISSING_ERROR = "index {index} is not in the support"
SUPPORT_RANGE_ERROR = (
    "index {index} is outside the library of {columns} columns"
)
UNKNOWN_SYSTEM_ERROR = "unknown system {name!r}, expected one of {known}"
SYSTEM_DIMENSION_ERROR = (
    "initial condition has length {got}, {name} needs {expected}"
)
SERIES_LENGTH_ERROR = "a time series needs at least 2 observations"
DIVERGENCE_ERROR = "trajectory became non-finite at step {step}"
NODE_COUNT_ERROR = "node_count must be at least 2"
ADJACENCY_ERROR = "adjacency entry {edge} refers to a node outside 0..{last}"
SCORE_SHAPE_ERROR = "model has coefficient shape {got}, truth has {expected}"
CSV_EMPTY_ERROR = "{file}: the file is empty"
CSV_ROW_ERROR = "{file}, line {line}: {reason}"
JSON_FIELD_ERROR = "{file}: missing field {field!r}"
MODEL_CONTENT_ERROR = "{file}: {reason}"
HORIZON_ERROR = "horizon must be non-negative"
FIT_PATHS_ERROR = "fit needs --input and --output, or --config"
BETA_SHAPE_ERROR = (
    "coefficients of shape {shape} do not match {terms} library terms"
)
TRUTH_DEGREE_ERROR = (
    "{name} needs a library of degree at least {needed}, got {degree}"
)
NOISE_ERROR = "noise_sd must be non-negative"
TRANSIENT_ERROR = "transient must be non-negative"
UNKNOWN_PARAMETER_ERROR = "{name} has no parameter {parameter!r}"
SYSTEM_METADATA_ERROR = "the time series carries no system description"

# Warnings
MAP_MODE_DT_WARNING = "dt is ignored in map mode"
RANK_DEFICIENT_WARNING = (
    "support matrix of dimension {dimension} is rank deficient, "
    "the minimum norm coefficients are reported"
)
