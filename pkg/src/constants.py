DEFAULT_LOG_BASE = "2"

# Numerical tolerances
NORM_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-12
EIGENVALUE_FLOOR = -1e-10
PURITY_TOLERANCE = 1e-10
PROBABILITY_TOLERANCE = 1e-12
DISTRIBUTION_SUM_TOLERANCE = 1e-10
ZERO_MAGNITUDE = 1e-300
DEFAULT_VERIFY_TOLERANCE = 1e-10
INTEGER_SNAP_TOLERANCE = 1e-9
BOUND_SLACK = 1e-9

# Tightness optimizer defaults
DEFAULT_RESTARTS = 32
DEFAULT_MAX_ITERS = 2000
DEFAULT_STEP_INIT = 0.1
DEFAULT_CONVERGE_TOL = 1e-10
DEFAULT_MAX_DIM = 31
DEFAULT_PROCESSES = 1
FINITE_DIFFERENCE_STEP = 1e-6
MIN_LINE_SEARCH_STEP = 1e-16

# N = 1009 comparison chart
FIGURE_DIM = 1009
CHART_WIDTH = 720
CHART_HEIGHT = 480
CSV_FLOAT_FORMAT = "%.6g"
