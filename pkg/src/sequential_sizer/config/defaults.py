"""Default configuration values."""

# Simulation design: Y = 100 - 4 X1 + 3 X2 + 2 X3 + e
DEFAULT_BETA = (100.0, -4.0, 3.0, 2.0)
# (mean, variance) of each normal predictor
DEFAULT_PREDICTORS = ((50.0, 9.0), (200.0, 64.0), (100.0, 25.0))
# Error standard deviation; the n* column (40 at b=0.4, p=4) implies variance 4
DEFAULT_ERROR_SD = 2.0
DEFAULT_TAIL_GAMMA = 0.5

# Procedure settings used by the simulation tables
DEFAULT_RHO = 0.8
DEFAULT_K = 5
DEFAULT_M0 = 2
DEFAULT_B = 0.1
DEFAULT_REPLICATIONS = 10_000
DEFAULT_SEED = 20240101

# Procedure settings for archival real-data runs (two sellers per day)
REAL_DATA_RHO = 0.5
REAL_DATA_K = 2
REAL_DATA_M0 = 10
REAL_DATA_B = 0.01

# Numerics
ETA_TRUNCATION = 1e-15
ETA_MAX_TERMS = 1_000_000
GAMMA_TOLERANCE = 1e-14
GAMMA_MAX_ITERATIONS = 100_000
RANK_TOLERANCE = 1e-12

WORKERS_ENV = "SEQUENTIAL_SIZER_WORKERS"
