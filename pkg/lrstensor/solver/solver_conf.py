DEFAULT_BETA = 0.3
# admissible step sizes of the gaussian model
BETA_WINDOW = (0.005, 0.36)
DEFAULT_GAMMA = 1.1
DEFAULT_L_MAX = 100
DEFAULT_REL_TOL = 1e-3
TRIM_SCALE = 16.0 / 7.0

ESCALATE_MU1 = 2.0
ESCALATE_GAMMA = 1.5
MAX_RETRIES = 4
DIVERGENCE_WINDOW = 10

TRACE_COLUMNS = ("iter", "loss", "rel_change", "zeta", "supp_size")
TRUTH_COLUMNS = ("rel_err_T", "err_S")
