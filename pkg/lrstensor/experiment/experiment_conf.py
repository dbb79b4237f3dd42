SPEC_KEYS = (
    "model",
    "dims",
    "rank",
    "alpha",
    "true_alpha",
    "gamma",
    "mu1",
    "beta",
    "k_pr",
    "zeta",
    "l_max",
    "rel_tol",
    "noise",
    "sigma",
    "df",
    "amp",
    "sparse_law",
    "sparse_linf",
    "linf",
    "lambda_min",
    "lambda_max",
    "link",
    "link_sigma",
    "intensity",
    "seeds",
    "solver",
    "t_max",
    "fw_iters",
    "delta_star",
    "escalate",
    "out",
)

T_HAT_FILE = "t_hat.lrst"
S_HAT_FILE = "s_hat.csv"
TRACE_FILE = "trace.csv"
SUMMARY_FILE = "summary.yaml"
BIC_FILE = "bic.csv"
COMPARE_FILE = "compare_seed{seed}.csv"
COMPARE_SUMMARY_FILE = "compare.yaml"
COMPARE_COLUMNS = ("solver", "iter", "rel_err", "step_ms")
BIC_SUMMARY_FILE = "bic.yaml"
