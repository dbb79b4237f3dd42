REPORT_FILE = "report.pdf"
TITLE = "LRSTensor fit report"
LINE_HEIGHT = 5
TABLE_FONT_SIZE = 7
PARAMETER_KEYS = (
    "spec_digest",
    "model",
    "solver",
    "rank",
    "alpha",
    "alpha_eff",
    "gamma",
    "beta",
    "mu1",
    "k_pr",
    "zeta",
    "terminated_by",
    "iterations",
    "retries",
    "support_size",
    "final_loss",
    "final_rel_err_t",
    "final_err_s",
)
