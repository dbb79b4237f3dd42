DEFAULT_T_MAX = 10
DEFAULT_FW_ITERS = 100
TRIM_SCALE = 16.0 / 7.0
# Trunc level: TRUNC_SCALE * sqrt(m log d_max) * mu1 * |A_0|_F / sqrt(d*)
TRUNC_SCALE = 10.0
POISSON_SHIFT = 0.5
