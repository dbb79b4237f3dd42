ORTHONORMAL_TOL = 1e-10

# Gram-matrix SVD route for short-fat unfoldings
GRAM_MAX_ROWS = 64
GRAM_MIN_ASPECT = 16

# relative cut for "numerically zero" singular values
RANK_TOL = 1e-12

LRST_MAGIC = b"LRST"
LRST_VERSION = 1
