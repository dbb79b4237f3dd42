# singular values of a core unfolding below PINV_RTOL * largest count as zero
PINV_RTOL = 1e-12
GAUGE_TOL = 1e-9
NO_TRIM = float("inf")
