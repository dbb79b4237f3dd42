# standard normals are clipped at +-GEN_CLIP before the HOSVD
GEN_CLIP = 2.0
MAX_POISSON_MEAN = 1e12
SPECTRUM_SWEEPS = 200
SPECTRUM_RTOL = 1e-3
# truths stay below SPIKINESS_SLACK * mu1 unless another bound is given
SPIKINESS_SLACK = 0.9
FLATTEN_SWEEPS = 500
# a factor is flat once its largest row norm is within FLAT_RTOL of sqrt(r / d)
FLAT_RTOL = 1.02

OBSERVATION_FILE = "observation.lrst"
TRUTH_T_FILE = "truth_T.lrst"
TRUTH_S_FILE = "truth_S.csv"
META_FILE = "meta.yaml"
