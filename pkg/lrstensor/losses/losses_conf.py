# probabilities are kept inside [PROB_CLAMP, 1 - PROB_CLAMP] in quotients and
# in inverse links
PROB_CLAMP = 1e-12
# k_pr = max(BERNOULLI_K_PR, BERNOULLI_K_PR_SCALE * zeta): 1 while zeta is small
BERNOULLI_K_PR = 1.0
BERNOULLI_K_PR_SCALE = 3.0
# k_pr = POISSON_K_PR_SCALE * zeta
POISSON_K_PR_SCALE = 1.0
HALF_LOG_2PI = 0.9189385332046727
