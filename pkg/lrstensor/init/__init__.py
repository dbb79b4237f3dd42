from .config import InitConfig
from .frank_wolfe import frank_wolfe_nuclear, linear_oracle, nuclear_norm
from .hooi import hooi
from .initializers import init_binary, init_poisson, init_rpca, initialize

__all__ = [
    "InitConfig",
    "frank_wolfe_nuclear",
    "hooi",
    "init_binary",
    "init_poisson",
    "init_rpca",
    "initialize",
    "linear_oracle",
    "nuclear_norm",
]
