from .decomposition import (
    check_rank,
    hosvd,
    hosvd_tucker,
    singular_values,
    truncated_svd,
    tucker_to_dense,
)
from .diagnostics import incoherence, spectral_summary, spikiness
from .io import (
    dumps_lrst,
    dumps_sparse_csv,
    load_lrst,
    load_sparse_csv,
    loads_lrst,
    loads_sparse_csv,
    save_lrst,
    save_sparse_csv,
)
from .models import SparseTensor, SpectralSummary, TuckerTensor
from .unfold import (
    as_dense,
    check_shape,
    matricize,
    mode_product,
    multi_mode_product,
    tensorize,
)

__all__ = [
    "SparseTensor",
    "SpectralSummary",
    "TuckerTensor",
    "as_dense",
    "check_rank",
    "check_shape",
    "dumps_lrst",
    "dumps_sparse_csv",
    "hosvd",
    "hosvd_tucker",
    "incoherence",
    "load_lrst",
    "load_sparse_csv",
    "loads_lrst",
    "loads_sparse_csv",
    "matricize",
    "mode_product",
    "multi_mode_product",
    "save_lrst",
    "save_sparse_csv",
    "singular_values",
    "spectral_summary",
    "spikiness",
    "tensorize",
    "truncated_svd",
    "tucker_to_dense",
]
