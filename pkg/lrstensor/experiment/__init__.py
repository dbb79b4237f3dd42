from .config import ExperimentSpec, parse_alpha_grid, parse_rank_grid
from .models import BicOutcome, CompareRun, FitOutcome
from .runners import (
    build_model,
    compare_seed,
    fit_instance,
    load_source,
    run_bic,
    run_compare,
    run_fit,
    run_synth,
)

__all__ = [
    "BicOutcome",
    "CompareRun",
    "ExperimentSpec",
    "FitOutcome",
    "build_model",
    "compare_seed",
    "fit_instance",
    "load_source",
    "parse_alpha_grid",
    "parse_rank_grid",
    "run_bic",
    "run_compare",
    "run_fit",
    "run_synth",
]
