from .bic import bic_scan, bic_score, bic_terms
from .config import SolverConfig, SolverKind, Termination
from .escalation import fit_with_escalation
from .iterations import pgd_lowrank, rgrad_lowrank, rgrad_sparse
from .models import BicCell, BicScan, FitResult, IterationRecord, SolverTrace

SOLVERS = {
    SolverKind.RGRAD_SPARSE: rgrad_sparse,
    SolverKind.RGRAD_LOWRANK: rgrad_lowrank,
    SolverKind.PGD: pgd_lowrank,
}

__all__ = [
    "SOLVERS",
    "BicCell",
    "BicScan",
    "FitResult",
    "IterationRecord",
    "SolverConfig",
    "SolverKind",
    "SolverTrace",
    "Termination",
    "bic_scan",
    "bic_score",
    "bic_terms",
    "fit_with_escalation",
    "pgd_lowrank",
    "rgrad_lowrank",
    "rgrad_sparse",
]
