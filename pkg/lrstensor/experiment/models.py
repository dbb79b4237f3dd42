from pathlib import Path
from typing import Dict, NamedTuple, Optional

from ..core import SparseTensor
from ..solver import BicScan, FitResult


class FitOutcome(NamedTuple):
    fit: FitResult
    s_hat: SparseTensor
    retries: int
    directory: Optional[Path] = None

    @property
    def exit_code(self):
        return self.fit.terminated_by.exit_code


class BicOutcome(NamedTuple):
    scan: BicScan
    directory: Optional[Path] = None


class CompareRun(NamedTuple):
    seed: int
    observation_sha256: str
    fits: Dict[str, FitResult]

    def rows(self):
        """``(solver, iter, rel_err, step_ms)`` for every recorded iteration."""
        for name, fit in self.fits.items():
            for record in fit.trace.records:
                yield name, record.iteration, record.rel_err_t, record.step_ms
