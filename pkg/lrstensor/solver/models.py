import csv
import io
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

from ..core import SparseTensor, TuckerTensor
from ..utils import atomic_write_text, format_float
from .config import SolverConfig, Termination
from .solver_conf import (
    DEFAULT_REL_TOL,
    DIVERGENCE_WINDOW,
    TRACE_COLUMNS,
    TRUTH_COLUMNS,
)


class IterationRecord(NamedTuple):
    iteration: int
    loss: float
    rel_change: Optional[float]
    zeta: Optional[float]
    supp_size: int
    rel_err_t: Optional[float] = None
    err_s: Optional[float] = None
    step_ms: Optional[float] = None


@dataclass
class SolverTrace:
    has_truth: bool = False
    records: List[IterationRecord] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def append(self, record):
        self.records.append(record)

    @property
    def losses(self):
        return [r.loss for r in self.records]

    @property
    def rel_errors(self):
        return [r.rel_err_t for r in self.records]

    @property
    def step_times(self):
        return [r.step_ms for r in self.records if r.step_ms is not None]

    def header(self):
        return TRACE_COLUMNS + (TRUTH_COLUMNS if self.has_truth else ())

    def rows(self):
        for r in self.records:
            row = [
                str(r.iteration),
                format_float(r.loss),
                format_float(r.rel_change),
                format_float(r.zeta),
                str(r.supp_size),
            ]
            if self.has_truth:
                row += [format_float(r.rel_err_t), format_float(r.err_s)]
            yield row

    def to_csv(self):
        """
        Trace as CSV text. Wall times are left out so that reruns produce
        identical files.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.header())
        writer.writerows(self.rows())
        return buffer.getvalue()

    def save_csv(self, path):
        atomic_write_text(path, self.to_csv())

    def loss_increased(self, window=DIVERGENCE_WINDOW):
        if len(self.records) <= window:
            return False
        return self.records[-1].loss > self.records[-1 - window].loss

    def loss_stalled(self, rel_tol, window=DIVERGENCE_WINDOW):
        """The loss fell by at most ``rel_tol`` (relative) over ``window`` steps."""
        if len(self.records) <= window:
            return False
        last, before = self.records[-1].loss, self.records[-1 - window].loss
        if not (math.isfinite(last) and math.isfinite(before)):
            return False
        return before - last <= rel_tol * abs(last)


@dataclass
class FitResult:
    t_hat: TuckerTensor
    s_hat: SparseTensor
    trace: SolverTrace
    terminated_by: Termination
    config: SolverConfig
    diagnostic: Optional[str] = None

    @property
    def iterations(self):
        return max(len(self.trace) - 1, 0)

    @property
    def converged(self):
        return self.terminated_by is Termination.TOLERANCE

    def diverging(self):
        """
        Non-convergence in the escalation sense: no tolerance stop and a loss
        that went up over the last iterations.
        """
        return not self.converged and self.trace.loss_increased()

    def needs_retry(self):
        """
        A numerical failure, or no tolerance stop with a loss that either went
        up or stalled over the last iterations. Escalation retries such fits
        with a larger ``mu1``.
        """
        if self.terminated_by is Termination.NUMERICAL_FAILURE:
            return True
        if self.converged or self.diverging():
            return not self.converged
        rel_tol = self.config.rel_tol if self.config is not None else DEFAULT_REL_TOL
        return self.trace.loss_stalled(rel_tol)


class BicCell(NamedTuple):
    rank: Tuple[int, ...]
    alpha: float
    bic: float
    converged: bool
    error: Optional[str] = None

    @property
    def failed(self):
        return self.error is not None


@dataclass
class BicScan:
    cells: List[BicCell]

    @property
    def best(self):
        scored = [c for c in self.cells if not c.failed and not math.isnan(c.bic)]
        if not scored:
            return None
        return min(scored, key=lambda c: c.bic)

    def to_csv(self):
        order = len(self.cells[0].rank) if self.cells else 0
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        header = [f"r{j + 1}" for j in range(order)]
        writer.writerow(header + ["alpha", "bic", "converged"])
        for cell in self.cells:
            status = "failed" if cell.failed else str(cell.converged).lower()
            writer.writerow(
                [*cell.rank, format_float(cell.alpha), format_float(cell.bic), status]
            )
        return buffer.getvalue()
