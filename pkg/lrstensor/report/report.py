import csv
from pathlib import Path

import yaml

from .. import __version__
from ..errors import FormatError
from ..experiment.experiment_conf import SUMMARY_FILE, TRACE_FILE
from ..utils import atomic_write_bytes
from .config import ReportConfig
from .report_conf import (
    LINE_HEIGHT,
    PARAMETER_KEYS,
    REPORT_FILE,
    TABLE_FONT_SIZE,
    TITLE,
)
from .xfpdf import xFPDF


def _read_result(directory):
    directory = Path(directory)
    try:
        summary = yaml.safe_load((directory / SUMMARY_FILE).read_text("utf-8"))
        with open(directory / TRACE_FILE, encoding="utf-8", newline="") as f:
            rows = list(csv.reader(f))
    except FileNotFoundError as e:
        raise FormatError(f"{directory} is not a fit result directory: {e}") from e
    if not isinstance(summary, dict) or not rows:
        raise FormatError(f"{directory}: empty summary or trace")
    return summary, rows[0], rows[1:]


def _short(cell):
    # repr floats are long; the table only needs a few digits
    try:
        value = float(cell)
    except ValueError:
        return cell
    return cell if cell.lstrip("-").isdigit() else f"{value:.6g}"


class FitReport(xFPDF):
    """
    Parameter block and convergence table of one fit result directory.
    """

    def __init__(self, result_dir, config=None):
        super().__init__("P", "mm", "A4")
        self.config = config or ReportConfig()
        self.summary, self.trace_header, self.rows = _read_result(result_dir)
        if self.config.max_rows:
            self.rows = self.rows[: self.config.max_rows]
        margins = self.config.margins
        self.set_margins(margins.left, margins.top, margins.right)
        self.set_auto_page_break(auto=True, margin=margins.bottom)
        self.set_title(TITLE)
        self.set_creator(f"lrstensor {__version__}")
        self.report_font = self.config.font_type.value
        self.add_page()
        self._draw_parameters()
        self._draw_trace()

    def footer(self):
        self.set_y(-self.config.margins.bottom)
        self.set_font(self.report_font, "I", 7)
        self.cell(0, 4, f"page {self.page_no()}/{{nb}}", align="R")

    def _draw_parameters(self):
        self.set_font(self.report_font, "B", 12)
        self.cell(0, 8, TITLE, new_x="LMARGIN", new_y="NEXT")
        self.set_font(self.report_font, "", 9)
        for key in PARAMETER_KEYS:
            if key in self.summary and self.summary[key] is not None:
                self.key_value(key, self.summary[key], 35, LINE_HEIGHT)
        for message in self.summary.get("warnings") or []:
            self.set_font(style="I")
            self.multi_cell(0, LINE_HEIGHT, f"warning: {message}")
        self.ln(LINE_HEIGHT)

    def _draw_trace(self):
        self.set_font(self.report_font, "", TABLE_FONT_SIZE)
        with self.table(line_height=LINE_HEIGHT - 1, text_align="RIGHT") as table:
            table.row(self.trace_header)
            for row in self.rows:
                table.row([_short(cell) for cell in row])


def render_report(result_dir, out=None, config=None):
    """Write the PDF report of ``result_dir``; returns the output path."""
    result_dir = Path(result_dir)
    out = Path(out) if out is not None else result_dir / REPORT_FILE
    report = FitReport(result_dir, config)
    atomic_write_bytes(out, bytes(report.output()))
    return out
