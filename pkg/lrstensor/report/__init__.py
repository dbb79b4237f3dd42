from .config import FontType, Margins, ReportConfig
from .report import FitReport, render_report

__all__ = ["FitReport", "FontType", "Margins", "ReportConfig", "render_report"]
