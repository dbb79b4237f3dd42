import pytest
import yaml

from lrstensor.errors import FormatError
from lrstensor.experiment import ExperimentSpec, run_fit, run_synth
from lrstensor.report import FontType, Margins, ReportConfig, render_report


@pytest.fixture
def fit_dir(tmp_path):
    spec = ExperimentSpec.from_mapping(
        {"dims": [8, 8, 8], "rank": 2, "alpha": 0.05, "l_max": 5, "seeds": [3]}
    )
    run_synth(spec, 3, tmp_path / "instance")
    run_fit(spec, tmp_path / "instance", tmp_path / "fit")
    return tmp_path / "fit"


def test_report_default_location(fit_dir):
    path = render_report(fit_dir)
    assert path == fit_dir / "report.pdf"
    assert path.read_bytes().startswith(b"%PDF")


@pytest.mark.parametrize("font_type", list(FontType))
def test_report_config(fit_dir, tmp_path, font_type):
    config = ReportConfig(
        margins=Margins(top=15, right=15, bottom=15, left=15),
        font_type=font_type,
        max_rows=2,
    )
    path = render_report(fit_dir, tmp_path / "short.pdf", config)
    assert path.read_bytes().startswith(b"%PDF")


def test_report_shows_warnings(fit_dir):
    summary_path = fit_dir / "summary.yaml"
    summary = yaml.safe_load(summary_path.read_text("utf-8"))
    summary["warnings"] = ["beta=0.5 outside the admissible window [0.005, 0.36]"]
    summary_path.write_text(yaml.safe_dump(summary), encoding="utf-8")
    assert render_report(fit_dir).read_bytes().startswith(b"%PDF")


def test_report_needs_summary_and_trace(tmp_path):
    with pytest.raises(FormatError):
        render_report(tmp_path)
