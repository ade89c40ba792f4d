"""End-to-end checks of the plotting scripts (secondary component).

The scripts consume only the documented CSV schemas, so they are driven
here through real `reproduce` outputs and checked against the simulator's
own stats and JSON summaries. The rest of the suite runs without this
module (it skips when matplotlib or the scripts are absent).
"""

import importlib.util
import json
import subprocess
import sys
from pathlib import Path

import pytest

pytest.importorskip("matplotlib")

from mmwave_discovery.figures import reproduce
from mmwave_discovery.stats import empirical_cdf

SCRIPTS_DIR = Path(__file__).resolve().parents[1] / "scripts"
PLOT_CDF = SCRIPTS_DIR / "plot_cdf.py"
PLOT_MEANS = SCRIPTS_DIR / "plot_mean_curves.py"

pytestmark = pytest.mark.skipif(
    not (PLOT_CDF.exists() and PLOT_MEANS.exists()), reason="plot scripts not present"
)


def _load_module(path: Path):
    spec = importlib.util.spec_from_file_location(path.stem, path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def _run_script(script: Path, *args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, str(script), *args], capture_output=True, text=True
    )


@pytest.fixture(scope="module")
def fig3_outputs(tmp_path_factory):
    out = tmp_path_factory.mktemp("repro")
    reproduce("fig3", out, seed=5, users=25)
    return out / "fig3"


@pytest.fixture(scope="module")
def fig5a_outputs(tmp_path_factory):
    out = tmp_path_factory.mktemp("repro5a")
    reproduce("fig5a", out, seed=5, users=10)
    return out / "fig5a"


def test_plot_cdf_renders_five_labeled_curves(fig3_outputs, tmp_path):
    inputs = sorted(fig3_outputs.glob("*.csv"))
    assert len(inputs) == 5
    out = tmp_path / "fig3.png"
    args = []
    for path in inputs:
        args += ["--in", str(path)]
    result = _run_script(PLOT_CDF, *args, "--out", str(out))
    assert result.returncode == 0, result.stderr
    assert out.exists() and out.stat().st_size > 0


def test_plot_cdf_values_match_stats_module(fig3_outputs):
    plot_cdf = _load_module(PLOT_CDF)
    for path in fig3_outputs.glob("*.csv"):
        switches = plot_cdf.load_switches(path)
        script_steps = plot_cdf.cdf_steps(switches)
        reference = empirical_cdf(switches)
        assert script_steps == reference.steps()
        for value, fraction in script_steps:
            assert fraction == pytest.approx(reference.evaluate(value), abs=1e-12)


def test_plot_cdf_degenerate_single_step(tmp_path):
    plot_cdf = _load_module(PLOT_CDF)
    csv_path = tmp_path / "degenerate.csv"
    rows = ["user_index,true_x,true_y,est_x,est_y,detected,switches"]
    rows += [f"{i},1.0,2.0,1.0,2.0,1,1" for i in range(4)]
    csv_path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    assert plot_cdf.cdf_steps(plot_cdf.load_switches(csv_path)) == [(1, 1.0)]
    out = tmp_path / "degenerate.png"
    result = _run_script(PLOT_CDF, "--in", str(csv_path), "--out", str(out))
    assert result.returncode == 0
    assert out.exists()


def test_plot_cdf_schema_mismatch_names_the_column(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("user_index,true_x,true_y,est_x,est_y,detected\n0,1,2,1,2,1\n", encoding="utf-8")
    result = _run_script(PLOT_CDF, "--in", str(bad), "--out", str(tmp_path / "x.png"))
    assert result.returncode == 1
    assert "switches" in result.stderr


def test_plot_mean_curves_renders_and_matches_summaries(fig5a_outputs, tmp_path):
    plot_means = _load_module(PLOT_MEANS)
    curves = sorted(fig5a_outputs.glob("*.curve.csv"))
    assert len(curves) == 6

    out = tmp_path / "fig5a.png"
    args = []
    for path in curves:
        args += ["--in", str(path)]
    result = _run_script(PLOT_MEANS, *args, "--out", str(out))
    assert result.returncode == 0, result.stderr
    assert out.exists() and out.stat().st_size > 0

    # the plotted means must equal the per-point JSON summaries exactly
    checked = 0
    for curve_path in curves:
        label = curve_path.name.replace(".curve.csv", "")
        axis, points = plot_means.load_curve(curve_path)
        assert axis == "location_error_scale"
        for value, mean, half in points:
            summary_path = fig5a_outputs / f"{label}__location_error_scale_{value:g}.summary.json"
            summary = json.loads(summary_path.read_text(encoding="utf-8"))
            assert mean == pytest.approx(summary["mean_switches"], abs=1e-9)
            if summary["ci_half_width"] is not None:
                assert half == pytest.approx(summary["ci_half_width"], abs=1e-9)
            checked += 1
    assert checked >= 30


def test_remaining_figure_families_render(tmp_path):
    plot_means = _load_module(PLOT_MEANS)
    out = tmp_path / "repro"
    for figure, axis in (("fig5b", "edp_sectors"), ("fig5c", "location_error_scale"), ("fig5d", "edp_sectors")):
        reproduce(figure, out, seed=5, users=6)
        fig_dir = out / figure
        curves = sorted(fig_dir.glob("*.curve.csv"))
        assert curves, f"{figure}: no curve CSVs written"
        args = []
        for path in curves:
            args += ["--in", str(path)]
        image = tmp_path / f"{figure}.png"
        result = _run_script(PLOT_MEANS, *args, "--out", str(image))
        assert result.returncode == 0, result.stderr
        assert image.exists() and image.stat().st_size > 0
        for path in curves:
            got_axis, _ = plot_means.load_curve(path)
            assert got_axis == axis


def test_plot_mean_curves_rejects_mismatched_axes(fig5a_outputs, tmp_path):
    sector_curve = tmp_path / "sectors.curve.csv"
    sector_curve.write_text(
        "axis,axis_value,mean_switches,ci_half_width,detected_count,unreachable_fraction\n"
        "edp_sectors,1.0,5.0,0.5,10,0.0\n",
        encoding="utf-8",
    )
    error_curve = next(iter(sorted(fig5a_outputs.glob("*.curve.csv"))))
    result = _run_script(
        PLOT_MEANS,
        "--in", str(error_curve),
        "--in", str(sector_curve),
        "--out", str(tmp_path / "x.png"),
    )
    assert result.returncode == 1
    assert "axes" in result.stderr or "axis" in result.stderr


def test_plot_mean_curves_schema_mismatch_names_columns(tmp_path):
    bad = tmp_path / "bad.curve.csv"
    bad.write_text("axis,axis_value,mean\nlocation_error_scale,0,3\n", encoding="utf-8")
    result = _run_script(PLOT_MEANS, "--in", str(bad), "--out", str(tmp_path / "x.png"))
    assert result.returncode == 1
    assert "mean_switches" in result.stderr
