"""Figure rendering: determinism, overlay fits, CSV contract errors."""

import math
import os

import numpy as np
import pytest

from regretplots import FigureSpec, MissingColumnError, NoDataError, plot
from regretplots.cli import main as cli_main
from regretplots.figures import fit_power_coefficient, load_columns

REPO_RESULTS = os.path.join(
    os.path.dirname(__file__), "..", "..", "results", "acceptance"
)


def write_csv(path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(str(v) for v in row) + "\n")
    return str(path)


@pytest.fixture
def checkpoints_csv(tmp_path):
    rows = []
    for rep in range(2):
        cum = 0.0
        for rnd in (100, 200, 300, 400):
            cum += 3.0 + rep  # nondecreasing by construction
            rows.append((rep, rnd, cum, cum + 0.5))
    return write_csv(tmp_path / "checkpoints.csv",
                     ("replicate", "round", "cum_pseudo_regret", "cum_realized_regret"),
                     rows)


@pytest.fixture
def alpha_csv(tmp_path):
    rows = [(a, 100.0 * math.sqrt(a), 5.0) for a in (1, 2, 4, 8)]
    return write_csv(tmp_path / "summary.csv",
                     ("environment.graphs.alpha", "mean_regret", "se"), rows)


@pytest.fixture
def horizon_csv(tmp_path):
    rows = [(t, 2.0 * t ** (2 / 3), 7.0) for t in (10_000, 80_000)]
    return write_csv(tmp_path / "summary.csv", ("t", "mean_regret", "se"), rows)


class TestLoading:
    def test_missing_column_named(self, tmp_path):
        path = write_csv(tmp_path / "bad.csv", ("a", "b"), [(1, 2)])
        with pytest.raises(MissingColumnError) as err:
            load_columns(path, ("a", "mean_regret"))
        assert "mean_regret" in str(err.value)

    def test_empty_data(self, tmp_path):
        path = write_csv(tmp_path / "empty.csv", ("mean_regret", "se"), [])
        with pytest.raises(NoDataError):
            load_columns(path, ("mean_regret", "se"))


class TestFit:
    def test_exact_power_law_recovered(self):
        x = np.array([1.0, 2.0, 4.0, 8.0])
        y = 12.5 * np.sqrt(x)
        assert fit_power_coefficient(x, y, 0.5) == pytest.approx(12.5)

    def test_least_squares_formula(self):
        x = np.array([1.0, 4.0])
        y = np.array([3.0, 5.0])
        basis = x ** 0.5
        expect = (y * basis).sum() / (basis * basis).sum()
        assert fit_power_coefficient(x, y, 0.5) == pytest.approx(expect)


class TestRendering:
    def test_regret_curve_renders(self, checkpoints_csv, tmp_path):
        out = str(tmp_path / "curve.png")
        assert plot(FigureSpec((checkpoints_csv,), "regret_curve", out)) == out
        assert os.path.getsize(out) > 0

    def test_alpha_scaling_with_overlay(self, alpha_csv, tmp_path):
        out = str(tmp_path / "alpha.png")
        plot(FigureSpec((alpha_csv,), "alpha_scaling", out))
        assert os.path.getsize(out) > 0

    def test_horizon_scaling(self, horizon_csv, tmp_path):
        out = str(tmp_path / "horizon.svg")
        plot(FigureSpec((horizon_csv,), "horizon_scaling", out))
        assert os.path.getsize(out) > 0

    def test_unknown_kind_rejected(self, alpha_csv, tmp_path):
        with pytest.raises(NoDataError):
            FigureSpec((alpha_csv,), "pie", str(tmp_path / "x.png"))


class TestDeterminism:
    @pytest.mark.parametrize("ext", ["png", "svg"])
    def test_scaling_byte_identical(self, alpha_csv, tmp_path, ext):
        a, b = str(tmp_path / f"a.{ext}"), str(tmp_path / f"b.{ext}")
        plot(FigureSpec((alpha_csv,), "alpha_scaling", a))
        plot(FigureSpec((alpha_csv,), "alpha_scaling", b))
        assert open(a, "rb").read() == open(b, "rb").read()

    def test_curve_byte_identical(self, checkpoints_csv, tmp_path):
        a, b = str(tmp_path / "a.png"), str(tmp_path / "b.png")
        plot(FigureSpec((checkpoints_csv,), "regret_curve", a))
        plot(FigureSpec((checkpoints_csv,), "regret_curve", b))
        assert open(a, "rb").read() == open(b, "rb").read()


class TestCli:
    def test_happy_path(self, alpha_csv, tmp_path, capsys):
        out = str(tmp_path / "fig.png")
        assert cli_main(["--kind", "alpha_scaling", "--input", alpha_csv,
                         "--out", out, "--overlay-exponent", "0.5"]) == 0
        assert capsys.readouterr().out.strip() == out

    def test_missing_column_exit_2(self, tmp_path, capsys):
        bad = write_csv(tmp_path / "bad.csv",
                        ("environment.graphs.alpha", "se"), [(1, 2)])
        code = cli_main(["--kind", "alpha_scaling", "--input", bad,
                         "--out", str(tmp_path / "f.png")])
        assert code == 2
        assert "mean_regret" in capsys.readouterr().err


class TestAcceptanceCriterion9:
    """Regenerate the scaling figures from the real acceptance sweep CSVs."""

    def _regenerate_twice(self, csv_path, kind, x_column, tmp_path):
        a, b = str(tmp_path / "a.png"), str(tmp_path / "b.png")
        plot(FigureSpec((csv_path,), kind, a, x_column=x_column))
        plot(FigureSpec((csv_path,), kind, b, x_column=x_column))
        identical = open(a, "rb").read() == open(b, "rb").read()
        print(f"[criterion 9] {'PASS' if identical else 'FAIL'}: "
              f"{kind} from {os.path.basename(csv_path)} byte-deterministic")
        assert identical

    def test_alpha_scaling_figure(self, tmp_path):
        path = os.path.join(REPO_RESULTS, "c2_alpha_sweep", "summary.csv")
        if not os.path.exists(path):
            pytest.skip("run the primary acceptance suite first to produce the sweep CSV")
        self._regenerate_twice(path, "alpha_scaling", None, tmp_path)

    def test_horizon_scaling_figures(self, tmp_path):
        for tag in ("c6_horizon_explore", "c6_horizon_elimination"):
            path = os.path.join(REPO_RESULTS, tag, "summary.csv")
            if not os.path.exists(path):
                pytest.skip("run the primary acceptance suite first to produce the sweep CSV")
            self._regenerate_twice(path, "horizon_scaling", "t", tmp_path)
