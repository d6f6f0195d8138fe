"""Figure rendering from the harness/sweep CSV contracts.

Three figure kinds:

* ``regret_curve``   - cumulative regret per replicate from a checkpoints
                       CSV (replicate, round, cum_pseudo_regret, ...).
* ``alpha_scaling``  - final mean regret vs independence number from a sweep
                       summary CSV, with an optional c * x^e reference
                       overlay (default exponent 1/2).
* ``horizon_scaling``- final mean regret vs horizon from a sweep summary
                       CSV, same overlay machinery (default exponent 2/3).

Overlay coefficients, when not given, are least-squares fits of c in
y ~ c * x^e on the plotted points; they are annotations, never pass/fail
logic. Output format follows the file extension (png or svg).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("regret_curve", "alpha_scaling", "horizon_scaling")

DEFAULT_X = {"alpha_scaling": "environment.graphs.alpha", "horizon_scaling": "t"}
DEFAULT_EXPONENT = {"alpha_scaling": 0.5, "horizon_scaling": 2.0 / 3.0}

# fixed style so identical inputs give identical bytes
_RC = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 120,
    "savefig.dpi": 120,
    "font.size": 10,
    "svg.hashsalt": "regret-plots",
    "axes.grid": True,
    "grid.alpha": 0.3,
}


class MissingColumnError(KeyError):
    def __init__(self, column: str, path: str):
        super().__init__(f"column {column!r} not found in {path}")
        self.column = column


class NoDataError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    inputs: tuple[str, ...]
    kind: str
    output: str
    x_column: str | None = None
    overlay_exponent: float | None = None
    overlay_coefficient: float | None = None
    labels: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise NoDataError(f"unknown figure kind {self.kind!r}; expected {KINDS}")
        if not self.inputs:
            raise NoDataError("at least one input CSV is required")


def load_columns(path: str, required: tuple[str, ...]) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        for col in required:
            if col not in fields:
                raise MissingColumnError(col, path)
        rows = list(reader)
    if not rows:
        raise NoDataError(f"{path} contains no data rows")
    return {col: np.array([float(r[col]) for r in rows]) for col in required}


def fit_power_coefficient(x: np.ndarray, y: np.ndarray, exponent: float) -> float:
    """Least-squares c for y ~ c * x**exponent."""
    basis = x.astype(float) ** exponent
    return float((y * basis).sum() / (basis * basis).sum())


def _save(fig, output: str) -> None:
    kwargs = {}
    if output.endswith(".svg"):
        kwargs["metadata"] = {"Date": None}
    elif output.endswith(".png"):
        kwargs["metadata"] = {"Software": "regret-plots"}
    fig.savefig(output, **kwargs)
    plt.close(fig)


def _render_regret_curve(spec: FigureSpec):
    fig, ax = plt.subplots()
    for i, path in enumerate(spec.inputs):
        cols = load_columns(path, ("replicate", "round", "cum_pseudo_regret"))
        label_base = spec.labels[i] if i < len(spec.labels) else None
        for rep in np.unique(cols["replicate"]):
            mask = cols["replicate"] == rep
            order = np.argsort(cols["round"][mask], kind="stable")
            label = label_base if label_base else f"replicate {int(rep)}"
            ax.plot(cols["round"][mask][order],
                    cols["cum_pseudo_regret"][mask][order],
                    label=label)
            label_base = "_nolegend_" if label_base else label_base
    ax.set_xlabel("round")
    ax.set_ylabel("cumulative pseudo-regret")
    ax.set_title("regret over time")
    ax.legend(loc="upper left", fontsize=8)
    return fig


def _render_scaling(spec: FigureSpec):
    x_col = spec.x_column or DEFAULT_X[spec.kind]
    exponent = (spec.overlay_exponent if spec.overlay_exponent is not None
                else DEFAULT_EXPONENT[spec.kind])
    fig, ax = plt.subplots()
    for i, path in enumerate(spec.inputs):
        cols = load_columns(path, (x_col, "mean_regret", "se"))
        order = np.argsort(cols[x_col], kind="stable")
        x = cols[x_col][order]
        y = cols["mean_regret"][order]
        se = cols["se"][order]
        label = spec.labels[i] if i < len(spec.labels) else path.rsplit("/", 1)[-1]
        ax.errorbar(x, y, yerr=1.96 * se, marker="o", linestyle="-",
                    capsize=3, label=label)
        coeff = (spec.overlay_coefficient if spec.overlay_coefficient is not None
                 else fit_power_coefficient(x, y, exponent))
        grid = np.linspace(x.min(), x.max(), 64)
        ax.plot(grid, coeff * grid ** exponent, linestyle="--", linewidth=1,
                label=f"{coeff:.3g} * x^{exponent:.3g}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(x_col)
    ax.set_ylabel("final mean regret")
    ax.set_title(spec.kind.replace("_", " "))
    ax.legend(loc="upper left", fontsize=8)
    return fig


def plot(spec: FigureSpec) -> str:
    """Render the figure described by `spec`; returns the output path."""
    with plt.rc_context(_RC):
        if spec.kind == "regret_curve":
            fig = _render_regret_curve(spec)
        else:
            fig = _render_scaling(spec)
        _save(fig, spec.output)
    return spec.output
