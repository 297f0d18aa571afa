"""Static SVG plots of a fit.

Figures are built with the object-oriented matplotlib API, so no pyplot
state or interactive backend is involved. Zero-count points cannot be drawn
on a log scale and are left out of every plot; they still count in the fit.

.. module:: plots
    :synopsis: SVG plots of data, fitted curves, histograms and residuals.
"""

import pathlib
from typing import List

import matplotlib as mpl
from matplotlib.figure import Figure

from sas_bayes_core.analysis import FitReport
from sas_bayes_core.datagen import Dataset

__all__ = ["plot_fit", "plot_histograms", "plot_residuals", "write_plots"]

_SVG_PARAMS = {
    "svg.hashsalt": "sas-bayes",
    "svg.fonttype": "none",
    "font.size": 9,
}


def _save(figure: Figure, path: pathlib.Path) -> pathlib.Path:
    # no date and a fixed salt keep the SVG bytes reproducible
    with mpl.rc_context(_SVG_PARAMS):
        figure.savefig(
            path, format="svg", bbox_inches="tight", metadata={"Date": None}
        )
    return path


def plot_fit(
    dataset: Dataset, report: FitReport, path: pathlib.Path
) -> pathlib.Path:
    """Data, true curve and MAP curve on log-log axes."""
    figure = Figure(figsize=(5.0, 3.8))
    ax = figure.add_subplot()
    mask = dataset.nonzero
    ax.plot(
        dataset.q[mask],
        dataset.y[mask],
        ".",
        color="0.5",
        markersize=3,
        label="data",
    )
    if report.truth_curve is not None:
        ax.plot(
            report.truth_curve.q,
            report.truth_curve.intensity,
            "-",
            color="black",
            linewidth=1,
            label="true",
        )
    ax.plot(
        report.curve.q,
        report.curve.intensity,
        "--",
        color="tab:red",
        linewidth=1,
        label="MAP",
    )
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(r"$q$ (nm$^{-1}$)")
    ax.set_ylabel("counts")
    ax.legend(frameon=False)
    return _save(figure, path)


def plot_histograms(
    report: FitReport, out_dir: pathlib.Path
) -> List[pathlib.Path]:
    """One histogram per parameter, the truth marked when known. The
    histogram of t is drawn as t / t* when the truth is known.
    """
    names = report.samples.parameter_names
    truth = (
        dict(zip(names, report.truth.as_array()))
        if report.truth is not None
        else {}
    )
    written = []
    for name, histogram in report.histograms.items():
        figure = Figure(figsize=(3.6, 2.8))
        ax = figure.add_subplot()
        ax.stairs(histogram.counts, histogram.edges, fill=True, color="0.6")
        label = f"{name} / {name}*" if histogram.rescale else name
        if name in truth:
            marker = 1.0 if histogram.rescale else truth[name]
            ax.axvline(marker, color="black", linewidth=1)
        ax.set_xlabel(label)
        ax.set_ylabel("frequency")
        path = pathlib.Path(out_dir) / f"hist_{name}.svg"
        written.append(_save(figure, path))
    return written


def plot_residuals(report: FitReport, path: pathlib.Path) -> pathlib.Path:
    """Normalized residuals (y - I) / I against q."""
    figure = Figure(figsize=(5.0, 2.6))
    ax = figure.add_subplot()
    ax.plot(report.residuals.q, report.residuals.residuals, ".", markersize=3)
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xscale("log")
    ax.set_xlabel(r"$q$ (nm$^{-1}$)")
    ax.set_ylabel("normalized residual")
    return _save(figure, path)


def write_plots(
    dataset: Dataset, report: FitReport, out_dir: pathlib.Path
) -> List[pathlib.Path]:
    """Write every plot of a report into ``out_dir``.

    Returns:
        The written files.
    """
    out_dir = pathlib.Path(out_dir)
    written = [plot_fit(dataset, report, out_dir / "fit.svg")]
    written.extend(plot_histograms(report, out_dir))
    written.append(plot_residuals(report, out_dir / "residuals.svg"))
    return written
