"""Output formatting functions for top-level commands.

.. module:: formatters
    :synopsis: Functions for pretty formatting of command line output.
"""

from typing import Iterable

import tabulate

from sas_bayes_core.analysis import FitReport, interval_table

from _sas_bayes.presets import Preset

_FLOAT_FORMAT = ".4g"


def format_presets(presets: Iterable[Preset]) -> str:
    """Table of the built-in presets."""
    headers = ["preset", "model", "t*", "q_min", "q_max", "N", "L", "base"]
    rows = [
        [
            p.name,
            str(p.kind),
            p.time,
            p.q_min,
            p.q_max,
            p.n_points,
            p.replicas,
            p.base,
        ]
        for p in presets
    ]
    return tabulate.tabulate(rows, headers=headers, floatfmt="g")


def format_report(report: FitReport) -> str:
    """MAP estimates with 99% credible intervals as ``MAP +p -q``, followed
    by the acceptance statistics of the run.
    """
    rows, headers = interval_table(report)
    level = next(iter(report.intervals.values())).level
    table = tabulate.tabulate(rows, headers=headers, floatfmt=_FLOAT_FORMAT)
    rates = report.samples.exchange_rates
    summary = (
        f"{level:.0%} credible intervals from {report.samples.n_samples} "
        f"samples, {report.n_nonzero} of {report.n_points} points non-zero\n"
        f"target acceptance rate {report.samples.acceptance_rates[-1]:.3f}, "
        f"exchange rates {rates.min():.3f} to {rates.max():.3f}"
    )
    return f"{table}\n\n{summary}"
