"""Top-level command for regenerating the report of a fit.

The report of a fit is always computed from the chains as persisted on
disk, both by ``fit`` and by ``report``, so regenerating it reproduces the
original files exactly.

.. module:: report
    :synopsis: Recompute estimates and tables from persisted chains.
"""

import pathlib
from typing import List, Tuple

from sas_bayes_core import (
    FileError,
    FitReport,
    PoissonPosterior,
    fit_report,
    log,
    serialize,
)
from sas_bayes_core import analysis, plots

from _sas_bayes import constants, fileutil, hash
from _sas_bayes.config import RunConfig

__all__ = ["report", "write_report_files"]


def report(
    run_dir: pathlib.Path,
    bins: int = analysis.DEFAULT_BINS,
    svg: bool = False,
) -> FitReport:
    """Regenerate the report of a previous fit without resampling.

    Args:
        run_dir: Output directory of a fit.
        bins: Number of histogram bins.
        svg: Also write SVG plots.
    Returns:
        The recomputed report.
    Raises:
        :py:class:`~sas_bayes_core.exceptions.FileError` if the directory
        or any of the files of the fit are missing or malformed.
    """
    run_dir = pathlib.Path(run_dir)
    if not run_dir.is_dir():
        raise FileError(f"no run directory at {run_dir}", path=str(run_dir))
    with fileutil.run_directory(run_dir):
        fit, written = write_report_files(run_dir, bins=bins, svg=svg)
        hash.write_manifest(run_dir, written)
    return fit


def write_report_files(
    run_dir: pathlib.Path, bins: int, svg: bool
) -> Tuple[FitReport, List[pathlib.Path]]:
    """Read the dataset, configuration echo and chains of a run directory,
    compute the report and write its files. The caller must hold the lock
    of ``run_dir``.

    Returns:
        The report and the written files.
    """
    config = RunConfig.from_dict(
        serialize.load_json(run_dir / constants.CONFIG_FILE)
    )
    dataset = serialize.read_dataset(run_dir / constants.DATASET_FILE)
    samples = serialize.read_samples(run_dir)
    if samples.kind is not config.kind:
        raise FileError(
            f"chains are for the {samples.kind} model but the configuration "
            f"echo is for the {config.kind} model",
            path=str(run_dir),
        )
    posterior = PoissonPosterior(
        dataset, config.prior, config.constants, config.quadrature
    )

    with log.timed("computing report"):
        fit = fit_report(samples, posterior, bins=bins)
    written = serialize.write_report(fit, run_dir)
    if svg:
        written.extend(plots.write_plots(dataset, fit, run_dir))
    log.info(f"wrote report of {samples.n_samples} samples to {run_dir}")
    return fit, written
