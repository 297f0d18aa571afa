"""Top-level command for sampling the posterior of a dataset.

.. module:: fit
    :synopsis: Run the replica-exchange sampler and report on the chains.
"""

import pathlib

import numpy as np

from sas_bayes_core import (
    Dataset,
    FitReport,
    echo,
    log,
    run_emc,
    serialize,
)
from sas_bayes_core import analysis

from _sas_bayes import constants, formatters, fileutil, hash
from _sas_bayes.command.report import write_report_files
from _sas_bayes.config import RunConfig

__all__ = ["fit"]


def fit(
    dataset: Dataset,
    config: RunConfig,
    out_dir: pathlib.Path,
    threads: int = 1,
    bins: int = analysis.DEFAULT_BINS,
    svg: bool = False,
) -> FitReport:
    """Sample the posterior of ``dataset`` and write the chains and the
    report into ``out_dir``.

    The dataset and the configuration echo are copied into the run
    directory first, so the directory alone suffices to regenerate the
    report or to repeat the run.

    Args:
        dataset: The measurements.
        config: A resolved configuration.
        out_dir: The run directory.
        threads: Worker threads for the replica updates.
        bins: Number of histogram bins.
        svg: Also write SVG plots.
    Returns:
        The report of the run.
    """
    out_dir = pathlib.Path(out_dir)
    config.validate()
    _check_provenance(dataset, config)
    sampler_config = config.sampler_config()

    with fileutil.run_directory(out_dir):
        written = serialize.write_dataset(
            dataset, out_dir / constants.DATASET_FILE
        )
        written.append(config.write(out_dir / constants.CONFIG_FILE))

        samples = run_emc(
            config.kind,
            dataset,
            config.prior,
            config.constants,
            sampler_config,
            quadrature=config.quadrature,
            threads=threads,
            show_progress=True,
        )
        written.extend(serialize.write_samples(samples, out_dir))

        report, report_files = write_report_files(out_dir, bins, svg)
        written.extend(report_files)
        hash.write_manifest(out_dir, written)

    echo(formatters.format_report(report))
    return report


def _check_provenance(dataset: Dataset, config: RunConfig) -> None:
    provenance = dataset.provenance
    if provenance is None:
        return
    if provenance.kind is not config.kind:
        log.warning(
            f"dataset was generated by the {provenance.kind} model, fitting "
            f"the {config.kind} model"
        )
        return
    configured = config.constants.asdict()
    generated = provenance.constants.asdict()
    if not np.allclose(
        [configured[key] for key in generated], list(generated.values())
    ):
        log.warning(
            "configured sample constants differ from the ones the dataset "
            "was generated with"
        )
