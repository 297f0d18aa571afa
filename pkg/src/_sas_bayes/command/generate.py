"""Top-level command for synthesizing datasets.

.. module:: generate
    :synopsis: Synthesize Poisson-noised datasets into a run directory.
"""

import pathlib

from sas_bayes_core import (
    Dataset,
    count_nonzero,
    echo,
    generate_dataset,
    log,
    seed_for_nonzero_count,
    serialize,
)

from _sas_bayes import constants, fileutil, hash
from _sas_bayes.config import RunConfig

__all__ = ["generate"]


def generate(config: RunConfig, out_dir: pathlib.Path) -> Dataset:
    """Generate a dataset from the true parameters of ``config`` and write
    it, its provenance sidecar and the configuration echo into ``out_dir``.

    If the configuration has a non-zero target, the data seed is replaced
    by the first seed from the configured one upwards that yields exactly
    that many non-zero points, and the echo records the seed found.

    Args:
        config: A resolved configuration with true parameters.
        out_dir: The run directory.
    Returns:
        The generated dataset.
    """
    out_dir = pathlib.Path(out_dir)
    config.validate(need_truth=True)
    kind, truth = config.kind, config.truth
    sample_constants, grid = config.constants, config.grid
    quadrature = config.quadrature

    target = config.nonzero_target
    if target is not None:
        seed = seed_for_nonzero_count(
            kind,
            truth,
            sample_constants,
            grid,
            target,
            start_seed=config.data_seed,
            quadrature=quadrature,
        )
        config = config.with_overrides({"seeds": {"data": seed}})

    with log.timed(f"generating {kind} dataset"):
        dataset = generate_dataset(
            kind, truth, sample_constants, grid, config.data_seed, quadrature
        )

    with fileutil.run_directory(out_dir):
        written = serialize.write_dataset(
            dataset, out_dir / constants.DATASET_FILE
        )
        written.append(config.write(out_dir / constants.CONFIG_FILE))
        hash.write_manifest(out_dir, written)

    echo(
        f"wrote {len(dataset)} points ({count_nonzero(dataset)} non-zero, "
        f"data seed {config.data_seed}) to "
        f"{out_dir / constants.DATASET_FILE}"
    )
    return dataset
