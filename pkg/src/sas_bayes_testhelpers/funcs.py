"""Helper functions for tests.

.. module:: funcs
    :synopsis: Helper functions for tests.
"""

import shlex
from typing import Any

from sas_bayes_core import (
    Dataset,
    ModelKind,
    SphereConstants,
    make_q_grid,
    generate_dataset,
    params_from_mapping,
)

import _sas_bayes.main
from _sas_bayes import presets

__all__ = ["run_sas_bayes", "synthetic_dataset"]


def run_sas_bayes(cmd: str) -> Any:
    """Helper function to call :py:func:`_sas_bayes.main.run` with a
    command line string instead of a list of arguments.

    Args:
        cmd: The command line, without the program name.
    Returns:
        Whatever the command returns.
    """
    return _sas_bayes.main.run(shlex.split(cmd))


def synthetic_dataset(
    kind: ModelKind = ModelKind.MONODISPERSE,
    n_points: int = 50,
    seed: int = 0,
    **truth_overrides: float,
) -> Dataset:
    """Generate a dataset from the built-in truth and constants of a model
    kind, on a grid of ``n_points`` points over its default q-range.
    """
    document = presets.default_document(kind)
    truth = params_from_mapping(
        kind, {**document["truth"], **truth_overrides}
    )
    grid = document["grid"]
    return generate_dataset(
        kind,
        truth,
        SphereConstants(**document["constants"]),
        make_q_grid(grid["q_min"], grid["q_max"], n_points),
        seed,
    )
