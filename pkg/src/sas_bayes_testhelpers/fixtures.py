"""Fixtures for use with pytest."""

import pathlib

import pytest

from sas_bayes_core import Dataset, ModelKind

from sas_bayes_testhelpers import funcs


@pytest.fixture
def mono_dataset() -> Dataset:
    """A 50-point monodisperse dataset with the built-in true parameters
    (R = 10, b = 0.01, t = 10).
    """
    return funcs.synthetic_dataset(ModelKind.MONODISPERSE, n_points=50)


@pytest.fixture
def poly_dataset() -> Dataset:
    """A 42-point polydisperse dataset with the built-in true parameters
    (R = 10, sigma = 2, b = 0.001, t = 100).
    """
    return funcs.synthetic_dataset(ModelKind.POLYDISPERSE, n_points=42)


@pytest.fixture
def isolated_log_dir(tmp_path, monkeypatch) -> pathlib.Path:
    """Redirect the log file of the CLI into a temporary directory."""
    log_dir = tmp_path / "logs"
    monkeypatch.setattr("_sas_bayes.constants.LOG_DIR", log_dir)
    return log_dir
