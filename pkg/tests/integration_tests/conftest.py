"""Fixtures for the integration tests."""

import pathlib

import pytest

from sas_bayes_testhelpers import funcs


@pytest.fixture
def dataset_dir(tmp_path) -> pathlib.Path:
    """A generated mono-n11 dataset."""
    out = tmp_path / "data"
    funcs.run_sas_bayes(f"generate --preset mono-n11 --seed 3 --out {out}")
    return out


@pytest.fixture
def run_dir(tmp_path, dataset_dir) -> pathlib.Path:
    """A short fit of the mono-n11 dataset."""
    out = tmp_path / "run"
    funcs.run_sas_bayes(
        f"fit {dataset_dir / 'dataset.csv'} --preset mono-n11 "
        f"--burn-in 100 --sweeps 100 --out {out}"
    )
    return out
