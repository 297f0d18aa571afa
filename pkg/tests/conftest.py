"""Global test setup."""

import pytest

# registered as a pytest plugin when installed, imported here so the suite
# also runs from a source checkout
from sas_bayes_testhelpers.fixtures import (  # noqa: F401
    isolated_log_dir,
    mono_dataset,
    poly_dataset,
)


@pytest.fixture(autouse=True)
def _log_to_tmp_dir(isolated_log_dir):
    """Keep test runs out of the per-user log directory."""
    return isolated_log_dir
