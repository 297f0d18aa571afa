"""Helpers for testing sas-bayes: independent oracles for the likelihood
and the posterior, functions for running the CLI in-process and pytest
fixtures, registered as a pytest plugin.
"""

from sas_bayes_testhelpers import funcs, oracles

__all__ = ["funcs", "oracles"]
