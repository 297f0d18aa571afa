"""Command line interface of the sas-bayes application.

.. module:: cli
    :synopsis: Command line interface of the sas-bayes application.
"""

from _sas_bayes.cli import argparse_ext, mainparser, parsing, dispatch

__all__ = ["argparse_ext", "mainparser", "parsing", "dispatch"]
