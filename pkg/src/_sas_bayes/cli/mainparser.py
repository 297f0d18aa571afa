"""Definition of the primary parser for sas-bayes.

.. module:: mainparser
    :synopsis: The primary parser for sas-bayes.
"""

import argparse
import pathlib

import _sas_bayes
from _sas_bayes import presets
from _sas_bayes.cli import argparse_ext

__all__ = ["create_parser"]

GENERATE = "generate"
FIT = "fit"
REPORT = "report"
PRESETS = "presets"


def create_parser() -> argparse.ArgumentParser:
    """Create the primary parser.

    Returns:
        The primary parser.
    """
    parser = argparse_ext.ArgumentParser(
        prog="sas-bayes",
        description="Bayesian estimation of sphere model parameters from "
        "small-angle scattering data, using replica-exchange Monte Carlo.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--version",
        help="display version info",
        action="version",
        version=f"{_sas_bayes.__version__}",
    )
    subparsers = parser.add_subparsers(
        dest=argparse_ext.COMMAND_DEST,
        parser_class=argparse_ext.SasBayesParser,
    )
    subparsers.required = True

    _add_generate_parser(subparsers)
    _add_fit_parser(subparsers)
    _add_report_parser(subparsers)
    _add_presets_parser(subparsers)
    return parser


def _add_generate_parser(subparsers) -> None:
    generate = subparsers.add_parser(
        GENERATE,
        help="synthesize a Poisson-noised dataset",
        description="Synthesize a dataset from the true parameters of a "
        "preset or config file. Writes dataset.csv, its provenance sidecar "
        "and the configuration echo into the output directory.",
    )
    _add_config_args(generate, seed_help="the data seed")
    _add_out_arg(generate)
    generate.add_argument(
        "--nonzero-target",
        help="scan data seeds upwards from --seed until the dataset has "
        "exactly this many non-zero points",
        type=int,
        default=None,
    )
    argparse_ext.add_debug_args(generate)


def _add_fit_parser(subparsers) -> None:
    fit = subparsers.add_parser(
        FIT,
        help="sample the posterior of a dataset and report on it",
        description="Run the replica-exchange sampler on a dataset and "
        "write the chains, the report and its CSV tables into the output "
        "directory.",
    )
    fit.add_argument(
        "dataset", help="path to a dataset CSV file", type=pathlib.Path
    )
    _add_config_args(fit, seed_help="the sampler seed")
    _add_out_arg(fit)
    fit.add_argument(
        "--sweeps",
        help="number of retained sweeps S1",
        type=int,
        default=None,
    )
    fit.add_argument(
        "--burn-in",
        help="number of burn-in sweeps S0",
        type=int,
        default=None,
        dest="burn_in",
    )
    fit.add_argument(
        "--paper-scale",
        help="use 100000 burn-in and 100000 retained sweeps, unless "
        "--sweeps or --burn-in say otherwise",
        action="store_true",
        dest="paper_scale",
    )
    fit.add_argument(
        "--threads",
        help="worker threads for the replica updates, falling back to the "
        "SAS_BAYES_THREADS environment variable and then to 1",
        type=int,
        default=None,
    )
    _add_report_args(fit)
    argparse_ext.add_debug_args(fit)


def _add_report_parser(subparsers) -> None:
    report = subparsers.add_parser(
        REPORT,
        help="regenerate the report of a fit from its persisted chains",
        description="Recompute MAP estimates, credible intervals, "
        "histograms and residuals of a fit without resampling.",
    )
    report.add_argument(
        "run_dir",
        help="output directory of a previous fit",
        type=pathlib.Path,
    )
    _add_report_args(report)
    argparse_ext.add_debug_args(report)


def _add_presets_parser(subparsers) -> None:
    listing = subparsers.add_parser(
        PRESETS,
        help="list the built-in experiment presets",
    )
    argparse_ext.add_debug_args(listing)


def _add_config_args(
    parser: argparse.ArgumentParser, seed_help: str
) -> None:
    parser.add_argument(
        "--preset",
        help="a built-in experiment preset",
        choices=list(presets.PRESETS),
        default=None,
    )
    parser.add_argument(
        "--config",
        help="path to a JSON configuration file, merged over the preset",
        type=pathlib.Path,
        default=None,
        dest="config_file",
    )
    parser.add_argument(
        "--seed",
        help=f"{seed_help}, a non-negative integer",
        type=int,
        default=None,
    )


def _add_out_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out",
        help="output directory, created if it does not exist",
        type=pathlib.Path,
        required=True,
    )


def _add_report_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--bins",
        help="number of histogram bins",
        type=int,
        default=64,
    )
    parser.add_argument(
        "--svg",
        help="also write SVG plots of the fit, histograms and residuals",
        action="store_true",
    )
