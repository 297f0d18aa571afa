"""Module dispatching CLI commands to the sas-bayes internals.

This module essentially translates parsed and processed arguments from the
CLI into configurations and calls of the top-level commands.

.. module:: dispatch
    :synopsis: Command dispatcher for the CLI.
"""

import argparse
from typing import Any, Dict, Optional

from sas_bayes_core import ModelKind, serialize

from _sas_bayes import command, config, constants
from _sas_bayes.cli import mainparser

__all__ = ["dispatch_command", "cli_overrides"]


def dispatch_command(args: argparse.Namespace) -> Any:
    """Handle parsed CLI arguments and dispatch commands to the appropriate
    functions. Exceptions are allowed to propagate to the error handlers of
    :py:mod:`_sas_bayes.main`.

    Args:
        args: A namespace of parsed command line arguments.
    Returns:
        Whatever the command returns.
    """
    dispatch_table = {
        mainparser.GENERATE: _dispatch_generate,
        mainparser.FIT: _dispatch_fit,
        mainparser.REPORT: _dispatch_report,
        mainparser.PRESETS: _dispatch_presets,
    }
    return dispatch_table[args.command](args)


def _dispatch_generate(args: argparse.Namespace) -> Any:
    run_config = config.resolve(
        preset=args.preset,
        config_file=args.config_file,
        overrides=cli_overrides(args),
    )
    return command.generate(run_config, args.out)


def _dispatch_fit(args: argparse.Namespace) -> Any:
    dataset = serialize.read_dataset(args.dataset)
    kind: Optional[ModelKind] = (
        dataset.provenance.kind if dataset.provenance else None
    )
    run_config = config.resolve(
        preset=args.preset,
        config_file=args.config_file,
        overrides=cli_overrides(args),
        kind=kind,
    )
    return command.fit(
        dataset,
        run_config,
        args.out,
        threads=args.threads,
        bins=args.bins,
        svg=args.svg,
    )


def _dispatch_report(args: argparse.Namespace) -> Any:
    return command.report(args.run_dir, bins=args.bins, svg=args.svg)


def _dispatch_presets(args: argparse.Namespace) -> Any:
    return command.list_presets()


def cli_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Build the partial configuration document of the explicit flags.

    ``--seed`` sets the data seed of ``generate`` and the sampler seed of
    ``fit``. ``--paper-scale`` sets both sweep counts to
    :py:const:`~_sas_bayes.constants.FULL_SCALE_SWEEPS`, and ``--sweeps`` and
    ``--burn-in`` take precedence over it.
    """
    overrides: Dict[str, Any] = {}
    seed = getattr(args, "seed", None)
    if seed is not None:
        seed_key = "data" if args.command == mainparser.GENERATE else "sampler"
        overrides["seeds"] = {seed_key: seed}

    sampler: Dict[str, Any] = {}
    if getattr(args, "paper_scale", False):
        sampler["burn_in"] = constants.FULL_SCALE_SWEEPS
        sampler["samples"] = constants.FULL_SCALE_SWEEPS
    if getattr(args, "burn_in", None) is not None:
        sampler["burn_in"] = args.burn_in
    if getattr(args, "sweeps", None) is not None:
        sampler["samples"] = args.sweeps
    if sampler:
        overrides["sampler"] = sampler

    target = getattr(args, "nonzero_target", None)
    if target is not None:
        overrides["generate"] = {"nonzero_target": target}
    return overrides
