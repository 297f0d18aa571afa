"""Parsing logic for the primary parser.

Any non-trivial parsing logic should go in here, whereas definitions of
the primary parser should go in :py:mod:`_sas_bayes.cli.mainparser`.

.. module:: parsing
    :synopsis: Parsing logic for the primary parser.
"""

import argparse
import logging
import os
import sys
from typing import Iterable, Mapping, Optional

import argcomplete  # type: ignore
import daiquiri  # type: ignore

from sas_bayes_core import ConfigError, FileError

from _sas_bayes import constants, fileutil
from _sas_bayes.cli import mainparser

__all__ = ["handle_args", "setup_logging", "resolve_threads"]


def handle_args(sys_args: Iterable[str]) -> argparse.Namespace:
    """Parse and process command line arguments.

    Args:
        sys_args: Raw command line arguments for the primary parser.
    Returns:
        A namespace with parsed and processed arguments.
    """
    parser = mainparser.create_parser()
    argcomplete.autocomplete(parser)
    args = parser.parse_args(list(sys_args))

    if "threads" in args:
        args.threads = resolve_threads(args.threads, os.environ)
    if "bins" in args and args.bins < 1:
        raise ConfigError(
            "number of bins must be positive", field="bins", bins=args.bins
        )
    return args


def resolve_threads(
    threads: Optional[int], environ: Mapping[str, str]
) -> int:
    """Thread count from the ``--threads`` flag, falling back to the
    ``SAS_BAYES_THREADS`` environment variable and then to 1.
    """
    if threads is None:
        raw = environ.get(constants.THREADS_ENV)
        if not raw:
            return 1
        try:
            threads = int(raw)
        except ValueError as exc:
            raise ConfigError(
                f"{constants.THREADS_ENV} must be an integer, got '{raw}'",
                field="threads",
            ) from exc
    if threads < 1:
        raise ConfigError(
            "thread count must be positive", field="threads", threads=threads
        )
    return threads


_TERMINAL_FORMAT = "%(color)s[%(levelname)s] %(message)s%(color_stop)s"
_FILE_FORMAT = (
    "%(asctime)s [PID %(process)d] [%(levelname)s] %(name)s -> %(message)s"
    "%(extras)s"
)


def setup_logging(terminal_level: int = logging.WARNING) -> None:
    """Send log messages at ``terminal_level`` and above to stderr, and
    every message to the log file in the per-user log directory.

    Raises:
        :py:class:`~sas_bayes_core.exceptions.FileError` if the log
        directory cannot be created.
    """
    log_dir = constants.LOG_DIR
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise FileError(
            f"can't create log directory at {log_dir}", path=str(log_dir)
        ) from exc
    logfile = log_dir / constants.LOG_FILE_NAME
    fileutil.ensure_size_less(logfile, max_size=constants.MAX_LOGFILE_SIZE)

    terminal = daiquiri.output.Stream(
        sys.stderr,
        formatter=daiquiri.formatter.ColorFormatter(fmt=_TERMINAL_FORMAT),
        level=terminal_level,
    )
    file = daiquiri.output.File(
        filename=str(logfile),
        formatter=daiquiri.formatter.ExtrasFormatter(fmt=_FILE_FORMAT),
        level=logging.DEBUG,
    )
    daiquiri.setup(level=logging.DEBUG, outputs=(terminal, file))
