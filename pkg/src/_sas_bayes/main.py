"""Main entrypoint for the sas-bayes CLI application.

.. module:: main
    :synopsis: Main entrypoint for the sas-bayes CLI application.
"""

import argparse
import contextlib
import dataclasses
import enum
import io
import json
import logging
import pathlib
import sys
from typing import Any, Dict, Iterator, List, NoReturn, Optional

from sas_bayes_core import SasBayesError, log

import _sas_bayes.cli.dispatch
import _sas_bayes.cli.parsing
from _sas_bayes import constants

__all__ = ["run", "main", "error_document"]


def run(cmd: List[str]) -> Any:
    """Run sas-bayes with the provided arguments. This function is mostly
    intended to be used for testing and scripting.

    Running this function is almost equivalent to running sas-bayes from the
    CLI, except that there is no error handling at the top level, so
    exceptions are raised instead of being reported as error JSON.

    .. code-block:: python

        from sas_bayes import run

        run(["generate", "--preset", "mono-n11", "--out", "data"])

    Args:
        cmd: The command to run, without the program name.
    Returns:
        Whatever the command returns, e.g. the report of a fit.
    """
    _sas_bayes.cli.parsing.setup_logging()
    args = _sas_bayes.cli.parsing.handle_args(cmd)
    with _set_output_verbosity(_get_output_verbosity(args)):
        return _sas_bayes.cli.dispatch.dispatch_command(args)


@dataclasses.dataclass
class _Invocation:
    """What is known about the running command when an error surfaces."""

    out_dir: Optional[pathlib.Path] = None
    create_out_dir: bool = False


def main(sys_args: List[str]) -> None:
    """Start the sas-bayes CLI.

    Args:
        sys_args: Arguments from the command line, including the program
            name.
    """
    invocation = _Invocation()
    with _main_error_handler(invocation):
        _run_cli(sys_args, invocation)


def _run_cli(sys_args: List[str], invocation: _Invocation) -> None:
    _sas_bayes.cli.parsing.setup_logging()
    try:
        args = _sas_bayes.cli.parsing.handle_args(sys_args[1:])
    except SasBayesError:
        invocation.out_dir = _out_flag(sys_args[1:])
        invocation.create_out_dir = invocation.out_dir is not None
        raise
    _record_out_dir(args, invocation)

    output_verbosity = _get_output_verbosity(args)
    with _set_output_verbosity(output_verbosity), _core_error_handler(
        args.traceback
    ):
        _sas_bayes.cli.dispatch.dispatch_command(args)


def _record_out_dir(
    args: argparse.Namespace, invocation: _Invocation
) -> None:
    if getattr(args, "out", None) is not None:
        invocation.out_dir = args.out
        invocation.create_out_dir = True
    elif getattr(args, "run_dir", None) is not None:
        invocation.out_dir = args.run_dir


def _out_flag(args: List[str]) -> Optional[pathlib.Path]:
    """Value of ``--out`` in arguments that failed to parse, if any."""
    for flag, value in zip(args, args[1:]):
        if flag == "--out":
            return pathlib.Path(value)
    for arg in args:
        if arg.startswith("--out="):
            return pathlib.Path(arg.partition("=")[2])
    return None


@contextlib.contextmanager
def _main_error_handler(invocation: _Invocation) -> Iterator[None]:
    try:
        yield
    except Exception as exc:
        document = error_document(exc)
        print(json.dumps(document, default=str), flush=True)
        _write_error_file(document, invocation)
        sys.exit(1)


def error_document(exc: Exception) -> Dict[str, Any]:
    """The machine-readable description of a failure."""
    if isinstance(exc, SasBayesError):
        message, details = exc.msg, exc.kwargs
    else:
        message, details = str(exc), {}
    return {
        "error": type(exc).__name__,
        "message": message,
        "details": details,
    }


def _write_error_file(
    document: Dict[str, Any], invocation: _Invocation
) -> None:
    out_dir = invocation.out_dir
    if out_dir is None:
        return
    try:
        if invocation.create_out_dir:
            out_dir.mkdir(parents=True, exist_ok=True)
        if out_dir.is_dir():
            (out_dir / constants.ERROR_FILE).write_text(
                json.dumps(document, indent=2, default=str) + "\n",
                encoding="utf8",
            )
    except OSError as exc:
        log.error(f"could not write {constants.ERROR_FILE}: {exc}")


@contextlib.contextmanager
def _core_error_handler(traceback: bool) -> Iterator[None]:
    try:
        yield
    except Exception as exc:
        _handle_exception(exc, traceback=traceback)


def _handle_exception(exc: Exception, traceback: bool) -> NoReturn:
    log.error(f"{exc.__class__.__name__}: {exc}")
    if traceback:
        log.exception("Critical exception")
    raise exc


class _OutputVerbosity(enum.IntEnum):
    SILENCE_ERRORS = -3
    SILENCE_WARNINGS = -2
    SILENCE_STDOUT = -1
    STANDARD = 0
    INFO_LOGGING = 1
    DEBUG_LOGGING = 2


@contextlib.contextmanager
def _set_output_verbosity(verbosity: _OutputVerbosity) -> Iterator[None]:
    if verbosity == _OutputVerbosity.STANDARD:
        yield
        return
    elif verbosity > _OutputVerbosity.STANDARD:
        terminal_level = (
            logging.INFO
            if verbosity == _OutputVerbosity.INFO_LOGGING
            else logging.DEBUG
        )
        _sas_bayes.cli.parsing.setup_logging(terminal_level=terminal_level)
        yield
    else:
        with contextlib.redirect_stdout(io.StringIO()):
            if verbosity == _OutputVerbosity.SILENCE_WARNINGS:
                _sas_bayes.cli.parsing.setup_logging(
                    terminal_level=logging.ERROR
                )
            elif verbosity == _OutputVerbosity.SILENCE_ERRORS:
                _sas_bayes.cli.parsing.setup_logging(
                    terminal_level=logging.CRITICAL
                )
            yield


def _get_output_verbosity(args: argparse.Namespace) -> _OutputVerbosity:
    quiet = min(getattr(args, "quiet", 0), 3)
    verbose = min(getattr(args, "verbose", 0), 2)
    return _OutputVerbosity(-quiet or verbose)


if __name__ == "__main__":
    main(sys.argv)
