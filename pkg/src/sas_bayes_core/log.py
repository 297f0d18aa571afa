"""Logging for the library.

Everything in :py:mod:`sas_bayes_core` logs through this module, so the
application only has to configure :py:mod:`daiquiri` once for library
messages to end up both on the terminal and in the log file. Keyword
arguments of the helpers are attached to the record as extras, which the
file formatter of the application prints after the message.
"""

import contextlib
import logging
import time
from typing import Any, Iterator

import daiquiri  # type: ignore

_LOGGER = daiquiri.getLogger("sas_bayes")


def log(message: str, level: int, **context: Any) -> None:
    """Emit ``message`` at ``level``.

    Args:
        message: Text of the record.
        level: A :py:mod:`logging` level such as ``logging.INFO``.
        context: Extra fields for the record, e.g. ``sweep=1000``.
    """
    _LOGGER.log(level, message, **context)


def debug(message: str, **context: Any) -> None:
    log(message, logging.DEBUG, **context)


def info(message: str, **context: Any) -> None:
    log(message, logging.INFO, **context)


def warning(message: str, **context: Any) -> None:
    log(message, logging.WARNING, **context)


def error(message: str, **context: Any) -> None:
    log(message, logging.ERROR, **context)


def exception(message: str, **context: Any) -> None:
    """Like :py:func:`error`, with the traceback of the exception being
    handled appended.
    """
    _LOGGER.log(logging.ERROR, message, exc_info=True, **context)


@contextlib.contextmanager
def timed(task: str, level: int = logging.INFO) -> Iterator[None]:
    """Log the wall time spent in the ``with`` block, also when it raises.

    Args:
        task: Short description of the task, used in the log message.
        level: Level of the timing record.
    """
    started = time.perf_counter()
    try:
        yield
    finally:
        elapsed = time.perf_counter() - started
        log(f"{task} took {elapsed:.2f} s", level, seconds=round(elapsed, 3))
