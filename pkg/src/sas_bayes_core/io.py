"""User-facing terminal output: messages and sampling progress."""

import sys
from typing import Any, Iterable, TypeVar

import tqdm  # type: ignore

from sas_bayes_core import log

__all__ = ["echo", "progress_bar"]

T = TypeVar("T")

# seconds between progress bar refreshes, long runs do millions of sweeps
_REFRESH_INTERVAL = 1.0


def echo(msg: Any) -> None:
    """Print ``str(msg)`` to stdout and record it in the log file."""
    text = str(msg)
    log.info(text)
    print(text)


def progress_bar(
    it: Iterable[T],
    total: int,
    desc: str,
    enabled: bool = True,
    unit: str = "sweep",
) -> Iterable[T]:
    """Wrap an iterable in a :py:mod:`tqdm` progress bar on stdout.

    Args:
        it: The iterable to consume.
        total: Number of items ``it`` yields.
        desc: Label in front of the bar.
        enabled: If False, ``it`` is consumed without drawing anything.
        unit: Name of one item, shown in the rate.
    Returns:
        An iterable yielding the elements of ``it``.
    """
    return tqdm.tqdm(
        it,
        total=total,
        desc=desc,
        unit=unit,
        disable=not enabled,
        mininterval=_REFRESH_INTERVAL,
        file=sys.stdout,
    )
