"""Exceptions for sas_bayes_core.

All exceptions extend :py:class:`SasBayesError`, so anything raised by the
library can be caught by catching that single class.

.. module:: exceptions
    :synopsis: Exceptions for sas_bayes_core.
"""

from typing import Any, Dict


class SasBayesError(Exception):
    """Base class for all sas_bayes_core exceptions."""

    def __init__(self, *args, **kwargs):
        """Instantiate a SasBayesError.

        Args:
            args: List of positionals. These are passed directly to
                :py:class:`Exception`. Typically, you should only
                pass an error message here.
            kwargs: Keyword arguments to indicate what went wrong.
                For example, if the argument ``radius`` caused the error,
                then you should pass ``radius=radius`` as a kwarg so it can be
                introspected at a later time.
        """
        super().__init__(*args)
        self._kwargs = kwargs

    @property
    def kwargs(self) -> Dict[str, Any]:
        return dict(self._kwargs)

    @property
    def msg(self) -> str:
        return super().__str__()

    def __str__(self):
        formatted_args = super().__str__()
        formatted_kwargs = (
            ""
            if not self._kwargs
            else ". Passed arguments: "
            + ", ".join(
                f"{key}={value}" for key, value in self._kwargs.items()
            )
        )
        return f"{formatted_args}{formatted_kwargs}"

    def __repr__(self):
        return f"<{type(self).__name__}(msg='{self.msg}')>"


class DomainError(SasBayesError, ValueError):
    """Raise when a value lies outside the domain of an operation, such as a
    non-positive radius.
    """


class QuadratureError(SasBayesError):
    """Raise when the integration window of the size distribution
    collapses.
    """


class ConfigError(SasBayesError):
    """Raise when a run configuration is invalid. The offending field is
    passed as the ``field`` kwarg.
    """


class DatasetError(SasBayesError):
    """Raise when a dataset is malformed. If a specific row is to blame, it
    is passed as the ``row`` kwarg.
    """


class InsufficientSamplesError(SasBayesError):
    """Raise when there are too few samples to compute a statistic."""


class FileError(SasBayesError):
    """Raise if something goes wrong with reading from or writing to a
    file.
    """


class OutputLockedError(FileError):
    """Raise when an output directory is already locked by another run."""


class ParseError(SasBayesError):
    """Raise when command line arguments cannot be parsed. The program or
    subcommand that rejected them is passed as the ``prog`` kwarg.
    """
