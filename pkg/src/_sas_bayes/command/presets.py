"""Top-level command for listing the built-in presets.

.. module:: presets
    :synopsis: List the built-in experiment presets.
"""

from sas_bayes_core import echo

from _sas_bayes import formatters, presets

__all__ = ["list_presets"]


def list_presets() -> None:
    echo(formatters.format_presets(presets.PRESETS.values()))
