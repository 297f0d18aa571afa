"""sas-bayes extensions of argparse."""

import argparse
import sys
from typing import Dict, NoReturn, Optional, Tuple

from sas_bayes_core import ParseError

__all__ = [
    "ArgumentParser",
    "SasBayesParser",
    "add_debug_args",
    "COMMAND_DEST",
]

COMMAND_DEST = "command"

# (title, description) of each argument group and the flags it collects
_ARGUMENT_GROUPS: Dict[Tuple[str, Optional[str]], Tuple[str, ...]] = {
    (
        "configuration arguments",
        "Resolved in the order preset, config file, explicit flags",
    ): ("--preset", "--config", "--seed"),
    ("sampler arguments", None): (
        "--sweeps",
        "--burn-in",
        "--paper-scale",
        "--threads",
    ),
    ("debug arguments", None): ("--traceback", "--quiet", "--verbose"),
}


class ArgumentParser(argparse.ArgumentParser):
    """Parser that raises :py:class:`~sas_bayes_core.exceptions.ParseError`
    on invalid arguments instead of exiting, so that usage errors are
    reported as error JSON like any other failure.
    """

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise ParseError(message, prog=self.prog)


class SasBayesParser(ArgumentParser):
    """Subcommand parser that files well-known flags under titled argument
    groups, so the help of ``fit`` lists the sampler flags separately from
    the configuration flags.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._group_of_flag: Dict[str, argparse._ArgumentGroup] = {}
        for (title, description), flags in _ARGUMENT_GROUPS.items():
            group = self.add_argument_group(title, description)
            self._group_of_flag.update((flag, group) for flag in flags)

    def add_argument(self, *args, **kwargs):
        # the base initializer adds --help before the groups exist
        groups = getattr(self, "_group_of_flag", {})
        group = next((groups[flag] for flag in args if flag in groups), None)
        if group is not None:
            return group.add_argument(*args, **kwargs)
        return super().add_argument(*args, **kwargs)

    def add_argument_group(  # type: ignore
        self, title: Optional[str] = None, description: Optional[str] = None
    ) -> argparse._ArgumentGroup:
        """Return the group called ``title``, creating it if needed."""
        existing = [g for g in self._action_groups if g.title == title]
        if not existing:
            return super().add_argument_group(title, description)
        if description is not None:
            existing[0].description = description
        return existing[0]


def add_debug_args(parser: argparse.ArgumentParser) -> None:
    """Add the verbosity and traceback flags every subcommand shares."""
    parser.add_argument(
        "--tb",
        "--traceback",
        help="log the full traceback of a failure",
        action="store_true",
        dest="traceback",
    )
    parser.add_argument(
        "-q",
        "--quiet",
        help="silence stdout; -qq also hides warnings and -qqq hides "
        "everything but the error JSON",
        action="count",
        default=0,
    )
    parser.add_argument(
        "-v",
        "--verbose",
        help="log progress to stderr; -v for info and -vv for debug "
        "messages",
        action="count",
        default=0,
    )
