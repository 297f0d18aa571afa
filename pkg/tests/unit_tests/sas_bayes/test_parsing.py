import pytest

from sas_bayes_core import ConfigError, ParseError

from _sas_bayes import constants
from _sas_bayes.cli import parsing


class TestResolveThreads:
    """Tests for resolve_threads."""

    def test_flag_takes_precedence_over_environment(self):
        environ = {constants.THREADS_ENV: "8"}

        assert parsing.resolve_threads(3, environ) == 3

    def test_falls_back_to_environment(self):
        environ = {constants.THREADS_ENV: "8"}

        assert parsing.resolve_threads(None, environ) == 8

    @pytest.mark.parametrize("environ", [{}, {constants.THREADS_ENV: ""}])
    def test_defaults_to_one_thread(self, environ):
        assert parsing.resolve_threads(None, environ) == 1

    def test_rejects_non_integer_environment(self):
        with pytest.raises(ConfigError) as exc_info:
            parsing.resolve_threads(None, {constants.THREADS_ENV: "many"})

        assert constants.THREADS_ENV in str(exc_info.value)

    @pytest.mark.parametrize("threads", [0, -2])
    def test_rejects_non_positive_counts(self, threads):
        with pytest.raises(ConfigError) as exc_info:
            parsing.resolve_threads(threads, {})

        assert exc_info.value.kwargs["field"] == "threads"


class TestHandleArgs:
    """Tests for handle_args."""

    def test_fit_arguments(self, monkeypatch):
        monkeypatch.delenv(constants.THREADS_ENV, raising=False)

        args = parsing.handle_args(
            "fit data.csv --out run --preset mono-t1 --sweeps 500".split()
        )

        assert args.command == "fit"
        assert str(args.dataset) == "data.csv"
        assert args.preset == "mono-t1"
        assert args.sweeps == 500
        assert args.burn_in is None
        assert args.threads == 1
        assert args.bins == 64
        assert not args.svg

    def test_threads_from_environment(self, monkeypatch):
        monkeypatch.setenv(constants.THREADS_ENV, "4")

        args = parsing.handle_args("fit data.csv --out run".split())

        assert args.threads == 4

    def test_rejects_non_positive_bins(self):
        with pytest.raises(ConfigError) as exc_info:
            parsing.handle_args("report run --bins 0".split())

        assert exc_info.value.kwargs["field"] == "bins"

    def test_unknown_preset_raises_parse_error(self):
        with pytest.raises(ParseError) as exc_info:
            parsing.handle_args("generate --preset nope --out data".split())

        assert exc_info.value.kwargs["prog"] == "sas-bayes generate"

    def test_out_is_required(self):
        with pytest.raises(ParseError):
            parsing.handle_args("generate --preset mono-t1".split())

    def test_non_integer_sweeps_raises_parse_error(self):
        with pytest.raises(ParseError) as exc_info:
            parsing.handle_args("fit data.csv --out run --sweeps many".split())

        assert "--sweeps" in exc_info.value.msg

    def test_unknown_command_raises_parse_error(self):
        with pytest.raises(ParseError) as exc_info:
            parsing.handle_args(["resample"])

        assert exc_info.value.kwargs["prog"] == "sas-bayes"

    def test_presets_command_has_no_config_arguments(self):
        args = parsing.handle_args(["presets"])

        assert args.command == "presets"
        assert "seed" not in args


def test_setup_logging_creates_log_directory(isolated_log_dir):
    parsing.setup_logging()

    assert isolated_log_dir.is_dir()


def test_fit_help_groups_flags(capsys):
    with pytest.raises(SystemExit):
        parsing.handle_args(["fit", "--help"])

    out = capsys.readouterr().out
    configuration = out.index("configuration arguments:")
    sampler = out.index("sampler arguments:")
    debug = out.index("debug arguments:")
    assert configuration < out.index("--preset") < sampler
    assert sampler < out.index("--threads") < debug
    assert debug < out.index("--traceback")
