"""End-to-end tests of the command line interface, run in-process."""

import json

import numpy as np
import pandas as pd
import pytest

import _sas_bayes.main
from sas_bayes_core import (
    DatasetError,
    FileError,
    FitReport,
    InsufficientSamplesError,
    ModelKind,
    serialize,
)

from _sas_bayes import constants, hash, presets
from sas_bayes_testhelpers import funcs

# 11 points and 200 sweeps keep a full fit to a few seconds
SMOKE_SWEEPS = "--burn-in 100 --sweeps 100"


class TestGenerate:
    """Tests for the generate command."""

    def test_writes_dataset_provenance_and_config(self, dataset_dir):
        dataset = serialize.read_dataset(dataset_dir / constants.DATASET_FILE)

        assert len(dataset) == 11
        assert dataset.provenance.kind is ModelKind.MONODISPERSE
        assert dataset.provenance.seed == 3
        assert dataset.provenance.truth.time == 10.0
        echoed = json.loads(
            (dataset_dir / constants.CONFIG_FILE).read_text(encoding="utf8")
        )
        assert echoed["preset"] == "mono-n11"
        assert echoed["seeds"]["data"] == 3

    def test_same_seed_gives_identical_files(self, tmp_path, dataset_dir):
        again = tmp_path / "again"

        funcs.run_sas_bayes(
            f"generate --preset mono-n11 --seed 3 --out {again}"
        )

        assert (again / constants.DATASET_FILE).read_bytes() == (
            dataset_dir / constants.DATASET_FILE
        ).read_bytes()

    def test_config_echo_repeats_the_run(self, tmp_path, dataset_dir):
        again = tmp_path / "again"

        funcs.run_sas_bayes(
            f"generate --config {dataset_dir / constants.CONFIG_FILE} "
            f"--out {again}"
        )

        assert (again / constants.DATASET_FILE).read_bytes() == (
            dataset_dir / constants.DATASET_FILE
        ).read_bytes()

    def test_manifest_hashes_every_file(self, dataset_dir):
        manifest = json.loads(
            (dataset_dir / constants.MANIFEST_FILE).read_text(encoding="utf8")
        )["files"]

        assert constants.DATASET_FILE in manifest
        assert constants.CONFIG_FILE in manifest
        for name, digest in manifest.items():
            assert hash.file_hash(dataset_dir / name) == digest


class TestFit:
    """Tests for the fit command."""

    def test_writes_chains_and_report(self, run_dir):
        replicas = presets.get_preset("mono-n11").replicas

        for slot in range(1, replicas + 1):
            chain = pd.read_csv(serialize.replica_path(run_dir, slot))
            assert list(chain.columns) == ["R", "b", "t", "E"]
            assert len(chain) == 100
        report = serialize.read_report(run_dir)
        assert set(report["intervals"]) == {"R", "b", "t"}
        assert (run_dir / serialize.RESIDUALS_FILE).is_file()
        assert (run_dir / serialize.CURVE_FILE).is_file()
        assert not (run_dir / constants.LOCK_FILE).exists()

    def test_returns_report_and_prints_summary(
        self, tmp_path, dataset_dir, capsys
    ):
        result = funcs.run_sas_bayes(
            f"fit {dataset_dir / 'dataset.csv'} --preset mono-n11 "
            f"{SMOKE_SWEEPS} --out {tmp_path / 'run'}"
        )

        assert isinstance(result, FitReport)
        assert result.samples.n_samples == 100
        assert "credible intervals from 100 samples" in capsys.readouterr().out

    def test_thread_count_does_not_change_chains(
        self, tmp_path, dataset_dir, run_dir
    ):
        threaded = tmp_path / "threaded"

        funcs.run_sas_bayes(
            f"fit {dataset_dir / 'dataset.csv'} --preset mono-n11 "
            f"{SMOKE_SWEEPS} --threads 4 --out {threaded}"
        )

        for slot in (1, 20, 40):
            assert serialize.replica_path(threaded, slot).read_bytes() == (
                serialize.replica_path(run_dir, slot).read_bytes()
            )

    def test_too_few_samples_for_intervals(self, tmp_path, dataset_dir):
        with pytest.raises(InsufficientSamplesError):
            funcs.run_sas_bayes(
                f"fit {dataset_dir / 'dataset.csv'} --preset mono-n11 "
                f"--burn-in 0 --sweeps 10 --out {tmp_path / 'run'}"
            )

    def test_malformed_dataset_names_the_row(self, tmp_path):
        path = tmp_path / "broken.csv"
        path.write_text("q,y\n0.1,0\n0.2,x\n0.3,1\n", encoding="utf8")

        with pytest.raises(DatasetError) as exc_info:
            funcs.run_sas_bayes(f"fit {path} --out {tmp_path / 'run'}")

        assert exc_info.value.kwargs["row"] == 1
        assert exc_info.value.kwargs["line"] == 3


class TestReport:
    """Tests for the report command."""

    def test_regenerates_identical_report(self, run_dir):
        report_path = run_dir / serialize.REPORT_FILE
        before = report_path.read_bytes()
        residuals_before = (run_dir / serialize.RESIDUALS_FILE).read_bytes()

        funcs.run_sas_bayes(f"report {run_dir}")

        assert report_path.read_bytes() == before
        assert (run_dir / serialize.RESIDUALS_FILE).read_bytes() == (
            residuals_before
        )

    def test_bins_change_histograms_only(self, run_dir):
        before = (run_dir / serialize.REPORT_FILE).read_bytes()

        funcs.run_sas_bayes(f"report {run_dir} --bins 32")

        for name in ("R", "b", "t"):
            histogram = serialize.read_histogram(
                serialize.histogram_path(run_dir, name)
            )
            assert len(histogram) == 32
            assert histogram["count"].sum() == 100
        assert (run_dir / serialize.REPORT_FILE).read_bytes() == before

    def test_svg_plots(self, run_dir):
        funcs.run_sas_bayes(f"report {run_dir} --svg")

        svgs = sorted(path.name for path in run_dir.glob("*.svg"))
        assert svgs
        manifest = serialize.load_json(run_dir / constants.MANIFEST_FILE)
        assert set(svgs) <= set(manifest["files"])

    def test_truncated_chain_is_rejected(self, run_dir):
        chain = serialize.replica_path(run_dir, 40)
        lines = chain.read_text(encoding="utf8").splitlines(keepends=True)
        chain.write_text("".join(lines[:-5]), encoding="utf8")

        with pytest.raises(FileError) as exc_info:
            funcs.run_sas_bayes(f"report {run_dir}")

        assert exc_info.value.kwargs["expected"] == 100
        assert exc_info.value.kwargs["found"] == 95

    def test_missing_run_dir(self, tmp_path):
        with pytest.raises(FileError):
            funcs.run_sas_bayes(f"report {tmp_path / 'nope'}")


class TestMainErrors:
    """Tests for the error reporting of the main entrypoint."""

    def test_locked_run_dir_gives_error_json(self, run_dir, capsys):
        (run_dir / constants.LOCK_FILE).write_text("1", encoding="utf8")

        with pytest.raises(SystemExit) as exc_info:
            _sas_bayes.main.main(["sas-bayes", "report", str(run_dir)])

        assert exc_info.value.code == 1
        last_line = capsys.readouterr().out.strip().splitlines()[-1]
        document = json.loads(last_line)
        assert document["error"] == "OutputLockedError"
        error_file = run_dir / constants.ERROR_FILE
        assert json.loads(error_file.read_text(encoding="utf8")) == document

    def test_next_successful_command_clears_error_file(self, run_dir):
        error_file = run_dir / constants.ERROR_FILE
        error_file.write_text("{}", encoding="utf8")

        funcs.run_sas_bayes(f"report {run_dir}")

        assert not error_file.exists()

    def test_invalid_config_is_reported_before_any_output(
        self, tmp_path, capsys
    ):
        out = tmp_path / "data"
        config_file = tmp_path / "config.json"
        config_file.write_text(
            json.dumps({"grid": {"n_points": 0}}), encoding="utf8"
        )

        with pytest.raises(SystemExit):
            _sas_bayes.main.main(
                [
                    "sas-bayes",
                    "generate",
                    "--config",
                    str(config_file),
                    "--out",
                    str(out),
                ]
            )

        document = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        assert document["error"] == "ConfigError"
        assert document["details"]["field"] == "grid"
        assert not (out / constants.DATASET_FILE).exists()
        assert (out / constants.ERROR_FILE).is_file()


def test_presets_command_lists_every_preset(capsys):
    funcs.run_sas_bayes("presets")

    out = capsys.readouterr().out
    for name in presets.PRESETS:
        assert name in out


def test_curve_is_tabulated_on_the_dataset_grid(run_dir):
    curve = pd.read_csv(run_dir / serialize.CURVE_FILE)
    dataset = serialize.read_dataset(run_dir / constants.DATASET_FILE)

    assert np.allclose(curve["q"], dataset.q)
