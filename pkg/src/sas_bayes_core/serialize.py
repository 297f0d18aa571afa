"""CSV and JSON persistence of datasets, chains and reports.

Floats are written with 17 significant digits and read back with pandas'
round-trip float parser, so every value survives a write/read cycle bit for
bit. That is what makes a report regenerated from persisted chains
byte-identical to the original.

.. module:: serialize
    :synopsis: File formats of datasets, samples and reports.
"""

import json
import pathlib
from typing import Any, Dict, List, Mapping

import numpy as np
import pandas as pd

from sas_bayes_core import exceptions
from sas_bayes_core.analysis import SCHEMA_VERSION, FitReport, Histogram
from sas_bayes_core.datagen import Dataset, Provenance, QGrid
from sas_bayes_core.params import (
    ModelKind,
    SphereConstants,
    params_from_mapping,
    params_to_mapping,
)
from sas_bayes_core.sampler import PosteriorSamples

__all__ = [
    "FLOAT_FORMAT",
    "write_dataset",
    "read_dataset",
    "meta_path",
    "provenance_to_dict",
    "provenance_from_dict",
    "write_samples",
    "read_samples",
    "replica_path",
    "write_report",
    "read_report",
    "read_histogram",
    "histogram_path",
    "dumps",
    "load_json",
]

FLOAT_FORMAT = "%.17g"

SUMMARY_FILE = "summary.json"
REPORT_FILE = "report.json"
CURVE_FILE = "curve.csv"
RESIDUALS_FILE = "residuals.csv"
ENERGY_COLUMN = "E"


def dumps(data: Any) -> str:
    """Serialize to the JSON layout used by every file this package
    writes.
    """
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def load_json(path: pathlib.Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf8"))
    except FileNotFoundError as exc:
        raise exceptions.FileError(
            f"no such file: {path}", path=str(path)
        ) from exc
    except json.JSONDecodeError as exc:
        raise exceptions.FileError(
            f"{path} is not valid JSON: {exc}", path=str(path)
        ) from exc


def _read_csv(path: pathlib.Path, **kwargs) -> pd.DataFrame:
    try:
        return pd.read_csv(path, float_precision="round_trip", **kwargs)
    except FileNotFoundError as exc:
        raise exceptions.FileError(
            f"no such file: {path}", path=str(path)
        ) from exc
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise exceptions.FileError(
            f"could not parse {path}: {exc}", path=str(path)
        ) from exc


def _check_columns(
    frame: pd.DataFrame, expected: List[str], path: pathlib.Path
) -> None:
    if list(frame.columns) != expected:
        raise exceptions.FileError(
            f"{path} must have the header {','.join(expected)}",
            path=str(path),
            found=list(frame.columns),
        )


def meta_path(path: pathlib.Path) -> pathlib.Path:
    """The provenance sidecar of a dataset file, ``<stem>.meta.json``."""
    return path.with_name(f"{path.stem}.meta.json")


def provenance_to_dict(provenance: Provenance) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "model": provenance.kind.value,
        "truth": params_to_mapping(provenance.truth),
        "constants": provenance.constants.asdict(),
        "grid": provenance.grid.asdict(),
        "seed": provenance.seed,
    }


def provenance_from_dict(data: Mapping[str, Any]) -> Provenance:
    try:
        kind = ModelKind(data["model"])
        return Provenance(
            kind=kind,
            truth=params_from_mapping(kind, data["truth"]),
            constants=SphereConstants(**data["constants"]),
            grid=QGrid(**data["grid"]),
            seed=int(data["seed"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise exceptions.FileError(f"malformed provenance: {exc}") from exc


def write_dataset(dataset: Dataset, path: pathlib.Path) -> List[pathlib.Path]:
    """Write a dataset as CSV with header ``q,y``, plus a provenance sidecar
    if the dataset has one.

    Returns:
        The written files.
    """
    path = pathlib.Path(path)
    frame = pd.DataFrame({"q": dataset.q, "y": dataset.y})
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    written = [path]
    if dataset.provenance is not None:
        meta = meta_path(path)
        meta.write_text(
            dumps(provenance_to_dict(dataset.provenance)), encoding="utf8"
        )
        written.append(meta)
    return written


def read_dataset(path: pathlib.Path) -> Dataset:
    """Read a dataset written by :py:func:`write_dataset`, or any CSV with
    the header ``q,y``. The provenance sidecar is picked up if present.

    Raises:
        :py:class:`~sas_bayes_core.exceptions.DatasetError` naming the
        offending row (0-based, header excluded) and file line.
    """
    path = pathlib.Path(path)
    frame = _read_csv(path, dtype=str, keep_default_na=False)
    _check_columns(frame, ["q", "y"], path)

    q = pd.to_numeric(frame["q"], errors="coerce")
    y = pd.to_numeric(frame["y"], errors="coerce")
    bad = q.isna() | y.isna()
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0])
        raise exceptions.DatasetError(
            f"{path}: unparseable value",
            row=row,
            line=row + 2,
            q=frame["q"].iloc[row],
            y=frame["y"].iloc[row],
        )

    meta = meta_path(path)
    provenance = (
        provenance_from_dict(load_json(meta)) if meta.exists() else None
    )
    try:
        return Dataset(
            q=np.array([float(v) for v in frame["q"]]),
            y=y.to_numpy(),
            provenance=provenance,
        )
    except exceptions.DatasetError as exc:
        details = dict(exc.kwargs)
        if "row" in details:
            details["line"] = details["row"] + 2
        raise exceptions.DatasetError(f"{path}: {exc.msg}", **details) from exc


def replica_path(run_dir: pathlib.Path, slot: int) -> pathlib.Path:
    """Chain file of replica slot ``slot``, counted from 1."""
    return pathlib.Path(run_dir) / f"replica_{slot}.csv"


def write_samples(
    samples: PosteriorSamples, run_dir: pathlib.Path
) -> List[pathlib.Path]:
    """Write one CSV per replica (parameter names and ``E`` as columns) and
    a JSON summary with acceptance statistics and the sampler settings.

    Returns:
        The written files.
    """
    run_dir = pathlib.Path(run_dir)
    written = []
    columns = list(samples.parameter_names) + [ENERGY_COLUMN]
    for slot in range(samples.replicas):
        frame = pd.DataFrame(
            np.column_stack([samples.params[slot], samples.energies[slot]]),
            columns=columns,
        )
        path = replica_path(run_dir, slot + 1)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
        written.append(path)

    summary = {
        "schema_version": SCHEMA_VERSION,
        "model": samples.kind.value,
        "betas": list(samples.betas),
        "n_samples": samples.n_samples,
        "move_accepted": samples.move_accepted.tolist(),
        "exchange_accepted": samples.exchange_accepted.tolist(),
        "acceptance_rates": samples.acceptance_rates.tolist(),
        "exchange_rates": samples.exchange_rates.tolist(),
        "step_sizes": samples.step_sizes.tolist(),
        "sampler": samples.config,
        "wall_time": samples.wall_time,
    }
    summary_path = run_dir / SUMMARY_FILE
    summary_path.write_text(dumps(summary), encoding="utf8")
    written.append(summary_path)
    return written


def read_samples(run_dir: pathlib.Path) -> PosteriorSamples:
    """Read the chains and summary written by :py:func:`write_samples`.

    Raises:
        :py:class:`~sas_bayes_core.exceptions.FileError` if a file is
        missing, has the wrong header or holds fewer or more rows than the
        summary records.
    """
    run_dir = pathlib.Path(run_dir)
    summary = load_json(run_dir / SUMMARY_FILE)
    try:
        kind = ModelKind(summary["model"])
        betas = tuple(float(b) for b in summary["betas"])
        n_samples = int(summary["n_samples"])
    except (KeyError, TypeError, ValueError) as exc:
        raise exceptions.FileError(
            f"malformed summary: {exc}", path=str(run_dir / SUMMARY_FILE)
        ) from exc

    columns = list(kind.parameter_names) + [ENERGY_COLUMN]
    params = np.empty((len(betas), n_samples, kind.dim))
    energies = np.empty((len(betas), n_samples))
    for slot in range(len(betas)):
        path = replica_path(run_dir, slot + 1)
        frame = _read_csv(path)
        _check_columns(frame, columns, path)
        if len(frame) != n_samples:
            raise exceptions.FileError(
                f"{path} is truncated or padded: expected {n_samples} rows, "
                f"found {len(frame)}",
                path=str(path),
                expected=n_samples,
                found=len(frame),
            )
        values = frame.to_numpy(dtype=float)
        params[slot] = values[:, :-1]
        energies[slot] = values[:, -1]

    return PosteriorSamples(
        kind=kind,
        betas=betas,
        params=params,
        energies=energies,
        move_accepted=np.array(summary["move_accepted"], dtype=np.int64),
        exchange_accepted=np.array(
            summary["exchange_accepted"], dtype=np.int64
        ),
        step_sizes=np.array(summary["step_sizes"], dtype=float),
        config=summary.get("sampler", {}),
        wall_time=float(summary.get("wall_time", 0.0)),
    )


def histogram_path(out_dir: pathlib.Path, name: str) -> pathlib.Path:
    return pathlib.Path(out_dir) / f"hist_{name}.csv"


def _histogram_frame(histogram: Histogram) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "lower": histogram.edges[:-1],
            "upper": histogram.edges[1:],
            "count": histogram.counts,
        }
    )


def write_report(
    report: FitReport, out_dir: pathlib.Path
) -> List[pathlib.Path]:
    """Write ``report.json`` plus the curve, histogram and residual CSVs.

    Returns:
        The written files.
    """
    out_dir = pathlib.Path(out_dir)
    written = []

    report_path = out_dir / REPORT_FILE
    report_path.write_text(dumps(report.to_dict()), encoding="utf8")
    written.append(report_path)

    curve = {"q": report.curve.q, "intensity_map": report.curve.intensity}
    if report.truth_curve is not None:
        curve["intensity_true"] = report.truth_curve.intensity
    curve_path = out_dir / CURVE_FILE
    pd.DataFrame(curve).to_csv(
        curve_path, index=False, float_format=FLOAT_FORMAT
    )
    written.append(curve_path)

    for name, histogram in report.histograms.items():
        path = histogram_path(out_dir, name)
        _histogram_frame(histogram).to_csv(
            path, index=False, float_format=FLOAT_FORMAT
        )
        written.append(path)

    residuals_path = out_dir / RESIDUALS_FILE
    pd.DataFrame(
        {"q": report.residuals.q, "residual": report.residuals.residuals}
    ).to_csv(residuals_path, index=False, float_format=FLOAT_FORMAT)
    written.append(residuals_path)
    return written


def read_report(path: pathlib.Path) -> Dict[str, Any]:
    """Read a report JSON document, checking its schema version."""
    path = pathlib.Path(path)
    if path.is_dir():
        path = path / REPORT_FILE
    data = load_json(path)
    version = data.get("schema_version") if isinstance(data, dict) else None
    if version != SCHEMA_VERSION:
        raise exceptions.FileError(
            f"unsupported report schema version {version}",
            path=str(path),
            expected=SCHEMA_VERSION,
        )
    return data


def read_histogram(path: pathlib.Path) -> pd.DataFrame:
    frame = _read_csv(pathlib.Path(path))
    _check_columns(frame, ["lower", "upper", "count"], pathlib.Path(path))
    return frame

