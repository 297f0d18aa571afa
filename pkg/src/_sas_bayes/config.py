"""Run configuration.

A run is configured by one JSON document with an object per concern:

.. code-block:: json

    {
        "model": {"kind": "monodisperse"},
        "truth": {"R": 10.0, "b": 0.01, "t": 10.0},
        "constants": {"phi": 1.0, "rho_s": 0.0001, "rho_m": 0.00063},
        "grid": {"q_min": 0.01, "q_max": 3.0, "n_points": 400},
        "quadrature": {"node_count": 257, "window_halfwidth_sigmas": 6.0},
        "prior": {"R": {"shape": 1.5, "scale": 100.0}, "...": "..."},
        "ladder": {"replicas": 40, "base": 2.2},
        "sampler": {"burn_in": 20000, "samples": 20000, "...": "..."},
        "seeds": {"data": 0, "sampler": 0},
        "generate": {"nonzero_target": null}
    }

Documents are resolved in layers: a preset (or the built-in defaults of the
model kind) is overridden by a ``--config`` file, which is overridden by
explicit command line flags. Keys that are not part of the schema are
rejected.

.. module:: config
    :synopsis: Layered JSON run configuration with fail-fast validation.
"""

import contextlib
import copy
import json
import pathlib
from typing import Any, Dict, Iterator, Mapping, Optional

from sas_bayes_core import (
    ConfigError,
    DomainError,
    FileError,
    ModelKind,
    ModelParams,
    PriorSpec,
    QGrid,
    QuadratureSpec,
    SamplerConfig,
    SphereConstants,
    build_ladder,
    log,
    params_from_mapping,
)
from sas_bayes_core import serialize
from sas_bayes_core.sampler import LadderSpec

from _sas_bayes import fileutil, presets

__all__ = ["RunConfig", "load_config_file", "merge_documents", "resolve"]

# sections whose keys are parameter names rather than schema keys
_PARAMETER_SECTIONS = {("truth",), ("prior",), ("sampler", "fixed")}


def load_config_file(path: pathlib.Path) -> Dict[str, Any]:
    """Read a JSON configuration file.

    Raises:
        :py:class:`~sas_bayes_core.exceptions.FileError` if the file is
        missing or not a JSON object.
    """
    path = pathlib.Path(path)
    if not path.is_file():
        raise FileError(f"no config file found at {path}", path=str(path))
    try:
        data = json.loads(path.read_text(encoding="utf8"))
    except json.JSONDecodeError as exc:
        raise FileError(
            f"config file at {path} contains syntax errors: {exc}",
            path=str(path),
        ) from exc
    if not isinstance(data, dict):
        raise FileError(
            f"config file at {path} must contain a JSON object",
            path=str(path),
        )
    return data


def merge_documents(
    base: Mapping[str, Any], override: Mapping[str, Any], _path=()
) -> Dict[str, Any]:
    """Deep-merge ``override`` into a copy of ``base``.

    Raises:
        :py:class:`~sas_bayes_core.exceptions.ConfigError` naming the first
        key of ``override`` that ``base`` does not have.
    """
    merged = copy.deepcopy(dict(base))
    for key, value in override.items():
        path = _path + (key,)
        field = ".".join(path)
        if key not in merged:
            raise ConfigError(
                f"invalid configuration key: {field}", field=field
            )
        if path in _PARAMETER_SECTIONS:
            # keyed by parameter name, checked against the model later
            if value is not None and not isinstance(value, dict):
                raise ConfigError(f"{field} must be an object", field=field)
            merged[key] = (
                {**(merged[key] or {}), **copy.deepcopy(value)}
                if value is not None
                else None
            )
        elif isinstance(merged[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{field} must be an object", field=field)
            merged[key] = merge_documents(merged[key], value, path)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class RunConfig:
    """A resolved configuration document with typed accessors.

    The accessors build the library objects on demand and translate any
    precondition failure into a :py:class:`ConfigError` naming the section.
    """

    def __init__(
        self, document: Mapping[str, Any], preset: Optional[str] = None
    ):
        self._doc = copy.deepcopy(dict(document))
        self.preset = preset

    def to_dict(self) -> Dict[str, Any]:
        """The full document, with the preset it was resolved from."""
        return {"preset": self.preset, **copy.deepcopy(self._doc)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunConfig":
        """Inverse of :py:meth:`to_dict`."""
        data = dict(data)
        preset = data.pop("preset", None)
        kind = _kind_of(data)
        base = (
            presets.get_preset(preset).document()
            if preset
            else presets.default_document(kind)
        )
        return cls(merge_documents(base, data), preset=preset)

    def with_overrides(self, overrides: Mapping[str, Any]) -> "RunConfig":
        """A copy with ``overrides`` deep-merged into the document."""
        return RunConfig(
            merge_documents(self._doc, overrides), preset=self.preset
        )

    def write(self, path: pathlib.Path) -> pathlib.Path:
        """Write the configuration echo, which :py:func:`resolve` accepts as
        a config file to repeat the run.
        """
        fileutil.atomic_write(serialize.dumps(self.to_dict()), path)
        return path

    def section(self, name: str) -> Any:
        return copy.deepcopy(self._doc[name])

    @property
    def kind(self) -> ModelKind:
        with _field("model.kind"):
            return ModelKind(self._doc["model"]["kind"])

    @property
    def truth(self) -> ModelParams:
        truth = self._doc.get("truth")
        if not truth:
            raise ConfigError("no true parameters configured", field="truth")
        with _field("truth"):
            params = params_from_mapping(self.kind, truth)
            params.validate()
            return params

    @property
    def constants(self) -> SphereConstants:
        with _field("constants"):
            return SphereConstants(**self._doc["constants"])

    @property
    def grid(self) -> QGrid:
        with _field("grid"):
            return QGrid(**self._doc["grid"])

    @property
    def quadrature(self) -> QuadratureSpec:
        with _field("quadrature"):
            return QuadratureSpec(**self._doc["quadrature"])

    @property
    def prior(self) -> PriorSpec:
        with _field("prior"):
            return PriorSpec.from_dict(self.kind, self._doc["prior"])

    @property
    def ladder(self) -> LadderSpec:
        with _field("ladder"):
            ladder = self._doc["ladder"]
            return build_ladder(int(ladder["replicas"]), ladder["base"])

    @property
    def data_seed(self) -> int:
        return _seed(self._doc["seeds"]["data"], "seeds.data")

    @property
    def sampler_seed(self) -> int:
        return _seed(self._doc["seeds"]["sampler"], "seeds.sampler")

    @property
    def nonzero_target(self) -> Optional[int]:
        return self._doc["generate"]["nonzero_target"]

    def sampler_config(self) -> SamplerConfig:
        sampler = self._doc["sampler"]
        step_sizes = sampler["step_sizes"]
        with _field("sampler"):
            return SamplerConfig(
                ladder=self.ladder,
                burn_in=int(sampler["burn_in"]),
                samples=int(sampler["samples"]),
                seed=self.sampler_seed,
                step_sizes=(
                    tuple(float(s) for s in step_sizes)
                    if step_sizes is not None
                    else None
                ),
                adapt_burn_in=bool(sampler["adapt_burn_in"]),
                adapt_interval=int(sampler["adapt_interval"]),
                adapt_rate=float(sampler["adapt_rate"]),
                validate_cache=bool(sampler["validate_cache"]),
                exchanges=bool(sampler["exchanges"]),
                fixed={
                    name: float(value)
                    for name, value in (sampler["fixed"] or {}).items()
                },
            )

    def validate(self, need_truth: bool = False) -> None:
        """Check every precondition of the downstream modules before any
        work starts.

        Args:
            need_truth: Also require valid true parameters, as generating
                data does.
        Raises:
            :py:class:`~sas_bayes_core.exceptions.ConfigError` naming the
            offending field.
        """
        kind = self.kind
        if need_truth:
            _ = self.truth
        _ = (self.grid, self.quadrature, self.prior, self.data_seed)
        if self.constants.contrast == 0:
            log.warning("rho_s equals rho_m, the intensity is pure background")
        config = self.sampler_config()
        steps = config.step_sizes
        if steps is not None and len(steps) != kind.dim:
            raise ConfigError(
                f"expected {kind.dim} step sizes for the {kind} model",
                field="sampler.step_sizes",
            )
        unknown = set(config.fixed) - set(kind.parameter_names)
        if unknown:
            raise ConfigError(
                f"cannot fix unknown parameters of the {kind} model",
                field="sampler.fixed",
                unknown=sorted(unknown),
            )
        target = self.nonzero_target
        if target is not None and not 0 <= target <= self.grid.n_points:
            raise ConfigError(
                "nonzero_target must lie in [0, n_points]",
                field="generate.nonzero_target",
            )


def _seed(value: Any, field: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ConfigError(
            "seeds must be non-negative integers", field=field, seed=value
        )
    return value


def _kind_of(document: Mapping[str, Any]) -> ModelKind:
    model = document.get("model") or {}
    kind = model.get("kind", ModelKind.MONODISPERSE.value)
    try:
        return ModelKind(kind)
    except ValueError as exc:
        raise ConfigError(
            f"unknown model kind '{kind}'", field="model.kind"
        ) from exc


@contextlib.contextmanager
def _field(field: str) -> Iterator[None]:
    """Turn precondition failures inside the block into ConfigErrors naming
    ``field``.
    """
    try:
        yield
    except ConfigError:
        raise
    except (DomainError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid {field}: {exc}", field=field) from exc


def resolve(
    preset: Optional[str] = None,
    config_file: Optional[pathlib.Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    kind: Optional[ModelKind] = None,
) -> RunConfig:
    """Resolve a run configuration: preset or built-in defaults, then the
    config file, then ``overrides`` (a partial document built from command
    line flags).

    Args:
        preset: Name of a built-in preset.
        config_file: Path to a JSON configuration file.
        overrides: A partial document built from command line flags.
        kind: Model kind whose defaults to start from when neither a preset
            nor the config file names one.
    """
    file_doc = load_config_file(config_file) if config_file else {}
    # a config echoed by a previous run names its preset
    echoed_preset = file_doc.pop("preset", None)
    preset = preset or echoed_preset
    if preset:
        base = presets.get_preset(preset).document()
    elif "kind" in (file_doc.get("model") or {}) or kind is None:
        base = presets.default_document(_kind_of(file_doc))
    else:
        base = presets.default_document(kind)
    document = merge_documents(base, file_doc)
    document = merge_documents(document, overrides or {})
    config = RunConfig(document, preset=preset)
    log.debug(f"resolved configuration: {json.dumps(config.to_dict())}")
    return config
