"""Named experiment presets.

Every preset expands to a complete run configuration: the model, the true
parameters and sample constants used to synthesize data, the q-grid, the
priors, the temperature ladder and desk-scale sweep counts.

.. module:: presets
    :synopsis: Built-in experiment presets.
"""

import dataclasses
from typing import Any, Dict, List, Optional

from sas_bayes_core import ConfigError, ModelKind, PriorSpec

from _sas_bayes import constants

__all__ = ["Preset", "PRESETS", "get_preset", "default_document"]

MONO_CONSTANTS = {"phi": 1.0, "rho_s": 1e-4, "rho_m": 6.3e-4}
POLY_CONSTANTS = {"phi": 0.01, "rho_s": 1e-4, "rho_m": 6.3e-4}

MONO_Q_MAX = 3.0
POLY_Q_MAX = 7.0
DEFAULT_Q_MIN = 0.01
DEFAULT_N_POINTS = 400


@dataclasses.dataclass(frozen=True)
class Preset:
    """A synthetic-data experiment.

    Attributes:
        name: The preset id, e.g. ``mono-t10``.
        kind: The forward model.
        time: True measurement time t*.
        q_min: Lower end of the q-grid.
        q_max: Upper end of the q-grid.
        n_points: Number of grid points N.
        replicas: Number of replicas L.
        base: Geometric ladder base.
        nonzero_target: If set, ``generate`` scans data seeds from the given
            seed upwards until the dataset has this many non-zero points.
    """

    name: str
    kind: ModelKind
    time: float
    q_min: float = DEFAULT_Q_MIN
    q_max: float = MONO_Q_MAX
    n_points: int = DEFAULT_N_POINTS
    replicas: int = 40
    base: float = 2.2
    nonzero_target: Optional[int] = None

    def document(self) -> Dict[str, Any]:
        """The full configuration document of this preset."""
        doc = default_document(self.kind)
        doc["truth"]["t"] = self.time
        doc["grid"] = {
            "q_min": self.q_min,
            "q_max": self.q_max,
            "n_points": self.n_points,
        }
        doc["ladder"] = {"replicas": self.replicas, "base": self.base}
        doc["generate"]["nonzero_target"] = self.nonzero_target
        return doc


def _mono(name: str, time: float, **kwargs) -> Preset:
    return Preset(
        name=name, kind=ModelKind.MONODISPERSE, time=time, **kwargs
    )


def _poly(name: str, time: float, **kwargs) -> Preset:
    kwargs.setdefault("q_max", POLY_Q_MAX)
    kwargs.setdefault("replicas", 32)
    kwargs.setdefault("base", 1.7)
    return Preset(
        name=name, kind=ModelKind.POLYDISPERSE, time=time, **kwargs
    )


_PRESET_LIST: List[Preset] = [
    _mono("mono-t10", 10.0),
    _mono("mono-t1", 1.0),
    _mono("mono-t0.1", 0.1),
    _mono("mono-qmin0.4", 10.0, q_min=0.4),
    _mono("mono-qmin2.35", 10.0, q_min=2.35),
    _mono("mono-qmin2.65", 10.0, q_min=2.65),
    _poly("poly-t100", 100.0),
    _poly("poly-t10", 10.0),
    _poly("poly-t1", 1.0),
    _poly("poly-qmin0.2", 100.0, q_min=0.2),
    _poly("poly-qmin0.3", 100.0, q_min=0.3),
    _mono("mono-n11", 10.0, n_points=11, base=2.1),
    _poly("poly-n42", 100.0, n_points=42, base=1.69, nonzero_target=10),
]

PRESETS: Dict[str, Preset] = {preset.name: preset for preset in _PRESET_LIST}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError as exc:
        raise ConfigError(
            f"unknown preset '{name}', choose one of: "
            f"{', '.join(PRESETS)}",
            field="preset",
        ) from exc


def default_document(kind: ModelKind) -> Dict[str, Any]:
    """Built-in configuration of a model kind: the reference true parameters,
    constants, priors and ladder with a t* = 10 (monodisperse) or t* = 100
    (polydisperse) measurement time and desk-scale sweep counts.
    """
    if kind is ModelKind.MONODISPERSE:
        truth = {"R": 10.0, "b": 0.01, "t": 10.0}
        sample_constants = dict(MONO_CONSTANTS)
        grid = {
            "q_min": DEFAULT_Q_MIN,
            "q_max": MONO_Q_MAX,
            "n_points": DEFAULT_N_POINTS,
        }
        ladder = {"replicas": 40, "base": 2.2}
    else:
        truth = {"R": 10.0, "sigma": 2.0, "b": 0.001, "t": 100.0}
        sample_constants = dict(POLY_CONSTANTS)
        grid = {
            "q_min": DEFAULT_Q_MIN,
            "q_max": POLY_Q_MAX,
            "n_points": DEFAULT_N_POINTS,
        }
        ladder = {"replicas": 32, "base": 1.7}

    return {
        "model": {"kind": kind.value},
        "truth": truth,
        "constants": sample_constants,
        "grid": grid,
        "quadrature": {"node_count": 257, "window_halfwidth_sigmas": 6.0},
        "prior": PriorSpec.default(kind).asdict(),
        "ladder": ladder,
        "sampler": {
            "burn_in": constants.DESK_SWEEPS,
            "samples": constants.DESK_SWEEPS,
            "step_sizes": None,
            "adapt_burn_in": True,
            "adapt_interval": 1000,
            "adapt_rate": 2.0,
            "validate_cache": False,
            "exchanges": True,
            "fixed": {},
        },
        "seeds": {"data": 0, "sampler": 0},
        "generate": {"nonzero_target": None},
    }
