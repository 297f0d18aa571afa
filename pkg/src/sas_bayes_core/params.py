"""Parameter containers for the sphere models.

.. module:: params
    :synopsis: Model kinds, physical constants and parameter vectors.
"""

import dataclasses
import enum
from typing import Mapping, Tuple, Union, Sequence

import numpy as np

from sas_bayes_core import exceptions

__all__ = [
    "ModelKind",
    "SphereConstants",
    "MonodisperseParams",
    "PolydisperseParams",
    "ModelParams",
    "QuadratureSpec",
    "params_from_vector",
    "params_from_mapping",
    "params_to_mapping",
]


class ModelKind(enum.Enum):
    """The two forward models."""

    MONODISPERSE = "monodisperse"
    POLYDISPERSE = "polydisperse"

    @property
    def parameter_names(self) -> Tuple[str, ...]:
        """Names of the free parameters, in vector order."""
        if self is ModelKind.MONODISPERSE:
            return ("R", "b", "t")
        return ("R", "sigma", "b", "t")

    @property
    def dim(self) -> int:
        return len(self.parameter_names)

    def __str__(self):
        return self.value


@dataclasses.dataclass(frozen=True)
class SphereConstants:
    """Fixed physical constants of a sample.

    Attributes:
        phi: Volume fraction.
        rho_s: Scattering length density of the solvent (nm^-2).
        rho_m: Scattering length density of the medium (nm^-2).
    """

    phi: float
    rho_s: float
    rho_m: float

    def __post_init__(self):
        if not self.phi > 0:
            raise exceptions.DomainError(
                "volume fraction must be positive", phi=self.phi
            )

    @property
    def contrast(self) -> float:
        """The scattering contrast, rho_s - rho_m. A zero contrast reduces
        every intensity to pure background.
        """
        return self.rho_s - self.rho_m

    def asdict(self) -> dict:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class MonodisperseParams:
    """Free parameters of the monodisperse model.

    Values are not checked on construction, as proposals outside the prior
    support are legitimate objects to evaluate a prior on. Call
    :py:meth:`validate` before evaluating a forward model.

    Attributes:
        radius: Sphere radius R_M (nm).
        background: Additive background b.
        time: Measurement time t (dimensionless scale).
    """

    radius: float
    background: float
    time: float

    kind = ModelKind.MONODISPERSE

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.radius, self.background, self.time], dtype=float
        )

    def validate(self) -> None:
        _check_positive(self)


@dataclasses.dataclass(frozen=True)
class PolydisperseParams:
    """Free parameters of the polydisperse model.

    Attributes:
        radius: Mean radius R_P (nm).
        sigma: Standard deviation of the Gaussian size distribution (nm).
        background: Additive background b.
        time: Measurement time t.
    """

    radius: float
    sigma: float
    background: float
    time: float

    kind = ModelKind.POLYDISPERSE

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.radius, self.sigma, self.background, self.time], dtype=float
        )

    def validate(self) -> None:
        _check_positive(self)


ModelParams = Union[MonodisperseParams, PolydisperseParams]


def _check_positive(params: ModelParams) -> None:
    for field in dataclasses.fields(params):
        value = getattr(params, field.name)
        if not value > 0:
            raise exceptions.DomainError(
                f"{field.name} must be positive", **{field.name: value}
            )


def params_from_vector(
    kind: ModelKind, vector: Sequence[float]
) -> ModelParams:
    """Build a parameter object from a vector in
    :py:attr:`ModelKind.parameter_names` order.
    """
    values = [float(v) for v in vector]
    if len(values) != kind.dim:
        raise exceptions.DomainError(
            f"{kind} model takes {kind.dim} parameters, got {len(values)}"
        )
    if kind is ModelKind.MONODISPERSE:
        return MonodisperseParams(*values)
    return PolydisperseParams(*values)


def params_from_mapping(
    kind: ModelKind, mapping: Mapping[str, float]
) -> ModelParams:
    """Build a parameter object from a ``name -> value`` mapping keyed by
    :py:attr:`ModelKind.parameter_names`.
    """
    missing = set(kind.parameter_names) - set(mapping)
    extra = set(mapping) - set(kind.parameter_names)
    if missing or extra:
        raise exceptions.ConfigError(
            f"parameters of the {kind} model must be exactly "
            f"{', '.join(kind.parameter_names)}",
            missing=sorted(missing),
            unexpected=sorted(extra),
        )
    return params_from_vector(
        kind, [mapping[name] for name in kind.parameter_names]
    )


def params_to_mapping(params: ModelParams) -> dict:
    """Inverse of :py:func:`params_from_mapping`."""
    return dict(
        zip(params.kind.parameter_names, map(float, params.as_array()))
    )


@dataclasses.dataclass(frozen=True)
class QuadratureSpec:
    """Discretization of the size-distribution integral.

    Attributes:
        node_count: Number of composite Simpson nodes. Odd, at least 33.
        window_halfwidth_sigmas: Half-width of the integration window around
            the mean radius, in standard deviations. At least 5.
    """

    node_count: int = 257
    window_halfwidth_sigmas: float = 6.0

    def __post_init__(self):
        if self.node_count < 33 or self.node_count % 2 == 0:
            raise exceptions.DomainError(
                "node_count must be odd and at least 33",
                node_count=self.node_count,
            )
        if not self.window_halfwidth_sigmas >= 5:
            raise exceptions.DomainError(
                "window_halfwidth_sigmas must be at least 5",
                window_halfwidth_sigmas=self.window_halfwidth_sigmas,
            )

    def asdict(self) -> dict:
        return dataclasses.asdict(self)
