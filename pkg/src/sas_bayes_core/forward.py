"""Noise-free scattering intensities of dilute spheres.

Two models are provided. The monodisperse model has a closed form. The
polydisperse model averages the monodisperse structure factor over a Gaussian
size distribution, which is integrated with composite Simpson quadrature over
a window of ``window_halfwidth_sigmas`` standard deviations around the mean
radius, clipped at r = 0. The Gaussian is *not* renormalized after clipping.

All intensities are in one consistent "model intensity" unit, including the
background, and are scaled by the measurement time so that they are the
expected photon counts of a Poisson measurement.

.. module:: forward
    :synopsis: Forward models for mono- and polydisperse spheres.
"""

import math
from typing import Union

import numpy as np
import numpy.typing as npt
from scipy import integrate

from sas_bayes_core import exceptions
from sas_bayes_core.params import (
    ModelKind,
    ModelParams,
    MonodisperseParams,
    PolydisperseParams,
    QuadratureSpec,
    SphereConstants,
)

__all__ = [
    "SERIES_THRESHOLD",
    "sphere_form_amplitude",
    "sphere_volume",
    "monodisperse_intensity",
    "gaussian_size_pdf",
    "mean_volume",
    "polydisperse_intensity",
    "intensity",
    "intensity_from_vector",
]

SERIES_THRESHOLD = 1e-2

ArrayOrFloat = Union[float, np.ndarray]

_DEFAULT_QUADRATURE = QuadratureSpec()


def sphere_form_amplitude(x: npt.ArrayLike) -> ArrayOrFloat:
    """Normalized scattering amplitude of a homogeneous sphere,
    3 (sin x - x cos x) / x^3.

    Below :py:const:`SERIES_THRESHOLD` the Taylor series
    1 - x^2/10 + x^4/280 is used instead, as the direct formula loses all
    precision to cancellation near 0.

    Args:
        x: The dimensionless product qR, x >= 0. Scalar or array.
    Returns:
        The amplitude, with the same shape as ``x``.
    """
    x_arr = np.asarray(x, dtype=float)
    small = x_arr < SERIES_THRESHOLD
    # avoid dividing by zero in the branch that np.where discards
    safe = np.where(small, 1.0, x_arr)
    direct = 3.0 * (np.sin(safe) - safe * np.cos(safe)) / safe**3
    x2 = x_arr * x_arr
    series = 1.0 - x2 / 10.0 + x2 * x2 / 280.0
    result = np.where(small, series, direct)
    return float(result) if result.ndim == 0 else result


def sphere_volume(radius: npt.ArrayLike) -> ArrayOrFloat:
    """Volume 4/3 pi r^3 of a sphere."""
    return 4.0 / 3.0 * math.pi * np.asarray(radius, dtype=float) ** 3


def monodisperse_intensity(
    q: npt.ArrayLike, params: MonodisperseParams, constants: SphereConstants
) -> ArrayOrFloat:
    """Expected counts for identical spheres,
    ((phi / V) (drho V Phi(qR))^2 + b) t.

    Args:
        q: Scattering vector magnitudes (nm^-1), q >= 0.
        params: Radius, background and measurement time.
        constants: Volume fraction and scattering length densities.
    Returns:
        The intensity at every q.
    Raises:
        :py:class:`~sas_bayes_core.exceptions.DomainError` if a parameter is
        not positive.
    """
    params.validate()
    return _monodisperse(
        _as_q(q),
        params.radius,
        params.background,
        params.time,
        constants,
    )


def _monodisperse(
    q: np.ndarray,
    radius: float,
    background: float,
    time: float,
    constants: SphereConstants,
) -> ArrayOrFloat:
    volume = sphere_volume(radius)
    amplitude = constants.contrast * volume * sphere_form_amplitude(q * radius)
    return (constants.phi / volume * amplitude**2 + background) * time


def gaussian_size_pdf(
    r: npt.ArrayLike, mean_radius: float, sigma: float
) -> ArrayOrFloat:
    """Density of the Gaussian size distribution at radius ``r``."""
    if not sigma > 0:
        raise exceptions.DomainError("sigma must be positive", sigma=sigma)
    z = (np.asarray(r, dtype=float) - mean_radius) / sigma
    result = np.exp(-0.5 * z * z) / (sigma * math.sqrt(2.0 * math.pi))
    return float(result) if np.ndim(result) == 0 else result


def mean_volume(mean_radius: float, sigma: float) -> float:
    """Mean particle volume under the Gaussian size distribution,
    4/3 pi R^3 (1 + 3 sigma^2 / R^2).
    """
    if not mean_radius > 0 or sigma < 0:
        raise exceptions.DomainError(
            "mean radius must be positive and sigma non-negative",
            mean_radius=mean_radius,
            sigma=sigma,
        )
    return (
        4.0
        / 3.0
        * math.pi
        * mean_radius**3
        * (1.0 + 3.0 * sigma**2 / mean_radius**2)
    )


def polydisperse_intensity(
    q: npt.ArrayLike,
    params: PolydisperseParams,
    constants: SphereConstants,
    quadrature: QuadratureSpec = _DEFAULT_QUADRATURE,
) -> ArrayOrFloat:
    """Expected counts for spheres with Gaussian distributed radii,
    ((phi / <V>) int F(q, r)^2 f(r) dr + b) t with
    F(q, r) = drho V(r) Phi(qr).

    Args:
        q: Scattering vector magnitudes (nm^-1), q >= 0.
        params: Mean radius, sigma, background and measurement time.
        constants: Volume fraction and scattering length densities.
        quadrature: Discretization of the radius integral.
    Returns:
        The intensity at every q.
    Raises:
        :py:class:`~sas_bayes_core.exceptions.DomainError` if a parameter is
        not positive.
    """
    params.validate()
    return _polydisperse(
        _as_q(q),
        params.radius,
        params.sigma,
        params.background,
        params.time,
        constants,
        quadrature,
    )


def _polydisperse(
    q: np.ndarray,
    mean_radius: float,
    sigma: float,
    background: float,
    time: float,
    constants: SphereConstants,
    quadrature: QuadratureSpec,
) -> ArrayOrFloat:
    halfwidth = quadrature.window_halfwidth_sigmas * sigma
    upper = mean_radius + halfwidth
    if upper <= 0:
        raise exceptions.QuadratureError(
            "integration window collapsed",
            mean_radius=mean_radius,
            sigma=sigma,
        )
    lower = max(0.0, mean_radius - halfwidth)
    radii = np.linspace(lower, upper, quadrature.node_count)
    weights = gaussian_size_pdf(radii, mean_radius, sigma)

    volumes = sphere_volume(radii)
    amplitudes = (
        constants.contrast
        * volumes
        * sphere_form_amplitude(np.multiply.outer(q, radii))
    )
    integral = integrate.simpson(amplitudes**2 * weights, x=radii, axis=-1)

    return (
        constants.phi / mean_volume(mean_radius, sigma) * integral
        + background
    ) * time


def intensity(
    q: npt.ArrayLike,
    params: ModelParams,
    constants: SphereConstants,
    quadrature: QuadratureSpec = _DEFAULT_QUADRATURE,
) -> ArrayOrFloat:
    """Dispatch to the forward model matching the kind of ``params``."""
    if params.kind is ModelKind.MONODISPERSE:
        return monodisperse_intensity(q, params, constants)
    return polydisperse_intensity(q, params, constants, quadrature)


def intensity_from_vector(
    kind: ModelKind,
    q: np.ndarray,
    vector: np.ndarray,
    constants: SphereConstants,
    quadrature: QuadratureSpec = _DEFAULT_QUADRATURE,
) -> np.ndarray:
    """Evaluate a forward model on a raw parameter vector, skipping
    validation. This is the hot path of the sampler, which only calls it for
    vectors inside the prior support.
    """
    if kind is ModelKind.MONODISPERSE:
        radius, background, time = vector
        return _monodisperse(q, radius, background, time, constants)
    radius, sigma, background, time = vector
    return _polydisperse(
        q, radius, sigma, background, time, constants, quadrature
    )


def _as_q(q: npt.ArrayLike) -> np.ndarray:
    q_arr = np.asarray(q, dtype=float)
    if np.any(q_arr < 0):
        raise exceptions.DomainError("q must be non-negative")
    return q_arr
