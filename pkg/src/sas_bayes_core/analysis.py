"""Summaries of the beta = 1 chain.

Turns retained samples into MAP estimates, 99% credible intervals reported
as ``MAP +p -q``, histograms, fitted curves and normalized residuals.

Credible intervals are equal-tailed: the lower and upper limits are the
(1 - level)/2 and (1 + level)/2 sample quantiles, interpolated linearly
between order statistics (numpy's ``"linear"`` quantile method). Multi-peaked
posteriors get no special treatment, an interval may span several peaks and
the histograms are the diagnostic for that.

.. module:: analysis
    :synopsis: MAP estimates, credible intervals, histograms and residuals.
"""

import dataclasses
from typing import Dict, Mapping, Optional, Tuple

import numpy as np
import numpy.typing as npt

from sas_bayes_core import exceptions, forward
from sas_bayes_core.datagen import Dataset, count_nonzero
from sas_bayes_core.inference import PoissonPosterior
from sas_bayes_core.params import (
    ModelParams,
    QuadratureSpec,
    SphereConstants,
    params_from_vector,
)
from sas_bayes_core.sampler import PosteriorSamples

__all__ = [
    "SCHEMA_VERSION",
    "DEFAULT_LEVEL",
    "DEFAULT_BINS",
    "MIN_SAMPLES",
    "MapResult",
    "CredibleInterval",
    "Histogram",
    "ResidualTable",
    "FittedCurve",
    "FitReport",
    "map_estimate",
    "credible_interval",
    "make_histogram",
    "residual_table",
    "fitted_curve",
    "fit_report",
    "interval_table",
]

SCHEMA_VERSION = 1
DEFAULT_LEVEL = 0.99
DEFAULT_BINS = 64
MIN_SAMPLES = 100


@dataclasses.dataclass(frozen=True)
class MapResult:
    """The sample of the beta = 1 chain with the largest unnormalized
    posterior -N E + log p.

    Attributes:
        params: The MAP parameters.
        log_posterior: -N E + log p at the MAP sample.
        sample_index: Index of the sample in the chain.
    """

    params: ModelParams
    log_posterior: float
    sample_index: int


@dataclasses.dataclass(frozen=True)
class CredibleInterval:
    """An equal-tailed credible interval packaged with the MAP value.

    Attributes:
        map_value: The MAP value of the parameter.
        lower: Lower limit of the interval.
        upper: Upper limit of the interval.
        level: Posterior mass inside the interval.
    """

    map_value: float
    lower: float
    upper: float
    level: float = DEFAULT_LEVEL

    @property
    def plus(self) -> float:
        """Distance from the MAP value to the upper limit."""
        return self.upper - self.map_value

    @property
    def minus(self) -> float:
        """Distance from the MAP value to the lower limit."""
        return self.map_value - self.lower

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def covers(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    def __str__(self):
        return f"{self.map_value:.4g} +{self.plus:.3g} -{self.minus:.3g}"


@dataclasses.dataclass(frozen=True, eq=False)
class Histogram:
    """Equal-width histogram of one parameter.

    Attributes:
        name: The parameter name.
        edges: ``bins + 1`` bin edges spanning [min, max] of the samples.
        counts: Samples per bin.
        rescale: Divisor applied to the samples before binning, if any.
    """

    name: str
    edges: np.ndarray
    counts: np.ndarray
    rescale: Optional[float] = None

    @property
    def bins(self) -> int:
        return len(self.counts)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])


@dataclasses.dataclass(frozen=True, eq=False)
class ResidualTable:
    """Normalized residuals (y - I) / I at the points with y > 0.

    Attributes:
        q: Scattering vector magnitudes, increasing.
        residuals: The normalized residuals.
    """

    q: np.ndarray
    residuals: np.ndarray

    def __len__(self) -> int:
        return len(self.q)


@dataclasses.dataclass(frozen=True, eq=False)
class FittedCurve:
    """Model intensity evaluated on the dataset grid."""

    q: np.ndarray
    intensity: np.ndarray


def map_estimate(
    samples: PosteriorSamples, posterior: PoissonPosterior
) -> MapResult:
    """Find the MAP sample of the beta = 1 chain. Ties go to the earliest
    sample.
    """
    chain = samples.target_params
    if len(chain) == 0:
        raise exceptions.InsufficientSamplesError(
            "the beta = 1 chain is empty"
        )
    log_posterior = (
        -posterior.n_points * samples.target_energies
        + posterior.prior.log_density(chain)
    )
    index = int(np.argmax(log_posterior))
    return MapResult(
        params=params_from_vector(samples.kind, chain[index]),
        log_posterior=float(log_posterior[index]),
        sample_index=index,
    )


def credible_interval(
    chain: npt.ArrayLike, map_value: float, level: float = DEFAULT_LEVEL
) -> CredibleInterval:
    """Equal-tailed credible interval of one parameter.

    Args:
        chain: Samples of the parameter.
        map_value: The MAP value to report the interval around.
        level: Posterior mass inside the interval.
    Returns:
        The interval.
    Raises:
        :py:class:`~sas_bayes_core.exceptions.InsufficientSamplesError` with
        fewer than :py:const:`MIN_SAMPLES` samples.
    """
    values = np.asarray(chain, dtype=float)
    if len(values) < MIN_SAMPLES:
        raise exceptions.InsufficientSamplesError(
            f"credible intervals need at least {MIN_SAMPLES} samples",
            samples=len(values),
        )
    if not 0 < level < 1:
        raise exceptions.DomainError("level must lie in (0, 1)", level=level)
    tail = (1.0 - level) / 2.0
    lower, upper = np.quantile(values, [tail, 1.0 - tail], method="linear")
    return CredibleInterval(
        map_value=float(map_value),
        lower=float(lower),
        upper=float(upper),
        level=level,
    )


def make_histogram(
    name: str,
    chain: npt.ArrayLike,
    bins: int = DEFAULT_BINS,
    rescale: Optional[float] = None,
) -> Histogram:
    """Bin samples into ``bins`` equal-width bins over their [min, max].

    Args:
        name: The parameter name.
        chain: Samples of the parameter.
        bins: Number of bins.
        rescale: If given, samples are divided by it first, e.g. t / t*.
    Returns:
        The histogram.
    """
    if bins < 1:
        raise exceptions.DomainError("bins must be positive", bins=bins)
    values = np.asarray(chain, dtype=float)
    if len(values) == 0:
        raise exceptions.InsufficientSamplesError("cannot bin an empty chain")
    if rescale is not None:
        values = values / rescale
    counts, edges = np.histogram(
        values, bins=bins, range=(values.min(), values.max())
    )
    return Histogram(name=name, edges=edges, counts=counts, rescale=rescale)


def residual_table(
    dataset: Dataset,
    params: ModelParams,
    constants: SphereConstants,
    quadrature: QuadratureSpec = QuadratureSpec(),
) -> ResidualTable:
    """Residuals normalized by the model intensity, omitting zero-count
    points.
    """
    mask = dataset.nonzero
    expected = np.atleast_1d(
        forward.intensity(dataset.q[mask], params, constants, quadrature)
    )
    return ResidualTable(
        q=dataset.q[mask],
        residuals=(dataset.y[mask] - expected) / expected,
    )


def fitted_curve(
    dataset: Dataset,
    params: ModelParams,
    constants: SphereConstants,
    quadrature: QuadratureSpec = QuadratureSpec(),
) -> FittedCurve:
    """Model intensity on every point of the dataset grid."""
    return FittedCurve(
        q=dataset.q,
        intensity=np.atleast_1d(
            forward.intensity(dataset.q, params, constants, quadrature)
        ),
    )


@dataclasses.dataclass(frozen=True, eq=False)
class FitReport:
    """Everything a fit produces apart from the raw chains.

    Attributes:
        samples: The samples the report was computed from.
        map_result: The MAP estimate.
        intervals: Credible interval per parameter name.
        histograms: Histogram per parameter name.
        curve: The MAP curve on the dataset grid.
        truth_curve: The true curve, for synthetic data.
        residuals: Normalized residuals of the MAP curve.
        n_points: Number of data points.
        n_nonzero: Number of data points with y > 0.
        truth: True parameters, for synthetic data.
    """

    samples: PosteriorSamples
    map_result: MapResult
    intervals: Mapping[str, CredibleInterval]
    histograms: Mapping[str, Histogram]
    curve: FittedCurve
    truth_curve: Optional[FittedCurve]
    residuals: ResidualTable
    n_points: int
    n_nonzero: int
    truth: Optional[ModelParams] = None

    def to_dict(self) -> Dict:
        """The JSON document of the report. Wall time and histogram bins
        are deliberately absent, so regenerating a report from persisted
        chains reproduces it byte for byte.
        """
        names = self.samples.parameter_names
        return {
            "schema_version": SCHEMA_VERSION,
            "model": self.samples.kind.value,
            "n_points": self.n_points,
            "n_nonzero": self.n_nonzero,
            "n_samples": self.samples.n_samples,
            "credible_level": _level(self.intervals),
            "parameters": {
                name: {
                    "map": interval.map_value,
                    "plus": interval.plus,
                    "minus": interval.minus,
                }
                for name, interval in self.intervals.items()
            },
            "map": {
                "log_posterior": self.map_result.log_posterior,
                "sample_index": self.map_result.sample_index,
                "energy": float(
                    self.samples.target_energies[self.map_result.sample_index]
                ),
            },
            "acceptance": {
                "moves": self.samples.acceptance_rates.tolist(),
                "exchanges": self.samples.exchange_rates.tolist(),
            },
            "truth": (
                dict(zip(names, self.truth.as_array().tolist()))
                if self.truth is not None
                else None
            ),
        }


def _level(intervals: Mapping[str, CredibleInterval]) -> float:
    return next(iter(intervals.values())).level


def fit_report(
    samples: PosteriorSamples,
    posterior: PoissonPosterior,
    level: float = DEFAULT_LEVEL,
    bins: int = DEFAULT_BINS,
) -> FitReport:
    """Compute the full report of a run.

    For synthetic datasets the true parameters are taken from the dataset
    provenance, and the histogram of t is expressed as t / t*.
    """
    dataset = posterior.dataset
    map_result = map_estimate(samples, posterior)
    map_vector = map_result.params.as_array()
    truth = dataset.provenance.truth if dataset.provenance else None

    intervals: Dict[str, CredibleInterval] = {}
    histograms: Dict[str, Histogram] = {}
    for i, name in enumerate(samples.parameter_names):
        chain = samples.target_params[:, i]
        intervals[name] = credible_interval(chain, map_vector[i], level)
        rescale = truth.time if (truth is not None and name == "t") else None
        histograms[name] = make_histogram(name, chain, bins, rescale)

    return FitReport(
        samples=samples,
        map_result=map_result,
        intervals=intervals,
        histograms=histograms,
        curve=fitted_curve(
            dataset,
            map_result.params,
            posterior.constants,
            posterior.quadrature,
        ),
        truth_curve=(
            fitted_curve(
                dataset, truth, posterior.constants, posterior.quadrature
            )
            if truth is not None
            else None
        ),
        residuals=residual_table(
            dataset,
            map_result.params,
            posterior.constants,
            posterior.quadrature,
        ),
        n_points=len(dataset),
        n_nonzero=count_nonzero(dataset),
        truth=truth,
    )


def interval_table(report: FitReport) -> Tuple[list, list]:
    """Rows and headers of the terminal summary of a report."""
    headers = ["parameter", "MAP", "+p", "-q", "lower", "upper"]
    if report.truth is not None:
        headers.append("truth")
    truth = (
        dict(zip(report.samples.parameter_names, report.truth.as_array()))
        if report.truth is not None
        else {}
    )
    rows = []
    for name, interval in report.intervals.items():
        row = [
            name,
            interval.map_value,
            interval.plus,
            interval.minus,
            interval.lower,
            interval.upper,
        ]
        if truth:
            row.append(truth[name])
        rows.append(row)
    return rows, headers
