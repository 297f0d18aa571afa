"""Independent reference computations to test the sampler and the cost
function against.

.. module:: oracles
    :synopsis: Reference computations for tests.
"""

import dataclasses

import numpy as np
import numpy.typing as npt
from scipy import integrate, signal, stats

from sas_bayes_core import PoissonPosterior

__all__ = [
    "GridPosterior",
    "poisson_pmf_product",
    "grid_posterior",
    "has_separated_peaks",
]


def poisson_pmf_product(y: npt.ArrayLike, intensity: npt.ArrayLike) -> float:
    """Likelihood of counts ``y`` as a product of Poisson probabilities with
    means ``intensity``, computed with scipy rather than through the cost
    function.
    """
    return float(np.prod(stats.poisson.pmf(np.asarray(y), intensity)))


@dataclasses.dataclass(frozen=True)
class GridPosterior:
    """A one-dimensional posterior tabulated on a dense grid.

    Attributes:
        values: The grid.
        density: The normalized posterior density on the grid.
    """

    values: np.ndarray
    density: np.ndarray

    @property
    def mean(self) -> float:
        weighted = self.values * self.density
        return float(integrate.trapezoid(weighted, self.values))

    @property
    def variance(self) -> float:
        centered = (self.values - self.mean) ** 2
        return float(integrate.trapezoid(centered * self.density, self.values))

    def quantile(self, probability: float) -> float:
        cumulative = integrate.cumulative_trapezoid(
            self.density, self.values, initial=0.0
        )
        return float(np.interp(probability, cumulative, self.values))

    @property
    def median(self) -> float:
        return self.quantile(0.5)

    @property
    def interquartile_range(self) -> float:
        return self.quantile(0.75) - self.quantile(0.25)

    @property
    def edge_ratio(self) -> float:
        """Density at the upper end of the grid relative to the peak. Close
        to zero when the grid holds essentially all of the mass.
        """
        return float(self.density[-1] / self.density.max())


def grid_posterior(
    posterior: PoissonPosterior,
    theta: npt.ArrayLike,
    index: int,
    grid: npt.ArrayLike,
) -> GridPosterior:
    """Tabulate the beta = 1 posterior of one parameter with all others held
    at their values in ``theta``.

    Args:
        posterior: The posterior to evaluate.
        theta: A full parameter vector, providing the held values.
        index: Index of the free parameter.
        grid: Values of the free parameter to evaluate at. Must cover
            essentially all of the posterior mass.
    Returns:
        The normalized posterior on the grid.
    """
    values = np.asarray(grid, dtype=float)
    base = np.asarray(theta, dtype=float)
    log_density = np.empty_like(values)
    for i, value in enumerate(values):
        point = base.copy()
        point[index] = value
        log_density[i] = posterior.log_tempered(point, beta=1.0)
    density = np.exp(log_density - log_density.max())
    density /= integrate.trapezoid(density, values)
    return GridPosterior(values=values, density=density)


def has_separated_peaks(
    counts: npt.ArrayLike, min_separation: int = 5, max_trough: float = 0.5
) -> bool:
    """Whether a histogram has two clearly separated peaks.

    The two highest local maxima must lie at least ``min_separation`` bins
    apart, and the lowest bin between them must fall below ``max_trough``
    times the lower of the two.
    """
    counts = np.asarray(counts, dtype=float)
    # pad so that maxima in the outermost bins are found too
    padded = np.concatenate([[-1.0], counts, [-1.0]])
    peaks = signal.find_peaks(padded)[0] - 1
    if len(peaks) < 2:
        return False
    first, second = sorted(peaks[np.argsort(counts[peaks])[-2:]])
    if second - first < min_separation:
        return False
    trough = counts[first : second + 1].min()
    return bool(trough < max_trough * min(counts[first], counts[second]))
