"""Poisson cost function, Gamma priors and tempered posteriors.

The cost function is the per-point average negative Poisson log-likelihood

    E(theta) = 1/N sum_i [ I_i - y_i log I_i + log(y_i!) ],

with I_i the model intensity at q_i. The log(y_i!) term does not depend on
theta and cancels in every Metropolis ratio, but it is kept so that reported
E values and exchange probabilities use E exactly as defined above.

All posterior arithmetic is done in log space: exp(-N beta E) under- or
overflows for realistic dataset sizes.

.. module:: inference
    :synopsis: Likelihood, priors and the tempered posterior.
"""

import dataclasses
import math
from typing import Mapping, Tuple, Union

import numpy as np
import numpy.typing as npt
from scipy import special

from sas_bayes_core import exceptions, forward
from sas_bayes_core.datagen import Dataset
from sas_bayes_core.params import (
    ModelKind,
    ModelParams,
    QuadratureSpec,
    SphereConstants,
)

__all__ = [
    "GammaPrior",
    "PriorSpec",
    "CostValue",
    "PoissonPosterior",
    "log_factorial_sum",
    "cost_E",
    "log_prior",
    "log_tempered_posterior",
]

EXACT_LOG_FACTORIAL_LIMIT = 256

_LOG_FACTORIAL_TABLE = np.concatenate(
    ([0.0], np.cumsum(np.log(np.arange(1, EXACT_LOG_FACTORIAL_LIMIT + 1))))
)

Theta = Union[ModelParams, npt.ArrayLike]


def log_factorial_sum(y: npt.ArrayLike) -> Union[float, np.ndarray]:
    """Compute sum_{j=1}^{y} log j = log(y!).

    Counts up to 256 use an exact cumulative sum, larger counts use the
    log-Gamma function.

    Args:
        y: Non-negative integer count(s).
    Returns:
        log(y!) with the same shape as ``y``.
    """
    counts = np.asarray(y, dtype=np.int64)
    if np.any(counts < 0):
        raise exceptions.DomainError("counts must be non-negative")
    small = counts <= EXACT_LOG_FACTORIAL_LIMIT
    result = np.where(
        small,
        _LOG_FACTORIAL_TABLE[np.where(small, counts, 0)],
        special.gammaln(counts + 1.0),
    )
    return float(result) if result.ndim == 0 else result


@dataclasses.dataclass(frozen=True)
class GammaPrior:
    """Gamma distribution with density
    exp(-x / scale) / (scale^shape Gamma(shape)) x^(shape - 1), x > 0.

    Attributes:
        shape: The shape alpha.
        scale: The scale gamma.
    """

    shape: float
    scale: float

    def __post_init__(self):
        if not (self.shape > 0 and self.scale > 0):
            raise exceptions.DomainError(
                "Gamma prior requires positive shape and scale",
                shape=self.shape,
                scale=self.scale,
            )

    @property
    def log_normalizer(self) -> float:
        return self.shape * math.log(self.scale) + special.gammaln(self.shape)

    @property
    def mode(self) -> float:
        """The mode, (shape - 1) scale for shape >= 1 and 0 otherwise."""
        return max(self.shape - 1.0, 0.0) * self.scale

    def log_density(self, x: npt.ArrayLike) -> Union[float, np.ndarray]:
        """Log density at ``x``, -inf outside the support x > 0."""
        x_arr = np.asarray(x, dtype=float)
        inside = x_arr > 0
        safe = np.where(inside, x_arr, 1.0)
        value = np.where(
            inside,
            (self.shape - 1.0) * np.log(safe)
            - safe / self.scale
            - self.log_normalizer,
            -np.inf,
        )
        return float(value) if value.ndim == 0 else value

    def sample(self, generator: np.random.Generator) -> float:
        """Draw one variate (numpy's Marsaglia-Tsang squeeze method)."""
        return float(generator.gamma(self.shape, self.scale))

    def asdict(self) -> dict:
        return dataclasses.asdict(self)


_DEFAULT_PRIORS = {
    "R": GammaPrior(shape=1.5, scale=100.0),
    "sigma": GammaPrior(shape=1.8, scale=50.0),
    "b": GammaPrior(shape=1.8, scale=1.0),
    "t": GammaPrior(shape=1.1, scale=500.0),
}


@dataclasses.dataclass(frozen=True)
class PriorSpec:
    """Factorized Gamma prior over the free parameters of a model.

    Attributes:
        kind: The model whose parameters are covered.
        priors: Exactly one :py:class:`GammaPrior` per free parameter.
    """

    kind: ModelKind
    priors: Mapping[str, GammaPrior]

    def __post_init__(self):
        expected = set(self.kind.parameter_names)
        given = set(self.priors)
        if expected != given:
            raise exceptions.ConfigError(
                f"prior must cover exactly the {self.kind} parameters "
                f"{', '.join(self.kind.parameter_names)}",
                field="prior",
                missing=sorted(expected - given),
                unexpected=sorted(given - expected),
            )
        ordered = {name: self.priors[name] for name in self.names}
        object.__setattr__(self, "priors", ordered)

    @classmethod
    def default(cls, kind: ModelKind) -> "PriorSpec":
        """The empirically chosen defaults: R ~ Gamma(1.5, 100),
        sigma ~ Gamma(1.8, 50), b ~ Gamma(1.8, 1), t ~ Gamma(1.1, 500).
        """
        priors = {name: _DEFAULT_PRIORS[name] for name in kind.parameter_names}
        return cls(kind=kind, priors=priors)

    @classmethod
    def from_dict(
        cls, kind: ModelKind, data: Mapping[str, Mapping]
    ) -> "PriorSpec":
        """Build from ``{name: {"shape": ..., "scale": ...}}``."""
        try:
            priors = {
                name: GammaPrior(
                    shape=float(spec["shape"]), scale=float(spec["scale"])
                )
                for name, spec in data.items()
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise exceptions.ConfigError(
                f"malformed prior specification: {exc}", field="prior"
            ) from exc
        return cls(kind=kind, priors=priors)

    def asdict(self) -> dict:
        return {name: prior.asdict() for name, prior in self.priors.items()}

    @property
    def names(self) -> Tuple[str, ...]:
        return self.kind.parameter_names

    def log_density(self, vectors: npt.ArrayLike) -> Union[float, np.ndarray]:
        """Sum of the per-parameter log densities, for one parameter vector
        or for an array of vectors along the last axis.
        """
        arr = np.asarray(vectors, dtype=float)
        terms = [
            prior.log_density(arr[..., i])
            for i, prior in enumerate(self.priors.values())
        ]
        total = np.sum(terms, axis=0)
        return float(total) if np.ndim(total) == 0 else total

    def sample(self, generator: np.random.Generator) -> np.ndarray:
        """Draw one parameter vector, one coordinate at a time."""
        return np.array(
            [prior.sample(generator) for prior in self.priors.values()]
        )

    def default_step_sizes(self) -> np.ndarray:
        """Random-walk step sizes proportional to the prior means,
        0.05 shape scale per parameter.
        """
        return np.array(
            [0.05 * p.shape * p.scale for p in self.priors.values()]
        )


@dataclasses.dataclass(frozen=True)
class CostValue:
    """Value of the cost function.

    Attributes:
        E: The per-point average negative log-likelihood.
        N: The number of data points averaged over.
    """

    E: float
    N: int

    @property
    def total(self) -> float:
        """N E, the full negative log-likelihood."""
        return self.N * self.E


class PoissonPosterior:
    """The tempered posterior of one dataset under one model.

    Precomputes everything that does not depend on the parameters, which
    makes it the object the sampler evaluates millions of times.
    """

    def __init__(
        self,
        dataset: Dataset,
        prior: PriorSpec,
        constants: SphereConstants,
        quadrature: QuadratureSpec = QuadratureSpec(),
    ):
        self.dataset = dataset
        self.prior = prior
        self.constants = constants
        self.quadrature = quadrature
        self._log_factorials = float(
            np.sum(log_factorial_sum(dataset.y))
        )
        self._counts = dataset.y.astype(float)

    @property
    def kind(self) -> ModelKind:
        return self.prior.kind

    @property
    def n_points(self) -> int:
        return len(self.dataset)

    def intensity(self, theta: np.ndarray) -> np.ndarray:
        return np.atleast_1d(
            forward.intensity_from_vector(
                self.kind,
                self.dataset.q,
                theta,
                self.constants,
                self.quadrature,
            )
        )

    def energy(self, theta: np.ndarray) -> float:
        """The cost E(theta). ``theta`` must lie in the prior support."""
        expected = self.intensity(theta)
        if np.any(expected <= 0):
            raise exceptions.DomainError(
                "model intensity must be positive", theta=list(theta)
            )
        total = (
            np.sum(expected - self._counts * np.log(expected))
            + self._log_factorials
        )
        return float(total) / self.n_points

    def log_prior(self, theta: np.ndarray) -> float:
        return self.prior.log_density(theta)

    def evaluate(self, theta: np.ndarray) -> Tuple[float, float]:
        """Return ``(E, log_prior)``. Outside the prior support the forward
        model is not evaluated and E is reported as +inf.
        """
        prior_value = self.log_prior(theta)
        if prior_value == -np.inf:
            return np.inf, prior_value
        return self.energy(theta), prior_value

    def log_tempered(self, theta: np.ndarray, beta: float) -> float:
        """-N beta E(theta) + log p(theta), unnormalized."""
        _check_beta(beta)
        prior_value = self.log_prior(theta)
        if prior_value == -np.inf or beta == 0:
            return prior_value
        return -self.n_points * beta * self.energy(theta) + prior_value


def _as_vector(theta: Theta) -> np.ndarray:
    if hasattr(theta, "as_array"):
        return theta.as_array()  # type: ignore
    return np.asarray(theta, dtype=float)


def _check_beta(beta: float) -> None:
    if not 0.0 <= beta <= 1.0:
        raise exceptions.DomainError(
            "inverse temperature must lie in [0, 1]", beta=beta
        )


def cost_E(
    theta: ModelParams,
    dataset: Dataset,
    constants: SphereConstants,
    quadrature: QuadratureSpec = QuadratureSpec(),
) -> CostValue:
    """Evaluate the cost function of ``dataset`` at ``theta``.

    Raises:
        :py:class:`~sas_bayes_core.exceptions.DomainError` if ``theta`` is
        outside the parameter domain.
    """
    theta.validate()
    posterior = PoissonPosterior(
        dataset, PriorSpec.default(theta.kind), constants, quadrature
    )
    return CostValue(E=posterior.energy(theta.as_array()), N=len(dataset))


def log_prior(theta: Theta, spec: PriorSpec) -> float:
    """Log prior density of ``theta``, -inf outside the support."""
    return spec.log_density(_as_vector(theta))


def log_tempered_posterior(
    theta: Theta,
    beta: float,
    dataset: Dataset,
    spec: PriorSpec,
    constants: SphereConstants,
    quadrature: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Unnormalized log posterior of a replica at inverse temperature
    ``beta``: -N beta E(theta) + log p(theta). At beta = 0 this is the log
    prior alone.
    """
    posterior = PoissonPosterior(dataset, spec, constants, quadrature)
    return posterior.log_tempered(_as_vector(theta), beta)
