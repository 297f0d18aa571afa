"""Replica-exchange Monte Carlo.

``L`` replicas sample the tempered posteriors
p(theta | D, beta_l) ~ exp(-N beta_l E(theta)) p(theta) for an inverse
temperature ladder 0 = beta_1 < ... < beta_L = 1. One sweep is a random-walk
Metropolis update of every replica followed by one ascending pass of
neighbor exchanges. Only the parameter payloads move between replicas, the
inverse temperatures stay with their slots.

Randomness comes from named streams (see :py:mod:`sas_bayes_core.rng`): slot
``l`` draws from ``(seed, "replica", l)`` and the exchange pass from
``(seed, "exchange")``. Every sweep consumes a fixed number of variates from
each stream, so the variates used at sweep ``s`` sit at a fixed offset of
their stream and a run is identical at any thread count.

.. module:: sampler
    :synopsis: Replica-exchange Metropolis sampler.
"""

import concurrent.futures
import contextlib
import dataclasses
import math
import time
from typing import (
    Any,
    Dict,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import more_itertools
import numpy as np

from sas_bayes_core import exceptions, io, log, rng
from sas_bayes_core.datagen import Dataset
from sas_bayes_core.inference import PoissonPosterior, PriorSpec
from sas_bayes_core.params import ModelKind, QuadratureSpec, SphereConstants

__all__ = [
    "LadderSpec",
    "SamplerConfig",
    "ReplicaState",
    "PosteriorSamples",
    "build_ladder",
    "metropolis_sweep",
    "exchange_pass",
    "step_size_adapt",
    "run_emc",
]

TARGET_ACCEPTANCE = 0.3

REPLICA_STREAM = "replica"
EXCHANGE_STREAM = "exchange"


@dataclasses.dataclass(frozen=True)
class LadderSpec:
    """Inverse temperature ladder beta_1 = 0 < beta_2 < ... < beta_L = 1
    with beta_l = base^(l - L) for l >= 2.

    Attributes:
        base: The geometric base.
        betas: The inverse temperatures, in slot order.
    """

    base: float
    betas: Tuple[float, ...]

    @property
    def replicas(self) -> int:
        return len(self.betas)

    def asdict(self) -> dict:
        return dict(replicas=self.replicas, base=self.base)


def build_ladder(replicas: int, base: float) -> LadderSpec:
    """Build a geometric ladder with ``replicas`` slots.

    Args:
        replicas: The number of replicas L, at least 2.
        base: The geometric base, greater than 1.
    Returns:
        The ladder.
    """
    if replicas < 2 or not base > 1:
        raise exceptions.DomainError(
            "ladder requires at least 2 replicas and a base > 1",
            replicas=replicas,
            base=base,
        )
    betas = (0.0,) + tuple(
        float(base ** (slot - replicas)) for slot in range(2, replicas + 1)
    )
    return LadderSpec(base=float(base), betas=betas)


@dataclasses.dataclass(frozen=True)
class SamplerConfig:
    """Settings of one sampling run.

    Attributes:
        ladder: The inverse temperature ladder.
        burn_in: Sweeps discarded before sampling, S0 >= 0.
        samples: Sweeps retained, S1 >= 1.
        seed: The sampler seed.
        step_sizes: Initial random-walk half-widths, one per parameter. None
            means :py:meth:`PriorSpec.default_step_sizes`.
        adapt_burn_in: Whether to adapt step sizes during burn-in.
        adapt_interval: Sweeps per adaptation window.
        adapt_rate: Rate of the multiplicative step size update.
        validate_cache: Recompute and check every cached cost after each
            sweep. Slow, for debugging only.
        exchanges: Run the exchange pass after every sweep. Without it the
            replicas are independent Metropolis chains.
        fixed: Parameters held at a given value instead of being sampled,
            e.g. ``{"b": 0.01, "t": 10.0}``.
    """

    ladder: LadderSpec
    burn_in: int
    samples: int
    seed: int = 0
    step_sizes: Optional[Tuple[float, ...]] = None
    adapt_burn_in: bool = True
    adapt_interval: int = 1000
    adapt_rate: float = 2.0
    validate_cache: bool = False
    exchanges: bool = True
    fixed: Mapping[str, float] = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        if self.burn_in < 0:
            raise exceptions.ConfigError(
                "burn-in must be non-negative",
                field="sampler.burn_in",
                burn_in=self.burn_in,
            )
        if self.samples < 1:
            raise exceptions.ConfigError(
                "at least one sample is required",
                field="sampler.samples",
                samples=self.samples,
            )
        if self.step_sizes is not None and not all(
            s > 0 for s in self.step_sizes
        ):
            raise exceptions.ConfigError(
                "step sizes must be positive",
                field="sampler.step_sizes",
                step_sizes=self.step_sizes,
            )
        if self.adapt_interval < 1 or not self.adapt_rate > 0:
            raise exceptions.ConfigError(
                "adaptation needs a positive interval and rate",
                field="sampler.adapt_interval",
                adapt_interval=self.adapt_interval,
                adapt_rate=self.adapt_rate,
            )
        if self.seed < 0:
            raise exceptions.ConfigError(
                "seed must be non-negative", field="seeds.sampler"
            )

    @property
    def total_sweeps(self) -> int:
        return self.burn_in + self.samples

    def asdict(self) -> Dict[str, Any]:
        return dict(
            ladder=self.ladder.asdict(),
            burn_in=self.burn_in,
            samples=self.samples,
            seed=self.seed,
            step_sizes=(
                list(self.step_sizes) if self.step_sizes is not None else None
            ),
            adapt_burn_in=self.adapt_burn_in,
            adapt_interval=self.adapt_interval,
            adapt_rate=self.adapt_rate,
            validate_cache=self.validate_cache,
            exchanges=self.exchanges,
            fixed=dict(self.fixed),
        )


@dataclasses.dataclass(frozen=True)
class ReplicaState:
    """The payload of one replica slot.

    Attributes:
        theta: The parameter vector.
        energy: Cached E(theta).
        log_prior: Cached log p(theta).
        beta: The inverse temperature of the slot.
    """

    theta: np.ndarray
    energy: float
    log_prior: float
    beta: float

    def log_posterior(self, n_points: int) -> float:
        return -n_points * self.beta * self.energy + self.log_prior


def metropolis_sweep(
    state: ReplicaState,
    posterior: PoissonPosterior,
    step_sizes: np.ndarray,
    generator: np.random.Generator,
) -> Tuple[ReplicaState, bool]:
    """One random-walk Metropolis update of a replica.

    Proposes theta' = theta + step_sizes * Uniform(-1, 1) jointly over all
    coordinates and accepts it with probability
    min(1, p(theta' | D, beta) / p(theta | D, beta)). Proposals outside the
    prior support are always rejected.

    Exactly ``dim + 1`` uniforms are drawn from ``generator`` per call.

    Returns:
        The new state and whether the proposal was accepted.
    """
    shift = generator.uniform(-1.0, 1.0, size=len(state.theta))
    u = generator.uniform()
    proposal = state.theta + step_sizes * shift

    proposal_prior = posterior.log_prior(proposal)
    if proposal_prior == -np.inf:
        return state, False

    proposal_energy = posterior.energy(proposal)
    n = posterior.n_points
    log_ratio = (
        -n * state.beta * (proposal_energy - state.energy)
        + proposal_prior
        - state.log_prior
    )
    if log_ratio >= 0 or u < math.exp(log_ratio):
        return (
            ReplicaState(
                theta=proposal,
                energy=proposal_energy,
                log_prior=proposal_prior,
                beta=state.beta,
            ),
            True,
        )
    return state, False


def exchange_pass(
    states: Sequence[ReplicaState],
    n_points: int,
    generator: np.random.Generator,
) -> Tuple[List[ReplicaState], List[bool]]:
    """Attempt to swap every neighboring pair l, l + 1 in ascending order.

    A pair swaps with probability
    min(1, exp(N (beta_{l+1} - beta_l) (E_{l+1} - E_l))). Swapping exchanges
    theta with its cached cost and prior, the slots keep their betas.

    Exactly ``L - 1`` uniforms are drawn from ``generator`` per call.

    Returns:
        The new states in slot order and one accept flag per pair.
    """
    states = list(states)
    uniforms = generator.uniform(size=len(states) - 1)
    accepted = []
    for (lower, upper), u in zip(
        more_itertools.pairwise(range(len(states))), uniforms
    ):
        low, high = states[lower], states[upper]
        exponent = (
            n_points * (high.beta - low.beta) * (high.energy - low.energy)
        )
        swap = exponent >= 0 or u < math.exp(exponent)
        if swap:
            states[lower] = dataclasses.replace(high, beta=low.beta)
            states[upper] = dataclasses.replace(low, beta=high.beta)
        accepted.append(bool(swap))
    return states, accepted


def step_size_adapt(
    acceptance_rate: float, step_sizes: np.ndarray, rate: float = 2.0
) -> np.ndarray:
    """Multiplicative step size update toward 30% acceptance,
    step_sizes exp(rate (acceptance_rate - 0.3)).
    """
    return step_sizes * math.exp(rate * (acceptance_rate - TARGET_ACCEPTANCE))


@dataclasses.dataclass(eq=False)
class PosteriorSamples:
    """Retained samples of every replica.

    Acceptance counters only cover the retained sweeps, during which the
    step sizes are frozen.

    Attributes:
        kind: The model.
        betas: Inverse temperatures in slot order.
        params: Array of shape (L, S1, dim).
        energies: Array of shape (L, S1).
        move_accepted: Accepted moves per slot, shape (L,).
        exchange_accepted: Accepted swaps per pair, shape (L - 1,).
        step_sizes: Frozen step sizes per slot, shape (L, dim).
        config: Echo of the sampler configuration.
        wall_time: Seconds spent sampling.
    """

    kind: ModelKind
    betas: Tuple[float, ...]
    params: np.ndarray
    energies: np.ndarray
    move_accepted: np.ndarray
    exchange_accepted: np.ndarray
    step_sizes: np.ndarray
    config: Dict[str, Any]
    wall_time: float = 0.0

    def __post_init__(self):
        replicas, n_samples, dim = self.params.shape
        if (
            replicas != len(self.betas)
            or self.energies.shape != (replicas, n_samples)
            or dim != self.kind.dim
            or len(self.exchange_accepted) != replicas - 1
        ):
            raise exceptions.DomainError(
                "inconsistent sample shapes",
                params=self.params.shape,
                energies=self.energies.shape,
                betas=len(self.betas),
            )

    @property
    def parameter_names(self) -> Tuple[str, ...]:
        return self.kind.parameter_names

    @property
    def replicas(self) -> int:
        return len(self.betas)

    @property
    def n_samples(self) -> int:
        return self.params.shape[1]

    @property
    def target_params(self) -> np.ndarray:
        """The beta = 1 chain, shape (S1, dim)."""
        return self.params[-1]

    @property
    def target_energies(self) -> np.ndarray:
        return self.energies[-1]

    @property
    def acceptance_rates(self) -> np.ndarray:
        return self.move_accepted / self.n_samples

    @property
    def exchange_rates(self) -> np.ndarray:
        return self.exchange_accepted / self.n_samples


def run_emc(
    kind: ModelKind,
    dataset: Dataset,
    prior: PriorSpec,
    constants: SphereConstants,
    config: SamplerConfig,
    quadrature: QuadratureSpec = QuadratureSpec(),
    threads: int = 1,
    show_progress: bool = False,
) -> PosteriorSamples:
    """Sample the tempered posteriors of ``dataset``.

    Every replica starts from a draw of the prior. The run performs
    ``burn_in + samples`` sweeps and retains the states of the last
    ``samples`` sweeps.

    Args:
        kind: The model.
        dataset: The measurements.
        prior: The prior over the model parameters.
        constants: The sample constants.
        config: Sampler settings.
        quadrature: Discretization used by the polydisperse model.
        threads: Worker threads for the per-replica updates. Results do not
            depend on this.
        show_progress: Show a progress bar over sweeps.
    Returns:
        The retained samples.
    """
    if prior.kind is not kind:
        raise exceptions.ConfigError(
            f"prior is for the {prior.kind} model, expected {kind}",
            field="prior",
        )
    if threads < 1:
        raise exceptions.ConfigError(
            "thread count must be positive", field="threads", threads=threads
        )
    posterior = PoissonPosterior(dataset, prior, constants, quadrature)
    betas = config.ladder.betas
    replicas = len(betas)
    initial_steps = (
        np.asarray(config.step_sizes, dtype=float)
        if config.step_sizes is not None
        else prior.default_step_sizes()
    )
    if initial_steps.shape != (kind.dim,):
        raise exceptions.ConfigError(
            f"expected {kind.dim} step sizes",
            field="sampler.step_sizes",
            step_sizes=list(initial_steps),
        )

    fixed = _fixed_values(kind, config.fixed)
    free = np.isnan(fixed)

    replica_streams = [
        rng.stream(config.seed, REPLICA_STREAM, slot)
        for slot in range(1, replicas + 1)
    ]
    exchange_stream = rng.stream(config.seed, EXCHANGE_STREAM)
    states = [
        _initial_state(posterior, beta, stream, fixed)
        for beta, stream in zip(betas, replica_streams)
    ]
    step_sizes = np.tile(np.where(free, initial_steps, 0.0), (replicas, 1))

    params = np.empty((replicas, config.samples, kind.dim))
    energies = np.empty((replicas, config.samples))
    move_accepted = np.zeros(replicas, dtype=np.int64)
    exchange_accepted = np.zeros(replicas - 1, dtype=np.int64)
    window_accepted = np.zeros(replicas, dtype=np.int64)

    log.info(
        f"sampling {kind} posterior: {replicas} replicas, "
        f"{config.burn_in} burn-in and {config.samples} retained sweeps, "
        f"{threads} thread(s)"
    )
    sweeps = io.progress_bar(
        range(1, config.total_sweeps + 1),
        total=config.total_sweeps,
        desc="Sampling",
        enabled=show_progress,
    )
    start = time.perf_counter()
    with _replica_mapper(threads) as mapper:
        for sweep in sweeps:
            results = mapper(
                lambda slot: metropolis_sweep(
                    states[slot],
                    posterior,
                    step_sizes[slot],
                    replica_streams[slot],
                ),
                range(replicas),
            )
            states = [state for state, _ in results]
            moved = np.array([accepted for _, accepted in results])

            if config.exchanges:
                states, swapped = exchange_pass(
                    states, posterior.n_points, exchange_stream
                )
            else:
                swapped = [False] * (replicas - 1)
            if config.validate_cache:
                _check_cache(states, posterior, sweep)

            if sweep <= config.burn_in:
                window_accepted += moved
                if config.adapt_burn_in and sweep % config.adapt_interval == 0:
                    step_sizes = _adapt_all(
                        step_sizes,
                        window_accepted / config.adapt_interval,
                        config.adapt_rate,
                    )
                    window_accepted[:] = 0
                    log.debug(
                        "adapted target step sizes "
                        f"{step_sizes[-1].tolist()}",
                        sweep=sweep,
                    )
                if sweep == config.burn_in:
                    log.info(
                        "burn-in done, frozen target step sizes: "
                        f"{step_sizes[-1].tolist()}"
                    )
                continue

            index = sweep - config.burn_in - 1
            move_accepted += moved
            exchange_accepted += np.array(swapped, dtype=np.int64)
            for slot, state in enumerate(states):
                params[slot, index] = state.theta
                energies[slot, index] = state.energy
    wall_time = time.perf_counter() - start

    samples = PosteriorSamples(
        kind=kind,
        betas=betas,
        params=params,
        energies=energies,
        move_accepted=move_accepted,
        exchange_accepted=exchange_accepted,
        step_sizes=step_sizes,
        config=config.asdict(),
        wall_time=wall_time,
    )
    log.info(
        f"sampling finished in {wall_time:.1f} s, target acceptance "
        f"{samples.acceptance_rates[-1]:.3f}, mean exchange rate "
        f"{float(np.mean(samples.exchange_rates)):.3f}"
    )
    return samples


def _fixed_values(kind: ModelKind, fixed: Mapping[str, float]) -> np.ndarray:
    """Vector of fixed values in parameter order, NaN for free
    parameters.
    """
    unknown = set(fixed) - set(kind.parameter_names)
    if unknown:
        raise exceptions.ConfigError(
            f"cannot fix unknown parameters of the {kind} model",
            field="sampler.fixed",
            unknown=sorted(unknown),
        )
    if any(not value > 0 for value in fixed.values()):
        raise exceptions.ConfigError(
            "fixed parameters must be positive", field="sampler.fixed"
        )
    return np.array(
        [fixed.get(name, np.nan) for name in kind.parameter_names],
        dtype=float,
    )


def _initial_state(
    posterior: PoissonPosterior,
    beta: float,
    generator: np.random.Generator,
    fixed: np.ndarray,
) -> ReplicaState:
    theta = posterior.prior.sample(generator)
    theta = np.where(np.isnan(fixed), theta, fixed)
    energy, prior_value = posterior.evaluate(theta)
    return ReplicaState(
        theta=theta, energy=energy, log_prior=prior_value, beta=beta
    )


def _adapt_all(
    step_sizes: np.ndarray, acceptance_rates: np.ndarray, rate: float
) -> np.ndarray:
    return np.array(
        [
            step_size_adapt(float(acc), steps, rate)
            for acc, steps in zip(acceptance_rates, step_sizes)
        ]
    )


def _check_cache(
    states: Sequence[ReplicaState], posterior: PoissonPosterior, sweep: int
) -> None:
    for slot, state in enumerate(states, start=1):
        energy, prior_value = posterior.evaluate(state.theta)
        if energy != state.energy or prior_value != state.log_prior:
            raise exceptions.SasBayesError(
                "cached cost out of sync with parameters",
                sweep=sweep,
                slot=slot,
                cached=(state.energy, state.log_prior),
                recomputed=(energy, prior_value),
            )


@contextlib.contextmanager
def _replica_mapper(threads: int) -> Iterator:
    """Yield a ``map``-like callable returning a list. With more than one
    thread, replica updates run in a thread pool. The caller's barrier is the
    list itself: all updates finish before the exchange pass starts.
    """
    if threads == 1:
        yield lambda func, items: [func(item) for item in items]
        return
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        yield lambda func, items: list(pool.map(func, items))
