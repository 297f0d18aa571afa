import dataclasses

import numpy as np
import pytest

from sas_bayes_core import (
    ConfigError,
    Dataset,
    DomainError,
    ModelKind,
    PoissonPosterior,
    PriorSpec,
    ReplicaState,
    SamplerConfig,
    SasBayesError,
    SphereConstants,
    build_ladder,
    exchange_pass,
    metropolis_sweep,
    rng,
    run_emc,
    step_size_adapt,
)
from sas_bayes_core import sampler

CONSTANTS = SphereConstants(phi=1.0, rho_s=1e-4, rho_m=6.3e-4)


@pytest.fixture
def posterior(mono_dataset):
    return PoissonPosterior(
        mono_dataset, PriorSpec.default(ModelKind.MONODISPERSE), CONSTANTS
    )


def _state(posterior, theta, beta):
    theta = np.asarray(theta, dtype=float)
    energy, prior_value = posterior.evaluate(theta)
    return ReplicaState(
        theta=theta, energy=energy, log_prior=prior_value, beta=beta
    )


class TestBuildLadder:
    """Tests for build_ladder."""

    def test_geometric_ladder(self):
        ladder = build_ladder(40, 2.2)

        assert ladder.replicas == 40
        assert ladder.betas[0] == 0.0
        assert ladder.betas[-1] == 1.0
        assert ladder.betas[1] == pytest.approx(2.2**-38)
        assert np.all(np.diff(ladder.betas) > 0)

    def test_two_replicas(self):
        assert build_ladder(2, 1.7).betas == (0.0, 1.0)

    @pytest.mark.parametrize("replicas, base", [(1, 2.0), (10, 1.0)])
    def test_rejects_degenerate_ladders(self, replicas, base):
        with pytest.raises(DomainError):
            build_ladder(replicas, base)


class TestSamplerConfig:
    """Tests for SamplerConfig."""

    @pytest.mark.parametrize(
        "kwargs, field",
        [
            (dict(burn_in=-1), "sampler.burn_in"),
            (dict(samples=0), "sampler.samples"),
            (dict(step_sizes=(1.0, 0.0, 1.0)), "sampler.step_sizes"),
            (dict(adapt_interval=0), "sampler.adapt_interval"),
            (dict(seed=-3), "seeds.sampler"),
        ],
    )
    def test_rejects_invalid_settings(self, kwargs, field):
        settings = dict(ladder=build_ladder(4, 2.0), burn_in=0, samples=10)
        settings.update(kwargs)

        with pytest.raises(ConfigError) as exc_info:
            SamplerConfig(**settings)

        assert exc_info.value.kwargs["field"] == field


class TestMetropolisSweep:
    """Tests for metropolis_sweep."""

    def test_draws_dim_plus_one_uniforms(self, posterior):
        state = _state(posterior, [10.0, 0.01, 10.0], 1.0)
        generator = rng.stream(0, "test")
        reference = rng.stream(0, "test")

        metropolis_sweep(state, posterior, np.ones(3), generator)
        reference.uniform(size=4)

        assert generator.uniform() == reference.uniform()

    def test_rejects_proposals_outside_support(self, posterior):
        """A proposal with a negative radius must be rejected without
        evaluating the forward model.
        """
        state = _state(posterior, [1e-6, 0.01, 10.0], 1.0)
        steps = np.array([1e3, 0.0, 0.0])
        rejected = 0
        generator = rng.stream(1, "test")
        for _ in range(50):
            new_state, accepted = metropolis_sweep(
                state, posterior, steps, generator
            )
            if not accepted:
                rejected += 1
                assert new_state is state
            else:
                assert new_state.theta[0] > 0
        assert rejected > 0

    def test_always_accepts_improvements_at_beta_zero(self, posterior):
        """At beta = 0 with zero steps the ratio is exactly 1."""
        state = _state(posterior, [10.0, 0.01, 10.0], 0.0)

        new_state, accepted = metropolis_sweep(
            state, posterior, np.zeros(3), rng.stream(2, "test")
        )

        assert accepted
        assert np.array_equal(new_state.theta, state.theta)

    def test_accepted_state_caches_cost(self, posterior):
        state = _state(posterior, [10.0, 0.01, 10.0], 0.5)
        generator = rng.stream(3, "test")
        for _ in range(20):
            state, _ = metropolis_sweep(
                state, posterior, np.array([0.01, 1e-4, 0.01]), generator
            )
        energy, prior_value = posterior.evaluate(state.theta)
        assert state.energy == energy
        assert state.log_prior == prior_value
        assert state.beta == 0.5


class TestExchangePass:
    """Tests for exchange_pass."""

    def test_swaps_payloads_and_keeps_betas(self, posterior):
        states = [
            _state(posterior, [10.0, 0.01, 10.0], 0.0),
            _state(posterior, [20.0, 0.5, 5.0], 1.0),
        ]

        # the hot replica holds the better fit, so the swap is certain
        new_states, accepted = exchange_pass(
            states, posterior.n_points, rng.stream(0, "test")
        )

        assert accepted == [True]
        assert [s.beta for s in new_states] == [0.0, 1.0]
        assert np.array_equal(new_states[1].theta, states[0].theta)
        assert new_states[1].energy == states[0].energy
        assert np.array_equal(new_states[0].theta, states[1].theta)

    def test_swap_probability(self, mocker):
        """With no counts E is the mean intensity, so the colder replica
        holding the lower background makes the swap unlikely but possible.
        """
        posterior = PoissonPosterior(
            Dataset(q=np.linspace(0.01, 3.0, 50), y=np.zeros(50)),
            PriorSpec.default(ModelKind.MONODISPERSE),
            CONSTANTS,
        )
        states = [
            _state(posterior, [10.0, 0.02, 10.0], 0.5),
            _state(posterior, [10.0, 0.01, 10.0], 1.0),
        ]
        exponent = (
            posterior.n_points * 0.5 * (states[1].energy - states[0].energy)
        )
        probability = np.exp(exponent)
        assert 0 < probability < 1
        generator = mocker.Mock()

        generator.uniform.return_value = np.array([probability * 0.99])
        _, accepted_below = exchange_pass(
            states, posterior.n_points, generator
        )
        generator.uniform.return_value = np.array([probability * 1.01])
        _, accepted_above = exchange_pass(
            states, posterior.n_points, generator
        )

        assert accepted_below == [True]
        assert accepted_above == [False]

    def test_swap_rate_matches_expected_acceptance(self, posterior):
        """Payloads drawn independently from the tempered posteriors of R
        at two inverse temperatures swap at the rate W averaged over both
        distributions.
        """
        low_beta, high_beta = 0.2, 1.0
        n = posterior.n_points
        grid = np.linspace(0.5, 3000.0, 2000)
        energies = np.array(
            [posterior.energy(np.array([r, 0.01, 10.0])) for r in grid]
        )
        log_prior = posterior.prior.priors["R"].log_density(grid)

        def tempered(beta):
            log_p = -n * beta * energies + log_prior
            p = np.exp(log_p - log_p.max())
            return p / p.sum()

        low_p, high_p = tempered(low_beta), tempered(high_beta)
        # rows index the payload of the low slot, columns the high slot
        gaps = energies[None, :] - energies[:, None]
        exponent = n * (high_beta - low_beta) * gaps
        expected = low_p @ np.exp(np.minimum(exponent, 0.0)) @ high_p

        draws = 20000
        payloads = rng.stream(5, "test")
        low_index = payloads.choice(len(grid), size=draws, p=low_p)
        high_index = payloads.choice(len(grid), size=draws, p=high_p)
        generator = rng.stream(6, "test")
        swaps = 0
        for i, j in zip(low_index, high_index):
            states = [
                ReplicaState(
                    theta=np.array([grid[i], 0.01, 10.0]),
                    energy=float(energies[i]),
                    log_prior=0.0,
                    beta=low_beta,
                ),
                ReplicaState(
                    theta=np.array([grid[j], 0.01, 10.0]),
                    energy=float(energies[j]),
                    log_prior=0.0,
                    beta=high_beta,
                ),
            ]
            _, accepted = exchange_pass(states, n, generator)
            swaps += accepted[0]

        standard_error = np.sqrt(expected * (1 - expected) / draws)
        assert 0 < expected < 1
        assert abs(swaps / draws - expected) < 3 * standard_error

    def test_draws_one_uniform_per_pair(self, posterior, mocker):
        states = [
            _state(posterior, [10.0, 0.01, 10.0], beta)
            for beta in build_ladder(5, 2.0).betas
        ]
        generator = mocker.Mock()
        generator.uniform.return_value = np.zeros(4)

        _, accepted = exchange_pass(states, posterior.n_points, generator)

        generator.uniform.assert_called_once_with(size=4)
        assert len(accepted) == 4


class TestStepSizeAdapt:
    """Tests for step_size_adapt."""

    def test_fixed_point_at_target_acceptance(self):
        steps = np.array([1.0, 2.0])
        assert step_size_adapt(0.3, steps) == pytest.approx(steps)

    def test_grows_when_accepting_too_often(self):
        steps = np.array([1.0])
        assert step_size_adapt(0.8, steps)[0] == pytest.approx(np.exp(1.0))

    def test_shrinks_when_rejecting_too_often(self):
        steps = np.array([1.0])
        assert step_size_adapt(0.0, steps, rate=1.0)[0] == pytest.approx(
            np.exp(-0.3)
        )


class TestRunEmc:
    """Tests for run_emc."""

    @pytest.fixture
    def config(self):
        return SamplerConfig(
            ladder=build_ladder(4, 3.0),
            burn_in=50,
            samples=30,
            seed=11,
            adapt_interval=10,
        )

    def _run(self, dataset, config, threads=1):
        return run_emc(
            ModelKind.MONODISPERSE,
            dataset,
            PriorSpec.default(ModelKind.MONODISPERSE),
            CONSTANTS,
            config,
            threads=threads,
        )

    def test_shapes(self, mono_dataset, config):
        samples = self._run(mono_dataset, config)

        assert samples.params.shape == (4, 30, 3)
        assert samples.energies.shape == (4, 30)
        assert samples.move_accepted.shape == (4,)
        assert samples.exchange_accepted.shape == (3,)
        assert samples.step_sizes.shape == (4, 3)
        assert samples.betas == config.ladder.betas
        assert np.all(samples.acceptance_rates <= 1)

    def test_same_seed_reproduces_run(self, mono_dataset, config):
        first = self._run(mono_dataset, config)
        second = self._run(mono_dataset, config)

        assert np.array_equal(first.params, second.params)
        assert np.array_equal(first.energies, second.energies)

    def test_thread_count_does_not_change_results(self, mono_dataset, config):
        single = self._run(mono_dataset, config, threads=1)
        multi = self._run(mono_dataset, config, threads=3)

        assert np.array_equal(single.params, multi.params)
        assert np.array_equal(single.move_accepted, multi.move_accepted)
        assert np.array_equal(
            single.exchange_accepted, multi.exchange_accepted
        )

    def test_cached_energies_match_parameters(self, mono_dataset, config):
        samples = self._run(mono_dataset, config)
        posterior = PoissonPosterior(
            mono_dataset, PriorSpec.default(ModelKind.MONODISPERSE), CONSTANTS
        )

        for slot in range(samples.replicas):
            theta = samples.params[slot, -1]
            assert samples.energies[slot, -1] == posterior.energy(theta)

    def test_validate_cache_passes_for_consistent_run(
        self, mono_dataset, config
    ):
        checked = dataclasses.replace(config, validate_cache=True)
        samples = self._run(mono_dataset, checked)
        assert samples.n_samples == 30

    def test_validate_cache_detects_drift(self, mono_dataset, config, mocker):
        """Corrupting the cached energy of accepted moves is caught."""
        original = sampler.metropolis_sweep

        def corrupting_sweep(*args, **kwargs):
            state, accepted = original(*args, **kwargs)
            return (
                dataclasses.replace(state, energy=state.energy + 1.0),
                accepted,
            )

        mocker.patch(
            "sas_bayes_core.sampler.metropolis_sweep",
            side_effect=corrupting_sweep,
        )
        checked = dataclasses.replace(config, validate_cache=True)

        with pytest.raises(SasBayesError, match="out of sync"):
            self._run(mono_dataset, checked)

    def test_fixed_parameters_do_not_move(self, mono_dataset, config):
        fixed = dataclasses.replace(config, fixed={"b": 0.01, "t": 10.0})

        samples = self._run(mono_dataset, fixed)

        assert np.all(samples.params[:, :, 1] == 0.01)
        assert np.all(samples.params[:, :, 2] == 10.0)
        assert np.all(samples.step_sizes[:, 1:] == 0)

    def test_step_sizes_freeze_after_burn_in(self, mono_dataset, config):
        no_adapt = dataclasses.replace(
            config, adapt_burn_in=False, step_sizes=(0.5, 0.005, 0.5)
        )

        samples = self._run(mono_dataset, no_adapt)

        assert np.all(samples.step_sizes == [0.5, 0.005, 0.5])

    def test_without_exchanges_slots_run_alone(self, mono_dataset, config):
        isolated = dataclasses.replace(config, exchanges=False)

        samples = self._run(mono_dataset, isolated)

        assert np.all(samples.exchange_accepted == 0)
        assert samples.config["exchanges"] is False
        # a slot's chain depends only on its own stream and inverse
        # temperature, so the same slot in a shorter ladder is identical
        two_slots = dataclasses.replace(
            isolated,
            ladder=sampler.LadderSpec(base=3.0, betas=config.ladder.betas[:2]),
        )
        shorter = self._run(mono_dataset, two_slots)
        assert np.array_equal(shorter.params[1], samples.params[1])

    def test_rejects_unknown_fixed_parameter(self, mono_dataset, config):
        bad = dataclasses.replace(config, fixed={"sigma": 1.0})
        with pytest.raises(ConfigError):
            self._run(mono_dataset, bad)

    def test_rejects_prior_of_other_kind(self, mono_dataset, config):
        with pytest.raises(ConfigError):
            run_emc(
                ModelKind.MONODISPERSE,
                mono_dataset,
                PriorSpec.default(ModelKind.POLYDISPERSE),
                CONSTANTS,
                config,
            )

    def test_rejects_non_positive_thread_count(self, mono_dataset, config):
        with pytest.raises(ConfigError):
            self._run(mono_dataset, config, threads=0)


def test_posterior_samples_reject_inconsistent_shapes():
    with pytest.raises(DomainError):
        sampler.PosteriorSamples(
            kind=ModelKind.MONODISPERSE,
            betas=(0.0, 1.0),
            params=np.zeros((2, 5, 4)),
            energies=np.zeros((2, 5)),
            move_accepted=np.zeros(2),
            exchange_accepted=np.zeros(1),
            step_sizes=np.zeros((2, 3)),
            config={},
        )


def test_dataset_fixture_is_monodisperse(mono_dataset):
    assert isinstance(mono_dataset, Dataset)
    assert mono_dataset.provenance.kind is ModelKind.MONODISPERSE
