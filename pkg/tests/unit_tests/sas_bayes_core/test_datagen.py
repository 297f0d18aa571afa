import numpy as np
import pytest

from sas_bayes_core import (
    Dataset,
    DatasetError,
    DomainError,
    ModelKind,
    MonodisperseParams,
    PolydisperseParams,
    SphereConstants,
    count_nonzero,
    generate_dataset,
    intensity,
    make_q_grid,
    seed_for_nonzero_count,
)

MONO_TRUTH = MonodisperseParams(radius=10.0, background=0.01, time=10.0)
MONO_CONSTANTS = SphereConstants(phi=1.0, rho_s=1e-4, rho_m=6.3e-4)
POLY_TRUTH = PolydisperseParams(10.0, 2.0, 0.001, 100.0)
POLY_CONSTANTS = SphereConstants(phi=0.01, rho_s=1e-4, rho_m=6.3e-4)


class TestMakeQGrid:
    """Tests for make_q_grid."""

    def test_endpoints_are_included(self):
        grid = make_q_grid(0.01, 3.0, 400)

        q = grid.values

        assert len(q) == 400
        assert q[0] == 0.01
        assert q[-1] == 3.0
        assert np.allclose(np.diff(q), grid.spacing)

    @pytest.mark.parametrize(
        "q_min, q_max, n",
        [(0.0, 3.0, 10), (3.0, 0.01, 10), (0.01, 3.0, 1), (-1.0, 3.0, 10)],
    )
    def test_rejects_invalid_grids(self, q_min, q_max, n):
        with pytest.raises(DomainError):
            make_q_grid(q_min, q_max, n)


class TestDataset:
    """Tests for the Dataset invariants."""

    def test_accepts_integral_floats(self):
        dataset = Dataset(q=[0.1, 0.2], y=[1.0, 0.0])
        assert dataset.y.dtype == np.int64

    def test_rejects_fractional_counts(self):
        with pytest.raises(DatasetError) as exc_info:
            Dataset(q=[0.1, 0.2, 0.3], y=[1, 2.5, 3])

        assert exc_info.value.kwargs["row"] == 1

    def test_rejects_negative_counts(self):
        with pytest.raises(DatasetError) as exc_info:
            Dataset(q=[0.1, 0.2, 0.3], y=[1, 2, -3])

        assert exc_info.value.kwargs["row"] == 2

    def test_rejects_unsorted_q(self):
        with pytest.raises(DatasetError) as exc_info:
            Dataset(q=[0.1, 0.3, 0.2], y=[1, 2, 3])

        assert exc_info.value.kwargs["row"] == 2

    def test_rejects_duplicate_q(self):
        with pytest.raises(DatasetError):
            Dataset(q=[0.1, 0.1], y=[1, 2])

    def test_rejects_empty_dataset(self):
        with pytest.raises(DatasetError):
            Dataset(q=[], y=[])

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(DatasetError):
            Dataset(q=[0.1, 0.2], y=[1])


class TestGenerateDataset:
    """Tests for generate_dataset."""

    def test_mono_t10_grid(self):
        grid = make_q_grid(0.01, 3.0, 400)

        dataset = generate_dataset(
            ModelKind.MONODISPERSE, MONO_TRUTH, MONO_CONSTANTS, grid, seed=0
        )

        assert len(dataset) == 400
        assert dataset.q[0] == 0.01
        assert dataset.q[-1] == 3.0
        assert np.all(dataset.y >= 0)
        assert dataset.provenance.seed == 0
        assert dataset.provenance.truth == MONO_TRUTH

    def test_same_seed_gives_identical_counts(self):
        grid = make_q_grid(0.01, 7.0, 42)
        args = (ModelKind.POLYDISPERSE, POLY_TRUTH, POLY_CONSTANTS, grid)

        first = generate_dataset(*args, seed=7)
        second = generate_dataset(*args, seed=7)

        assert np.array_equal(first.y, second.y)

    def test_different_seeds_give_different_counts(self):
        grid = make_q_grid(0.01, 3.0, 400)
        args = (ModelKind.MONODISPERSE, MONO_TRUTH, MONO_CONSTANTS, grid)

        assert not np.array_equal(
            generate_dataset(*args, seed=0).y,
            generate_dataset(*args, seed=1).y,
        )

    def test_point_draws_do_not_depend_on_grid_size(self):
        """Each point draws from its own stream, so the first points of a
        longer grid with the same means get the same counts.
        """
        constants = SphereConstants(phi=1.0, rho_s=1e-4, rho_m=1e-4)
        truth = MonodisperseParams(10.0, 5.0, 10.0)
        short = generate_dataset(
            ModelKind.MONODISPERSE,
            truth,
            constants,
            make_q_grid(0.01, 3.0, 10),
            seed=3,
        )
        long = generate_dataset(
            ModelKind.MONODISPERSE,
            truth,
            constants,
            make_q_grid(0.01, 3.0, 20),
            seed=3,
        )
        assert np.array_equal(short.y, long.y[:10])

    def test_counts_follow_the_model_on_average(self):
        grid = make_q_grid(0.01, 3.0, 400)
        truth = MonodisperseParams(10.0, 0.01, 10.0)
        means = intensity(grid.values, truth, MONO_CONSTANTS)

        totals = sum(
            generate_dataset(
                ModelKind.MONODISPERSE, truth, MONO_CONSTANTS, grid, seed
            ).y.sum()
            for seed in range(10)
        )

        expected = 10 * means.sum()
        assert abs(totals - expected) < 5 * np.sqrt(expected)

    def test_rejects_parameters_of_other_kind(self):
        with pytest.raises(DomainError):
            generate_dataset(
                ModelKind.POLYDISPERSE,
                MONO_TRUTH,
                POLY_CONSTANTS,
                make_q_grid(0.01, 7.0, 10),
                seed=0,
            )


class TestSeedForNonzeroCount:
    """Tests for seed_for_nonzero_count."""

    def test_found_seed_gives_target(self):
        grid = make_q_grid(0.01, 3.0, 11)
        truth = MonodisperseParams(10.0, 0.01, 10.0)

        seed = seed_for_nonzero_count(
            ModelKind.MONODISPERSE, truth, MONO_CONSTANTS, grid, target=2
        )

        dataset = generate_dataset(
            ModelKind.MONODISPERSE, truth, MONO_CONSTANTS, grid, seed
        )
        assert count_nonzero(dataset) == 2

    def test_starts_scanning_at_start_seed(self):
        grid = make_q_grid(0.01, 3.0, 11)
        truth = MonodisperseParams(10.0, 0.01, 10.0)
        args = (ModelKind.MONODISPERSE, truth, MONO_CONSTANTS, grid, 2)
        first = seed_for_nonzero_count(*args)

        assert seed_for_nonzero_count(*args, start_seed=first) == first
        assert seed_for_nonzero_count(*args, start_seed=first + 1) > first

    def test_raises_when_target_is_unreachable(self):
        """With a huge background every point has counts, so asking for
        none can never succeed.
        """
        grid = make_q_grid(0.01, 3.0, 11)
        truth = MonodisperseParams(10.0, 1000.0, 10.0)

        with pytest.raises(DomainError):
            seed_for_nonzero_count(
                ModelKind.MONODISPERSE,
                truth,
                MONO_CONSTANTS,
                grid,
                target=0,
                max_tries=5,
            )

    def test_rejects_target_out_of_range(self):
        grid = make_q_grid(0.01, 3.0, 11)
        with pytest.raises(DomainError):
            seed_for_nonzero_count(
                ModelKind.MONODISPERSE, MONO_TRUTH, MONO_CONSTANTS, grid, 12
            )
