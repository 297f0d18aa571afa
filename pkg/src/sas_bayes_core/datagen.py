"""Measurement grids and synthetic Poisson datasets.

Synthetic data follows a simple recipe: ``N`` values of q at equal intervals
in ``[q_min, q_max]``, and for each q a Poisson draw with the model intensity
as its mean. Points with zero counts are part of the dataset and must never
be dropped; only plotting code filters them out.

.. module:: datagen
    :synopsis: Q-grids, datasets and synthetic data generation.
"""

import dataclasses
from typing import Optional

import numpy as np

from sas_bayes_core import exceptions, forward, log, rng
from sas_bayes_core.params import (
    ModelKind,
    ModelParams,
    QuadratureSpec,
    SphereConstants,
)

__all__ = [
    "QGrid",
    "Provenance",
    "Dataset",
    "make_q_grid",
    "generate_dataset",
    "count_nonzero",
    "seed_for_nonzero_count",
]

DATA_STREAM = "data"


@dataclasses.dataclass(frozen=True)
class QGrid:
    """Equally spaced scattering vector magnitudes, endpoints included.

    Attributes:
        q_min: Lower end of the grid (nm^-1).
        q_max: Upper end of the grid (nm^-1).
        n_points: Number of grid points.
    """

    q_min: float
    q_max: float
    n_points: int

    def __post_init__(self):
        if not 0 < self.q_min < self.q_max:
            raise exceptions.DomainError(
                "q-grid requires 0 < q_min < q_max",
                q_min=self.q_min,
                q_max=self.q_max,
            )
        if self.n_points < 2:
            raise exceptions.DomainError(
                "q-grid requires at least 2 points", n_points=self.n_points
            )

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_points)

    @property
    def spacing(self) -> float:
        return (self.q_max - self.q_min) / (self.n_points - 1)

    def asdict(self) -> dict:
        return dataclasses.asdict(self)


def make_q_grid(q_min: float, q_max: float, n: int) -> QGrid:
    """Create a q-grid with ``n`` equally spaced points in
    ``[q_min, q_max]``.
    """
    return QGrid(q_min=float(q_min), q_max=float(q_max), n_points=int(n))


@dataclasses.dataclass(frozen=True)
class Provenance:
    """How a synthetic dataset was made.

    Attributes:
        kind: The forward model.
        truth: The true parameters.
        constants: The sample constants.
        grid: The q-grid.
        seed: The data seed.
    """

    kind: ModelKind
    truth: ModelParams
    constants: SphereConstants
    grid: QGrid
    seed: int


@dataclasses.dataclass(frozen=True, eq=False)
class Dataset:
    """An ordered list of (q, y) measurements.

    Attributes:
        q: Strictly increasing scattering vector magnitudes (nm^-1).
        y: Non-negative integer counts, one per q.
        provenance: Present for synthetic data.
    """

    q: np.ndarray
    y: np.ndarray
    provenance: Optional[Provenance] = None

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        y = np.asarray(self.y)
        if q.ndim != 1 or y.shape != q.shape:
            raise exceptions.DatasetError(
                "q and y must be one-dimensional and of equal length",
                q_shape=q.shape,
                y_shape=y.shape,
            )
        if len(q) == 0:
            raise exceptions.DatasetError("dataset is empty")
        if not np.issubdtype(y.dtype, np.integer):
            rounded = np.round(y)
            if not np.array_equal(rounded, y):
                row = int(np.flatnonzero(rounded != y)[0])
                raise exceptions.DatasetError(
                    "counts must be integers", row=row, y=y[row]
                )
            y = rounded
        y = y.astype(np.int64)
        if np.any(y < 0):
            row = int(np.flatnonzero(y < 0)[0])
            raise exceptions.DatasetError(
                "counts must be non-negative", row=row, y=int(y[row])
            )
        if np.any(np.diff(q) <= 0):
            row = int(np.flatnonzero(np.diff(q) <= 0)[0]) + 1
            raise exceptions.DatasetError(
                "q values must be strictly increasing", row=row
            )
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "y", y)

    def __len__(self) -> int:
        return len(self.q)

    @property
    def nonzero(self) -> np.ndarray:
        """Boolean mask of the points with at least one count."""
        return self.y > 0


def generate_dataset(
    kind: ModelKind,
    truth: ModelParams,
    constants: SphereConstants,
    grid: QGrid,
    seed: int,
    quadrature: QuadratureSpec = QuadratureSpec(),
) -> Dataset:
    """Draw a Poisson-noised dataset from a forward model.

    Each grid point draws from its own stream ``(seed, "data", i)``, so the
    result is reproducible and independent of evaluation order.

    Args:
        kind: The forward model.
        truth: The true parameters.
        constants: The sample constants.
        grid: Where to measure.
        seed: The data seed.
        quadrature: Discretization used by the polydisperse model.
    Returns:
        A dataset with provenance recorded.
    """
    if truth.kind is not kind:
        raise exceptions.DomainError(
            f"expected {kind} parameters, got {truth.kind}"
        )
    q = grid.values
    means = np.atleast_1d(forward.intensity(q, truth, constants, quadrature))
    counts = np.array(
        [
            rng.stream(seed, DATA_STREAM, i).poisson(mean)
            for i, mean in enumerate(means)
        ],
        dtype=np.int64,
    )
    dataset = Dataset(
        q=q,
        y=counts,
        provenance=Provenance(
            kind=kind,
            truth=truth,
            constants=constants,
            grid=grid,
            seed=seed,
        ),
    )
    log.debug(
        f"generated {kind} dataset with {len(dataset)} points, "
        f"{count_nonzero(dataset)} non-zero, seed {seed}"
    )
    return dataset


def count_nonzero(dataset: Dataset) -> int:
    """Number of points with y > 0."""
    return int(np.count_nonzero(dataset.y))


def seed_for_nonzero_count(
    kind: ModelKind,
    truth: ModelParams,
    constants: SphereConstants,
    grid: QGrid,
    target: int,
    start_seed: int = 0,
    max_tries: int = 10_000,
    quadrature: QuadratureSpec = QuadratureSpec(),
) -> int:
    """Scan seeds upwards from ``start_seed`` until the generated dataset has
    exactly ``target`` non-zero points.

    Returns:
        The first matching seed.
    Raises:
        :py:class:`~sas_bayes_core.exceptions.DomainError` if no seed in
        ``max_tries`` attempts matches.
    """
    if not 0 <= target <= grid.n_points:
        raise exceptions.DomainError(
            "target must lie in [0, n_points]",
            target=target,
            n_points=grid.n_points,
        )
    for seed in range(start_seed, start_seed + max_tries):
        dataset = generate_dataset(
            kind, truth, constants, grid, seed, quadrature
        )
        if count_nonzero(dataset) == target:
            log.info(f"seed {seed} gives {target} non-zero points")
            return seed
    raise exceptions.DomainError(
        f"no seed gave {target} non-zero points",
        start_seed=start_seed,
        max_tries=max_tries,
    )
