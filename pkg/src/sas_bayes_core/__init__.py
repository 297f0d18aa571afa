from sas_bayes_core.__version import __version__  # noqa: F401

from sas_bayes_core import log
from sas_bayes_core import rng
from sas_bayes_core.io import echo, progress_bar

# Models
from sas_bayes_core.params import (
    ModelKind,
    SphereConstants,
    MonodisperseParams,
    PolydisperseParams,
    ModelParams,
    QuadratureSpec,
    params_from_vector,
    params_from_mapping,
    params_to_mapping,
)
from sas_bayes_core.forward import (
    sphere_form_amplitude,
    sphere_volume,
    monodisperse_intensity,
    gaussian_size_pdf,
    mean_volume,
    polydisperse_intensity,
    intensity,
)

# Data
from sas_bayes_core.datagen import (
    QGrid,
    Provenance,
    Dataset,
    make_q_grid,
    generate_dataset,
    count_nonzero,
    seed_for_nonzero_count,
)

# Inference
from sas_bayes_core.inference import (
    GammaPrior,
    PriorSpec,
    CostValue,
    PoissonPosterior,
    cost_E,
    log_prior,
    log_factorial_sum,
    log_tempered_posterior,
)
from sas_bayes_core.sampler import (
    LadderSpec,
    SamplerConfig,
    ReplicaState,
    PosteriorSamples,
    build_ladder,
    metropolis_sweep,
    exchange_pass,
    step_size_adapt,
    run_emc,
)

# Analysis
from sas_bayes_core.analysis import (
    MapResult,
    CredibleInterval,
    Histogram,
    ResidualTable,
    FittedCurve,
    FitReport,
    map_estimate,
    credible_interval,
    make_histogram,
    residual_table,
    fitted_curve,
    fit_report,
)
from sas_bayes_core import serialize

# Exceptions
from sas_bayes_core.exceptions import (
    SasBayesError,
    DomainError,
    QuadratureError,
    ConfigError,
    DatasetError,
    InsufficientSamplesError,
    FileError,
    OutputLockedError,
    ParseError,
)

__all__ = [
    "log",
    "rng",
    "echo",
    "progress_bar",
    "serialize",
    # Models
    "ModelKind",
    "SphereConstants",
    "MonodisperseParams",
    "PolydisperseParams",
    "ModelParams",
    "QuadratureSpec",
    "params_from_vector",
    "params_from_mapping",
    "params_to_mapping",
    "sphere_form_amplitude",
    "sphere_volume",
    "monodisperse_intensity",
    "gaussian_size_pdf",
    "mean_volume",
    "polydisperse_intensity",
    "intensity",
    # Data
    "QGrid",
    "Provenance",
    "Dataset",
    "make_q_grid",
    "generate_dataset",
    "count_nonzero",
    "seed_for_nonzero_count",
    # Inference
    "GammaPrior",
    "PriorSpec",
    "CostValue",
    "PoissonPosterior",
    "cost_E",
    "log_prior",
    "log_factorial_sum",
    "log_tempered_posterior",
    "LadderSpec",
    "SamplerConfig",
    "ReplicaState",
    "PosteriorSamples",
    "build_ladder",
    "metropolis_sweep",
    "exchange_pass",
    "step_size_adapt",
    "run_emc",
    # Analysis
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
    # Exceptions
    "SasBayesError",
    "DomainError",
    "QuadratureError",
    "ConfigError",
    "DatasetError",
    "InsufficientSamplesError",
    "FileError",
    "OutputLockedError",
    "ParseError",
]
