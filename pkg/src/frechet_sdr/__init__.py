"""Frechet sufficient dimension reduction for metric-space responses."""

from ._errors import (
    ConfigurationError,
    DegenerateInputError,
    DimensionError,
    DomainError,
    FrechetSDRError,
    NumericalError,
    ParameterError,
    ParseError,
    ValidationError,
)
from .evalmetrics import distance_correlation_sq, trace_correlation
from .kwire import (
    KernelSpec,
    KwireFit,
    center_gram,
    gram_matrix,
    kwire_fit,
    kwire_insample,
    kwire_predict,
)
from .ladle import LadleResult, ladle_estimate, ladle_rp
from .metrics import (
    EuclideanVectors,
    MetricSpec,
    QuantileDistributions,
    SpherePoints,
    euclidean_distance,
    geodesic_sphere_distance,
    isomap_distances,
    lle_distances,
    pairwise_distance_matrix,
    wasserstein_location_scale,
    wasserstein_quantile_grid,
)
from .simgen import SimDesign, SimSample, generate, run_experiment
from .wire import SubspaceEstimate, sufficient_predictors, wire_fit, wire_lambda

__version__ = "0.1.0"
