"""
Distances between response objects.

Every estimator in this package sees the responses only through an
``n x n`` matrix of pairwise distances. This module builds those
matrices for Euclidean vectors, points on a unit sphere, and
location-scale distributions (compared with the 1-D 2-Wasserstein
distance), and for metrics learned from the data by Isomap or locally
linear embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import linalg
from scipy.sparse.csgraph import connected_components, csgraph_from_dense, shortest_path
from scipy.spatial.distance import cdist, pdist, squareform

from ._errors import (
    ConfigurationError,
    DimensionError,
    DomainError,
    NumericalError,
    ParameterError,
    ValidationError,
)

SPHERE_TOL = 1e-9
UNIT_INPUT_TOL = 1e-6


# ---------------------------------------------------------------------------
# Response containers
# ---------------------------------------------------------------------------


def _as_2d(values, name):
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, np.newaxis]
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be a 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


@dataclass(frozen=True)
class EuclideanVectors:
    """Responses that are plain vectors in R^q (one per row)."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_2d(self.values, "values"))

    def __len__(self):
        return self.values.shape[0]


@dataclass(frozen=True)
class SpherePoints:
    """Responses on the unit sphere in R^q (one unit vector per row)."""

    values: np.ndarray

    def __post_init__(self):
        arr = _as_2d(self.values, "values")
        norms = np.linalg.norm(arr, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1.0) > SPHERE_TOL)
        if bad.size:
            raise DomainError(
                f"row {bad[0]} has norm {norms[bad[0]]!r}, expected unit norm")
        object.__setattr__(self, "values", arr)

    def __len__(self):
        return self.values.shape[0]


@dataclass(frozen=True)
class QuantileDistributions:
    """Distributions with quantile function ``mu + sigma * Phi^{-1}(tau)``.

    Parameters
    ----------
    mu, sigma : array_like, shape (n,)
        Location and (nonnegative) scale of each response distribution.
    """

    mu: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float).ravel()
        sigma = np.asarray(self.sigma, dtype=float).ravel()
        if mu.shape != sigma.shape:
            raise DimensionError("mu and sigma must have the same length")
        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(sigma))):
            raise ValidationError("mu and sigma must be finite")
        if np.any(sigma < 0):
            raise DomainError("sigma must be nonnegative")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)

    def __len__(self):
        return self.mu.shape[0]

    def quantiles(self, m):
        """Quantile values on the midpoint grid ``(i - 0.5) / m``, shape (n, m)."""
        from scipy.stats import norm

        tau = (np.arange(1, m + 1) - 0.5) / m
        return self.mu[:, None] + self.sigma[:, None] * norm.ppf(tau)[None, :]


ResponseSet = Union[EuclideanVectors, SpherePoints, QuantileDistributions]

METRIC_KINDS = ("euclidean", "geodesic-sphere", "wasserstein", "precomputed",
                "isomap", "lle")


@dataclass(frozen=True)
class MetricSpec:
    """Which distance to put on the responses.

    ``k`` is used by isomap and lle; ``m`` and ``reg`` only by lle.
    """

    kind: str = "euclidean"
    k: int = 10
    m: int = 5
    reg: float = 1e-3

    def __post_init__(self):
        if self.kind not in METRIC_KINDS:
            raise ConfigurationError(
                f"unknown metric {self.kind!r}; expected one of {METRIC_KINDS}")
        if self.k < 1:
            raise ParameterError("k must be >= 1")
        if self.m < 1:
            raise ParameterError("m must be >= 1")
        if not self.reg > 0:
            raise ParameterError("reg must be > 0")


# ---------------------------------------------------------------------------
# Scalar metrics
# ---------------------------------------------------------------------------


def euclidean_distance(a, b):
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.size} vs {b.size}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def geodesic_sphere_distance(a, b):
    """Great-circle distance ``arccos(a.b)`` between two unit vectors.

    The inner product is clamped to [-1, 1] so rounding never yields NaN.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.size} vs {b.size}")
    for name, v in (("a", a), ("b", b)):
        if abs(np.linalg.norm(v) - 1.0) > UNIT_INPUT_TOL:
            raise DomainError(f"{name} is not a unit vector")
    return float(np.arccos(np.clip(np.dot(a, b), -1.0, 1.0)))


def wasserstein_location_scale(p, q):
    """2-Wasserstein distance between ``mu1 + s1 Z`` and ``mu2 + s2 Z``.

    Parameters
    ----------
    p, q : tuple of float
        ``(mu, sigma)`` pairs with ``sigma >= 0``.

    Returns
    -------
    float
        ``sqrt((mu1 - mu2)**2 + (s1 - s2)**2)``.
    """
    (mu1, s1), (mu2, s2) = p, q
    if s1 < 0 or s2 < 0:
        raise DomainError("scale parameters must be nonnegative")
    return float(np.hypot(mu1 - mu2, s1 - s2))


def wasserstein_quantile_grid(qp, qq):
    """2-Wasserstein distance from quantiles sampled at ``tau = (i - 0.5)/m``."""
    qp = np.asarray(qp, dtype=float).ravel()
    qq = np.asarray(qq, dtype=float).ravel()
    if qp.shape != qq.shape:
        raise DimensionError(f"length mismatch: {qp.size} vs {qq.size}")
    if qp.size < 2:
        raise ValidationError("need at least 2 quantile nodes")
    if np.any(np.diff(qp) < 0) or np.any(np.diff(qq) < 0):
        raise ValidationError("quantile sequences must be nondecreasing")
    return float(np.sqrt(np.mean((qp - qq) ** 2)))


# ---------------------------------------------------------------------------
# Distance matrices
# ---------------------------------------------------------------------------


def _mirror_upper(values):
    """Exactly symmetric copy built from the strict upper triangle, zero diagonal."""
    upper = np.triu(values, k=1)
    out = upper + upper.T
    np.fill_diagonal(out, 0.0)
    return out


def check_distance_matrix(values, tol=1e-9):
    """Validate a distance matrix and return an exactly symmetric copy.

    Entries must be finite, symmetric and nonnegative, and the diagonal
    zero, all up to ``tol``. The result is ``(D + D.T) / 2`` with the
    diagonal set to 0 and tiny negatives clipped.
    """
    D = np.asarray(values, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise DimensionError(f"distance matrix must be square, got {D.shape}")
    if not np.all(np.isfinite(D)):
        raise ValidationError("distance matrix contains non-finite entries")
    scale = max(1.0, float(np.max(np.abs(D)))) if D.size else 1.0
    if np.any(np.abs(D - D.T) > tol * scale):
        raise ValidationError("distance matrix is not symmetric")
    if np.any(np.abs(np.diag(D)) > tol * scale):
        raise ValidationError("distance matrix has a nonzero diagonal")
    if np.any(D < -tol * scale):
        raise ValidationError("distance matrix has negative entries")
    D = (D + D.T) / 2
    np.fill_diagonal(D, 0.0)
    return np.maximum(D, 0.0)


def pairwise_distance_matrix(ys, spec=None, precomputed=None):
    """Pairwise distances between responses.

    Parameters
    ----------
    ys : ResponseSet or None
        The responses. Must be ``None`` for ``spec.kind == "precomputed"``.
    spec : MetricSpec, optional
        Defaults to Euclidean.
    precomputed : array_like, optional
        Externally supplied matrix, only for the precomputed kind.

    Returns
    -------
    ndarray, shape (n, n)
        Exactly symmetric, zero diagonal, nonnegative.
    """
    spec = MetricSpec() if spec is None else spec
    kind = spec.kind

    if kind == "precomputed":
        if precomputed is None or ys is not None:
            raise ConfigurationError(
                "precomputed metric takes a supplied matrix instead of responses")
        return check_distance_matrix(precomputed)
    if precomputed is not None:
        raise ConfigurationError("a precomputed matrix needs kind='precomputed'")

    if kind == "geodesic-sphere":
        if not isinstance(ys, SpherePoints):
            raise ConfigurationError("geodesic-sphere requires SpherePoints")
        Y = ys.values
        return _mirror_upper(np.arccos(np.clip(Y @ Y.T, -1.0, 1.0)))

    if kind == "wasserstein":
        if not isinstance(ys, QuantileDistributions):
            raise ConfigurationError("wasserstein requires QuantileDistributions")
        params = np.column_stack([ys.mu, ys.sigma])
        return _mirror_upper(squareform(pdist(params)))

    if isinstance(ys, QuantileDistributions):
        raise ConfigurationError(f"{kind} is not defined for QuantileDistributions")
    if not isinstance(ys, (EuclideanVectors, SpherePoints)):
        raise ConfigurationError(f"unsupported response container {type(ys).__name__}")
    Y = ys.values

    if kind == "euclidean":
        return _mirror_upper(squareform(pdist(Y)))
    if kind == "isomap":
        return isomap_distances(Y, spec.k)
    return lle_distances(Y, spec.k, spec.m, spec.reg)


def _knn_indices(Y, k):
    """Indices of the k nearest other points for each row (stable ties)."""
    E = cdist(Y, Y)
    np.fill_diagonal(E, np.inf)
    return np.argsort(E, axis=1, kind="stable")[:, :k], E


def isomap_distances(Y, k=10):
    """Geodesic distances along the symmetric k-nearest-neighbour graph.

    An edge joins i and j when either lists the other among its ``k``
    nearest neighbours, weighted by Euclidean length. If the graph is
    disconnected the shortest Euclidean edge between two different
    components is added, one at a time, until it is connected.
    """
    Y = _as_2d(Y, "Y")
    n = Y.shape[0]
    if k < 1 or k >= n:
        raise ParameterError(f"k must satisfy 1 <= k < n (k={k}, n={n})")

    nbrs, E = _knn_indices(Y, k)
    np.fill_diagonal(E, 0.0)
    W = np.full((n, n), np.inf)
    rows = np.repeat(np.arange(n), k)
    cols = nbrs.ravel()
    W[rows, cols] = E[rows, cols]
    W[cols, rows] = E[rows, cols]

    while True:
        # null_value=inf keeps zero-length edges between duplicate points
        graph = csgraph_from_dense(W, null_value=np.inf)
        n_comp, labels = connected_components(graph, directed=False)
        if n_comp == 1:
            break
        between = np.where(labels[:, None] != labels[None, :], E, np.inf)
        i, j = np.unravel_index(np.argmin(between), between.shape)
        W[i, j] = W[j, i] = E[i, j]

    G = shortest_path(graph, method="D", directed=False)
    return _mirror_upper(G)


def lle_weights(Y, k=10, reg=1e-3):
    """Locally linear reconstruction weights, shape (n, n), rows sum to 1."""
    Y = _as_2d(Y, "Y")
    n = Y.shape[0]
    if k < 1 or k >= n:
        raise ParameterError(f"k must satisfy 1 <= k < n (k={k}, n={n})")
    nbrs, _ = _knn_indices(Y, k)
    W = np.zeros((n, n))
    ones = np.ones(k)
    for i in range(n):
        Z = Y[nbrs[i]] - Y[i]
        C = Z @ Z.T
        tr = np.trace(C)
        C.flat[:: k + 1] += reg * tr if tr > 0 else reg
        try:
            w = linalg.solve(C, ones, assume_a="pos")
        except (linalg.LinAlgError, ValueError) as exc:
            raise NumericalError(f"local Gram matrix at point {i} is singular") from exc
        s = w.sum()
        if not np.isfinite(s) or s == 0:
            raise NumericalError(f"degenerate reconstruction weights at point {i}")
        W[i, nbrs[i]] = w / s
    return W


def lle_embedding(Y, k=10, m=5, reg=1e-3):
    """LLE coordinates, shape (n, m), scaled so each column has squared norm n."""
    Y = _as_2d(Y, "Y")
    n = Y.shape[0]
    if m >= n:
        raise ParameterError(f"embedding dimension m={m} must be < n={n}")
    W = lle_weights(Y, k, reg)
    IW = np.eye(n) - W
    M = IW.T @ IW
    # eigenvalue 0 belongs to the constant vector; skip it
    _, vecs = linalg.eigh(M, subset_by_index=[1, m])
    return vecs * np.sqrt(n)


def lle_distances(Y, k=10, m=5, reg=1e-3):
    """Euclidean distances between points in their LLE embedding."""
    Z = lle_embedding(Y, k, m, reg)
    return _mirror_upper(squareform(pdist(Z)))
