"""
Weighted inverse regression ensemble (linear Frechet SDR).

Given predictors ``X`` (n x p) and a matrix of response distances ``D``,
the ensemble matrix

    Lambda = -E[(X - mu)(X' - mu)^T d(Y, Y')]

is estimated by a U-statistic, and the central subspace is recovered
from the leading left singular vectors of ``Sigma^{-1} Lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from ._errors import DimensionError, ParameterError, ValidationError

PINV_RTOL = 1e-10


def check_predictors(X):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise DimensionError(f"X must be 2-D, got shape {X.shape}")
    if X.shape[0] < 2:
        raise ValidationError("need at least two observations")
    if not np.all(np.isfinite(X)):
        raise ValidationError("X contains non-finite entries")
    return X


def _check_pair(X, D):
    X = check_predictors(X)
    D = np.asarray(D, dtype=float)
    if D.shape != (X.shape[0], X.shape[0]):
        raise DimensionError(
            f"distance matrix shape {D.shape} does not match n={X.shape[0]}")
    return X, D


def sign_flip(vectors):
    """Make the largest-magnitude entry of each column positive.

    Ties go to the lowest index (``argmax`` returns the first maximum).
    """
    vectors = np.array(vectors, dtype=float, copy=True)
    if vectors.size == 0:
        return vectors
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def wire_lambda(X, D):
    """U-statistic estimate of the ensemble matrix.

    ``-sum_{i != j} (X_i - mu)(X_j - mu)^T D_ij / (n (n - 1))``, computed as
    ``-C^T D C / (n (n - 1))`` with ``C`` the column-centred ``X``; the
    diagonal of ``D`` is zero so the ``i == j`` terms drop out. The result
    is exactly symmetric.
    """
    X, D = _check_pair(X, D)
    n = X.shape[0]
    C = X - X.mean(axis=0)
    L = -(C.T @ D @ C) / (n * (n - 1))
    return (L + L.T) / 2


def covariance(X):
    """Sample covariance with divisor n."""
    C = X - X.mean(axis=0)
    S = C.T @ C / X.shape[0]
    return (S + S.T) / 2


def pinv_psd(S, rtol=PINV_RTOL):
    """Pseudo-inverse of a symmetric PSD matrix and its numerical rank."""
    w, V = linalg.eigh(S)
    top = w[-1] if w.size else 0.0
    keep = w > rtol * top if top > 0 else np.zeros_like(w, dtype=bool)
    inv = np.zeros_like(w)
    inv[keep] = 1.0 / w[keep]
    return (V * inv) @ V.T, int(keep.sum())


def wire_matrix(X, D):
    """Return ``(M_hat, Sigma_hat, mu_hat, rank)`` for the linear method."""
    X, D = _check_pair(X, D)
    mu = X.mean(axis=0)
    S = covariance(X)
    S_inv, rank = pinv_psd(S)
    M = S_inv @ wire_lambda(X, D)
    return M, S, mu, rank


def left_singular(M):
    """Left singular vectors (sign-fixed) and singular values of ``M``."""
    U, s, _ = linalg.svd(M)
    return sign_flip(U), s


@dataclass
class SubspaceEstimate:
    """Result of :func:`wire_fit`.

    Attributes
    ----------
    basis : ndarray, shape (p, d)
        Orthonormal estimate of the central subspace.
    singular_values : ndarray, shape (p,)
        All singular values of ``M_hat``, nonincreasing.
    """

    basis: np.ndarray
    singular_values: np.ndarray
    d: int
    M_hat: np.ndarray
    Sigma_hat: np.ndarray
    mu_hat: np.ndarray
    warnings: list = field(default_factory=list)


def wire_fit(X, D, d=1):
    """Estimate a ``d``-dimensional basis of the central subspace.

    Parameters
    ----------
    X : array_like, shape (n, p)
        Predictors.
    D : array_like, shape (n, n)
        Pairwise response distances.
    d : int
        Structural dimension.

    Returns
    -------
    SubspaceEstimate
    """
    X, D = _check_pair(X, D)
    p = X.shape[1]
    if not 1 <= d <= p:
        raise ParameterError(f"d must satisfy 1 <= d <= p (d={d}, p={p})")

    M, S, mu, rank = wire_matrix(X, D)
    notes = []
    if rank < d:
        notes.append(f"Sigma_hat has numerical rank {rank} < d={d}; "
                     "using pseudo-inverse")
    U, s = left_singular(M)
    if not np.any(M):
        notes.append("M_hat is identically zero; returning a zero basis")
        basis = np.zeros((p, d))
    else:
        basis = U[:, :d]
    return SubspaceEstimate(basis=basis, singular_values=s, d=d, M_hat=M,
                            Sigma_hat=S, mu_hat=mu, warnings=notes)


def sufficient_predictors(X, fit):
    """Reduced predictors ``X @ basis``, shape (n, d)."""
    X = check_predictors(X)
    basis = fit.basis if isinstance(fit, SubspaceEstimate) else np.asarray(fit)
    if X.shape[1] != basis.shape[0]:
        raise DimensionError(
            f"X has {X.shape[1]} columns but the basis has {basis.shape[0]} rows")
    return X @ basis
