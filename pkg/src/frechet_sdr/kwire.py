"""
Kernel weighted inverse regression ensemble (nonlinear Frechet SDR).

The estimated sufficient predictors are expansions
``f_l(x) = sum_i alpha_{l,i} (k(x, X_i) - mean_s k(x, X_s))``. Their
coefficients come from the leading eigenvectors ``gamma_l`` of

    W = (G + eps I)^{-1} G D G D G (G + eps I)^{-1}

with ``G`` the doubly centred Gram matrix, via
``alpha_l = (G + eps I)^{-1} gamma_l``. Cost is O(n^3) in time and
O(n^2) in memory, which is comfortable up to a few thousand points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg
from scipy.spatial.distance import cdist

from ._errors import DimensionError, NumericalError, ParameterError
from .wire import _check_pair, check_predictors, sign_flip


@dataclass(frozen=True)
class KernelSpec:
    """Gaussian kernel ``exp(-|x - x'|^2 / (2 sigma^2))``."""

    sigma: float = 0.1
    kind: str = "gaussian"

    def __post_init__(self):
        if self.kind != "gaussian":
            raise ParameterError(f"unsupported kernel {self.kind!r}")
        if not self.sigma > 0:
            raise ParameterError("sigma must be > 0")

    def __call__(self, A, B):
        sq = cdist(np.atleast_2d(A), np.atleast_2d(B), "sqeuclidean")
        return np.exp(-sq / (2.0 * self.sigma ** 2))


def gram_matrix(X, kernel=None):
    kernel = KernelSpec() if kernel is None else kernel
    X = check_predictors(X)
    K = kernel(X, X)
    K = (K + K.T) / 2
    np.fill_diagonal(K, 1.0)
    return K


def center_gram(K):
    """``(I - J/n) K (I - J/n)``: remove row, column and grand means."""
    K = np.asarray(K, dtype=float)
    G = K - K.mean(axis=0) - K.mean(axis=1)[:, None] + K.mean()
    return (G + G.T) / 2


@dataclass
class KwireFit:
    alpha: np.ndarray
    gamma: np.ndarray
    eigenvalues: np.ndarray
    epsilon_n: float
    kernel: KernelSpec
    X_train: np.ndarray
    kernel_col_means: np.ndarray
    d: int

    @property
    def G(self):
        return center_gram(gram_matrix(self.X_train, self.kernel))


def kwire_operator(X, D, epsilon_n=1e-3, kernel=None):
    """The symmetric matrix ``W`` before eigendecomposition (not symmetrised).

    Assembled as ``B D G D B^T`` with ``B = (G + eps I)^{-1} G``, so that
    no explicit inverse is formed.
    """
    X, D = _check_pair(X, D)
    if not epsilon_n > 0:
        raise ParameterError("epsilon_n must be > 0")
    K = gram_matrix(X, kernel)
    G = center_gram(K)
    n = G.shape[0]
    try:
        chol = linalg.cho_factor(G + epsilon_n * np.eye(n))
    except linalg.LinAlgError as exc:
        raise NumericalError("G + epsilon I is not positive definite") from exc
    B = linalg.cho_solve(chol, G)
    W = B @ D @ G @ D @ B.T
    return W, K, chol


def kwire_fit(X, D, d=1, epsilon_n=1e-3, kernel=None):
    """Fit ``d`` nonlinear sufficient predictors.

    Parameters
    ----------
    X : array_like, shape (n, p)
    D : array_like, shape (n, n)
        Response distances, used unsigned.
    d : int
        Number of predictors to extract (no automatic order selection).
    epsilon_n : float
        Ridge added to the centred Gram matrix.
    kernel : KernelSpec, optional
        Defaults to a Gaussian kernel with ``sigma=0.1``.

    Returns
    -------
    KwireFit
    """
    kernel = KernelSpec() if kernel is None else kernel
    X, D = _check_pair(X, D)
    n = X.shape[0]
    if not 1 <= d <= n:
        raise ParameterError(f"d must satisfy 1 <= d <= n (d={d}, n={n})")
    W, K, chol = kwire_operator(X, D, epsilon_n, kernel)
    W = (W + W.T) / 2
    try:
        vals, vecs = linalg.eigh(W, subset_by_index=[n - d, n - 1])
    except linalg.LinAlgError as exc:
        raise NumericalError("eigendecomposition failed") from exc
    order = np.argsort(vals, kind="stable")[::-1]
    vals = np.maximum(vals[order], 0.0)
    gamma = sign_flip(vecs[:, order])
    alpha = linalg.cho_solve(chol, gamma)
    return KwireFit(alpha=alpha, gamma=gamma, eigenvalues=vals,
                    epsilon_n=float(epsilon_n), kernel=kernel, X_train=X,
                    kernel_col_means=K.mean(axis=0), d=d)


def kwire_insample(fit):
    """In-sample predictors ``G alpha`` (each column has mean zero)."""
    return fit.G @ fit.alpha


def kwire_predict(fit, X_new):
    """Evaluate the fitted predictors at new points, shape (m, d).

    Uncentred: at the training points this differs from
    :func:`kwire_insample` by a constant per column.
    """
    X_new = np.asarray(X_new, dtype=float)
    if X_new.ndim == 1:
        X_new = X_new[None, :]
    if X_new.shape[1] != fit.X_train.shape[1]:
        raise DimensionError(
            f"X_new has {X_new.shape[1]} columns, expected {fit.X_train.shape[1]}")
    Kx = fit.kernel(X_new, fit.X_train)
    return Kx @ fit.alpha - Kx.mean(axis=1)[:, None] * fit.alpha.sum(axis=0)[None, :]
