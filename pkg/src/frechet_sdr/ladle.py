"""Ladle estimator of the structural dimension.

Combines the bootstrap variability of the leading singular vectors of
``M_hat`` with the decay of its singular values; the estimate is the
index minimising the sum of the two normalised curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from ._errors import ParameterError
from .wire import _check_pair, covariance, left_singular, pinv_psd, wire_lambda

MAX_RETRIES = 10


def ladle_rp(p, log_base=math.e):
    """Upper end of the search range: ``p - 1`` if ``p <= 10`` else ``floor(p / log p)``."""
    if p < 2:
        raise ParameterError("p must be >= 2")
    if p <= 10:
        return p - 1
    return int(math.floor(p / math.log(p, log_base)))


@dataclass
class LadleResult:
    d_hat: int
    f_n: np.ndarray
    g_n: np.ndarray
    objective: np.ndarray
    r_p: int
    n_boot: int
    seed: int
    skipped: list = field(default_factory=list)


def _fit_m(X, D):
    S = covariance(X)
    S_inv, rank = pinv_psd(S)
    return S_inv @ wire_lambda(X, D), rank


def _abs_det(A):
    # LU with partial pivoting
    lu, _ = linalg.lu_factor(A, check_finite=False)
    return float(abs(np.prod(np.diag(lu))))


def ladle_estimate(X, D, n_boot=None, seed=1, log_base=math.e):
    """Estimate the structural dimension with the ladle.

    Parameters
    ----------
    X : array_like, shape (n, p)
    D : array_like, shape (n, n)
        Response distance matrix; bootstrap copies are taken by index
        lookup, so duplicated observations get distance 0.
    n_boot : int, optional
        Number of bootstrap replicates, default ``n``.
    seed : int
        Replicate ``b`` draws its indices from ``default_rng([seed, b, attempt])``.

    Returns
    -------
    LadleResult
    """
    X, D = _check_pair(X, D)
    n, p = X.shape
    n_boot = n if n_boot is None else int(n_boot)
    if n_boot < 1:
        raise ParameterError("n_boot must be >= 1")
    r_p = ladle_rp(p, log_base)

    M, rank = _fit_m(X, D)
    B_full, lam = left_singular(M)

    f0 = np.zeros(r_p + 1)
    used = 0
    skipped = []
    for b in range(n_boot):
        for attempt in range(MAX_RETRIES + 1):
            rng = np.random.default_rng([seed, b, attempt])
            idx = rng.integers(0, n, size=n)
            Mb, rank_b = _fit_m(X[idx], D[np.ix_(idx, idx)])
            if rank_b >= rank:
                break
        else:
            skipped.append(b)
            continue
        Bb, _ = left_singular(Mb)
        used += 1
        for k in range(1, r_p + 1):
            f0[k] += 1.0 - _abs_det(B_full[:, :k].T @ Bb[:, :k])
    if used:
        f0 /= used
    f0 = np.clip(f0, 0.0, 1.0)

    f_n = f0 / (1.0 + f0.sum())
    lam2 = lam[: r_p + 1] ** 2
    g_n = lam2 / (1.0 + lam2.sum())
    objective = f_n + g_n
    d_hat = int(np.argmin(objective))
    return LadleResult(d_hat=d_hat, f_n=f_n, g_n=g_n, objective=objective,
                       r_p=r_p, n_boot=n_boot, seed=seed, skipped=skipped)
