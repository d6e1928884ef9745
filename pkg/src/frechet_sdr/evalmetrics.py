"""Accuracy measures for estimated subspaces and sufficient predictors."""

import numpy as np
from scipy.spatial.distance import pdist, squareform

from ._errors import DegenerateInputError, DimensionError, NumericalError, ValidationError

NEGATIVE_TOL = 1e-12


def _projection(B):
    B = np.asarray(B, dtype=float)
    if B.ndim == 1:
        B = B[:, None]
    d = B.shape[1]
    if np.linalg.matrix_rank(B) < d:
        raise ValidationError("basis matrix is not of full column rank")
    return B @ np.linalg.solve(B.T @ B, B.T), d


def trace_correlation(B_true, B_hat):
    """``tr(P P_hat) / d`` for the projections onto the two column spaces.

    Equals 1 when the spans coincide and 0 when they are orthogonal.
    """
    P, d = _projection(B_true)
    P_hat, d_hat = _projection(B_hat)
    if P.shape != P_hat.shape or d != d_hat:
        raise DimensionError("both bases must have the same shape")
    return float(np.clip(np.trace(P @ P_hat) / d, 0.0, 1.0))


def _centered_distances(Z):
    Z = np.asarray(Z, dtype=float)
    if Z.ndim == 1:
        Z = Z[:, None]
    A = squareform(pdist(Z))
    return A - A.mean(axis=0) - A.mean(axis=1)[:, None] + A.mean()


def distance_correlation_sq(U, V):
    """Squared distance correlation (V-statistic form).

    Parameters
    ----------
    U : array_like, shape (n, a)
    V : array_like, shape (n, b)

    Returns
    -------
    float
        ``dCov^2(U, V) / sqrt(dCov^2(U, U) dCov^2(V, V))`` in [0, 1].

    Raises
    ------
    DegenerateInputError
        If either sample is constant.
    """
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    if U.shape[0] != V.shape[0]:
        raise DimensionError("U and V must have the same number of rows")
    if U.shape[0] < 2:
        raise ValidationError("need at least two observations")
    A = _centered_distances(U)
    B = _centered_distances(V)
    dvar_u = np.mean(A * A)
    dvar_v = np.mean(B * B)
    if dvar_u <= 0 or dvar_v <= 0:
        raise DegenerateInputError("zero distance variance")
    value = np.mean(A * B) / np.sqrt(dvar_u * dvar_v)
    if value < -NEGATIVE_TOL:
        raise NumericalError(f"negative squared distance correlation {value!r}")
    return float(min(max(value, 0.0), 1.0))


def principal_angle(b_true, b_hat):
    """Angle in radians between two lines (sign-free)."""
    a = np.asarray(b_true, dtype=float).ravel()
    b = np.asarray(b_hat, dtype=float).ravel()
    c = abs(a @ b) / (np.linalg.norm(a) * np.linalg.norm(b))
    return float(np.arccos(min(c, 1.0)))
