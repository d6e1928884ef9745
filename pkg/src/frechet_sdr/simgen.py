"""
Seeded simulation designs with known ground truth.

Models
------
I    Normal distributions as responses, ``mu ~ N(exp(b1'X), 0.5^2)``;
     ``sigma = 1`` (case i) or ``|b2'X|`` (case ii). Wasserstein metric.
II   Points on the unit circle around ``f1(X)``; ``f1 = b1'X`` (case i) or
     ``sqrt(x1^2 + x2^2)`` (case ii). Geodesic metric.
III  Points on the unit sphere in R^3; case i uses linear indices
     ``0.5(x1 + x2)``, ``0.5(x_{p-1} + x_p)``, case ii the signed cube-root
     model in ``x1^2 + x2^2`` and ``x_{p-1}^2 + x_p^2``.
IV   Points on the unit sphere in R^4 whose last coordinate is pure noise.

Random numbers come from numpy's ``PCG64`` generator; replicate ``r`` of
a design with seed ``s`` uses ``default_rng([s, r])``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ._errors import FrechetSDRError, ParameterError
from .evalmetrics import distance_correlation_sq, trace_correlation
from .kwire import KernelSpec, kwire_fit, kwire_insample
from .ladle import ladle_estimate
from .metrics import MetricSpec, QuantileDistributions, SpherePoints, pairwise_distance_matrix
from .wire import sufficient_predictors, wire_fit

logger = logging.getLogger(__name__)

MODELS = ("I", "II", "III", "IV")
CASES = ("i", "ii")
SCENARIOS = ("default", "S1", "S2", "S3", "S4")


@dataclass(frozen=True)
class SimDesign:
    model: str = "I"
    case: str = "i"
    n: int = 200
    p: int = 10
    scenario: str = "default"
    seed: int = 1
    noise_sd: Optional[float] = None
    beta1: Optional[tuple] = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ParameterError(f"model must be one of {MODELS}")
        if self.case not in CASES:
            raise ParameterError(f"case must be one of {CASES}")
        if self.scenario not in SCENARIOS:
            raise ParameterError(f"scenario must be one of {SCENARIOS}")
        if self.p < 4:
            raise ParameterError("p must be >= 4")
        if self.n < 2:
            raise ParameterError("n must be >= 2")
        if self.beta1 is not None and len(self.beta1) != self.p:
            raise ParameterError("beta1 must have length p")


@dataclass
class SimSample:
    """A generated data set.

    ``basis`` spans the true central subspace (p x d_true); ``f_true``
    holds the true sufficient predictors at the sample (n x k), which
    are ``X @ basis`` for the linear designs.
    """

    X: np.ndarray
    Y: object
    basis: np.ndarray
    f_true: np.ndarray
    d_true: int
    metric: MetricSpec


def _unit(p, idx, value=1.0):
    v = np.zeros(p)
    v[list(idx)] = value
    return v


def gen_predictors(design, rng):
    n, p = design.n, design.p
    scenario = design.scenario
    if scenario == "default":
        if design.model == "I" or design.case == "i":
            return rng.uniform(0.0, 1.0, size=(n, p))
        return rng.standard_normal((n, p))
    if scenario in ("S1", "S2"):
        alpha = rng.uniform(0.0, 1.0, size=p)
        Z = rng.standard_normal((n, p))
        if scenario == "S1":
            return alpha + Z
        lags = np.abs(np.subtract.outer(np.arange(p), np.arange(p)))
        L = np.linalg.cholesky(0.2 ** lags)
        return alpha + Z @ L.T
    if scenario == "S3":
        return rng.poisson(1.0, size=(n, p)).astype(float)
    return rng.exponential(1.0, size=(n, p))


def _noise(design, default):
    return default if design.noise_sd is None else design.noise_sd


def gen_response(design, X, rng):
    """Draw responses for predictors ``X`` and attach the ground truth."""
    X = np.asarray(X, dtype=float)
    n, p = X.shape
    if p < 4:
        raise ParameterError("the models need p >= 4")
    model, case = design.model, design.case
    geodesic = MetricSpec("geodesic-sphere")

    if model == "I":
        b1 = _unit(p, (0, 1))
        b2 = _unit(p, (p - 2, p - 1))
        mu = np.exp(X @ b1) + 0.5 * rng.standard_normal(n)
        if case == "i":
            sigma = np.ones(n)
            basis = b1[:, None]
        else:
            sigma = np.abs(X @ b2)
            basis = np.column_stack([b1, b2])
        return SimSample(X, QuantileDistributions(mu, sigma), basis, X @ basis,
                         basis.shape[1], MetricSpec("wasserstein"))

    if model == "II":
        eps = _noise(design, 0.1) * rng.standard_normal(n)
        if case == "i":
            b1 = np.asarray(design.beta1, float) if design.beta1 else _unit(p, (0, 1))
            f1 = X @ b1
            basis = b1[:, None]
            f_true = f1[:, None]
        else:
            f1 = np.sqrt(X[:, 0] ** 2 + X[:, 1] ** 2)
            basis = np.column_stack([_unit(p, (0,)), _unit(p, (1,))])
            f_true = f1[:, None]
        m = np.column_stack([np.cos(f1), np.sin(f1)])
        t = np.column_stack([-np.sin(f1), np.cos(f1)])
        Y = np.cos(eps)[:, None] * m + np.sin(eps)[:, None] * t
        return SimSample(X, SpherePoints(Y), basis, f_true, basis.shape[1], geodesic)

    if model == "III":
        sd = _noise(design, 0.1)
        e1 = sd * rng.standard_normal(n)
        e2 = sd * rng.standard_normal(n)
        if case == "i":
            b1 = _unit(p, (0, 1), 0.5)
            b2 = _unit(p, (p - 2, p - 1), 0.5)
            u, v = X @ b1 + e1, X @ b2 + e2
            Y = np.column_stack([np.sin(u) * np.sin(v), np.sin(u) * np.cos(v), np.cos(u)])
            basis = np.column_stack([b1, b2])
            return SimSample(X, SpherePoints(Y), basis, X @ basis, 2, geodesic)
        f1 = X[:, 0] ** 2 + X[:, 1] ** 2
        f2 = X[:, p - 2] ** 2 + X[:, p - 1] ** 2
        su = np.cbrt(np.sin(f1 + e1))
        Y = np.column_stack([su * np.cbrt(np.sin(f2 + e2)),
                             su * np.cbrt(np.cos(f2 + e2)),
                             np.cbrt(np.cos(f1 + e1))])
        Y /= np.linalg.norm(Y, axis=1, keepdims=True)
        basis = np.eye(p)[:, [0, 1, p - 2, p - 1]]
        return SimSample(X, SpherePoints(Y), basis, np.column_stack([f1, f2]), 4, geodesic)

    eps = _noise(design, 0.1) * rng.standard_normal(n)
    if case == "i":
        b1 = _unit(p, (0, 1), 0.5)
        b2 = _unit(p, (p - 2, p - 1), 0.5)
        f1, f2 = X @ b1, X @ b2
        basis = np.column_stack([b1, b2])
        f_true = X @ basis
    else:
        f1 = 0.5 * np.sqrt(X[:, 0] ** 2 + X[:, 1] ** 2)
        f2 = 0.5 * np.sqrt(X[:, p - 2] ** 2 + X[:, p - 1] ** 2)
        basis = np.eye(p)[:, [0, 1, p - 2, p - 1]]
        f_true = np.column_stack([f1, f2])
    c = np.cos(eps)
    Y = np.column_stack([c * np.sin(f1) * np.sin(f2), c * np.sin(f1) * np.cos(f2),
                         c * np.cos(f1), np.sin(eps)])
    # the four components have unit norm only up to rounding
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    return SimSample(X, SpherePoints(Y), basis, f_true, basis.shape[1], geodesic)


def generate(design, replicate=0):
    """Generate replicate ``replicate`` of ``design`` deterministically."""
    rng = np.random.default_rng([design.seed, replicate])
    X = gen_predictors(design, rng)
    return gen_response(design, X, rng)


def sample_distances(sample):
    return pairwise_distance_matrix(sample.Y, sample.metric)


@dataclass
class ExperimentSummary:
    design: SimDesign
    method: str
    records: list
    mean: dict

    def to_rows(self):
        """Rows for a CSV table: one per replicate plus a final mean row."""
        keys = [k for k in self.records[0] if k != "rep"] if self.records else []
        rows = [["rep", *keys]]
        for rec in self.records:
            rows.append([str(rec["rep"]), *(repr(float(rec[k])) for k in keys)])
        rows.append(["mean", *(repr(float(self.mean[k])) for k in keys)])
        return rows


def _run_one(design, method, rep, d, epsilon_n, sigma, n_boot):
    sample = generate(design, rep)
    D = sample_distances(sample)
    if method == "wire":
        dim = sample.d_true if d is None else d
        fit = wire_fit(sample.X, D, dim)
        rec = {"rep": rep}
        if dim == sample.basis.shape[1]:
            rec["r2"] = trace_correlation(sample.basis, fit.basis)
        rec["rho2"] = distance_correlation_sq(sample.X @ sample.basis,
                                              sufficient_predictors(sample.X, fit))
        return rec
    if method == "kwire":
        dim = sample.f_true.shape[1] if d is None else d
        fit = kwire_fit(sample.X, D, dim, epsilon_n, KernelSpec(sigma))
        return {"rep": rep,
                "rho2": distance_correlation_sq(sample.f_true, kwire_insample(fit))}
    seed = int(np.random.SeedSequence([design.seed, rep]).generate_state(1)[0])
    res = ladle_estimate(sample.X, D, n_boot=n_boot, seed=seed)
    return {"rep": rep, "d_hat": res.d_hat, "correct": float(res.d_hat == sample.d_true)}


def run_experiment(design, method="wire", reps=100, d=None, epsilon_n=1e-3,
                   sigma=0.1, n_boot=None):
    """Repeat generate / fit / evaluate ``reps`` times.

    Parameters
    ----------
    design : SimDesign
    method : {"wire", "kwire", "ladle"}
    reps : int
    d : int, optional
        Dimension to fit; defaults to the design's true dimension
        (number of true predictors for kwire).
    epsilon_n, sigma : float
        Kernel method settings.
    n_boot : int, optional
        Ladle bootstrap count, default ``n``.

    Returns
    -------
    ExperimentSummary
        Per-replicate ``r2``/``rho2`` (wire), ``rho2`` (kwire) or
        ``d_hat``/``correct`` (ladle), and their means. For ladle the mean
        of ``correct`` times ``reps`` is the count of correct estimates.
    """
    if method not in ("wire", "kwire", "ladle"):
        raise ParameterError(f"unknown method {method!r}")
    if reps < 1:
        raise ParameterError("reps must be >= 1")
    records = []
    for rep in range(reps):
        try:
            records.append(_run_one(design, method, rep, d, epsilon_n, sigma, n_boot))
        except FrechetSDRError as exc:
            raise type(exc)(f"replicate {rep}: {exc}") from exc
        logger.debug("replicate %d: %s", rep, records[-1])
    keys = [k for k in records[0] if k != "rep"]
    mean = {k: float(np.mean([r[k] for r in records])) for k in keys}
    return ExperimentSummary(design=design, method=method, records=records, mean=mean)


def with_n(design, n):
    return replace(design, n=n)
