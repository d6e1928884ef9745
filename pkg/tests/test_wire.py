import numpy as np
import pytest
from scipy.stats import special_ortho_group

from frechet_sdr import (
    DimensionError,
    EuclideanVectors,
    MetricSpec,
    ParameterError,
    QuantileDistributions,
    SimDesign,
    SpherePoints,
    generate,
    pairwise_distance_matrix,
    sufficient_predictors,
    trace_correlation,
    wire_fit,
    wire_lambda,
)
from frechet_sdr.evalmetrics import principal_angle
from frechet_sdr.simgen import sample_distances
from frechet_sdr.wire import covariance, sign_flip


def lambda_double_loop(X, D):
    n = X.shape[0]
    mu = X.mean(axis=0)
    L = np.zeros((X.shape[1], X.shape[1]))
    for i in range(n):
        for j in range(n):
            if i != j:
                L -= np.outer(X[i] - mu, X[j] - mu) * D[i, j]
    return L / (n * (n - 1))


def random_instance(g, n, p, kind):
    X = g.normal(size=(n, p))
    if kind == "euclidean":
        ys = EuclideanVectors(g.normal(size=(n, 2)) + X[:, :1])
    elif kind == "geodesic-sphere":
        Y = g.normal(size=(n, 3)) + X[:, :1]
        ys = SpherePoints(Y / np.linalg.norm(Y, axis=1, keepdims=True))
    else:
        ys = QuantileDistributions(X[:, 0] + g.normal(size=n), g.uniform(0.1, 3, n))
    return X, pairwise_distance_matrix(ys, MetricSpec(kind))


def test_two_point_example():
    X = np.array([[1.0, 0.0], [0.0, 1.0]])
    D = np.array([[0.0, 2.0], [2.0, 0.0]])
    np.testing.assert_allclose(wire_lambda(X, D), [[0.5, -0.5], [-0.5, 0.5]], atol=1e-15)


def test_constant_distance_gives_scaled_covariance(rng):
    X = rng.normal(size=(12, 3))
    c = 1.75
    D = c * (1 - np.eye(12))
    np.testing.assert_allclose(wire_lambda(X, D), c * covariance(X) / 11, atol=1e-14)


def test_matches_double_loop(rng):
    X, D = random_instance(rng, 50, 5, "euclidean")
    assert np.max(np.abs(wire_lambda(X, D) - lambda_double_loop(X, D))) <= 1e-10


def test_lambda_size_mismatch(rng):
    with pytest.raises(DimensionError):
        wire_lambda(rng.normal(size=(5, 2)), np.zeros((4, 4)))


@pytest.mark.parametrize("kind", ["euclidean", "geodesic-sphere", "wasserstein"])
def test_lambda_psd(rng, kind):
    X, D = random_instance(rng, 60, 4, kind)
    L = wire_lambda(X, D)
    assert np.array_equal(L, L.T)
    assert np.linalg.eigvalsh(L).min() >= -1e-8 * np.trace(L)


def test_fit_basis_orthonormal(rng):
    X, D = random_instance(rng, 80, 6, "euclidean")
    fit = wire_fit(X, D, 3)
    np.testing.assert_allclose(fit.basis.T @ fit.basis, np.eye(3), atol=1e-10)
    assert np.all(np.diff(fit.singular_values) <= 0)
    S = fit.Sigma_hat
    assert np.array_equal(S, S.T) and np.linalg.eigvalsh(S).min() > -1e-10


def test_d_out_of_range(rng):
    X, D = random_instance(rng, 20, 3, "euclidean")
    with pytest.raises(ParameterError):
        wire_fit(X, D, 4)


def test_distance_scaling(rng):
    X, D = random_instance(rng, 60, 5, "euclidean")
    a, b = wire_fit(X, D, 2), wire_fit(X, 3.0 * D, 2)
    np.testing.assert_allclose(b.basis, a.basis, atol=1e-10)
    np.testing.assert_allclose(b.singular_values, 3.0 * a.singular_values, rtol=1e-10)


def test_translation_and_scale_invariance(rng):
    X, D = random_instance(rng, 60, 5, "wasserstein")
    base = wire_fit(X, D, 2)
    shifted = wire_fit(X + rng.normal(size=5) * 10, D, 2)
    scaled = wire_fit(2.5 * X, D, 2)
    for other in (shifted, scaled):
        np.testing.assert_allclose(other.M_hat, base.M_hat, atol=1e-10)
        np.testing.assert_allclose(other.basis, base.basis, atol=1e-10)
        np.testing.assert_allclose(other.singular_values, base.singular_values, atol=1e-10)


def test_rotation_equivariance(rng):
    X, D = random_instance(rng, 80, 4, "geodesic-sphere")
    Q = special_ortho_group.rvs(4, random_state=3)
    a = wire_fit(X, D, 2)
    b = wire_fit(X @ Q.T, D, 2)
    assert trace_correlation(Q @ a.basis, b.basis) == pytest.approx(1.0, abs=1e-8)


def test_zero_distance_gives_zero_basis(rng):
    X = rng.normal(size=(10, 3))
    fit = wire_fit(X, np.zeros((10, 10)), 1)
    assert not np.any(fit.basis)
    assert fit.warnings


def test_rank_deficient_sigma_is_recorded(rng):
    X = rng.normal(size=(30, 4))
    X[:, 3] = 0.0
    X[:, 2] = 0.0
    X[:, 1] = 0.0
    D = pairwise_distance_matrix(EuclideanVectors(X[:, :1] + rng.normal(size=(30, 1))))
    fit = wire_fit(X, D, 2)
    assert any("rank" in w for w in fit.warnings)


def test_sign_convention():
    V = np.array([[0.1, -0.9], [-0.5, 0.2], [0.3, 0.9]])
    out = sign_flip(V)
    assert out[1, 0] > 0
    assert out[0, 1] > 0  # tie in |.|, lowest index wins


class TestSufficientPredictors:
    def test_coordinate_projection(self, rng):
        X = rng.normal(size=(9, 4))
        np.testing.assert_array_equal(sufficient_predictors(X, np.eye(4)[:, :2]), X[:, :2])

    def test_full_orthonormal_basis_is_isometry(self, rng):
        X = rng.normal(size=(15, 4))
        Q = special_ortho_group.rvs(4, random_state=0)
        Z = sufficient_predictors(X, Q)
        dX = np.linalg.norm(X[:, None] - X[None], axis=2)
        dZ = np.linalg.norm(Z[:, None] - Z[None], axis=2)
        assert np.max(np.abs(dX - dZ)) < 1e-10

    def test_row_dot_products(self, rng):
        X, D = random_instance(rng, 30, 5, "euclidean")
        fit = wire_fit(X, D, 2)
        Z = sufficient_predictors(X, fit)
        for i in range(30):
            for l in range(2):
                assert Z[i, l] == pytest.approx(float(np.dot(X[i], fit.basis[:, l])), abs=1e-12)

    def test_mismatch(self, rng):
        with pytest.raises(DimensionError):
            sufficient_predictors(rng.normal(size=(5, 3)), np.eye(4)[:, :1])


@pytest.mark.slow
def test_independence_vs_signal():
    top_null, top_signal = [], []
    for r in range(20):
        design = SimDesign("I", "i", 500, 5, seed=r)
        s = generate(design, 0)
        D = sample_distances(s)
        X_null = np.random.default_rng([99, r]).uniform(size=s.X.shape)
        top_null.append(wire_fit(X_null, D, 1).singular_values[0])
        top_signal.append(wire_fit(s.X, D, 1).singular_values[0])
    assert max(top_null) < min(top_signal)


def test_model_one_recovers_direction():
    s = generate(SimDesign("I", "i", 400, 10, seed=5), 0)
    fit = wire_fit(s.X, sample_distances(s), 1)
    assert trace_correlation(s.basis, fit.basis) >= 0.97
    assert principal_angle(s.basis[:, 0], fit.basis[:, 0]) < 0.2
