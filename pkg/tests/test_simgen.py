import numpy as np
import pytest

from frechet_sdr import ParameterError, QuantileDistributions, SimDesign, SpherePoints, generate, run_experiment
from frechet_sdr.simgen import gen_predictors, gen_response, with_n


def test_design_validation():
    with pytest.raises(ParameterError):
        SimDesign(p=3)
    with pytest.raises(ParameterError):
        SimDesign(model="V")
    with pytest.raises(ParameterError):
        SimDesign(n=1)


def test_poisson_scenario_mean():
    X = gen_predictors(SimDesign(n=100_000, p=4, scenario="S3"), np.random.default_rng(0))
    assert np.all(np.abs(X.mean(axis=0) - 1) < 0.02)


def test_correlated_scenario():
    X = gen_predictors(SimDesign(n=100_000, p=5, scenario="S2"), np.random.default_rng(1))
    C = np.corrcoef(X, rowvar=False)
    assert np.all(np.abs(np.diag(C, 1) - 0.2) < 0.02)
    assert abs(C[0, 2] - 0.04) < 0.02


def test_exponential_and_shifted_scenarios():
    g = np.random.default_rng(2)
    X4 = gen_predictors(SimDesign(n=50_000, p=4, scenario="S4"), g)
    assert X4.min() >= 0 and np.all(np.abs(X4.mean(axis=0) - 1) < 0.03)
    X1 = gen_predictors(SimDesign(n=50_000, p=4, scenario="S1"), g)
    assert np.all(np.abs(X1.std(axis=0) - 1) < 0.02)


@pytest.mark.parametrize("model", ["I", "II", "III", "IV"])
@pytest.mark.parametrize("case", ["i", "ii"])
def test_determinism_and_shapes(model, case):
    design = SimDesign(model, case, n=50, p=6, seed=9)
    a, b = generate(design, 3), generate(design, 3)
    np.testing.assert_array_equal(a.X, b.X)
    assert a.basis.shape[0] == 6
    assert a.f_true.shape[0] == 50
    if model == "I":
        assert isinstance(a.Y, QuantileDistributions)
        np.testing.assert_array_equal(a.Y.mu, b.Y.mu)
        assert a.d_true == (1 if case == "i" else 2)
    else:
        assert isinstance(a.Y, SpherePoints)
        np.testing.assert_array_equal(a.Y.values, b.Y.values)
        assert np.max(np.abs(np.linalg.norm(a.Y.values, axis=1) - 1)) <= 1e-12
    c = generate(design, 4)
    assert not np.array_equal(a.X, c.X)


def test_circle_and_s3_dimensions():
    assert generate(SimDesign("II", "i", 10, 5), 0).Y.values.shape == (10, 2)
    assert generate(SimDesign("III", "i", 10, 5), 0).Y.values.shape == (10, 3)
    assert generate(SimDesign("IV", "ii", 10, 5), 0).Y.values.shape == (10, 4)


def test_model_one_location_mean():
    n = 100_000
    x = np.linspace(0.1, 0.4, 10)
    X = np.tile(x, (n, 1))
    s = gen_response(SimDesign("I", "i", n, 10), X, np.random.default_rng(5))
    target = np.exp(x[0] + x[1])
    assert abs(s.Y.mu.mean() - target) < 0.01
    assert np.all(s.Y.sigma == 1.0)


def test_model_two_custom_direction():
    b = tuple([1.0, 0, 0, 0, 2.0])
    s = generate(SimDesign("II", "i", 20, 5, beta1=b), 0)
    np.testing.assert_allclose(s.f_true[:, 0], s.X @ np.array(b))
    with pytest.raises(ParameterError):
        SimDesign("II", "i", 20, 5, beta1=(1.0, 1.0))


def test_noise_free_circle_is_exact():
    s = generate(SimDesign("II", "ii", 20, 5, noise_sd=0.0), 0)
    f = s.f_true[:, 0]
    np.testing.assert_allclose(s.Y.values, np.column_stack([np.cos(f), np.sin(f)]), atol=1e-15)


def test_experiment_summary_rows():
    summary = run_experiment(SimDesign("I", "i", 60, 5), "wire", reps=3)
    rows = summary.to_rows()
    assert rows[0] == ["rep", "r2", "rho2"]
    assert [r[0] for r in rows[1:]] == ["0", "1", "2", "mean"]
    assert summary.mean["r2"] == pytest.approx(np.mean([r["r2"] for r in summary.records]))
    with pytest.raises(ParameterError):
        run_experiment(SimDesign(), "sir")


@pytest.mark.slow
@pytest.mark.parametrize("model, case", [("I", "i"), ("I", "ii"), ("II", "i"), ("III", "i"), ("IV", "i")])
def test_r2_grows_with_n(model, case):
    design = SimDesign(model, case, 100, 10, seed=7)
    small = run_experiment(design, "wire", reps=20).mean["r2"]
    large = run_experiment(with_n(design, 400), "wire", reps=20).mean["r2"]
    assert large >= small
