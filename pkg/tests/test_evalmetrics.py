import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import special_ortho_group

from frechet_sdr import DegenerateInputError, ValidationError, distance_correlation_sq, trace_correlation


def dcor_sq_loops(U, V):
    """Squared distance correlation straight from the definition, O(n^4)."""
    U = np.atleast_2d(np.asarray(U, float).T).T
    V = np.atleast_2d(np.asarray(V, float).T).T
    n = len(U)

    def dist(Z, i, j):
        return float(np.sqrt(np.sum((Z[i] - Z[j]) ** 2)))

    def dcov2(P, Q):
        # S1 + S2 - 2 S3 of Szekely, Rizzo and Bakirov
        s1 = s2a = s2b = s3 = 0.0
        for i, j in itertools.product(range(n), repeat=2):
            s1 += dist(P, i, j) * dist(Q, i, j)
            s2a += dist(P, i, j)
            s2b += dist(Q, i, j)
        for i, j, k in itertools.product(range(n), repeat=3):
            s3 += dist(P, i, j) * dist(Q, i, k)
        return s1 / n**2 + (s2a / n**2) * (s2b / n**2) - 2 * s3 / n**3

    return dcov2(U, V) / np.sqrt(dcov2(U, U) * dcov2(V, V))


def test_trace_correlation_examples(rng):
    B = rng.normal(size=(6, 2))
    assert trace_correlation(B, B) == pytest.approx(1.0, abs=1e-12)
    assert trace_correlation([[1], [0]], [[0], [1]]) == 0.0
    R = rng.normal(size=(2, 2))
    assert trace_correlation(B, B @ R) == pytest.approx(1.0, abs=1e-10)


def test_trace_correlation_symmetric(rng):
    A, B = rng.normal(size=(8, 3)), rng.normal(size=(8, 3))
    assert trace_correlation(A, B) == pytest.approx(trace_correlation(B, A), abs=1e-12)


def test_trace_correlation_rank_deficient():
    with pytest.raises(ValidationError):
        trace_correlation([[1, 2], [2, 4]], [[1, 0], [0, 1]])


def test_dcor_self_is_one(rng):
    U = rng.normal(size=(30, 2))
    assert distance_correlation_sq(U, U) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_dcor_matches_quadruple_loop(rng, n):
    U, V = rng.normal(size=(n, 2)), rng.normal(size=(n, 3))
    assert abs(distance_correlation_sq(U, V) - dcor_sq_loops(U, V)) <= 1e-12


def test_dcor_independent_null(rng):
    assert distance_correlation_sq(rng.normal(size=(2000, 1)), rng.normal(size=(2000, 1))) < 0.02


def test_dcor_degenerate():
    with pytest.raises(DegenerateInputError):
        distance_correlation_sq(np.ones((5, 1)), np.arange(5.0))


def test_dcor_invariances(rng):
    U = rng.normal(size=(40, 3))
    V = U[:, :1] ** 2 + 0.3 * rng.normal(size=(40, 1))
    base = distance_correlation_sq(U, V)
    Q = special_ortho_group.rvs(3, random_state=1)
    assert distance_correlation_sq(U @ Q + 5.0, V) == pytest.approx(base, abs=1e-10)
    assert distance_correlation_sq(3.0 * U, 3.0 * V) == pytest.approx(base, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 40), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**31))
def test_statistics_in_unit_interval(n, a, b, seed):
    g = np.random.default_rng(seed)
    U, V = g.normal(size=(n, a)), g.normal(size=(n, b))
    assert -1e-9 <= distance_correlation_sq(U, V) <= 1 + 1e-9
    A, B = g.normal(size=(5, min(a, b))), g.normal(size=(5, min(a, b)))
    assert -1e-9 <= trace_correlation(A, B) <= 1 + 1e-9
