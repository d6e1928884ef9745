"""
Distances for different response spaces
========================================

Everything downstream consumes a distance matrix, so switching the
response space is a matter of switching the metric.
"""

# %%

import numpy as np

from frechet_sdr import (
    EuclideanVectors,
    MetricSpec,
    QuantileDistributions,
    SpherePoints,
    pairwise_distance_matrix,
)

rng = np.random.default_rng(0)

# %%
# Points on a circle: geodesic distance is arc length, and Isomap over a
# neighbourhood graph approximates it from the ambient coordinates.

t = np.linspace(0, 2 * np.pi, 60, endpoint=False)
circle = np.column_stack([np.cos(t), np.sin(t)])
geo = pairwise_distance_matrix(SpherePoints(circle), MetricSpec("geodesic-sphere"))
iso = pairwise_distance_matrix(EuclideanVectors(circle), MetricSpec("isomap", k=4))
print("antipodal: geodesic %.4f, isomap %.4f, chord %.4f" % (geo[0, 30], iso[0, 30], 2.0))

# %%
# Normal distributions under the 2-Wasserstein distance:
# ``sqrt((mu1 - mu2)^2 + (s1 - s2)^2)``.

dists = QuantileDistributions(mu=[0.0, 3.0], sigma=[1.0, 2.0])
print("W2:", pairwise_distance_matrix(dists, MetricSpec("wasserstein"))[0, 1])
