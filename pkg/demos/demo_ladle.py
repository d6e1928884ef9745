"""
Choosing the number of directions
=================================

The ladle combines two curves: bootstrap variability of the estimated
basis (small while ``k`` is at most the true dimension) and the scaled
singular values (small once ``k`` passes it). Their sum is minimised at
the estimate.
"""

# %%

import numpy as np

from frechet_sdr import SimDesign, generate, ladle_estimate
from frechet_sdr.simgen import sample_distances

for case in ("i", "ii"):
    sample = generate(SimDesign(model="I", case=case, n=200, p=10, seed=3))
    res = ladle_estimate(sample.X, sample_distances(sample), n_boot=50, seed=1)
    print(f"case {case}: true d = {sample.d_true}, estimated d = {res.d_hat}")
    print("   objective:", np.round(res.objective, 3))
