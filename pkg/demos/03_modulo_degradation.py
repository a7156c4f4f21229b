"""
Random features and Modulo-2-2
==============================

Adding random features dilutes the plain distance, so ReliefF's separability
falls. pdReliefF re-weights the distance as it learns and stays roughly flat.
Output is CSV, ready for any plotting tool.
"""

# %%
import numpy as np

from relieve.evalharness import criteria
from relieve.relief_core import relieff
from relieve.relief_double import pdrelieff
from relieve.synthgen import gen_modulo

# %%
print("random_features,relieff,pdrelieff")
for R in range(5, 55, 5):
    rf, pd = [], []
    for seed in range(3):
        d, truth = gen_modulo(2, 2, R, 400, seed=seed)
        rf.append(criteria(relieff(d, k=10, seed=seed), truth).separability)
        pd.append(criteria(pdrelieff(d, k=10, seed=seed), truth).separability)
    print(f"{R},{np.mean(rf):.4f},{np.mean(pd):.4f}")
