"""
Separability on led24
=====================

Seven noisy LED segments plus 17 random bits. All three estimators should
place every segment above every noise feature.
"""

# %%
import numpy as np

from relieve.evalharness import criteria
from relieve.relief_core import relieff
from relieve.relief_double import drelieff, pdrelieff
from relieve.synthgen import gen_led

SEEDS = range(5)

# %% average separability and usability over a few seeds
for name, fn in [("ReliefF", relieff), ("dReliefF", drelieff), ("pdReliefF", pdrelieff)]:
    reps = []
    for seed in SEEDS:
        d, truth = gen_led(1000, irrelevant=17, noise=0.10, seed=seed)
        reps.append(criteria(fn(d, k=10, seed=seed), truth))
    s = np.mean([r.separability for r in reps])
    u = np.mean([r.usability for r in reps])
    print(f"{name:10s} s={s:+.3f} u={u:+.3f}")
