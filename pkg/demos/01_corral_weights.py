"""
Feature weights on CorrAl
=========================

CorrAl has four relevant bits A0..B1, a feature C that agrees with the class
75% of the time and a random feature I. ReliefF tends to over-rate C; the
double variants feed their running estimate back into the neighbor search.
"""

# %% build the 64-row canonical set
from relieve.evalharness import criteria
from relieve.relief_core import relieff
from relieve.relief_double import drelieff, pdrelieff
from relieve.synthgen import gen_corral

d, truth = gen_corral(exhaustive=True)
print(d.n_instances, "rows,", d.n_features, "features")

# %% weigh with k = 5 nearest neighbors
for name, fn in [("ReliefF", relieff), ("dReliefF", drelieff), ("pdReliefF", pdrelieff)]:
    w = fn(d, k=5, seed=0)
    r = criteria(w, truth)
    row = "  ".join(f"{f}={w.weights[f]:+.3f}" for f in d.feature_names)
    print(f"{name:10s} {row}   s={r.separability:+.3f} u={r.usability:+.3f}")
