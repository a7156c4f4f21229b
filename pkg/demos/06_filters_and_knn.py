"""
Filters and 1-NN subset curves
==============================

Score Monk-1 with a few filter measures and with ReliefF, then grow the
feature set in weight order and track 1-NN cross-validated accuracy.
"""

# %%
from relieve.evalharness import best_point, cv_curve
from relieve.filters import weigh
from relieve.relief_core import relieff
from relieve.synthgen import gen_monk

d, truth = gen_monk(1, exhaustive=True)

# %% filter orderings
for measure in ("ig", "gr", "gini", "chi2", "mantaras"):
    print(f"{measure:9s}", weigh(d, measure).ordering())

# %% ReliefF sees the A1 = A2 interaction that the filters miss
w = relieff(d, k=5)
print("relieff  ", w.ordering())

# %% weight-ordered 1-NN curve
curve = cv_curve(d, w, folds=5, seed=0)
for p in curve:
    print(p.n_features, f"{p.accuracy:.2f}", ",".join(p.feature_set))
print("best:", best_point(curve).n_features, "features")
