"""
Redundancy levels
=================

In the four-row table below f_r is the negation of f1 AND f2. It is not
correlated with either feature alone, yet {f1, f2} is a Markov blanket for
it, so its redundancy level is 1.
"""

# %%
from relieve.datamodel import parse_dataset
from relieve.probstats import EmpiricalPDM
from relieve.redundancy import is_markov_blanket, redundancy_level

text = "f1,f2,f_r,C\n0,0,1,0\n0,1,1,0\n1,0,1,0\n1,1,0,1\n"
d = parse_dataset(text, {"f1": "nominal", "f2": "nominal", "f_r": "nominal"})
pdm = EmpiricalPDM.from_dataset(d)

# %%
print("blanket {f1,f2} for f_r:", is_markov_blanket(pdm, "f_r", ("f1", "f2")))
print("blanket {f_r} for f1:  ", is_markov_blanket(pdm, "f1", ("f_r",)))

# %% levels, and the max-based variant for comparison
for f in ("f1", "f2", "f_r"):
    lo = redundancy_level(pdm, f, class_var="C")
    hi = redundancy_level(pdm, f, as_printed=True)
    print(f"{f:4s} level={lo.level:.3f} via {lo.best_subset}   max-variant={hi.level:.3f}")
