"""
The progressive factor
======================

f(w, t) = (1 - w) / t**T + w starts at 1 and drifts toward the weight w.
With the automatic steepness T = 2 / ln(m) the last iteration sits at
w + (1 - w) e^-2 whatever m is.
"""

# %%
import math

import numpy as np

from relieve.relief_double import ProgressiveSchedule, progressive_factor

m = 10
t = np.arange(1, m + 1)

# %% a fixed weight under several steepness values
for T in (0.5, 1.0, 2.0, 2 / math.log(m)):
    print(f"T={T:.3f}", np.round([progressive_factor(0.5, x, T=T) for x in t], 3))

# %% final factor under the automatic schedule
for m in (2, 10, 10_000):
    print(m, progressive_factor(0.5, m, ProgressiveSchedule(), m=m), 0.5 + 0.5 * math.exp(-2))
