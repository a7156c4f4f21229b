"""ReliefF variants that feed their own running estimates back into the neighbor distance.

dReliefF weighs each feature's diff by its current (clamped) weight estimate.
pdReliefF blends that estimate in gradually: the factor for weight w at
iteration t is (1 - w) / t**T + w, which is 1 at t = 1 and tends to w.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .datamodel import Dataset, FeatureWeights, UsageError
from .relief_core import ReliefConfig, relieff_loop, sample_order


class DoubleVariant(str, enum.Enum):
    DRELIEFF = "drelieff"
    PDRELIEFF = "pdrelieff"


@dataclass(frozen=True)
class ProgressiveSchedule:
    """Steepness of the blending curve; ``auto`` sets T = 2 / ln(m) from the iteration count."""

    T: float | None = None
    auto: bool = True

    def __post_init__(self):
        if not self.auto and (self.T is None or self.T <= 0):
            raise UsageError("a fixed schedule needs T > 0")

    @classmethod
    def fixed(cls, T: float) -> "ProgressiveSchedule":
        return cls(T=T, auto=False)

    def steepness(self, m: int) -> float:
        if not self.auto:
            return float(self.T)
        if m < 2:
            raise UsageError("automatic T needs at least 2 iterations")
        return 2.0 / math.log(m)


def progressive_factor(w, t: float, sched: ProgressiveSchedule | None = None, m: int | None = None, T: float | None = None):
    """(1 - w) / t**T + w for t >= 1. Works elementwise on arrays of weights."""
    if t < 1:
        raise UsageError("iterations are counted from 1")
    if T is None:
        sched = sched or ProgressiveSchedule()
        if sched.auto and m is None:
            raise UsageError("automatic T needs the total iteration count m")
        T = sched.steepness(m) if sched.auto else sched.T
    return (1.0 - np.asarray(w, dtype=float)) / t ** T + w


def _guarded(factors: np.ndarray) -> np.ndarray:
    factors = np.maximum(factors, 0.0)
    if not (factors > 0).any():
        return np.ones_like(factors)
    return factors


def run_double_relief(
    d: Dataset,
    cfg: ReliefConfig,
    variant: DoubleVariant | str = DoubleVariant.PDRELIEFF,
    sched: ProgressiveSchedule | None = None,
    trace: list | None = None,
) -> FeatureWeights:
    """ReliefF whose neighbor search uses the weight estimate accumulated so far.

    Negative estimates are clamped to 0 before use and an all-zero factor
    vector falls back to the unweighted distance.
    """
    variant = DoubleVariant(variant)
    sched = sched or ProgressiveSchedule()
    order = sample_order(d.n_instances, cfg.m, cfg.seed)
    m = len(order)
    params = {"variant": variant.value, "m": "ALL" if cfg.m is None else cfg.m, "k": cfg.k, "seed": cfg.seed,
              "diff": cfg.diff.mode.value}
    if variant == DoubleVariant.DRELIEFF:
        def factors(t, estimate):
            return _guarded(estimate)
    else:
        T = sched.steepness(m) if (sched.auto and m >= 2) else (sched.T if not sched.auto else 1.0)
        params["T"] = T
        params["schedule"] = "auto" if sched.auto else "fixed"

        def factors(t, estimate):
            return _guarded(progressive_factor(estimate, t, T=T))

    W = relieff_loop(d, order, cfg.k, cfg.diff, factors=factors, trace=trace)
    return FeatureWeights(dict(zip(d.feature_names, map(float, W))), variant.value, params)


def drelieff(d: Dataset, k: int = 10, m=None, seed: int = 0) -> FeatureWeights:
    return run_double_relief(d, ReliefConfig(m=m, k=k, seed=seed), DoubleVariant.DRELIEFF)


def pdrelieff(d: Dataset, k: int = 10, m=None, seed: int = 0, T: float | None = None) -> FeatureWeights:
    sched = ProgressiveSchedule() if T is None else ProgressiveSchedule.fixed(T)
    return run_double_relief(d, ReliefConfig(m=m, k=k, seed=seed), DoubleVariant.PDRELIEFF, sched)
