"""Diff metrics, instance distances and the Relief family of estimators."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from . import probstats
from .datamodel import Dataset, FeatureWeights, UsageError

log = logging.getLogger(__name__)

ALL = None  # m = ALL: one pass over every instance
TIE_DECIMALS = 10  # distances equal to this many decimals count as tied


class Variant(str, enum.Enum):
    ORIGINAL = "relief"
    RELIEVED = "relieved"
    RELIEFF = "relieff"
    MYOPIC = "myopic"


class DiffMode(str, enum.Enum):
    HEOM_BASIC = "heom"
    RELIEF_D = "relief-d"


@dataclass(frozen=True)
class DiffMetric:
    mode: DiffMode = DiffMode.HEOM_BASIC
    smoothing: bool = False


@dataclass(frozen=True)
class ReliefConfig:
    variant: Variant = Variant.RELIEFF
    m: int | None = ALL
    k: int = 10
    seed: int = 0
    diff: DiffMetric = field(default_factory=DiffMetric)

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.k < 1:
            raise UsageError("k must be at least 1")
        if self.m is not None and self.m < 1:
            raise UsageError("m must be at least 1")


@dataclass
class NeighborSet:
    hits: list[int]
    misses: dict[int, list[int]]


class DiffTable:
    """Precomputed per-dataset state for evaluating diff() between one instance and all others."""

    def __init__(self, d: Dataset, metric: DiffMetric | None = None):
        self.d = d
        self.metric = metric or DiffMetric()
        self.X = d.X
        self.y = d.y
        self.linear = d.linear_mask
        widths = np.array([f.width if f.is_linear else 1.0 for f in d.schema])
        self.inv_width = np.where(widths > 0, 1.0 / np.where(widths > 0, widths, 1.0), 0.0)
        self.missing = np.isnan(d.X)
        self.incomplete = np.flatnonzero(self.missing.any(axis=0))
        self.cond = {}
        self.codes = {}
        if self.metric.mode == DiffMode.RELIEF_D:
            for j in self.incomplete:
                f = d.schema[j]
                self.cond[j] = probstats.class_conditionals(d, f.name, self.metric.smoothing)
                col = d.X[:, j]
                if f.is_linear:
                    col = probstats.bin_index(col, *f.values, probstats.DEFAULT_BINS)
                self.codes[j] = col

    def rows(self, q: int) -> np.ndarray:
        """diff(A, q, i) for every instance i (rows) and feature A (columns)."""
        X, xq = self.X, self.X[q]
        with np.errstate(invalid="ignore"):
            D = np.where(self.linear, np.abs(X - xq) * self.inv_width, (X != xq).astype(float))
        if self.incomplete.size == 0:
            return D
        for j in self.incomplete:
            miss_i = self.missing[:, j]
            miss_q = self.missing[q, j]
            if not miss_q and not miss_i.any():
                continue
            if self.metric.mode == DiffMode.HEOM_BASIC:
                D[:, j] = np.where(miss_i | miss_q, 1.0, D[:, j])
                continue
            cond = self.cond[j]
            codes = self.codes[j]
            col = D[:, j]
            if miss_q:
                both = miss_i
                known = ~miss_i
                col[known] = 1.0 - cond[self.y[q], codes[known].astype(np.int64)]
                col[both] = 1.0 - cond[self.y[both]] @ cond[self.y[q]]
            else:
                col[miss_i] = 1.0 - cond[self.y[miss_i], int(codes[q])]
            D[:, j] = np.clip(col, 0.0, 1.0)
        return D

    def distances(self, q: int, factors: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
        D = self.rows(q)
        return D, (D.sum(axis=1) if factors is None else D @ factors)


def diff(metric: DiffMetric, d: Dataset, feature: str, i1: int, i2: int) -> float:
    j = d.index_of(feature)
    for i in (i1, i2):
        if not 0 <= i < d.n_instances:
            raise IndexError(f"instance index {i} out of range")
    return float(DiffTable(d, metric).rows(i1)[i2, j])


def _check_factors(d: Dataset, weights) -> np.ndarray | None:
    if weights is None:
        return None
    if isinstance(weights, dict):
        weights = [weights[n] for n in d.feature_names]
    f = np.asarray(weights, dtype=float)
    if f.shape != (d.n_features,):
        raise UsageError("need one distance factor per feature")
    if (f < 0).any():
        raise UsageError("distance factors must be non-negative")
    return f


def instance_distance(d: Dataset, i1: int, i2: int, weights=None, metric: DiffMetric | None = None) -> float:
    """Sum over features of factor * diff, factor 1 when no weights are given."""
    factors = _check_factors(d, weights)
    _, dist = DiffTable(d, metric).distances(i1, factors)
    return float(dist[i2])


def nearest(candidates: np.ndarray, dist: np.ndarray, k: int) -> list[int]:
    """The k candidates with the smallest (distance, index).

    Distances are rounded first so that sums which differ only by
    floating-point accumulation order still tie.
    """
    if candidates.size == 0:
        return []
    order = np.lexsort((candidates, np.round(dist[candidates], TIE_DECIMALS)))
    return [int(i) for i in candidates[order[:k]]]


def neighbors_from_distances(y: np.ndarray, n_classes: int, query: int, dist: np.ndarray, k: int) -> NeighborSet:
    idx = np.arange(len(y))
    others = idx != query
    cq = y[query]
    hits = nearest(idx[others & (y == cq)], dist, k)
    misses = {}
    for c in range(n_classes):
        if c != cq:
            misses[c] = nearest(idx[y == c], dist, k)
    return NeighborSet(hits, misses)


def find_neighbors(d: Dataset, query: int, k: int, weights=None, metric: DiffMetric | None = None) -> NeighborSet:
    """k nearest hits and, for every other class, k nearest misses. Ties go to the lower index."""
    if k < 1:
        raise UsageError("k must be at least 1")
    _, dist = DiffTable(d, metric).distances(query, _check_factors(d, weights))
    return neighbors_from_distances(d.y, d.n_classes, query, dist, k)


# ---------------------------------------------------------------------------
# estimators


def sample_order(n: int, m: int | None, seed: int) -> np.ndarray:
    """Instances visited by the outer loop.

    A full pass (m = ALL or m = n) is a seeded permutation; shorter runs draw
    with replacement.
    """
    if m is not None and m > n:
        raise UsageError(f"m = {m} exceeds the number of instances ({n})")
    rng = np.random.default_rng(seed)
    if m is None or m == n:
        return rng.permutation(n)
    return rng.integers(0, n, size=m)


FactorFn = Callable[[int, np.ndarray], "np.ndarray | None"]


def relieff_loop(
    d: Dataset,
    order: Sequence[int],
    k: int,
    metric: DiffMetric | None = None,
    factors: FactorFn | None = None,
    trace: list | None = None,
) -> np.ndarray:
    """Shared outer loop of Relief, Relieved, ReliefF and the double variants.

    ``factors(t, estimate)`` returns the distance factors for iteration t
    (1-based) given the running weight estimate (the mean update so far);
    None means unweighted. ``trace`` collects each iteration's NeighborSet.
    """
    table = DiffTable(d, metric)
    priors = d.class_priors()
    m = len(order)
    W = np.zeros(d.n_features)
    for t, q in enumerate(order, start=1):
        q = int(q)
        f = None
        if factors is not None:
            estimate = W * m / (t - 1) if t > 1 else np.zeros_like(W)
            f = factors(t, estimate)
        D, dist = table.distances(q, f)
        nb = neighbors_from_distances(d.y, d.n_classes, q, dist, k)
        if trace is not None:
            trace.append(nb)
        if nb.hits:
            W -= D[nb.hits].sum(axis=0) / (m * len(nb.hits))
        else:
            log.info("instance %d has no nearest hit; hit term skipped", q)
        rest = 1.0 - priors[d.y[q]]
        if rest <= 0:
            continue
        for c, ms in nb.misses.items():
            if ms:
                W += priors[c] / rest * D[ms].sum(axis=0) / (m * len(ms))
    return W


def myopic_relieff(d: Dataset, feature: str, notes: list | None = None) -> float:
    """Closed-form ReliefF weight when every instance is a neighbor.

    Uses P_eqval = sum_x P(x)^2, P_samecl = sum_c P(c)^2 and the modified
    Gini gain where each value's class purity is weighted by P(x)^2.
    """
    if d.feature(feature).is_linear:
        d = probstats.discretize(d, feature)
    counts = probstats.contingency(d, feature).counts.astype(float)
    joint = counts / counts.sum()
    px = joint.sum(axis=0)
    pc = joint.sum(axis=1)
    p_eqval = (px ** 2).sum()
    p_samecl = (pc ** 2).sum()
    if p_samecl <= 0 or p_samecl >= 1:
        if notes is not None:
            notes.append(f"{feature}: degenerate class distribution, myopic weight set to 0")
        return 0.0
    ok = px > 0
    purity = ((joint[:, ok] / px[ok]) ** 2).sum(axis=0)
    gg_mod = ((px[ok] ** 2 / p_eqval) * purity).sum() - p_samecl
    return float(p_eqval * gg_mod / (p_samecl * (1.0 - p_samecl)))


def run_relief(d: Dataset, cfg: ReliefConfig) -> FeatureWeights:
    variant = cfg.variant
    params = {"variant": variant.value, "m": "ALL" if cfg.m is None else cfg.m, "k": cfg.k,
              "seed": cfg.seed, "diff": cfg.diff.mode.value if isinstance(cfg.diff.mode, DiffMode) else cfg.diff.mode}
    if variant == Variant.MYOPIC:
        notes: list[str] = []
        w = {f: myopic_relieff(d, f, notes) for f in d.feature_names}
        if notes:
            params["notes"] = notes
        return FeatureWeights(w, variant.value, params)
    if variant in (Variant.ORIGINAL, Variant.RELIEVED):
        if d.n_classes != 2:
            raise UsageError(f"{variant.value} handles exactly two classes; use relieff for {d.n_classes} classes")
        k = 1
        order = np.arange(d.n_instances) if variant == Variant.RELIEVED else sample_order(d.n_instances, cfg.m, cfg.seed)
        params["k"] = 1
        if variant == Variant.RELIEVED:
            params["m"] = "ALL"
    else:
        k = cfg.k
        order = sample_order(d.n_instances, cfg.m, cfg.seed)
    W = relieff_loop(d, order, k, cfg.diff)
    return FeatureWeights(dict(zip(d.feature_names, map(float, W))), variant.value, params)


def relieff(d: Dataset, k: int = 10, m: int | None = ALL, seed: int = 0, **kw) -> FeatureWeights:
    return run_relief(d, ReliefConfig(Variant.RELIEFF, m=m, k=k, seed=seed, **kw))


def with_variant(cfg: ReliefConfig, variant: Variant) -> ReliefConfig:
    return replace(cfg, variant=variant)
