"""Per-feature filter measures computed from class/value contingency statistics."""

from __future__ import annotations

import enum

import numpy as np

from . import probstats
from .datamodel import Dataset, FeatureWeights, UsageError

CHI2_EPSILON = 1e-9


class FilterMeasure(str, enum.Enum):
    CCF = "ccf"
    GINI_GAIN = "gini"
    INFO_GAIN = "ig"
    GAIN_RATIO = "gr"
    ENTROPY_DIST = "entdist"
    MANTARAS_DIST = "mantaras"
    DIST_DIFF = "diffdist"
    KL_DIFF = "kl"
    CHI2 = "chi2"


def _nominal(d: Dataset, feature: str, notes: list | None = None) -> Dataset:
    if d.feature(feature).is_linear:
        if notes is not None:
            notes.append(f"{feature}: discretized into {probstats.DEFAULT_BINS} equal-width bins")
        return probstats.discretize(d, feature)
    return d


def _observed_table(d: Dataset, feature: str) -> np.ndarray:
    """Counts restricted to observed classes and values (no all-zero rows/columns)."""
    counts = probstats.contingency(d, feature).counts
    counts = counts[counts.sum(axis=1) > 0]
    return counts[:, counts.sum(axis=0) > 0].astype(float)


def _positive_code(d: Dataset, feature: str, positive: str | None) -> int:
    f = d.feature(feature)
    if positive is None:
        positive = min(f.values)
    if positive not in f.values:
        raise UsageError(f"{positive!r} is not a value of {feature!r}")
    return f.values.index(positive)


def pcf_weights(d: Dataset, feature: str, positive: str | None = None) -> dict[str, float]:
    """P(c | x+) for every class, x+ being the positive value of a binary feature."""
    f = d.feature(feature)
    if f.is_linear or len(f.values) != 2:
        raise UsageError(f"PCF needs a binary nominal feature; {feature!r} is not")
    col = probstats.contingency(d, feature).counts[:, _positive_code(d, feature, positive)]
    total = col.sum()
    if total == 0:
        return {c: 0.0 for c in d.class_values}
    return {c: float(n / total) for c, n in zip(d.class_values, col)}


def ccf_variants(d: Dataset, feature: str) -> dict[str, float]:
    """Sum of squared P(c | x) for each value x taken as the positive value (one-vs-rest)."""
    d = _nominal(d, feature)
    counts = probstats.contingency(d, feature).counts.astype(float)
    out = {}
    for k, value in enumerate(d.feature(feature).values):
        col = counts[:, k]
        if col.sum() > 0:
            out[value] = float(((col / col.sum()) ** 2).sum())
    return out


def ccf_weight(d: Dataset, feature: str, positive: str | None = None) -> float:
    """CCF: binary features use the positive value, wider ones average their one-vs-rest variants."""
    d = _nominal(d, feature)
    f = d.feature(feature)
    variants = ccf_variants(d, feature)
    if len(f.values) == 2:
        value = f.values[_positive_code(d, feature, positive)]
        return variants.get(value, 0.0)
    return float(np.mean(list(variants.values()))) if variants else 0.0


def vdm_weights(d: Dataset, feature: str, classic: bool = False) -> dict[str, float]:
    """Per-value weights sqrt(sum_c (P(x|c) / P(x))^2).

    ``classic`` switches to sqrt(sum_c P(c|x)^2). Values that never occur are omitted.
    """
    d = _nominal(d, feature)
    counts = probstats.contingency(d, feature).counts.astype(float)
    m = counts.sum()
    px = counts.sum(axis=0) / m
    nc = counts.sum(axis=1)
    out = {}
    for k, value in enumerate(d.feature(feature).values):
        if px[k] == 0:
            continue
        if classic:
            terms = counts[:, k] / counts[:, k].sum()
        else:
            present = nc > 0
            terms = (counts[present, k] / nc[present]) / px[k]
        out[value] = float(np.sqrt((terms ** 2).sum()))
    return out


def gini_gain(joint: np.ndarray) -> float:
    """Gini-index gain from a (classes, values) joint probability array."""
    px = joint.sum(axis=0)
    pc = joint.sum(axis=1)
    ok = px > 0
    cond = joint[:, ok] / px[ok]
    return float((px[ok] * (cond ** 2).sum(axis=0)).sum() - (pc ** 2).sum())


def chi_squared(counts: np.ndarray) -> float:
    counts = np.asarray(counts, dtype=float)
    m = counts.sum()
    expected = np.outer(counts.sum(axis=1), counts.sum(axis=0)) / m
    expected = np.where(expected == 0, CHI2_EPSILON, expected)
    return float(((counts - expected) ** 2 / expected).sum())


def measure_from_table(counts: np.ndarray, measure: FilterMeasure, notes: list | None = None) -> float:
    """Evaluate a filter measure on a (classes, values) count table."""
    measure = FilterMeasure(measure)
    counts = np.asarray(counts, dtype=float)
    if measure is FilterMeasure.CHI2:
        return chi_squared(counts)
    joint = counts / counts.sum()
    px = joint.sum(axis=0)
    pc = joint.sum(axis=1)
    h_x = probstats.entropy(px)
    h_c = probstats.entropy(pc)
    h_cx = probstats.entropy(joint)
    mi = h_x + h_c - h_cx
    if measure is FilterMeasure.CCF:
        ok = px > 0
        variants = ((joint[:, ok] / px[ok]) ** 2).sum(axis=0)
        if counts.shape[1] == 2 and ok.all():
            return float(variants[0])
        return float(variants.mean())
    if measure is FilterMeasure.GINI_GAIN:
        return gini_gain(joint)
    if measure is FilterMeasure.INFO_GAIN:
        pdm = probstats.EmpiricalPDM(["x", "c"], [range(joint.shape[1]), range(joint.shape[0])], joint.T)
        return probstats.mutual_information(pdm)
    if measure is FilterMeasure.GAIN_RATIO:
        if h_x <= 0:
            if notes is not None:
                notes.append("gain ratio: H(X) = 0, returned 0")
            return 0.0
        return measure_from_table(counts, FilterMeasure.INFO_GAIN) / h_x
    if measure is FilterMeasure.ENTROPY_DIST:
        return h_cx - mi
    if measure is FilterMeasure.MANTARAS_DIST:
        if h_cx <= 0:
            if notes is not None:
                notes.append("mantaras: H(C,X) = 0, returned 0")
            return 0.0
        return 2.0 - (h_x + h_c) / h_cx
    if measure is FilterMeasure.DIST_DIFF:
        return float(np.abs(joint - np.outer(pc, px)).sum())
    if measure is FilterMeasure.KL_DIFF:
        return probstats.kl_divergence(joint, np.outer(pc, px))
    raise UsageError(f"unknown measure {measure!r}")


def filter_weight(d: Dataset, feature: str, measure, notes: list | None = None) -> float:
    try:
        measure = FilterMeasure(measure)
    except ValueError:
        raise UsageError(f"unknown filter measure {measure!r}") from None
    d = _nominal(d, feature, notes)
    if measure is FilterMeasure.CCF:
        return ccf_weight(d, feature)
    return measure_from_table(_observed_table(d, feature), measure, notes)


def weigh(d: Dataset, measure) -> FeatureWeights:
    """Score every feature with one filter measure."""
    measure = FilterMeasure(measure)
    notes: list[str] = []
    weights = {name: filter_weight(d, name, measure, notes) for name in d.feature_names}
    params = {"bins": probstats.DEFAULT_BINS}
    if notes:
        params["notes"] = notes
    return FeatureWeights(weights, measure.value, params)
