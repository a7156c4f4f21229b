"""Contingency tables, discretization and information-theoretic primitives.

Entropies are in bits. Probabilities are maximum-likelihood relative
frequencies; missing cells are dropped per statistic, not per row.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .datamodel import Dataset, FeatureSchema, NOMINAL, UsageError

DEFAULT_BINS = 10


@dataclass(frozen=True)
class ContingencyTable:
    """Class-by-value counts ``counts[c, x]``."""

    counts: np.ndarray
    class_values: tuple
    feature_values: tuple

    @property
    def row_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def joint(self) -> np.ndarray:
        """P(c, x) as a (w, v) array."""
        return self.counts / self.total


def contingency(d: Dataset, feature: str) -> ContingencyTable:
    j = d.index_of(feature)
    f = d.schema[j]
    if f.is_linear:
        raise UsageError(f"feature {feature!r} is linear; discretize it first")
    col = d.X[:, j]
    ok = ~np.isnan(col)
    if not ok.any():
        raise UsageError(f"feature {feature!r} has no present values")
    v = len(f.values)
    counts = np.zeros((d.n_classes, v), dtype=np.int64)
    np.add.at(counts, (d.y[ok], col[ok].astype(np.int64)), 1)
    return ContingencyTable(counts, d.class_values, f.values)


def bin_edges(lo: float, hi: float, bins: int) -> np.ndarray:
    return lo + (hi - lo) * np.arange(bins + 1) / bins


def bin_index(values: np.ndarray, lo: float, hi: float, bins: int) -> np.ndarray:
    """Equal-width bin of each value; NaN stays NaN, the maximum lands in the last bin."""
    values = np.asarray(values, dtype=float)
    out = np.full(values.shape, np.nan)
    ok = ~np.isnan(values)
    if hi <= lo:
        out[ok] = 0
        return out
    idx = np.floor((values[ok] - lo) / (hi - lo) * bins)
    out[ok] = np.clip(idx, 0, bins - 1)
    return out


def discretize(d: Dataset, feature: str, bins: int = DEFAULT_BINS) -> Dataset:
    """Replace a linear feature by equal-width bin ids ``'0'..str(bins-1)``."""
    if bins < 2:
        raise UsageError("need at least 2 bins")
    j = d.index_of(feature)
    f = d.schema[j]
    if not f.is_linear:
        raise UsageError(f"feature {feature!r} is already nominal")
    lo, hi = f.values
    column = bin_index(d.X[:, j], lo, hi, bins)
    schema = FeatureSchema(f.name, NOMINAL, tuple(str(b) for b in range(bins)))
    return d.replace_feature(j, schema, column)


def discretize_all(d: Dataset, bins: int = DEFAULT_BINS) -> Dataset:
    for f in d.schema:
        if f.is_linear:
            d = discretize(d, f.name, bins)
    return d


def entropy(p) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float).ravel()
    if (p < 0).any():
        raise ValueError("probabilities must be non-negative")
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def kl_divergence(p, q) -> float:
    """D(p || q) in bits over the support of p."""
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    nz = p > 0
    if (q[nz] <= 0).any():
        return float("inf")
    return float((p[nz] * np.log2(p[nz] / q[nz])).sum())


def class_conditionals(d: Dataset, feature: str, smoothing: bool = False) -> np.ndarray:
    """P(x | c) as a (classes, values) array; add-one smoothing optional.

    Linear features are binned first with the default equal-width scheme.
    """
    f = d.feature(feature)
    if f.is_linear:
        d = discretize(d, feature)
    counts = contingency(d, feature).counts.astype(float)
    if smoothing:
        counts = counts + 1.0
    totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(totals > 0, counts / np.where(totals > 0, totals, 1), 0.0)
    return out


class EmpiricalPDM:
    """Joint distribution over named discrete variables, stored densely.

    ``prob`` has one axis per variable, in the order of ``variables``;
    ``values[k]`` lists the symbols along axis ``k``.
    """

    def __init__(self, variables: Sequence[str], values: Sequence[Sequence], prob: np.ndarray):
        prob = np.asarray(prob, dtype=float)
        if prob.ndim != len(variables) or prob.shape != tuple(len(v) for v in values):
            raise UsageError("probability array does not match the declared variables")
        if len(set(variables)) != len(variables):
            raise UsageError("variable names must be unique")
        if (prob < 0).any() or abs(prob.sum() - 1.0) > 1e-12:
            raise UsageError("probabilities must be non-negative and sum to 1")
        self.variables = tuple(variables)
        self.values = tuple(tuple(v) for v in values)
        self.prob = prob

    def __repr__(self):
        return f"EmpiricalPDM({list(self.variables)})"

    @classmethod
    def from_support(cls, variables: Sequence[str], support: Mapping[tuple, float], values=None) -> "EmpiricalPDM":
        """Build from a ``{configuration tuple: probability}`` map."""
        if values is None:
            values = [sorted({t[k] for t in support}, key=str) for k in range(len(variables))]
        index = [{v: i for i, v in enumerate(vals)} for vals in values]
        prob = np.zeros(tuple(len(v) for v in values))
        for tup, p in support.items():
            if len(tup) != len(variables):
                raise UsageError("tuple arity differs from the variable count")
            prob[tuple(ix[t] for ix, t in zip(index, tup))] += p
        return cls(variables, values, prob)

    @classmethod
    def from_dataset(cls, d: Dataset, variables: Sequence[str] | None = None, bins: int = DEFAULT_BINS) -> "EmpiricalPDM":
        """Relative-frequency estimate over features (and the class, by its column name).

        Rows with a missing cell in any of the requested variables are dropped.
        """
        if variables is None:
            variables = d.feature_names + [d.class_name]
        cols, values = [], []
        for name in variables:
            if name == d.class_name:
                cols.append(d.y.astype(float))
                values.append(d.class_values)
                continue
            f = d.feature(name)
            if f.is_linear:
                col = bin_index(d.X[:, d.index_of(name)], *f.values, bins)
                vals = tuple(str(b) for b in range(bins))
            else:
                col = d.X[:, d.index_of(name)]
                vals = f.values
            cols.append(col)
            values.append(vals)
        M = np.column_stack(cols)
        keep = ~np.isnan(M).any(axis=1)
        if not keep.any():
            raise UsageError("no complete rows for the requested variables")
        M = M[keep].astype(np.int64)
        counts = np.zeros(tuple(len(v) for v in values))
        np.add.at(counts, tuple(M.T), 1)
        return cls(variables, values, counts / counts.sum())

    @property
    def support(self) -> dict:
        out = {}
        for idx in zip(*np.nonzero(self.prob)):
            out[tuple(vals[i] for vals, i in zip(self.values, idx))] = float(self.prob[idx])
        return out

    def axes(self, names: Sequence[str]) -> list[int]:
        try:
            return [self.variables.index(n) for n in names]
        except ValueError:
            raise KeyError(f"unknown variable among {list(names)}") from None

    def marginal(self, names: Sequence[str]) -> "EmpiricalPDM":
        """Distribution over ``names`` (in that order)."""
        names = list(names)
        ax = self.axes(names)
        drop = tuple(k for k in range(len(self.variables)) if k not in ax)
        p = self.prob.sum(axis=drop) if drop else self.prob
        # remaining axes come out in ascending original order
        kept = sorted(ax)
        p = np.transpose(p, [kept.index(a) for a in ax]) if names else p
        return EmpiricalPDM(names, [self.values[a] for a in ax], p)

    def entropy(self, names: Sequence[str] | None = None) -> float:
        p = self.prob if names is None else self.marginal(names).prob
        return entropy(p)

    def configurations(self):
        return itertools.product(*[range(len(v)) for v in self.values])


def mutual_information(pdm: EmpiricalPDM) -> float:
    """MI(X, Y) in bits for a two-variable distribution."""
    if len(pdm.variables) != 2:
        raise UsageError("mutual information needs exactly two variables")
    pxy = pdm.prob
    px = pxy.sum(axis=1, keepdims=True)
    py = pxy.sum(axis=0, keepdims=True)
    nz = pxy > 0
    return float((pxy[nz] * np.log2(pxy[nz] / (px @ py)[nz])).sum())


def kl_joint_vs_product(pdm: EmpiricalPDM) -> float:
    """D_KL(P(X, Y) || P(X) P(Y)) computed directly from the divergence formula."""
    if len(pdm.variables) != 2:
        raise UsageError("needs exactly two variables")
    joint = pdm.prob
    product = np.outer(joint.sum(axis=1), joint.sum(axis=0))
    return kl_divergence(joint, product)


def feature_class_pdm(d: Dataset, feature: str) -> EmpiricalPDM:
    """Joint of (feature, class) from the contingency table, missing cells dropped."""
    t = contingency(d, feature)
    return EmpiricalPDM([feature, d.class_name], [t.feature_values, t.class_values], t.joint().T)
