"""Scoring weight vectors against ground truth, and 1-NN weight-ordered subset curves."""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .datamodel import Dataset, FeatureWeights, UsageError
from .relief_core import TIE_DECIMALS
from .synthgen import GroundTruth


@dataclass(frozen=True)
class CriteriaReport:
    separability: float
    usability: float
    minimality: float
    completeness: float
    ordering: tuple

    def to_dict(self):
        d = asdict(self)
        d["ordering"] = list(self.ordering)
        return d


@dataclass(frozen=True)
class CurvePoint:
    n_features: int
    feature_set: tuple
    accuracy: float
    folds: int


def criteria(w: FeatureWeights, truth: GroundTruth) -> CriteriaReport:
    """Separability, usability, minimality and completeness of a weight vector."""
    relevant = [f for f in truth.relevant if f in w.weights]
    irrelevant = [f for f in truth.irrelevant if f in w.weights]
    if not relevant or not irrelevant:
        raise UsageError("criteria need at least one relevant and one irrelevant feature")
    W = w.weights
    worst_rel = min(W[f] for f in relevant)
    best_rel = max(W[f] for f in relevant)
    best_irr = max(W[f] for f in irrelevant)
    taken = [f for f in W if W[f] >= worst_rel]
    complete = [f for f in relevant if W[f] > best_irr]
    return CriteriaReport(
        separability=worst_rel - best_irr,
        usability=best_rel - best_irr,
        minimality=len(relevant) / len(taken),
        completeness=len(complete) / len(relevant),
        ordering=tuple(w.ordering()),
    )


def top_features(d: Dataset, w: FeatureWeights, n: int) -> list[str]:
    """The n highest-weighted features, ties resolved by column position in ``d``."""
    names = d.feature_names
    ranked = sorted(range(len(names)), key=lambda j: (-w.weights[names[j]], j))
    return [names[j] for j in ranked[:n]]


def heom_to_rows(train: Dataset, Xq: np.ndarray, factors=None) -> np.ndarray:
    """Distances (queries x training rows) with overlap/normalized-range diffs, missing = 1."""
    Xt = train.X
    Xq = np.atleast_2d(np.asarray(Xq, dtype=float))
    linear = train.linear_mask
    widths = np.array([f.width if f.is_linear else 1.0 for f in train.schema])
    inv = np.where(widths > 0, 1.0 / np.where(widths > 0, widths, 1.0), 0.0)
    A = Xq[:, None, :]
    B = Xt[None, :, :]
    with np.errstate(invalid="ignore"):
        D = np.where(linear, np.abs(A - B) * inv, (A != B).astype(float))
    D = np.where(np.isnan(A) | np.isnan(B), 1.0, D)
    if factors is None:
        return D.sum(axis=2)
    return D @ np.asarray(factors, dtype=float)


def knn_predict(train: Dataset, query, k: int = 1, weights=None) -> str:
    """Class of the nearest training instance (lowest index among equidistant ones).

    ``query`` is a row encoded like ``train.X``. With k > 1 the majority
    class among the k nearest wins, ties going to the class of the nearer
    instance.
    """
    return train.class_values[knn_predict_codes(train, np.atleast_2d(query), k, weights)[0]]


def knn_predict_codes(train: Dataset, Xq: np.ndarray, k: int = 1, weights=None) -> np.ndarray:
    if k < 1:
        raise UsageError("k must be at least 1")
    if isinstance(weights, FeatureWeights):
        weights = [max(weights.weights[f], 0.0) for f in train.feature_names]
    elif isinstance(weights, dict):
        weights = [weights[f] for f in train.feature_names]
    dist = np.round(heom_to_rows(train, Xq, weights), TIE_DECIMALS)
    order = np.argsort(dist, axis=1, kind="stable")[:, :k]
    if k == 1:
        return train.y[order[:, 0]]
    out = np.empty(len(Xq), dtype=np.int64)
    for r, idx in enumerate(order):
        labels = train.y[idx]
        counts = np.bincount(labels, minlength=train.n_classes)
        tied = np.flatnonzero(counts == counts.max())
        out[r] = next(c for c in labels if c in tied)
    return out


def stratified_folds(y: np.ndarray, folds: int, seed: int) -> np.ndarray:
    """Fold id per instance; classes dealt round-robin after a seeded shuffle.

    Falls back to an unstratified split (with a warning) when some class has
    fewer members than folds.
    """
    n = len(y)
    if n < folds:
        raise UsageError(f"{n} instances cannot fill {folds} folds")
    rng = np.random.default_rng(seed)
    fold = np.empty(n, dtype=np.int64)
    counts = np.bincount(y)
    if (counts[counts > 0] < folds).any():
        warnings.warn("a class has fewer members than folds; using unstratified folds", stacklevel=2)
        fold[rng.permutation(n)] = np.arange(n) % folds
        return fold
    offset = 0
    for c in np.flatnonzero(counts):
        members = rng.permutation(np.flatnonzero(y == c))
        fold[members] = (np.arange(len(members)) + offset) % folds
        offset += len(members)
    return fold


def cv_accuracy(d: Dataset, features: Sequence[str], fold: np.ndarray) -> Fraction:
    """Share of instances whose held-out 1-NN prediction is right (pooled over folds)."""
    sub = d.subset(features=list(features))
    correct = 0
    for f in np.unique(fold):
        test = fold == f
        train = sub.subset(rows=np.flatnonzero(~test))
        pred = knn_predict_codes(train, sub.X[test])
        correct += int((pred == sub.y[test]).sum())
    return Fraction(correct, d.n_instances)


def cv_curve(d: Dataset, w: FeatureWeights, folds: int = 5, seed: int = 0) -> list[CurvePoint]:
    """1-NN cross-validated accuracy using the top-1, top-2, ... top-all weighted features."""
    fold = stratified_folds(d.y, folds, seed)
    points = []
    for n in range(1, d.n_features + 1):
        feats = top_features(d, w, n)
        acc = cv_accuracy(d, feats, fold)
        points.append(CurvePoint(n, tuple(feats), float(acc * 100), folds))
    return points


def best_point(curve: Sequence[CurvePoint]) -> CurvePoint:
    """Highest accuracy, fewest features among equals."""
    return max(curve, key=lambda p: (p.accuracy, -p.n_features))
