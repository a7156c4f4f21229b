import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relieve.datamodel import FeatureWeights, UsageError, build_dataset
from relieve.evalharness import (
    best_point,
    criteria,
    cv_curve,
    knn_predict,
    knn_predict_codes,
    stratified_folds,
    top_features,
)
from relieve.synthgen import GroundTruth

from test_relief_core import naive_diff, random_dataset

TRUTH = GroundTruth(("i1", "i2"), ("r1",))


def test_criteria_examples():
    r = criteria(FeatureWeights({"i1": 0.5, "i2": 0.3, "r1": 0.1}, "x"), TRUTH)
    assert (r.separability, r.usability, r.minimality, r.completeness) == pytest.approx((0.2, 0.4, 1, 1))
    r = criteria(FeatureWeights({"i1": 0.5, "i2": 0.05, "r1": 0.1}, "x"), TRUTH)
    assert r.separability == pytest.approx(-0.05)
    assert r.usability == pytest.approx(0.4)
    assert r.minimality == pytest.approx(2 / 3)
    assert r.completeness == pytest.approx(0.5)


def test_criteria_needs_irrelevant():
    with pytest.raises(UsageError):
        criteria(FeatureWeights({"i1": 1.0}, "x"), GroundTruth(("i1",), ()))


def test_knn_examples():
    d = build_dataset([["a", 0.0], ["b", 10.0]], ["p", "q"], ["n", "v"], ["nominal", "linear"])
    assert knn_predict(d, d.X[1]) == "q"
    assert knn_predict(d, np.array([1.0, 8.0])) == "q"
    assert knn_predict(d, np.array([0.0, 4.0])) == "p"


def naive_1nn(train, query_row):
    best = None
    for i in range(train.n_instances):
        dist = 0.0
        for j in range(train.n_features):
            a, b = train.X[i, j], query_row[j]
            if np.isnan(a) or np.isnan(b):
                dist += 1.0
            elif train.schema[j].is_linear:
                w = train.schema[j].width
                dist += 0.0 if w == 0 else abs(a - b) / w
            else:
                dist += float(a != b)
        if best is None or round(dist, 10) < round(best[0], 10):
            best = (dist, i)
    return train.y[best[1]]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_1nn_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    d = random_dataset(rng, missing=0.1)
    cut = d.n_instances // 2
    train = d.subset(rows=np.arange(cut))
    queries = d.X[cut:]
    got = knn_predict_codes(train, queries)
    want = [naive_1nn(train, q) for q in queries]
    assert list(got) == want


def test_knn_majority_vote():
    d = build_dataset([["0"], ["0"], ["1"]], ["p", "q", "q"], ["a"], ["nominal"])
    assert knn_predict(d, np.array([0.0]), k=3) == "q"
    with pytest.raises(UsageError):
        knn_predict(d, np.array([0.0]), k=0)


def test_stratified_folds_balance():
    y = np.repeat([0, 1], [20, 10])
    fold = stratified_folds(y, 5, seed=3)
    for f in range(5):
        assert (y[fold == f] == 0).sum() == 4
        assert (y[fold == f] == 1).sum() == 2
    assert np.array_equal(fold, stratified_folds(y, 5, seed=3))


def test_stratified_folds_fallback():
    y = np.array([0] * 9 + [1])
    with pytest.warns(UserWarning):
        fold = stratified_folds(y, 5, seed=0)
    assert np.bincount(fold).tolist() == [2] * 5
    with pytest.raises(UsageError):
        stratified_folds(np.array([0, 1]), 5, 0)


def _identifying():
    rng = np.random.default_rng(0)
    labels = ["a", "b"] * 10
    rows = [[lab, str(rng.integers(3))] for lab in labels]
    return build_dataset(rows, labels, ["good", "noise"], ["nominal"] * 2)


def test_curve_examples():
    d = _identifying()
    w = FeatureWeights({"good": 1.0, "noise": 0.0}, "x")
    curve = cv_curve(d, w, folds=5, seed=1)
    assert [p.n_features for p in curve] == [1, 2]
    assert curve[0].accuracy == 100.0
    assert best_point(curve).n_features == 1
    dup = build_dataset([[r[0], r[0]] for r in [[d.cell(i, "good")] for i in range(d.n_instances)]],
                        [d.class_of(i) for i in range(d.n_instances)], ["g1", "g2"], ["nominal"] * 2)
    c2 = cv_curve(dup, FeatureWeights({"g1": 1.0, "g2": 0.5}, "x"), folds=5, seed=1)
    assert c2[1].accuracy == c2[0].accuracy == 100.0


def test_top_features_ties_by_position():
    d = _identifying()
    assert top_features(d, FeatureWeights({"good": 0.0, "noise": 0.0}, "x"), 1) == ["good"]
