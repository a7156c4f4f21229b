import numpy as np
import pytest

from relieve.datamodel import UsageError
from relieve.synthgen import (
    LED_SEGMENTS,
    GroundTruth,
    corral_class,
    gen_corral,
    gen_led,
    gen_modulo,
    gen_monk,
    monk_class,
)


def _row(d, i, names):
    return tuple(d.cell(i, n) for n in names)


def test_modulo_examples():
    d, truth = gen_modulo(2, 2, 10, 500, seed=7)
    assert d.n_features == 12
    assert truth.relevant == ("X1", "X2")
    assert len(truth.irrelevant) == 10
    rel = d.X[:, :2].astype(int)
    assert np.array_equal(d.y, rel.sum(axis=1) % 2)
    d4, _ = gen_modulo(4, 3, 0, 300, seed=1)
    rows = d4.X.astype(int)
    assert np.array_equal(d4.y, rows.sum(axis=1) % 4)
    assert (9 % 4) == 1  # row (3,3,3) -> class 1


def test_modulo_rejects_small_p():
    with pytest.raises(UsageError):
        gen_modulo(1, 2, 0, 10)


def test_corral_class_examples():
    assert corral_class(1, 1, 0, 0) == 1
    assert corral_class(0, 1, 1, 0) == 0


def test_corral_exhaustive():
    d, truth = gen_corral(exhaustive=True)
    assert d.n_instances == 64
    X = d.X.astype(int)
    y = d.y
    # every configuration of the defining bits appears four times
    keys, counts = np.unique(X[:, :4], axis=0, return_counts=True)
    assert len(keys) == 16 and (counts == 4).all()
    # C agrees with the class on exactly 75% of the rows, I is balanced and independent of both
    assert (X[:, 4] == y).mean() == 0.75
    assert X[:, 5].mean() == 0.5
    for c in (0, 1):
        assert X[y == c, 5].mean() == 0.5
    assert truth == GroundTruth(("A0", "A1", "B0", "B1"), ("C", "I"))


def test_corral_sampled_is_deterministic():
    a, _ = gen_corral(200, seed=3)
    b, _ = gen_corral(200, seed=3)
    c, _ = gen_corral(200, seed=4)
    assert a.same_as(b)
    assert not a.same_as(c)


def test_led_segment_table():
    assert LED_SEGMENTS[8] == (1,) * 7
    on = [f"I{i + 1}" for i, v in enumerate(LED_SEGMENTS[1]) if v]
    assert on == ["I2", "I6"]
    # every digit has a distinct pattern
    assert len(set(LED_SEGMENTS.values())) == 10


def test_led_noise_free_matches_table():
    d, truth = gen_led(300, irrelevant=17, noise=0.0, seed=2)
    assert d.n_features == 24
    assert len(truth.irrelevant) == 17
    table = np.array([LED_SEGMENTS[k] for k in range(10)])
    digits = np.array([int(d.class_of(i)) for i in range(d.n_instances)])
    assert np.array_equal(d.X[:, :7].astype(int), table[digits])


def test_led_rejects_bad_noise():
    with pytest.raises(UsageError):
        gen_led(10, noise=0.7)


def test_monk_formulas():
    # A1..A6 with 1-based values
    assert monk_class(1, np.array([2, 2, 1, 1, 3, 1]))[0] == 1
    assert monk_class(1, np.array([1, 2, 1, 1, 1, 1]))[0] == 1
    assert monk_class(1, np.array([1, 2, 1, 1, 2, 1]))[0] == 0
    d, _ = gen_monk(3, noise=0.0, exhaustive=True)
    a5 = d.X[:, 4].astype(int) + 1
    a4 = d.X[:, 3].astype(int) + 1
    sel = (a5 == 4) & (a4 != 1)
    assert sel.any() and (d.y[sel] == 0).all()


def test_monk_exhaustive_space():
    d, truth = gen_monk(1, exhaustive=True)
    assert d.n_instances == 432
    assert truth.relevant == ("A1", "A2", "A5")
    assert d.feature("A5").values == ("1", "2", "3", "4")
    assert np.unique(d.X, axis=0).shape[0] == 432


def test_monk2_excluded():
    with pytest.raises(UsageError, match="Monk-2"):
        gen_monk(2, 100)


def test_truth_json_round_trip():
    t = GroundTruth(("a",), ("b", "c"))
    assert GroundTruth.from_json(t.to_json()) == t
    with pytest.raises(UsageError):
        GroundTruth(("a",), ("a",))
