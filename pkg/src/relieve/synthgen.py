"""Seeded generators for artificial datasets with known relevant features."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .datamodel import Dataset, FeatureSchema, NOMINAL, UsageError

# Seven-segment layout: I1 upper-left, I2 upper-right, I3 top, I4 middle,
# I5 lower-left, I6 lower-right, I7 bottom.
LED_SEGMENTS = {
    0: (1, 1, 1, 0, 1, 1, 1),
    1: (0, 1, 0, 0, 0, 1, 0),
    2: (0, 1, 1, 1, 1, 0, 1),
    3: (0, 1, 1, 1, 0, 1, 1),
    4: (1, 1, 0, 1, 0, 1, 0),
    5: (1, 0, 1, 1, 0, 1, 1),
    6: (1, 0, 1, 1, 1, 1, 1),
    7: (0, 1, 1, 0, 0, 1, 0),
    8: (1, 1, 1, 1, 1, 1, 1),
    9: (1, 1, 1, 1, 0, 1, 1),
}

MONK_CARDINALITIES = (3, 3, 2, 3, 4, 2)


@dataclass(frozen=True)
class GroundTruth:
    relevant: tuple[str, ...]
    irrelevant: tuple[str, ...]

    def __post_init__(self):
        if set(self.relevant) & set(self.irrelevant):
            raise UsageError("a feature cannot be both relevant and irrelevant")

    def to_json(self, **kw) -> str:
        return json.dumps({"relevant": list(self.relevant), "irrelevant": list(self.irrelevant)}, **kw)

    @classmethod
    def from_json(cls, text: str) -> "GroundTruth":
        obj = json.loads(text)
        return cls(tuple(obj["relevant"]), tuple(obj["irrelevant"]))


def _nominal_dataset(codes: np.ndarray, names, cards, y, class_values, name) -> Dataset:
    schema = tuple(
        FeatureSchema(n, NOMINAL, tuple(str(v) for v in dom))
        for n, dom in zip(names, cards)
    )
    return Dataset(schema, tuple(class_values), codes.astype(float), np.asarray(y), name)


def _check_n(n):
    if n is None or int(n) < 1:
        raise UsageError("instance count must be at least 1")
    return int(n)


def gen_modulo(p: int, important: int, random_features: int, n: int, seed: int = 0):
    """Modulo-p-I: class is the sum of the important features modulo p."""
    if p < 2:
        raise UsageError("p must be at least 2")
    if important < 1 or random_features < 0:
        raise UsageError("need important >= 1 and random_features >= 0")
    n = _check_n(n)
    rng = np.random.default_rng(seed)
    X = rng.integers(0, p, size=(n, important + random_features))
    y = X[:, :important].sum(axis=1) % p
    rel = [f"X{i + 1}" for i in range(important)]
    irr = [f"R{i + 1}" for i in range(random_features)]
    dom = [range(p)] * (important + random_features)
    d = _nominal_dataset(X, rel + irr, dom, y, [str(c) for c in range(p)], f"modulo-{p}-{important}-r{random_features}")
    return d, GroundTruth(tuple(rel), tuple(irr))


def corral_class(a0, a1, b0, b1):
    return (np.asarray(a0) & np.asarray(a1)) | (np.asarray(b0) & np.asarray(b1))


def gen_corral(n: int | None = None, seed: int = 0, exhaustive: bool = False):
    """CorrAl: class = (A0 and A1) or (B0 and B1); C agrees with the class 75% of the time.

    With ``exhaustive`` the 64-row canonical set is produced: each of the 16
    configurations of the defining bits appears four times, C is negated in
    exactly one copy (rotating with the configuration index so that I stays
    independent of the flips) and I takes the values 0, 1, 0, 1.
    """
    names = ["A0", "A1", "B0", "B1", "C", "I"]
    if exhaustive:
        rows = []
        for q, bits in enumerate(itertools.product((0, 1), repeat=4)):
            cls = int(corral_class(*bits))
            for j in range(4):
                c = 1 - cls if j == q % 4 else cls
                rows.append((*bits, c, j % 2))
        X = np.array(rows)
    else:
        n = _check_n(n)
        rng = np.random.default_rng(seed)
        bits = rng.integers(0, 2, size=(n, 4))
        cls = corral_class(*bits.T)
        agree = rng.random(n) < 0.75
        c = np.where(agree, cls, 1 - cls)
        irr = rng.integers(0, 2, size=n)
        X = np.column_stack([bits, c, irr])
    y = corral_class(*X[:, :4].T)
    d = _nominal_dataset(X, names, [range(2)] * 6, y, ["0", "1"], "corral")
    return d, GroundTruth(("A0", "A1", "B0", "B1"), ("C", "I"))


def gen_led(n: int, irrelevant: int = 0, noise: float = 0.10, seed: int = 0):
    """LED display digits with per-segment negation noise and optional noise features."""
    if irrelevant not in (0, 17):
        raise UsageError("irrelevant must be 0 (led7) or 17 (led24)")
    if not 0 <= noise < 0.5:
        raise UsageError("noise must lie in [0, 0.5)")
    n = _check_n(n)
    rng = np.random.default_rng(seed)
    digits = rng.integers(0, 10, size=n)
    table = np.array([LED_SEGMENTS[k] for k in range(10)])
    seg = table[digits]
    flips = rng.random(seg.shape) < noise
    seg = np.where(flips, 1 - seg, seg)
    extra = rng.integers(0, 2, size=(n, irrelevant))
    X = np.column_stack([seg, extra]) if irrelevant else seg
    rel = [f"I{i + 1}" for i in range(7)]
    irr = [f"R{i + 1}" for i in range(irrelevant)]
    d = _nominal_dataset(X, rel + irr, [range(2)] * (7 + irrelevant), digits, [str(k) for k in range(10)],
                         f"led{7 + irrelevant}")
    return d, GroundTruth(tuple(rel), tuple(irr))


def monk_class(which: int, a: np.ndarray) -> np.ndarray:
    """Class of Monk rows; ``a`` holds A1..A6 (1-based values) in its columns."""
    a = np.atleast_2d(a)
    a1, a2, a4, a5 = a[:, 0], a[:, 1], a[:, 3], a[:, 4]
    if which == 1:
        return ((a1 == a2) | (a5 == 1)).astype(int)
    if which == 3:
        return (((a5 == 3) & (a4 == 1)) | ((a5 != 4) & (a2 != 3))).astype(int)
    raise UsageError("only Monk-1 and Monk-3 are supported (Monk-2 does not contain unimportant features)")


def gen_monk(which: int, n: int | None = None, noise: float | None = None, seed: int = 0, exhaustive: bool = False):
    """Monk-1 / Monk-3 over the standard attribute space, with optional class noise."""
    if which not in (1, 3):
        raise UsageError("only Monk-1 and Monk-3 are supported (Monk-2 does not contain unimportant features)")
    if noise is None:
        noise = 0.0 if which == 1 else 0.05
    if not 0 <= noise < 0.5:
        raise UsageError("noise must lie in [0, 0.5)")
    rng = np.random.default_rng(seed)
    if exhaustive:
        A = np.array(list(itertools.product(*[range(1, c + 1) for c in MONK_CARDINALITIES])))
    else:
        n = _check_n(n)
        A = np.column_stack([rng.integers(1, c + 1, size=n) for c in MONK_CARDINALITIES])
    y = monk_class(which, A)
    if noise > 0:
        flip = rng.random(len(y)) < noise
        y = np.where(flip, 1 - y, y)
    names = [f"A{i + 1}" for i in range(6)]
    doms = [range(1, c + 1) for c in MONK_CARDINALITIES]
    d = _nominal_dataset(A - 1, names, doms, y, ["0", "1"], f"monk-{which}")
    rel = ("A1", "A2", "A5") if which == 1 else ("A2", "A4", "A5")
    return d, GroundTruth(rel, tuple(x for x in names if x not in rel))
