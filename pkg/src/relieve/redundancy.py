"""Conditional independence, Markov blankets and the redundancy level of a feature.

The redundancy level of a feature ``alpha`` within a variable set ``u`` is

    1 - min over S (strict subset of u - alpha) of
        mean over configurations of |P(alpha | s) - P(alpha | s, rest)|

where ``rest`` is u - S - alpha and the mean runs over every configuration
of u whose non-alpha part has positive probability. A level of 1 means some
S is an exact Markov blanket of alpha inside u. ``as_printed=True`` swaps
the min for a max.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .datamodel import UsageError
from .probstats import EmpiricalPDM

DEFAULT_CAP = 15
DEFAULT_TOLERANCE = 1e-9
ZERO_SNAP = 1e-12


@dataclass(frozen=True)
class IndependenceQuery:
    """I(x_set, z_set, y_set): x and y independent given z."""

    x_set: tuple
    z_set: tuple
    y_set: tuple
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        for name in ("x_set", "z_set", "y_set"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.x_set:
            raise UsageError("x_set must not be empty")
        sets = [set(self.x_set), set(self.z_set), set(self.y_set)]
        if sets[0] & sets[1] or sets[0] & sets[2] or sets[1] & sets[2]:
            raise UsageError("x_set, z_set and y_set must be pairwise disjoint")
        if self.tolerance < 0:
            raise UsageError("tolerance must be non-negative")


@dataclass
class RedundancyResult:
    feature: str
    level: float
    best_subset: tuple
    evaluated_subsets: int
    as_printed: bool = False
    divergences: dict = field(default_factory=dict, repr=False)

    def to_dict(self):
        return {
            "feature": self.feature,
            "level": self.level,
            "best_subset": list(self.best_subset),
            "evaluated_subsets": self.evaluated_subsets,
            "as_printed": self.as_printed,
        }


def _grouped(pdm: EmpiricalPDM, groups: Sequence[Sequence[str]]) -> np.ndarray:
    """Marginal over the union of groups, reshaped to one axis per group."""
    names = [n for g in groups for n in g]
    p = pdm.marginal(names).prob if names else np.array(pdm.prob.sum())
    shape = [int(np.prod([len(pdm.values[pdm.variables.index(n)]) for n in g])) for g in groups]
    return p.reshape(shape)


def conditionally_independent(pdm: EmpiricalPDM, q: IndependenceQuery) -> bool:
    """True iff |P(x | y, z) - P(x | z)| <= tolerance wherever P(y, z) > 0."""
    known = set(pdm.variables)
    if not set(q.x_set) | set(q.y_set) | set(q.z_set) <= known:
        raise KeyError("query names variables outside the distribution")
    if not q.y_set:
        return True
    p = _grouped(pdm, [q.x_set, q.z_set, q.y_set])  # (x, z, y)
    p_zy = p.sum(axis=0)
    p_xz = p.sum(axis=2)
    p_z = p_xz.sum(axis=0)
    pos = p_zy > 0
    with np.errstate(invalid="ignore", divide="ignore"):
        lhs = p / np.where(pos, p_zy, 1.0)
        rhs = (p_xz / np.where(p_z > 0, p_z, 1.0))[:, :, None]
    gap = np.abs(lhs - rhs)[:, pos]
    return bool((gap <= q.tolerance).all())


def is_markov_blanket(pdm: EmpiricalPDM, alpha: str, s: Iterable[str], tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """alpha independent of every other variable given s (alpha not in s)."""
    s = tuple(s)
    if alpha in s:
        raise UsageError("alpha cannot belong to its own blanket")
    if alpha not in pdm.variables or not set(s) <= set(pdm.variables):
        raise KeyError("unknown variable")
    rest = tuple(v for v in pdm.variables if v != alpha and v not in s)
    return conditionally_independent(pdm, IndependenceQuery((alpha,), s, rest, tolerance))


def find_markov_blanket(pdm: EmpiricalPDM, alpha: str, candidates: Sequence[str] | None = None,
                        tolerance: float = DEFAULT_TOLERANCE):
    """Smallest blanket of alpha drawn from ``candidates`` (lexicographic among equals), or None."""
    if candidates is None:
        candidates = [v for v in pdm.variables if v != alpha]
    candidates = [c for c in candidates if c != alpha]
    for r in range(len(candidates) + 1):
        for s in itertools.combinations(candidates, r):
            if is_markov_blanket(pdm, alpha, s, tolerance):
                return s
    return None


def redundant_blanket(pdm: EmpiricalPDM, alpha: str, features: Sequence[str], tolerance: float = DEFAULT_TOLERANCE):
    """A blanket of alpha drawn only from ``features``, or None.

    Variables of ``pdm`` outside ``features`` (typically the class) always
    remain in the conditioned-away part, never in the blanket.
    """
    return find_markov_blanket(pdm, alpha, [f for f in features if f != alpha], tolerance)


def subset_divergences(P: np.ndarray, subsets: Sequence[Sequence[int]]) -> np.ndarray:
    """Mean |P(alpha | s) - P(alpha | everything else)| for a batch of distributions.

    ``P`` has shape (batch, |alpha|, r_1, ..., r_k): alpha on axis 1, the
    remaining variables after it. ``subsets`` index those k remaining
    variables. Returns an array of shape (batch, len(subsets)).
    """
    B, k = P.shape[0], P.ndim - 2
    a = P.shape[1]
    p_rest = P.sum(axis=1, keepdims=True)
    pos = p_rest > 0
    cond_rest = P / np.where(pos, p_rest, 1.0)
    n_cfg = pos.reshape(B, -1).sum(axis=1) * a
    out = np.empty((B, len(subsets)))
    for col, S in enumerate(subsets):
        drop = tuple(2 + i for i in range(k) if i not in S)
        p_as = P.sum(axis=drop, keepdims=True) if drop else P
        p_s = p_as.sum(axis=1, keepdims=True)
        cond_s = p_as / np.where(p_s > 0, p_s, 1.0)
        gap = np.abs(cond_s - cond_rest) * pos
        out[:, col] = gap.reshape(B, -1).sum(axis=1) / n_cfg
    out[out < ZERO_SNAP] = 0.0
    return out


def strict_subsets(k: int) -> list[tuple[int, ...]]:
    """Every subset of range(k) except the full set, by size then lexicographically."""
    return [s for r in range(k) for s in itertools.combinations(range(k), r)]


def _select(divs: np.ndarray, subsets, as_printed: bool, avoid: int | None = None) -> int:
    """Index of the optimum; among ties, subsets without ``avoid`` first, then enumeration order."""
    target = divs.max() if as_printed else divs.min()
    tied = [i for i in np.flatnonzero(divs == target)]
    if avoid is not None:
        clean = [i for i in tied if avoid not in subsets[i]]
        tied = clean or tied
    return int(tied[0])


def redundancy_level(
    pdm: EmpiricalPDM,
    alpha: str,
    u: Sequence[str] | None = None,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    as_printed: bool = False,
    class_var: str | None = None,
) -> RedundancyResult:
    """Exhaustive redundancy level of ``alpha`` within the variable set ``u``.

    ``class_var`` names the class variable; when given, optimal subsets that
    leave it out are preferred, so a blanket made of features alone is
    reported whenever one exists.
    """
    u = list(pdm.variables) if u is None else list(u)
    if alpha not in u:
        raise UsageError(f"{alpha!r} must belong to the universe")
    if not set(u) <= set(pdm.variables):
        raise KeyError("universe names variables outside the distribution")
    if len(u) > cap and not force:
        n_subsets = 2 ** (len(u) - 1) - 1
        n_cfg = math.prod(len(pdm.values[pdm.variables.index(v)]) for v in u)
        raise UsageError(f"|u| = {len(u)} exceeds the cap of {cap}: about {n_subsets} subsets x "
                         f"{n_cfg} configurations; pass force=True to run anyway")
    others = [v for v in u if v != alpha]
    if not others:
        raise UsageError("the universe needs at least one variable besides alpha")
    P = pdm.marginal([alpha] + others).prob[None]
    subsets = strict_subsets(len(others))
    avoid = others.index(class_var) if class_var in others else None
    evaluated = 0
    divs = []
    if as_printed:
        divs = list(subset_divergences(P, subsets)[0])
        evaluated = len(subsets)
    else:
        # cardinality-ascending sweep with early exit once an exact blanket appears
        for r in range(len(others)):
            layer = [s for s in subsets if len(s) == r]
            layer_divs = subset_divergences(P, layer)[0]
            divs.extend(layer_divs)
            evaluated += len(layer)
            if any(v == 0 and (avoid is None or avoid not in s) for v, s in zip(layer_divs, layer)):
                break
    divs = np.array(divs)
    best = _select(divs, subsets[: len(divs)], as_printed, avoid)
    level = float(1.0 - divs[best])
    names = tuple(others[i] for i in subsets[best])
    table = {tuple(others[i] for i in s): float(v) for s, v in zip(subsets, divs)}
    return RedundancyResult(alpha, level, names, evaluated, as_printed, table)


def redundancy_levels_batch(P: np.ndarray, as_printed: bool = False) -> np.ndarray:
    """Redundancy level of the variable on axis 1 for a batch of distributions (batch, alpha, rest...)."""
    divs = subset_divergences(P, strict_subsets(P.ndim - 2))
    return 1.0 - (divs.max(axis=1) if as_printed else divs.min(axis=1))
