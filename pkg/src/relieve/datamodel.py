"""Dataset representation, CSV ingestion and per-feature statistics.

Cells are stored in a single float matrix: nominal features hold the index of
the symbol in ``FeatureSchema.values``, linear features hold the raw number,
and missing cells are NaN in both cases.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

NOMINAL = "nominal"
LINEAR = "linear"
MISSING_TOKEN = "?"


class ParseError(ValueError):
    """Malformed dataset text."""


class UsageError(ValueError):
    """An operation was called with arguments outside its contract."""


class _Missing:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MISSING"


MISSING = _Missing()


def _is_number(token: str) -> bool:
    try:
        value = float(token)
    except ValueError:
        return False
    return math.isfinite(value)


def _symbol_order(symbols: Iterable[str]) -> tuple[str, ...]:
    """Numeric-looking symbol sets sort by value, anything else lexicographically."""
    symbols = set(symbols)
    if symbols and all(_is_number(s) for s in symbols):
        return tuple(sorted(symbols, key=lambda s: (float(s), s)))
    return tuple(sorted(symbols))


@dataclass(frozen=True)
class FeatureSchema:
    name: str
    kind: str
    values: tuple = ()

    def __post_init__(self):
        if self.kind == NOMINAL:
            if not self.values or len(set(self.values)) != len(self.values):
                raise UsageError(f"nominal feature {self.name!r} needs distinct, non-empty values")
        elif self.kind == LINEAR:
            lo, hi = self.values
            if lo > hi:
                raise UsageError(f"linear feature {self.name!r} has min > max")
        else:
            raise UsageError(f"unknown feature kind {self.kind!r}")

    @property
    def is_linear(self) -> bool:
        return self.kind == LINEAR

    @property
    def width(self) -> float:
        """max - min for linear features (0 for constant ones)."""
        if not self.is_linear:
            raise UsageError(f"feature {self.name!r} is nominal")
        return float(self.values[1] - self.values[0])


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable table of instances with a trailing class column.

    Attributes:
        schema: one FeatureSchema per feature column.
        class_values: ordered class symbols; ``y`` indexes into it.
        X: (n_instances, n_features) float matrix, NaN marks a missing cell.
        y: (n_instances,) integer class codes.
        name: free-form dataset name.
    """

    schema: tuple[FeatureSchema, ...]
    class_values: tuple[str, ...]
    X: np.ndarray
    y: np.ndarray
    name: str = "dataset"
    class_name: str = "class"

    def __post_init__(self):
        X = np.array(self.X, dtype=float)
        y = np.array(self.y, dtype=np.int64)
        if X.ndim != 2 or X.shape[1] != len(self.schema):
            raise UsageError("X must have one column per schema entry")
        if y.shape != (X.shape[0],):
            raise UsageError("y must have one label per row")
        if X.shape[0] < 1:
            raise UsageError("a dataset needs at least one instance")
        if len(set(f.name for f in self.schema)) != len(self.schema):
            raise UsageError("feature names must be unique")
        if y.min() < 0 or y.max() >= len(self.class_values):
            raise UsageError("class codes out of range")
        for j, f in enumerate(self.schema):
            if f.kind == NOMINAL:
                col = X[:, j]
                ok = np.isnan(col) | ((col >= 0) & (col < len(f.values)) & (col == np.round(col)))
                if not ok.all():
                    raise UsageError(f"nominal codes out of range in {f.name!r}")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "schema", tuple(self.schema))
        object.__setattr__(self, "class_values", tuple(self.class_values))

    # -- shape helpers ---------------------------------------------------
    @property
    def n_instances(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.class_values)

    @property
    def feature_names(self) -> list[str]:
        return [f.name for f in self.schema]

    @property
    def linear_mask(self) -> np.ndarray:
        return np.array([f.is_linear for f in self.schema], dtype=bool)

    @property
    def missing_mask(self) -> np.ndarray:
        return np.isnan(self.X)

    def index_of(self, feature: str) -> int:
        for j, f in enumerate(self.schema):
            if f.name == feature:
                return j
        raise KeyError(f"unknown feature {feature!r}")

    def feature(self, feature: str) -> FeatureSchema:
        return self.schema[self.index_of(feature)]

    def codes(self, feature: str) -> np.ndarray:
        """Integer codes of a nominal column, -1 for missing."""
        j = self.index_of(feature)
        if self.schema[j].is_linear:
            raise UsageError(f"feature {feature!r} is linear")
        col = self.X[:, j]
        out = np.full(col.shape, -1, dtype=np.int64)
        ok = ~np.isnan(col)
        out[ok] = col[ok].astype(np.int64)
        return out

    def cell(self, i: int, feature: str):
        """Symbol (nominal), float (linear) or MISSING."""
        j = self.index_of(feature)
        v = self.X[i, j]
        if np.isnan(v):
            return MISSING
        f = self.schema[j]
        return float(v) if f.is_linear else f.values[int(v)]

    def class_of(self, i: int) -> str:
        return self.class_values[int(self.y[i])]

    def class_priors(self) -> np.ndarray:
        return np.bincount(self.y, minlength=self.n_classes) / self.n_instances

    # -- derived datasets ------------------------------------------------
    def subset(self, rows=None, features: Sequence[str] | None = None, name: str | None = None) -> "Dataset":
        """Row and/or column restriction. Schemas are kept, not recomputed."""
        rows = np.arange(self.n_instances) if rows is None else np.asarray(rows)
        cols = list(range(self.n_features)) if features is None else [self.index_of(f) for f in features]
        return Dataset(
            schema=tuple(self.schema[j] for j in cols),
            class_values=self.class_values,
            X=self.X[np.ix_(rows, cols)],
            y=self.y[rows],
            name=name or self.name,
            class_name=self.class_name,
        )

    def replace_feature(self, j: int, schema: FeatureSchema, column: np.ndarray) -> "Dataset":
        X = self.X.copy()
        X[:, j] = column
        new_schema = list(self.schema)
        new_schema[j] = schema
        return Dataset(tuple(new_schema), self.class_values, X, self.y, self.name, self.class_name)

    def same_as(self, other: "Dataset") -> bool:
        """Structural equality (schema, cells, labels); names are ignored."""
        return (
            self.schema == other.schema
            and self.class_values == other.class_values
            and self.class_name == other.class_name
            and self.X.shape == other.X.shape
            and np.array_equal(self.X, other.X, equal_nan=True)
            and np.array_equal(self.y, other.y)
        )

    def schema_hint(self) -> dict[str, str]:
        return {f.name: f.kind for f in self.schema}


@dataclass
class FeatureWeights:
    """Weight per feature plus the algorithm and parameters that produced it."""

    weights: dict[str, float]
    algorithm: str
    params: dict[str, Any] = field(default_factory=dict)

    def ordering(self) -> list[str]:
        """Feature names by decreasing weight; ties keep the original order."""
        names = list(self.weights)
        return sorted(names, key=lambda n: (-self.weights[n], names.index(n)))

    def as_array(self, names: Sequence[str] | None = None) -> np.ndarray:
        names = list(self.weights) if names is None else names
        return np.array([self.weights[n] for n in names], dtype=float)

    def to_dict(self) -> dict[str, Any]:
        return {"algorithm": self.algorithm, "params": self.params, "weights": self.weights}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, obj: Mapping[str, Any]) -> "FeatureWeights":
        return cls(dict(obj["weights"]), obj.get("algorithm", "unknown"), dict(obj.get("params", {})))

    @classmethod
    def from_json(cls, text: str) -> "FeatureWeights":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# construction


def build_dataset(
    rows: Sequence[Sequence[Any]],
    labels: Sequence[Any],
    names: Sequence[str],
    kinds: Sequence[str] | Mapping[str, str] | None = None,
    name: str = "dataset",
    values: Mapping[str, Sequence[str]] | None = None,
    class_values: Sequence[str] | None = None,
    class_name: str = "class",
) -> Dataset:
    """Build a Dataset from python cells (symbols, numbers, None/MISSING/'?').

    ``values`` optionally fixes the symbol set of nominal features (so that
    symbols absent from a sample still belong to the domain); otherwise the
    observed symbols are used.
    """
    names = list(names)
    if isinstance(kinds, Mapping):
        hint = dict(kinds)
    elif kinds is None:
        hint = {}
    else:
        hint = dict(zip(names, kinds))
    tokens = [[_token(c) for c in r] for r in rows]
    d = _assemble(names, tokens, [str(c) for c in labels], hint, name, values or {}, class_values)
    object.__setattr__(d, "class_name", class_name)
    return d


def _token(cell) -> str:
    if cell is None or cell is MISSING:
        return MISSING_TOKEN
    if isinstance(cell, float):
        if math.isnan(cell):
            return MISSING_TOKEN
        return repr(cell)
    if isinstance(cell, (bool, np.bool_)):
        return str(int(cell))
    return str(cell)


def _assemble(names, tokens, labels, hint, name, fixed_values, class_values) -> Dataset:
    n = len(tokens)
    if n == 0:
        raise ParseError("dataset has no instances")
    a = len(names)
    X = np.empty((n, a), dtype=float)
    schema = []
    for j, fname in enumerate(names):
        col = [r[j] for r in tokens]
        present = [t for t in col if t != MISSING_TOKEN]
        kind = hint.get(fname)
        if kind is None:
            kind = LINEAR if all(_is_number(t) for t in present) and fname not in fixed_values else NOMINAL
        if kind == LINEAR:
            bad = [t for t in present if not _is_number(t)]
            if bad:
                raise ParseError(f"column {fname!r} declared linear but has token {bad[0]!r}")
            nums = np.array([float(t) if t != MISSING_TOKEN else np.nan for t in col])
            lo, hi = (float(np.nanmin(nums)), float(np.nanmax(nums))) if present else (0.0, 0.0)
            schema.append(FeatureSchema(fname, LINEAR, (lo, hi)))
            X[:, j] = nums
        elif kind == NOMINAL:
            if fname in fixed_values:
                symbols = tuple(str(s) for s in fixed_values[fname])
                unknown = set(present) - set(symbols)
                if unknown:
                    raise ParseError(f"column {fname!r} has symbols outside its domain: {sorted(unknown)}")
            else:
                symbols = _symbol_order(present)
            if not symbols:
                raise ParseError(f"nominal column {fname!r} has no observed values")
            lookup = {s: k for k, s in enumerate(symbols)}
            X[:, j] = [lookup[t] if t != MISSING_TOKEN else np.nan for t in col]
            schema.append(FeatureSchema(fname, NOMINAL, symbols))
        else:
            raise ParseError(f"unknown kind {kind!r} for column {fname!r}")
    if class_values is None:
        class_values = _symbol_order(labels)
    else:
        class_values = tuple(str(c) for c in class_values)
    lookup = {c: k for k, c in enumerate(class_values)}
    try:
        y = np.array([lookup[c] for c in labels], dtype=np.int64)
    except KeyError as exc:
        raise ParseError(f"class label {exc.args[0]!r} outside the declared class values") from None
    return Dataset(tuple(schema), tuple(class_values), X, y, name)


def parse_dataset(text: str | io.TextIOBase, schema_hint: Mapping[str, str] | None = None, name: str = "dataset") -> Dataset:
    """Parse comma-separated text: header row, class in the last column, ``?`` for missing.

    A column becomes linear when every present token is a decimal number,
    unless ``schema_hint`` says otherwise.
    """
    if not isinstance(text, str):
        text = text.read()
    reader = csv.reader(io.StringIO(text))
    header = None
    rows, labels = [], []
    for lineno, raw in enumerate(reader, start=1):
        if not raw or all(not c.strip() for c in raw):
            continue
        cells = [c.strip() for c in raw]
        if header is None:
            if len(cells) < 2:
                raise ParseError(f"line {lineno}: header needs at least one feature and a class column")
            if len(set(cells)) != len(cells):
                raise ParseError(f"line {lineno}: duplicate column names in header")
            header = cells
            continue
        if len(cells) != len(header):
            raise ParseError(f"line {lineno}: expected {len(header)} cells, found {len(cells)}")
        label = cells[-1]
        if label in ("", MISSING_TOKEN):
            raise ParseError(f"line {lineno}: missing class value")
        rows.append([c if c != "" else MISSING_TOKEN for c in cells[:-1]])
        labels.append(label)
    if header is None:
        raise ParseError("empty input")
    if not rows:
        raise ParseError("dataset has a header but no instances")
    hint = dict(schema_hint or {})
    unknown = set(hint) - set(header[:-1])
    if unknown:
        raise ParseError(f"schema hint names unknown columns: {sorted(unknown)}")
    d = _assemble(header[:-1], rows, labels, hint, name, {}, None)
    object.__setattr__(d, "class_name", header[-1])
    return d


def to_csv(d: Dataset) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(d.feature_names + [d.class_name])
    for i in range(d.n_instances):
        row = []
        for j, f in enumerate(d.schema):
            v = d.X[i, j]
            if np.isnan(v):
                row.append(MISSING_TOKEN)
            elif f.is_linear:
                row.append(repr(float(v)))
            else:
                row.append(f.values[int(v)])
        row.append(d.class_values[d.y[i]])
        writer.writerow(row)
    return out.getvalue()


def load_dataset(path, schema_path=None) -> Dataset:
    """Read a CSV file, with an optional JSON sidecar mapping feature -> kind."""
    from pathlib import Path

    path = Path(path)
    hint = None
    if schema_path is not None:
        hint = json.loads(Path(schema_path).read_text(encoding="utf-8"))
    return parse_dataset(path.read_text(encoding="utf-8"), hint, name=path.stem)


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class FeatureStats:
    name: str
    kind: str
    distinct: tuple
    counts: dict
    missing: int
    range: tuple | None


def feature_stats(d: Dataset, feature: str) -> FeatureStats:
    """Distinct values, their counts, missing count and observed range of a column."""
    j = d.index_of(feature)
    f = d.schema[j]
    col = d.X[:, j]
    present = col[~np.isnan(col)]
    missing = int(np.isnan(col).sum())
    if f.is_linear:
        distinct, counts = np.unique(present, return_counts=True)
        rng = (float(present.min()), float(present.max())) if present.size else None
        keys = tuple(float(v) for v in distinct)
    else:
        distinct, counts = np.unique(present.astype(np.int64), return_counts=True)
        keys = tuple(f.values[k] for k in distinct)
        rng = None
    return FeatureStats(f.name, f.kind, keys, dict(zip(keys, (int(c) for c in counts))), missing, rng)
