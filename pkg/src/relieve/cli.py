"""Command-line entry point: gen, weigh, eval, knn-curve, redundancy.

Exit codes: 0 success, 2 usage or parameter error, 3 I/O error, 4 internal error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import __version__, evalharness, filters, probstats, redundancy, synthgen
from .datamodel import FeatureWeights, ParseError, UsageError, load_dataset, parse_dataset, to_csv
from .relief_core import DiffMetric, DiffMode, ReliefConfig, Variant, run_relief
from .relief_double import DoubleVariant, ProgressiveSchedule, run_double_relief

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INTERNAL = 0, 2, 3, 4
CACHE_ENV = "RELIEVE_CACHE_DIR"

ALGORITHMS = ["pcf", "ccf", "vdm", "gini", "ig", "gr", "entdist", "mantaras", "diffdist", "kl", "chi2",
              "relief", "relieved", "relieff", "myopic", "drelieff", "pdrelieff"]

log = logging.getLogger("relieve")


class CliError(Exception):
    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


def cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, Path.home() / ".cache" / "relieve"))


def resolve_data_path(target: str) -> Path:
    """``uci:NAME`` points into the dataset cache; anything else is a file path."""
    if target.startswith("uci:"):
        return cache_dir() / f"{target[4:]}.csv"
    return Path(target)


def write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def manifest(command: str, params: dict, data_text: str | None, seed) -> dict:
    return {
        "command": command,
        "params": params,
        "dataset_hash": digest(data_text) if data_text is not None else None,
        "seed": seed,
        "tool_version": __version__,
    }


def emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(Path(out), text)
    else:
        sys.stdout.write(text)


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise CliError(f"no such file: {path}", EXIT_USAGE) from None


def _load(args):
    path = resolve_data_path(args.data)
    text = _read_text(path)
    schema = getattr(args, "schema", None)
    sibling = path.with_suffix(".schema.json")
    if schema is None and sibling.exists():
        schema = sibling
    hint = json.loads(_read_text(schema)) if schema else None
    return parse_dataset(text, hint, name=path.stem), text


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    seed = args.seed
    kind = args.generator
    if kind == "modulo":
        d, truth = synthgen.gen_modulo(args.p, args.important, args.random, args.n, seed)
        params = {"p": args.p, "important": args.important, "random": args.random, "n": args.n}
    elif kind == "corral":
        d, truth = synthgen.gen_corral(args.n, seed, exhaustive=args.exhaustive)
        params = {"n": args.n, "exhaustive": args.exhaustive}
    elif kind == "led":
        noise = 0.10 if args.noise is None else args.noise
        d, truth = synthgen.gen_led(args.n, args.irrelevant, noise, seed)
        params = {"n": args.n, "irrelevant": args.irrelevant, "noise": noise}
    else:
        d, truth = synthgen.gen_monk(args.which, args.n, args.noise, seed, exhaustive=args.exhaustive)
        params = {"which": args.which, "n": args.n, "noise": args.noise, "exhaustive": args.exhaustive}
    params["generator"] = kind
    text = to_csv(d)
    out = args.out
    if not out:
        sys.stdout.write(text)
        return EXIT_OK
    out = Path(out)
    stem = out.with_suffix("")
    write_atomic(out, text)
    write_atomic(Path(f"{stem}.truth.json"), truth.to_json(indent=2) + "\n")
    write_atomic(Path(f"{stem}.schema.json"), json.dumps(d.schema_hint(), indent=2) + "\n")
    write_atomic(Path(f"{out}.manifest.json"), json.dumps(manifest("gen", params, text, seed), indent=2) + "\n")
    if not args.quiet:
        print(f"wrote {out} ({d.n_instances} rows, {d.n_features} features)", file=sys.stderr)
    return EXIT_OK


def weigh_dataset(d, args) -> FeatureWeights:
    alg = args.algorithm
    if alg == "pcf":
        target = args.pcf_class or d.class_values[0]
        details = {f: filters.pcf_weights(d, f, args.positive) for f in d.feature_names}
        return FeatureWeights({f: details[f][target] for f in details}, "pcf",
                              {"class": target, "positive": args.positive, "per_class": details})
    if alg == "vdm":
        details = {}
        weights = {}
        for f in d.feature_names:
            per_value = filters.vdm_weights(d, f, classic=args.vdm_classic)
            nd = probstats.discretize(d, f) if d.feature(f).is_linear else d
            stats = probstats.contingency(nd, f).col_totals
            values = nd.feature(f).values
            total = stats.sum()
            weights[f] = float(sum(stats[values.index(v)] / total * w for v, w in per_value.items()))
            details[f] = per_value
        return FeatureWeights(weights, "vdm", {"classic": args.vdm_classic, "per_value": details})
    if alg == "ccf" and args.positive is not None:
        w = {f: filters.ccf_weight(d, f, args.positive) for f in d.feature_names}
        return FeatureWeights(w, "ccf", {"positive": args.positive})
    if alg in ("ccf", "gini", "ig", "gr", "entdist", "mantaras", "diffdist", "kl", "chi2"):
        return filters.weigh(d, alg)
    metric = DiffMetric(DiffMode(args.diff), args.smoothing)
    cfg = ReliefConfig(variant=Variant.RELIEFF if alg in ("drelieff", "pdrelieff") else Variant(alg),
                       m=args.m, k=args.k, seed=args.seed, diff=metric)
    if alg in ("drelieff", "pdrelieff"):
        sched = ProgressiveSchedule.fixed(args.T) if args.T is not None else ProgressiveSchedule()
        return run_double_relief(d, cfg, DoubleVariant(alg), sched)
    return run_relief(d, cfg)


def cmd_weigh(args) -> int:
    d, text = _load(args)
    w = weigh_dataset(d, args)
    params = {"algorithm": args.algorithm, "k": args.k, "m": args.m, "T": args.T, "diff": args.diff,
              "smoothing": args.smoothing, "positive": args.positive, "vdm_classic": args.vdm_classic}
    body = w.to_dict()
    body["manifest"] = manifest("weigh", params, text, args.seed)
    emit(json.dumps(body, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    if not args.truth:
        raise CliError("eval needs --truth")
    w = FeatureWeights.from_json(_read_text(args.weights))
    truth = synthgen.GroundTruth.from_json(_read_text(args.truth))
    report = evalharness.criteria(w, truth).to_dict()
    report["manifest"] = manifest("eval", {"weights": str(args.weights), "truth": str(args.truth)}, None, args.seed)
    emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_curve(args) -> int:
    d, text = _load(args)
    w = FeatureWeights.from_json(_read_text(args.weights))
    missing = set(d.feature_names) - set(w.weights)
    if missing:
        raise CliError(f"weights lack features: {sorted(missing)[:5]}")
    curve = evalharness.cv_curve(d, w, args.folds, args.seed)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n_features", "accuracy"])
    for p in curve:
        writer.writerow([p.n_features, f"{p.accuracy:.4f}"])
    emit(buf.getvalue(), args.out)
    if args.out:
        m = manifest("knn-curve", {"folds": args.folds, "weights": str(args.weights)}, text, args.seed)
        write_atomic(Path(f"{args.out}.manifest.json"), json.dumps(m, indent=2) + "\n")
    return EXIT_OK


def cmd_redundancy(args) -> int:
    d, text = _load(args)
    pdm = probstats.EmpiricalPDM.from_dataset(d)
    universe = args.universe.split(",") if args.universe else list(pdm.variables)
    res = redundancy.redundancy_level(pdm, args.feature, universe, cap=args.cap, force=args.force,
                                      as_printed=args.as_printed, class_var=d.class_name)
    body = res.to_dict()
    body["manifest"] = manifest("redundancy", {"feature": args.feature, "universe": universe, "cap": args.cap,
                                               "as_printed": args.as_printed}, text, args.seed)
    emit(json.dumps(body, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _m_arg(text: str):
    if text.upper() == "ALL":
        return None
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", "-o", default=None)
    common.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(prog="relieve", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate an artificial dataset")
    g.add_argument("generator", choices=["modulo", "corral", "led", "monk"])
    g.add_argument("--p", type=int, default=2)
    g.add_argument("--important", type=int, default=2)
    g.add_argument("--random", type=int, default=0)
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--irrelevant", type=int, default=0)
    g.add_argument("--noise", type=float, default=None)
    g.add_argument("--which", type=int, default=1)
    g.add_argument("--exhaustive", action="store_true")
    g.set_defaults(func=cmd_gen)

    w = sub.add_parser("weigh", parents=[common], help="weight the features of a dataset")
    w.add_argument("--data", required=True)
    w.add_argument("--schema", default=None, help="JSON map feature -> nominal|linear (default: <data stem>.schema.json if present)")
    w.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    w.add_argument("--k", type=int, default=10)
    w.add_argument("--m", type=_m_arg, default=None, help="iterations (integer or ALL)")
    t = w.add_mutually_exclusive_group()
    t.add_argument("--T", type=float, default=None)
    t.add_argument("--auto-T", action="store_true")
    w.add_argument("--diff", choices=[m.value for m in DiffMode], default=DiffMode.HEOM_BASIC.value)
    w.add_argument("--smoothing", action="store_true")
    w.add_argument("--positive", default=None, help="positive value for pcf/ccf")
    w.add_argument("--pcf-class", default=None)
    w.add_argument("--vdm-classic", action="store_true")
    w.set_defaults(func=cmd_weigh)

    e = sub.add_parser("eval", parents=[common], help="score weights against ground truth")
    e.add_argument("--weights", required=True)
    e.add_argument("--truth", default=None)
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("knn-curve", parents=[common], help="1-NN accuracy of weight-ordered feature subsets")
    c.add_argument("--data", required=True)
    c.add_argument("--schema", default=None)
    c.add_argument("--weights", required=True)
    c.add_argument("--folds", type=int, default=5)
    c.set_defaults(func=cmd_curve)

    r = sub.add_parser("redundancy", parents=[common], help="redundancy level of one feature")
    r.add_argument("--data", required=True)
    r.add_argument("--schema", default=None)
    r.add_argument("--feature", required=True)
    r.add_argument("--universe", default=None)
    r.add_argument("--cap", type=int, default=redundancy.DEFAULT_CAP)
    r.add_argument("--force", action="store_true")
    r.add_argument("--as-printed", action="store_true")
    r.set_defaults(func=cmd_redundancy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (UsageError, ParseError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
