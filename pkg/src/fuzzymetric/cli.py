"""Command-line front end: run checks, crispification sweeps and ball comparisons.

Usage::

    fuzzymetric check ex2_5
    fuzzymetric crispify --config runs/ex3_7.yaml --out out/ --format csv
    fuzzymetric roundtrip --config runs/random.yaml --seed 3

Every command reads an optional YAML config (see README for the format), a
positional fixture id can stand in for the ``input`` section, and flags
override config values. Exit status: 0 pass, 1 property violation, 2 usage
or config error. Reports carry no timing so that equal inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .axioms import FUZZY_METRIC_AXIOMS, GridConfig
from .balls import (DEFAULT_EPSILONS, DEFAULT_RADII, BallFamily, check_refinement,
                    compare_ball_families, fuzzy_to_crisp_radius)
from .catalog import FixtureError, fixture, list_fixtures
from .crispify import actual_metric, lambda_sweep, radu_metric
from .fuzzify import indicator_fuzzify, mnk_fuzzify
from .fuzzy_space import FuzzyMetricSpace, SpaceError, build_space, check_axioms
from .membership import MembershipError
from .metric import (CrispMetric, MetricError, PointSet, check_metric_axioms, format_real,
                     grid_values, random_euclidean)

DEFAULT_LAMBDAS = (0.1, 0.25, 0.5, 0.75, 0.9, 0.99)
ROUNDTRIP_LAMBDAS = (0.1, 0.5, 0.99)
DEFAULT_TOL = 1e-9
COMMANDS = ("check", "crispify", "fuzzify", "roundtrip", "balls", "catalog-list")


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


# ----------------------------------------------------------------- config


def load_config(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not valid YAML: {exc}") from None
    if cfg is None:
        return {}
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a mapping")
    return cfg


def parse_lambda_grid(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad lambda grid {text!r}") from None
    return vals


def _lambdas(cfg, default) -> tuple[float, ...]:
    vals = cfg.get("lambdas", default)
    try:
        vals = tuple(float(v) for v in vals)
    except (TypeError, ValueError):
        raise ConfigError("lambdas must be a list of numbers") from None
    if not vals:
        raise ConfigError("empty lambda grid")
    if any(not 0 < v < 1 for v in vals):
        raise ConfigError("lambda grid must lie in (0, 1)")
    return tuple(sorted(set(vals)))


def _carrier(inp: dict, fallback=None):
    """Point set named by ``carrier`` / ``coords`` / ``sample``, or ``fallback``."""
    labels = inp.get("labels")
    if "coords" in inp:
        coords = np.asarray(inp["coords"], dtype=float)
        if coords.ndim != 2:
            raise ConfigError("coords must be a list of coordinate vectors")
        return PointSet.from_coords(coords, labels)
    if "carrier" in inp:
        car = inp["carrier"]
        if isinstance(car, dict):
            return _sample(car)
        return PointSet.from_reals([float(v) for v in car], labels)
    return fallback


def _sample(spec: dict, centers=()) -> PointSet:
    try:
        lo, hi = float(spec.get("lo", -1.0)), float(spec.get("hi", 1.0))
        num = int(spec.get("num", 101))
    except (TypeError, ValueError):
        raise ConfigError("sample needs numeric lo, hi, num") from None
    if num < 1 or not lo <= hi:
        raise ConfigError("sample needs lo <= hi and num >= 1")
    vals = grid_values(lo, hi, num)
    vals += [float(c) for c in centers if float(c) not in vals]
    return PointSet.from_reals(sorted(vals))


def load_input(cfg: dict, seed: int, sample_default: PointSet | None = None):
    """Resolve the ``input`` section to ``("space", space)`` or ``("metric", d)``."""
    inp = cfg.get("input")
    if not isinstance(inp, dict):
        raise ConfigError("config needs an 'input' mapping (or a fixture argument)")
    sources = [k for k in ("fixture", "space", "metric", "random_metric") if k in inp]
    if len(sources) != 1:
        raise ConfigError("input must name exactly one of fixture, space, metric, random_metric")
    kind = sources[0]
    if kind == "fixture":
        params = inp.get("params") or {}
        points = _carrier(inp, sample_default)
        if points is not None and len(points) == 0:
            raise ConfigError("empty carrier")
        return "space", fixture(str(inp["fixture"]), points, **params)
    if kind == "space":
        spec = inp["space"]
        if not isinstance(spec, dict) or "points" not in spec or "pairs" not in spec:
            raise ConfigError("space input needs 'points' and 'pairs'")
        if not spec["points"]:
            raise ConfigError("empty carrier")
        return "space", build_space(PointSet(tuple(spec["points"])), spec["pairs"] or {})
    if kind == "metric":
        spec = inp["metric"]
        if not isinstance(spec, dict):
            raise ConfigError("metric input must be a mapping")
        if "matrix" in spec:
            labels = spec.get("labels") or [str(i) for i in range(len(spec["matrix"]))]
            d = CrispMetric.from_matrix(labels, spec["matrix"])
        else:
            points = _carrier(spec)
            if points is None:
                raise ConfigError("metric input needs 'matrix', 'carrier' or 'coords'")
            d = CrispMetric.euclidean(points)
        if len(d) == 0:
            raise ConfigError("empty carrier")
        return "metric", d.validated()
    spec = inp["random_metric"] or {}
    n = int(spec.get("points", 6))
    if n < 1:
        raise ConfigError("random_metric needs at least one point")
    return "metric", random_euclidean(n, int(spec.get("dim", 2)), seed, float(spec.get("scale", 10.0)))


# ----------------------------------------------------------------- output


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return v if math.isfinite(v) else format_real(v)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def dump_report(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def matrix_csv(labels, D) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", *labels])
    for x, row in zip(labels, np.asarray(D)):
        w.writerow([x, *(format_real(v) for v in row)])
    return buf.getvalue()


def _level_name(prefix: str, lam: float) -> str:
    return f"{prefix}_lambda_{format_real(lam)}.csv"


# --------------------------------------------------------------- commands


def _space_summary(space: FuzzyMetricSpace) -> dict:
    return {"points": list(space.labels), "pairs": len(space.table), "exact": space.exact}


def cmd_check(kind, obj, cfg, opts) -> tuple[dict, int, dict]:
    if kind == "metric":
        rep = check_metric_axioms(obj, opts["tol"])
        return {"metric_axioms": rep.to_dict()}, 0 if rep.ok else 1, {}
    rep = check_axioms(obj, GridConfig(seed=opts["seed"]))
    status = 0 if rep.passed(*FUZZY_METRIC_AXIOMS) else 1
    failing = [e.axiom for e in rep.failures()]
    return {"space": _space_summary(obj), "axioms": rep.to_dict(), "failing": failing,
            "is_fuzzy_metric": status == 0, "fd_holds": rep.verdict("FD")}, status, {}


def cmd_crispify(kind, obj, cfg, opts):
    if kind != "space":
        raise ConfigError("crispify needs a fuzzy space input")
    space = obj
    lambdas = opts["lambdas"] or _lambdas(cfg, DEFAULT_LAMBDAS)
    sweep = lambda_sweep(space, lambdas, cap=opts["cap"])
    labels = space.labels
    levels, files = [], {}
    metrics_ok = True
    for lam, up, lo in zip(sweep.lambdas, sweep.upper, sweep.lower):
        up_rep, lo_rep = check_metric_axioms(up, opts["tol"]), check_metric_axioms(lo, opts["tol"])
        metrics_ok &= up_rep.ok and lo_rep.ok
        equal = int(sum(up.dist[i, j] == lo.dist[i, j] for i, j in space.points.pairs()))
        levels.append({"lambda": lam, "upper": up.dist, "lower": lo.dist,
                       "upper_is_metric": up_rep.ok, "lower_is_metric": lo_rep.ok,
                       "pairs_equal": equal})
        files[_level_name("upper", lam)] = matrix_csv(labels, up.dist)
        files[_level_name("lower", lam)] = matrix_csv(labels, lo.dist)
    am = actual_metric(space, cap=opts["cap"])
    limit = {"fd_holds": am.fd_holds, "equivalence_consistent": am.equivalence_consistent,
             "limits_agree": am.limits_agree,
             "pairs": {f"{x},{y}": lim.to_dict() for (x, y), lim in sweep.limit.items()},
             "diverged": [f"{x},{y}" for x, y in am.diverged]}
    limit_matrix = np.where(np.isfinite(am.upper), am.upper, math.inf)
    files["limit.csv"] = matrix_csv(labels, limit_matrix)
    radu = radu_metric(space)
    files["radu.csv"] = matrix_csv(labels, radu.dist)
    ok = sweep.ok and metrics_ok and am.equivalence_consistent and am.limits_agree
    report = {"space": _space_summary(space), "lambdas": list(sweep.lambdas), "levels": levels,
              "sweep_violations": sweep.violations, "limit": limit, "limit_matrix": limit_matrix,
              "radu": radu.dist}
    return report, 0 if ok else 1, files


def _fuzzify(d: CrispMetric, cfg: dict) -> tuple[FuzzyMetricSpace, dict]:
    spec = cfg.get("fuzzify") or {}
    method = spec.get("method", "indicator")
    if method == "indicator":
        return indicator_fuzzify(d), {"method": "indicator"}
    if method == "mnk":
        m, n, k = (float(spec.get(p, 1.0)) for p in ("m", "n", "k"))
        return mnk_fuzzify(d, m, n, k), {"method": "mnk", "m": m, "n": n, "k": k}
    raise ConfigError(f"unknown fuzzify method {method!r}")


def cmd_fuzzify(kind, obj, cfg, opts):
    if kind != "metric":
        raise ConfigError("fuzzify needs a crisp metric input")
    space, method = _fuzzify(obj, cfg)
    rep = check_axioms(space, GridConfig(seed=opts["seed"]))
    status = 0 if rep.passed(*FUZZY_METRIC_AXIOMS) else 1
    report = {"fuzzify": method, "metric": obj.to_dict(), "space": space.to_spec(),
              "axioms": rep.to_dict()}
    return report, status, {"space.json": dump_report(space.to_spec())}


def cmd_roundtrip(kind, obj, cfg, opts):
    if kind != "metric":
        raise ConfigError("roundtrip needs a crisp metric input")
    d = obj
    lambdas = opts["lambdas"] or _lambdas(cfg, ROUNDTRIP_LAMBDAS)
    space = indicator_fuzzify(d)
    sweep = lambda_sweep(space, lambdas, cap=opts["cap"])
    mismatches = []
    for lam, up, lo in zip(sweep.lambdas, sweep.upper, sweep.lower):
        for tag, M in (("upper", up), ("lower", lo)):
            if not np.array_equal(M.dist, d.dist):
                i, j = np.argwhere(M.dist != d.dist)[0]
                mismatches.append({"lambda": lam, "metric": tag, "pair": [d.labels[i], d.labels[j]],
                                   "got": M.dist[i, j], "expected": d.dist[i, j]})
    am = actual_metric(space, cap=opts["cap"])
    limit_ok = am.fd_holds and np.array_equal(am.upper, d.dist)
    if not limit_ok:
        mismatches.append({"metric": "limit", "diverged": [list(p) for p in am.diverged]})
    report = {"metric": d.to_dict(), "lambdas": list(sweep.lambdas), "mismatches": mismatches,
              "limit_equals_input": bool(limit_ok), "passed": not mismatches}
    files = {"metric.csv": matrix_csv(d.labels, d.dist),
             "limit.csv": matrix_csv(d.labels, am.upper)}
    return report, 0 if not mismatches else 1, files


def _ball_rows(family: BallFamily, centers) -> list[list[str]]:
    labels = family.labels
    rows = []
    for (x, p), ball in family.balls().items():
        if x not in centers:
            continue
        r, eps = p if isinstance(p, tuple) else (p, "")
        rows.append([family.name, x, format_real(r), "" if eps == "" else format_real(eps),
                     *("1" if y in ball else "0" for y in labels)])
    return rows


def cmd_balls(kind, obj, cfg, opts):
    spec = cfg.get("balls") or {}
    radii = tuple(float(r) for r in spec.get("radii", DEFAULT_RADII))
    epsilons = tuple(float(e) for e in spec.get("epsilons", DEFAULT_EPSILONS))
    if not radii or not epsilons:
        raise ConfigError("ball grids must be non-empty")
    report: dict = {"radii": list(radii), "epsilons": list(epsilons)}
    if kind == "space":
        space = obj
        am = actual_metric(space, cap=opts["cap"])
        if am.diverged:
            raise ConfigError("actual metric diverges; ball refinement needs the finite-distance property")
        left = BallFamily.fuzzy(indicator_fuzzify(am.metric), radii, epsilons, name="indicator_of_limit")
        right = BallFamily.fuzzy(space, radii, epsilons, name="space")
        verdict = compare_ball_families(left, right)
        inclusion = check_refinement(space, radii, epsilons)
        report.update({"comparison": verdict.to_dict(), "inclusion": inclusion.to_dict()})
        status = 0 if inclusion.relation != "incomparable" else 1
    else:
        d = obj
        space, method = _fuzzify(d, cfg)
        left = BallFamily.fuzzy(space, radii, epsilons, name="fuzzy")
        if method["method"] == "indicator":
            right = BallFamily.crisp(d, radii, name="crisp")
        else:
            m, n, k = method["m"], method["n"], method["k"]
            right = BallFamily.crisp(d, sorted({fuzzy_to_crisp_radius(m, n, k, r, e)
                                                for r, e in left.params}), name="crisp")
        verdict = compare_ball_families(left, right)
        report.update({"fuzzify": method, "comparison": verdict.to_dict()})
        status = 0 if verdict.relation == "equal" else 1
    labels = left.labels
    centers = [format_real(c) if not isinstance(c, str) else c for c in spec.get("centers", [])]
    centers = [c for c in centers if c in labels] or [labels[len(labels) // 2]]
    report["plot_centers"] = centers
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "center", "radius", "eps", *labels])
    w.writerows(_ball_rows(left, centers) + _ball_rows(right, centers))
    return report, status, {"balls.csv": buf.getvalue()}


HANDLERS = {"check": cmd_check, "crispify": cmd_crispify, "fuzzify": cmd_fuzzify,
            "roundtrip": cmd_roundtrip, "balls": cmd_balls}


# ------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fuzzymetric",
                                 description="Fuzzy metric checks, crispification and fuzzification")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("fixture", nargs="?", help="fixture id, shorthand for input.fixture")
    common.add_argument("--config", help="YAML run configuration")
    common.add_argument("--out", help="output directory (default: report to stdout)")
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="csv also writes matrices / ball indicators next to report.json")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--lambda-grid", help="comma-separated levels in (0, 1)")
    common.add_argument("--cap", type=float, default=None, help="search cap for black-box levels")
    common.add_argument("--tol", type=float, default=None,
                        help=f"slack for metric-axiom checks (default {DEFAULT_TOL:g})")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return ap


def _options(args, cfg) -> dict:
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
    tol = args.tol if args.tol is not None else float(cfg.get("tol", DEFAULT_TOL))
    cap = args.cap if args.cap is not None else cfg.get("cap")
    lambdas = None
    if args.lambda_grid:
        lambdas = _lambdas({"lambdas": parse_lambda_grid(args.lambda_grid)}, ())
    return {"seed": seed, "tol": tol, "cap": None if cap is None else float(cap),
            "lambdas": lambdas, "format": args.format or cfg.get("format", "json")}


def _write(out, report_text: str, files: dict, fmt: str) -> None:
    if out is None:
        sys.stdout.write(report_text)
        return
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report_text)
    if fmt == "csv":
        for name, text in sorted(files.items()):
            (out / name).write_text(text)


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        if args.fixture:
            if args.command == "catalog-list":
                raise ConfigError("catalog-list takes no fixture")
            cfg = {**cfg, "input": {**(cfg.get("input") or {}), "fixture": args.fixture}}
            for other in ("space", "metric", "random_metric"):
                cfg["input"].pop(other, None)
        opts = _options(args, cfg)
        out = args.out if args.out is not None else cfg.get("out")
        if opts["format"] == "csv" and out is None:
            raise ConfigError("--format csv needs an output directory")
        if args.command == "catalog-list":
            report = {"command": "catalog-list", "fixtures": [f.to_dict() for f in list_fixtures()]}
            _write(out, dump_report(report), {}, "json")
            return 0
        sample = None
        if args.command == "balls":
            bspec = (cfg.get("balls") or {})
            sample = _sample(bspec.get("sample") or {}, bspec.get("centers", ()))
        kind, obj = load_input(cfg, opts["seed"], sample)
        body, status, files = HANDLERS[args.command](kind, obj, cfg, opts)
    except (ConfigError, FixtureError, SpaceError, MembershipError, MetricError,
            KeyError, TypeError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fuzzymetric: error: {msg}", file=sys.stderr)
        return 2
    report = {"command": args.command, "version": __version__, "seed": opts["seed"],
              "config": cfg, "options": {k: v for k, v in opts.items() if k != "format"},
              "status": "pass" if status == 0 else "violation", **body}
    _write(out, dump_report(report), files, opts["format"])
    return status


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
