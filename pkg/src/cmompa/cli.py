"""Batch driver for benchmark campaigns, deployment runs and significance tests.

Exit codes: 0 success, 1 usage or input error, 2 failed or infeasible run.
The default output directory is ``$CMOMPA_OUTPUT_DIR`` or ``./results``.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import platform
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .benchmarks import BenchmarkId, make_benchmark, sample_true_pf
from .core import EvaluationError
from .metrics import igd, normalized_hv, wilcoxon_signed_rank
from .optimizer import RunConfig, run
from .wsn import (
    FAILURE_TABLE,
    ScenarioError,
    decode,
    evaluate_batch,
    generate_scenario,
    lifetime_simulate,
    load_scenario,
    make_problem,
    save_scenario,
)

OUTPUT_ENV = "CMOMPA_OUTPUT_DIR"
EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2
ALPHA = 0.05

# Defaults for options that may also come from a --config file.
DEFAULTS = {
    "runs": 1,
    "iters": 300,
    "pop": 100,
    "divisions": None,
    "theta": 0.5,
    "seed": 0,
    "lifetime": False,
    "horizon": 180,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_rows(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _resolve(args, keys) -> dict:
    """Merge flags over config-file values over built-in defaults."""
    conf = {}
    if getattr(args, "config", None):
        try:
            conf = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        unknown = set(conf) - set(DEFAULTS) - {"problem", "scenario"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    out = {}
    for k in keys:
        flag = getattr(args, k, None)
        given = flag is True if isinstance(flag, bool) else flag is not None
        out[k] = flag if given else conf.get(k, DEFAULTS.get(k))
    return out


def _output_dir(args) -> Path:
    out = Path(args.out or os.environ.get(OUTPUT_ENV) or "results")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _manifest(out: Path, command: str, config: dict, extra: dict | None = None) -> None:
    data = {
        "command": command,
        "config": config,
        "seed": config.get("seed"),
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        **(extra or {}),
    }
    (out / "manifest.json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _run_config(cfg: dict, seed: int) -> RunConfig:
    try:
        return RunConfig(
            population_size=int(cfg["pop"]),
            divisions=None if cfg["divisions"] is None else int(cfg["divisions"]),
            max_iter=int(cfg["iters"]),
            theta=float(cfg["theta"]),
            seed=int(seed),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_benchmark(args) -> int:
    cfg = _resolve(args, ["problem", "runs", "iters", "pop", "divisions", "theta", "seed"])
    if not cfg["problem"]:
        raise UsageError("--problem is required")
    try:
        bid = BenchmarkId.parse(str(cfg["problem"]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if int(cfg["runs"]) < 1:
        raise UsageError("--runs must be at least 1")
    cfg["problem"] = bid.name
    problem = make_benchmark(bid)
    true_pf = sample_true_pf(bid)
    out = _output_dir(args)
    arch_dir = out / "archives"
    arch_dir.mkdir(exist_ok=True)
    header = [f"f{j + 1}" for j in range(problem.n_obj)]

    rows, fronts = [], []
    for i in range(int(cfg["runs"])):
        seed = int(cfg["seed"]) + i
        result = run(problem, _run_config(cfg, seed))
        F = result.F
        fronts.append(F)
        _write_rows(arch_dir / f"{bid.name}_run{i:03d}.csv", header, [[_fmt(v) for v in f] for f in F])
        rows.append([i, seed, igd(F, true_pf), normalized_hv(F, true_pf), result.evaluations])
        print(f"{bid.name} run {i} seed {seed}: IGD {rows[-1][2]:.4e}  HV {rows[-1][3]:.4f}", file=sys.stderr)

    _write_rows(
        out / "runs.csv",
        ["run", "seed", "igd", "hv", "evaluations"],
        [[r[0], r[1], _fmt(r[2]), _fmt(r[3]), r[4]] for r in rows],
    )
    igds = np.array([r[2] for r in rows])
    hvs = np.array([r[3] for r in rows])
    _write_rows(
        out / "summary.csv",
        ["problem", "runs", "igd_mean", "igd_std", "hv_mean", "hv_std"],
        [[bid.name, len(rows), _fmt(igds.mean()), _fmt(igds.std()), _fmt(hvs.mean()), _fmt(hvs.std())]],
    )
    # Scatter data: the median-IGD run's front, then the sampled true front.
    med = int(np.argsort(igds)[len(igds) // 2])
    with open(out / "front.dat", "w") as fh:
        fh.write(f"# {bid.name} run {med} archive\n")
        np.savetxt(fh, fronts[med], fmt="%.10g")
        fh.write("\n\n# true front sample\n")
        np.savetxt(fh, true_pf, fmt="%.10g")
    _manifest(out, "benchmark", cfg)
    print(f"{bid.name}: IGD {igds.mean():.4e} +- {igds.std():.2e}  HV {hvs.mean():.4f} +- {hvs.std():.2e}")
    return EXIT_OK


def _unique_deployments(X: np.ndarray, scenario):
    seen, keep = set(), []
    for i, x in enumerate(X):
        key = decode(x, scenario).tobytes()
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return np.asarray(keep, dtype=int)


def cmd_deploy(args) -> int:
    cfg = _resolve(args, ["scenario", "iters", "pop", "divisions", "theta", "seed", "lifetime", "horizon"])
    if not cfg["scenario"]:
        raise UsageError("--scenario is required")
    try:
        scenario = load_scenario(cfg["scenario"])
    except (OSError, ScenarioError) as exc:
        raise UsageError(f"invalid scenario: {exc}") from exc
    if int(cfg["horizon"]) < 1:
        raise UsageError("--horizon must be at least 1")
    out = _output_dir(args)
    result = run(make_problem(scenario), _run_config(cfg, int(cfg["seed"])))
    feasible = result.feasible()
    _manifest(out, "deploy", cfg, {"scenario_sha": _digest(cfg["scenario"])})
    if len(feasible) == 0:
        print("no feasible solution found", file=sys.stderr)
        return EXIT_FAILED

    keep = _unique_deployments(feasible.X, scenario)
    X = feasible.X[keep]
    ev = evaluate_batch(X, scenario)
    order = np.lexsort((-ev.sigma_conn, -ev.sigma_cov, ev.cost))
    X, assignments = X[order], ev.assignment[order]
    ev = evaluate_batch(X, scenario)
    _write_rows(
        out / "archive.csv",
        ["id", "cost", "sigma_cov", "sigma_conn", "violation"],
        [[i, _fmt(ev.cost[i]), _fmt(ev.sigma_cov[i]), _fmt(ev.sigma_conn[i]), _fmt(ev.violation[i])] for i in range(len(X))],
    )
    _write_rows(
        out / "deployments.csv",
        ["id", "site", "type"],
        [[i, s, int(t)] for i, a in enumerate(assignments) for s, t in enumerate(a) if t >= 0],
    )
    if cfg["lifetime"]:
        life_rows, curve_rows = [], []
        for i, a in enumerate(assignments):
            rep = lifetime_simulate(a, scenario, FAILURE_TABLE, np.random.default_rng(int(cfg["seed"])), int(cfg["horizon"]))
            life_rows.append([i, _fmt(rep.lifetime_days), _fmt(rep.connectivity_days), _fmt(rep.total_cost), _fmt(rep.daily_cost)])
            curve_rows.extend([i, day, _fmt(c)] for day, c in enumerate(rep.coverage_curve))
        _write_rows(out / "lifetime.csv", ["id", "lifetime_days", "connectivity_days", "total_cost", "daily_cost"], life_rows)
        _write_rows(out / "coverage_curves.csv", ["id", "day", "coverage"], curve_rows)
    print(f"{len(X)} feasible deployments, cheapest cost {ev.cost.min():g}")
    return EXIT_OK


def _digest(path) -> str:
    import hashlib

    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _read_sample(path: str, column: str) -> np.ndarray:
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r]
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise UsageError(f"{path} is empty")
    try:
        if column in rows[0]:
            j = rows[0].index(column)
            return np.array([float(r[j]) for r in rows[1:]])
        return np.array([float(r[0]) for r in rows])
    except (ValueError, IndexError) as exc:
        raise UsageError(f"{path}: no numeric column {column!r}") from exc


def cmd_stats(args) -> int:
    a = _read_sample(args.first, args.column)
    b = _read_sample(args.second, args.column)
    if a.size != b.size:
        raise UsageError(f"unequal sample sizes: {a.size} vs {b.size}")
    if a.size == 0:
        raise UsageError("samples are empty")
    p = wilcoxon_signed_rank(a, b)
    first_better = np.median(a - b) < 0 if not args.maximize else np.median(a - b) > 0
    verdict = "=" if p >= args.alpha or np.median(a - b) == 0 else ("+" if first_better else "-")
    print(f"n={a.size} p={p:.6g} verdict={verdict}")
    return EXIT_OK


def cmd_scenario_gen(args) -> int:
    try:
        scenario = generate_scenario(
            box=tuple(args.box), n_sites=args.sites, n_targets=args.targets, seed=args.seed, K=args.K, C=args.C
        )
    except ScenarioError as exc:
        raise UsageError(str(exc)) from exc
    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    save_scenario(scenario, path)
    print(f"wrote {path}")
    return EXIT_OK


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of option values; flags override it")
    p.add_argument("--iters", type=int, help="iterations per run (default 300)")
    p.add_argument("--pop", type=int, help="population size (default 100)")
    p.add_argument("--divisions", type=int, help="reference-point divisions (default 99 for 2 objectives, 12 for 3)")
    p.add_argument("--theta", type=float, help="phase-update step scale (default 0.5)")
    p.add_argument("--seed", type=int, help="base seed (default 0)")
    p.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV} or ./results)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cmompa", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cmompa {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("benchmark", help="run a benchmark campaign")
    p.add_argument("--problem", help="benchmark id such as zdt1, dtlz3 or wfg4")
    p.add_argument("--runs", type=int, help="independent runs with seeds seed, seed+1, ... (default 1)")
    _add_run_flags(p)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("deploy", help="optimise a sensor deployment scenario")
    p.add_argument("--scenario", help="scenario JSON file")
    p.add_argument("--lifetime", action="store_true", help="simulate node failures for every deployment")
    p.add_argument("--horizon", type=int, help="lifetime horizon in days (default 180)")
    _add_run_flags(p)
    p.set_defaults(func=cmd_deploy)

    p = sub.add_parser("stats", help="paired Wilcoxon signed-rank test of two result files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--column", default="igd", help="column to compare (default igd)")
    p.add_argument("--alpha", type=float, default=ALPHA)
    p.add_argument("--maximize", action="store_true", help="larger values are better (e.g. hv)")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("scenario", help="scenario utilities")
    ssub = p.add_subparsers(dest="scenario_command", required=True, parser_class=_Parser)
    g = ssub.add_parser("gen", help="generate a random scenario file")
    g.add_argument("--box", type=float, nargs=3, default=[55.0, 55.0, 20.0], metavar=("X", "Y", "Z"))
    g.add_argument("--sites", type=int, default=100)
    g.add_argument("--targets", type=int, default=300)
    g.add_argument("--K", type=int, default=1)
    g.add_argument("--C", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, help="scenario JSON path")
    g.set_defaults(func=cmd_scenario_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cmompa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EvaluationError, OSError) as exc:
        print(f"cmompa: run failed: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
