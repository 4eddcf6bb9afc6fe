"""Command-line experiment harness.

Two subcommands: `run` executes repeated seeded runs of one benchmark, `bench`
sweeps the whole suite.  Both write a trace CSV (one row per generation per
run) and a summary CSV (one row per problem).  Identical invocations produce
byte-identical files.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

from . import bench, evolve

TRACE_HEADER = "run,generation,best_fitness,avg_fitness,diversity_d,p_c,p_m,r_c,constant_reset"
SUMMARY_HEADER = "problem,dim,mode,runs,best,mean_best,variance,success_rate,mean_gens_to_best"


class ConfigError(Exception):
    pass


@dataclass
class ExperimentConfig:
    problem: str
    dim: int | None = None
    pop_size: int = 100
    generations: int = 1000
    runs: int = 50
    seed: int = 0
    mode: str = "adaptive"
    tolerance: float = 1e-6
    termination_tolerance: float | None = 1e-12
    trace_path: str = "trace.csv"
    summary_path: str = "summary.csv"


@dataclass
class Summary:
    problem: str
    dim: int
    mode: str
    runs: int
    best: float
    mean_best: float
    variance: float
    success_rate: float
    mean_gens_to_best: float


def _parse_termination(value: str):
    if value.lower() == "none":
        return None
    return float(value)


_CONFIG_COERCERS = {
    "problem": str,
    "dim": int,
    "pop_size": int,
    "generations": int,
    "runs": int,
    "seed": int,
    "mode": str,
    "tolerance": float,
    "termination_tolerance": _parse_termination,
    "trace": str,
    "summary": str,
}


def parse_config_file(path: str) -> dict:
    """key = value lines; '#' starts a comment; errors carry file:line."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    data: dict = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key = key.strip()
        value = value.strip()
        coerce = _CONFIG_COERCERS.get(key)
        if coerce is None:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            data[key] = coerce(value)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value {value!r} for {key}") from None
    return data


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _add_common_flags(parser):
    parser.add_argument("--pop-size", type=int, default=None)
    parser.add_argument("--generations", type=int, default=None)
    parser.add_argument("--runs", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--mode", default=None)
    parser.add_argument("--tolerance", type=float, default=None)
    parser.add_argument("--config", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzygep", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="repeated seeded runs of one problem")
    run_p.add_argument("--problem", default=None)
    run_p.add_argument("--dim", type=int, default=None)
    run_p.add_argument("--trace", default=None)
    run_p.add_argument("--summary", default=None)
    _add_common_flags(run_p)
    bench_p = sub.add_parser("bench", help="run the whole 12-problem suite")
    bench_p.add_argument("--out-dir", default=None)
    _add_common_flags(bench_p)
    return parser


def _merged(args, key: str, data: dict, default):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in data:
        return data[key]
    return default


def experiment_from_args(args) -> ExperimentConfig:
    data = parse_config_file(args.config) if args.config else {}
    problem = _merged(args, "problem", data, None) if hasattr(args, "problem") else data.get("problem")
    if problem is None:
        raise ConfigError("no problem selected; pass --problem or set it in the config file")
    cfg = ExperimentConfig(
        problem=problem,
        dim=_merged(args, "dim", data, None),
        pop_size=_merged(args, "pop_size", data, 100),
        generations=_merged(args, "generations", data, 1000),
        runs=_merged(args, "runs", data, 50),
        seed=_merged(args, "seed", data, 0),
        mode=_merged(args, "mode", data, "adaptive"),
        tolerance=_merged(args, "tolerance", data, 1e-6),
        termination_tolerance=data.get("termination_tolerance", 1e-12),
        trace_path=_merged(args, "trace", data, "trace.csv"),
        summary_path=_merged(args, "summary", data, "summary.csv"),
    )
    validate_experiment(cfg)
    return cfg


def validate_experiment(cfg: ExperimentConfig):
    if cfg.runs < 1:
        raise ConfigError("runs must be at least 1")
    if cfg.pop_size < 2:
        raise ConfigError("pop-size must be at least 2")
    if cfg.generations < 1:
        raise ConfigError("generations must be at least 1")
    if cfg.tolerance < 0.0:
        raise ConfigError("tolerance must be non-negative")
    if cfg.termination_tolerance is not None and cfg.termination_tolerance < 0.0:
        raise ConfigError("termination_tolerance must be non-negative")
    if cfg.mode not in ("adaptive", "baseline"):
        raise ConfigError(f"mode must be adaptive or baseline, not {cfg.mode!r}")
    try:
        bench.builtin(cfg.problem, cfg.dim)
    except ValueError as err:
        raise ConfigError(str(err)) from None


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_lines(path: str, lines):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def write_trace(path: str, traces):
    lines = [TRACE_HEADER]
    for run_idx, rows in enumerate(traces):
        for row in rows:
            lines.append(",".join((
                str(run_idx),
                str(row.generation),
                _fmt(row.best_fitness),
                _fmt(row.avg_fitness),
                _fmt(row.diversity_d),
                _fmt(row.p_c),
                _fmt(row.p_m),
                _fmt(row.r_c),
                _fmt(row.constant_reset),
            )))
    _write_lines(path, lines)


def write_summary(path: str, summaries):
    lines = [SUMMARY_HEADER]
    for s in summaries:
        lines.append(",".join((
            s.problem,
            str(s.dim),
            s.mode,
            str(s.runs),
            _fmt(s.best),
            _fmt(s.mean_best),
            _fmt(s.variance),
            _fmt(s.success_rate),
            _fmt(s.mean_gens_to_best),
        )))
    _write_lines(path, lines)


def succeeded(problem: bench.Problem, tolerance: float, fitness: float) -> bool:
    opt = problem.known_optimum
    if opt is None or not math.isfinite(fitness):
        return False
    return abs(fitness - opt) <= tolerance


def summarize(problem: bench.Problem, cfg: ExperimentConfig, results) -> Summary:
    bests = [r.best.fitness for r in results]
    finite = [b for b in bests if math.isfinite(b)]
    if not finite:
        best = float("nan")
    elif problem.direction == "minimize":
        best = min(finite)
    else:
        best = max(finite)
    mean_best = sum(bests) / len(bests)
    variance = sum((b - mean_best) ** 2 for b in bests) / len(bests)
    winners = [r for r in results if succeeded(problem, cfg.tolerance, r.best.fitness)]
    success_rate = len(winners) / len(results)
    if winners:
        mean_gens = sum(r.first_best_gen for r in winners) / len(winners)
    else:
        mean_gens = float("nan")
    return Summary(problem.name, problem.dim, cfg.mode, len(results),
                   best, mean_best, variance, success_rate, mean_gens)


def run_experiment(cfg: ExperimentConfig) -> Summary:
    """Execute cfg.runs seeded runs and write the trace file; no summary I/O."""
    problem = bench.builtin(cfg.problem, cfg.dim)
    try:
        engine_cfg = evolve.EngineConfig(
            pop_size=cfg.pop_size,
            max_gen=cfg.generations,
            mode=cfg.mode,
            success_tol=cfg.tolerance,
            termination_tol=cfg.termination_tolerance,
        )
    except ValueError as err:
        raise ConfigError(str(err)) from None
    results = [evolve.run(problem, engine_cfg, seed=cfg.seed + i) for i in range(cfg.runs)]
    write_trace(cfg.trace_path, [r.trace for r in results])
    return summarize(problem, cfg, results)


def _oneline(s: Summary) -> str:
    return (f"{s.problem} dim={s.dim} mode={s.mode} runs={s.runs} "
            f"best={s.best:.6g} mean={s.mean_best:.6g} "
            f"success={s.success_rate:.0%} mean_gens={s.mean_gens_to_best:.6g}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "run":
            cfg = experiment_from_args(args)
            summary = run_experiment(cfg)
            write_summary(cfg.summary_path, [summary])
            print(_oneline(summary))
        else:
            data = parse_config_file(args.config) if args.config else {}
            out_dir = args.out_dir if args.out_dir is not None else "results"
            os.makedirs(out_dir, exist_ok=True)
            summaries = []
            for name in bench.problem_names():
                cfg = ExperimentConfig(
                    problem=name,
                    pop_size=_merged(args, "pop_size", data, 100),
                    generations=_merged(args, "generations", data, 1000),
                    runs=_merged(args, "runs", data, 50),
                    seed=_merged(args, "seed", data, 0),
                    mode=_merged(args, "mode", data, "adaptive"),
                    tolerance=_merged(args, "tolerance", data, 1e-6),
                    termination_tolerance=data.get("termination_tolerance", 1e-12),
                    trace_path=os.path.join(out_dir, f"{name}_trace.csv"),
                    summary_path=os.path.join(out_dir, "summary.csv"),
                )
                validate_experiment(cfg)
                summary = run_experiment(cfg)
                summaries.append(summary)
                print(_oneline(summary), flush=True)
            write_summary(os.path.join(out_dir, "summary.csv"), summaries)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 0
