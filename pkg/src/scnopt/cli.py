"""Command-line harness for running optimizations and generating instances.

``scnopt run`` evolves a Pareto front for one instance file and writes three
artifacts into the output directory: ``front.csv`` (the front), ``report.json``
(config echo plus per-generation progress), and ``front.dat`` (two-column
plot data).  ``scnopt generate`` writes a preset instance file.  Outputs are
byte-identical across runs with identical flags; wall time is printed to the
console only, never persisted.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .instances import (
    PRESETS,
    ValidationError,
    front_rows,
    generate_preset,
    load_instance,
    save_front,
    save_instance,
)
from .metrics import hypervolume_2d
from .model import SupplyChainProblem
from .nsga2 import EngineConfig, EvaluationError, EvolutionResult, evolve

__all__ = ["main", "cmd_run", "cmd_generate", "RunReport", "build_parser", "resolve_engine_config"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3

PAPER_PARAMS = {
    "pop_size": 1290,
    "generations": 500,
    "crossover_prob": 0.6,
    "mutation_prob": 0.01,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage problems instead of exiting with code 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


@dataclass
class RunReport:
    """Everything a run produced: config echo, per-generation records, timing.

    ``records`` holds one entry for the initial population (generation 0) and
    one per generation after it, each with the archive size, the archive
    hypervolume against a fixed run-wide reference point, and the best value
    seen per objective.  ``wall_time_s`` is console-only; the persisted report
    must stay byte-identical across reruns.
    """

    config: dict
    records: list[dict]
    front_size: int
    front_path: str
    wall_time_s: float

    def to_json(self) -> str:
        payload = {
            "config": self.config,
            "records": self.records,
            "front": {"path": self.front_path, "size": self.front_size},
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def build_report(result: EvolutionResult, config_echo: dict, front_path: str,
                 front_size: int, wall_time_s: float) -> RunReport:
    """Assemble the run report, computing hypervolume against one fixed reference.

    The reference corner is the component-wise maximum over every archive
    snapshot plus one, so the hypervolume sequence is comparable across
    generations (and non-decreasing, since the archive only improves).
    """
    snapshots = [rec.archive_objectives for rec in result.history]
    nonempty = [s for s in snapshots if s.size]
    reference = None
    if nonempty:
        reference = np.max(np.vstack(nonempty), axis=0) + 1.0
    records = []
    for rec in result.history:
        volume = hypervolume_2d(rec.archive_objectives, reference) if rec.archive_objectives.size else 0.0
        best = rec.best_objectives
        records.append(
            {
                "generation": rec.generation,
                "evaluations": rec.evaluations,
                "archive_size": rec.archive_size,
                "hypervolume": volume,
                "best_total_cost": None if best is None else float(best[0]),
                "best_delay": None if best is None else float(best[1]),
            }
        )
    return RunReport(
        config=config_echo,
        records=records,
        front_size=front_size,
        front_path=front_path,
        wall_time_s=wall_time_s,
    )


def _write_plot_data(rows: list[tuple[float, float, float]], path: Path) -> None:
    """Two-column front data (total cost, delay quantity), gnuplot-ready."""
    lines = ["# total_cost delay_quantity"]
    for cost, delay, _days in rows:
        lines.append(f"{cost!r} {delay!r}")
    path.write_text("\n".join(lines) + "\n")


def resolve_engine_config(args: argparse.Namespace) -> EngineConfig:
    """Engine configuration for a ``run`` invocation.

    ``--paper-params`` overrides the four search parameters with the published
    set; seed and worker count always come from their own flags.
    """
    pop_size = args.pop_size
    generations = args.generations
    crossover_prob = args.crossover_prob
    mutation_prob = args.mutation_prob
    if args.paper_params:
        pop_size = PAPER_PARAMS["pop_size"]
        generations = PAPER_PARAMS["generations"]
        crossover_prob = PAPER_PARAMS["crossover_prob"]
        mutation_prob = PAPER_PARAMS["mutation_prob"]
    return EngineConfig(
        population_size=pop_size,
        generations=generations,
        crossover_prob=crossover_prob,
        mutation_prob=mutation_prob,
        seed=args.seed,
        eval_workers=args.eval_workers,
    )


def cmd_run(args: argparse.Namespace) -> int:
    try:
        instance = load_instance(args.instance)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION

    try:
        config = resolve_engine_config(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION

    problem = SupplyChainProblem(instance, holding_on_backorder=args.holding_on_backorder)
    out_dir = Path(args.out)

    config_echo = {
        "instance": str(args.instance),
        "population_size": config.population_size,
        "generations": config.generations,
        "crossover_prob": config.crossover_prob,
        "mutation_prob": config.mutation_prob,
        "sbx_eta": config.sbx_eta,
        "pm_eta": config.pm_eta,
        "seed": config.seed,
        "eval_workers": config.eval_workers,
        "holding_on_backorder": args.holding_on_backorder,
        "paper_params": bool(args.paper_params),
    }

    started = time.perf_counter()
    try:
        result = evolve(problem, config)
        out_dir.mkdir(parents=True, exist_ok=True)
        rows = front_rows(result.archive, instance)
        front_path = out_dir / "front.csv"
        save_front(result.archive, front_path, instance)
        _write_plot_data(rows, out_dir / "front.dat")
    except (EvaluationError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    wall = time.perf_counter() - started

    report = build_report(result, config_echo, "front.csv", len(rows), wall)
    (out_dir / "report.json").write_text(report.to_json())

    echo = ", ".join(f"{k}={v}" for k, v in config_echo.items())
    print(f"run config: {echo}")
    print(f"archive: {len(result.archive)} points, exported front: {len(rows)} rows")
    print(f"wrote {out_dir / 'front.csv'}, {out_dir / 'report.json'}, {out_dir / 'front.dat'}")
    print(f"wall time: {wall:.2f}s")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        instance = generate_preset(args.preset, seed=args.seed)
        path = save_instance(instance, args.out)
    except (ValidationError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as err:
        print(f"error: cannot write {args.out}: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"wrote {path} ({args.preset}, seed {args.seed})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="scnopt",
        description="Evolve cost/delay Pareto fronts for supply chain network designs.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="optimize one instance and export the front")
    run.add_argument("--instance", required=True, help="path to an instance JSON file")
    run.add_argument("--out", required=True, help="output directory for front/report/plot files")
    run.add_argument("--pop-size", type=int, default=100, dest="pop_size")
    run.add_argument("--generations", type=int, default=200)
    run.add_argument("--crossover-prob", type=float, default=0.6, dest="crossover_prob")
    run.add_argument("--mutation-prob", type=float, default=0.01, dest="mutation_prob")
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--eval-workers", type=int, default=1, dest="eval_workers",
                     help="threads for concurrent evaluation (deterministic either way)")
    run.add_argument("--paper-params", action="store_true", dest="paper_params",
                     help="use the published parameter set: population 1290, 500 generations, "
                          "crossover 0.6, mutation 0.01")
    run.add_argument("--holding-on-backorder", action="store_true", dest="holding_on_backorder",
                     help="charge holding cost on backlog instead of on-hand stock")
    run.set_defaults(func=cmd_run)

    generate = subparsers.add_parser("generate", help="write a preset instance file")
    generate.add_argument("--preset", required=True, choices=["tiny", *sorted(PRESETS)])
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--out", required=True, help="path of the instance JSON to write")
    generate.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except Exception as err:  # noqa: BLE001 - the CLI boundary maps everything to exit codes
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
