"""Command-line front end: run experiments, reproduce the tables and figures."""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import svgplot
from .bounds import accuracy_sweep, method1_accuracy
from .graph import TOPOLOGIES, schedule_from_config
from .llp import solve_llp
from .problem import case_study_instance, instance_from_config
from .sim import PLOT_CEILING, ConfigError, RunParams, RunResult, run, trace

METHODS = ("I", "II")
TABLE2_TOPOLOGIES = ("cycle", "customized", "complete")


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from None


def _build_from_config(config: dict):
    instance_cfg = config.get("instance", "case-study")
    if instance_cfg == "case-study":
        instance = case_study_instance()
    else:
        try:
            instance = instance_from_config(instance_cfg)
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"bad 'instance' section: {exc}") from None
    topology = config.get("topology", "cycle")
    try:
        if isinstance(topology, str):
            schedule = TOPOLOGIES[topology](instance.m)
        else:
            schedule = schedule_from_config(topology)
    except KeyError:
        raise ConfigError(f"bad 'topology' field: unknown topology {topology!r}") from None
    try:
        params = RunParams(
            eps0=float(config.get("eps0", 0.01)),
            r=float(config.get("r", 2.0)),
            eps_f=float(config.get("eps_f", 0.01)),
            method=str(config.get("method", "I")),
            max_iter=int(config.get("max_iter", 500)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad run parameter: {exc}") from None
    return instance, schedule, params


def _write_trace_csv(path: Path, result: RunResult) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "lower", "upper"])
        for k, lower, upper in trace(result):
            writer.writerow([k, f"{lower:.10f}", f"{upper:.10f}"])


def _result_summary(result: RunResult) -> dict:
    return {
        "terminated": result.terminated,
        "iterations": result.iterations,
        "method": result.method,
        "accuracy_bound": result.accuracy_bound,
        "final_lower": result.final_lower,
        "final_upper": result.final_upper if math.isfinite(result.final_upper) else None,
        "x_opt": [list(map(float, x)) for x in result.x_opt] if result.x_opt else None,
    }


def cmd_run(args) -> int:
    out = Path(args.out)
    try:
        config = _load_config(args.config)
        instance, schedule, params = _build_from_config(config)
        result = run(instance, schedule, params)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "results.json", "w") as fh:
        json.dump(_result_summary(result), fh, indent=2)
        fh.write("\n")
    _write_trace_csv(out / "trace.csv", result)
    if args.plot:
        curve = trace(result)
        svgplot.write_line_chart(
            out / "trace.svg",
            [
                svgplot.Series("lower", [(k, lo) for k, lo, _ in curve], "black"),
                svgplot.Series("upper", [(k, up) for k, _, up in curve], "blue", dash="4 2"),
            ],
            x_label="iteration",
            y_label="objective bounds",
        )
    return 0 if result.terminated else 2


def cmd_table2(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    instance = case_study_instance()
    rows = []
    for method in METHODS:
        for topology in TABLE2_TOPOLOGIES:
            schedule = TOPOLOGIES[topology](instance.m)
            params = RunParams(
                eps0=args.eps0, r=args.r, eps_f=args.eps_f, method=method, max_iter=args.max_iter
            )
            result = run(instance, schedule, params)
            feasible = all(
                solve_llp(c, x)[0] <= 1e-9
                for c, x in zip(instance.constraints, result.x_opt)
            )
            rows.append((method, topology, result, feasible))

    header = f"{'method':<8}{'topology':<12}{'iters':<7}{'lower':<12}{'upper':<12}{'feasible':<9}solution (agent 1)"
    print(header)
    print("-" * len(header))
    for method, topology, result, feasible in rows:
        x = result.x_opt[0]
        print(
            f"{method:<8}{topology:<12}{result.iterations:<7}"
            f"{result.final_lower:<12.4f}{result.final_upper:<12.4f}"
            f"{'yes' if feasible else 'NO':<9}[{x[0]:+.4f}, {x[1]:+.4f}]"
        )

    with open(out / "table2.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["method", "topology", "iterations", "lower", "upper", "feasible"]
            + [f"x{i}_coord{j}" for i in range(1, instance.m + 1) for j in (1, 2)]
        )
        for method, topology, result, feasible in rows:
            coords = [f"{c:.6f}" for x in result.x_opt for c in x]
            writer.writerow(
                [
                    method,
                    topology,
                    result.iterations,
                    f"{result.final_lower:.6f}",
                    f"{result.final_upper:.6f}",
                    feasible,
                ]
                + coords
            )
    return 0


def _sweep_rows(m_max: float, eps_f: float):
    topologies = {
        name: gen
        for name, gen in TOPOLOGIES.items()
    }
    rows = []
    for name, gen in topologies.items():
        m_lo = 3 if name == "customized" else 2
        rows.extend(accuracy_sweep({name: gen}, range(m_lo, int(m_max) + 1), eps_f))
    return rows


def _write_sweep_csv(path: Path, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["topology", "m", "T", "method1_bound", "method2_bound"])
        for row in rows:
            writer.writerow(
                [row.topology, row.m, row.window, f"{row.method1_bound:.10f}", f"{row.method2_bound:.10f}"]
            )


def cmd_sweep(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = _sweep_rows(args.m_max, args.eps_f)
    _write_sweep_csv(out / "sweep.csv", rows)
    return 0


def cmd_fig3(args) -> int:
    if args.m_max < 3:
        print("error: fig3 needs --m-max >= 3", file=sys.stderr)
        return 1
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = _sweep_rows(args.m_max, args.eps_f)
    _write_sweep_csv(out / "fig3.csv", rows)

    ms = sorted({row.m for row in rows})
    series = [
        svgplot.Series("centralized", [(m, args.eps_f) for m in ms], "red", dash="6 3"),
        svgplot.Series(
            "method I", [(m, method1_accuracy(m, args.eps_f)) for m in ms], "green", dash="2 2"
        ),
    ]
    colors = {"cycle": "black", "customized": "blue", "complete": "grey"}
    for name in TABLE2_TOPOLOGIES:
        pts = [(row.m, row.method2_bound) for row in rows if row.topology == name]
        series.append(svgplot.Series(f"method II ({name})", pts, colors[name]))
    svgplot.write_line_chart(
        out / "fig3.svg",
        series,
        x_label="number of agents",
        y_label="accuracy bound",
        title="Accuracy of the approximate optimum vs agents",
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drcopt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment from a JSON config")
    p_run.add_argument("config")
    p_run.add_argument("--out", default="out")
    p_run.add_argument("--plot", action="store_true", help="also write trace.svg")
    p_run.set_defaults(func=cmd_run)

    p_t2 = sub.add_parser("table2", help="run all 6 topology x method case-study combinations")
    p_t2.add_argument("--out", default="out")
    p_t2.add_argument("--eps0", type=float, default=0.01)
    p_t2.add_argument("--r", type=float, default=2.0)
    p_t2.add_argument("--eps-f", dest="eps_f", type=float, default=0.01)
    p_t2.add_argument("--max-iter", dest="max_iter", type=int, default=500)
    p_t2.set_defaults(func=cmd_table2)

    p_f3 = sub.add_parser("fig3", help="accuracy-vs-agents sweep with SVG plot")
    p_f3.add_argument("--out", default="out")
    p_f3.add_argument("--m-max", dest="m_max", type=int, default=50)
    p_f3.add_argument("--eps-f", dest="eps_f", type=float, default=0.01)
    p_f3.set_defaults(func=cmd_fig3)

    p_sw = sub.add_parser("sweep", help="accuracy sweep, CSV only")
    p_sw.add_argument("--out", default="out")
    p_sw.add_argument("--m-max", dest="m_max", type=int, default=50)
    p_sw.add_argument("--eps-f", dest="eps_f", type=float, default=0.01)
    p_sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
