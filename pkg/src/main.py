#!/usr/bin/env python3
"""
bandrec - command line entry point
Subcommands run interpolator checks, node generation, single interpolations,
rate sweeps, regularity ratios and the dyadic series check over JSON configs.

Exit status: 0 pass, 1 analytic failure, 2 usage or config error, 3 numerical failure.
"""
import argparse
import hashlib
import json
import shutil
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, List, Optional, Type

import numpy as np
from pydantic import BaseModel

from data_sources import bandlimited, nodes as node_sets
from src import conditions, experiments, report_writer
from src.config import get_config
from src.console import Console, set_quiet
from src.errors import BandrecError, NumericalError
from src.geometry import from_dict as body_from_dict
from src.interpolation import averaged, interpolate
from src.kernels import make_kernel
from src.run_configs import (
    CheckKernelConfig,
    InterpolateConfig,
    NodesConfig,
    RatiosConfig,
    SweepConfig,
    describe_fields,
    load_config,
)

EXIT_OK = 0
EXIT_ANALYTIC = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

console = Console("bandrec")


def _kernel(spec, dim: int):
    return make_kernel(spec.family, dim, spec.rate, nu=spec.nu, p=spec.p)


def _nodes_summary(nodes: node_sets.NodeSet) -> dict:
    lo, hi = nodes.hull()
    return {"count": len(nodes), "dim": nodes.dim, "separation": nodes.separation,
            "hull": [lo.tolist(), hi.tolist()], "axes": [a.to_dict() for a in nodes.axes]}


def run_check_kernel(cfg: CheckKernelConfig, out: Path) -> int:
    body = body_from_dict(cfg.body.model_dump())
    kernel = _kernel(cfg.kernel, body.dim)
    report = conditions.check_interpolator(kernel, body, j_max=cfg.j_max, scheme=cfg.scheme)
    report_writer.write_json(out / "report.json", report.to_dict())
    report_writer.write_annuli(report, out / "annuli.csv")
    report_writer.write_summary(out / "summary.md", "check_kernel.md.j2", report=report)
    return EXIT_OK if report.passed else EXIT_ANALYTIC


def run_nodes(cfg: NodesConfig, out: Path) -> int:
    nodes = node_sets.from_config(cfg.nodes.model_dump())
    nodes.to_csv(out / "nodes.csv")
    report_writer.write_json(out / "nodes.json", _nodes_summary(nodes))
    console.success(f"{len(nodes)} nodes, separation {nodes.separation:.6g}")
    return EXIT_OK


def run_interpolate(cfg: InterpolateConfig, out: Path) -> int:
    body = body_from_dict(cfg.body.model_dump())
    kernel = _kernel(cfg.kernel, body.dim)
    f = bandlimited.from_config(cfg.function.model_dump(), beta=cfg.beta, dim=body.dim)
    nodes = node_sets.from_config(cfg.nodes.model_dump())
    interpolant = interpolate(kernel, nodes, f)
    interpolant.to_csv(out / "interpolant.csv")

    points = np.asarray(cfg.eval_points, dtype=float) if cfg.eval_points else nodes.points
    values, truth = interpolant.values(points), f.values(points)
    summary = {
        "kernel": kernel.describe(),
        "nodes": _nodes_summary(nodes),
        "node_residual": interpolant.node_residual,
        "jitter": interpolant.jitter,
        "condition_estimate": interpolant.condition_estimate,
        "max_eval_error": float(np.max(np.abs(values - truth))),
    }
    columns = [f"x{k + 1}" for k in range(body.dim)] + ["interpolant", "f"]
    rows = [list(map(float, x)) + [float(v), float(t)] for x, v, t in zip(points, values, truth)]

    if cfg.averaged_with:
        extra = [node_sets.from_config(spec.model_dump()) for spec in cfg.averaged_with]
        approximant = averaged(kernel, [nodes] + extra, f)
        union = node_sets.union([nodes] + extra)
        summary["averaged_node_mismatch"] = float(np.max(np.abs(approximant.values(union) - f.values(union))))
        columns.append("averaged")
        for row, value in zip(rows, approximant.values(points)):
            row.append(float(value))

    report_writer.write_table(out / "evaluations.csv", columns, rows)
    report_writer.write_json(out / "summary.json", summary)
    console.success(f"interpolated on {len(nodes)} nodes (node residual {interpolant.node_residual:.3e})")
    return EXIT_OK


def run_ratios(cfg: RatiosConfig, out: Path) -> int:
    body = body_from_dict(cfg.body.model_dump())
    report = conditions.regularity_sweep(cfg.family.family, body, cfg.beta, cfg.alpha_grid,
                                         nu=cfg.family.nu, p=cfg.family.p, limiting_case=cfg.limiting_case)
    exponent = conditions.theoretical_exponent(cfg.family.family, body.inscribed_radius, cfg.beta, cfg.family.p)
    report_writer.write_regularity(report, out / "ratios.csv")
    report_writer.write_json(out / "ratios.json", {**report.to_dict(), "exponent": exponent})
    report_writer.write_summary(out / "summary.md", "ratios.md.j2", report=report, exponent=exponent)
    return EXIT_OK if report.passed else EXIT_ANALYTIC


def run_sweep(cfg: SweepConfig, out: Path) -> int:
    report = experiments.run_sweep(cfg)
    fit = experiments.fit_rate(report)
    experiments.write_report(report, out / "report.csv")
    report_writer.write_json(out / "fit.json", fit.to_dict())
    report_writer.write_summary(out / "summary.md", "sweep.md.j2", meta=report.metadata, rows=report.rows, fit=fit)
    if fit.passed:
        console.success(fit.message)
    else:
        console.warn(f"rate check failed: {fit.message}")
    return EXIT_OK if fit.passed else EXIT_ANALYTIC


def run_series_check(args, out: Path) -> int:
    check = conditions.series_bound_check(args.D, args.a)
    print(f"sum   = {check.total:.10g}")
    print(f"e^-a  = {check.exp_neg_a:.10g}")
    print(f"ratio = {check.ratio:.10g}")
    report_writer.write_json(out / "series.json", check)
    return EXIT_OK if check.admissible and check.below_majorant else EXIT_ANALYTIC


# subcommand -> (config model, runner, description)
SUBCOMMANDS: Dict[str, tuple] = {
    "check-kernel": (CheckKernelConfig, run_check_kernel, "verify the interpolator conditions for one kernel"),
    "nodes": (NodesConfig, run_nodes, "generate a Kadec node set"),
    "interpolate": (InterpolateConfig, run_interpolate, "interpolate one bandlimited function"),
    "sweep": (SweepConfig, run_sweep, "rate sweep with error measurement and slope fit"),
    "ratios": (RatiosConfig, run_ratios, "regularity ratios of a kernel family over a rate grid"),
    "series-check": (None, run_series_check, "direct check of the dyadic series bound"),
}


def _epilog(model: Optional[Type[BaseModel]]) -> str:
    if model is None:
        return ""
    return "config keys:\n" + "\n".join(describe_fields(model))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bandrec", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, (model, _, description) in SUBCOMMANDS.items():
        p = sub.add_parser(name, help=description, description=description, epilog=_epilog(model),
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        if model is not None:
            p.add_argument("--config", required=True, help="JSON config file")
            p.add_argument("--seed", type=int, default=None, help="override every seed in the config")
        else:
            p.add_argument("--D", type=float, required=True, help="series base D > 1")
            p.add_argument("--a", type=float, required=True, help="decay parameter a")
        p.add_argument("--out", default=None, help="output directory (default: BANDREC_OUTPUT_DIR)")
        p.add_argument("--quiet", action="store_true", help="only report errors")
    return parser


@contextmanager
def staged_output(root: Path, name: str):
    """Yield a .partial directory; on exit it becomes `name`, or `name`.failed when the run failed"""
    root.mkdir(parents=True, exist_ok=True)
    final, partial, failed = root / name, root / f"{name}.partial", root / f"{name}.failed"
    if partial.exists():
        shutil.rmtree(partial)
    partial.mkdir()
    outcome = {"ok": False}
    try:
        yield partial, outcome
    finally:
        target = final if outcome["ok"] else failed
        if target.exists():
            shutil.rmtree(target)
        partial.rename(target)


def _digest(payload: str) -> str:
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


def dispatch(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    if args.quiet:
        set_quiet(True)

    model, runner, _ = SUBCOMMANDS[args.subcommand]
    root = Path(args.out or get_config().OUTPUT_DIR)
    try:
        if model is None:
            payload, target = json.dumps({"D": args.D, "a": args.a}, sort_keys=True), args
        else:
            target = load_config(args.config, model, seed=args.seed)
            payload = target.model_dump_json()
        with staged_output(root, f"{args.subcommand}-{_digest(payload)}") as (out, outcome):
            console.info(f"{args.subcommand} -> {out}")
            status = runner(target, out)
            outcome["ok"] = status == EXIT_OK
        return status
    except (NumericalError, ArithmeticError) as e:
        console.error(f"numerical failure: {e}")
        return EXIT_NUMERICAL
    except (BandrecError, ValueError) as e:
        console.error(str(e))
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
