"""
Recovery Experiments
Sweeps over the rate parameter: interpolate one bandlimited function on a fixed node
set for each alpha (or c), measure sup and L2 errors on the central window of the node
hull, and fit the observed exponential decay rate.
"""
import asyncio
import csv
import json
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import scipy

from data_sources import bandlimited, nodes as node_sets
from src.conditions import J_MAX, check_interpolator, r2_ratio, theoretical_exponent
from src.config import get_config
from src.console import Console
from src.errors import BandrecError, ReportParseError
from src.geometry import ConvexBody, from_dict as body_from_dict
from src.interpolation import AveragedApproximant, interpolate
from src.kernels import make_kernel
from src.models import FitResult, SweepReport, SweepRow
from src.quadrature import gauss_legendre
from src.run_configs import SweepConfig

config = get_config()
console = Console("experiments")

SUP_GRID = {1: 2048, 2: 128}
SUP_REFERENCE_WINDOW = 0.5
L2_ORDER = {1: 200, 2: 64}
TABLE_MARGIN = 1.05
ERROR_FLOOR = 1e-10
FLOOR_SCALE = 100.0
SLOPE_TOLERANCE = 0.05
MIN_FIT_ROWS = 3
METADATA_PREFIX = "# metadata: "
COLUMNS = ["alpha", "sup_error", "l2_error", "node_residual", "jitter",
           "condition_estimate", "ratio_r2", "status", "message"]
FLOAT_COLUMNS = COLUMNS[:7]


def evaluation_window(nodes: node_sets.NodeSet, fraction: float) -> Tuple[np.ndarray, np.ndarray]:
    """Central sub-box of the node hull covering `fraction` of each side"""
    lo, hi = nodes.hull()
    center, half = 0.5 * (lo + hi), 0.5 * fraction * (hi - lo)
    return center - half, center + half


def _grid(axes: List[np.ndarray]) -> np.ndarray:
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def sup_grid(nodes: node_sets.NodeSet, fraction: float, n: int) -> np.ndarray:
    """Uniform grid on the evaluation window with `n` points per axis at the reference
    fraction. Every window is cut from the same lattice of the node hull, so a wider
    window holds every point of a narrower one."""
    lo, hi = nodes.hull()
    center, width = 0.5 * (lo + hi), hi - lo
    shift = 0.5 * (n - 1)
    axes = []
    for c, w in zip(center, width):
        step = SUP_REFERENCE_WINDOW * w / (n - 1)
        reach = 0.5 * fraction * w / step
        j = np.arange(math.ceil(shift - reach - 1e-9), math.floor(shift + reach + 1e-9) + 1)
        axes.append(c + (j - shift) * step)
    return _grid(axes)


def l2_rule(lo: np.ndarray, hi: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
    rules = [gauss_legendre(a, b, order) for a, b in zip(lo, hi)]
    points = _grid([x for x, _ in rules])
    weights = _grid([w for _, w in rules]).prod(axis=1)
    return points, weights


def interpolator_problem(kernel, body: ConvexBody) -> Optional[str]:
    """Why `kernel` is not an interpolator for `body`, or None when every condition holds"""
    report = check_interpolator(kernel, body, J_MAX, "dyadic")
    if not report.i1_passed:
        return "kernel or spectrum is not integrable"
    if not report.i2_passed:
        return "spectrum vanishes on Z"
    if not report.i3_passed:
        return f"annulus sums did not converge (tail ratio {report.tail_ratio:.3e})"
    return None


class _SweepContext:
    """Everything shared by the rows of one sweep, computed once"""

    def __init__(self, sweep: SweepConfig):
        self.sweep = sweep
        self.body = body_from_dict(sweep.body.model_dump())
        self.dim = self.body.dim
        self.family = sweep.family
        self.f = bandlimited.from_config(sweep.function.model_dump(), beta=sweep.beta, dim=self.dim)
        self.node_sets = [node_sets.from_config(sweep.nodes.model_dump())]
        self.node_sets += [node_sets.from_config(spec.model_dump()) for spec in sweep.averaged_with]
        primary = self.node_sets[0]
        self.lo, self.hi = evaluation_window(primary, sweep.window)
        self.grid = sup_grid(primary, sweep.window, sweep.sup_grid or SUP_GRID[self.dim])
        self.l2_points, self.l2_weights = l2_rule(self.lo, self.hi, sweep.l2_order or L2_ORDER[self.dim])
        self.f_grid = self.f.values(self.grid)
        self.f_l2 = self.f.values(self.l2_points)
        diameter = max(n.diameter() for n in self.node_sets)
        self.table_radius = max(config.PEXP_TABLE_RADIUS, TABLE_MARGIN * diameter)

    def kernel(self, rate: float):
        return make_kernel(self.family.family, self.dim, rate, nu=self.family.nu, p=self.family.p,
                           table_radius=self.table_radius)

    def run_row(self, rate: float) -> SweepRow:
        ratio = math.nan
        try:
            kernel = self.kernel(rate)
            ratio = r2_ratio(kernel, self.body, self.sweep.beta)
            problem = interpolator_problem(kernel, self.body)
            if problem:
                return SweepRow(rate, math.nan, math.nan, math.nan, math.nan, math.nan, ratio,
                                status="failed", message=f"not an interpolator: {problem}")
            approximant = AveragedApproximant([interpolate(kernel, n, self.f) for n in self.node_sets])
        except (BandrecError, ArithmeticError) as e:
            console.error(f"rate {rate:g} failed: {e}")
            return SweepRow(rate, math.nan, math.nan, math.nan, math.nan,
                            getattr(e, "condition_estimate", math.nan), ratio,
                            status="failed", message=str(e))
        sup_error = float(np.max(np.abs(approximant.values(self.grid) - self.f_grid)))
        diff = approximant.values(self.l2_points) - self.f_l2
        l2_error = float(math.sqrt(np.dot(self.l2_weights, diff * diff)))
        console.success(f"rate {rate:g}: sup error {sup_error:.3e}, L2 error {l2_error:.3e}")
        return SweepRow(rate, sup_error, l2_error, approximant.node_residual, approximant.jitter,
                        approximant.condition_estimate, ratio)

    def metadata(self) -> dict:
        sweep = self.sweep
        exponent = theoretical_exponent(self.family.family, self.body.inscribed_radius, sweep.beta, self.family.p)
        return {
            "config": sweep.model_dump(),
            "family": self.family.family,
            "nu": self.family.nu,
            "p": self.family.p,
            "dim": self.dim,
            "delta": self.body.inscribed_radius,
            "beta": sweep.beta,
            "theoretical_exponent": exponent.exponent,
            "feasible": exponent.feasible,
            "rate_parameter": exponent.rate_parameter,
            "window": [self.lo.tolist(), self.hi.tolist()],
            "nodes": [len(n) for n in self.node_sets],
            "f_l2_norm": self.f.l2_norm,
            "versions": {"numpy": np.__version__, "scipy": scipy.__version__},
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }


async def run_sweep_async(sweep: SweepConfig, max_workers: Optional[int] = None) -> SweepReport:
    context = _SweepContext(sweep)
    console.info(f"sweeping {sweep.family.family} over {len(sweep.alpha_grid)} rates "
                 f"({sum(len(n) for n in context.node_sets)} nodes, d={context.dim})")
    semaphore = asyncio.Semaphore(max_workers or config.MAX_WORKERS)

    async def row(rate: float) -> SweepRow:
        async with semaphore:
            return await asyncio.to_thread(context.run_row, rate)

    rows = await asyncio.gather(*(row(rate) for rate in sweep.alpha_grid))
    return SweepReport(list(rows), context.metadata())


def run_sweep(sweep: SweepConfig) -> SweepReport:
    return asyncio.run(run_sweep_async(sweep))


def error_floor(condition_estimate: float) -> float:
    if not math.isfinite(condition_estimate):
        condition_estimate = 1.0
    return max(ERROR_FLOOR, FLOOR_SCALE * condition_estimate * np.finfo(float).eps / 2.0)


def fit_rate(report: SweepReport, exponent: Optional[float] = None) -> FitResult:
    """Least-squares slope of ln(sup error) against the rate parameter, above the error floor"""
    meta = report.metadata
    feasible = bool(meta.get("feasible", True))
    if exponent is None:
        exponent = float(meta["theoretical_exponent"])
    rate_exempt = meta.get("family") == "gaussian" and int(meta.get("dim", 1)) >= 2

    usable = [row for row in report.ok_rows()
              if math.isfinite(row.sup_error) and row.sup_error > error_floor(row.condition_estimate)]
    alphas = [row.alpha for row in usable]
    if len(usable) < MIN_FIT_ROWS:
        message = f"only {len(usable)} rows above the error floor; need {MIN_FIT_ROWS}"
        console.warn(message)
        return FitResult(None, None, alphas, exponent, feasible, rate_exempt,
                         passed=rate_exempt, status="insufficient_rows", message=message)

    slope, intercept = np.polyfit(alphas, np.log([row.sup_error for row in usable]), 1)
    slope, intercept = float(slope), float(intercept)
    within = slope <= exponent + SLOPE_TOLERANCE
    message = f"slope {slope:.4f} vs theoretical {exponent:.4f}"
    if rate_exempt:
        message += " (rate-exempt: delta outside the admissible range)"
    return FitResult(slope, intercept, alphas, exponent, feasible, rate_exempt,
                     passed=within or rate_exempt, status="fitted", message=message)


def write_report(report: SweepReport, path) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as f:
        f.write(METADATA_PREFIX + json.dumps(report.metadata, sort_keys=True, default=str) + "\n")
        writer = csv.writer(f)
        writer.writerow(COLUMNS)
        for row in report.rows:
            writer.writerow([format(getattr(row, c), ".17g") for c in FLOAT_COLUMNS] + [row.status, row.message])
    return path


def read_report(path) -> SweepReport:
    path = Path(path)
    with open(path, newline="") as f:
        lines = f.read().splitlines()
    metadata = {}
    if lines and lines[0].startswith(METADATA_PREFIX):
        try:
            metadata = json.loads(lines[0][len(METADATA_PREFIX):])
        except json.JSONDecodeError as e:
            raise ReportParseError(f"{path}: unreadable metadata line: {e}", row=0)
        lines = lines[1:]
    reader = csv.DictReader(lines)
    header = reader.fieldnames or []
    for column in COLUMNS:
        if column not in header:
            raise ReportParseError(f"{path}: missing column {column!r}", column=column)
    rows = []
    for index, record in enumerate(reader, start=1):
        values = {}
        for column in FLOAT_COLUMNS:
            try:
                values[column] = float(record[column])
            except (TypeError, ValueError):
                raise ReportParseError(f"{path}: row {index}, column {column!r}: {record[column]!r} is not a number",
                                       row=index, column=column)
        rows.append(SweepRow(status=record["status"], message=record["message"] or "", **values))
    return SweepReport(rows, metadata)
