"""
Kernel Interpolation
Collocation systems A = (phi(x_m - x_n)), their Cholesky solve, the interpolant
sum_j a_j phi(. - x_j) and the average of interpolants over several node sets.
"""
import asyncio
import csv
import math
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
from scipy import linalg
from scipy.spatial.distance import cdist, pdist, squareform

from data_sources.nodes import NodeSet, from_points
from src.config import get_config
from src.console import Console
from src.errors import (
    AveragedSolveError,
    BandrecError,
    FactorizationError,
    GeometryError,
    NodeError,
    ResidualError,
)
from src.kernels import Kernel
from src.quadrature import uniform_panel_rule

config = get_config()
console = Console("interpolation")

JITTER_FACTOR = 1e-12
RESIDUAL_TOL = 1e-8
EVAL_CHUNK = 4096


class CollocationSystem:
    """Dense collocation matrix of one kernel on one node set"""

    def __init__(self, kernel: Kernel, nodes: NodeSet, matrix: np.ndarray):
        self.kernel = kernel
        self.nodes = nodes
        self.matrix = matrix
        self.jitter = 0.0
        self.condition_estimate = math.nan
        self._factor = None

    @property
    def size(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def factorized(self) -> bool:
        return self._factor is not None

    def factorize(self) -> "CollocationSystem":
        if self._factor is not None:
            return self
        try:
            self._factor = linalg.cho_factor(self.matrix, lower=True)
        except linalg.LinAlgError:
            jitter = JITTER_FACTOR * float(np.trace(self.matrix)) / self.size
            console.warn(f"Cholesky failed for N={self.size}; retrying with diagonal jitter {jitter:.3e}")
            try:
                self._factor = linalg.cho_factor(self.matrix + jitter * np.eye(self.size), lower=True)
            except linalg.LinAlgError as e:
                raise FactorizationError(
                    f"Collocation matrix (N={self.size}) is numerically indefinite even with jitter {jitter:.3e}; "
                    "nodes too close or kernel too flat"
                ) from e
            self.jitter = jitter
        pivots = np.abs(np.diag(self._factor[0]))
        self.condition_estimate = float((pivots.max() / pivots.min()) ** 2)
        return self

    def solve(self, samples) -> "Interpolant":
        samples = np.asarray(samples, dtype=float).ravel()
        if samples.shape[0] != self.size:
            raise ValueError(f"Expected {self.size} samples, got {samples.shape[0]}")
        self.factorize()
        coefficients = linalg.cho_solve(self._factor, samples)
        residual = float(np.max(np.abs(self.matrix @ coefficients - samples))) if self.size else 0.0
        tolerance = RESIDUAL_TOL * (1.0 + float(np.max(np.abs(samples), initial=0.0)))
        if residual > tolerance:
            raise ResidualError(
                f"Node residual {residual:.3e} exceeds {tolerance:.3e} "
                f"(condition estimate {self.condition_estimate:.3e})",
                residual=residual,
                condition_estimate=self.condition_estimate,
            )
        coefficients.setflags(write=False)
        return Interpolant(self.kernel, self.nodes, coefficients, samples, residual,
                           self.jitter, self.condition_estimate)


class Interpolant:
    """I f(x) = sum_j a_j phi(x - x_j)"""

    def __init__(
        self,
        kernel: Kernel,
        nodes: NodeSet,
        coefficients: np.ndarray,
        samples: np.ndarray,
        node_residual: float = 0.0,
        jitter: float = 0.0,
        condition_estimate: float = math.nan,
    ):
        self.kernel = kernel
        self.nodes = nodes
        self.coefficients = coefficients
        self.samples = samples
        self.node_residual = node_residual
        self.jitter = jitter
        self.condition_estimate = condition_estimate

    @property
    def dim(self) -> int:
        return self.nodes.dim

    def values(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        if self.dim == 1 and points.ndim == 1:
            points = points[:, np.newaxis]
        points = np.atleast_2d(points)
        if points.shape[1] != self.dim:
            raise GeometryError(f"Points of dimension {points.shape[1]} do not match interpolant dimension {self.dim}")
        out = np.empty(points.shape[0])
        for start in range(0, points.shape[0], EVAL_CHUNK):
            block = points[start:start + EVAL_CHUNK]
            radial = np.asarray(self.kernel.spatial_radial(cdist(block, self.nodes.points)))
            out[start:start + EVAL_CHUNK] = radial @ self.coefficients
        return out

    def eval(self, x) -> float:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if x.shape != (self.dim,):
            raise GeometryError(f"Point of shape {x.shape} does not match interpolant dimension {self.dim}")
        return float(self.values(x[np.newaxis, :])[0])

    def __call__(self, points):
        return self.values(points)

    def to_csv(self, path) -> Path:
        path = Path(path)
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["index"] + [f"x{k + 1}" for k in range(self.dim)] + ["coefficient", "sample"])
            for i, (point, a, s) in enumerate(zip(self.nodes.points, self.coefficients, self.samples)):
                writer.writerow([i] + [format(v, ".17g") for v in point] + [format(a, ".17g"), format(s, ".17g")])
        return path


class AveragedApproximant:
    """Pointwise mean of interpolants built on different node sets; not an interpolant itself"""

    def __init__(self, interpolants: Sequence[Interpolant]):
        if not interpolants:
            raise ValueError("Averaged approximant needs at least one interpolant")
        self.interpolants = list(interpolants)

    @property
    def dim(self) -> int:
        return self.interpolants[0].dim

    @property
    def node_residual(self) -> float:
        return max(i.node_residual for i in self.interpolants)

    @property
    def jitter(self) -> float:
        return max(i.jitter for i in self.interpolants)

    @property
    def condition_estimate(self) -> float:
        return max(i.condition_estimate for i in self.interpolants)

    def values(self, points) -> np.ndarray:
        return np.mean([i.values(points) for i in self.interpolants], axis=0)

    def eval(self, x) -> float:
        return float(np.mean([i.eval(x) for i in self.interpolants]))

    def __call__(self, points):
        return self.values(points)


def assemble(kernel: Kernel, nodes) -> CollocationSystem:
    if not isinstance(nodes, NodeSet):
        nodes = from_points(nodes)
    if nodes.dim != kernel.dim:
        raise GeometryError(f"Nodes of dimension {nodes.dim} do not match kernel dimension {kernel.dim}")
    if len(nodes) > 1 and not nodes.separation > 0:
        raise NodeError("Collocation needs distinct nodes")
    distances = squareform(pdist(nodes.points)) if len(nodes) > 1 else np.zeros((1, 1))
    matrix = np.asarray(kernel.spatial_radial(distances), dtype=float)
    return CollocationSystem(kernel, nodes, matrix)


def solve(system: CollocationSystem, samples) -> Interpolant:
    return system.solve(samples)


def evaluate(interp, x) -> float:
    return interp.eval(x)


def interpolate(kernel: Kernel, nodes: NodeSet, f) -> Interpolant:
    """Assemble, sample f at the nodes and solve"""
    return assemble(kernel, nodes).solve(f.values(nodes.points))


async def averaged_async(kernel: Kernel, node_sets: Sequence[NodeSet], f,
                         max_workers: Optional[int] = None) -> AveragedApproximant:
    if not node_sets:
        raise ValueError("Averaged approximant needs at least one node set")
    dims = {n.dim for n in node_sets}
    if len(dims) != 1:
        raise GeometryError(f"Node sets have mixed dimensions {sorted(dims)}")
    semaphore = asyncio.Semaphore(max_workers or config.MAX_WORKERS)

    async def solve_one(index: int, nodes: NodeSet) -> Interpolant:
        async with semaphore:
            try:
                return await asyncio.to_thread(interpolate, kernel, nodes, f)
            except BandrecError as e:
                raise AveragedSolveError(f"Node set {index} failed: {e}", index=index) from e

    interpolants: List[Interpolant] = await asyncio.gather(
        *(solve_one(k, nodes) for k, nodes in enumerate(node_sets))
    )
    return AveragedApproximant(interpolants)


def averaged(kernel: Kernel, node_sets: Sequence[NodeSet], f) -> AveragedApproximant:
    return asyncio.run(averaged_async(kernel, node_sets, f))


def spectral_quadratic_form(kernel: Kernel, nodes: NodeSet, coefficients, order: int = 64) -> float:
    """a^T A a written on the Fourier side (d = 1):
    (2 pi)^(-1/2) / fourier_scale * int phi_hat(xi) |sum_n a_n exp(i x_n xi)|^2 dxi
    """
    if kernel.dim != 1 or nodes.dim != 1:
        raise GeometryError("The Fourier-side quadratic form is implemented for d = 1")
    a = np.asarray(coefficients, dtype=float)
    x = nodes.points[:, 0]
    cutoff = kernel.spectral_profile().cutoff()
    if cutoff is None:
        raise ValueError(f"{kernel!r} has no finite spectral cutoff")
    span = float(x.max() - x.min()) if len(x) > 1 else 0.0
    # at most a few oscillation periods per panel
    panels = max(8, int(math.ceil(cutoff * span / (4.0 * math.pi))))
    xi, w = uniform_panel_rule(0.0, cutoff, order, panels)
    phase = np.outer(xi, x)
    power = (np.cos(phase) @ a) ** 2 + (np.sin(phase) @ a) ** 2
    spectrum = np.asarray(kernel.spectral_radial(xi), dtype=float)
    integral = 2.0 * float(np.dot(w, spectrum * power))
    return integral / (math.sqrt(2.0 * math.pi) * kernel.fourier_scale)
