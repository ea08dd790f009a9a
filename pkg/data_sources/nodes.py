"""
Riesz-basis node sequences
Kadec-perturbed lattices (pi/h)(j + eps_j), |eps_j| <= L < 1/4, and their tensor products
"""
import csv
import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import pdist

from src.errors import NodeError

KADEC_LIMIT = 0.25


@dataclass(frozen=True)
class AxisGenerator:
    """How one axis of a node set was generated"""
    h: float
    jmin: int
    jmax: int
    L: float
    seed: int
    generator: str = "kadec"

    def to_dict(self) -> dict:
        return {"generator": self.generator, "h": self.h, "jmin": self.jmin,
                "jmax": self.jmax, "L": self.L, "seed": self.seed}


@dataclass(frozen=True, eq=False)
class NodeSet:
    points: np.ndarray
    axes: Tuple[AxisGenerator, ...]
    separation: float

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def hull(self) -> Tuple[np.ndarray, np.ndarray]:
        """Axis-aligned bounding box of the nodes"""
        return self.points.min(axis=0), self.points.max(axis=0)

    def diameter(self) -> float:
        lo, hi = self.hull()
        return float(np.linalg.norm(hi - lo))

    def to_csv(self, path) -> Path:
        path = Path(path)
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["index"] + [f"x{k + 1}" for k in range(self.dim)])
            for i, point in enumerate(self.points):
                writer.writerow([i] + [format(v, ".17g") for v in point])
        return path


def _freeze(points: np.ndarray) -> np.ndarray:
    points = np.ascontiguousarray(points, dtype=float)
    points.setflags(write=False)
    return points


def separation(nodes) -> float:
    """Exact minimum pairwise Euclidean distance"""
    points = nodes.points if isinstance(nodes, NodeSet) else np.asarray(nodes, dtype=float)
    if points.ndim == 1:
        points = points[:, np.newaxis]
    if points.shape[0] < 2:
        raise NodeError("Separation needs at least two nodes")
    if points.shape[1] == 1:
        return float(np.min(np.diff(np.sort(points[:, 0]))))
    return float(np.min(pdist(points)))


def kadec_1d(h: float, j_range: Tuple[int, int], L: float, seed: int) -> NodeSet:
    """Nodes x_j = (pi/h)(j + eps_j) for j in [jmin, jmax], eps_j uniform on [-L, L]"""
    if not h > 0:
        raise NodeError(f"Band half-width h must be positive, got {h!r}")
    if not 0 <= L < KADEC_LIMIT:
        raise NodeError(f"Kadec bound L must lie in [0, 1/4), got {L!r}")
    jmin, jmax = int(j_range[0]), int(j_range[1])
    if jmax < jmin:
        raise NodeError(f"Empty index range [{jmin}, {jmax}]")

    j = np.arange(jmin, jmax + 1, dtype=float)
    rng = np.random.default_rng(seed)
    eps = rng.uniform(-L, L, size=j.size) if L > 0 else np.zeros(j.size)
    points = (math.pi / h) * (j + eps)

    axis = AxisGenerator(float(h), jmin, jmax, float(L), int(seed))
    q = separation(points) if points.size > 1 else math.inf
    if q <= 0:
        raise NodeError("Generated nodes are not distinct")
    return NodeSet(_freeze(points[:, np.newaxis]), (axis,), q)


def tensor(axes: Sequence[NodeSet]) -> NodeSet:
    """Cartesian product of one-dimensional node sets, first axis varying slowest"""
    if not axes:
        raise NodeError("Tensor product needs at least one axis")
    for k, axis in enumerate(axes):
        if axis.dim != 1:
            raise NodeError(f"Axis {k} is {axis.dim}-dimensional; tensor() takes 1D node sets")
        if len(axis) == 0:
            raise NodeError(f"Axis {k} is empty")
    coordinates = [axis.points[:, 0] for axis in axes]
    points = np.array(list(itertools.product(*coordinates)), dtype=float)
    generators = tuple(g for axis in axes for g in axis.axes)
    q = separation(points) if len(points) > 1 else math.inf
    return NodeSet(_freeze(points), generators, q)


def from_points(points, axes: Optional[Sequence[AxisGenerator]] = None) -> NodeSet:
    """Wrap explicit coordinates (shape (N,) or (N, d)) as a validated node set"""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, np.newaxis]
    q = separation(points) if len(points) > 1 else math.inf
    if q <= 0:
        raise NodeError("Node set contains duplicate points")
    return NodeSet(_freeze(points), tuple(axes or ()), q)


def union(node_sets: Sequence[NodeSet]) -> np.ndarray:
    """Stacked coordinates of several node sets (duplicates kept)"""
    return np.vstack([n.points for n in node_sets])


def _axis_from_config(data: dict) -> NodeSet:
    generator = data.get("generator", "kadec")
    if generator != "kadec":
        raise NodeError(f"Unknown node generator {generator!r}")
    try:
        return kadec_1d(float(data["h"]), (int(data["jmin"]), int(data["jmax"])),
                        float(data.get("L", 0.0)), int(data.get("seed", 0)))
    except KeyError as e:
        raise NodeError(f"Node generator config is missing {e.args[0]!r}")


def from_config(data: dict) -> NodeSet:
    """Build nodes from {"generator", "h", "jmin", "jmax", "L", "seed"} or {"axes": [...]}"""
    data = {k: v for k, v in data.items() if v is not None}
    axes = data.pop("axes", None)
    if axes:
        # top-level keys act as defaults for every axis
        merged = [{**data, **{k: v for k, v in axis.items() if v is not None}} for axis in axes]
        return tensor([_axis_from_config(axis) for axis in merged])
    return _axis_from_config(data)
