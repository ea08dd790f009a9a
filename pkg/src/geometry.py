"""
Symmetric Convex Bodies
Balls and axis-aligned boxes Z with delta*B2 inside Z inside B2
"""
import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from src.errors import GeometryError

BodyKind = Literal["ball", "box"]
MEMBERSHIP_ULPS = 4


class BodyMetrics(NamedTuple):
    inscribed_radius: float
    circumscribed_radius: float
    annulus_min_norm: float


@dataclass(frozen=True)
class ConvexBody:
    kind: BodyKind
    dim: int
    size: float

    def __post_init__(self):
        if self.kind not in ("ball", "box"):
            raise GeometryError(f"Unknown body kind {self.kind!r} (expected 'ball' or 'box')")
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise GeometryError(f"Body dimension must be a positive integer, got {self.dim!r}")
        if not self.size > 0:
            raise GeometryError(f"Body size must be positive, got {self.size!r}")

    @property
    def inscribed_radius(self) -> float:
        return float(self.size)

    @property
    def circumscribed_radius(self) -> float:
        if self.kind == "ball":
            return float(self.size)
        return float(self.size) * math.sqrt(self.dim)

    @property
    def is_limiting_case(self) -> bool:
        """Z = B2 itself, admitted for delta = beta = 1"""
        return self.kind == "ball" and self.size == 1.0

    def check_admissible(self) -> None:
        """Raise unless delta*B2 inside Z inside B2 with delta < 1 (or Z = B2)"""
        if self.circumscribed_radius > 1.0 + 1e-15:
            raise GeometryError(
                f"Body is not contained in the unit ball (circumscribed radius {self.circumscribed_radius:.6g})"
            )
        if self.inscribed_radius >= 1.0 and not self.is_limiting_case:
            raise GeometryError("Inscribed radius must be below 1 unless Z is the unit ball")

    def _check_point(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise GeometryError(f"Point of dimension {x.shape[-1]} does not match body dimension {self.dim}")
        return x

    def contains(self, x) -> bool:
        x = self._check_point(np.atleast_1d(x))
        if x.ndim != 1:
            raise GeometryError("contains() takes a single point; use contains_many() for batches")
        return bool(self.contains_many(x[np.newaxis, :])[0])

    def contains_many(self, points) -> np.ndarray:
        points = self._check_point(np.atleast_2d(points))
        # closed bodies: boundary points computed in floating point may overshoot by a few ulps
        bound = self.size * (1.0 + MEMBERSHIP_ULPS * np.finfo(float).eps)
        if self.kind == "ball":
            return np.linalg.norm(points, axis=1) <= bound
        return np.max(np.abs(points), axis=1) <= bound

    def metrics(self) -> BodyMetrics:
        delta = self.inscribed_radius
        return BodyMetrics(delta, self.circumscribed_radius, delta / 2.0)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "dim": int(self.dim), "size": float(self.size)}


def ball(radius: float, dim: int) -> ConvexBody:
    return ConvexBody("ball", dim, float(radius))


def box(half_width: float, dim: int) -> ConvexBody:
    return ConvexBody("box", dim, float(half_width))


def contains(body: ConvexBody, x) -> bool:
    return body.contains(x)


def metrics(body: ConvexBody) -> BodyMetrics:
    return body.metrics()


def from_dict(data: dict) -> ConvexBody:
    """Build a body from its JSON form {"kind", "dim", "size"}"""
    try:
        return ConvexBody(data["kind"], int(data["dim"]), float(data["size"]))
    except KeyError as e:
        raise GeometryError(f"Body description is missing {e.args[0]!r}")
