"""
Radial Fourier transforms in d = 1, 2, 3

A radial function P(|xi|) has the radial inverse transform
    d=1: sqrt(2/pi) * int P(s) cos(rs) ds
    d=2: int s P(s) J0(rs) ds
    d=3: sqrt(2/pi) / r * int s P(s) sin(rs) ds
In d=2 exponentially decaying profiles use the averaged cosine form of J0,
(2/pi) int_0^{pi/2} cos(rs sin t) dt. Algebraically decaying profiles integrate
J0 directly up to rs = HANKEL_TAIL_ARGUMENT and use the large-argument
expansion of J0 beyond it.
The p-exponential kernel reads its spatial values from a RadialTable built once
per (p, alpha, d, radius, size).
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import special
from scipy.interpolate import CubicSpline

from src.kernels.profiles import RadialProfile
from src.quadrature import checked_quad, panel_rule

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
SPHERE_AREA = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}
SUPPORTED_DIMS = (1, 2, 3)

THETA_PANELS = 8
THETA_ORDER = 32
TABLE_INNER_RADIUS = 1e-3
HANKEL_TAIL_ARGUMENT = 200.0


@lru_cache(maxsize=1)
def theta_rule() -> Tuple[np.ndarray, np.ndarray]:
    """256-point rule on [0, pi/2], panels graded geometrically toward 0"""
    edges = [0.0] + [0.5 * math.pi * 2.0 ** (-k) for k in range(THETA_PANELS - 1, -1, -1)]
    nodes, weights = panel_rule(edges, THETA_ORDER)
    return np.sin(nodes), weights


def _check_dim(d: int) -> None:
    if d not in SUPPORTED_DIMS:
        raise ValueError(f"Radial transforms support d in {SUPPORTED_DIMS}, got {d}")


def _oscillatory(profile: RadialProfile, t: float, power: int, weight: str) -> float:
    """int_0^inf s^power P(s) w(t s) ds with w = cos or sin"""
    if power == 0:
        func = profile.scalar
    else:
        func = lambda s: s ** power * profile.scalar(s)  # noqa: E731
    upper = profile.cutoff()
    b = np.inf if upper is None else upper
    if t == 0.0:
        if weight == "sin":
            return 0.0
        return checked_quad(func, 0.0, b, limit=1000, what=f"{profile.rule} moment {power}")
    return checked_quad(
        func, 0.0, b, weight=weight, wvar=t, limit=2000,
        what=f"{profile.rule} {weight}-transform at t={t:g}",
    )


def _j0_expansion(x: float) -> Tuple[float, float]:
    """(P + Q, P - Q) with J0(x) ~ ((P + Q) cos x + (P - Q) sin x) / sqrt(pi x)"""
    p = 1.0 - 9.0 / (128.0 * x * x)
    q = -1.0 / (8.0 * x) + 75.0 / (1024.0 * x ** 3)
    return p + q, p - q


def _hankel_algebraic(profile: RadialProfile, r: float) -> float:
    """int_0^inf s P(s) J0(rs) ds for r > 0 and an algebraically decaying P"""
    split = HANKEL_TAIL_ARGUMENT / r
    edges = np.linspace(0.0, split, int(math.ceil(HANKEL_TAIL_ARGUMENT / math.pi)) + 1)
    head_func = lambda s: s * profile.scalar(s) * float(special.j0(r * s))  # noqa: E731
    head = sum(
        checked_quad(head_func, a, b, limit=200, what=f"{profile.rule} J0-transform at r={r:g}")
        for a, b in zip(edges[:-1], edges[1:])
    )

    def amplitude(s: float, k: int) -> float:
        return s * profile.scalar(s) * _j0_expansion(r * s)[k] / math.sqrt(math.pi * r * s)

    tail = 0.0
    for k, weight in enumerate(("cos", "sin")):
        tail += checked_quad(
            lambda s, k=k: amplitude(s, k), split, np.inf, weight=weight, wvar=r, limit=2000,
            what=f"{profile.rule} J0 tail ({weight}) at r={r:g}",
        )
    return head + tail


def radial_inverse_ft(profile: RadialProfile, d: int, r: float) -> float:
    """d-dimensional inverse Fourier transform of a radial profile, at radius r"""
    _check_dim(d)
    if r < 0:
        raise ValueError(f"Radius must be non-negative, got {r!r}")
    r = float(r)
    if d == 1:
        return SQRT_2_OVER_PI * _oscillatory(profile, r, 0, "cos")
    if d == 3:
        if r == 0.0:
            return SQRT_2_OVER_PI * _oscillatory(profile, 0.0, 2, "cos")
        return SQRT_2_OVER_PI / r * _oscillatory(profile, r, 1, "sin")
    if r == 0.0:
        return _oscillatory(profile, 0.0, 1, "cos")
    if profile.decay == "algebraic":
        return _hankel_algebraic(profile, r)
    sin_theta, weights = theta_rule()
    inner = np.array([_oscillatory(profile, r * st, 1, "cos") for st in sin_theta])
    return float(2.0 / math.pi * np.dot(weights, inner))


def radial_integral(func: Callable[[float], float], d: int, upper: Optional[float] = None) -> float:
    """Integral over R^d of |func(|x|)|, truncated at `upper` when given"""
    _check_dim(d)
    b = np.inf if upper is None else float(upper)
    integrand = lambda s: abs(func(s)) * s ** (d - 1)  # noqa: E731
    return SPHERE_AREA[d] * checked_quad(integrand, 0.0, b, limit=1000, what=f"radial L1 integral (d={d})")


def table_radii(radius: float, size: int) -> np.ndarray:
    return np.concatenate(([0.0], np.geomspace(TABLE_INNER_RADIUS, radius, size - 1)))


@dataclass(frozen=True, eq=False)
class RadialTable:
    radii: np.ndarray
    values: np.ndarray
    spline: CubicSpline

    @property
    def radius(self) -> float:
        return float(self.radii[-1])

    def __call__(self, r):
        return self.spline(r)


def _even_spline(radii: np.ndarray, values: np.ndarray) -> CubicSpline:
    # radial functions are even, so the slope at r = 0 vanishes
    return CubicSpline(radii, values, bc_type=((1, 0.0), "not-a-knot"))


def build_radial_table(profile: RadialProfile, d: int, radius: float, size: int) -> RadialTable:
    _check_dim(d)
    radii = table_radii(radius, size)
    if d == 1:
        values = np.array([SQRT_2_OVER_PI * _oscillatory(profile, r, 0, "cos") for r in radii])
    elif d == 3:
        values = np.empty_like(radii)
        values[0] = SQRT_2_OVER_PI * _oscillatory(profile, 0.0, 2, "cos")
        for k, r in enumerate(radii[1:], start=1):
            values[k] = SQRT_2_OVER_PI / r * _oscillatory(profile, r, 1, "sin")
    else:
        # F(t) = int s P(s) cos(ts) ds on the same knots, then average over the theta rule
        moments = np.array([_oscillatory(profile, t, 1, "cos") for t in radii])
        moment_spline = _even_spline(radii, moments)
        sin_theta, weights = theta_rule()
        values = 2.0 / math.pi * moment_spline(np.outer(radii, sin_theta)) @ weights
    values.setflags(write=False)
    radii.setflags(write=False)
    return RadialTable(radii, values, _even_spline(radii, values))
