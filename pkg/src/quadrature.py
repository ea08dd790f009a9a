"""
Quadrature helpers
Composite Gauss-Legendre panel rules and adaptive QUADPACK integration that
fails loudly instead of returning an unconverged value
"""
import warnings
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from src.config import get_config
from src.errors import QuadratureError

config = get_config()


@lru_cache(maxsize=64)
def _legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(a: float, b: float, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [a, b]"""
    x, w = _legendre(order)
    half = 0.5 * (b - a)
    return half * x + 0.5 * (a + b), half * w


def panel_rule(edges: Sequence[float], order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule with one `order`-point panel per interval of `edges`"""
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(a, b, order)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def uniform_panel_rule(a: float, b: float, order: int, panels: int) -> Tuple[np.ndarray, np.ndarray]:
    return panel_rule(np.linspace(a, b, panels + 1), order)


def checked_quad(
    func: Callable[[float], float],
    a: float,
    b: float,
    *,
    weight: Optional[str] = None,
    wvar: Optional[float] = None,
    points: Optional[Sequence[float]] = None,
    limit: int = 500,
    what: str = "integral",
) -> float:
    """scipy.integrate.quad with the package tolerances; raises QuadratureError
    when the returned error estimate exceeds the failure tolerance"""
    kwargs = {"epsabs": config.QUAD_EPSABS, "epsrel": config.QUAD_EPSREL, "limit": limit}
    if weight is not None:
        kwargs["weight"] = weight
        kwargs["wvar"] = wvar
        kwargs["maxp1"] = 400
        if np.isinf(b):
            # QAWF: epsrel is ignored, convergence is driven by epsabs over limlst cycles
            kwargs["limlst"] = 200
    elif points is not None and not np.isinf(b):
        kwargs["points"] = points

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, estimate = integrate.quad(func, a, b, **kwargs)

    if not np.isfinite(value):
        raise QuadratureError(f"{what} is not finite", estimate=estimate)
    if estimate > config.QUAD_FAILURE_TOL * max(1.0, abs(value)):
        raise QuadratureError(
            f"{what} did not converge (error estimate {estimate:.3e})", estimate=estimate
        )
    return float(value)
