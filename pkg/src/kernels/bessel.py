"""
Modified Bessel function of the second kind
K_g(r) = integral over t in (0, inf) of exp(-r cosh t) cosh(g t), by panel-wise adaptive quadrature
"""
import math
from typing import NamedTuple, Optional

from scipy import special

from src.errors import QuadratureError
from src.quadrature import checked_quad

TAIL_RATIO = 1e-18
MAX_T = 800.0


def bessel_k(order: float, r: float) -> float:
    """K_order(r) for r > 0; symmetric in the order"""
    if not r > 0:
        raise ValueError(f"bessel_k needs r > 0, got {r!r}")
    g = abs(float(order))
    r = float(r)

    def integrand(t: float) -> float:
        e = -r * math.cosh(t)
        return 0.5 * (math.exp(g * t + e) + math.exp(e - g * t))

    total = 0.0
    a = 0.0
    while True:
        b = a + 1.0
        total += checked_quad(integrand, a, b, what=f"K_{g:g}({r:g}) panel [{a:g}, {b:g}]")
        tail = integrand(b)
        if tail == 0.0 or tail < TAIL_RATIO * total:
            return total
        a = b
        if a > MAX_T:
            raise QuadratureError(f"K_{g:g}({r:g}) integrand still significant at t={a:g}", estimate=tail)


def small_argument_constant(order: float) -> float:
    """c with K_g(r) ~ c * r**(-g) as r -> 0, for g > 0"""
    g = abs(float(order))
    if g == 0:
        raise ValueError("K_0 diverges logarithmically; no power-law constant")
    return 2.0 ** (g - 1.0) * float(special.gamma(g))


class BesselBounds(NamedTuple):
    lower: Optional[float]
    upper_exponential: float
    upper_small_argument: Optional[float]

    @property
    def upper(self) -> float:
        if self.upper_small_argument is None:
            return self.upper_exponential
        return min(self.upper_exponential, self.upper_small_argument)


def bessel_bounds(order: float, r: float) -> BesselBounds:
    """Two-sided estimates of K_order(r) used for the inverse multiquadric analysis.

    lower: sqrt(pi/2) r^-1/2 e^-r when |order| >= 1/2; for smaller orders and r > 1
    the constant sqrt(pi) 3^(g-1/2) / (2^(g+1) Gamma(g+1/2)) replaces sqrt(pi/2).
    upper_exponential: sqrt(2 pi) r^-1/2 e^-r e^(g^2 / 2r).
    upper_small_argument: 2^(g-1) Gamma(g) r^-g, for g > 0.
    """
    if not r > 0:
        raise ValueError(f"bessel_bounds needs r > 0, got {r!r}")
    g = abs(float(order))
    base = r ** -0.5 * math.exp(-r)

    lower = None
    if g >= 0.5:
        lower = math.sqrt(math.pi / 2.0) * base
    elif r > 1.0:
        c = math.sqrt(math.pi) * 3.0 ** (g - 0.5) / (2.0 ** (g + 1.0) * float(special.gamma(g + 0.5)))
        lower = c * base

    upper_exp = math.sqrt(2.0 * math.pi) * base * math.exp(g * g / (2.0 * r))
    upper_small = small_argument_constant(g) * r ** (-g) if g > 0 else None
    return BesselBounds(lower, upper_exp, upper_small)
