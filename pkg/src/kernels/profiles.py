"""
Radial profiles: scalar functions of the radius s >= 0 described by a rule name and parameters
"""
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy import special

from src.kernels.bessel import bessel_k, small_argument_constant

CUTOFF_RATIO = 1e-20


def _exp_power(s: float, scale: float, alpha: float, p: float) -> float:
    return scale * math.exp(-alpha * s ** p)


def _inverse_power(s: float, c: float, nu: float) -> float:
    return (s * s + c * c) ** (-nu)


def _imq_spectrum(s: float, nu: float, c: float, dim: float) -> float:
    """Fourier transform of (|x|^2 + c^2)^-nu at radius s; the s = 0 value is the radial limit"""
    g = nu - dim / 2.0
    front = 2.0 ** (1.0 - nu) / float(special.gamma(nu))
    if s == 0.0:
        return front * small_argument_constant(g) * c ** (-2.0 * g)
    return front * (s / c) ** g * bessel_k(g, c * s)


# rule -> (scalar function, parameter names, decay kind)
RULES: Dict[str, Tuple[Callable[..., float], Tuple[str, ...], str]] = {
    "exp_power": (_exp_power, ("scale", "alpha", "p"), "exponential"),
    "inverse_power": (_inverse_power, ("c", "nu"), "algebraic"),
    "imq_spectrum": (_imq_spectrum, ("nu", "c", "dim"), "exponential"),
}


@dataclass(frozen=True)
class RadialProfile:
    rule: str
    params: Tuple[float, ...]

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"Unknown radial rule {self.rule!r}; known: {sorted(RULES)}")
        names = RULES[self.rule][1]
        if len(self.params) != len(names):
            raise ValueError(f"Rule {self.rule!r} takes parameters {names}, got {self.params}")

    @property
    def decay(self) -> str:
        return RULES[self.rule][2]

    def scalar(self, s: float) -> float:
        return RULES[self.rule][0](float(s), *self.params)

    def __call__(self, s):
        s_arr = np.asarray(s, dtype=float)
        if self.rule == "exp_power":
            scale, alpha, p = self.params
            out = scale * np.exp(-alpha * s_arr ** p)
        elif self.rule == "inverse_power":
            c, nu = self.params
            out = (s_arr * s_arr + c * c) ** (-nu)
        else:
            flat = [self.scalar(v) for v in s_arr.ravel()]
            out = np.asarray(flat, dtype=float).reshape(s_arr.shape)
        return out if out.ndim else float(out)

    def cutoff(self, ratio: float = CUTOFF_RATIO) -> Optional[float]:
        """Radius beyond which the profile stays below ratio * profile(0); None for algebraic decay"""
        if self.decay != "exponential":
            return None
        if self.rule == "exp_power":
            _, alpha, p = self.params
            return (math.log(1.0 / ratio) / alpha) ** (1.0 / p)
        peak = self.scalar(0.0)
        s = 1.0
        while self.scalar(s) > ratio * peak:
            s *= 2.0
        return s
