"""
Bandlimited test functions in PW_{beta B2}
Each function is held as a radial spectrum on the ball of radius beta plus a
quadrature rule; values come from the Fourier inversion formula and norms from Parseval.
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from data_sources.nodes import NodeSet
from src.quadrature import uniform_panel_rule

PRESETS = ("indicator", "cosine_bump", "random_smooth")
SUPPORTED_DIMS = (1, 2)
RANDOM_TERMS = 4
RANDOM_SPREAD = 0.4
DEFAULT_ORDER = 64
DEFAULT_PANELS = {1: 8, 2: 1}
CHUNK = 512


@dataclass(frozen=True, eq=False)
class SpectralRule:
    nodes: np.ndarray    # (M, d) frequencies inside the closed ball of radius beta
    weights: np.ndarray  # (M,)


@dataclass(frozen=True, eq=False)
class Spectrum:
    beta: float
    dim: int
    preset: str
    payload: Tuple[float, ...]  # (amplitude, *cosine coefficients)
    rule: SpectralRule

    @property
    def amplitude(self) -> float:
        return self.payload[0]

    def density(self, s):
        """Radial spectrum value at frequency radius s (zero outside the ball)"""
        s = np.asarray(s, dtype=float)
        inside = s <= self.beta
        if self.preset == "indicator":
            shape = np.ones_like(s)
        elif self.preset == "cosine_bump":
            shape = np.cos(0.5 * math.pi * s / self.beta) ** 2
        else:
            u = np.clip(s / self.beta, 0.0, 1.0)
            series = 1.0 + sum(
                c * np.cos((k + 1) * math.pi * u) for k, c in enumerate(self.payload[1:])
            )
            shape = (1.0 - u * u) ** 3 * series
        return np.where(inside, self.amplitude * shape, 0.0)

    def __call__(self, xi):
        xi = np.atleast_2d(np.asarray(xi, dtype=float))
        return self.density(np.linalg.norm(xi, axis=1))


def _rule(beta: float, dim: int, order: int, panels: int) -> SpectralRule:
    if dim == 1:
        x, w = uniform_panel_rule(-beta, beta, order, panels)
        return SpectralRule(x[:, np.newaxis], w)
    r, wr = uniform_panel_rule(0.0, beta, order, panels)
    n_theta = 2 * order
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    nodes = np.stack(
        [np.outer(r, np.cos(theta)).ravel(), np.outer(r, np.sin(theta)).ravel()], axis=1
    )
    weights = np.outer(wr * r, np.full(n_theta, 2.0 * math.pi / n_theta)).ravel()
    return SpectralRule(nodes, weights)


class BandlimitedFunction:
    """f(x) = (2 pi)^(-d/2) * integral over beta B2 of F(xi) exp(i <xi, x>) dxi"""

    def __init__(self, spectrum: Spectrum):
        self.spectrum = spectrum
        self.dim = spectrum.dim
        self.beta = spectrum.beta
        rule = spectrum.rule
        self._weighted = rule.weights * spectrum(rule.nodes)
        self._front = (2.0 * math.pi) ** (-self.dim / 2.0)
        self._l2_norm = self._parseval_norm()

    @property
    def closed_form(self) -> bool:
        return self.spectrum.preset == "indicator" and self.dim == 1

    def _parseval_norm(self) -> float:
        if self.closed_form:
            return abs(self.spectrum.amplitude) * math.sqrt(2.0 * self.beta)
        rule = self.spectrum.rule
        return float(math.sqrt(np.dot(rule.weights, self.spectrum(rule.nodes) ** 2)))

    @property
    def l2_norm(self) -> float:
        return self._l2_norm

    def _points(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.dim == 1 and x.ndim == 1:
            x = x[:, np.newaxis]
        x = np.atleast_2d(x)
        if x.shape[1] != self.dim:
            raise ValueError(f"Points of dimension {x.shape[1]} do not match function dimension {self.dim}")
        return x

    def values(self, x) -> np.ndarray:
        """Real values at an (N, d) array of points"""
        x = self._points(x)
        if self.closed_form:
            beta = self.beta
            return math.sqrt(2.0 / math.pi) * self.spectrum.amplitude * beta * np.sinc(beta * x[:, 0] / math.pi)
        return self._transform(x, np.cos)

    def imaginary_part(self, x) -> np.ndarray:
        """Imaginary part of the inversion integral; vanishes for even real spectra"""
        return self._transform(self._points(x), np.sin)

    def _transform(self, x: np.ndarray, trig) -> np.ndarray:
        nodes = self.spectrum.rule.nodes
        out = np.empty(x.shape[0])
        for start in range(0, x.shape[0], CHUNK):
            block = x[start:start + CHUNK]
            out[start:start + CHUNK] = trig(block @ nodes.T) @ self._weighted
        return self._front * out

    def eval(self, x) -> float:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if x.shape != (self.dim,):
            raise ValueError(f"Point of shape {x.shape} does not match function dimension {self.dim}")
        return float(self.values(x[np.newaxis, :])[0])

    def __call__(self, x):
        return self.values(x)


def synthesize(
    preset: str,
    beta: float,
    dim: int,
    seed: int = 0,
    amplitude: float = 1.0,
    order: int = DEFAULT_ORDER,
    panels: Optional[int] = None,
) -> BandlimitedFunction:
    if preset not in PRESETS:
        raise ValueError(f"Unknown preset {preset!r}; known: {PRESETS}")
    if not beta > 0:
        raise ValueError(f"Band radius beta must be positive, got {beta!r}")
    if dim not in SUPPORTED_DIMS:
        raise ValueError(f"Bandlimited test functions are available for d in {SUPPORTED_DIMS}, got {dim}")
    payload: Tuple[float, ...] = (float(amplitude),)
    if preset == "random_smooth":
        rng = np.random.default_rng(seed)
        coefficients = rng.uniform(-RANDOM_SPREAD, RANDOM_SPREAD, RANDOM_TERMS) / np.arange(1, RANDOM_TERMS + 1)
        payload += tuple(float(c) for c in coefficients)
    rule = _rule(float(beta), dim, order, panels or DEFAULT_PANELS[dim])
    return BandlimitedFunction(Spectrum(float(beta), dim, preset, payload, rule))


def evaluate(f: BandlimitedFunction, x) -> float:
    return f.eval(x)


def l2_norm(f: BandlimitedFunction) -> float:
    return f.l2_norm


def sample(f: BandlimitedFunction, nodes: NodeSet) -> np.ndarray:
    if nodes.dim != f.dim:
        raise ValueError(f"Nodes of dimension {nodes.dim} do not match function dimension {f.dim}")
    return f.values(nodes.points)


def from_config(data: dict, beta: Optional[float] = None, dim: int = 1) -> BandlimitedFunction:
    """Build a function from {"preset", "beta", "seed", "amplitude", "quadrature_order", "quadrature_panels"}"""
    return synthesize(
        data["preset"],
        beta if beta is not None else data["beta"],
        dim,
        seed=int(data.get("seed") or 0),
        amplitude=float(data.get("amplitude", 1.0) if data.get("amplitude") is not None else 1.0),
        order=int(data.get("quadrature_order") or DEFAULT_ORDER),
        panels=data.get("quadrature_panels"),
    )
