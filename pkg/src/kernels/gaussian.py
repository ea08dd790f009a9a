"""
Gaussian kernels exp(-|x|^2 / (4 alpha)) with spectrum (2 alpha)^(-d/2) exp(-alpha |xi|^2)
"""
import numpy as np

from src.kernels.base import Kernel
from src.kernels.profiles import RadialProfile


class GaussianKernel(Kernel):
    family = "gaussian"

    def __init__(self, dim: int, alpha: float):
        if not alpha > 0:
            raise ValueError(f"Gaussian alpha must be positive, got {alpha!r}")
        super().__init__(dim)
        self.alpha = float(alpha)
        self._spectral_front = (2.0 * self.alpha) ** (-self.dim / 2.0)

    @property
    def fourier_scale(self) -> float:
        # the stated spectrum is (2 alpha)^-d times the exact transform of the kernel
        return (2.0 * self.alpha) ** (-self.dim)

    def spatial_radial(self, r):
        r = np.asarray(r, dtype=float)
        return np.exp(-r * r / (4.0 * self.alpha))

    def spectral_radial(self, s):
        s = np.asarray(s, dtype=float)
        return self._spectral_front * np.exp(-self.alpha * s * s)

    def log_spectral_radial(self, s):
        s = np.asarray(s, dtype=float)
        return -0.5 * self.dim * np.log(2.0 * self.alpha) - self.alpha * s * s

    def spectral_profile(self) -> RadialProfile:
        return RadialProfile("exp_power", (self._spectral_front, self.alpha, 2.0))

    def spatial_profile(self) -> RadialProfile:
        return RadialProfile("exp_power", (1.0, 1.0 / (4.0 * self.alpha), 2.0))

    def describe(self):
        return {"family": self.family, "dim": self.dim, "alpha": self.alpha}
