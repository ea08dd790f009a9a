"""
Inverse multiquadrics (|x|^2 + c^2)^-nu, nu > d/2, indexed by the shape parameter c
"""
import numpy as np

from src.kernels.base import Kernel
from src.kernels.profiles import RadialProfile


class InverseMultiquadricKernel(Kernel):
    family = "imq"

    def __init__(self, dim: int, c: float, nu: float):
        if not c >= 1.0:
            raise ValueError(f"Inverse multiquadric shape c must be at least 1, got {c!r}")
        if not nu > dim / 2.0:
            raise ValueError(f"Inverse multiquadric needs nu > d/2 for integrability (nu={nu!r}, d={dim})")
        super().__init__(dim)
        self.c = float(c)
        self.nu = float(nu)
        self._spectrum = RadialProfile("imq_spectrum", (self.nu, self.c, float(self.dim)))

    @property
    def bessel_order(self) -> float:
        return self.nu - self.dim / 2.0

    def spatial_radial(self, r):
        r = np.asarray(r, dtype=float)
        return (r * r + self.c * self.c) ** (-self.nu)

    def spectral_radial(self, s):
        return self._spectrum(s)

    def spectral_profile(self) -> RadialProfile:
        return self._spectrum

    def spatial_profile(self) -> RadialProfile:
        return RadialProfile("inverse_power", (self.c, self.nu))

    def describe(self):
        return {"family": self.family, "dim": self.dim, "c": self.c, "nu": self.nu}
