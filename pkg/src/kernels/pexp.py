"""
p-exponential kernels: the inverse Fourier transform of exp(-alpha |xi|^p)

p = 2 recovers a Gaussian and p = 1 the Poisson kernel. Spatial values come from a
cubic-spline radial table computed once per (p, alpha, d, radius, size); radii beyond
the table are evaluated by direct quadrature.
"""
from functools import lru_cache
from typing import Optional

import numpy as np

from src.config import get_config
from src.errors import QuadratureError
from src.kernels.base import Kernel
from src.kernels.profiles import RadialProfile
from src.kernels.transforms import SUPPORTED_DIMS, RadialTable, build_radial_table, radial_inverse_ft

config = get_config()


@lru_cache(maxsize=32)
def _radial_table(p: float, alpha: float, dim: int, radius: float, size: int) -> RadialTable:
    return build_radial_table(RadialProfile("exp_power", (1.0, alpha, p)), dim, radius, size)


class PExponentialKernel(Kernel):
    family = "pexp"

    def __init__(
        self,
        dim: int,
        alpha: float,
        p: float,
        table_radius: Optional[float] = None,
        table_size: Optional[int] = None,
        tabulate: bool = True,
    ):
        if dim not in SUPPORTED_DIMS:
            raise ValueError(f"p-exponential kernels are available for d in {SUPPORTED_DIMS}, got {dim}")
        if not alpha > 0:
            raise ValueError(f"p-exponential alpha must be positive, got {alpha!r}")
        if not p > 0:
            raise ValueError(f"p-exponential stability exponent p must be positive, got {p!r}")
        super().__init__(dim)
        self.alpha = float(alpha)
        self.p = float(p)
        self._spectrum = RadialProfile("exp_power", (1.0, self.alpha, self.p))
        self.table: Optional[RadialTable] = None
        if tabulate:
            radius = float(table_radius or config.PEXP_TABLE_RADIUS)
            size = int(table_size or config.PEXP_TABLE_SIZE)
            try:
                self.table = _radial_table(self.p, self.alpha, self.dim, radius, size)
            except QuadratureError as e:
                self._log_error("radial table", e)
                raise
            self._log_success(f"radial table ready (p={self.p:g}, alpha={self.alpha:g}, d={self.dim}, r<={radius:g})")

    def spatial_radial(self, r):
        r = np.asarray(r, dtype=float)
        if self.table is None:
            inside = np.zeros(r.shape, dtype=bool)
        else:
            inside = r <= self.table.radius
        out = np.empty(r.shape, dtype=float)
        if inside.any():
            out[inside] = self.table(r[inside])
        if not inside.all():
            out[~inside] = [radial_inverse_ft(self._spectrum, self.dim, v) for v in r[~inside]]
        return out if out.ndim else float(out)

    def spectral_radial(self, s):
        return self._spectrum(s)

    def log_spectral_radial(self, s):
        s = np.asarray(s, dtype=float)
        return -self.alpha * s ** self.p

    def spectral_profile(self) -> RadialProfile:
        return self._spectrum

    def describe(self):
        return {"family": self.family, "dim": self.dim, "alpha": self.alpha, "p": self.p}
