"""
Kernel families: Gaussians, inverse multiquadrics and p-exponential kernels
"""
from typing import Optional

from .base import Kernel
from .bessel import bessel_bounds, bessel_k
from .gaussian import GaussianKernel
from .imq import InverseMultiquadricKernel
from .pexp import PExponentialKernel
from .profiles import RadialProfile
from .transforms import radial_inverse_ft

FAMILIES = ("gaussian", "imq", "pexp")


def make_kernel(
    family: str,
    dim: int,
    rate: float,
    *,
    nu: Optional[float] = None,
    p: Optional[float] = None,
    table_radius: Optional[float] = None,
    tabulate: bool = True,
) -> Kernel:
    """Build one member of a family; `rate` is alpha (gaussian, pexp) or c (imq)"""
    if family == "gaussian":
        return GaussianKernel(dim, rate)
    if family == "imq":
        if nu is None:
            raise ValueError("Inverse multiquadric kernels need nu")
        return InverseMultiquadricKernel(dim, rate, nu)
    if family == "pexp":
        if p is None:
            raise ValueError("p-exponential kernels need p")
        return PExponentialKernel(dim, rate, p, table_radius=table_radius, tabulate=tabulate)
    raise ValueError(f"Unknown kernel family {family!r}; known: {FAMILIES}")


def spatial(kernel: Kernel, x) -> float:
    return kernel.spatial(x)


def spectral(kernel: Kernel, xi) -> float:
    return kernel.spectral(xi)


__all__ = [
    "FAMILIES",
    "GaussianKernel",
    "InverseMultiquadricKernel",
    "Kernel",
    "PExponentialKernel",
    "RadialProfile",
    "bessel_bounds",
    "bessel_k",
    "make_kernel",
    "radial_inverse_ft",
    "spatial",
    "spectral",
]
