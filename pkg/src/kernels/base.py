"""
Base Kernel - template for all radial kernel families
"""
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import numpy as np

from src.console import Console
from src.kernels.profiles import RadialProfile


class Kernel(ABC):
    """Base class for the radial kernel families.

    Subclasses implement the radial forms of the kernel (`spatial_radial`) and of its
    Fourier transform (`spectral_radial`); point evaluation, dimension checks and
    logging live here.
    """

    family: str = ""

    def __init__(self, dim: int):
        if not isinstance(dim, (int, np.integer)) or dim < 1:
            raise ValueError(f"Kernel dimension must be a positive integer, got {dim!r}")
        self.dim = int(dim)
        self.console = Console(f"kernel[{self.family}]")

    def _log_success(self, message: str):
        """Log success message"""
        self.console.success(message)

    def _log_error(self, operation: str, error: Exception):
        """Log error message"""
        self.console.error(f"{operation} failed: {error}")

    @property
    def is_radial(self) -> bool:
        return True

    @property
    def fourier_scale(self) -> float:
        """Constant k with inverse transform of the spectrum = k * spatial"""
        return 1.0

    @abstractmethod
    def spatial_radial(self, r):
        """Kernel value at radius r (array-like)"""

    @abstractmethod
    def spectral_radial(self, s):
        """Fourier transform value at frequency radius s (array-like)"""

    @abstractmethod
    def spectral_profile(self) -> RadialProfile:
        pass

    def spatial_profile(self) -> Optional[RadialProfile]:
        return None

    def log_spectral_radial(self, s):
        return np.log(self.spectral_radial(s))

    def _norm(self, x) -> float:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if x.ndim != 1 or x.shape[0] != self.dim:
            raise ValueError(f"Point of shape {x.shape} does not match kernel dimension {self.dim}")
        return float(np.linalg.norm(x))

    def spatial(self, x) -> float:
        return float(self.spatial_radial(self._norm(x)))

    def spectral(self, xi) -> float:
        return float(self.spectral_radial(self._norm(xi)))

    def describe(self) -> Dict[str, Any]:
        return {"family": self.family, "dim": self.dim}

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.describe().items() if k != "family")
        return f"{type(self).__name__}({params})"
