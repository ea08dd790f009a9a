"""
Runtime Configuration
Environment variables (optionally from .env) for output, workers and tables
"""
import os
from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"❌ {name} must be an integer, got {raw!r}")


def _float_env(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"❌ {name} must be a number, got {raw!r}")


class Config:
    # Output
    OUTPUT_DIR = os.getenv("BANDREC_OUTPUT_DIR", "outputs")
    QUIET = os.getenv("BANDREC_QUIET", "0").strip().lower() in {"1", "true", "yes"}

    # Parallel sweep rows and averaged solves
    MAX_WORKERS = _int_env("BANDREC_MAX_WORKERS", 4)

    # p-exponential radial table
    PEXP_TABLE_SIZE = _int_env("BANDREC_PEXP_TABLE_SIZE", 2048)
    PEXP_TABLE_RADIUS = _float_env("BANDREC_PEXP_TABLE_RADIUS", 512.0)

    # Quadrature tolerances
    QUAD_EPSABS = 1e-12
    QUAD_EPSREL = 1e-9
    QUAD_FAILURE_TOL = 1e-9

    # Validation
    def __init__(self):
        if self.MAX_WORKERS < 1:
            raise ValueError("❌ BANDREC_MAX_WORKERS must be at least 1")
        if self.PEXP_TABLE_SIZE < 16:
            raise ValueError("❌ BANDREC_PEXP_TABLE_SIZE must be at least 16")
        if self.PEXP_TABLE_RADIUS <= 1e-3:
            raise ValueError("❌ BANDREC_PEXP_TABLE_RADIUS must exceed 1e-3")


# Global config instance
config = Config()


def get_config() -> Config:
    """Get application configuration"""
    return config
