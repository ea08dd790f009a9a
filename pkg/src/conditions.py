"""
Interpolator and Regularity Checks
Numerical checks of the interpolator conditions (integrability, spectral floor on Z,
summable dyadic annulus suprema), of the regularity ratios of a kernel family, of the
theoretical decay exponents and of the dyadic series bound.
"""
import math
from typing import Iterable, List, Optional

import numpy as np

from src.console import Console
from src.errors import GeometryError, NumericalError
from src.geometry import ConvexBody
from src.kernels import Kernel, make_kernel
from src.kernels.transforms import SPHERE_AREA, radial_integral
from src.models import (
    AnnulusRow,
    InterpolatorReport,
    RateExponent,
    RegularityReport,
    RegularityRow,
    SeriesCheck,
)
from src.quadrature import checked_quad, panel_rule

console = Console("conditions")

J_MAX = 60
TAIL_RATIO = 1e-16
SAMPLE_POINTS = 4096
R1_SPREAD_LIMIT = 3.0
SERIES_MAX_TERMS = 200
LN2 = math.log(2.0)
LOG_FLOAT_MAX = math.log(np.finfo(float).max)


def _check_dims(kernel: Kernel, body: ConvexBody) -> None:
    if kernel.dim != body.dim:
        raise GeometryError(f"Kernel dimension {kernel.dim} does not match body dimension {body.dim}")


def _sample_annulus(body: ConvexBody, count: int, seed: int) -> np.ndarray:
    """Points of Z minus (1/2)Z"""
    rng = np.random.default_rng(seed)
    if body.kind == "ball":
        directions = rng.standard_normal((count, body.dim))
        directions /= np.linalg.norm(directions, axis=1)[:, np.newaxis]
        radii = rng.uniform(0.5 * body.size, body.size, count)
        return directions * radii[:, np.newaxis]
    points = np.empty((0, body.dim))
    while points.shape[0] < count:
        batch = rng.uniform(-body.size, body.size, (2 * count, body.dim))
        keep = np.max(np.abs(batch), axis=1) > 0.5 * body.size
        points = np.vstack([points, batch[keep]])
    return points[:count]


def annulus_sup(kernel: Kernel, body: ConvexBody, j: int, force_sampling: bool = False,
                sample_points: int = SAMPLE_POINTS, seed: int = 0) -> float:
    """sup of |phi_hat(2^j u)| over u in Z minus (1/2)Z"""
    if j < 1:
        raise ValueError(f"Annulus index must be at least 1, got {j}")
    _check_dims(kernel, body)
    if kernel.is_radial and not force_sampling:
        # radial nonincreasing spectra peak on the inner boundary, at radius 2^(j-1) delta
        return float(abs(kernel.spectral_radial(2.0 ** (j - 1) * body.inscribed_radius)))
    u = _sample_annulus(body, sample_points, seed)
    radii = np.linalg.norm(2.0 ** j * u, axis=1)
    return float(np.max(np.abs(kernel.spectral_radial(radii))))


def _linear_annulus_sup(kernel: Kernel, body: ConvexBody, j: int) -> float:
    """sup of |phi_hat| over jZ minus (j-1)Z, at radius (j-1) delta"""
    return float(abs(kernel.spectral_radial((j - 1) * body.inscribed_radius)))


def annulus_table(kernel: Kernel, body: ConvexBody, j_max: int, scheme: str):
    d = kernel.dim
    rows: List[AnnulusRow] = []
    total = 0.0
    tail = math.inf
    converged = False
    first = 1 if scheme == "dyadic" else 2
    for j in range(first, j_max + 1):
        if scheme == "dyadic":
            sup = annulus_sup(kernel, body, j)
            weighted = 2.0 ** (j * d / 2.0) * sup
        else:
            sup = _linear_annulus_sup(kernel, body, j)
            weighted = j ** (d / 2.0) * sup
        total += weighted
        rows.append(AnnulusRow(j, sup, weighted, total))
        tail = weighted / total if total > 0 else 0.0
        if tail < TAIL_RATIO:
            converged = True
            break
    return rows, converged, tail


def _spatial_l1(kernel: Kernel):
    """Integral of |phi| over R^d; tabulated kernels are integrated over their table"""
    table = getattr(kernel, "table", None)
    if table is None:
        return radial_integral(kernel.spatial_radial, kernel.dim), None
    r, w = panel_rule(table.radii, 8)
    values = np.abs(table(r)) * r ** (kernel.dim - 1)
    return SPHERE_AREA[kernel.dim] * float(np.dot(w, values)), table.radius


def check_interpolator(kernel: Kernel, body: ConvexBody, j_max: int = J_MAX,
                       scheme: str = "dyadic") -> InterpolatorReport:
    if scheme not in ("dyadic", "linear"):
        raise ValueError(f"Unknown annulus scheme {scheme!r}")
    _check_dims(kernel, body)
    console.info(f"checking {kernel!r} on {body.kind} (size {body.size:g}, d={body.dim})")

    spatial_l1, truncated_at = _spatial_l1(kernel)
    profile = kernel.spectral_profile()
    spectral_l1 = radial_integral(profile.scalar, kernel.dim, upper=profile.cutoff())
    epsilon = float(kernel.spectral_radial(body.circumscribed_radius))
    rows, converged, tail = annulus_table(kernel, body, j_max, scheme)

    report = InterpolatorReport(
        kernel=kernel.describe(),
        body=body.to_dict(),
        scheme=scheme,
        spatial_l1=spatial_l1,
        spectral_l1=spectral_l1,
        epsilon=epsilon,
        annuli=rows,
        converged=converged,
        tail_ratio=tail,
        j_max=j_max,
        spatial_truncated_at=truncated_at,
    )
    if report.passed:
        console.success(f"{kernel!r} is an interpolator (epsilon={epsilon:.6g}, {len(rows)} annuli)")
    else:
        console.warn(f"{kernel!r} failed: I1={report.i1_passed} I2={report.i2_passed} I3={report.i3_passed}")
    return report


def r1_ratio(kernel: Kernel, body: ConvexBody, j_max: int = J_MAX) -> float:
    """S / M with S = sum_j 2^(jd/2) M_j and M = phi_hat(delta)"""
    rows, _, _ = annulus_table(kernel, body, j_max, "dyadic")
    return rows[-1].partial_sum / float(kernel.spectral_radial(body.inscribed_radius))


def r2_ratio(kernel: Kernel, body: ConvexBody, beta: float) -> float:
    """phi_hat(delta)^3 / (phi_hat(beta) phi_hat(1)^2), formed in log space"""
    log_m = kernel.log_spectral_radial
    exponent = 3.0 * log_m(body.inscribed_radius) - log_m(beta) - 2.0 * log_m(1.0)
    return float(math.exp(float(exponent)))


def _validate_band(body: ConvexBody, beta: float, limiting_case: bool) -> None:
    body.check_admissible()
    delta = body.inscribed_radius
    if limiting_case:
        if not (body.is_limiting_case and beta == 1.0):
            raise GeometryError("The limiting case needs Z = B2 and beta = delta = 1")
        return
    if not 0 < beta < delta:
        raise GeometryError(f"Band radius must satisfy 0 < beta < delta, got beta={beta}, delta={delta}")


def regularity_sweep(family: str, body: ConvexBody, beta: float, alpha_grid: Iterable[float], *,
                     nu: Optional[float] = None, p: Optional[float] = None,
                     limiting_case: bool = False, j_max: int = J_MAX) -> RegularityReport:
    _validate_band(body, beta, limiting_case)
    alphas = [float(a) for a in alpha_grid]
    delta = body.inscribed_radius
    rows = []
    for alpha in alphas:
        kernel = make_kernel(family, body.dim, alpha, nu=nu, p=p, tabulate=False)
        M = float(kernel.spectral_radial(delta))
        m = float(kernel.spectral_radial(beta))
        gamma = float(kernel.spectral_radial(1.0))
        table, _, _ = annulus_table(kernel, body, j_max, "dyadic")
        S = table[-1].partial_sum
        rows.append(RegularityRow(alpha, M, m, gamma, S, S / M, r2_ratio(kernel, body, beta)))

    r1 = [row.ratio_r1 for row in rows]
    spread = max(r1) / min(r1)
    r2 = [row.ratio_r2 for row in rows]
    decreasing = all(b < a for a, b in zip(r2, r2[1:]))
    family_info = {"family": family, "nu": nu, "p": p, "dim": body.dim}
    report = RegularityReport(family_info, body.to_dict(), float(beta), limiting_case, rows,
                              spread, spread < R1_SPREAD_LIMIT, decreasing)
    status = "regular" if report.passed else "not regular"
    console.info(f"{family} over {len(rows)} rates: R1 spread {spread:.3g}, R2 decreasing={decreasing} ({status})")
    return report


def theoretical_exponent(family: str, delta: float, beta: float, p: Optional[float] = None) -> RateExponent:
    """Exponent e with error decay exp(e * alpha) (exp(e * c) for inverse multiquadrics)"""
    limiting = delta == 1.0 and beta == 1.0
    if family == "gaussian":
        p = 2.0
    elif family == "imq":
        exponent = beta + 2.0 - 3.0 * delta
        slack = 3.0 * delta - 2.0
        beta_max = slack if slack > 0 else None
        feasible = 2.0 / 3.0 < delta < 1.0 and 0 < beta < slack
        return RateExponent(exponent, feasible, limiting, beta_max, "c")
    elif family == "pexp":
        if p is None:
            raise ValueError("p-exponential exponent needs p")
    else:
        raise ValueError(f"Unknown kernel family {family!r}")
    exponent = beta ** p + 2.0 - 3.0 * delta ** p
    slack = 3.0 * delta ** p - 2.0
    beta_max = slack ** (1.0 / p) if slack > 0 else None
    feasible = delta < 1.0 and beta_max is not None and 0 < beta < beta_max
    return RateExponent(exponent, feasible, limiting, beta_max, "alpha")


def theoretical_bound(family: str, delta: float, beta: float, rate: float, dim: int = 1,
                      nu: Optional[float] = None, p: Optional[float] = None) -> float:
    """Rate expression exp(rate * exponent), with the inverse multiquadric prefactor (delta/(c beta))^(nu-(d+1)/2)"""
    exponent = theoretical_exponent(family, delta, beta, p).exponent
    value = math.exp(rate * exponent)
    if family == "imq":
        if nu is None:
            raise ValueError("Inverse multiquadric bound needs nu")
        value *= (delta / (rate * beta)) ** (nu - (dim + 1) / 2.0)
    return value


def series_threshold(D: float) -> float:
    return max(math.log(D) / LN2, 2.0 / LN2)


def dyadic_integral(D: float, a: float) -> float:
    """int_1^inf D^x exp(-a 2^(x-1)) dx by quadrature"""
    log_d = math.log(D)

    def integrand(x: float) -> float:
        if x > 1000.0:
            return 0.0
        return math.exp(x * log_d - a * 2.0 ** (x - 1.0))

    return checked_quad(integrand, 1.0, math.inf, what=f"dyadic integral (D={D:g}, a={a:g})")


def dyadic_integral_closed_form(a: float) -> float:
    """The D = 2 case: (2 / (a ln 2)) exp(-a)"""
    return 2.0 / (a * LN2) * math.exp(-a)


def series_bound_check(D: float, a: float) -> SeriesCheck:
    """Direct sum of D^j exp(-a 2^(j-1)), j >= 1, against exp(-a)"""
    if not D > 1:
        raise ValueError(f"Series check needs D > 1, got {D!r}")
    threshold = series_threshold(D)
    admissible = a >= threshold * (1.0 - 1e-12)
    if not admissible:
        console.warn(f"a={a:g} is below the threshold {threshold:.6g}; the bound is not guaranteed")

    log_d = math.log(D)
    total = 0.0
    previous = math.inf
    j = 0
    for j in range(1, SERIES_MAX_TERMS + 1):
        log_term = j * log_d - a * 2.0 ** (j - 1)
        if log_term > LOG_FLOAT_MAX:
            raise NumericalError(f"series term j={j} overflows (log term {log_term:.6g}) for D={D:g}, a={a:g}")
        term = math.exp(log_term)
        total += term
        if term < TAIL_RATIO * total and term <= previous:
            break
        previous = term

    exp_neg_a = math.exp(-a)
    majorant = D * exp_neg_a + dyadic_integral(D, a)
    return SeriesCheck(
        D=float(D),
        a=float(a),
        total=total,
        exp_neg_a=exp_neg_a,
        ratio=total / exp_neg_a,
        threshold=threshold,
        admissible=admissible,
        terms=j,
        majorant=majorant,
        below_majorant=total <= majorant * (1.0 + 1e-12),
    )
