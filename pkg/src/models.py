"""
Result records for checks, sweeps and fits
"""
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class AnnulusRow:
    j: int
    sup: float
    weighted: float
    partial_sum: float


@dataclass
class InterpolatorReport:
    kernel: Dict[str, Any]
    body: Dict[str, Any]
    scheme: str
    spatial_l1: float
    spectral_l1: float
    epsilon: float
    annuli: List[AnnulusRow]
    converged: bool
    tail_ratio: float
    j_max: int
    sample_points: Optional[int] = None  # only for the sampled (non-radial) annulus fallback
    spatial_truncated_at: Optional[float] = None

    @property
    def i1_passed(self) -> bool:
        return bool(self.spatial_l1 < float("inf") and self.spectral_l1 < float("inf"))

    @property
    def i2_passed(self) -> bool:
        return self.epsilon > 0

    @property
    def i3_passed(self) -> bool:
        return self.converged

    @property
    def passed(self) -> bool:
        return self.i1_passed and self.i2_passed and self.i3_passed

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.update(i1_passed=self.i1_passed, i2_passed=self.i2_passed,
                    i3_passed=self.i3_passed, passed=self.passed)
        return data


@dataclass
class RegularityRow:
    alpha: float
    M: float
    m: float
    gamma: float
    S: float
    ratio_r1: float
    ratio_r2: float


@dataclass
class RegularityReport:
    family: Dict[str, Any]
    body: Dict[str, Any]
    beta: float
    limiting_case: bool
    rows: List[RegularityRow]
    r1_spread: float
    r1_bounded: bool
    r2_decreasing: bool

    @property
    def passed(self) -> bool:
        return self.r1_bounded and self.r2_decreasing

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["passed"] = self.passed
        return data


@dataclass
class RateExponent:
    exponent: float
    feasible: bool
    limiting_case: bool
    beta_max: Optional[float]
    rate_parameter: str  # "alpha" or "c"


@dataclass
class SeriesCheck:
    D: float
    a: float
    total: float
    exp_neg_a: float
    ratio: float
    threshold: float
    admissible: bool
    terms: int
    majorant: float
    below_majorant: bool


@dataclass
class SweepRow:
    alpha: float
    sup_error: float
    l2_error: float
    node_residual: float
    jitter: float
    condition_estimate: float
    ratio_r2: float
    status: str = "ok"
    message: str = ""

    @property
    def failed(self) -> bool:
        return self.status != "ok"


@dataclass
class SweepReport:
    rows: List[SweepRow]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def ok_rows(self) -> List[SweepRow]:
        return [row for row in self.rows if not row.failed]


@dataclass
class FitResult:
    slope: Optional[float]
    intercept: Optional[float]
    usable_alphas: List[float]
    theoretical_exponent: float
    feasible: bool
    rate_exempt: bool
    passed: bool
    status: str  # "fitted", "insufficient_rows"
    message: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
