"""
JSON run configurations
Every subcommand reads one of these models; unknown keys are rejected.
"""
import json
from pathlib import Path
from typing import List, Literal, Optional, Type, TypeVar, get_args, get_origin

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.errors import ConfigError

M = TypeVar("M", bound=BaseModel)


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class BodySpec(StrictModel):
    kind: Literal["ball", "box"] = Field(description="'ball' (radius size) or 'box' (half-width size)")
    dim: int = Field(ge=1, description="space dimension d")
    size: float = Field(gt=0, description="radius of the ball or half-width of the box")

    @property
    def inscribed_radius(self) -> float:
        return self.size


class FamilySpec(StrictModel):
    family: Literal["gaussian", "imq", "pexp"] = Field(description="kernel family")
    nu: Optional[float] = Field(default=None, description="inverse multiquadric exponent nu > d/2 (imq only)")
    p: Optional[float] = Field(default=None, gt=0, description="stability exponent p (pexp only)")

    @model_validator(mode="after")
    def _family_parameters(self):
        if self.family == "imq" and self.nu is None:
            raise ValueError("family 'imq' needs nu")
        if self.family == "pexp" and self.p is None:
            raise ValueError("family 'pexp' needs p")
        return self


class KernelSpec(FamilySpec):
    rate: float = Field(gt=0, description="alpha (gaussian, pexp) or shape c >= 1 (imq)")


class AxisSpec(StrictModel):
    generator: Literal["kadec"] = Field(default="kadec", description="node generator, only 'kadec'")
    h: Optional[float] = Field(default=None, gt=0, description="lattice half-band h, spacing pi/h")
    jmin: Optional[int] = Field(default=None, description="first lattice index")
    jmax: Optional[int] = Field(default=None, description="last lattice index")
    L: Optional[float] = Field(default=None, ge=0, lt=0.25, description="Kadec perturbation bound, 0 <= L < 1/4")
    seed: Optional[int] = Field(default=None, description="seed of the perturbations")


class NodeSpec(AxisSpec):
    axes: Optional[List[AxisSpec]] = Field(
        default=None, description="per-axis generators of a tensor grid; top-level keys are their defaults"
    )

    @model_validator(mode="after")
    def _complete(self):
        axes = self.axes or [AxisSpec()]
        for k, axis in enumerate(axes):
            for key in ("h", "jmin", "jmax"):
                if getattr(axis, key) is None and getattr(self, key) is None:
                    raise ValueError(f"axis {k} has no {key!r}")
        return self

    @property
    def dim(self) -> int:
        return len(self.axes) if self.axes else 1


class FunctionSpec(StrictModel):
    preset: Literal["indicator", "cosine_bump", "random_smooth"] = Field(description="radial spectrum shape")
    seed: int = Field(default=0, description="seed of the random_smooth coefficients")
    amplitude: float = Field(default=1.0, description="spectrum amplitude; 0 gives f = 0")
    quadrature_order: int = Field(default=64, ge=2, description="Gauss-Legendre points per spectral panel")
    quadrature_panels: Optional[int] = Field(
        default=None, ge=1, description="spectral panels (default 8 in d=1, 1 radial panel in d=2)"
    )


def _check_dims(body: BodySpec, nodes: Optional[NodeSpec] = None, extra: Optional[List[NodeSpec]] = None):
    for spec in [nodes] + list(extra or []):
        if spec is not None and spec.dim != body.dim:
            raise ValueError(f"node set of dimension {spec.dim} does not match body dimension {body.dim}")


class CheckKernelConfig(StrictModel):
    body: BodySpec = Field(description="symmetric convex body Z")
    kernel: KernelSpec = Field(description="kernel to check")
    scheme: Literal["dyadic", "linear"] = Field(default="dyadic", description="annulus periodization scheme")
    j_max: int = Field(default=60, ge=1, description="cap on the annulus summation")


class NodesConfig(StrictModel):
    nodes: NodeSpec = Field(description="node generator")


class InterpolateConfig(StrictModel):
    body: BodySpec = Field(description="symmetric convex body Z")
    kernel: KernelSpec = Field(description="kernel used for collocation")
    beta: float = Field(gt=0, description="band radius of the test function")
    function: FunctionSpec = Field(description="bandlimited test function")
    nodes: NodeSpec = Field(description="interpolation nodes")
    averaged_with: List[NodeSpec] = Field(
        default_factory=list, description="further node sets; when given, the averaged approximant is reported too"
    )
    eval_points: Optional[List[List[float]]] = Field(
        default=None, description="points where the interpolant is evaluated (default: the nodes)"
    )

    @model_validator(mode="after")
    def _dims(self):
        _check_dims(self.body, self.nodes, self.averaged_with)
        return self


class RatiosConfig(StrictModel):
    body: BodySpec = Field(description="symmetric convex body Z, delta is its inscribed radius")
    family: FamilySpec = Field(description="kernel family")
    beta: float = Field(gt=0, description="band radius, beta < delta")
    alpha_grid: List[float] = Field(min_length=1, description="strictly increasing rate parameters")
    limiting_case: bool = Field(default=False, description="admit beta = delta = 1 with Z the unit ball")

    @field_validator("alpha_grid")
    @classmethod
    def _increasing(cls, grid: List[float]) -> List[float]:
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("alpha_grid must be strictly increasing (no duplicates)")
        if any(a <= 0 for a in grid):
            raise ValueError("alpha_grid entries must be positive")
        return grid


class SweepConfig(RatiosConfig):
    function: FunctionSpec = Field(description="bandlimited test function")
    nodes: NodeSpec = Field(description="interpolation nodes")
    averaged_with: List[NodeSpec] = Field(
        default_factory=list, description="further node sets; rows then measure the averaged approximant"
    )
    window: float = Field(default=0.5, gt=0, lt=1, description="central fraction of the node hull used for errors")
    sup_grid: Optional[int] = Field(default=None, ge=2, description="sup-error grid points per axis at window 0.5 (2048 / 128)")
    l2_order: Optional[int] = Field(default=None, ge=2, description="L2 Gauss-Legendre order per axis (200 / 64)")

    @model_validator(mode="after")
    def _geometry(self):
        _check_dims(self.body, self.nodes, self.averaged_with)
        if self.beta >= self.body.inscribed_radius and not self.limiting_case:
            raise ValueError(f"beta={self.beta} must be below delta={self.body.inscribed_radius}")
        return self


def load_config(path, model: Type[M], seed: Optional[int] = None) -> M:
    """Read and validate a JSON config; any failure is a ConfigError"""
    path = Path(path)
    try:
        with open(path) as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"Config file not found: {path}")
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Could not read config {path}: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"Config {path} must hold a JSON object")
    if seed is not None:
        apply_seed(data, seed)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid config {path}:\n{e}")


def apply_seed(data: dict, seed: int) -> dict:
    """Override every seed in a raw config; node sets and axes get seed, seed+1, ..."""
    offset = 0
    node_sets = ([data["nodes"]] if isinstance(data.get("nodes"), dict) else []) + list(data.get("averaged_with") or [])
    for spec in node_sets:
        spec["seed"] = seed + offset
        offset += 1
        for axis in spec.get("axes") or []:
            axis["seed"] = seed + offset
            offset += 1
    if isinstance(data.get("function"), dict):
        data["function"]["seed"] = seed
    return data


def _nested_models(annotation, in_list: bool = False):
    if isinstance(annotation, type) and issubclass(annotation, BaseModel):
        yield annotation, in_list
        return
    origin = get_origin(annotation)
    for arg in get_args(annotation):
        yield from _nested_models(arg, in_list or origin is list)


def describe_fields(model: Type[BaseModel], prefix: str = "") -> List[str]:
    """One line per config key (nested keys dotted), from the field descriptions"""
    lines = []
    for name, info in model.model_fields.items():
        key = f"{prefix}{name}"
        required = " (required)" if info.is_required() else ""
        lines.append(f"  {key}{required}: {info.description or ''}")
        for nested, in_list in _nested_models(info.annotation):
            lines.extend(describe_fields(nested, prefix=f"{key}[]." if in_list else f"{key}."))
    return lines
