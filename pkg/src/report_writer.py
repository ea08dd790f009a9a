"""
Report Writer
CSV tables, JSON summaries and Markdown run summaries rendered with Jinja2
"""
import csv
import json
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from src.models import InterpolatorReport, RegularityReport

TEMPLATE_DIR = Path(__file__).parent / "templates"

_env = Environment(loader=FileSystemLoader(str(TEMPLATE_DIR)), undefined=StrictUndefined,
                   trim_blocks=True, lstrip_blocks=True)
_env.filters["g"] = lambda value, digits=6: "n/a" if value is None else format(value, f".{digits}g")


def _plain(value: Any) -> Any:
    if is_dataclass(value):
        return asdict(value)
    if hasattr(value, "tolist"):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def write_json(path, data: Any) -> Path:
    path = Path(path)
    with open(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True, default=_plain)
        f.write("\n")
    return path


def write_table(path, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format(v, ".17g") if isinstance(v, float) else v for v in row])
    return path


def write_annuli(report: InterpolatorReport, path) -> Path:
    return write_table(path, ["j", "sup", "weighted", "partial_sum"],
                       ([r.j, r.sup, r.weighted, r.partial_sum] for r in report.annuli))


def write_regularity(report: RegularityReport, path) -> Path:
    return write_table(path, ["alpha", "M", "m", "gamma", "S", "ratio_r1", "ratio_r2"],
                       ([r.alpha, r.M, r.m, r.gamma, r.S, r.ratio_r1, r.ratio_r2] for r in report.rows))


def render_summary(template: str, **context) -> str:
    return _env.get_template(template).render(**context)


def write_summary(path, template: str, **context) -> Path:
    path = Path(path)
    path.write_text(render_summary(template, **context))
    return path
