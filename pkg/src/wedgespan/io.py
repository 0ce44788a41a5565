"""Instance and result serialization: JSON, CSV, and SVG rendering.

All emitted numbers are canonicalized to 12 significant digits, which makes
serialization byte-stable across runs and keeps parse-emit round trips exact
on canonical documents.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InstanceParseError
from .geom import Direction, Point, PointSet, Wedge, check_distinct, points_coincide

_SIG_DIGITS = 12


def round_sig(x: float) -> float:
    return float(f"{x:.{_SIG_DIGITS}g}")


def _canon_value(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return round_sig(v)
    if isinstance(v, dict):
        return {k: _canon_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_canon_value(x) for x in v]
    raise TypeError(f"cannot serialize value of type {type(v)!r}")


@dataclass
class Instance:
    points: list[Point]
    meta: dict = field(default_factory=dict)


def _point_from_pair(pair, where: str) -> Point:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise InstanceParseError(f"{where}: expected a [x, y] pair, got {pair!r}")
    x, y = pair
    if isinstance(x, bool) or isinstance(y, bool):
        raise InstanceParseError(f"{where}: coordinates must be numbers")
    if not isinstance(x, (int, float)) or not isinstance(y, (int, float)):
        raise InstanceParseError(f"{where}: coordinates must be numbers")
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InstanceParseError(f"{where}: coordinates must be finite")
    return Point(float(x), float(y))


def _dedupe(points: list[Point]) -> list[Point]:
    order = sorted(range(len(points)), key=lambda i: (points[i].x, points[i].y, i))
    drop = set()
    for a in range(len(order) - 1):
        i = order[a]
        if i in drop:
            continue
        for b in range(a + 1, len(order)):
            j = order[b]
            if points[j].x - points[i].x > 1e-6 * max(1.0, abs(points[i].x)):
                break
            if points_coincide(points[i], points[j]):
                drop.add(max(i, j))
    return [p for i, p in enumerate(points) if i not in drop]


def parse_instance(text: str, *, duplicates: str = "reject") -> Instance:
    """Parse an instance from JSON ({"points": [[x,y],...]}) or headerless CSV.

    Exact or near-duplicate points are rejected by default; pass
    duplicates="dedupe" to keep first occurrences instead.
    """
    if duplicates not in ("reject", "dedupe"):
        raise ValueError(f"unknown duplicate policy {duplicates!r}")
    stripped = text.lstrip()
    if not stripped:
        raise InstanceParseError("empty instance")
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceParseError(exc.msg, exc.lineno, exc.colno) from exc
        if isinstance(obj, list):
            obj = {"points": obj}
        if not isinstance(obj, dict) or "points" not in obj:
            raise InstanceParseError('JSON instance must be an object with a "points" array')
        raw = obj["points"]
        if not isinstance(raw, list):
            raise InstanceParseError('"points" must be an array')
        points = [_point_from_pair(pair, f"points[{i}]") for i, pair in enumerate(raw)]
        meta = obj.get("meta", {})
        if not isinstance(meta, dict):
            raise InstanceParseError('"meta" must be an object')
    else:
        points = []
        meta = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            cells = [c.strip() for c in line.split(",")]
            if len(cells) != 2:
                raise InstanceParseError(
                    f"expected two comma-separated values, got {len(cells)}", lineno
                )
            try:
                x, y = float(cells[0]), float(cells[1])
            except ValueError as exc:
                raise InstanceParseError(f"bad number: {exc}", lineno) from exc
            if not (math.isfinite(x) and math.isfinite(y)):
                raise InstanceParseError("coordinates must be finite", lineno)
            points.append(Point(x, y))
    if duplicates == "dedupe":
        points = _dedupe(points)
    else:
        check_distinct(points)
    return Instance(points=points, meta=meta)


def emit_instance(instance: Instance, *, fmt: str = "json") -> str:
    """Serialize an instance as canonical JSON or headerless CSV."""
    if fmt == "csv":
        return "".join(f"{round_sig(p.x)!r},{round_sig(p.y)!r}\n" for p in instance.points)
    obj: dict = {"points": [[round_sig(p.x), round_sig(p.y)] for p in instance.points]}
    if instance.meta:
        obj["meta"] = _canon_value(instance.meta)
    return json.dumps(obj, indent=2) + "\n"


@dataclass(frozen=True)
class WedgeRecord:
    """Serialized wedge: orientation and shape without the apex (the apex is
    the instance point at the same position)."""

    bisector_deg: float
    aperture_deg: float
    radius: Optional[float] = None

    @staticmethod
    def from_wedge(w: Wedge) -> "WedgeRecord":
        return WedgeRecord(w.bisector.degrees, w.aperture_deg, w.radius)

    def to_wedge(self, apex: Point) -> Wedge:
        return Wedge(apex, Direction(self.bisector_deg), self.aperture_deg, self.radius)


@dataclass
class ResultDoc:
    """Solver output: per-point wedges, chosen edges, and a summary block."""

    wedges: list[WedgeRecord]
    edges: list[tuple[int, int]]
    summary: dict
    verification: Optional[dict] = None

    def canonical(self) -> "ResultDoc":
        return ResultDoc(
            wedges=[
                WedgeRecord(
                    round_sig(w.bisector_deg),
                    round_sig(w.aperture_deg),
                    None if w.radius is None else round_sig(w.radius),
                )
                for w in self.wedges
            ],
            edges=[(int(u), int(v)) for u, v in self.edges],
            summary=_canon_value(self.summary),
            verification=None if self.verification is None else _canon_value(self.verification),
        )

    def wedges_at(self, points: PointSet) -> list[Wedge]:
        if len(points) != len(self.wedges):
            raise ValueError(f"{len(points)} points but {len(self.wedges)} wedge records")
        return [rec.to_wedge(p) for rec, p in zip(self.wedges, points)]


def emit_result(doc: ResultDoc) -> str:
    doc = doc.canonical()
    obj: dict = {
        "wedges": [
            {
                "bisector_deg": w.bisector_deg,
                "aperture_deg": w.aperture_deg,
                **({"radius": w.radius} if w.radius is not None else {}),
            }
            for w in doc.wedges
        ],
        "edges": [[u, v] for u, v in doc.edges],
        "summary": doc.summary,
    }
    if doc.verification is not None:
        obj["verification"] = doc.verification
    return json.dumps(obj, indent=2) + "\n"


def parse_result(text: str) -> ResultDoc:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(obj, dict):
        raise InstanceParseError("result file must be a JSON object")
    try:
        wedges = [
            WedgeRecord(
                float(rec["bisector_deg"]),
                float(rec["aperture_deg"]),
                float(rec["radius"]) if "radius" in rec else None,
            )
            for rec in obj["wedges"]
        ]
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
        summary = obj["summary"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceParseError(f"malformed result file: {exc}") from exc
    if not isinstance(summary, dict):
        raise InstanceParseError('"summary" must be an object')
    return ResultDoc(
        wedges=wedges, edges=edges, summary=summary, verification=obj.get("verification")
    )


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def emit_svg(
    points: PointSet,
    wedges: Optional[Sequence[Wedge]] = None,
    edges: Optional[Sequence[tuple[int, int]]] = None,
    *,
    canvas: float = 800.0,
    default_wedge_radius: Optional[float] = None,
) -> str:
    """Draw points, edges, and wedge sectors as standalone SVG 1.1.

    The drawing is fit to the canvas with a 5% margin; unbounded wedges are
    drawn with ``default_wedge_radius`` (a quarter of the point-cloud span
    when not given).
    """
    if not points:
        raise ValueError("nothing to draw")
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span = max(max_x - min_x, max_y - min_y, 1e-9)
    if default_wedge_radius is None:
        default_wedge_radius = span * 0.25
    margin = 0.05 * canvas
    scale = (canvas - 2 * margin) / span

    def to_px(p: Point) -> tuple[float, float]:
        return (
            margin + (p.x - min_x) * scale,
            canvas - (margin + (p.y - min_y) * scale),
        )

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(canvas)}" height="{_fmt(canvas)}" '
        f'viewBox="0 0 {_fmt(canvas)} {_fmt(canvas)}">',
        f'<rect width="{_fmt(canvas)}" height="{_fmt(canvas)}" fill="#ffffff"/>',
    ]
    if wedges:
        for k, w in enumerate(wedges):
            r_world = w.radius if w.radius is not None else default_wedge_radius
            r = r_world * scale
            ax, ay = to_px(w.apex)
            color = _SVG_COLORS[k % len(_SVG_COLORS)]
            if w.aperture_deg >= 360.0 - 1e-9:
                out.append(
                    f'<circle cx="{_fmt(ax)}" cy="{_fmt(ay)}" r="{_fmt(r)}" '
                    f'fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="1"/>'
                )
                continue
            right = math.radians(w.right_ray.degrees)
            left = math.radians(w.left_ray.degrees)
            x1 = ax + r * math.cos(right)
            y1 = ay - r * math.sin(right)
            x2 = ax + r * math.cos(left)
            y2 = ay - r * math.sin(left)
            large = 1 if w.aperture_deg > 180.0 else 0
            out.append(
                f'<path d="M {_fmt(ax)} {_fmt(ay)} L {_fmt(x1)} {_fmt(y1)} '
                f'A {_fmt(r)} {_fmt(r)} 0 {large} 0 {_fmt(x2)} {_fmt(y2)} Z" '
                f'fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="1"/>'
            )
    if edges:
        for u, v in edges:
            x1, y1 = to_px(points[u])
            x2, y2 = to_px(points[v])
            out.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                'stroke="#333333" stroke-width="1.5"/>'
            )
    for p in points:
        x, y = to_px(p)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#000000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
