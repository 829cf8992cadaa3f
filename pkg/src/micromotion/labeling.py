"""Labeled polygon regions: the four motion categories, label-file validation,
and even-odd rasterization to pixel sets.

Label coordinates live in the padded/magnified frame space, since labeling
happens on the overlap video.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np


class MotionLabel(enum.Enum):
    HAND_FINGER = "hand_finger"
    VEIN = "vein"
    BACKGROUND = "background"
    RESPIRATION = "respiration"

    @classmethod
    def parse(cls, value: str) -> "MotionLabel":
        for member in cls:
            if member.value == value:
                return member
        raise ValueError(
            f"unknown label {value!r}; expected one of "
            f"{[m.value for m in cls]}"
        )


# fixed class order for confusion matrices and tie-breaking
CLASS_ORDER = (
    MotionLabel.HAND_FINGER,
    MotionLabel.VEIN,
    MotionLabel.BACKGROUND,
    MotionLabel.RESPIRATION,
)


@dataclass(frozen=True)
class RegionLabel:
    id: str
    label: MotionLabel
    polygon: tuple[tuple[float, float], ...]
    frame_range: tuple[int, int]  # [start, end)


@dataclass(frozen=True)
class LabelFile:
    video_ref: str
    regions: tuple[RegionLabel, ...]
    author: str = ""
    created_at: str = ""


@dataclass(frozen=True)
class Violation:
    region_id: str
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.region_id}: {self.field}: {self.message}"


def polygon_area(polygon) -> float:
    """Signed shoelace area."""
    pts = np.asarray(polygon, dtype=np.float64)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _segments_properly_intersect(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 1e-12) - (v < -1e-12)

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    return o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4)


def polygon_is_simple(polygon) -> bool:
    """True when no two non-adjacent edges properly cross."""
    n = len(polygon)
    edges = [(polygon[i], polygon[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_properly_intersect(*edges[i], *edges[j]):
                return False
    return True


def point_in_polygon(x: float, y: float, polygon) -> bool:
    """Even-odd rule ray cast toward +x."""
    inside = False
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < x_cross:
                inside = not inside
    return inside


def rasterize_region(region: RegionLabel, dims: tuple[int, int]) -> set[tuple[int, int]]:
    """Integer pixel coordinates whose centers lie inside the polygon (even-odd)."""
    w, h = dims
    poly = np.asarray(region.polygon, dtype=np.float64)
    if len(poly) < 3 or abs(polygon_area(poly)) < 1e-12:
        raise ValueError(f"region {region.id}: degenerate polygon")
    x_min = max(0, int(np.floor(poly[:, 0].min() - 0.5)))
    x_max = min(w - 1, int(np.ceil(poly[:, 0].max())))
    y_min = max(0, int(np.floor(poly[:, 1].min() - 0.5)))
    y_max = min(h - 1, int(np.ceil(poly[:, 1].max())))
    if x_min > x_max or y_min > y_max:
        return set()

    xs = np.arange(x_min, x_max + 1) + 0.5
    ys = np.arange(y_min, y_max + 1) + 0.5
    gx, gy = np.meshgrid(xs, ys)
    inside = np.zeros(gx.shape, dtype=bool)
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        crosses = (y1 > gy) != (y2 > gy)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_cross = x1 + (gy - y1) * (x2 - x1) / (y2 - y1)
        inside ^= crosses & (gx < x_cross)
    py, px = np.nonzero(inside)
    return {(int(x_min + x), int(y_min + y)) for x, y in zip(px, py)}


def _region_id(raw: Any, index: int) -> str:
    rid = raw.get("id") if isinstance(raw, dict) else None
    if isinstance(rid, str) and rid:
        return rid
    return f"region[{index}]"


def parse_label_file(raw: Any) -> tuple[LabelFile | None, list[Violation]]:
    """Total parse+validate of an arbitrary decoded JSON value.

    Never raises; returns (file, []) on success or (None, violations).
    Every violation names a region id (file-level issues use '<file>').
    """
    violations: list[Violation] = []
    if not isinstance(raw, dict):
        return None, [Violation("<file>", "root", "expected a JSON object")]
    regions_raw = raw.get("regions")
    if not isinstance(regions_raw, list):
        return None, [Violation("<file>", "regions", "expected an array")]

    regions: list[RegionLabel] = []
    seen_ids: set[str] = set()
    for i, entry in enumerate(regions_raw):
        rid = _region_id(entry, i)
        if not isinstance(entry, dict):
            violations.append(Violation(rid, "region", "expected an object"))
            continue
        if rid in seen_ids:
            violations.append(Violation(rid, "id", "duplicate region id"))
            continue
        seen_ids.add(rid)
        try:
            label = MotionLabel.parse(entry.get("label"))
        except (ValueError, TypeError):
            violations.append(
                Violation(rid, "label", f"unrecognized label {entry.get('label')!r}")
            )
            continue
        poly_raw = entry.get("polygon")
        polygon = _parse_polygon(poly_raw)
        if polygon is None:
            violations.append(Violation(rid, "polygon", "expected [[x, y], ...]"))
            continue
        if len(polygon) < 3:
            violations.append(Violation(rid, "polygon", "needs at least 3 vertices"))
            continue
        if abs(polygon_area(polygon)) < 1e-12:
            violations.append(Violation(rid, "polygon", "zero area"))
            continue
        if not polygon_is_simple(polygon):
            violations.append(Violation(rid, "polygon", "self-intersecting"))
            continue
        fr = entry.get("frame_range", None)
        frame_range = _parse_frame_range(fr)
        if frame_range is None:
            violations.append(
                Violation(rid, "frame_range", f"expected [start, end), got {fr!r}")
            )
            continue
        regions.append(
            RegionLabel(id=rid, label=label, polygon=polygon, frame_range=frame_range)
        )
    if violations:
        return None, violations
    return (
        LabelFile(
            video_ref=str(raw.get("video_ref", "")),
            regions=tuple(regions),
            author=str(raw.get("author", "")),
            created_at=str(raw.get("created_at", "")),
        ),
        [],
    )


def _parse_polygon(raw: Any) -> tuple[tuple[float, float], ...] | None:
    if not isinstance(raw, list):
        return None
    out = []
    for v in raw:
        if not isinstance(v, (list, tuple)) or len(v) != 2:
            return None
        try:
            x, y = float(v[0]), float(v[1])
        except (TypeError, ValueError):
            return None
        if not (np.isfinite(x) and np.isfinite(y)):
            return None
        out.append((x, y))
    return tuple(out)


def _parse_frame_range(raw: Any) -> tuple[int, int] | None:
    if raw is None:
        return (0, -1)  # sentinel: whole video, resolved at validation
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        return None
    try:
        start, end = int(raw[0]), int(raw[1])
    except (TypeError, ValueError):
        return None
    if start < 0 or end <= start:
        return None
    return (start, end)


def validate_label_file(
    file: LabelFile, seq_dims: tuple[int, int], frame_count: int
) -> tuple[LabelFile | None, list[Violation]]:
    """Check regions against the video geometry; resolves whole-video ranges."""
    w, h = seq_dims
    violations: list[Violation] = []
    resolved: list[RegionLabel] = []
    for region in file.regions:
        ok = True
        for j, (x, y) in enumerate(region.polygon):
            if not (0 <= x <= w and 0 <= y <= h):
                violations.append(
                    Violation(
                        region.id,
                        "polygon",
                        f"vertex {j} ({x}, {y}) outside frame {w}x{h}",
                    )
                )
                ok = False
        start, end = region.frame_range
        if end == -1:
            start, end = 0, frame_count
        if not (0 <= start < end <= frame_count):
            violations.append(
                Violation(
                    region.id,
                    "frame_range",
                    f"[{start}, {end}) outside [0, {frame_count})",
                )
            )
            ok = False
        if ok:
            resolved.append(
                RegionLabel(
                    id=region.id,
                    label=region.label,
                    polygon=region.polygon,
                    frame_range=(start, end),
                )
            )
    if violations:
        return None, violations
    return (
        LabelFile(
            video_ref=file.video_ref,
            regions=tuple(resolved),
            author=file.author,
            created_at=file.created_at,
        ),
        [],
    )


def load_label_file(path: str) -> tuple[LabelFile | None, list[Violation]]:
    """Parse a label JSON file from disk; total (never raises on bad content)."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return None, [Violation("<file>", "file", str(exc))]
    return parse_label_file(raw)


def label_file_to_json(file: LabelFile) -> dict:
    return {
        "video_ref": file.video_ref,
        "author": file.author,
        "created_at": file.created_at,
        "regions": [
            {
                "id": r.id,
                "label": r.label.value,
                "polygon": [[x, y] for x, y in r.polygon],
                "frame_range": list(r.frame_range),
            }
            for r in file.regions
        ],
    }


def save_label_file(file: LabelFile, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(label_file_to_json(file), fh, indent=2)
