"""Atomic CSV / JSON / SVG writers."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .arcs import ArcSet, ZeroSet

ZERO_HEADER = ("index", "theta", "re", "im", "multiplicity")
SVG_SIZE = 800
_CENTER = SVG_SIZE / 2
_RADIUS = 300.0
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def dumps_json(report) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"


def csv_text(records, header=ZERO_HEADER) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for rec in records:
        writer.writerow([repr(rec[k]) if isinstance(rec[k], float) else rec[k] for k in header])
    return buf.getvalue()


def emit_csv(records, path, header=ZERO_HEADER) -> None:
    atomic_write(path, csv_text(records, header))


def emit_json(report, path) -> None:
    if not isinstance(report, dict):
        raise TypeError("JSON report must be a single object")
    atomic_write(path, dumps_json(report))


def _xy(theta: float, r: float = _RADIUS) -> tuple:
    # SVG's y axis points down
    return _CENTER + r * math.cos(theta), _CENTER - r * math.sin(theta)


def _arc_path(start: float, end: float) -> str:
    x1, y1 = _xy(start)
    x2, y2 = _xy(end)
    large = 1 if end - start > math.pi else 0
    return (f"M {x1:.3f} {y1:.3f} A {_RADIUS:.3f} {_RADIUS:.3f} 0 {large} 0 "
            f"{x2:.3f} {y2:.3f}")


def svg_circle_text(zero_sets=(), arc_sets=(), labels=()) -> str:
    """Unit circle with arcs as thick strokes and zeros as dots."""
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
        f'<circle cx="{_CENTER:.3f}" cy="{_CENTER:.3f}" r="{_RADIUS:.3f}" fill="none" '
        'stroke="#bbbbbb" stroke-width="1"/>',
    ]
    labels = list(labels)
    color = 0
    legend = []
    for arcs in arc_sets:
        c = _COLORS[color % len(_COLORS)]
        for s, e in arcs.arcs:
            if e - s >= 2 * math.pi:
                lines.append(f'<circle class="arc" cx="{_CENTER:.3f}" cy="{_CENTER:.3f}" '
                             f'r="{_RADIUS:.3f}" fill="none" stroke="{c}" stroke-width="8"/>')
            else:
                lines.append(f'<path class="arc" d="{_arc_path(s, e)}" fill="none" '
                             f'stroke="{c}" stroke-width="8"/>')
        legend.append(c)
        color += 1
    for zs in zero_sets:
        c = _COLORS[color % len(_COLORS)]
        for t in zs.angles:
            x, y = _xy(float(t))
            lines.append(f'<circle class="zero" cx="{x:.3f}" cy="{y:.3f}" r="4" fill="{c}"/>')
        legend.append(c)
        color += 1
    for i, (c, text) in enumerate(zip(legend, labels)):
        y = 24 + 20 * i
        lines.append(f'<rect x="16" y="{y - 10}" width="12" height="12" fill="{c}"/>')
        lines.append(f'<text x="34" y="{y}" font-family="sans-serif" font-size="14">'
                     f'{_escape(str(text))}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def emit_svg_circle(zero_sets, arc_sets, path, labels=()) -> None:
    zero_sets = [z for z in zero_sets if isinstance(z, ZeroSet)]
    arc_sets = [a for a in arc_sets if isinstance(a, ArcSet)]
    atomic_write(path, svg_circle_text(zero_sets, arc_sets, labels))
