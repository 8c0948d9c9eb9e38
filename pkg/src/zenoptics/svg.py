"""Self-contained SVG line charts (no external resources, deterministic bytes)."""

import math
from dataclasses import dataclass, field

import numpy as np

COLORS = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#17becf",
    "#bcbd22",
]


@dataclass
class PlotSpec:
    """Line chart description.

    ``series`` is a list of ``(name, points)`` with ``points`` an iterable of
    ``(x, y)``. ``y_range`` defaults to ``(0, 1.05 * max y)``.
    """

    series: list
    width: int = 800
    height: int = 600
    title: str = ""
    x_label: str = "x"
    y_label: str = "y"
    y_range: tuple = None
    log_x: bool = False
    dashed: set = field(default_factory=set)


def _escape(text):
    return (
        str(text)
        .replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _fmt(v):
    return f"{v:.2f}"


def _tick_label(v):
    return f"{v:.6g}"


def nice_ticks(lo, hi, target=6):
    """Round-number ticks covering ``[lo, hi]``."""
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [round(k * step, 12) for k in range(first, last + 1)]


def emit_svg(spec):
    if not spec.series:
        raise ValueError("PlotSpec needs at least one series")
    data = []
    for name, points in spec.series:
        pts = np.asarray(list(points), dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            raise ValueError(f"series {name!r} is empty")
        if not np.all(np.isfinite(pts)):
            raise ValueError(f"series {name!r} has non-finite points")
        if spec.log_x and np.any(pts[:, 0] <= 0):
            raise ValueError(f"series {name!r} has x <= 0 on a log axis")
        data.append((name, pts))

    xs = np.concatenate([p[:, 0] for _, p in data])
    ys = np.concatenate([p[:, 1] for _, p in data])
    tx = np.log10 if spec.log_x else (lambda v: v)
    x_lo, x_hi = float(tx(xs.min())), float(tx(xs.max()))
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if spec.y_range is not None:
        y_lo, y_hi = spec.y_range
    else:
        y_lo, y_hi = 0.0, 1.05 * float(ys.max())
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0

    W, H = spec.width, spec.height
    left, right, top, bottom = 80, W - 170, 50, H - 70
    pw, ph = right - left, bottom - top

    def px(x):
        return left + (tx(x) - x_lo) / (x_hi - x_lo) * pw

    def py(y):
        return bottom - (y - y_lo) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>',
    ]
    if spec.title:
        out.append(
            f'<text x="{_fmt(W / 2)}" y="28" text-anchor="middle" font-family="sans-serif" '
            f'font-size="18">{_escape(spec.title)}</text>'
        )

    out.append('<g class="axes" stroke="#000000" stroke-width="1">')
    out.append(f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}"/>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}"/>')
    out.append("</g>")

    out.append('<g class="ticks" font-family="sans-serif" font-size="12">')
    if spec.log_x:
        x_ticks = [10.0**k for k in range(math.ceil(x_lo - 1e-9), math.floor(x_hi + 1e-9) + 1)]
    else:
        x_ticks = nice_ticks(x_lo, x_hi)
    for t in x_ticks:
        x = px(t)
        out.append(f'<line x1="{_fmt(x)}" y1="{bottom}" x2="{_fmt(x)}" y2="{bottom + 5}" stroke="#000000"/>')
        out.append(f'<text x="{_fmt(x)}" y="{bottom + 20}" text-anchor="middle">{_tick_label(t)}</text>')
    for t in nice_ticks(y_lo, y_hi):
        y = py(t)
        out.append(f'<line x1="{left - 5}" y1="{_fmt(y)}" x2="{left}" y2="{_fmt(y)}" stroke="#000000"/>')
        out.append(f'<text x="{left - 8}" y="{_fmt(y + 4)}" text-anchor="end">{_tick_label(t)}</text>')
    out.append("</g>")

    out.append(
        f'<text x="{_fmt(left + pw / 2)}" y="{H - 25}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14">{_escape(spec.x_label)}</text>'
    )
    out.append(
        f'<text x="20" y="{_fmt(top + ph / 2)}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14" transform="rotate(-90 20 {_fmt(top + ph / 2)})">{_escape(spec.y_label)}</text>'
    )

    out.append('<g class="series" fill="none" stroke-width="1.5">')
    for k, (name, pts) in enumerate(data):
        color = COLORS[k % len(COLORS)]
        coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in pts)
        dash = ' stroke-dasharray="6,4"' if name in spec.dashed else ""
        out.append(f'<polyline stroke="{color}"{dash} points="{coords}"/>')
    out.append("</g>")

    out.append('<g class="legend" font-family="sans-serif" font-size="12">')
    for k, (name, _) in enumerate(data):
        color = COLORS[k % len(COLORS)]
        y = top + 10 + 20 * k
        dash = ' stroke-dasharray="6,4"' if name in spec.dashed else ""
        out.append(
            f'<g class="legend-entry"><line x1="{right + 15}" y1="{y}" x2="{right + 45}" y2="{y}" '
            f'stroke="{color}" stroke-width="2"{dash}/>'
            f'<text x="{right + 52}" y="{y + 4}">{_escape(name)}</text></g>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
