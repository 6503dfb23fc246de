"""Minimal SVG line charts: axes, ticks, one polyline per series, legend."""

import math
from xml.sax.saxutils import escape

from .sweep import SweepResult

WIDTH, HEIGHT = 720, 480
MARGIN = dict(left=80, right=190, top=40, bottom=60)
PALETTE = ["#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
DASHES = ["", "6,3", "2,2", "8,3,2,3"]


def y_columns(result: SweepResult):
    """Columns plotted against the sweep axis."""
    branches = [c for c in result.columns if c.startswith("branch_")]
    if branches:
        return branches
    if "gamma" in result.columns:
        return ["gamma"]
    return [c for c in result.columns if c.startswith("omega_")]


def _ticks(lo, hi, n=5):
    if hi == lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-9 * step:
        out.append(round(v, 12))
        v += step
    return out


def _fmt(v):
    return f"{v:.4g}"


def render_svg(result: SweepResult, title=None, log_y=None) -> str:
    """SVG document for ``result``; rates default to a logarithmic y axis."""
    xcol = result.columns[1]
    ycols = y_columns(result)
    if log_y is None:
        log_y = ycols == ["gamma"]
    series = []
    for i, overlay in enumerate(result.overlay_values):
        rows = [r for r in result.rows if r["overlay_E_M"] == overlay]
        for j, yc in enumerate(ycols):
            pts = []
            for r in rows:
                x, y = r[xcol], r[yc]
                if not isinstance(y, float) or not math.isfinite(y) or (log_y and y <= 0):
                    continue
                pts.append((x, math.log10(y) if log_y else y))
            label = f"E_M={_fmt(overlay)} {yc}" if len(ycols) > 1 else f"E_M={_fmt(overlay)}"
            series.append((label, PALETTE[i % len(PALETTE)], DASHES[j % len(DASHES)], pts))
    xs = [p[0] for s in series for p in s[3]] or [0.0, 1.0]
    ys = [p[1] for s in series for p in s[3]] or [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(x):
        return MARGIN["left"] + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return MARGIN["top"] + (1 - (y - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle">{escape(title)}</text>')
    for t in _ticks(x0, x1):
        X = sx(t)
        out.append(f'<line x1="{X:.2f}" y1="{MARGIN["top"] + ph}" x2="{X:.2f}" '
                   f'y2="{MARGIN["top"] + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{X:.2f}" y="{MARGIN["top"] + ph + 20}" '
                   f'text-anchor="middle">{_fmt(t)}</text>')
    for t in _ticks(y0, y1):
        Y = sy(t)
        label = f"1e{_fmt(t)}" if log_y else _fmt(t)
        out.append(f'<line x1="{MARGIN["left"] - 5}" y1="{Y:.2f}" x2="{MARGIN["left"]}" '
                   f'y2="{Y:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN["left"] - 8}" y="{Y + 4:.2f}" text-anchor="end">{label}</text>')
    ylabel = ycols[0] if len(ycols) == 1 else "frequency (GHz)"
    out.append(f'<text x="{MARGIN["left"] + pw / 2:.1f}" y="{HEIGHT - 15}" '
               f'text-anchor="middle">{escape(xcol)}</text>')
    out.append(f'<text x="18" y="{MARGIN["top"] + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {MARGIN["top"] + ph / 2:.1f})">{escape(ylabel)}</text>')
    for label, color, dash, pts in series:
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} '
                   f'points="{coords}"><title>{escape(label)}</title></polyline>')
    lx = WIDTH - MARGIN["right"] + 12
    for k, (label, color, dash, _) in enumerate(series):
        y = MARGIN["top"] + 10 + 16 * k
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<line x1="{lx}" y1="{y}" x2="{lx + 24}" y2="{y}" stroke="{color}" '
                   f'stroke-width="1.5"{dash_attr}/>')
        out.append(f'<text x="{lx + 30}" y="{y + 4}" font-size="10">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(result: SweepResult, path, title=None, log_y=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(result, title=title, log_y=log_y))
