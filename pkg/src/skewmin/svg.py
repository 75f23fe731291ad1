"""Tiny SVG 1.1 emitter for single-panel x-y comparison charts."""
import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 400
MARGIN = dict(left=70, right=20, top=40, bottom=50)


def _ticks(lo, hi, count=5):
    if hi == lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw), default=raw)
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * abs(step):
        ticks.append(round(t, 12))
        t += step
    return ticks


def line_chart(x, line=None, markers=None, title="", xlabel="", ylabel="",
               line_label="analytic", marker_label="numeric"):
    """Return SVG text: `line` drawn as a polyline, `markers` as crosses.

    Missing values (None / NaN) are skipped.
    """
    def ok(v):
        return v is not None and not (isinstance(v, float) and math.isnan(v))

    ys = [v for series in (line, markers) if series for v in series if ok(v)]
    xs = [v for v in x if ok(v)]
    x_lo, x_hi = (min(xs), max(xs)) if xs else (0.0, 1.0)
    y_lo, y_hi = (min(ys), max(ys)) if ys else (0.0, 1.0)
    if y_hi - y_lo < 1e-12:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5

    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(v):
        return MARGIN["left"] + (v - x_lo) / (x_hi - x_lo) * pw

    def sy(v):
        return MARGIN["top"] + (1 - (v - y_lo) / (y_hi - y_lo)) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{escape(title)}</text>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
        f'fill="none" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        px = sx(t)
        out.append(f'<line x1="{px:.2f}" y1="{MARGIN["top"] + ph}" x2="{px:.2f}" '
                   f'y2="{MARGIN["top"] + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{MARGIN["top"] + ph + 18}" '
                   f'text-anchor="middle" font-family="sans-serif" '
                   f'font-size="11">{t:g}</text>')
    for t in _ticks(y_lo, y_hi):
        py = sy(t)
        out.append(f'<line x1="{MARGIN["left"] - 5}" y1="{py:.2f}" '
                   f'x2="{MARGIN["left"]}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN["left"] - 8}" y="{py + 4:.2f}" '
                   f'text-anchor="end" font-family="sans-serif" '
                   f'font-size="11">{t:g}</text>')
    out.append(f'<text x="{MARGIN["left"] + pw / 2:.1f}" y="{HEIGHT - 10}" '
               f'text-anchor="middle" font-family="sans-serif" '
               f'font-size="13">{escape(xlabel)}</text>')
    out.append(f'<text x="16" y="{MARGIN["top"] + ph / 2:.1f}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13" '
               f'transform="rotate(-90 16 {MARGIN["top"] + ph / 2:.1f})">'
               f'{escape(ylabel)}</text>')

    if line:
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, line)
                       if ok(a) and ok(b))
        if pts:
            out.append(f'<polyline points="{pts}" fill="none" stroke="#1f77b4" '
                       f'stroke-width="1.5"/>')
    if markers:
        for a, b in zip(x, markers):
            if not (ok(a) and ok(b)):
                continue
            px, py = sx(a), sy(b)
            out.append(f'<path d="M{px - 4:.2f},{py:.2f}H{px + 4:.2f}'
                       f'M{px:.2f},{py - 4:.2f}V{py + 4:.2f}" stroke="#d62728" '
                       f'stroke-width="1.2"/>')

    lx, ly = MARGIN["left"] + pw - 130, MARGIN["top"] + 16
    if line:
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" '
                   f'stroke="#1f77b4" stroke-width="1.5"/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}" font-family="sans-serif" '
                   f'font-size="11">{escape(line_label)}</text>')
        ly += 16
    if markers:
        out.append(f'<path d="M{lx + 8},{ly}H{lx + 16}M{lx + 12},{ly - 4}V{ly + 4}" '
                   f'stroke="#d62728" stroke-width="1.2"/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}" font-family="sans-serif" '
                   f'font-size="11">{escape(marker_label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def suite_chart(rows, title=""):
    x = [r.param_value for r in rows]
    analytic = [r.analytic for r in rows]
    has_line = any(v is not None for v in analytic)
    return line_chart(x, analytic if has_line else None,
                      [r.numeric for r in rows], title=title,
                      xlabel=rows[0].param_name if rows else "", ylabel="U")
