"""Minimal deterministic SVG line plots.

Plots are pure functions of their input series: identical data gives a
byte-identical file. :func:`plot_csv` renders straight from a CSV so that a
figure can always be regenerated from the data that was saved.
"""

import csv
import math

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")

WIDTH, HEIGHT = 640, 400
LEFT, RIGHT, TOP, BOTTOM = 70, 160, 30, 50


def _fmt(v):
    return f"{v:.6g}"


def _ticks(lo, hi, n=5):
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def line_plot(series, title="", xlabel="", ylabel="", logy=False, markers=()):
    """Render ``series`` (name -> (xs, ys)) as an SVG document string.

    Names listed in ``markers`` are drawn as points instead of lines. With
    ``logy`` non-positive values are dropped.
    """
    pts = {}
    for name, (xs, ys) in series.items():
        keep = []
        for x, y in zip(xs, ys):
            if x is None or y is None or not math.isfinite(x) or not math.isfinite(y):
                continue
            if logy:
                if y <= 0:
                    continue
                y = math.log10(y)
            keep.append((float(x), float(y)))
        pts[name] = keep
    allx = [p[0] for v in pts.values() for p in v] or [0.0, 1.0]
    ally = [p[1] for v in pts.values() for p in v] or [0.0, 1.0]
    x0, x1 = min(allx), max(allx)
    y0, y1 = min(ally), max(ally)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(x):
        return LEFT + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return TOP + ph - (y - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
           f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
           f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{_fmt(sx(t))}" y1="{TOP + ph}" x2="{_fmt(sx(t))}" y2="{TOP + ph + 4}" stroke="black"/>')
        out.append(f'<text x="{_fmt(sx(t))}" y="{TOP + ph + 16}" text-anchor="middle">{_fmt(t)}</text>')
    for t in _ticks(y0, y1):
        label = f"1e{_fmt(t)}" if logy else _fmt(t)
        out.append(f'<line x1="{LEFT - 4}" y1="{_fmt(sy(t))}" x2="{LEFT}" y2="{_fmt(sy(t))}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 6}" y="{_fmt(sy(t) + 4)}" text-anchor="end">{label}</text>')
    for k, (name, p) in enumerate(pts.items()):
        colour = PALETTE[k % len(PALETTE)]
        if name in markers:
            for x, y in p:
                out.append(f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="3" fill="{colour}"/>')
        elif p:
            coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in p)
            out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{coords}"/>')
        ly = TOP + 14 + 16 * k
        out.append(f'<rect x="{WIDTH - RIGHT + 10}" y="{ly - 8}" width="12" height="4" fill="{colour}"/>')
        out.append(f'<text x="{WIDTH - RIGHT + 26}" y="{ly - 3}">{_escape(name)}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.6g}" y="{TOP - 10}" text-anchor="middle" font-size="13">{_escape(title)}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.6g}" y="{HEIGHT - 12}" text-anchor="middle">{_escape(xlabel)}</text>')
    yl = ylabel + (" (log10)" if logy and ylabel else "")
    out.append(f'<text x="16" y="{TOP + ph / 2:.6g}" text-anchor="middle" '
               f'transform="rotate(-90 16 {TOP + ph / 2:.6g})">{_escape(yl)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s):
    return str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def read_columns(path):
    """CSV file as a dict of column name -> list of floats (None for blanks/non-numbers)."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    cols = {}
    for row in rows:
        for k, v in row.items():
            try:
                val = float(v)
            except (TypeError, ValueError):
                val = None
            cols.setdefault(k, []).append(val)
    return cols, rows


def plot_csv(csv_path, svg_path, x, ys, group=None, title="", logy=False, markers=()):
    """Plot columns ``ys`` against ``x`` from a CSV file.

    With ``group`` the rows are split into one series per distinct value of
    that (text) column and ``ys`` must hold a single column name.
    """
    cols, rows = read_columns(csv_path)
    series = {}
    if group is None:
        for y in ys:
            series[y] = (cols[x], cols[y])
    else:
        (y,) = ys
        for row, xv, yv in zip(rows, cols[x], cols[y]):
            xs, vs = series.setdefault(row[group], ([], []))
            xs.append(xv)
            vs.append(yv)
    doc = line_plot(series, title=title, xlabel=x, ylabel=ys[0] if len(ys) == 1 else "", logy=logy,
                    markers=markers)
    with open(svg_path, "w") as fh:
        fh.write(doc)
    return doc
