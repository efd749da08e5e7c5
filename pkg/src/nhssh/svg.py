"""Minimal static SVG output: line/scatter plots and rectangle rasters.

These are previews; the CSV/JSON files carry the data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
REGION_COLORS = {
    "trivial": "#f2d33c",
    "nontrivial_real_line_gapped": "#d62728",
    "nontrivial_complex": "#1f3b8c",
    "nontrivial_partial_reZero": "#8fc7ef",
    "nontrivial_all_imaginary": "#f4a6c8",
    "boundary": "#ffffff",
}

W, H = 480, 360
ML, MR, MT, MB = 64, 16, 28, 48


def _fmt(x: float) -> str:
    return f"{x:.2f}"


@dataclass
class Axes:
    xlim: tuple
    ylim: tuple
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    body: list = field(default_factory=list)

    def _x(self, x):
        x0, x1 = self.xlim
        return ML + (np.asarray(x, dtype=float) - x0) / ((x1 - x0) or 1.0) * (W - ML - MR)

    def _y(self, y):
        y0, y1 = self.ylim
        return H - MB - (np.asarray(y, dtype=float) - y0) / ((y1 - y0) or 1.0) * (H - MT - MB)

    def line(self, xs, ys, color=PALETTE[0], width=1.5):
        px, py = self._x(xs), self._y(ys)
        ok = np.isfinite(px) & np.isfinite(py)
        pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(px[ok], py[ok]))
        self.body.append(f'<polyline fill="none" stroke="{color}" stroke-width="{width}" points="{pts}"/>')

    def scatter(self, xs, ys, color=PALETTE[0], r=1.2):
        px, py = self._x(xs), self._y(ys)
        for a, b in zip(px, py):
            if np.isfinite(a) and np.isfinite(b):
                self.body.append(f'<circle cx="{_fmt(a)}" cy="{_fmt(b)}" r="{r}" fill="{color}"/>')

    def raster(self, xs, ys, colors):
        """``colors[i][j]`` fills the cell centred on (xs[i], ys[j])."""
        xs, ys = np.asarray(xs, float), np.asarray(ys, float)
        dx = (xs[1] - xs[0]) if xs.size > 1 else 1.0
        dy = (ys[1] - ys[0]) if ys.size > 1 else 1.0
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                x0, x1 = self._x(x - dx / 2), self._x(x + dx / 2)
                y0, y1 = self._y(y + dy / 2), self._y(y - dy / 2)
                self.body.append(
                    f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(x1 - x0 + 0.3)}" '
                    f'height="{_fmt(y1 - y0 + 0.3)}" fill="{colors[i][j]}"/>')

    def render(self) -> str:
        x0, x1 = self.xlim
        y0, y1 = self.ylim
        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
               f'viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">',
               f'<rect width="{W}" height="{H}" fill="white"/>']
        out.extend(self.body)
        out.append(f'<rect x="{ML}" y="{MT}" width="{W - ML - MR}" height="{H - MT - MB}" '
                   'fill="none" stroke="black"/>')
        for v in np.linspace(x0, x1, 5):
            px = self._x(v)
            out.append(f'<text x="{_fmt(px)}" y="{H - MB + 14}" text-anchor="middle">{v:.3g}</text>')
        for v in np.linspace(y0, y1, 5):
            py = self._y(v)
            out.append(f'<text x="{ML - 4}" y="{_fmt(py + 4)}" text-anchor="end">{v:.3g}</text>')
        out.append(f'<text x="{(W + ML) / 2}" y="{H - 10}" text-anchor="middle">{escape(self.xlabel)}</text>')
        out.append(f'<text x="14" y="{(H + MT - MB) / 2}" text-anchor="middle" '
                   f'transform="rotate(-90 14 {(H + MT - MB) / 2})">{escape(self.ylabel)}</text>')
        out.append(f'<text x="{(W + ML) / 2}" y="18" text-anchor="middle">{escape(self.title)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.render(), encoding="utf-8")
        return path


def padded_limits(values, pad: float = 0.05) -> tuple:
    v = np.asarray(values, dtype=float)
    v = v[np.isfinite(v)]
    if v.size == 0:
        return (-1.0, 1.0)
    lo, hi = float(v.min()), float(v.max())
    if hi - lo < 1e-12:
        lo, hi = lo - 1.0, hi + 1.0
    span = hi - lo
    return (lo - pad * span, hi + pad * span)


def heat_color(v: float, vmax: float) -> str:
    """White (0) to dark blue (vmax) ramp for gap maps."""
    f = 0.0 if vmax <= 0 or not np.isfinite(v) else min(1.0, max(0.0, v / vmax))
    r = int(255 - f * (255 - 20))
    g = int(255 - f * (255 - 50))
    b = int(255 - f * (255 - 140))
    return f"#{r:02x}{g:02x}{b:02x}"
