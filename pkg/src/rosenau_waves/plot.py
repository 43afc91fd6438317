"""Minimal static SVG line plots (profile and phase portrait)."""
from __future__ import annotations

import numpy as np

W, H, PAD = 640, 400, 50


def _ticks(lo, hi, n=5):
    return np.linspace(lo, hi, n)


def write_svg(path, x, y, xlabel="x", ylabel="y", title=None) -> None:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x0, x1 = float(x.min()), float(x.max())
    y0, y1 = float(y.min()), float(y.max())
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    sx = (W - 2 * PAD) / (x1 - x0)
    sy = (H - 2 * PAD) / (y1 - y0)
    px = PAD + (x - x0) * sx
    py = H - PAD - (y - y0) * sy
    pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<rect x="{PAD}" y="{PAD}" width="{W - 2 * PAD}" height="{H - 2 * PAD}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        tx = PAD + (t - x0) * sx
        out.append(f'<text x="{tx:.1f}" y="{H - PAD + 16}" font-size="11" text-anchor="middle">{t:.3g}</text>')
    for t in _ticks(y0, y1):
        ty = H - PAD - (t - y0) * sy
        out.append(f'<text x="{PAD - 6}" y="{ty + 4:.1f}" font-size="11" text-anchor="end">{t:.3g}</text>')
    out.append(f'<text x="{W / 2}" y="{H - 10}" font-size="13" text-anchor="middle">{xlabel}</text>')
    out.append(f'<text x="14" y="{H / 2}" font-size="13" text-anchor="middle" '
               f'transform="rotate(-90 14 {H / 2})">{ylabel}</text>')
    if title:
        out.append(f'<text x="{W / 2}" y="{PAD - 15}" font-size="14" text-anchor="middle">{title}</text>')
    out.append(f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1.2" points="{pts}"/>')
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")
