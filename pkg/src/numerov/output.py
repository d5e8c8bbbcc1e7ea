"""Eigenvalue table, wavefunction CSV and spectrum SVG writers.

Numbers are written with ``repr`` (shortest string that round-trips), so two
runs of the same configuration produce byte-identical files.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .potentials import eps_to_ev

SVG_WIDTH = 900
SVG_HEIGHT = 600
_MARGIN = 50
_MAX_POLYLINE_POINTS = 1200
_STATE_COLOURS = ("#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b",
                  "#e377c2", "#7f7f7f", "#bcbd22")


def write_eigenvalues(path: Path, solutions, with_ev: bool):
    header = ["index", "eps"] + (["E_eV"] if with_ev else []) + ["g_final", "iters"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(header)
        for s in solutions:
            row = [s.index, repr(float(s.eps))]
            if with_ev:
                row.append(repr(float(eps_to_ev(s.eps))))
            row += [repr(float(s.g_final)), s.bisect_iters]
            writer.writerow(row)


def write_wavefunctions(path: Path, x: np.ndarray, solutions):
    columns = [x] + [s.psi for s in solutions]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x"] + [f"psi{k}" for k in range(len(solutions))])
        for row in zip(*columns):
            writer.writerow([repr(float(v)) for v in row])


def _polyline(xs, ys, to_px, colour, width):
    stride = max(1, -(-len(xs) // _MAX_POLYLINE_POINTS))
    idx = np.r_[np.arange(0, len(xs), stride), len(xs) - 1]
    pts = " ".join("%.2f,%.2f" % to_px(xs[i], ys[i]) for i in np.unique(idx))
    return (f'<polyline fill="none" stroke="{colour}" stroke-width="{width}" '
            f'points="{pts}"/>')


def write_spectrum_svg(path: Path, x: np.ndarray, v: np.ndarray, solutions, title: str = ""):
    """Potential curve with each state drawn around a baseline at its energy."""
    levels = np.array([s.eps for s in solutions], dtype=float)
    v_floor = float(np.min(v))
    if levels.size > 1:
        spacing = float(np.min(np.diff(np.sort(levels))))
    elif levels.size == 1:
        spacing = float(levels[0] - v_floor)
    else:
        spacing = 1.0
    spacing = spacing if spacing > 0 else 1.0
    peak = max((float(np.max(np.abs(s.psi))) for s in solutions), default=1.0) or 1.0
    amp = 0.4 * spacing / peak

    lo = min(v_floor, float(levels.min()) - spacing) if levels.size else v_floor
    hi = float(levels.max()) + spacing if levels.size else v_floor + 1.0
    x0, x1 = float(x[0]), float(x[-1])
    plot_w = SVG_WIDTH - 2 * _MARGIN
    plot_h = SVG_HEIGHT - 2 * _MARGIN

    def to_px(xv, yv):
        px = _MARGIN + (xv - x0) / (x1 - x0) * plot_w
        py = _MARGIN + (hi - yv) / (hi - lo) * plot_h
        return px, py

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" '
        f'width="{SVG_WIDTH}" height="{SVG_HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black"/>',
    ]
    if title:
        parts.append(f'<text x="{SVG_WIDTH / 2}" y="{_MARGIN / 2}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="16">{title}</text>')
    parts.append(_polyline(x, np.clip(v, lo, hi), to_px, "#d62728", 2))
    for k, s in enumerate(solutions):
        colour = _STATE_COLOURS[k % len(_STATE_COLOURS)]
        (bx0, by), (bx1, _) = to_px(x0, s.eps), to_px(x1, s.eps)
        parts.append(f'<line x1="{bx0:.2f}" y1="{by:.2f}" x2="{bx1:.2f}" y2="{by:.2f}" '
                     'stroke="#cccccc" stroke-dasharray="4 4"/>')
        parts.append(_polyline(x, s.eps + amp * s.psi, to_px, colour, 1.5))
        parts.append(f'<text x="{SVG_WIDTH - _MARGIN + 4}" y="{by + 4:.2f}" '
                     f'font-family="sans-serif" font-size="11">{s.eps:.4g}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


def write_outputs(report, solutions, cfg, model=None, grid=None) -> list[Path]:
    """Write the table, the CSV and (optionally) the SVG into ``cfg.out_dir``."""
    if model is None or grid is None:
        from .config import build_problem
        model, grid = build_problem(cfg)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = [out / "eigenvalues.tsv", out / "wavefunctions.csv"]
    write_eigenvalues(written[0], solutions, with_ev=cfg.problem == "hydrogen")
    write_wavefunctions(written[1], grid.x, solutions)
    if cfg.emit_svg:
        svg = out / "spectrum.svg"
        title = cfg.problem + (f", l = {cfg.l}" if cfg.problem == "hydrogen" else "")
        write_spectrum_svg(svg, grid.x, model.potential(grid.x), solutions, title=title)
        written.append(svg)
    return written
