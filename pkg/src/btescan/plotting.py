"""Deterministic SVG rendering of eigenvalue scans.

The scatter shows every refined eigenvalue in the k-plane, colored by
mode index, with the real axis drawn and the empirical eigenvalue-free
strip |Im k| < strip_margin shaded. Output bytes are reproducible for
a fixed input: the SVG hash salt is pinned and date metadata removed.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .types import ScanReport

__all__ = ["plot_report"]


def plot_report(report: ScanReport, out_path) -> Path:
    """Render a ScanReport to an SVG file; returns the written path."""
    out_path = Path(out_path)
    with plt.rc_context({"svg.hashsalt": "btescan", "figure.dpi": 100}):
        fig, ax = plt.subplots(figsize=(8.0, 4.5))
        box = report.box
        ax.set_xlim(box.re_min, box.re_max)
        pad = 0.05 * max(box.im_max - box.im_min, 1.0)
        ax.set_ylim(box.im_min - pad, box.im_max + pad)

        margin = report.strip_margin
        if np.isfinite(margin) and margin > 0:
            label = ("empirical eigenvalue-free strip"
                     if not report.strip_margin_vacuous
                     else "vacuous strip (no eigenvalues found)")
            ax.axhspan(-margin, margin, color="0.85", zorder=0, label=label)
        ax.axhline(0.0, color="0.4", lw=0.8, zorder=1)

        if report.records:
            modes = sorted({rec.mode.n for rec in report.records})
            cmap = plt.get_cmap("viridis")
            for idx, n in enumerate(modes):
                pts = [rec.k for rec in report.records if rec.mode.n == n]
                color = cmap(idx / max(len(modes) - 1, 1))
                ax.scatter([k.real for k in pts], [k.imag for k in pts],
                           s=14, color=color, zorder=2,
                           label=f"n={n}" if len(modes) <= 12 else None)
            if len(modes) > 12:
                ax.scatter([], [], s=14, color=cmap(0.0),
                           label=f"modes n=0..{modes[-1]}")
        else:
            ax.annotate("no eigenvalues in box", (0.5, 0.5),
                        xycoords="axes fraction", ha="center", color="0.3")

        ax.set_xlabel("Re k")
        ax.set_ylabel("Im k")
        ax.set_title(f"transmission eigenvalues, d={report.d}, "
                     f"n <= {report.n_max_used}")
        ax.legend(loc="upper right", fontsize=8, framealpha=0.9)
        fig.tight_layout()
        fig.savefig(out_path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return out_path
