"""Figure renderers: EE surfaces and scaling-law curves.

Everything here is read-only over the CSV tables; the argmax star and the
trajectory overlay are taken from the numbers as given.  Matplotlib's Agg
backend with pinned rc settings keeps the PNG output byte-stable.
"""
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from mimoee_figures.io import pivot_surface, read_table

_RC = {
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": "mimoee",
}

_MARKERS = ("o", "s", "^", "d", "v", "*")


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: input CSVs, figure kind, labels, and the output path."""

    inputs: dict = field(repr=False)  # logical name -> CSV path
    kind: str = "surface"             # "surface" | "curves"
    title: str = ""
    value_column: str = "ee_bit_per_joule"
    value_label: str = "Energy efficiency [bit/Joule]"
    log_value: bool = False
    output: str = "figure.png"

    def __post_init__(self):
        if self.kind not in ("surface", "curves"):
            raise ValueError("kind must be 'surface' or 'curves'")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


@dataclass(frozen=True)
class RenderResult:
    """Where the image landed plus the highlighted optimum (if any)."""

    output: Path
    star_m: int | None = None
    star_k: int | None = None


def _finish(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="png")
    plt.close(fig)
    return path


def render_surface(spec: FigureSpec) -> RenderResult:
    """Heatmap of EE over (M, K) with the argmax starred.

    ``inputs`` must contain "surface"; an optional "trace" CSV adds the
    alternating-optimization trajectory as connected circles.
    """
    table = read_table(
        spec.inputs["surface"], "surface",
        required_columns=("m", "k", spec.value_column),
    )
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.0, 4.2))
        m_axis, k_axis, grid = pivot_surface(
            {"m": table["m"], "k": table["k"],
             "ee_bit_per_joule": table[spec.value_column]}
        )
        mesh = ax.pcolormesh(
            m_axis, k_axis, grid.T, shading="nearest", cmap="viridis",
            rasterized=False,
        )
        fig.colorbar(mesh, ax=ax, label=spec.value_label)

        i = int(np.argmax(table[spec.value_column]))
        star_m = int(table["m"][i])
        star_k = int(table["k"][i])
        ax.plot(star_m, star_k, marker="*", markersize=16, color="red",
                markeredgecolor="white", linestyle="none", label="optimum")

        if "trace" in spec.inputs:
            tr = read_table(spec.inputs["trace"], "trace",
                            required_columns=("iteration", "m", "k"))
            order = np.argsort(tr["iteration"])
            ax.plot(tr["m"][order], tr["k"][order], marker="o", markersize=5,
                    markerfacecolor="none", color="white", linewidth=1.0,
                    label="alternating iterates")

        ax.set_xlabel("Number of BS antennas M")
        ax.set_ylabel("Number of users K")
        if spec.title:
            ax.set_title(spec.title)
        ax.legend(loc="upper left")
        path = _finish(fig, spec.output)
    return RenderResult(output=path, star_m=star_m, star_k=star_k)


def render_curves(spec: FigureSpec) -> RenderResult:
    """One line per (scheme, csi) pair of ``value_column`` against M.

    ``inputs`` must contain "curves" pointing at a per-scheme table with at
    least scheme/csi/m plus the value column.
    """
    name = spec.inputs["curves"]
    kind = spec.inputs.get("curves_kind", "power_scaling")
    table = read_table(name, kind,
                       required_columns=("scheme", "csi", "m", spec.value_column))
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.0, 4.2))
        pairs = sorted(set(zip(table["scheme"], table["csi"])))
        for idx, (scheme, csi) in enumerate(pairs):
            sel = (table["scheme"] == scheme) & (table["csi"] == csi)
            m = table["m"][sel]
            y = table[spec.value_column][sel]
            order = np.argsort(m)
            label = scheme.upper() + ("" if csi == "perfect" else f" ({csi} CSI)")
            ax.plot(m[order], y[order], marker=_MARKERS[idx % len(_MARKERS)],
                    label=label)
        if spec.log_value:
            ax.set_yscale("log")
        ax.set_xlabel("Number of BS antennas M")
        ax.set_ylabel(spec.value_label)
        if spec.title:
            ax.set_title(spec.title)
        ax.legend()
        path = _finish(fig, spec.output)
    return RenderResult(output=path)
