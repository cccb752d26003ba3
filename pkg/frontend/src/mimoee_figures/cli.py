"""Batch figure script: ``mimoee-figures --in <dir> --out <dir> [--fig N]``.

Figure numbers follow the study layout:
  2  ZF EE surface (star + alternating trajectory from trace.csv if present)
  3  MRT EE surface (star)
  4  EE-maximizing transmit power vs M, one curve per scheme
  5  maximal EE and corresponding sum rate vs M, one curve per scheme
"""
import argparse
import sys
from pathlib import Path

from mimoee_figures.io import SchemaError
from mimoee_figures.render import FigureSpec, render_curves, render_surface


def _fig2(indir, outdir):
    inputs = {"surface": indir / "surface_zf.csv"}
    if (indir / "trace.csv").exists():
        inputs["trace"] = indir / "trace.csv"
    return render_surface(FigureSpec(
        inputs=inputs,
        kind="surface",
        title="Energy efficiency, ZF precoding",
        output=outdir / "fig2_surface_zf.png",
    ))


def _fig3(indir, outdir):
    return render_surface(FigureSpec(
        inputs={"surface": indir / "surface_mrt.csv"},
        kind="surface",
        title="Energy efficiency, MRT precoding",
        output=outdir / "fig3_surface_mrt.png",
    ))


def _fig4(indir, outdir):
    return render_curves(FigureSpec(
        inputs={"curves": indir / "power_scaling.csv",
                "curves_kind": "power_scaling"},
        kind="curves",
        title="EE-maximizing transmit power",
        value_column="tx_power_j_per_cu",
        value_label="Radiated power [Joule/channel use]",
        log_value=True,
        output=outdir / "fig4_power_scaling.png",
    ))


def _fig5(indir, outdir):
    ee = render_curves(FigureSpec(
        inputs={"curves": indir / "ee_vs_antennas.csv", "curves_kind": "ee_vs_m"},
        kind="curves",
        title="Maximal energy efficiency",
        value_column="ee_bit_per_joule",
        value_label="Energy efficiency [bit/Joule]",
        log_value=True,
        output=outdir / "fig5_max_ee.png",
    ))
    render_curves(FigureSpec(
        inputs={"curves": indir / "ee_vs_antennas.csv", "curves_kind": "ee_vs_m"},
        kind="curves",
        title="Sum rate at the EE-maximizing point",
        value_column="sum_rate_bit_per_cu",
        value_label="Sum rate [bit/channel use]",
        log_value=True,
        output=outdir / "fig5_sum_rate.png",
    ))
    return ee


_FIGURES = {"2": _fig2, "3": _fig3, "4": _fig4, "5": _fig5}


def build_parser():
    p = argparse.ArgumentParser(
        prog="mimoee-figures",
        description="Render mimoee CSV outputs into figures (no recomputation)",
    )
    p.add_argument("--in", dest="indir", required=True, help="CSV input directory")
    p.add_argument("--out", dest="outdir", required=True, help="image output directory")
    p.add_argument("--fig", choices=sorted(_FIGURES), default=None,
                   help="single figure to render (default: all with inputs present)")
    return p


_REQUIRED = {
    "2": "surface_zf.csv",
    "3": "surface_mrt.csv",
    "4": "power_scaling.csv",
    "5": "ee_vs_antennas.csv",
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    indir = Path(args.indir)
    outdir = Path(args.outdir)
    if args.fig is not None:
        wanted = [args.fig]
    else:
        wanted = [n for n in sorted(_FIGURES) if (indir / _REQUIRED[n]).exists()]
        if not wanted:
            print(f"error: no renderable CSVs found in {indir}", file=sys.stderr)
            return 2
    try:
        for n in wanted:
            result = _FIGURES[n](indir, outdir)
            print(f"fig {n}: wrote {result.output}")
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
