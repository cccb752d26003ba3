"""Command-line front end: config ingestion, subcommands, CSV emission.

Subcommands:
  optimize       exhaustive + alternating joint design; optimum and trace CSVs
  surface        EE over an (M, K) grid (analytic ZF, or MC for rzf/mrt)
  power-scaling  EE-maximizing transmit power vs M per scheme
  ee-vs-antennas max EE and corresponding sum rate vs M per scheme
  simulate       one raw MC run per configured scheme

All numbers are serialized with 17 significant digits, so re-running a
subcommand with the same config and seed produces byte-identical CSVs.
Exit codes: 0 success, 2 config error, 3 numerical failure.
"""
import argparse
import sys
from pathlib import Path

import numpy as np

from mimoee.analytic import DesignPoint, ee_zf, optimal_power
from mimoee.config import ScenarioConfig, parse_config
from mimoee.design import SearchSpace, alternating_optimize, exhaustive_search, ee_surface
from mimoee.errors import ConfigError, MimoeeError
from mimoee.linksim import McConfig, PrecoderSpec, optimize_rho_mc, simulate
from mimoee.propagation import a_lambda

CSV_VERSION = "v1"


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(path, kind, columns, rows):
    """Write a versioned CSV: comment header, fixed column order, 17 digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# mimoee-csv {CSV_VERSION} {kind}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    return path


def _scenario(args) -> ScenarioConfig:
    overrides = {}
    if args.seed is not None:
        overrides[("mc", "seed")] = args.seed
    if args.trials is not None:
        overrides[("mc", "trials")] = args.trials
    return parse_config(args.config, overrides)


def _space(cfg: ScenarioConfig, args) -> SearchSpace:
    s = cfg.search
    return SearchSpace(
        m_min=getattr(args, "m_min", None) or s["m_min"],
        m_max=getattr(args, "m_max", None) or s["m_max"],
        k_min=getattr(args, "k_min", None) or s["k_min"],
        k_max=getattr(args, "k_max", None) or s["k_max"],
        rho_cap=s["rho_cap"],
    )


def _mc_config(cfg: ScenarioConfig) -> McConfig:
    return McConfig(
        trials=cfg.mc["trials"],
        seed=cfg.mc["seed"],
        resample_users=cfg.mc["resample_users"],
    )


def _spec(cfg: ScenarioConfig, scheme, csi="perfect") -> PrecoderSpec:
    return PrecoderSpec(
        scheme=scheme,
        csi=csi,
        pilot_energy=cfg.mc["pilot_energy"],
        rzf_xi=cfg.mc["rzf_xi"],
    )


def _parse_scheme_token(token):
    """'zf' -> (zf, perfect); 'zf-mmse' -> (zf, mmse)."""
    if "-" in token:
        scheme, csi = token.split("-", 1)
    else:
        scheme, csi = token, "perfect"
    return scheme, csi


def zf_optimal_k(m, coeffs, a_lam, k_max=None):
    """ZF-optimal user count for a fixed M (scan with analytic inner power)."""
    hi = min(m - 1, coeffs.block_length - 1)
    if k_max is not None:
        hi = min(hi, k_max)
    ks = np.arange(1, hi + 1)
    rho = optimal_power(m, ks, coeffs, a_lam)
    ee = ee_zf(m, ks, rho, coeffs, a_lam)
    i = int(np.argmax(ee))
    return int(ks[i]), float(rho[i]), float(ee[i])


def cmd_optimize(cfg: ScenarioConfig, args, out: Path) -> int:
    a_lam = a_lambda(cfg.propagation)
    space = _space(cfg, args)
    best = exhaustive_search(space, cfg.coeffs, a_lam)
    init = DesignPoint(
        m=args.init_m, k=args.init_k, rho=args.init_rho,
        ee=ee_zf(args.init_m, args.init_k, args.init_rho, cfg.coeffs, a_lam),
    )
    trace = alternating_optimize(init, cfg.coeffs, a_lam, max_iter=args.max_iter)
    write_csv(
        out / "optimum.csv", "optimum",
        ["m", "k", "rho", "ee_bit_per_joule", "ee_mbit_per_joule"],
        [(best.m, best.k, best.rho, best.ee, best.ee / 1e6)],
    )
    write_csv(
        out / "trace.csv", "trace",
        ["iteration", "m", "k", "rho", "ee_bit_per_joule"],
        [(i, p.m, p.k, p.rho, p.ee) for i, p in enumerate(trace.iterations)],
    )
    print(
        f"M={best.m} K={best.k} rho={best.rho:.6g} "
        f"ee_bit_per_joule={best.ee:.6g} ee_mbit_per_joule={best.ee / 1e6:.6g}"
    )
    print(
        f"alternating: M={trace.final.m} K={trace.final.k} "
        f"rho={trace.final.rho:.6g} ee_bit_per_joule={trace.final.ee:.6g} "
        f"iterations={trace.iteration_count} converged={trace.converged}"
    )
    return 0


def cmd_surface(cfg: ScenarioConfig, args, out: Path) -> int:
    a_lam = a_lambda(cfg.propagation)
    scheme, csi = _parse_scheme_token(args.scheme)
    cols = ["scheme", "csi", "m", "k", "rho", "ee_bit_per_joule", "ee_mbit_per_joule"]
    rows = []
    if scheme == "zf" and csi == "perfect":
        space = _space(cfg, args)
        for rec in ee_surface(space, cfg.coeffs, a_lam):
            rows.append(("zf", "perfect", rec["m"], rec["k"], rec["rho"],
                         rec["ee"], rec["ee"] / 1e6))
    else:
        mc = _mc_config(cfg)
        spec = _spec(cfg, scheme, csi)
        t = cfg.block_length
        for m in range(args.m_min or 1, (args.m_max or 30) + 1, args.m_step):
            for k in range(args.k_min or 1, min(args.k_max or 10, m, t - 1) + 1,
                           args.k_step):
                rho = optimize_rho_mc(
                    m, k, spec, cfg.coeffs, cfg.propagation, mc,
                    search_trials=args.search_trials,
                )
                res = simulate(m, k, rho, spec, cfg.coeffs, cfg.propagation, mc)
                rows.append((scheme, csi, m, k, rho, res.ee, res.ee / 1e6))
    path = write_csv(out / f"surface_{args.scheme}.csv", "surface", cols, rows)
    print(f"wrote {path} ({len(rows)} rows)")
    return 0


def _scheme_point(cfg, scheme, csi, m, a_lam, args):
    """Best (K, rho) and MC aggregates for one scheme at one M."""
    mc = _mc_config(cfg)
    spec = _spec(cfg, scheme, csi)
    if scheme == "mrt":
        # inter-user interference makes a single UE EE-optimal for MRT;
        # --mrt-k-max widens the candidate scan when exploring
        k_cands = range(1, min(args.mrt_k_max, m) + 1)
    else:
        # RZF tracks ZF closely; reuse the ZF-optimal user count
        k_zf, _, _ = zf_optimal_k(m, cfg.coeffs, a_lam, cfg.search["k_max"])
        k_cands = [k_zf]
    best = None
    for k in k_cands:
        rho = optimize_rho_mc(
            m, k, spec, cfg.coeffs, cfg.propagation, mc,
            search_trials=args.search_trials,
        )
        res = simulate(m, k, rho, spec, cfg.coeffs, cfg.propagation, mc)
        if best is None or res.ee > best[2].ee:
            best = (k, rho, res)
    return best


def _m_list(args):
    return [int(tok) for tok in args.m_list.split(",")]


def _scheme_tokens(cfg, args):
    if args.schemes:
        return [tok.strip() for tok in args.schemes.split(",")]
    return list(cfg.mc["schemes"])


def cmd_power_scaling(cfg: ScenarioConfig, args, out: Path) -> int:
    a_lam = a_lambda(cfg.propagation)
    cols = ["scheme", "csi", "m", "k", "rho", "tx_power_j_per_cu", "ee_bit_per_joule"]
    rows = []
    for token in _scheme_tokens(cfg, args):
        scheme, csi = _parse_scheme_token(token)
        for m in _m_list(args):
            if scheme == "zf" and csi == "perfect":
                k, rho, ee = zf_optimal_k(m, cfg.coeffs, a_lam, cfg.search["k_max"])
            else:
                k, rho, res = _scheme_point(cfg, scheme, csi, m, a_lam, args)
                ee = res.ee
            rows.append((scheme, csi, m, k, rho, rho * k * a_lam, ee))
    path = write_csv(out / "power_scaling.csv", "power_scaling", cols, rows)
    print(f"wrote {path} ({len(rows)} rows)")
    return 0


def cmd_ee_vs_antennas(cfg: ScenarioConfig, args, out: Path) -> int:
    a_lam = a_lambda(cfg.propagation)
    t = cfg.block_length
    cols = ["scheme", "csi", "m", "k", "rho", "ee_bit_per_joule",
            "ee_mbit_per_joule", "sum_rate_bit_per_cu"]
    rows = []
    for token in _scheme_tokens(cfg, args):
        scheme, csi = _parse_scheme_token(token)
        for m in _m_list(args):
            if scheme == "zf" and csi == "perfect":
                k, rho, ee = zf_optimal_k(m, cfg.coeffs, a_lam, cfg.search["k_max"])
                sum_rate = k * (1 - k / t) * np.log2(1 + rho * (m - k))
            else:
                k, rho, res = _scheme_point(cfg, scheme, csi, m, a_lam, args)
                ee, sum_rate = res.ee, res.sum_rate
            rows.append((scheme, csi, m, k, rho, ee, ee / 1e6, sum_rate))
    path = write_csv(out / "ee_vs_antennas.csv", "ee_vs_m", cols, rows)
    print(f"wrote {path} ({len(rows)} rows)")
    return 0


def cmd_simulate(cfg: ScenarioConfig, args, out: Path) -> int:
    mc = _mc_config(cfg)
    cols = ["scheme", "csi", "m", "k", "rho", "rate_per_ue", "sum_rate",
            "tx_energy", "total_power", "ee", "trials", "seed"]
    rows = []
    tokens = [args.scheme] if args.scheme else None
    for token in tokens or _scheme_tokens(cfg, args):
        scheme, csi = _parse_scheme_token(token)
        res = simulate(args.m, args.k, args.rho, _spec(cfg, scheme, csi),
                       cfg.coeffs, cfg.propagation, mc)
        rows.append((scheme, csi, args.m, args.k, args.rho, res.rate_per_ue,
                     res.sum_rate, res.tx_energy, res.total_power, res.ee,
                     res.trials, res.seed))
    path = write_csv(out / "mc_runs.csv", "mc", cols, rows)
    print(f"wrote {path} ({len(rows)} rows)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mimoee",
        description="Energy-efficiency-optimal multi-user MIMO design",
    )
    p.add_argument("--config", default=None, help="INI scenario config path")
    p.add_argument("--out", default=".", help="output directory for CSVs")
    p.add_argument("--seed", type=int, default=None, help="override [mc] seed")
    p.add_argument("--trials", type=int, default=None, help="override [mc] trials")
    sub = p.add_subparsers(dest="command", required=True)

    def add_ranges(sp):
        sp.add_argument("--m-min", type=int, default=None)
        sp.add_argument("--m-max", type=int, default=None)
        sp.add_argument("--k-min", type=int, default=None)
        sp.add_argument("--k-max", type=int, default=None)

    sp = sub.add_parser("optimize", help="exhaustive + alternating joint design")
    add_ranges(sp)
    sp.add_argument("--init-m", type=int, default=3)
    sp.add_argument("--init-k", type=int, default=1)
    sp.add_argument("--init-rho", type=float, default=1.0)
    sp.add_argument("--max-iter", type=int, default=50)
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("surface", help="EE over an (M, K) grid")
    add_ranges(sp)
    sp.add_argument("--scheme", default="zf",
                    help="zf (analytic) or mrt/rzf/zf-mmse (MC)")
    sp.add_argument("--m-step", type=int, default=1)
    sp.add_argument("--k-step", type=int, default=1)
    sp.add_argument("--search-trials", type=int, default=2000)
    sp.set_defaults(func=cmd_surface)

    def add_curve_args(sp):
        sp.add_argument("--m-list", default="20,60,100,200,300")
        sp.add_argument("--schemes", default=None,
                        help="comma list, e.g. zf,rzf,mrt,zf-mmse")
        sp.add_argument("--search-trials", type=int, default=500)
        sp.add_argument("--mrt-k-max", type=int, default=1,
                        help="K candidates for MRT (its EE-optimal count is 1; "
                             "raise to scan more)")

    sp = sub.add_parser("power-scaling", help="EE-maximizing transmit power vs M")
    add_curve_args(sp)
    sp.set_defaults(func=cmd_power_scaling)

    sp = sub.add_parser("ee-vs-antennas", help="max EE and sum rate vs M")
    add_curve_args(sp)
    sp.set_defaults(func=cmd_ee_vs_antennas)

    sp = sub.add_parser("simulate", help="raw MC runs at a fixed (M, K, rho)")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--rho", type=float, required=True)
    sp.add_argument("--scheme", default=None, help="single scheme token override")
    sp.add_argument("--schemes", default=None)
    sp.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _scenario(args)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return args.func(cfg, args, out)
    except ConfigError as exc:
        print(f'error code=2 kind=config msg="{exc}"', file=sys.stderr)
        return 2
    except MimoeeError as exc:
        print(f'error code=3 kind=numerical msg="{exc}"', file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
