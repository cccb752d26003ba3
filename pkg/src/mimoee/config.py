"""Scenario configuration: flat INI-style files with reference defaults.

Sections: [hardware] (wattages, computational efficiency, amplifier),
[system] (coherence block, symbol time, noise variance), [propagation]
(cell geometry and path loss, or a tabulated variance pdf), [search]
(design-space ranges and optional power cap), [mc] (trials, seed, schemes).
Every key has a physically-typed default equal to the reference macro-cell
scenario; unknown sections or keys are rejected with their location.

Note on units: the symbol time S converts wattages to Joule/channel use,
while the coherence bandwidth only sets the block length T = round(T_coh*B).
The reference scenario has B*S != 1 (180 kHz vs 1/9e6 s); both knobs are
exposed independently and never reconciled.
"""
import configparser
import math
from dataclasses import dataclass, field

from mimoee.errors import ConfigError, MimoeeError
from mimoee.hardware import (
    HardwareProfile,
    PowerCoefficients,
    coefficients_from_hardware,
    coherence_block_length,
)
from mimoee.linksim import CSI_MODES, SCHEMES, McConfig
from mimoee.propagation import AnnulusUniform, empirical_pdf_from_csv

_SCHEMA = {
    "hardware": {
        "p0_w": 2.0,
        "p_syn_w": 2.0,
        "p_cod_w": 4.0,
        "p_dec_w": 0.5,
        "p_tx_w": 1.0,
        "p_rx_w": 0.3,
        "ops_per_joule": 1e9,
        "eta": 0.3,
    },
    "system": {
        "coherence_time_ms": 32.0,
        "coherence_bandwidth_khz": 180.0,
        "symbol_time_s": 1.0 / 9e6,
        "sigma2": 1e-20,
        "t_override": None,
    },
    "propagation": {
        "attenuation_log10": -3.53,
        "kappa": 3.76,
        "d_min_m": 35.0,
        "d_max_m": 250.0,
        "pdf_csv": None,
    },
    "search": {
        "m_min": 1,
        "m_max": 1000,
        "k_min": 1,
        "k_max": 500,
        "rho_cap": None,
    },
    "mc": {
        "trials": 10_000,
        "seed": 1,
        "schemes": "zf,rzf,mrt",
        "csi": "perfect",
        "resample_users": True,
        "pilot_energy": None,
        "rzf_xi": None,
    },
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully validated scenario: everything the CLI subcommands consume."""

    profile: HardwareProfile
    coeffs: PowerCoefficients
    propagation: object
    block_length: int
    search: dict = field(repr=False)
    mc: dict = field(repr=False)


def _coerce(section, key, raw, default):
    if isinstance(default, bool) or key == "resample_users":
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"[{section}] {key}: expected a boolean, got {raw!r}")
    if isinstance(default, int) and not isinstance(default, bool):
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"[{section}] {key}: expected an integer, got {raw!r}")
    if isinstance(default, float) or default is None and key in (
        "rho_cap", "pilot_energy", "rzf_xi"
    ):
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"[{section}] {key}: expected a number, got {raw!r}")
    if key == "t_override":
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"[{section}] {key}: expected an integer, got {raw!r}")
    return raw


def _read_sections(path):
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";")
    )
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    except configparser.Error as exc:
        raise ConfigError(f"parse error in {path}: {exc}")
    values = {name: dict(defaults) for name, defaults in _SCHEMA.items()}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"{path}: unknown section [{section}]")
        for key, raw in parser[section].items():
            if key not in _SCHEMA[section]:
                raise ConfigError(f"{path}: unknown key {key!r} in [{section}]")
            values[section][key] = _coerce(section, key, raw, _SCHEMA[section][key])
    return values


def parse_config(path=None, overrides=None) -> ScenarioConfig:
    """Load and validate a scenario config; None means all defaults.

    ``overrides`` maps (section, key) to values applied after the file
    (used for CLI flags like --seed/--trials).
    """
    if path is None:
        values = {name: dict(defaults) for name, defaults in _SCHEMA.items()}
    else:
        values = _read_sections(path)
    for (section, key), val in (overrides or {}).items():
        values[section][key] = val

    hw = values["hardware"]
    sysv = values["system"]
    prop = values["propagation"]
    try:
        profile = HardwareProfile(
            p0=hw["p0_w"],
            p_syn=hw["p_syn_w"],
            p_cod=hw["p_cod_w"],
            p_dec=hw["p_dec_w"],
            p_tx=hw["p_tx_w"],
            p_rx=hw["p_rx_w"],
            ops_per_joule=hw["ops_per_joule"],
            symbol_time=sysv["symbol_time_s"],
            bandwidth=sysv["coherence_bandwidth_khz"] * 1e3,
            coherence_time=sysv["coherence_time_ms"] * 1e-3,
            eta=hw["eta"],
        )
        coeffs = coefficients_from_hardware(profile)
        if sysv["t_override"] is not None:
            # re-derive the T-dependent coefficients with the forced length
            t = int(sysv["t_override"])
            lt = profile.ops_per_joule * t
            coeffs = PowerCoefficients(
                ck0=coeffs.ck0[:3] + (2.0 / (3.0 * lt),),
                ck1=(coeffs.ck1[0], (3.0 + t) / lt, 2.0 / lt),
                eta=coeffs.eta,
                block_length=t,
            )
        if prop["pdf_csv"] is not None:
            model = empirical_pdf_from_csv(prop["pdf_csv"], sysv["sigma2"])
        else:
            model = AnnulusUniform(
                attenuation=10.0 ** prop["attenuation_log10"],
                kappa=prop["kappa"],
                d_min=prop["d_min_m"],
                d_max=prop["d_max_m"],
                sigma2=sysv["sigma2"],
            )
        mc = dict(values["mc"])
        schemes = [s.strip() for s in str(mc["schemes"]).split(",") if s.strip()]
        for s in schemes:
            if s not in SCHEMES:
                raise ConfigError(f"[mc] schemes: unknown scheme {s!r}")
        if mc["csi"] not in CSI_MODES:
            raise ConfigError(f"[mc] csi: must be one of {CSI_MODES}")
        mc["schemes"] = schemes
        McConfig(trials=mc["trials"], seed=mc["seed"])  # validate
    except ConfigError:
        raise
    except (MimoeeError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}")
    return ScenarioConfig(
        profile=profile,
        coeffs=coeffs,
        propagation=model,
        block_length=coeffs.block_length,
        search=values["search"],
        mc=mc,
    )
