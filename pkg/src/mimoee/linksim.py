"""Monte Carlo link-level verification: fading, precoding, rates, and EE.

Rayleigh block fading with per-user variances drawn from the propagation
model, ZF / regularized-ZF / maximum-ratio precoding with perfect or
LMMSE-estimated CSI, empirical per-user rates with pilot overhead, and a
scalar search for the EE-maximizing transmit power.

Trials are processed in fixed-size chunks; each chunk draws from its own
counter-derived Philox stream, so results for a given (seed, trials) are
bit-identical regardless of how the chunks would be distributed across
workers.  All heavy math is vectorized over the trial axis.
"""
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from mimoee.errors import DomainError, ValidationError
from mimoee.hardware import PowerCoefficients, total_power
from mimoee.propagation import a_lambda, sample_user_variance

_CHUNK = 512

SCHEMES = ("zf", "rzf", "mrt")
CSI_MODES = ("perfect", "mmse")


@dataclass(frozen=True)
class PrecoderSpec:
    """Precoding scheme + CSI model for an MC run.

    ``pilot_energy`` is the per-UE uplink pilot energy per channel use used
    by the LMMSE estimator; when None it defaults to the downlink per-UE
    transmit energy rho*A_lambda of the run.  ``rzf_xi`` overrides the RZF
    regularizer (default K*sigma2/power_budget).
    """

    scheme: str = "zf"
    csi: str = "perfect"
    pilot_energy: float | None = None
    rzf_xi: float | None = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValidationError(f"scheme must be one of {SCHEMES}")
        if self.csi not in CSI_MODES:
            raise ValidationError(f"csi must be one of {CSI_MODES}")


@dataclass(frozen=True)
class McConfig:
    """Trial count, seed, and user-resampling behavior of an MC run."""

    trials: int = 10_000
    seed: int = 0
    resample_users: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")


@dataclass(frozen=True)
class McResult:
    """Aggregates of one MC run (rates in bit/c.u., energies in J/c.u.)."""

    rate_per_ue: float
    sum_rate: float
    tx_energy: float
    total_power: float
    ee: float
    trials: int
    seed: int


def chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    """Independent, reproducible stream for one trial chunk (Philox counter)."""
    return np.random.Generator(
        np.random.Philox(key=np.uint64(seed), counter=[0, 0, np.uint64(chunk_index), 0])
    )


def draw_channel(m, k, variances, rng):
    """One Rayleigh channel H (M x K); column k has per-entry variance lambda_k.

    ``variances`` may be a length-K vector or an (n, K) batch, in which case
    an (n, M, K) stack is returned.
    """
    lam = np.asarray(variances, dtype=float)
    if m < 1 or k < 1:
        raise DomainError("require M, K >= 1")
    if lam.shape[-1] != k or np.any(lam <= 0):
        raise DomainError("variances must have length K and be > 0")
    shape = lam.shape[:-1] + (m, k)
    h = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return h * np.sqrt(lam[..., None, :] / 2.0)


def precode_zf(h, rho, sigma2):
    """ZF precoder V = sqrt(rho sigma2 (M-K)) H (H^H H)^-1.

    Gives every user the deterministic effective channel
    sqrt(rho sigma2 (M-K)) and nulls all cross terms.  Works on a single
    (M, K) matrix or an (n, M, K) stack.
    """
    h = np.asarray(h)
    m, k = h.shape[-2], h.shape[-1]
    if m <= k:
        raise DomainError("ZF requires M > K")
    gram = np.swapaxes(h, -2, -1).conj() @ h
    try:
        ginv = np.linalg.inv(gram)
    except np.linalg.LinAlgError as exc:
        raise DomainError(f"rank-deficient channel: {exc}")
    return math.sqrt(rho * sigma2 * (m - k)) * (h @ ginv)


def precode_mrt(h, power_budget):
    """Maximum ratio transmission with equal per-user power."""
    if power_budget <= 0:
        raise DomainError("power_budget must be > 0")
    h = np.asarray(h)
    k = h.shape[-1]
    norms = np.linalg.norm(h, axis=-2, keepdims=True)
    return math.sqrt(power_budget / k) * h / norms


def precode_rzf(h, power_budget, sigma2, xi=None):
    """Regularized ZF, exactly normalized to the power budget per realization.

    Default regularizer xi = K*sigma2/power_budget (the MMSE-precoder
    choice); pass ``xi`` to override.
    """
    if power_budget <= 0:
        raise DomainError("power_budget must be > 0")
    h = np.asarray(h)
    k = h.shape[-1]
    if xi is None:
        xi = k * sigma2 / power_budget
    gram = np.swapaxes(h, -2, -1).conj() @ h
    v = h @ np.linalg.inv(gram + xi * np.eye(k))
    used = np.sum(np.abs(v) ** 2, axis=(-2, -1), keepdims=True)
    return v * np.sqrt(power_budget / used)


def mmse_estimate(h, variances, pilot_energy, sigma2, rng):
    """Per-entry LMMSE channel estimate from K orthogonal uplink pilots.

    Observation per entry: y = h + w, w ~ CN(0, sigma2/pilot_energy);
    shrinkage lambda/(lambda + sigma2/pilot_energy) gives per-entry MSE
    lambda*sigma2 / (lambda*pilot_energy + sigma2).
    """
    if pilot_energy <= 0:
        raise DomainError("pilot_energy must be > 0")
    h = np.asarray(h)
    lam = np.asarray(variances, dtype=float)[..., None, :]
    noise_var = sigma2 / pilot_energy
    w = (rng.standard_normal(h.shape) + 1j * rng.standard_normal(h.shape)) * math.sqrt(
        noise_var / 2.0
    )
    return lam / (lam + noise_var) * (h + w)


def _precode(h_csi, spec: PrecoderSpec, rho, k, a_lam, sigma2):
    """Build the precoder for one batch from the CSI-side channel."""
    if spec.scheme == "zf":
        return precode_zf(h_csi, rho, sigma2)
    budget = rho * k * a_lam
    if spec.scheme == "mrt":
        return precode_mrt(h_csi, budget)
    return precode_rzf(h_csi, budget, sigma2, xi=spec.rzf_xi)


def _run_mc(m, k, rho, spec: PrecoderSpec, propagation, mc: McConfig, sigma2):
    """Chunked MC sweep; returns (mean per-user rate, mean tx energy)."""
    a_lam = a_lambda(propagation)
    rate_acc = 0.0
    energy_acc = 0.0
    fixed_lam = None
    if not mc.resample_users:
        fixed_lam = sample_user_variance(propagation, chunk_rng(mc.seed, 2**32), size=k)
    done = 0
    chunk_index = 0
    while done < mc.trials:
        n = min(_CHUNK, mc.trials - done)
        rng = chunk_rng(mc.seed, chunk_index)
        if fixed_lam is None:
            lam = sample_user_variance(propagation, rng, size=(n, k))
        else:
            lam = np.broadcast_to(fixed_lam, (n, k))
        h = draw_channel(m, k, lam, rng)
        if spec.csi == "perfect":
            h_csi = h
        else:
            pilot = spec.pilot_energy if spec.pilot_energy is not None else rho * a_lam
            h_csi = mmse_estimate(h, lam, pilot, sigma2, rng)
        v = _precode(h_csi, spec, rho, k, a_lam, sigma2)
        g = np.swapaxes(h, -2, -1).conj() @ v  # g[n, k, l] = h_k^H v_l
        sig = np.abs(np.einsum("...kk->...k", g)) ** 2
        interference = np.sum(np.abs(g) ** 2, axis=-1) - sig
        sinr = sig / (interference + sigma2)
        rate_acc += float(np.sum(np.log1p(sinr))) / math.log(2.0)
        energy_acc += float(np.sum(np.abs(v) ** 2))
        done += n
        chunk_index += 1
    return rate_acc, energy_acc


def average_rates(m, k, t, spec: PrecoderSpec, rho, propagation,
                  mc: McConfig) -> float:
    """MC estimate of the per-user rate (bit/c.u.) including pilot overhead."""
    if k > t:
        raise DomainError(f"require K <= T = {t}")
    rate_sum, _ = _run_mc(m, k, rho, spec, propagation, mc, propagation.sigma2)
    return (1.0 - k / t) * rate_sum / (mc.trials * k)


def simulate(m, k, rho, spec: PrecoderSpec, coeffs: PowerCoefficients,
             propagation, mc: McConfig) -> McResult:
    """Full MC run: rates, transmit energy, total power, and EE."""
    t = coeffs.block_length
    if k >= t:
        raise DomainError(f"require K < T = {t}")
    sigma2 = propagation.sigma2
    rate_sum, energy_sum = _run_mc(m, k, rho, spec, propagation, mc, sigma2)
    rate_per_ue = (1.0 - k / t) * rate_sum / (mc.trials * k)
    tx_energy = energy_sum / mc.trials
    power = total_power(coeffs, m, k, tx_energy)
    return McResult(
        rate_per_ue=rate_per_ue,
        sum_rate=k * rate_per_ue,
        tx_energy=tx_energy,
        total_power=power,
        ee=k * rate_per_ue / power,
        trials=mc.trials,
        seed=mc.seed,
    )


def ee_mc(m, k, rho, spec: PrecoderSpec, coeffs: PowerCoefficients,
          propagation, mc: McConfig) -> float:
    """MC energy efficiency in bit/Joule."""
    return simulate(m, k, rho, spec, coeffs, propagation, mc).ee


def optimize_rho_mc(m, k, spec: PrecoderSpec, coeffs: PowerCoefficients,
                    propagation, mc: McConfig, rho_bracket=(1e-2, 1e4),
                    rel_tol=0.01, coarse_points=25,
                    search_trials: int | None = None) -> float:
    """EE-maximizing normalized transmit power by scalar search.

    Coarse log-spaced scan followed by golden-section refinement in log rho.
    The same seed is reused for every objective evaluation (common random
    numbers), so the search objective is deterministic and smooth in rho.
    """
    search_mc = mc if search_trials is None else replace(mc, trials=search_trials)

    def obj(log_rho):
        return ee_mc(m, k, math.exp(log_rho), spec, coeffs, propagation, search_mc)

    lo, hi = math.log(rho_bracket[0]), math.log(rho_bracket[1])
    grid = np.linspace(lo, hi, coarse_points)
    vals = [obj(g) for g in grid]
    best = int(np.argmax(vals))
    if max(vals) - min(vals) <= 1e-3 * abs(max(vals)):
        warnings.warn("EE varies by less than the MC noise across the rho bracket")
    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, coarse_points - 1)]
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = obj(c), obj(d)
    while (b - a) > rel_tol / 2.0:  # interval in log space ~ relative in rho
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = obj(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = obj(d)
    return math.exp(0.5 * (a + b))
