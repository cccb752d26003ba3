"""Circuit power model: hardware profile -> polynomial power coefficients.

Total consumed power (Joule/channel use) is modeled as

    P_total = E_tx / eta + sum_i C[i][0] K^i + sum_i C[i][1] K^i M

where E_tx is the average radiated energy per channel use. The C[i][j] are
assembled from a physical hardware description: transceiver chains, coding
and decoding, channel estimation, precoder computation, and a static
architectural term.  All wattages are converted to Joule/channel use once,
by multiplying with the symbol time S.
"""
from dataclasses import dataclass

import numpy as np

from mimoee.errors import DomainError, ValidationError


@dataclass(frozen=True)
class HardwareProfile:
    """Physical hardware description of one BS/UE deployment.

    Powers are in Watt; ``ops_per_joule`` is the computational efficiency L
    of the BS baseband (flops/Watt), ``symbol_time`` is seconds per channel
    use, ``bandwidth`` and ``coherence_time`` set the coherence block, and
    ``eta`` is the power amplifier efficiency.
    """

    p0: float          # static architecture power
    p_syn: float       # local oscillator
    p_cod: float       # channel coding, per UE
    p_dec: float       # decoding, per UE
    p_tx: float        # per BS antenna chain
    p_rx: float        # per UE receiver chain
    ops_per_joule: float
    symbol_time: float
    bandwidth: float
    coherence_time: float
    eta: float

    def __post_init__(self):
        powers = (self.p0, self.p_syn, self.p_cod, self.p_dec, self.p_tx, self.p_rx)
        if any(p < 0 for p in powers):
            raise ValidationError("hardware powers must be >= 0")
        if self.ops_per_joule <= 0:
            raise ValidationError("ops_per_joule must be > 0")
        if self.symbol_time <= 0:
            raise ValidationError("symbol_time must be > 0")
        if not 0 < self.eta <= 1:
            raise ValidationError("eta must be in (0, 1]")
        if self.coherence_time * self.bandwidth < 1:
            raise ValidationError("coherence_time * bandwidth must be >= 1")


#: Reference macro-cell profile (LTE-like numerology, 9 Msymbol/s).
REFERENCE_PROFILE = HardwareProfile(
    p0=2.0,
    p_syn=2.0,
    p_cod=4.0,
    p_dec=0.5,
    p_tx=1.0,
    p_rx=0.3,
    ops_per_joule=1e9,
    symbol_time=1.0 / 9e6,
    bandwidth=180e3,
    coherence_time=0.032,
    eta=0.3,
)


@dataclass(frozen=True)
class PowerCoefficients:
    """Coefficients C[i][j] of the circuit power polynomial, in J/c.u.

    ``ck0[i]`` multiplies K^i, ``ck1[i]`` multiplies K^i * M.  ``block_length``
    is the coherence block T in channel uses.  ``ck0[2]`` is zero for the
    ZF derivation but kept as a slot for alternative hardware models.
    """

    ck0: tuple[float, float, float, float]
    ck1: tuple[float, float, float]
    eta: float
    block_length: int

    def __post_init__(self):
        if any(c < 0 for c in self.ck0 + self.ck1):
            raise ValidationError("power coefficients must be >= 0")
        if not any(c > 0 for c in self.ck0 + self.ck1):
            raise ValidationError(
                "at least one power coefficient must be positive "
                "(required for a finite EE optimum)"
            )
        if not 0 < self.eta <= 1:
            raise ValidationError("eta must be in (0, 1]")
        if self.block_length < 2:
            raise ValidationError("block_length must be >= 2")

    def k_poly(self, k):
        """sum_i C[i][0] K^i."""
        c0, c1, c2, c3 = self.ck0
        return c0 + k * (c1 + k * (c2 + k * c3))

    def km_poly(self, k):
        """sum_i C[i][1] K^i (the factor multiplying M)."""
        d0, d1, d2 = self.ck1
        return d0 + k * (d1 + k * d2)

    def circuit_power(self, m, k):
        """Total circuit power in J/c.u. for a given (M, K)."""
        return self.k_poly(k) + self.km_poly(k) * m


def coherence_block_length(profile: HardwareProfile) -> int:
    """Coherence block length T = round(T_coh * B) in channel uses."""
    t = round(profile.coherence_time * profile.bandwidth)
    if t < 2:
        raise ValidationError(
            f"coherence block of {t} channel use(s) leaves no room for data "
            "after the pilot"
        )
    return t


def coefficients_from_hardware(profile: HardwareProfile) -> PowerCoefficients:
    """Assemble the ZF-precoding power coefficients from a hardware profile.

    Channel estimation costs MK/(LT), ZF precomputation
    (3K^2 M + 2KM)/(LT) + 2K^3/(3LT), and applying the precoder
    (1 - K/T) MK/L Joule/channel use; collecting K^i M^j terms together
    with the per-device wattages gives the coefficients below.
    """
    t = coherence_block_length(profile)
    s = profile.symbol_time
    lt = profile.ops_per_joule * t
    ck0 = (
        (profile.p0 + profile.p_syn) * s,
        (profile.p_cod + profile.p_dec + profile.p_rx) * s,
        0.0,
        2.0 / (3.0 * lt),
    )
    ck1 = (
        profile.p_tx * s,
        (3.0 + t) / lt,
        2.0 / lt,
    )
    return PowerCoefficients(ck0=ck0, ck1=ck1, eta=profile.eta, block_length=t)


def total_power(coeffs: PowerCoefficients, m, k, avg_tx_energy):
    """Total consumed power in J/c.u. (amplifier + circuit terms).

    Accepts scalars or broadcastable arrays for ``m``, ``k``,
    ``avg_tx_energy``.
    """
    m = np.asarray(m)
    k = np.asarray(k)
    e = np.asarray(avg_tx_energy)
    if np.any(m < k):
        raise DomainError("total_power requires M >= K")
    if np.any(k < 0) or np.any(e < 0):
        raise DomainError("K and avg_tx_energy must be >= 0")
    out = e / coeffs.eta + coeffs.circuit_power(m, k)
    return float(out) if out.ndim == 0 else out
