import numpy as np
import pytest

from mimoee.errors import DomainError, ValidationError
from mimoee.hardware import (
    HardwareProfile,
    PowerCoefficients,
    REFERENCE_PROFILE,
    coefficients_from_hardware,
    coherence_block_length,
    total_power,
)

S = 1.0 / 9e6


def test_block_length_reference():
    assert coherence_block_length(REFERENCE_PROFILE) == 5760


def test_block_length_too_short():
    p = dict(vars(REFERENCE_PROFILE))
    p.update(coherence_time=1.0, bandwidth=1.0)
    with pytest.raises(ValidationError):
        coherence_block_length(HardwareProfile(**p))


def test_block_length_one_rejected_by_profile():
    p = dict(vars(REFERENCE_PROFILE))
    p.update(coherence_time=0.5, bandwidth=1.0)
    with pytest.raises(ValidationError):
        HardwareProfile(**p)


def test_reference_coefficients(coeffs):
    assert coeffs.ck0[0] == pytest.approx(4.0 * S, rel=1e-15)
    assert coeffs.ck0[1] == pytest.approx(4.8 * S, rel=1e-15)
    assert coeffs.ck0[2] == 0.0
    assert coeffs.ck0[3] == pytest.approx(2.0 / (3.0 * 1e9 * 5760), rel=1e-15)
    assert coeffs.ck1[0] == pytest.approx(1.0 * S, rel=1e-15)
    assert coeffs.ck1[1] == pytest.approx(5763.0 / (1e9 * 5760), rel=1e-15)
    assert coeffs.ck1[2] == pytest.approx(2.0 / (1e9 * 5760), rel=1e-15)
    assert coeffs.block_length == 5760
    assert coeffs.eta == 0.3


def test_all_costs_vanish_in_the_efficient_limit():
    p = dict(vars(REFERENCE_PROFILE))
    p.update(p0=0, p_syn=0, p_cod=0, p_dec=0, p_tx=0, p_rx=0, ops_per_joule=1e30)
    c = coefficients_from_hardware(HardwareProfile(**p))
    assert max(c.ck0 + c.ck1) < 1e-20


def test_itemized_cost_identity():
    # collecting K^i M^j terms of the itemized per-block costs must
    # reproduce the assembled coefficients at arbitrary operating points
    rng = np.random.default_rng(7)
    for _ in range(100):
        t = int(rng.integers(10, 20000))
        ell = 10.0 ** rng.uniform(6, 12)
        p = dict(vars(REFERENCE_PROFILE))
        p.update(
            ops_per_joule=ell,
            coherence_time=1.0,
            bandwidth=float(t),
        )
        profile = HardwareProfile(**p)
        c = coefficients_from_hardware(profile)
        k = int(rng.integers(1, min(t, 300)))
        m = int(rng.integers(k, 1000))
        estimation = m * k / (ell * t)
        precomputation = (3 * k**2 * m + 2 * k * m) / (ell * t) + 2 * k**3 / (3 * ell * t)
        transmission = (1 - k / t) * m * k / ell
        chains = (m * profile.p_tx + k * profile.p_rx + profile.p_syn) * S
        coding = k * (profile.p_cod + profile.p_dec) * S
        static = profile.p0 * S
        itemized = estimation + precomputation + transmission + chains + coding + static
        assembled = c.circuit_power(m, k)
        assert assembled == pytest.approx(itemized, rel=1e-12)


def test_total_power_static_only(coeffs):
    assert total_power(coeffs, 0, 0, 0.0) == coeffs.ck0[0]


def test_total_power_amplifier_only():
    c = PowerCoefficients(ck0=(0.0, 0.0, 0.0, 1e-300), ck1=(0.0, 0.0, 0.0),
                          eta=0.5, block_length=100)
    assert total_power(c, 5, 3, 1.0) == pytest.approx(2.0)


def test_total_power_reference_point(coeffs, a_lam):
    m, k, rho = 165, 85, 4.6097
    tx = rho * k * a_lam
    expected = (
        tx / 0.3
        + 4.0 * S
        + 4.8 * S * k
        + 2.0 / (3.0 * 1e9 * 5760) * k**3
        + (1.0 * S + 5763.0 / (1e9 * 5760) * k + 2.0 / (1e9 * 5760) * k**2) * m
    )
    assert total_power(coeffs, m, k, tx) == pytest.approx(expected, rel=1e-14)


def test_total_power_requires_m_ge_k(coeffs):
    with pytest.raises(DomainError):
        total_power(coeffs, 3, 5, 0.0)


def test_total_power_monotone(coeffs):
    base = total_power(coeffs, 100, 50, 1e-7)
    assert total_power(coeffs, 101, 50, 1e-7) > base
    assert total_power(coeffs, 100, 51, 1e-7) > base
    assert total_power(coeffs, 100, 50, 2e-7) > base
    assert base >= coeffs.ck0[0]


def test_coefficients_invariants():
    with pytest.raises(ValidationError):
        PowerCoefficients(ck0=(0, 0, 0, 0), ck1=(0, 0, 0), eta=0.3, block_length=100)
    with pytest.raises(ValidationError):
        PowerCoefficients(ck0=(-1, 0, 0, 0), ck1=(0, 0, 1), eta=0.3, block_length=100)
    with pytest.raises(ValidationError):
        PowerCoefficients(ck0=(1, 0, 0, 0), ck1=(0, 0, 0), eta=1.5, block_length=100)
