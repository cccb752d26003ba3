import numpy as np
import pytest

from mimoee.analytic import DesignPoint, ee_zf, optimal_power
from mimoee.design import (
    SearchSpace,
    alternating_optimize,
    ee_surface,
    exhaustive_search,
)
from mimoee.errors import InfeasibleError, UnboundedDesignError, ValidationError
from mimoee.hardware import PowerCoefficients


def brute_force(space, coeffs, a_lam):
    """Independent O(M*K) reference search with per-cell power optimization."""
    best = None
    for m in range(space.m_min, space.m_max + 1):
        for k in range(space.k_min, min(space.k_max, coeffs.block_length - 1) + 1):
            if m < k:
                continue
            rho = 0.0 if m == k else optimal_power(m, k, coeffs, a_lam)
            if space.rho_cap is not None:
                rho = min(rho, space.rho_cap)
            ee = ee_zf(m, k, rho, coeffs, a_lam)
            if best is None or ee > best.ee:
                best = DesignPoint(m=m, k=k, rho=rho, ee=ee)
    return best


def test_reference_joint_optimum(coeffs, a_lam):
    opt = exhaustive_search(SearchSpace(), coeffs, a_lam)
    assert 160 <= opt.m <= 170
    assert 80 <= opt.k <= 90
    assert opt.rho == pytest.approx(4.6097, rel=0.05)
    assert opt.ee > 7e6


def test_exhaustive_matches_brute_force(a_lam):
    rng = np.random.default_rng(5)
    for _ in range(5):
        c = PowerCoefficients(
            ck0=(10.0 ** rng.uniform(-8, -6), 10.0 ** rng.uniform(-8, -6),
                 0.0, 10.0 ** rng.uniform(-14, -12)),
            ck1=(10.0 ** rng.uniform(-8, -6), 10.0 ** rng.uniform(-11, -9),
                 10.0 ** rng.uniform(-13, -11)),
            eta=float(rng.uniform(0.2, 0.9)),
            block_length=int(rng.integers(100, 2000)),
        )
        space = SearchSpace(m_min=1, m_max=60, k_min=1, k_max=40)
        got = exhaustive_search(space, c, a_lam)
        want = brute_force(space, c, a_lam)
        assert (got.m, got.k) == (want.m, want.k)
        assert got.ee == pytest.approx(want.ee, rel=1e-13)


def test_exhaustive_respects_rho_cap(coeffs, a_lam):
    with pytest.warns(UserWarning):
        capped = exhaustive_search(SearchSpace(rho_cap=1.0), coeffs, a_lam)
    free = exhaustive_search(SearchSpace(), coeffs, a_lam)
    assert capped.rho <= 1.0
    assert capped.ee <= free.ee


def test_exhaustive_refuses_unbounded(a_lam):
    c = PowerCoefficients(ck0=(1e-6, 0, 0, 0), ck1=(0, 0, 0), eta=0.5,
                          block_length=1000)
    with pytest.raises(UnboundedDesignError):
        exhaustive_search(SearchSpace(m_max=100, k_max=50), c, a_lam)


def test_space_validation():
    with pytest.raises(ValidationError):
        SearchSpace(m_min=10, m_max=5)
    with pytest.raises(ValidationError):
        SearchSpace(rho_cap=0.0)


def test_infeasible_space(coeffs, a_lam):
    with pytest.raises(InfeasibleError):
        exhaustive_search(SearchSpace(m_min=1, m_max=3, k_min=5, k_max=10),
                          coeffs, a_lam)


def test_surface_shape_and_consistency(coeffs, a_lam):
    space = SearchSpace(m_min=1, m_max=30, k_min=1, k_max=20)
    surf = ee_surface(space, coeffs, a_lam)
    # number of feasible cells: sum over m of min(m, 20)
    expected = sum(min(m, 20) for m in range(1, 31))
    assert surf.shape[0] == expected
    assert np.all(surf["m"] >= surf["k"])
    diag = surf[surf["m"] == surf["k"]]
    assert np.all(diag["rho"] == 0.0) and np.all(diag["ee"] == 0.0)
    off = surf[surf["m"] > surf["k"]]
    recomputed = ee_zf(off["m"], off["k"], off["rho"], coeffs, a_lam)
    np.testing.assert_allclose(off["ee"], recomputed, rtol=1e-13)
    # surface maximum equals the exhaustive optimum on the same space
    opt = exhaustive_search(space, coeffs, a_lam)
    assert surf["ee"].max() == pytest.approx(opt.ee, rel=1e-13)


def test_alternating_from_cold_start(coeffs, a_lam):
    init = DesignPoint(m=3, k=1, rho=1.0, ee=ee_zf(3, 1, 1.0, coeffs, a_lam))
    trace = alternating_optimize(init, coeffs, a_lam)
    assert trace.converged
    assert trace.iteration_count <= 10
    ees = [p.ee for p in trace.iterations]
    assert all(b >= a * (1 - 1e-12) for a, b in zip(ees, ees[1:]))
    global_opt = exhaustive_search(SearchSpace(), coeffs, a_lam)
    assert trace.final.ee >= 0.99 * global_opt.ee


def test_alternating_fixed_point_counts_one(coeffs, a_lam):
    cold = alternating_optimize(
        DesignPoint(m=3, k=1, rho=1.0, ee=ee_zf(3, 1, 1.0, coeffs, a_lam)),
        coeffs, a_lam,
    )
    fp = cold.final
    again = alternating_optimize(fp, coeffs, a_lam)
    assert again.converged
    assert again.iteration_count == 1
    assert (again.final.m, again.final.k) == (fp.m, fp.k)


def test_alternating_many_starts_near_global(coeffs, a_lam):
    global_opt = exhaustive_search(SearchSpace(), coeffs, a_lam)
    for m0, k0, rho0 in [(10, 2, 0.5), (500, 100, 10.0), (50, 40, 2.0)]:
        init = DesignPoint(m=m0, k=k0, rho=rho0,
                           ee=ee_zf(m0, k0, rho0, coeffs, a_lam))
        trace = alternating_optimize(init, coeffs, a_lam)
        assert trace.converged
        assert trace.final.ee >= 0.99 * global_opt.ee


def test_design_point_validation():
    with pytest.raises(ValidationError):
        DesignPoint(m=2, k=3, rho=1.0, ee=1.0)
    with pytest.raises(ValidationError):
        DesignPoint(m=3, k=2, rho=1.0, ee=-1.0)
