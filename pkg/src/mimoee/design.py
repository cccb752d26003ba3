"""Joint (M, K, rho) design search.

Exhaustive search evaluates the closed-form optimal power on every feasible
integer (M, K) cell and keeps the EE maximizer; the alternating method
cycles the three marginal optimizers (users -> antennas -> power) from an
initial point and stops when the integers M and K no longer change.  Both
are deterministic; grid evaluation is vectorized over all cells at once.
"""
import warnings
from dataclasses import dataclass, field

import numpy as np

from mimoee.analytic import (
    DesignPoint,
    ee_zf,
    optimal_antennas,
    optimal_power,
    optimal_users,
    refine_integer,
    users_objective,
    users_quartic,
)
from mimoee.errors import InfeasibleError, UnboundedDesignError, ValidationError
from mimoee.hardware import PowerCoefficients


@dataclass(frozen=True)
class SearchSpace:
    """Integer (M, K) search ranges with an optional transmit power cap."""

    m_min: int = 1
    m_max: int = 1000
    k_min: int = 1
    k_max: int = 500
    rho_cap: float | None = None

    def __post_init__(self):
        if not 1 <= self.m_min <= self.m_max:
            raise ValidationError("require 1 <= m_min <= m_max")
        if not 1 <= self.k_min <= self.k_max:
            raise ValidationError("require 1 <= k_min <= k_max")
        if self.rho_cap is not None and self.rho_cap <= 0:
            raise ValidationError("rho_cap must be > 0")


@dataclass(frozen=True)
class AlternatingTrace:
    """Iterates of the alternating optimizer; EE is nondecreasing along it."""

    iterations: list[DesignPoint] = field(repr=False)
    converged: bool = False
    iteration_count: int = 0

    @property
    def final(self) -> DesignPoint:
        return self.iterations[-1]


def _feasible_grid(space: SearchSpace, coeffs: PowerCoefficients):
    """All feasible (M, K) cells, ordered by M then K for tie-breaking."""
    t = coeffs.block_length
    k_hi = min(space.k_max, t - 1)
    if k_hi < space.k_min:
        raise InfeasibleError(f"no feasible K in [{space.k_min}, {k_hi}]")
    ms = np.arange(space.m_min, space.m_max + 1)
    ks = np.arange(space.k_min, k_hi + 1)
    mg, kg = np.meshgrid(ms, ks, indexing="ij")
    mask = mg >= kg
    if not np.any(mask):
        raise InfeasibleError("no feasible (M, K) pair with M >= K in the space")
    return mg[mask], kg[mask]


def _grid_rho_ee(mg, kg, space, coeffs, a_lam):
    """Per-cell optimal rho (Lambert closed form, capped) and its EE."""
    rho = np.zeros(mg.shape, dtype=float)
    strict = mg > kg
    if np.any(strict):
        rho[strict] = optimal_power(mg[strict], kg[strict], coeffs, a_lam)
    if space.rho_cap is not None and np.any(rho > space.rho_cap):
        warnings.warn(
            f"optimal rho exceeds the cap {space.rho_cap} on "
            f"{int(np.sum(rho > space.rho_cap))} grid cell(s); clipping",
            stacklevel=3,
        )
        rho = np.minimum(rho, space.rho_cap)
    ee = ee_zf(mg, kg, rho, coeffs, a_lam)
    return rho, np.asarray(ee)


def exhaustive_search(space: SearchSpace, coeffs: PowerCoefficients,
                      a_lam: float) -> DesignPoint:
    """Globally optimal DesignPoint over the space (inner power closed form).

    Ties break toward smaller M, then smaller K.  If the per-antenna circuit
    cost is zero the EE grows without bound in M and the search refuses to
    report a spurious in-range optimum.
    """
    ks_probe = np.arange(space.k_min, min(space.k_max, coeffs.block_length - 1) + 1)
    if np.any(coeffs.km_poly(ks_probe) <= 0):
        raise UnboundedDesignError(
            "per-antenna circuit cost is zero for some K: the EE optimum is "
            "unbounded in M"
        )
    mg, kg = _feasible_grid(space, coeffs)
    rho, ee = _grid_rho_ee(mg, kg, space, coeffs, a_lam)
    i = int(np.argmax(ee))  # first max in (M, K) order = smallest M, then K
    return DesignPoint(m=int(mg[i]), k=int(kg[i]), rho=float(rho[i]), ee=float(ee[i]))


def ee_surface(space: SearchSpace, coeffs: PowerCoefficients, a_lam: float):
    """Dense (M, K, rho_opt, ee) grid rows for CSV export / figure rendering.

    Rows with M = K carry rho = 0 and ee = 0 (ZF has no array gain there).
    Returns a structured array with fields m, k, rho, ee.
    """
    mg, kg = _feasible_grid(space, coeffs)
    rho, ee = _grid_rho_ee(mg, kg, space, coeffs, a_lam)
    out = np.empty(
        mg.shape[0],
        dtype=[("m", "i8"), ("k", "i8"), ("rho", "f8"), ("ee", "f8")],
    )
    out["m"], out["k"], out["rho"], out["ee"] = mg, kg, rho, ee
    return out


def alternating_optimize(init: DesignPoint, coeffs: PowerCoefficients,
                         a_lam: float, max_iter: int = 50) -> AlternatingTrace:
    """Alternating user/antenna/power updates from an initial design point.

    Each sweep: (1) update K from the user-count optimizer with beta = M/K
    and rho_tot = K*rho frozen at the current iterate (M and rho move with
    K along those constraints), (2) update M from the antenna optimizer,
    (3) update rho from the power optimizer.  EE is nondecreasing at every
    sub-step; convergence is declared when a sweep leaves the integers M
    and K unchanged.  ``iteration_count`` counts the sweeps that moved the
    iterate (the confirming sweep that detects the fixed point is not
    counted, except when the initial point is already the fixed point).
    """
    t = coeffs.block_length
    m, k, rho = init.m, init.k, init.rho
    ee = ee_zf(m, k, rho, coeffs, a_lam)
    trace = [DesignPoint(m=m, k=k, rho=rho, ee=ee)]
    converged = False
    for _ in range(max_iter):
        beta = m / k
        rho_tot = k * rho

        # user update along the fixed-beta, fixed-total-power constraint
        q = users_quartic(beta, rho_tot, coeffs, a_lam)
        k_cont = optimal_users(beta, rho_tot, coeffs, a_lam)
        k_new = refine_integer(k_cont, users_objective(q), 1, t - 1)
        rho_cur = rho_tot / k_new

        # antenna update at the new K
        m_cont = optimal_antennas(k_new, rho_cur, coeffs, a_lam)
        m_new = refine_integer(
            m_cont, lambda mm: ee_zf(mm, k_new, rho_cur, coeffs, a_lam),
            k_new, 10 * t,
        )

        # power update at the new (M, K)
        rho_new = rho_cur if m_new == k_new else optimal_power(m_new, k_new, coeffs, a_lam)
        ee_new = ee_zf(m_new, k_new, rho_new, coeffs, a_lam)

        if m_new == m and k_new == k:
            converged = True
            m, k, rho = m_new, k_new, rho_new
            break
        m, k, rho = m_new, k_new, rho_new
        trace.append(DesignPoint(m=m, k=k, rho=rho, ee=ee_new))
    productive = len(trace) - 1
    count = productive if productive > 0 else (1 if converged else 0)
    return AlternatingTrace(iterations=trace, converged=converged, iteration_count=count)
