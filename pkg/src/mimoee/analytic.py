"""Closed-form EE analysis under ZF precoding with perfect CSI.

Contains the analytic EE metric, the generic quasiconcave fractional
maximizer (log-over-affine, solved through Lambert W), and the three
marginal optimizers: number of BS antennas, normalized transmit power, and
number of users (quartic root).  All continuous optimizers are exact up to
the Lambert W / polynomial root evaluation; integer refinement picks the
better of the two neighboring integers.
"""
import math
from dataclasses import dataclass

import numpy as np

from mimoee.errors import DomainError, InfeasibleError, ValidationError
from mimoee.hardware import PowerCoefficients, total_power
from mimoee.lambert import exp_w_plus_one

_LOG2E = math.log2(math.e)


@dataclass(frozen=True)
class DesignPoint:
    """One (M, K, rho) operating point and its EE value in bit/Joule."""

    m: int
    k: int
    rho: float
    ee: float

    def __post_init__(self):
        if self.m < 1 or self.k < 1 or self.m < self.k:
            raise ValidationError("require M >= K >= 1")
        if self.ee < 0:
            raise ValidationError("ee must be >= 0")


@dataclass(frozen=True)
class QuasiconcaveProblem:
    """Constants of the scalar problem max_z f*log2(a + b z) / (c + d z)."""

    a: float
    b: float
    c: float
    d: float
    f: float

    def __post_init__(self):
        if self.b <= 0 or self.d <= 0 or self.f <= 0:
            raise ValidationError("b, d, f must be > 0")
        if self.c < 0:
            raise ValidationError("c must be >= 0")

    def objective(self, z):
        return self.f * np.log2(self.a + self.b * z) / (self.c + self.d * z)


@dataclass(frozen=True)
class QuarticCoefficients:
    """Constants of the user-count stationarity quartic.

    ``a`` is the fixed per-user rate constant log2(1 + rho_tot (beta - 1)),
    ``b = a / T``, and c0..c3 are the collected circuit-power coefficients.
    """

    a: float
    b: float
    c0: float
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0 or self.c0 <= 0:
            raise ValidationError("require a > 0, b > 0, c0 > 0")
        if min(self.c1, self.c2, self.c3) < 0:
            raise ValidationError("c1..c3 must be >= 0")


def ee_zf(m, k, rho, coeffs: PowerCoefficients, a_lam: float):
    """Analytic EE (bit/Joule) of ZF precoding with perfect CSI.

    Accepts scalars or broadcastable arrays for ``m``, ``k``, ``rho``.
    The average radiated energy is rho*K*A_lambda.
    """
    m = np.asarray(m)
    k = np.asarray(k)
    rho = np.asarray(rho)
    t = coeffs.block_length
    if np.any(m < k) or np.any(k < 1):
        raise DomainError("ee_zf requires M >= K >= 1")
    if np.any(k >= t):
        raise DomainError(f"ee_zf requires K < T = {t}")
    if np.any(rho < 0):
        raise DomainError("ee_zf requires rho >= 0")
    rate_sum = k * (1.0 - k / t) * np.log1p(rho * (m - k)) * _LOG2E
    power = total_power(coeffs, m, k, rho * k * a_lam)
    out = rate_sum / power
    return float(out) if out.ndim == 0 else out


def maximize_quasiconcave(p: QuasiconcaveProblem) -> float:
    """Unique maximizer of f*log2(a + b z)/(c + d z) over z > -a/b."""
    arg = (p.b * p.c - p.a * p.d) / (p.d * np.e)
    z = (exp_w_plus_one(arg) - p.a) / p.b
    return z


def optimal_antennas(k, rho, coeffs: PowerCoefficients, a_lam: float):
    """EE-optimal (continuous) antenna count for fixed K and rho.

    Vectorized over ``k`` and ``rho``.  Requires a positive per-antenna
    circuit cost; with none, EE keeps growing (slowly) in M and no finite
    optimum exists.
    """
    k = np.asarray(k)
    rho = np.asarray(rho)
    if np.any(k < 1) or np.any(rho <= 0):
        raise DomainError("optimal_antennas requires K >= 1 and rho > 0")
    d = coeffs.km_poly(k)
    if np.any(d <= 0):
        raise DomainError(
            "per-antenna circuit cost is zero: EE has no finite optimum in M"
        )
    a = 1.0 - k * rho
    b = rho
    c = rho * k * a_lam / coeffs.eta + coeffs.k_poly(k)
    arg = (b * c - a * d) / (d * np.e)
    m_opt = (exp_w_plus_one(arg) - a) / b
    out = np.maximum(m_opt, k)
    return float(out) if out.ndim == 0 else out


def optimal_power(m, k, coeffs: PowerCoefficients, a_lam: float):
    """EE-optimal normalized transmit power for fixed M > K.

    Vectorized over ``m`` and ``k``.
    """
    m = np.asarray(m)
    k = np.asarray(k)
    if np.any(m <= k) or np.any(k < 1):
        raise DomainError("optimal_power requires M > K >= 1")
    circuit = coeffs.circuit_power(m, k)
    arg = (m - k) * coeffs.eta * circuit / (k * a_lam * np.e) - 1.0 / np.e
    rho = (exp_w_plus_one(arg) - 1.0) / (m - k)
    return float(rho) if rho.ndim == 0 else rho


def power_scaling_lower_bound(m, k, coeffs: PowerCoefficients, a_lam: float):
    """Large-M lower bound on the optimal rho.

    Grows as O(M/ln M) when the per-antenna circuit cost is positive and
    decays as O(1/ln M) otherwise; valid once
    (M-K)*(C0~ + C1~ M) - 1 >= e.
    """
    m = np.asarray(m)
    k = np.asarray(k)
    c0t = coeffs.eta * coeffs.k_poly(k) / (k * a_lam)
    c1t = coeffs.eta * coeffs.km_poly(k) / (k * a_lam)
    t = (m - k) * (c0t + c1t * m) - 1.0
    if np.any(t < np.e):
        raise DomainError(
            "power_scaling_lower_bound requires (M-K)(C0~ + C1~ M) - 1 >= e"
        )
    log_t = np.log(t)
    out = ((c0t + c1t * m) - log_t / (m - k)) / (log_t - 1.0)
    return float(out) if out.ndim == 0 else out


def solve_quartic(q: QuarticCoefficients) -> list[float]:
    """Real roots of the user-count stationarity polynomial.

    b*c3*K^4 - 2*c3*a*K^3 - (a*c2 + b*c1)*K^2 - 2*b*c0*K + c0*a.
    Roots come from the companion-matrix eigenvalues with one Newton polish
    each; degenerates gracefully to lower degree when leading coefficients
    vanish.
    """
    if q.c3 == q.c2 == q.c1 == q.c0 == 0:
        raise DomainError("all of c0..c3 are zero")
    coeffs = np.array(
        [
            q.b * q.c3,
            -2.0 * q.c3 * q.a,
            -(q.a * q.c2 + q.b * q.c1),
            -2.0 * q.b * q.c0,
            q.c0 * q.a,
        ]
    )
    nz = np.nonzero(coeffs)[0]
    if nz.size == 0:
        raise DomainError("stationarity polynomial is identically zero")
    reduced = coeffs[nz[0] :]
    if reduced.size < 2:
        return []
    roots = np.roots(reduced)
    scale = np.max(np.abs(coeffs))
    poly = np.polynomial.Polynomial(coeffs[::-1])
    dpoly = poly.deriv()
    out = []
    for r in roots:
        if abs(r.imag) > 1e-8 * max(1.0, abs(r)):
            continue
        x = r.real
        # one Newton polish; companion eigenvalues are already near-exact
        d = dpoly(x)
        if d != 0:
            step = poly(x) / d
            if np.isfinite(step):
                x = x - step
        if abs(poly(x)) <= 1e-9 * scale * max(1.0, abs(x)) ** 4:
            out.append(float(x))
    return sorted(out)


def users_quartic(beta: float, rho_tot: float, coeffs: PowerCoefficients,
                  a_lam: float) -> QuarticCoefficients:
    """Build the stationarity quartic for the user-count problem."""
    if beta <= 1:
        raise DomainError("users_quartic requires beta > 1")
    if rho_tot <= 0:
        raise DomainError("users_quartic requires rho_tot > 0")
    a = math.log2(1.0 + rho_tot * (beta - 1.0))
    return QuarticCoefficients(
        a=a,
        b=a / coeffs.block_length,
        c0=coeffs.ck0[0] + rho_tot * a_lam / coeffs.eta,
        c1=coeffs.ck0[1] + beta * coeffs.ck1[0],
        c2=coeffs.ck0[2] + beta * coeffs.ck1[1],
        c3=coeffs.ck0[3] + beta * coeffs.ck1[2],
    )


def users_objective(q: QuarticCoefficients):
    """EE objective of the user-count problem as a function of continuous K."""

    def g(k):
        k = np.asarray(k, dtype=float)
        num = q.a * k - q.b * k * k
        den = q.c0 + k * (q.c1 + k * (q.c2 + k * q.c3))
        out = num / den
        return float(out) if out.ndim == 0 else out

    return g


def optimal_users(beta: float, rho_tot: float, coeffs: PowerCoefficients,
                  a_lam: float) -> float:
    """EE-optimal (continuous) user count for fixed beta = M/K, rho_tot = K*rho."""
    q = users_quartic(beta, rho_tot, coeffs, a_lam)
    t = coeffs.block_length
    if q.c3 == 0.0:
        # quadratic special case has an explicit positive root
        denom = q.a * q.c2 + q.b * q.c1
        if denom > 0:
            r = q.b * q.c0 / denom
            k_opt = math.sqrt(r * r + q.c0 * q.a / denom) - r
            if 0 < k_opt < t:
                return k_opt
            raise InfeasibleError(f"optimal user count {k_opt!r} not in (0, T)")
    g = users_objective(q)
    candidates = [r for r in solve_quartic(q) if 0 < r < t]
    if not candidates:
        raise InfeasibleError("no stationary user count in (0, T)")
    best = max(candidates, key=lambda r: (g(r), -r))
    return best


def refine_integer(continuous_opt: float, objective, lo: int, hi: int) -> int:
    """Best of the two integers neighboring a continuous quasiconcave optimum.

    Candidates are clamped to [lo, hi]; ties break toward the smaller value.
    """
    if lo > hi:
        raise InfeasibleError(f"empty integer range [{lo}, {hi}]")
    cands = sorted(
        {min(max(int(math.floor(continuous_opt)), lo), hi),
         min(max(int(math.ceil(continuous_opt)), lo), hi)}
    )
    return max(cands, key=lambda n: (objective(n), -n))
