"""Energy-efficiency-optimal multi-user MIMO design.

Closed-form optimizers for the number of BS antennas, number of users, and
normalized transmit power under a polynomial circuit power model, verified
by a Monte Carlo link-level simulator (ZF / RZF / MRT precoding).
"""
from mimoee.analytic import (
    DesignPoint,
    ee_zf,
    maximize_quasiconcave,
    optimal_antennas,
    optimal_power,
    optimal_users,
    power_scaling_lower_bound,
    refine_integer,
    solve_quartic,
)
from mimoee.design import (
    AlternatingTrace,
    SearchSpace,
    alternating_optimize,
    ee_surface,
    exhaustive_search,
)
from mimoee.hardware import (
    HardwareProfile,
    PowerCoefficients,
    REFERENCE_PROFILE,
    coefficients_from_hardware,
    coherence_block_length,
    total_power,
)
from mimoee.lambert import exp_w_plus_one, w0
from mimoee.linksim import McConfig, McResult, PrecoderSpec, ee_mc, optimize_rho_mc, simulate
from mimoee.propagation import (
    AnnulusUniform,
    EmpiricalPdf,
    REFERENCE_MODEL,
    a_lambda,
    sample_user_variance,
)

__version__ = "0.1.0"
