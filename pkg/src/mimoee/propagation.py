"""User distribution and path loss: the A_lambda statistic and variance sampling.

A_lambda = E{sigma^2 / lambda} summarizes the propagation environment: it is
the mean inverse channel gain scaled by the noise power, and it is the only
statistic of the user distribution that enters the EE expressions.  Two model
kinds are supported: users uniform over an annulus with a power-law path
loss (closed form), and an arbitrary tabulated pdf of the channel variance
(adaptive quadrature).
"""
from dataclasses import dataclass, field

import numpy as np

from mimoee.errors import NumericalError, ValidationError


@dataclass(frozen=True)
class AnnulusUniform:
    """Users uniform over the annulus d_min <= d <= d_max, lambda = D / d^kappa."""

    attenuation: float   # D, dimensionless
    kappa: float         # path loss exponent
    d_min: float         # m
    d_max: float         # m
    sigma2: float        # noise variance, J/c.u.

    def __post_init__(self):
        if not 0 < self.d_min < self.d_max:
            raise ValidationError("require 0 < d_min < d_max")
        if self.kappa <= 0:
            raise ValidationError("kappa must be > 0")
        if self.attenuation <= 0:
            raise ValidationError("attenuation must be > 0")
        if self.sigma2 <= 0:
            raise ValidationError("sigma2 must be > 0")


@dataclass(frozen=True)
class EmpiricalPdf:
    """Tabulated pdf f(x) of the channel variance, piecewise linear between knots."""

    x: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)
    sigma2: float = 1.0

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        f = np.asarray(self.density, dtype=float)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "density", f)
        if x.ndim != 1 or x.shape != f.shape or x.size < 2:
            raise ValidationError("x and density must be 1-D arrays of equal length >= 2")
        if np.any(np.diff(x) <= 0):
            raise ValidationError("x knots must be strictly increasing")
        if x[0] <= 0:
            raise ValidationError("variance support must be positive")
        if np.any(f < 0):
            raise ValidationError("density must be >= 0")
        mass = np.trapezoid(f, x)
        if abs(mass - 1.0) > 1e-6:
            raise ValidationError(f"density integrates to {mass!r}, not 1 within 1e-6")
        if self.sigma2 <= 0:
            raise ValidationError("sigma2 must be > 0")


#: Reference propagation scenario: 3GPP-like path loss in a 250 m macro cell.
REFERENCE_MODEL = AnnulusUniform(
    attenuation=10 ** -3.53,
    kappa=3.76,
    d_min=35.0,
    d_max=250.0,
    sigma2=1e-20,
)


def empirical_pdf_from_csv(path, sigma2) -> EmpiricalPdf:
    """Load a two-column (x, density) CSV into an EmpiricalPdf."""
    data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    if data.shape[1] != 2:
        raise ValidationError(f"{path}: expected two columns (x, density)")
    return EmpiricalPdf(x=data[:, 0], density=data[:, 1], sigma2=sigma2)


def a_lambda(model) -> float:
    """E{sigma^2 / lambda} for the given propagation model."""
    if isinstance(model, AnnulusUniform):
        k = model.kappa
        num = model.d_max ** (k + 2) - model.d_min ** (k + 2)
        den = model.d_max ** 2 - model.d_min ** 2
        return model.sigma2 / (model.attenuation * (1 + k / 2)) * num / den
    if isinstance(model, EmpiricalPdf):
        # the tabulated pdf is piecewise linear, so integrate sigma2/x * f(x)
        # exactly per segment: int (fi + si*(x-xi))/x dx has a log closed form
        # cancellation-free grouping: s*dx + (f0 - s*x0)*log(1+u) with
        # u = dx/x0 is rewritten as f0*dx/x0 + (f0 - s*x0)*(log1p(u) - u),
        # which stays accurate for very narrow segments
        x, f = model.x, model.density
        dx = np.diff(x)
        slope = np.diff(f) / dx
        u = dx / x[:-1]
        val = model.sigma2 * float(
            np.sum(f[:-1] * u + (f[:-1] - slope * x[:-1]) * (np.log1p(u) - u))
        )
        if val <= 0 or not np.isfinite(val):
            raise NumericalError(f"a_lambda integral evaluated to {val!r}")
        return val
    raise ValidationError(f"unknown propagation model {type(model).__name__}")


def sample_user_variance(model, rng, size=None):
    """Draw channel variance(s) lambda from the model's user distribution.

    ``rng`` is a numpy Generator; parallel workers should pass independent,
    seedable streams.
    """
    if isinstance(model, AnnulusUniform):
        # uniform over annulus area: distance density proportional to d
        d = np.sqrt(rng.uniform(model.d_min ** 2, model.d_max ** 2, size=size))
        return model.attenuation / d ** model.kappa
    if isinstance(model, EmpiricalPdf):
        return _sample_piecewise_linear(model.x, model.density, rng, size)
    raise ValidationError(f"unknown propagation model {type(model).__name__}")


def _sample_piecewise_linear(x, f, rng, size):
    """Exact inverse-CDF sampling of a piecewise-linear density."""
    seg_mass = 0.5 * (f[1:] + f[:-1]) * np.diff(x)
    cdf = np.concatenate([[0.0], np.cumsum(seg_mass)])
    cdf /= cdf[-1]
    u = rng.uniform(size=size)
    scalar = np.ndim(u) == 0
    u = np.atleast_1d(u)
    idx = np.clip(np.searchsorted(cdf, u, side="right") - 1, 0, len(seg_mass) - 1)
    # within segment i: mass(t) = f_i t + s_i t^2 / 2, slope s_i
    dx = np.diff(x)[idx]
    fi = f[:-1][idx]
    slope = (f[1:] - f[:-1])[idx] / dx
    rem = (u - cdf[idx]) * np.sum(seg_mass)
    with np.errstate(invalid="ignore", divide="ignore"):
        disc = np.sqrt(np.maximum(fi ** 2 + 2.0 * slope * rem, 0.0))
        t = np.where(
            np.abs(slope) > 1e-300 * np.maximum(fi, 1.0),
            (disc - fi) / np.where(slope != 0.0, slope, 1.0),
            np.where(fi > 0, rem / np.where(fi > 0, fi, 1.0), 0.0),
        )
    out = x[:-1][idx] + np.clip(t, 0.0, dx)
    return float(out[0]) if scalar else out
