"""One-phase inverse Stefan problems with a known moving boundary.

The temperature u(x, t) solves

    u_t = a^2 u_xx            on 0 < x < s(t), 0 < t <= T
    u(x, 0) = f(x)            on 0 <= x <= s(0)
    u(s(t), t) = u_star       (phase-change temperature on the interface)
    -conductivity * u_x(s(t), t) = latent_heat * density * s'(t)

with s(t) prescribed.  The quantity to reconstruct is the gradient
u_x(0, t); the physical flux is -conductivity * u_x(0, t).

Two closed-form families are provided.  A linear boundary s = p0 + p1 t
pairs with a travelling-wave exponential solution, and a square-root
boundary s = 2 alpha sqrt(t + t0) pairs with the classical similarity
solution in erf.  The benchmark presets are fixed members of these
families.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy.special import erf

__all__ = [
    "BenchmarkId",
    "StefanProblem",
    "example1",
    "example2",
    "benchmark_problem",
    "linear_boundary_problem",
    "sqrt_boundary_problem",
    "neumann_consistency",
    "sample_curve",
    "sample_field",
    "EXAMPLE2_ALPHA",
    "EXAMPLE2_T0",
]

# Similarity constants of the square-root benchmark.  alpha is (approximately)
# the root of alpha sqrt(pi) exp(alpha^2) erf(alpha) = 1, see neumann_consistency.
EXAMPLE2_ALPHA = 0.620063
EXAMPLE2_T0 = 0.162558


class BenchmarkId(str, Enum):
    EXAMPLE1 = "example1"
    EXAMPLE2 = "example2"


def sample_curve(f, x):
    """Evaluate a callable on an array, tolerating scalar-only callables."""
    x = np.asarray(x, dtype=float)
    y = None
    try:
        y = np.asarray(f(x), dtype=float)
    except (TypeError, ValueError):
        pass
    if y is None or y.shape != x.shape:
        flat = np.array([float(f(float(v))) for v in np.atleast_1d(x).ravel()])
        y = flat.reshape(x.shape)
    return float(y) if x.ndim == 0 else y


def sample_field(f, x, t):
    """Evaluate a two-argument callable on broadcast arrays."""
    xb, tb = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    try:
        y = np.asarray(f(xb, tb), dtype=float)
        if y.shape == xb.shape:
            return y
    except (TypeError, ValueError):
        pass
    flat = np.array([float(f(float(a), float(b)))
                     for a, b in zip(xb.ravel(), tb.ravel())])
    return flat.reshape(xb.shape)


@dataclass(frozen=True)
class StefanProblem:
    """Problem data plus optional exact oracles for error reporting.

    boundary and boundary_rate are s(t) and s'(t); initial_profile is f(x).
    exact_solution(x, t) and exact_flux_gradient(t) (the exact u_x(0, t))
    are only needed when computing errors against a known solution.
    """

    diffusivity: float
    conductivity: float
    latent_heat: float
    density: float
    melt_temperature: float
    horizon: float
    boundary: Callable
    boundary_rate: Callable
    initial_profile: Callable
    exact_solution: Optional[Callable] = None
    exact_flux_gradient: Optional[Callable] = None
    label: str = field(default="custom", compare=False)

    def __post_init__(self):
        for name in ("diffusivity", "conductivity", "latent_heat", "density"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be positive and finite, got {value}")
        if not np.isfinite(self.horizon) or self.horizon <= 0.0:
            raise ValueError(f"horizon must be positive and finite, got {self.horizon}")
        if not np.isfinite(self.melt_temperature):
            raise ValueError("melt_temperature must be finite")
        probe = sample_curve(self.boundary, np.linspace(0.0, self.horizon, 101))
        if not np.all(np.isfinite(probe)) or np.any(probe <= 0.0):
            raise ValueError("boundary s(t) must stay positive and finite on [0, horizon]")

    def interface_flux(self, t):
        """Clean interface energy-balance data latent_heat * density * s'(t)."""
        return self.latent_heat * self.density * sample_curve(self.boundary_rate, t)


def linear_boundary_problem(p0, p1, *, horizon=1.0, diffusivity=1.0, conductivity=1.0,
                            latent_heat=1.0, density=1.0, melt_temperature=0.0,
                            label="linear"):
    """Problem with s(t) = p0 + p1 t and a travelling-wave exact solution.

    The solution u = u_star + amp * (exp(rate * (s(t) - x)) - 1) with
    rate = p1 / a^2 and amp = latent_heat * density * a^2 / conductivity
    satisfies the heat equation, the interface temperature condition and
    the interface energy balance identically; f is its restriction to t = 0.
    """
    p0 = float(p0)
    p1 = float(p1)
    if p0 <= 0.0:
        raise ValueError(f"p0 must be positive so the initial domain is non-empty, got {p0}")
    if p0 + p1 * horizon <= 0.0:
        raise ValueError("boundary must stay positive over the horizon")
    a2 = diffusivity * diffusivity
    rate = p1 / a2
    amp = latent_heat * density * a2 / conductivity

    def boundary(t):
        return p0 + p1 * np.asarray(t, dtype=float)

    def boundary_rate(t):
        return np.full_like(np.asarray(t, dtype=float), p1)

    def exact(x, t):
        x = np.asarray(x, dtype=float)
        return melt_temperature + amp * np.expm1(rate * (p0 + p1 * np.asarray(t, dtype=float) - x))

    def exact_ux0(t):
        return -amp * rate * np.exp(rate * (p0 + p1 * np.asarray(t, dtype=float)))

    return StefanProblem(
        diffusivity=diffusivity, conductivity=conductivity, latent_heat=latent_heat,
        density=density, melt_temperature=melt_temperature, horizon=horizon,
        boundary=boundary, boundary_rate=boundary_rate,
        initial_profile=lambda x: exact(x, 0.0),
        exact_solution=exact, exact_flux_gradient=exact_ux0, label=label)


def sqrt_boundary_problem(alpha, t0, *, horizon=1.0, diffusivity=1.0, conductivity=1.0,
                          latent_heat=1.0, density=1.0, melt_temperature=0.0,
                          label="sqrt"):
    """Problem with s(t) = 2 alpha sqrt(t + t0) and the erf similarity solution.

    The solution is u = u_star + amp * (1 - erf(x / (2 a sqrt(t + t0))) / erf(alpha / a))
    with the amplitude fixed by the interface energy balance:
    amp = latent_heat * density * alpha * a * sqrt(pi) * exp((alpha/a)^2) * erf(alpha/a)
          / conductivity.
    Fixing amp this way keeps all three interface/initial conditions exactly
    consistent even when alpha is a rounded similarity root.
    """
    alpha = float(alpha)
    t0 = float(t0)
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if t0 <= 0.0:
        raise ValueError(f"t0 must be positive, got {t0}")
    a = diffusivity
    ratio = alpha / a
    # Extreme alpha overflows amp to inf; assembly reports that as a
    # numerical error instead of a warning here.
    with np.errstate(over="ignore"):
        amp = (latent_heat * density * alpha * a * math.sqrt(math.pi)
               * np.exp(ratio * ratio) * erf(ratio) / conductivity)
    scale = erf(ratio)

    def boundary(t):
        return 2.0 * alpha * np.sqrt(np.asarray(t, dtype=float) + t0)

    def boundary_rate(t):
        return alpha / np.sqrt(np.asarray(t, dtype=float) + t0)

    def exact(x, t):
        z = np.asarray(x, dtype=float) / (2.0 * a * np.sqrt(np.asarray(t, dtype=float) + t0))
        return melt_temperature + amp * (1.0 - erf(z) / scale)

    def exact_ux0(t):
        root = np.sqrt(np.asarray(t, dtype=float) + t0)
        return -amp / (a * math.sqrt(math.pi) * scale * root)

    return StefanProblem(
        diffusivity=diffusivity, conductivity=conductivity, latent_heat=latent_heat,
        density=density, melt_temperature=melt_temperature, horizon=horizon,
        boundary=boundary, boundary_rate=boundary_rate,
        initial_profile=lambda x: exact(x, 0.0),
        exact_solution=exact, exact_flux_gradient=exact_ux0, label=label)


def example1(horizon=1.0):
    """Travelling-wave benchmark: s(t) = sqrt(2) - 1 + t / sqrt(2), all physical
    constants equal to one, u = exp(1 - 1/sqrt(2) + t/2 - x/sqrt(2)) - 1."""
    return linear_boundary_problem(math.sqrt(2.0) - 1.0, 1.0 / math.sqrt(2.0),
                                   horizon=horizon, label="example1")


def example2(horizon=1.0):
    """Similarity benchmark: s(t) = 2 alpha sqrt(t + t0) with the tabulated
    constants alpha = 0.620063, t0 = 0.162558 and unit physical constants."""
    return sqrt_boundary_problem(EXAMPLE2_ALPHA, EXAMPLE2_T0,
                                 horizon=horizon, label="example2")


def benchmark_problem(benchmark, horizon=1.0):
    """Materialize a benchmark preset from its identifier."""
    benchmark = BenchmarkId(benchmark)
    if benchmark is BenchmarkId.EXAMPLE1:
        return example1(horizon)
    return example2(horizon)


def neumann_consistency(alpha, t0=None):
    """Value of alpha * sqrt(pi) * exp(alpha^2) * erf(alpha).

    Equals 1 exactly when alpha is the similarity root of the classical
    one-phase melting problem, so evaluating it at preset constants checks
    that they describe a genuine similarity solution.  t0 is accepted for
    signature symmetry with the preset constants and is not used.
    """
    alpha = float(alpha)
    return float(alpha * math.sqrt(math.pi) * np.exp(alpha * alpha) * erf(alpha))
