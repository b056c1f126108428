"""Benchmark problem definitions: pinned values and PDE residual invariants."""

import math

import mpmath
import numpy as np
import pytest

from stefanflux import (
    BenchmarkId,
    StefanProblem,
    benchmark_problem,
    example1,
    example2,
    linear_boundary_problem,
    neumann_consistency,
    sqrt_boundary_problem,
)
from stefanflux.problem import EXAMPLE2_ALPHA, EXAMPLE2_T0, sample_curve, sample_field


def test_example1_pinned_values():
    prob = example1()
    s0 = math.sqrt(2.0) - 1.0
    assert prob.boundary(0.0) == pytest.approx(s0, rel=1e-14)
    assert prob.boundary(1.0) == pytest.approx(s0 + 1.0 / math.sqrt(2.0), rel=1e-14)
    # Flux at the origin at t = 0: -(1/sqrt(2)) exp(1 - 1/sqrt(2)).
    ref = -(1.0 / math.sqrt(2.0)) * math.exp(1.0 - 1.0 / math.sqrt(2.0))
    assert prob.exact_flux_gradient(0.0) == pytest.approx(ref, rel=1e-13)
    assert prob.exact_flux_gradient(0.0) == pytest.approx(-0.9477, abs=1e-4)
    assert prob.melt_temperature == 0.0


def test_example2_pinned_values():
    prob = example2()
    assert prob.boundary(0.0) == pytest.approx(0.5, abs=2e-5)
    assert prob.boundary(0.0) == pytest.approx(
        2.0 * EXAMPLE2_ALPHA * math.sqrt(EXAMPLE2_T0), rel=1e-14)
    assert prob.exact_flux_gradient(0.0) == pytest.approx(-2.259, abs=2e-3)
    # Independent closed form: u_x(0,0) = -alpha exp(alpha^2) / sqrt(t0).
    ref = -EXAMPLE2_ALPHA * math.exp(EXAMPLE2_ALPHA ** 2) / math.sqrt(EXAMPLE2_T0)
    assert prob.exact_flux_gradient(0.0) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("prob", [example1(), example2()], ids=["example1", "example2"])
def test_stefan_condition_residual(prob):
    ts = np.linspace(0.0, prob.horizon, 101)
    for t in ts:
        s = prob.boundary(t)
        h = 1e-6 * s
        ux = (prob.exact_solution(s + h, t) - prob.exact_solution(s - h, t)) / (2 * h)
        lhs = -prob.conductivity * ux
        rhs = prob.latent_heat * prob.density * prob.boundary_rate(t)
        assert abs(lhs - rhs) <= 1e-8


@pytest.mark.parametrize("prob", [example1(), example2()], ids=["example1", "example2"])
def test_heat_equation_residual(prob):
    rng = np.random.default_rng(17)
    a2 = prob.diffusivity ** 2
    h = 1e-4
    for _ in range(100):
        t = float(rng.uniform(0.05, prob.horizon))
        x = float(rng.uniform(0.0, prob.boundary(t)))
        u = prob.exact_solution
        ut = (u(x, t + h) - u(x, t - h)) / (2 * h)
        uxx = (u(x + h, t) - 2 * u(x, t) + u(x - h, t)) / (h * h)
        assert abs(ut - a2 * uxx) <= 1e-4


@pytest.mark.parametrize("prob", [example1(), example2()], ids=["example1", "example2"])
def test_boundary_data_consistency(prob):
    # Initial profile is the exact solution at t = 0; the temperature on the
    # moving boundary equals the melt value.
    xs = np.linspace(0.0, prob.boundary(0.0), 50)
    for x in xs:
        assert prob.initial_profile(float(x)) == pytest.approx(
            prob.exact_solution(float(x), 0.0), rel=1e-12, abs=1e-12)
    ts = np.linspace(0.0, prob.horizon, 50)
    for t in ts:
        assert prob.exact_solution(prob.boundary(float(t)), float(t)) == pytest.approx(
            prob.melt_temperature, abs=1e-10)


def test_flux_gradient_matches_numerical_derivative():
    # The closed-form gradient at x = 0 against a central difference of the
    # exact temperature field.
    h = 1e-5
    for prob in (example1(), example2()):
        for t in (0.0, 0.4, 1.0):
            ref = (prob.exact_solution(h, t) - prob.exact_solution(-h, t)) / (2 * h)
            assert prob.exact_flux_gradient(t) == pytest.approx(ref, rel=1e-8)


def test_erf_accuracy_against_mpmath():
    from scipy.special import erf

    for z in np.linspace(0.0, 4.0, 21):
        assert abs(erf(z) - float(mpmath.erf(z))) <= 1e-12


def test_neumann_consistency_values():
    val = neumann_consistency(EXAMPLE2_ALPHA, EXAMPLE2_T0)
    assert val == pytest.approx(1.0, abs=1e-4)
    ref = float(EXAMPLE2_ALPHA * mpmath.sqrt(mpmath.pi)
                * mpmath.exp(EXAMPLE2_ALPHA ** 2) * mpmath.erf(EXAMPLE2_ALPHA))
    assert val == pytest.approx(ref, rel=1e-12)
    assert neumann_consistency(0.0) == 0.0
    assert neumann_consistency(1.0) == pytest.approx(4.0601, abs=1e-3)
    assert neumann_consistency(1.0) > 1.0


def test_interface_flux():
    prob = example1()
    p1 = 1.0 / math.sqrt(2.0)
    assert prob.interface_flux(0.3) == pytest.approx(p1, rel=1e-14)
    ts = np.array([0.0, 0.5, 1.0])
    np.testing.assert_allclose(prob.interface_flux(ts), np.full(3, p1), rtol=1e-14)
    prob2 = example2()
    t = 0.25
    ref = EXAMPLE2_ALPHA / math.sqrt(t + EXAMPLE2_T0)
    assert prob2.interface_flux(t) == pytest.approx(ref, rel=1e-12)


def test_benchmark_factory():
    for ident in ("example1", BenchmarkId.EXAMPLE1):
        prob = benchmark_problem(ident, horizon=2.0)
        assert prob.horizon == 2.0
        assert prob.label == "example1"
    prob = benchmark_problem("example2")
    assert prob.label == "example2"
    with pytest.raises(ValueError):
        benchmark_problem("example3")


def test_factory_validation():
    with pytest.raises(ValueError):
        linear_boundary_problem(0.0, 1.0)
    with pytest.raises(ValueError):
        linear_boundary_problem(0.1, -0.2)  # boundary crosses zero before T
    with pytest.raises(ValueError):
        sqrt_boundary_problem(-1.0, 0.1)
    with pytest.raises(ValueError):
        sqrt_boundary_problem(0.5, 0.0)
    with pytest.raises(ValueError):
        example1(horizon=0.0)
    with pytest.raises(ValueError):
        StefanProblem(
            diffusivity=1.0, conductivity=-1.0, latent_heat=1.0, density=1.0,
            melt_temperature=0.0, horizon=1.0, boundary=lambda t: 1.0 + t,
            boundary_rate=lambda t: 1.0, initial_profile=lambda x: 0.0)


def test_scalar_only_callables_are_sampled_pointwise():
    # math-based callables reject arrays; the samplers fall back to a loop.
    s = lambda t: math.exp(t)
    out = sample_curve(s, np.array([0.0, 1.0]))
    np.testing.assert_allclose(out, [1.0, math.e], rtol=1e-15)
    u = lambda x, t: math.sin(x) + t
    out = sample_field(u, np.array([0.0, 0.5]), np.array([1.0, 2.0]))
    np.testing.assert_allclose(out, [1.0, math.sin(0.5) + 2.0], rtol=1e-15)


def test_material_parameters_propagate():
    prob = linear_boundary_problem(0.4, 0.7, conductivity=2.0, latent_heat=3.0,
                                   density=0.5, diffusivity=1.1)
    assert prob.conductivity == 2.0
    # Interface flux scales with L * gamma.
    assert prob.interface_flux(0.0) == pytest.approx(3.0 * 0.5 * 0.7, rel=1e-14)
    # The manufactured solution still satisfies the Stefan condition.
    t, s = 0.5, prob.boundary(0.5)
    h = 1e-6 * s
    ux = (prob.exact_solution(s + h, t) - prob.exact_solution(s - h, t)) / (2 * h)
    assert -prob.conductivity * ux == pytest.approx(
        prob.latent_heat * prob.density * prob.boundary_rate(t), abs=1e-8)
