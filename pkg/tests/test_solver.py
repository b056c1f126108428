"""Linear solvers: direct elimination, damped normal equations, conditioning."""

import math

import numpy as np
import pytest

from stefanflux import (
    HeatPolynomialBasis,
    NumericalError,
    SingularMatrixError,
    SolveConfig,
    assemble,
    condition_number,
    delta_p,
    example1,
    penalty_weights,
    preset_scheme,
    solve,
    solve_direct,
    solve_tikhonov,
)
from stefanflux.assembly import LinearSystem


def _system(matrix, rhs):
    matrix = np.asarray(matrix, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    labels = tuple(("dirichlet", i + 1) for i in range(matrix.shape[0]))
    return LinearSystem(matrix=matrix, rhs=rhs, row_labels=labels)


def _example1_system(order):
    prob = example1()
    basis = HeatPolynomialBasis(1.0, order)
    return prob, basis, assemble(prob, basis, preset_scheme(order))


def test_trivial_systems():
    sys1 = _system(np.eye(3), [1.0, 2.0, 3.0])
    np.testing.assert_array_equal(solve_direct(sys1), [1.0, 2.0, 3.0])
    sys2 = _system(np.diag([2.0, 4.0]), [2.0, 8.0])
    np.testing.assert_allclose(solve_direct(sys2), [1.0, 2.0], rtol=1e-15)
    np.testing.assert_allclose(solve_tikhonov(sys2, 0.0), [1.0, 2.0], rtol=1e-12)


def test_tikhonov_at_zero_beta_matches_direct():
    rng = np.random.default_rng(23)
    matrix = 3.0 * np.eye(3) + 0.1 * rng.standard_normal((3, 3))
    rhs = rng.standard_normal(3)
    system = _system(matrix, rhs)
    direct = solve_direct(system)
    damped = solve_tikhonov(system, 0.0)
    assert np.linalg.norm(damped - direct) <= 1e-8 * np.linalg.norm(direct)

    _, _, system = _example1_system(12)
    direct = solve_direct(system)
    damped = solve_tikhonov(system, 0.0)
    assert np.linalg.norm(damped - direct) <= 1e-6 * np.linalg.norm(direct)


def test_penalized_norm_non_increasing_in_beta():
    # Damping shrinks the coefficients of the unit-normalized family, so the
    # factorially weighted norm ||n! c_n|| cannot grow with beta.
    _, _, system = _example1_system(12)
    scale = np.array([math.factorial(n) for n in range(13)], dtype=float)
    norms = []
    for beta in (0.0, 1e-8, 1e-6, 1e-4, 1e-2):
        coeffs = solve_tikhonov(system, beta)
        norms.append(np.linalg.norm(scale * coeffs))
    for lo, hi in zip(norms[1:], norms[:-1]):
        assert lo <= hi * (1.0 + 1e-12)


def test_heavy_damping_bound():
    _, _, system = _example1_system(12)
    gram_norm = np.linalg.norm(system.matrix.T @ system.matrix, 2)
    beta = 1e12 * gram_norm
    coeffs = solve_tikhonov(system, beta)
    bound = 10.0 * np.linalg.norm(system.matrix.T @ system.rhs) / beta
    assert np.linalg.norm(coeffs) <= bound


def test_singular_matrix_names_pivot():
    system = _system([[1.0, 1.0], [1.0, 1.0]], [1.0, 0.0])
    with pytest.raises(SingularMatrixError, match="pivot 1") as info:
        solve_direct(system)
    assert info.value.pivot_index == 1
    with pytest.raises(SingularMatrixError, match="normal equations"):
        solve_tikhonov(system, 0.0)

    tiny = _system(np.diag([1.0, 1e-20]), [1.0, 1.0])
    with pytest.raises(SingularMatrixError) as info:
        solve_direct(tiny)
    assert info.value.pivot_index == 1


def test_random_backward_stability():
    rng = np.random.default_rng(31)
    matrix = np.eye(20) + 0.1 * rng.standard_normal((20, 20))
    rhs = rng.standard_normal(20)
    system = _system(matrix, rhs)
    coeffs = solve_direct(system)
    res = np.linalg.norm(matrix @ coeffs - rhs)
    assert res <= 1e-10 * (np.linalg.norm(matrix, 2) * np.linalg.norm(coeffs)
                           + np.linalg.norm(rhs))


def test_condition_number():
    assert condition_number(_system(np.eye(4), np.zeros(4))) == pytest.approx(1.0)
    assert condition_number(_system(np.diag([1.0, 10.0]), np.zeros(2))) == pytest.approx(10.0)
    # With damping the reported number describes the shifted normal equations;
    # for the identity they stay perfectly conditioned.
    assert condition_number(_system(np.eye(2), np.zeros(2)), beta=1.0) == pytest.approx(1.0)

    _, _, system = _example1_system(4)
    kappa = condition_number(system)
    assert 2.7e1 <= kappa <= 2.7e3  # within one order of the reference 2.7e2
    _, _, system12 = _example1_system(12)
    assert condition_number(system12, beta=1e-3) < condition_number(system12)


def test_exactly_singular_condition_number():
    system = _system([[1.0, 1.0], [1.0, 1.0]], [0.0, 0.0])
    assert condition_number(system) > 1e15 or math.isinf(condition_number(system))


def test_penalty_weights_are_inverse_factorials():
    weights = penalty_weights(31)
    for n in range(31):
        assert weights[n] == pytest.approx(1.0 / math.factorial(n), rel=1e-13)


def test_solve_config_dispatch_and_validation():
    with pytest.raises(ValueError):
        SolveConfig(method="qr")
    with pytest.raises(ValueError):
        SolveConfig(beta=-1.0)
    with pytest.raises(ValueError):
        SolveConfig(beta=float("nan"), method="tikhonov")
    with pytest.raises(ValueError):
        SolveConfig(beta=1e-3, method="direct")

    _, _, system = _example1_system(8)
    np.testing.assert_array_equal(solve(system, SolveConfig()), solve_direct(system))
    np.testing.assert_array_equal(
        solve(system, SolveConfig(beta=1e-4, method="tikhonov")),
        solve_tikhonov(system, 1e-4))


def test_beta_validation():
    _, _, system = _example1_system(4)
    for bad in (-1e-3, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            solve_tikhonov(system, bad)
        with pytest.raises(ValueError):
            condition_number(system, beta=bad)


def test_nonfinite_matrix_rejected():
    matrix = np.eye(2)
    matrix[0, 1] = np.inf
    system = LinearSystem(matrix=matrix, rhs=np.zeros(2),
                          row_labels=(("dirichlet", 1), ("dirichlet", 2)))
    with pytest.raises(NumericalError):
        solve_direct(system)
    with pytest.raises(NumericalError):
        condition_number(system)


def test_damped_flux_error_published_window():
    # Order 20 with beta = 1e-3 lands near the reference relative error 0.146.
    prob = example1()
    basis = HeatPolynomialBasis(1.0, 20)
    system = assemble(prob, basis, preset_scheme(20))
    coeffs = solve_tikhonov(system, 1e-3)
    err = delta_p(coeffs, prob, basis)
    assert 0.146 / 3 <= err <= 0.146 * 3
