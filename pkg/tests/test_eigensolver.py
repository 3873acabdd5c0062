import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pctsolve.eigensolver import (
    Grid,
    GridFunction,
    node_count,
    overlap,
    residual_norm,
    solve_constant_mass,
    solve_effective_mass,
)
from pctsolve.errors import ArgumentError, ConfigError, GridMismatchError


class TestGrid:
    def test_spacing_and_points(self):
        grid = Grid(0.0, 1.0, 101)
        assert grid.h == pytest.approx(0.01)
        assert grid.points[0] == 0.0 and grid.points[-1] == 1.0

    def test_validation(self):
        with pytest.raises(ConfigError):
            Grid(1.0, 0.0, 100)
        with pytest.raises(ConfigError):
            Grid(0.0, 1.0, 8)

    def test_grid_function_shape_check(self):
        grid = Grid(0.0, 1.0, 32)
        with pytest.raises(GridMismatchError):
            GridFunction(grid, np.zeros(31))


class TestConstantMass:
    def test_harmonic_oscillator(self):
        # -(1/2) psi'' + (1/2) x^2 psi = E psi  ->  E_n = n + 1/2
        grid = Grid(-10.0, 10.0, 16001)
        res = solve_constant_mass(grid, 0.5 * grid.points**2, 4)
        assert np.allclose(res.energies, [0.5, 1.5, 2.5, 3.5], rtol=1e-6)

    def test_particle_in_a_box(self):
        # V = 0 with Dirichlet walls: E_n = (n+1)^2 pi^2 / (2 L^2)
        grid = Grid(0.0, 1.0, 2001)
        res = solve_constant_mass(grid, np.zeros(grid.n_points), 3)
        exact = np.array([1, 4, 9]) * math.pi**2 / 2.0
        assert np.allclose(res.energies, exact, rtol=1e-5)

    def test_states_orthonormal_and_noded(self):
        grid = Grid(-8.0, 8.0, 2001)
        res = solve_constant_mass(grid, 0.5 * grid.points**2, 3)
        for i in range(3):
            assert node_count(res.state(i)) == i
            for j in range(3):
                assert overlap(grid, res.state(i), res.state(j)) == pytest.approx(
                    1.0 if i == j else 0.0, abs=1e-8
                )

    def test_sign_convention_deterministic(self):
        grid = Grid(-8.0, 8.0, 1001)
        a = solve_constant_mass(grid, 0.5 * grid.points**2, 2)
        b = solve_constant_mass(grid, 0.5 * grid.points**2, 2)
        assert np.array_equal(a.states, b.states)

    @settings(max_examples=20, deadline=None)
    @given(st.floats(-5, 5))
    def test_potential_shift_shifts_energies(self, c):
        grid = Grid(-6.0, 6.0, 501)
        v = 0.5 * grid.points**2
        base = solve_constant_mass(grid, v, 2).energies
        shifted = solve_constant_mass(grid, v + c, 2).energies
        assert np.allclose(shifted, base + c, rtol=1e-9, atol=1e-9)


class TestEffectiveMass:
    def test_reduces_to_constant_mass(self):
        grid = Grid(-8.0, 8.0, 2001)
        v = 0.5 * grid.points**2
        mid = np.ones(grid.n_points - 1)
        a = solve_effective_mass(grid, mid, v, 3)
        b = solve_constant_mass(grid, v, 3)
        assert np.allclose(a.energies, b.energies, rtol=1e-10)

    def test_heavy_box_scaling(self):
        # constant mass M: box levels scale as 1/M
        grid = Grid(0.0, 1.0, 2001)
        v = np.zeros(grid.n_points)
        res = solve_effective_mass(grid, np.full(grid.n_points - 1, 4.0), v, 2)
        exact = np.array([1, 4]) * math.pi**2 / 8.0
        assert np.allclose(res.energies, exact, rtol=1e-5)

    def test_validation(self):
        grid = Grid(0.0, 1.0, 64)
        v = np.zeros(64)
        with pytest.raises(GridMismatchError):
            solve_effective_mass(grid, np.ones(64), v, 1)
        with pytest.raises(ConfigError):
            solve_effective_mass(grid, np.zeros(63), v, 1)
        with pytest.raises(ArgumentError):
            solve_effective_mass(grid, np.ones(63), v, 0)


class TestResidual:
    def test_exact_eigenstate_small_residual(self):
        # ground state of the harmonic oscillator in closed form
        grid = Grid(-8.0, 8.0, 16001)
        x = grid.points
        psi = np.exp(-0.5 * x * x)
        v = 0.5 * x * x
        ones = np.ones_like(x)
        r = residual_norm(grid, psi, 0.5, ones, v, mass_d1=0.0 * ones)
        assert r < 1e-9

    def test_wrong_energy_large_residual(self):
        grid = Grid(-8.0, 8.0, 16001)
        x = grid.points
        psi = np.exp(-0.5 * x * x)
        ones = np.ones_like(x)
        r = residual_norm(grid, psi, 1.7, ones, 0.5 * x * x, mass_d1=0.0 * ones)
        assert r > 1e-2

    def test_numerical_mass_derivative_agrees(self):
        grid = Grid(0.5, 4.0, 8001)
        x = grid.points
        m = 1.0 + 0.3 * np.sin(x)
        m1 = 0.3 * np.cos(x)
        psi = np.exp(-((x - 2.0) ** 2))
        v = x.copy()
        a = residual_norm(grid, psi, -1.0, m, v, mass_d1=m1)
        b = residual_norm(grid, psi, -1.0, m, v)
        assert a == pytest.approx(b, rel=1e-6)
