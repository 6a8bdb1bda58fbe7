"""Five-field kinetic moment system: symbol, evolution, projection."""

import numpy as np
import pytest

from hydrobench.coefficients import eigenvalue_set
from hydrobench.dispersion import Branch, ModelId, branches, sigma_asymptotic
from hydrobench.hydro_spectral import HydroState, evolve, to_modes
from hydrobench.moment_reference import (
    burnett_deviation_rms,
    evolve_moments,
    from_hydro,
    hydro_projection,
    moment_symbol,
)

EV = eigenvalue_set(-1)


def grid(n):
    return 2.0 * np.pi * np.arange(n) / n


class TestMomentSymbol:
    def test_zero_k_pure_relaxation(self):
        eps = 0.25
        m = moment_symbol(0.0, eps, EV)
        expected = np.diag([0.0, 0.0, 0.0, -1.0 / eps, (-2.0 / 3.0) / eps])
        assert np.allclose(m, expected, atol=0)

    def test_velocity_row_entries(self):
        m = moment_symbol(1.0, 1.0, EV)
        assert m[1, 2] == 1j
        assert m[1, 3] == 1j
        assert m[1, 0] == 0
        assert m[1, 4] == 0

    def test_quasi_steady_closures(self):
        # Eliminating the fast rows reproduces the first-order flux laws:
        # stress gain 4*eps/(3*lambda02) * d/dx and heat gain
        # 5*eps/(2*lambda11) * d/dx acting on (p - n).
        k, eps = 1.3, 0.07
        m = moment_symbol(k, eps, EV)
        d_dx = -1j * k
        stress_gain = -m[3, 1] / m[3, 3]
        assert stress_gain == pytest.approx(4.0 * eps / 3.0 / (-1.0) * d_dx)
        heat_gain_p = -m[4, 2] / m[4, 4]
        heat_gain_n = -m[4, 0] / m[4, 4]
        expected = 5.0 * eps / 2.0 / (-2.0 / 3.0) * d_dx
        assert heat_gain_p == pytest.approx(expected)
        assert heat_gain_n == pytest.approx(-expected)

    def test_conduction_coefficient_route(self):
        # Energy-row flux through the quasi-steady q gives (5/(3*lambda11)) eps T_xx.
        k, eps = 0.9, 0.1
        m = moment_symbol(k, eps, EV)
        gain = m[2, 4] * (-m[4, 2] / m[4, 4])  # dp/dt contribution per p mode
        expected = (2.0 / 3.0) * (1j * k) * (5.0 * eps / 2.0 / (-2.0 / 3.0)) * (-1j * k)
        assert gain == pytest.approx(expected)
        assert expected.real == pytest.approx(-(5.0 / (3.0 * (2.0 / 3.0))) * eps * k * k)

    def test_eps_validation(self):
        with pytest.raises(ValueError):
            moment_symbol(1.0, 0.0, EV)

    def test_spectral_stability_grid(self):
        worst = -np.inf
        for k in np.linspace(0.0, 15.0, 61):
            for eps in (0.02, 0.1, 0.4, 1.0):
                eig = np.linalg.eigvals(moment_symbol(float(k), eps, EV))
                worst = max(worst, float(eig.real.max()))
        assert worst <= 1e-10


class TestEvolveMoments:
    def test_zero_k_stress_relaxation(self):
        n = 8
        eps = 0.2
        state = HydroState(u=np.zeros(n), p=np.zeros(n), s=np.zeros(n))
        moments = from_hydro(state, eps)
        modes = moments.modes.copy()
        modes[3, 0] = 0.7  # uniform stress moment
        moments = type(moments)(modes=modes, eps=eps, time=0.0)
        t = 0.42
        out = evolve_moments(moments, EV, t)
        assert out.modes[3, 0] == pytest.approx(0.7 * np.exp(-t / eps), rel=1e-12)

    def test_conserved_means(self):
        n = 16
        x = grid(n)
        state = HydroState(u=0.3 + np.sin(x), p=np.full(n, 0.2), s=np.full(n, -0.1))
        moments = from_hydro(state, 0.1)
        out = evolve_moments(moments, EV, 3.0)
        assert np.array_equal(out.modes[:3, 0], moments.modes[:3, 0])

    def test_semigroup(self):
        n = 16
        state = HydroState(u=np.sin(grid(n)), p=np.zeros(n), s=np.zeros(n))
        moments = from_hydro(state, 0.1)
        one = evolve_moments(moments, EV, 1.1)
        two = evolve_moments(evolve_moments(moments, EV, 0.6), EV, 0.5)
        assert np.max(np.abs(one.modes - two.modes)) <= 1e-11

    def test_hermitian_preserved(self):
        from hydrobench._modal import hermitian_violation

        n = 16
        x = grid(n)
        state = HydroState(u=np.sin(x) + 0.2 * np.sin(5 * x), p=np.cos(2 * x), s=0 * x)
        out = evolve_moments(from_hydro(state, 0.05), EV, 2.3)
        assert hermitian_violation(out.modes) <= 1e-12

    def test_relaxation_toward_ns_closure(self):
        # After the kinetic transient the stress moment tracks its quasi-steady
        # closure; the residual shrinks with eps.
        n = 32
        x = grid(n)
        state = HydroState(u=np.sin(x), p=np.zeros(n), s=np.zeros(n))
        residuals = []
        for eps in (0.1, 0.05):
            out = evolve_moments(from_hydro(state, eps), EV, 3.0)
            projection = hydro_projection(out)
            du_dx = np.fft.ifft(
                1j * np.fft.fftfreq(n, d=1.0 / n) * np.fft.fft(projection.state.u)
            ).real
            closure = 4.0 * eps / (3.0 * -1.0) * du_dx
            residuals.append(float(np.max(np.abs(projection.stress - closure))))
        assert residuals[1] < residuals[0]

    def test_dt_validation(self):
        state = HydroState(u=np.zeros(8), p=np.zeros(8), s=np.zeros(8))
        with pytest.raises(ValueError):
            evolve_moments(from_hydro(state, 0.1), EV, 0.0)


class TestHydroProjection:
    def test_entropy_relation(self):
        n = 8
        state = HydroState(u=np.zeros(n), p=np.zeros(n), s=np.zeros(n))
        moments = from_hydro(state, 0.1)
        modes = moments.modes.copy()
        modes[0, 0] = 1.0  # uniform n
        modes[2, 0] = 1.0  # uniform p
        projection = hydro_projection(type(moments)(modes=modes, eps=0.1, time=0.0))
        assert projection.state.s == pytest.approx(np.full(n, -1.0))
        assert projection.state.temperature == pytest.approx(np.zeros(n), abs=1e-15)

    def test_zero_fields(self):
        n = 8
        state = HydroState(u=np.zeros(n), p=np.zeros(n), s=np.zeros(n))
        projection = hydro_projection(from_hydro(state, 0.1))
        assert np.all(projection.state.s == 0)
        assert np.all(projection.stress == 0)
        assert np.all(projection.heat_flux == 0)

    def test_round_trips_hydro_fields(self):
        n = 16
        x = grid(n)
        state = HydroState(u=np.sin(x), p=0.5 * np.cos(2 * x), s=0.2 * np.sin(3 * x))
        projection = hydro_projection(from_hydro(state, 0.1))
        assert projection.state.u == pytest.approx(state.u, abs=1e-13)
        assert projection.state.p == pytest.approx(state.p, abs=1e-13)
        assert projection.state.s == pytest.approx(state.s, abs=1e-13)


class TestHydrodynamicLimit:
    def test_sound_branch_convergence_order(self):
        errors = []
        for eps in (0.1, 0.05, 0.025, 0.0125):
            table = branches(ModelId.MOMENT_REFERENCE, [1.0], eps, EV)
            sound = table.branch(Branch.SOUND_PLUS)[0]
            errors.append(abs(sound - sigma_asymptotic(1.0, eps, EV, Branch.SOUND_PLUS)))
        orders = [np.log2(a / b) for a, b in zip(errors, errors[1:])]
        assert min(orders) >= 2.7

    def test_entropy_branch_convergence(self):
        errors = []
        for eps in (0.1, 0.05, 0.025, 0.0125):
            table = branches(ModelId.MOMENT_REFERENCE, [1.0], eps, EV)
            entropy = table.branch(Branch.ENTROPY)[0]
            errors.append(abs(entropy - sigma_asymptotic(1.0, eps, EV, Branch.ENTROPY)))
        orders = [np.log2(a / b) for a, b in zip(errors, errors[1:])]
        assert min(orders) >= 1.8


class TestBurnettDeviation:
    def test_standing_wave_uniform_error_scaling(self):
        n = 64
        state = HydroState(u=np.sin(grid(n)), p=np.zeros(n), s=np.zeros(n))
        coarse = burnett_deviation_rms(state, 0.1, EV, time=1.0 / 0.1)
        fine = burnett_deviation_rms(state, 0.05, EV, time=1.0 / 0.05)
        assert 1.5 <= coarse / fine <= 2.5

    def test_deviation_grows_with_eps(self):
        n = 32
        state = HydroState(u=np.sin(grid(n)), p=np.zeros(n), s=np.zeros(n))
        small = burnett_deviation_rms(state, 0.025, EV, time=40.0)
        large = burnett_deviation_rms(state, 0.2, EV, time=10.0)
        assert large > small

    def test_matches_direct_comparison(self):
        # One sample of the windowed RMS agrees with an independently
        # assembled instantaneous comparison.
        n = 32
        x = grid(n)
        state = HydroState(u=np.sin(x), p=np.zeros(n), s=np.zeros(n))
        eps, t = 0.1, 6.0
        hydro = evolve(to_modes(state), ModelId.BURNETT, eps, EV, t)
        moments = evolve_moments(from_hydro(state, eps), EV, t)
        projection = hydro_projection(moments).state
        from hydrobench.hydro_spectral import from_modes

        direct = from_modes(hydro)
        dx = 2.0 * np.pi / n
        gap = np.sqrt(
            dx
            * np.sum(
                (direct.u - projection.u) ** 2
                + (direct.p - projection.p) ** 2
                + (direct.s - projection.s) ** 2
            )
        )
        rms = burnett_deviation_rms(state, eps, EV, time=t, n_samples=1)
        assert rms == pytest.approx(gap, rel=1e-10)
