"""
tests/unit/test_dynamics.py

Covers:
  - omit.dynamics: drift matrix, Green's function (vs scipy.linalg.expm),
    mean fields and their RK45 oracle, phonon / photon numbers,
    Green semigroup, closed forms on random points against the exact mean
    field, reflection coefficient, RWA check, homodyne mean and variance oracle
"""

import math

import numpy as np
import pytest


def _drive(c_om=1.0, a=20.0, delta=0.0):
    from omit.params import DriveConfig
    return DriveConfig(c_om=c_om, a_pr_in=a, delta=delta)


def _system(kappa, n_th=0.0):
    from omit.params import SystemParams
    return SystemParams(kappa=kappa, gamma_mech=1.0, omega_m=100.0 * kappa, g0=0.0, n_th=n_th)


# ── Green's function ──────────────────────────────────────────────────────────

class TestGreenFunction:
    def test_identity_at_zero(self, unit_system):
        from omit.dynamics import green_function
        g = green_function(0.0, unit_system, _drive(), 0.3)
        assert np.allclose(g.entries, np.eye(2))

    def test_off_diagonals_symmetric(self, unit_system):
        from omit.dynamics import green_function
        g = green_function(0.01, unit_system, _drive(2.0), 0.3)
        assert g.dc == pytest.approx(g.cd, rel=1e-12)

    @pytest.mark.parametrize('tau', [1e-4, 0.05, 0.5])
    def test_matches_scipy_expm(self, tau):
        from scipy.linalg import expm
        from omit.dynamics import drift_matrix, green_function
        sys_params, drive = _system(100.0), _drive(3.0)
        exact = expm(drift_matrix(sys_params, drive, 0.7) * tau)
        got = green_function(tau, sys_params, drive, 0.7).entries
        assert np.allclose(got, exact, rtol=1e-9, atol=1e-12)

    def test_exceptional_point_finite(self):
        from scipy.linalg import expm
        from omit.dynamics import drift_matrix, green_function
        from omit.params import SystemParams
        # κ = Γ and G = 0 gives degenerate eigenvalues
        sys_params = SystemParams(kappa=1.0, gamma_mech=1.0, omega_m=10.0, g0=0.0)
        drive = _drive(0.0)
        got = green_function(2.0, sys_params, drive).entries
        assert np.allclose(got, expm(drift_matrix(sys_params, drive) * 2.0))

    def test_semigroup(self):
        from omit.dynamics import green_function
        sys_params, drive = _system(100.0), _drive(3.0)
        g1 = green_function(0.013, sys_params, drive, 0.7).entries
        g2 = green_function(0.031, sys_params, drive, 0.7).entries
        both = green_function(0.044, sys_params, drive, 0.7).entries
        assert np.allclose(both, g1 @ g2, rtol=1e-12, atol=1e-14)
        assert np.allclose(g1 @ g2, g2 @ g1, rtol=1e-12, atol=1e-14)

    def test_long_delay_does_not_overflow(self, unit_system):
        from omit.dynamics import green_function
        g = green_function(50.0, unit_system, _drive(), 0.1)
        assert np.all(np.isfinite(g.entries))

    def test_negative_tau(self, unit_system):
        from omit.dynamics import green_function
        from omit.errors import DomainError
        with pytest.raises(DomainError):
            green_function(-1.0, unit_system, _drive())

    def test_drift_matrix_layout(self, unit_system):
        from omit.dynamics import drift_matrix
        M = drift_matrix(unit_system, _drive(1.0), 0.5)
        assert M[0, 0] == pytest.approx(-5000.0)
        assert M[0, 1] == pytest.approx(50j)
        assert M[1, 1] == pytest.approx(-0.5 - 0.5j)


# ── Mean fields ───────────────────────────────────────────────────────────────

class TestMeanFields:
    def test_zero_before_probe(self, unit_system):
        from omit.dynamics import mean_fields
        m = mean_fields(0.0, unit_system, _drive(), 0.2)
        assert m.c_mean == 0 and m.d_mean == 0

    def test_matches_rk45_oracle(self):
        from omit.dynamics import mean_fields, mean_fields_oracle
        sys_params, drive = _system(1e3), _drive(2.0)
        closed = mean_fields(3.0, sys_params, drive, 0.3)
        ode = mean_fields_oracle(3.0, sys_params, drive, 0.3)
        assert ode.c_mean == pytest.approx(closed.c_mean, rel=1e-6)
        assert ode.d_mean == pytest.approx(closed.d_mean, rel=1e-6)

    def test_detuned_probe_matches_oracle(self):
        from omit.dynamics import mean_fields, mean_fields_oracle
        sys_params, drive = _system(1e3), _drive(1.0, delta=0.4)
        closed = mean_fields(2.0, sys_params, drive, -0.2)
        ode = mean_fields_oracle(2.0, sys_params, drive, -0.2)
        assert ode.c_mean == pytest.approx(closed.c_mean, rel=1e-6)

    def test_approaches_steady_state(self, unit_system):
        from omit.dynamics import mean_fields, steady_state_fields
        d_ss, c_ss = steady_state_fields(unit_system, _drive(1.0), 0.3)
        late = mean_fields(60.0, unit_system, _drive(1.0), 0.3)
        assert late.c_mean == pytest.approx(c_ss, rel=1e-9)


# ── Occupation numbers ────────────────────────────────────────────────────────

class TestPhononNumber:
    def test_zero_at_switch_on(self, unit_system):
        from omit.dynamics import phonon_number
        assert phonon_number(0.0, unit_system, _drive(), 0.3) == pytest.approx(0.0, abs=1e-12)

    def test_steady_state_closed_form(self, unit_system):
        from omit.dynamics import phonon_number, steady_state_phonon_number
        drive = _drive(2.0, a=3.0)
        expected = 4.0 * 2.0 * 9.0 / (9.0 + 4.0 * 0.25)
        assert steady_state_phonon_number(unit_system, drive, 0.5) == pytest.approx(expected)
        assert phonon_number(200.0, unit_system, drive, 0.5) == pytest.approx(expected, rel=1e-9)

    def test_array_input(self, unit_system):
        from omit.dynamics import phonon_number
        out = phonon_number(np.array([0.0, 1.0, 2.0]), unit_system, _drive(), 0.1)
        assert out.shape == (3,)

    def test_matches_exact_mean_field(self):
        from omit.dynamics import mean_fields, phonon_number
        sys_params, drive = _system(1e5), _drive(2.0)
        exact = abs(mean_fields(2.0, sys_params, drive, 0.4).c_mean) ** 2
        assert phonon_number(2.0, sys_params, drive, 0.4) == pytest.approx(exact, rel=1e-2)


class TestCavPhotonNumber:
    def test_initial_value_at_impedance_matching(self, unit_system):
        from omit.dynamics import cav_photon_number
        got = cav_photon_number(0.0, unit_system, _drive(1.0, a=20.0), 0.0)
        assert got == pytest.approx(4.0 * 400.0 / 1e4)

    def test_steady_ratio_to_phonons(self, unit_system):
        from omit.dynamics import cav_photon_number, phonon_number
        drive = _drive(1.0, a=20.0)
        ratio = phonon_number(100.0, unit_system, drive) / cav_photon_number(100.0, unit_system, drive)
        assert ratio == pytest.approx(1e4, rel=1e-9)


class TestClosedFormsAgainstMeanField:
    """
    The closed-form phonon and photon numbers drop corrections of order G/κ
    and 1/(κt). They hold to 1% for κ/Γ ≥ 1e5, C ≤ 10 and Γt ≥ 0.05.
    """

    @staticmethod
    def _points(n, kappa_range, c_range, t_range, seed):
        rng = np.random.default_rng(seed)
        return zip(10 ** rng.uniform(*np.log10(kappa_range), n),
                   10 ** rng.uniform(*np.log10(c_range), n),
                   rng.uniform(-5.0, 5.0, n),
                   rng.uniform(*t_range, n))

    def test_random_points(self):
        from omit.dynamics import cav_photon_number, mean_fields, phonon_number
        for kappa, c, eps, t in self._points(50, (1e5, 1e6), (0.1, 10.0), (0.05, 5.0), 7):
            sys_params, drive = _system(kappa), _drive(c)
            exact = mean_fields(t, sys_params, drive, eps)
            assert phonon_number(t, sys_params, drive, eps) == pytest.approx(
                abs(exact.c_mean) ** 2, rel=1e-2)
            # the floor covers times where the two cavity terms nearly cancel
            assert cav_photon_number(t, sys_params, drive, eps) == pytest.approx(
                abs(exact.d_mean) ** 2, rel=1e-2, abs=1e-4 * 4.0 * drive.a_pr_in ** 2 / kappa)

    def test_random_points_rk45(self):
        from omit.dynamics import mean_fields_oracle, phonon_number
        for kappa, c, eps, t in self._points(5, (1e4, 2e4), (0.1, 2.0), (0.2, 2.0), 13):
            sys_params, drive = _system(kappa), _drive(c)
            exact = mean_fields_oracle(t, sys_params, drive, eps)
            assert phonon_number(t, sys_params, drive, eps) == pytest.approx(
                abs(exact.c_mean) ** 2, rel=1e-2)


# ── Reflection ────────────────────────────────────────────────────────────────

class TestReflection:
    def test_impedance_matching(self, unit_system):
        from omit.dynamics import reflection_coefficient
        assert abs(reflection_coefficient(0.0, unit_system, _drive(1.0))) < 1e-12

    def test_resonant_value(self, unit_system):
        from omit.dynamics import reflection_coefficient
        r = reflection_coefficient(0.0, unit_system, _drive(3.0))
        assert r == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize('delta', [-3.0, -0.5, 0.2, 1.0, 4.0])
    def test_passive(self, unit_system, delta):
        from omit.dynamics import reflection_coefficient
        assert abs(reflection_coefficient(delta, unit_system, _drive(2.0), 0.3)) <= 1.0 + 1e-12

    def test_no_pump_reflects(self, unit_system):
        from omit.dynamics import reflection_coefficient
        # bare cavity on resonance: r = 1 − 2 = −1
        assert reflection_coefficient(0.0, unit_system, _drive(0.0)) == pytest.approx(-1.0)


# ── RWA ───────────────────────────────────────────────────────────────────────

class TestRwaCheck:
    def test_siv_operating_point(self, siv_system, siv_cfg):
        from omit.dynamics import rwa_validity_check
        assert rwa_validity_check(siv_system, siv_cfg.drive(c_om=1.0), 137.0) == (True, True)

    def test_huge_occupation_breaks_beam_splitter(self, siv_system, siv_cfg):
        from omit.dynamics import rwa_validity_check
        beam, _ = rwa_validity_check(siv_system, siv_cfg.drive(c_om=1.0), 1e10)
        assert not beam


# ── Homodyne current ──────────────────────────────────────────────────────────

class TestHomodyne:
    def test_negative_time(self, unit_system):
        from omit.dynamics import integrated_output
        from omit.errors import DomainError
        with pytest.raises(DomainError):
            integrated_output(-1.0, unit_system, _drive())

    def test_optimal_angle_maximises_signal(self):
        from omit.dynamics import homodyne_signal_oracle, oracle_optimal_angle
        sys_params, drive = _system(1e4), _drive(3.0)
        best = oracle_optimal_angle(1.0, sys_params, drive, 0.5)
        top = homodyne_signal_oracle(1.0, best, sys_params, drive, 0.5)
        for phi in np.linspace(-math.pi, math.pi, 13):
            assert homodyne_signal_oracle(1.0, phi, sys_params, drive, 0.5) <= top + 1e-9 * abs(top)

    def test_no_shift_no_signal(self, unit_system):
        from omit.dynamics import homodyne_signal_oracle
        assert homodyne_signal_oracle(1.0, 0.3, unit_system, _drive(), 0.0) == pytest.approx(0.0, abs=1e-9)

    def test_vacuum_variance(self):
        from omit.dynamics import homodyne_variance_oracle
        var = homodyne_variance_oracle(1.0, 0.0, _system(1e5), _drive(3.0), 0.5)
        assert var == pytest.approx(1e5, rel=1e-5)

    def test_thermal_bath_adds_noise(self):
        from omit.dynamics import homodyne_variance_oracle
        cold = homodyne_variance_oracle(2.0, 0.0, _system(1e4), _drive(1.0), 0.1)
        warm = homodyne_variance_oracle(2.0, 0.0, _system(1e4, n_th=5.0), _drive(1.0), 0.1)
        assert warm > cold

    def test_stats_bundle(self, unit_system):
        from omit.dynamics import homodyne_mean, homodyne_stats
        stats = homodyne_stats(0.5, 0.2, unit_system, _drive(), 0.1)
        assert stats.mean == pytest.approx(homodyne_mean(0.5, 0.2, unit_system, _drive(), 0.1))
        assert stats.variance > 0
