"""
tests/unit/test_readout.py

Covers:
  - omit.readout: time convention, closed-form SNR and its components,
    optimal homodyne angle, measurement time (first crossing), cooperativity
    optimization, asymptotes, critical limits, Purcell/QND budget,
    readout_point / sweep_chi / thermal_sweep / snr_trace plumbing

All checks run with Γ = 1, so seconds = 2π·(Γτ).
"""

import math

import numpy as np
import pytest

A = 20.0
X_SIV = 2e6 ** 2 / 150e6 / 200e3


def _sec(T):
    from omit.readout import to_seconds
    return to_seconds(T, 1.0)


# ── Time convention ───────────────────────────────────────────────────────────

class TestTimeConvention:
    def test_unit_gamma(self):
        from omit.readout import to_seconds
        assert to_seconds(1.0, 1.0) == pytest.approx(2 * math.pi)

    def test_linear_linewidth_clock(self):
        from omit.readout import to_seconds
        # Γ/2π = 200 kHz: one unit of Γτ is 5 µs
        assert to_seconds(1.0, 2 * math.pi * 200e3) == pytest.approx(5e-6)

    def test_inverse(self):
        from omit.readout import to_normalized, to_seconds
        assert to_normalized(to_seconds(0.662, 3.7), 3.7) == pytest.approx(0.662)

    def test_arrays(self):
        from omit.readout import to_normalized
        out = to_normalized(np.array([2 * math.pi, 4 * math.pi]), 1.0)
        assert np.allclose(out, [1.0, 2.0])


# ── Closed-form SNR ───────────────────────────────────────────────────────────

class TestSnrSquared:
    def test_zero_at_zero_time(self):
        from omit.readout import snr_squared
        assert snr_squared(0.0, 0.5, 1.0, A, 0.0, 1.0) == 0.0

    @pytest.mark.parametrize('t1', [1e-6, 1e-4])
    def test_short_time_ring_up_law(self, t1):
        from omit.readout import snr_squared
        s1 = snr_squared(_sec(t1), X_SIV, 1.0, A, 0.0, 1.0)
        s2 = snr_squared(_sec(10 * t1), X_SIV, 1.0, A, 0.0, 1.0)
        assert math.log10(s2 / s1) == pytest.approx(5.0, abs=0.02)

    def test_scales_with_probe_power(self):
        from omit.readout import snr_squared
        low = snr_squared(_sec(2.0), 0.3, 2.0, 10.0, 0.0, 1.0)
        high = snr_squared(_sec(2.0), 0.3, 2.0, 20.0, 0.0, 1.0)
        assert high / low == pytest.approx(4.0)

    def test_sign_of_shift_irrelevant(self):
        from omit.readout import snr_squared
        assert snr_squared(_sec(1.0), -0.3, 2.0, A, 1.0, 1.0) == pytest.approx(
            snr_squared(_sec(1.0), 0.3, 2.0, A, 1.0, 1.0))

    def test_array_tau(self):
        from omit.readout import snr_squared
        out = snr_squared(_sec(np.array([0.0, 0.5, 1.0])), 0.3, 1.0, A, 0.0, 1.0)
        assert out.shape == (3,)
        assert out[0] == 0.0

    def test_long_time_linear_growth(self):
        from omit.readout import snr_squared
        # steady state at C = 1: SNR² → 8a²x²T
        x = 1e-3
        got = snr_squared(_sec(1e5), x, 1.0, A, 0.0, 1.0)
        assert got == pytest.approx(8 * A * A * x * x * 1e5, rel=1e-3)

    def test_gamma_invariance(self):
        from omit.readout import snr_squared, to_seconds
        gamma = 2 * math.pi * 200e3
        physical = snr_squared(to_seconds(0.7, gamma), X_SIV * gamma, 3.0, A, 0.0, gamma)
        normalized = snr_squared(_sec(0.7), X_SIV, 3.0, A, 0.0, 1.0)
        assert physical == pytest.approx(normalized, rel=1e-12)


class TestSnrComponents:
    def test_ratio_matches_snr_squared(self):
        from omit.readout import snr_components, snr_squared
        comp = snr_components(_sec(0.8), 0.4, 2.5, A, 1.0, 1.0)
        assert comp.snr ** 2 == pytest.approx(snr_squared(_sec(0.8), 0.4, 2.5, A, 1.0, 1.0), rel=1e-10)

    def test_negative_tau(self):
        from omit.errors import DomainError
        from omit.readout import snr_components
        with pytest.raises(DomainError):
            snr_components(-1.0, 0.4, 1.0, A, 0.0, 1.0)

    def test_zero_time(self):
        from omit.readout import snr_components
        comp = snr_components(0.0, 0.4, 1.0, A, 0.0, 1.0)
        assert comp.snr == 0.0
        assert comp.f_term == 1.0

    def test_thermal_term_limit(self):
        from omit.readout import snr_components
        comp = snr_components(_sec(1e4), 1e-6, 1.0, A, 3.0, 1.0)
        assert comp.g_term == pytest.approx(-6.0, rel=1e-3)

    def test_cold_bath_has_no_thermal_term(self):
        from omit.readout import snr_components
        assert snr_components(_sec(1.0), 0.3, 1.0, A, 0.0, 1.0).g_term == 0.0

    def test_xi(self):
        from omit.readout import snr_components
        comp = snr_components(_sec(1.0), 0.5, 1.0, A, 0.0, 1.0)
        assert comp.xi == pytest.approx(math.atan(0.5))


class TestOptimalAngle:
    def test_tends_to_quadrature(self):
        from omit.readout import optimal_homodyne_angle
        assert optimal_homodyne_angle(_sec(1e3), 0.3, 1.0, A, 1.0) == pytest.approx(math.pi / 2, abs=1e-2)

    def test_rejects_zero_time(self):
        from omit.errors import DomainError
        from omit.readout import optimal_homodyne_angle
        with pytest.raises(DomainError):
            optimal_homodyne_angle(0.0, 0.3, 1.0, A, 1.0)


# ── Measurement time ──────────────────────────────────────────────────────────

class TestMeasurementTime:
    def test_snr_is_one_at_tau(self):
        from omit.readout import measurement_time, snr_squared
        tau = measurement_time(X_SIV, A, 0.0, 1.0, 5.0)
        assert snr_squared(tau, X_SIV, 5.0, A, 0.0, 1.0) == pytest.approx(1.0, rel=1e-6)

    def test_first_crossing(self):
        from omit.readout import measurement_time, snr_squared
        tau = measurement_time(X_SIV, A, 0.0, 1.0, 5.0)
        grid = np.linspace(tau * 1e-3, tau * 0.999, 200)
        assert np.all(snr_squared(grid, X_SIV, 5.0, A, 0.0, 1.0) < 1.0)

    @pytest.mark.parametrize('chi, c_om, a', [(0.0, 1.0, A), (0.3, 0.0, A), (0.3, 1.0, 0.0)])
    def test_zero_signal_never_crosses(self, chi, c_om, a):
        from omit.errors import NoCrossingError
        from omit.readout import measurement_time
        with pytest.raises(NoCrossingError):
            measurement_time(chi, a, 0.0, 1.0, c_om)

    def test_weak_probe_times_out(self):
        from omit.errors import NoCrossingError
        from omit.readout import measurement_time
        with pytest.raises(NoCrossingError) as info:
            measurement_time(1e-9, 1e-3, 0.0, 1.0, 1.0)
        assert info.value.tau_max == pytest.approx(1e9)


class TestOptimizeCooperativity:
    def test_beats_fixed_cooperativities(self):
        from omit.readout import measurement_time, optimize_cooperativity
        c_opt, tau_opt = optimize_cooperativity(X_SIV, A, 0.0, 1.0)
        for c in (0.5, 1.0, 2.0, 5.0, 20.0):
            assert tau_opt <= measurement_time(X_SIV, A, 0.0, 1.0, c) * (1 + 1e-6)

    def test_weak_regime_impedance_matching(self):
        from omit.readout import optimize_cooperativity
        c_opt, _ = optimize_cooperativity(1e-3, A, 0.0, 1.0)
        assert c_opt == pytest.approx(1.0, rel=0.05)

    def test_cutoff_is_respected(self):
        from omit.readout import optimize_cooperativity
        c_opt, _ = optimize_cooperativity(100.0, A, 0.0, 1.0, c_max=10.0)
        assert c_opt <= 10.0 * (1 + 1e-9)

    def test_rejects_bad_cutoff(self):
        from omit.errors import DomainError
        from omit.readout import optimize_cooperativity
        with pytest.raises(DomainError):
            optimize_cooperativity(0.1, A, 0.0, 1.0, c_max=0.0)


class TestAsymptotes:
    def test_weak(self):
        from omit.readout import asymptotic_tmeas
        T = asymptotic_tmeas('weak', 1e-3, A, 0.0, 1.0) / (2 * math.pi)
        assert T == pytest.approx(312.5)

    def test_weak_thermal(self):
        from omit.readout import asymptotic_tmeas
        cold = asymptotic_tmeas('weak', 1e-3, A, 0.0, 1.0)
        assert asymptotic_tmeas('weak_thermal', 1e-3, A, 4.0, 1.0) == pytest.approx(9 * cold)

    def test_strong(self):
        from omit.readout import asymptotic_tmeas
        assert asymptotic_tmeas('strong', 1e3, A, 0.0, 1.0) == pytest.approx(_sec(1 / 3200))

    def test_no_shift(self):
        from omit.readout import asymptotic_tmeas
        assert asymptotic_tmeas('weak', 0.0, A, 0.0, 1.0) == math.inf

    def test_unknown_regime(self):
        from omit.readout import asymptotic_tmeas
        with pytest.raises(ValueError):
            asymptotic_tmeas('medium', 1.0, A, 0.0, 1.0)

    def test_steady_state_optimum(self):
        from omit.readout import steady_state_optimal_cooperativity
        assert steady_state_optimal_cooperativity(0.5, 1.0) == pytest.approx(math.sqrt(2.0))

    def test_transient_exponent(self):
        from omit.readout import transient_exponent
        chi = np.logspace(-3, -1, 5)
        slopes = transient_exponent(chi, 3.0 / chi ** 2)
        assert np.allclose(slopes, -2.0)


# ── Critical limits and QND budget ────────────────────────────────────────────

class TestCriticalLimits:
    def test_critical_phonon_number(self):
        from omit.readout import critical_phonon_number
        assert critical_phonon_number(150e6, 2e6) == pytest.approx(5625.0)
        assert critical_phonon_number(150e6, 2e6, n_spins=5) == pytest.approx(1125.0)

    def test_critical_phonon_number_domain(self):
        from omit.errors import DomainError
        from omit.readout import critical_phonon_number
        with pytest.raises(DomainError):
            critical_phonon_number(150e6, 0.0)

    def test_n_crit_curve(self):
        from omit.readout import n_crit_curve
        assert n_crit_curve(X_SIV, 750.0) == pytest.approx(5625.0)
        assert n_crit_curve(0.0, 750.0) == math.inf

    def test_safe_budget(self):
        from omit.readout import safe_phonon_budget
        assert safe_phonon_budget(150e6, 2e6) == pytest.approx(0.16 ** 2 * 5625.0)

    def test_probe_bound_minimum(self):
        from omit.readout import critical_probe_amplitude
        probe = critical_probe_amplitude(0.4, 1.0, 150.0, 2.0, 1.0)
        at_min = critical_probe_amplitude(0.4, 1.0, 150.0, 2.0, probe.c_om_at_min)
        assert probe.c_om_at_min == pytest.approx(math.sqrt(1 + 4 * 0.16))
        assert at_min.a_sq_bound == pytest.approx(probe.a_sq_min)
        assert probe.a_sq_bound >= probe.a_sq_min
        assert probe.a_bound == pytest.approx(math.sqrt(probe.a_sq_bound))

    def test_probe_bound_without_pump(self):
        from omit.readout import critical_probe_amplitude
        assert critical_probe_amplitude(0.4, 1.0, 150.0, 2.0, 0.0).a_sq_bound == math.inf


class TestPurcellBudget:
    def test_siv_purcell_time(self, siv_spin, siv_system):
        from omit.readout import purcell_time
        tau = purcell_time(siv_spin.delta_sm, siv_spin.g_sm, siv_system.gamma_mech)
        assert tau == pytest.approx(28.1e-3, rel=0.01)

    def test_collective_enhancement(self):
        from omit.readout import purcell_time
        single = purcell_time(150.0, 2.0, 1.0)
        assert purcell_time(150.0, 2.0, 1.0, n_spins=4, beta=2) == pytest.approx(single / 16)

    def test_intrinsic_t1(self):
        from omit.readout import intrinsic_t1
        assert intrinsic_t1(0.0) == math.inf
        assert intrinsic_t1(2 * math.pi) == pytest.approx(1.0)

    def test_criteria(self):
        from omit.readout import cooperativity_criterion, detuning_criterion
        assert detuning_criterion(750.0, 1.0)
        assert not detuning_criterion(0.1, 1.0)
        assert cooperativity_criterion(1.0, 1.0, 0.0)
        assert not cooperativity_criterion(0.1, 1.0, 1.0)

    def test_report_at_fixed_cooperativity(self, siv_spin, siv_system, siv_cfg):
        from omit.readout import feasibility_report
        report = feasibility_report(siv_spin, siv_system, siv_cfg.drive(c_om=1.0))
        assert report.c_om == 1.0
        assert report.qnd_ratio == pytest.approx(report.tau_purcell / report.tau_meas)
        assert report.t1 == math.inf
        assert report.detuning_criterion_ok
        assert report.n_crit == pytest.approx(5625.0)
        assert report.critical_probe is not None

    def test_over_budget_warns(self, siv_spin, siv_system, siv_cfg, caplog):
        from dataclasses import replace
        from omit.readout import feasibility_report
        drive = replace(siv_cfg.drive(c_om=1.0), a_pr_in=siv_cfg.drive().a_pr_in * 100)
        with caplog.at_level('WARNING', logger='omit.readout'):
            report = feasibility_report(siv_spin, siv_system, drive)
        assert report.warnings
        assert not report.phonon_budget_ok
        assert 'feasibility' in caplog.text


# ── Sweeps ────────────────────────────────────────────────────────────────────

class TestReadoutPoint:
    def test_fields(self):
        from omit.readout import readout_point
        r = readout_point(X_SIV, A, 0.0, 1e6)
        assert r.snr_at_tau == pytest.approx(1.0, rel=1e-6)
        assert r.n_crit == pytest.approx(5625.0)
        assert r.n_mech_at_tau > 0
        assert r.n_cav_at_tau > 0

    def test_cutoff_flag(self):
        from omit.readout import readout_point
        r = readout_point(100.0, A, 0.0, 5.0)
        assert 'c_om at cutoff' in r.warnings


class TestSweepChi:
    def test_columns_and_order(self):
        from omit.readout import CHI_COLUMNS, sweep_chi
        result = sweep_chi([1e-2, 1e-1, 1.0], A, 0.0)
        assert result.columns == CHI_COLUMNS
        assert result.column('chi_over_gamma') == [1e-2, 1e-1, 1.0]
        assert result.failures == 0

    def test_seconds_column_follows_clock(self):
        from omit.readout import sweep_chi, to_seconds
        gamma = 2 * math.pi * 200e3
        result = sweep_chi([0.1], A, 0.0, gamma_mech=gamma)
        row = dict(zip(result.columns, result.rows[0]))
        assert row['tau_seconds'] == pytest.approx(to_seconds(row['tau_gamma'], gamma))

    def test_failures_recorded(self):
        from omit.readout import sweep_chi
        result = sweep_chi([0.1, 1.0], 0.0, 0.0)
        assert result.failures == 2
        assert all(row[-1].startswith('error:') for row in result.rows)

    @pytest.mark.parametrize('grid', [[], [0.1, 0.05], [-1.0, 1.0]])
    def test_bad_grid(self, grid):
        from omit.errors import DomainError
        from omit.readout import sweep_chi
        with pytest.raises(DomainError):
            sweep_chi(grid, A, 0.0)

    def test_progress_callback(self):
        from omit.readout import sweep_chi
        calls = []
        sweep_chi([0.1, 0.2, 0.3], A, 0.0, on_done=lambda: calls.append(1))
        assert len(calls) == 3

    def test_time_non_increasing_in_chi(self):
        from omit.readout import sweep_chi
        taus = sweep_chi(np.logspace(-3, 3, 30), A, 0.0).column('tau_gamma')
        assert all(b <= a * (1 + 1e-6) for a, b in zip(taus, taus[1:]))


class TestThermalSweep:
    def test_reference_row(self):
        from omit.readout import thermal_sweep
        result = thermal_sweep([0.1], A, [0.0, 1.0])
        ratios = result.column('ratio_to_zero_temperature')
        assert ratios[0] == pytest.approx(1.0)
        assert ratios[1] > 1.0

    def test_reference_computed_when_missing(self):
        from omit.readout import thermal_sweep
        result = thermal_sweep([0.1], A, [1.0])
        assert math.isfinite(result.column('ratio_to_zero_temperature')[0])

    def test_negative_occupation(self):
        from omit.errors import DomainError
        from omit.readout import thermal_sweep
        with pytest.raises(DomainError):
            thermal_sweep([0.1], A, [-1.0])


class TestSnrTrace:
    def test_rows(self):
        from omit.readout import TRACE_COLUMNS, snr_trace
        grid = [1e-3, 1e-1, 1.0, 10.0]
        result = snr_trace(grid, X_SIV, 5.0, A, 0.0)
        assert result.columns == TRACE_COLUMNS
        assert result.column('tau_gamma') == grid
        for row in result.rows:
            assert row[2] == pytest.approx(row[1] ** 2)

    def test_matches_measurement_time(self):
        from omit.readout import measurement_time, snr_trace, to_normalized
        T = to_normalized(measurement_time(X_SIV, A, 0.0, 1.0, 5.0), 1.0)
        row = snr_trace([T], X_SIV, 5.0, A, 0.0).rows[0]
        assert row[1] == pytest.approx(1.0, rel=1e-6)

    def test_rejects_non_positive(self):
        from omit.errors import DomainError
        from omit.readout import snr_trace
        with pytest.raises(DomainError):
            snr_trace([0.0], X_SIV, 1.0, A, 0.0)
