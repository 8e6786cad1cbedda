"""
omit oracle-check — closed forms against the finite-κ oracles.

  omit oracle-check               5 random SNR points
  omit oracle-check --samples 20 --seed 3

Everything runs in Γ_mech = 1 units at κ/Γ = 1e5 unless noted. The oracles
take angular time; readout times go through to_seconds. Exit 0 when
every check is within its limit, 2 otherwise.
"""

import math
from dataclasses import dataclass

import numpy as np

from cli.commands.common import EXIT_OK, EXIT_PARTIAL, tolerance
from cli.format import bold, dim, green, red
from cli.timing import Timer
from omit.dynamics import (
    homodyne_variance_oracle, mean_fields, mean_fields_oracle, oracle_optimal_angle,
    oracle_snr, phonon_number, reflection_coefficient,
)
from omit.errors import OmitError
from omit.params import DriveConfig, SystemParams
from omit.readout import optimal_homodyne_angle, snr_components, to_seconds

KAPPA = 1e5
A_NORM = 20.0
SNR_LIMIT = 0.02


@dataclass(frozen=True)
class Check:
    name: str
    deviation: float
    limit: float
    detail: str = ''

    @property
    def passed(self):
        return math.isfinite(self.deviation) and self.deviation <= self.limit


def _system(kappa=KAPPA, n_th=0.0):
    return SystemParams(kappa=kappa, gamma_mech=1.0, omega_m=100.0 * kappa, g0=0.0, n_th=n_th)


def _drive(c_om):
    return DriveConfig(c_om=c_om, a_pr_in=A_NORM)


def _rel(a, b):
    return abs(a - b) / abs(b)


def check_impedance_matching():
    r = reflection_coefficient(0.0, _system(), _drive(1.0))
    return Check('reflection vanishes at C_om = 1', abs(r), 1e-12)


def check_mean_fields():
    sys_params, drive = _system(kappa=1e3), _drive(2.0)
    closed = mean_fields(3.0, sys_params, drive, 0.3)
    ode = mean_fields_oracle(3.0, sys_params, drive, 0.3)
    dev = max(_rel(ode.c_mean, closed.c_mean), _rel(ode.d_mean, closed.d_mean))
    return Check('mean fields vs RK45', dev, 1e-6, 'κ/Γ = 1e3, t = 3/Γ')


def check_phonon_number():
    sys_params, drive = _system(), _drive(2.0)
    exact = abs(mean_fields(2.0, sys_params, drive, 0.4).c_mean) ** 2
    return Check('n_mech closed form vs |c|²', _rel(phonon_number(2.0, sys_params, drive, 0.4), exact),
                 1e-2)


def check_vacuum_variance(rtol):
    sys_params = _system()
    var = homodyne_variance_oracle(1.0, 0.0, sys_params, _drive(3.0), 0.5, rtol=rtol)
    return Check('vacuum variance = κτ', _rel(var, KAPPA * 1.0), 1e-6)


def check_optimal_angle():
    sys_params, drive = _system(), _drive(3.0)
    exact = oracle_optimal_angle(1.0, sys_params, drive, 0.5)
    closed = optimal_homodyne_angle(to_seconds(1.0, 1.0), 0.5, 3.0, A_NORM, 1.0)
    dev = abs(math.remainder(exact - closed, 2 * math.pi))
    return Check('optimal homodyne angle', dev, 1e-2)


def check_snr_samples(samples, seed, rtol):
    rng = np.random.default_rng(seed)
    checks = []
    for i in range(samples):
        chi = 10 ** rng.uniform(-2, 1)
        c_om = 10 ** rng.uniform(math.log10(0.5), math.log10(50))
        n_th = float(rng.integers(0, 2))
        tau = 10 ** rng.uniform(-1, 1)
        detail = f'χ/Γ={chi:.3g} C={c_om:.3g} n_th={n_th:g} τΓ={tau:.3g}'
        try:
            exact = oracle_snr(tau, _system(n_th=n_th), _drive(c_om), chi, rtol=rtol)
            closed = snr_components(to_seconds(tau, 1.0), chi, c_om, A_NORM, n_th, 1.0).snr
            dev = _rel(exact, closed)
        except OmitError as exc:
            dev, detail = math.inf, f'{detail}: {exc}'
        checks.append(Check(f'SNR sample {i + 1}', dev, SNR_LIMIT, detail))
    return checks


def run_checks(samples=5, seed=7, rtol=1e-8):
    checks = [
        check_impedance_matching(),
        check_mean_fields(),
        check_phonon_number(),
        check_vacuum_variance(rtol),
        check_optimal_angle(),
    ]
    return checks + check_snr_samples(samples, seed, rtol)


def cmd_oracle_check(args):
    t = Timer(enabled=getattr(args, 'timing', False))
    checks = run_checks(samples=getattr(args, 'samples', 5) or 5,
                        seed=getattr(args, 'seed', 7),
                        rtol=tolerance(args, 1e-8))
    t.checkpoint('checks', points=len(checks))

    print(bold('omit oracle-check'))
    print(dim('─' * 17))
    width = max(len(c.name) for c in checks) + 2
    for c in checks:
        mark = green('✓') if c.passed else red('✗')
        print(f'  {mark} {c.name:<{width}}{c.deviation:>10.2e}  {dim(f"≤ {c.limit:.0e}")}  '
              f'{dim(c.detail)}')
    failed = sum(not c.passed for c in checks)
    print()
    if failed:
        print(f'  {red("✗")} {failed} of {len(checks)} checks failed')
    else:
        print(f'  {green("✓")} all {len(checks)} checks passed')
    t.print()
    return EXIT_PARTIAL if failed else EXIT_OK
