"""
omit report — QND feasibility budget at the configured operating point.

  omit report                     SiV defaults, C_om optimized (c_om = auto)
  omit report --set c_om=2 -o r.txt

Prints the budget and writes it as `key = value` lines (default report.txt).
"""

from cli import __version__, config
from cli.commands.common import EXIT_OK, command_line, load_config, output_path
from cli.format import green, human_rate, human_seconds, kv_table, ok, red, warn
from cli.timing import Timer
from omit.dynamics import cav_photon_number, rwa_validity_check
from omit.params import MARGIN, derived_quantities, rad_to_hz, validate
from omit.readout import feasibility_report, to_normalized
from omit.sweep import format_value


def _flag(value):
    return green('yes') if value else red('no')


def build_report(cfg):
    """(FeasibilityReport, ordered key → value dict, regime warnings, G)."""
    sys_params = cfg.system()
    spin = cfg.spin()
    report = feasibility_report(spin, sys_params, cfg.drive(), optimize=cfg.c_om_auto,
                                c_max=cfg['c_max'], eta_sw=cfg['eta_sw'])
    drive = cfg.drive(c_om=report.c_om)
    warnings = validate(sys_params, drive, spin)
    G = derived_quantities(sys_params, drive).G
    T = to_normalized(report.tau_meas, sys_params.gamma_mech)
    n_cav = cav_photon_number(T / sys_params.gamma_mech, sys_params, drive, spin.chi)
    rwa_beam, rwa_g0 = rwa_validity_check(sys_params, drive, report.n_mech_at_tau)
    probe = report.critical_probe

    values = {
        'chi_over_gamma': spin.chi / sys_params.gamma_mech,
        'c_om': report.c_om,
        'c_om_optimized': cfg.c_om_auto,
        'G_hz': rad_to_hz(G),
        'tau_meas_s': report.tau_meas,
        'tau_meas_gamma': T,
        'n_mech_at_tau': report.n_mech_at_tau,
        'n_cav_at_tau': n_cav,
        'n_crit': report.n_crit,
        'phonon_budget': report.phonon_budget,
        'phonon_budget_ok': report.phonon_budget_ok,
        'a_crit_sq_over_gamma': probe.a_sq_bound / sys_params.gamma_mech,
        'a_crit_sq_min_over_gamma': probe.a_sq_min / sys_params.gamma_mech,
        'c_om_at_a_crit_min': probe.c_om_at_min,
        'tau_purcell_s': report.tau_purcell,
        't1_s': report.t1,
        'qnd_ratio': report.qnd_ratio,
        'detuning_criterion_ok': report.detuning_criterion_ok,
        'cooperativity_criterion_ok': report.cooperativity_criterion_ok,
        'rwa_beam_splitter_ok': rwa_beam,
        'rwa_g0_ok': rwa_g0,
        'margin': MARGIN,
    }
    return report, values, list(warnings) + list(report.warnings), G


def cmd_report(args):
    t = Timer(enabled=getattr(args, 'timing', False))
    cfg = load_config(args)
    out = output_path(args, 'report.txt')
    t.checkpoint('config')

    report, values, warnings, G = build_report(cfg)
    t.checkpoint('report')

    kv_table('omit report', [
        ('χ/Γ', f'{values["chi_over_gamma"]:.4g}'),
        ('C_om', f'{report.c_om:.4g}' + (' (optimized)' if cfg.c_om_auto else '')),
        ('G/2π', human_rate(G)),
        ('τ_meas', human_seconds(report.tau_meas)),
        ('n_mech(τ_meas)', f'{report.n_mech_at_tau:.4g}'),
        ('n_crit', f'{report.n_crit:.4g}'),
        ('phonon budget', f'{report.phonon_budget:.4g}  {_flag(report.phonon_budget_ok)}'),
        ('τ_Purcell', human_seconds(report.tau_purcell)),
        ('T1', human_seconds(report.t1)),
        ('QND ratio', f'{report.qnd_ratio:.4g}'),
        ('detuning criterion', _flag(report.detuning_criterion_ok)),
        ('cooperativity criterion', _flag(report.cooperativity_criterion_ok)),
        ('RWA', _flag(values['rwa_beam_splitter_ok'] and values['rwa_g0_ok'])),
    ])
    print()
    for w in warnings:
        warn(w)

    header = (f'tool = omit {__version__}', f'command = {command_line(args)}',
              '"≫" criteria use a factor of 10')
    body = [f'# {h}' for h in header]
    body += [f'{k} = {format_value(v)}' for k, v in values.items()]
    body += [f'# warning: {w}' for w in warnings]
    out.write_text('\n'.join(body) + '\n')
    config.write_meta(out, cfg, f'omit {__version__}', command_line(args))
    t.checkpoint('write')
    ok(f'report → {out}')
    t.print()
    return EXIT_OK
