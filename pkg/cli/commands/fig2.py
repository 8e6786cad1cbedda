"""
omit fig2 — optimized measurement time across χ/Γ.

  omit fig2                       SiV defaults, 60 log points in [1e-3, 1e3]
  omit fig2 --set n_th=1 -o t.csv finite-temperature bath
"""

from cli.commands.common import (
    chi_grid, finish, load_config, output_path, progress, tolerance, write_outputs,
)
from cli.format import dim, human_seconds
from cli.plotting import PlotSpec
from cli.timing import Timer
from omit.readout import ROOT_RTOL, sweep_chi


def cmd_fig2(args):
    t = Timer(enabled=getattr(args, 'timing', False))
    cfg = load_config(args)
    out = output_path(args, 'fig2.csv')
    grid = chi_grid(args, cfg)
    t.checkpoint('config')

    bar = progress(len(grid), 'fig2')
    result = sweep_chi(
        grid, cfg.a_pr_norm, cfg.n_th,
        c_max=cfg['c_max'],
        gamma_mech=cfg.gamma_mech,
        kappa_over_gamma=cfg['kappa_over_gamma_crit'],
        delta_sm_over_gamma=cfg['delta_sm_over_gamma_crit'],
        jobs=getattr(args, 'jobs', 1),
        on_done=bar.tick,
        rtol=tolerance(args, ROOT_RTOL),
    )
    bar.done()
    t.checkpoint('sweep', points=len(grid))

    write_outputs(result, out, cfg, args, PlotSpec(
        x='chi_over_gamma', ys=['tau_gamma'],
        xlabel='χ/Γ_mech', ylabel='τ_meas Γ_mech',
        title='optimized measurement time', logx=True, logy=True,
    ))
    t.checkpoint('write')

    x_dev = abs(cfg.spin().chi) / cfg.gamma_mech
    xs = result.column('chi_over_gamma')
    k = min(range(len(xs)), key=lambda i: abs(xs[i] - x_dev))
    row = dict(zip(result.columns, result.rows[k]))
    print(f'  {dim("device point:")} χ/Γ = {row["chi_over_gamma"]:.4g}  '
          f'C_om = {row["c_om_opt"]:.4g}  τ_meas = {human_seconds(row["tau_seconds"])}')
    code = finish(result, out)
    t.print()
    return code
