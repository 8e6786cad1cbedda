"""
omit figS1 — measurement time for several bath occupations.

  omit figS1                      n_th ∈ {0, 1, 10}
  omit figS1 --n-th 0 --n-th 100
"""

from cli.commands.common import (
    chi_grid, finish, load_config, output_path, progress, tolerance, write_outputs,
)
from cli.plotting import PlotSpec
from cli.timing import Timer
from omit.readout import ROOT_RTOL, thermal_sweep
from omit.sweep import format_value

DEFAULT_N_TH = (0.0, 1.0, 10.0)


def cmd_figs1(args):
    t = Timer(enabled=getattr(args, 'timing', False))
    cfg = load_config(args)
    out = output_path(args, 'figS1.csv')
    grid = chi_grid(args)
    n_th_values = list(getattr(args, 'n_th', None) or DEFAULT_N_TH)
    t.checkpoint('config')

    bar = progress(len(grid), 'figS1')
    result = thermal_sweep(grid, cfg.a_pr_norm, n_th_values, c_max=cfg['c_max'],
                           jobs=getattr(args, 'jobs', 1), on_done=bar.tick,
                           rtol=tolerance(args, ROOT_RTOL))
    bar.done()
    t.checkpoint('sweep', points=len(grid) * len(n_th_values))

    write_outputs(result, out, cfg, args, PlotSpec(
        x='chi_over_gamma', ys=['tau_gamma'],
        xlabel='χ/Γ_mech', ylabel='τ_meas Γ_mech',
        title='finite-temperature measurement time', logx=True, logy=True,
        group='n_th', group_values=[format_value(float(n)) for n in n_th_values],
    ))
    t.checkpoint('write')
    code = finish(result, out)
    t.print()
    return code
