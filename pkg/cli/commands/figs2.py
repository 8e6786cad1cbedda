"""
omit figS2 — measurement time with the cooperativity capped at c_max.

  omit figS2                      c_max ∈ {10, 100, 1000}
  omit figS2 --c-max 10 -o cut.csv

Writes the sweep and <out>.minimum.csv with the global minimum over χ for
each cap.
"""

import math

import numpy as np

from cli.commands.common import (
    chi_grid, finish, load_config, output_path, progress, tolerance, write_outputs,
)
from cli.format import dim, warn
from cli.plotting import PlotSpec
from cli.timing import Timer
from omit.errors import DomainError, NoCrossingError
from omit.readout import MINIMUM_COLUMNS, ROOT_RTOL, cutoff_minimum, cutoff_sweep
from omit.sweep import SweepResult, format_value

DEFAULT_C_MAX = (10.0, 100.0, 1000.0)


def minimum_path(out):
    return out.with_suffix('.minimum.csv')


def _minima(result, grid, cfg, c_max_values):
    """Refine the per-cap minimum between the neighbours of the best sweep row."""
    minima = SweepResult(columns=MINIMUM_COLUMNS)
    c_col = result.column('c_max')
    taus = result.column('tau_gamma')
    for c_max in c_max_values:
        own = [tau for c, tau in zip(c_col, taus) if c == c_max]
        finite = [tau if math.isfinite(tau) else math.inf for tau in own]
        if not finite or min(finite) == math.inf:
            minima.rows.append((c_max, math.nan, math.nan))
            minima.failures += 1
            continue
        k = int(np.argmin(finite))
        window = grid[max(k - 1, 0):k + 2]
        try:
            x, tau = cutoff_minimum(window, cfg.a_pr_norm, cfg.n_th, cfg.gamma_mech, c_max)
        except NoCrossingError:
            x, tau = float(grid[k]), finite[k]
        except DomainError as exc:
            warn(f'no minimum found: {exc}')
            minima.rows.append((c_max, math.nan, math.nan))
            minima.failures += 1
            continue
        minima.rows.append((c_max, x, tau))
    return minima


def cmd_figs2(args):
    t = Timer(enabled=getattr(args, 'timing', False))
    cfg = load_config(args)
    out = output_path(args, 'figS2.csv')
    grid = chi_grid(args)
    c_max_values = [float(c) for c in (getattr(args, 'c_max', None) or DEFAULT_C_MAX)]
    t.checkpoint('config')

    bar = progress(len(grid) * len(c_max_values), 'figS2')
    result = cutoff_sweep(
        grid, cfg.a_pr_norm, cfg.n_th, c_max_values,
        gamma_mech=cfg.gamma_mech,
        kappa_over_gamma=cfg['kappa_over_gamma_crit'],
        delta_sm_over_gamma=cfg['delta_sm_over_gamma_crit'],
        jobs=getattr(args, 'jobs', 1), on_done=bar.tick,
        rtol=tolerance(args, ROOT_RTOL),
    )
    bar.done()
    t.checkpoint('sweep', points=len(grid) * len(c_max_values))

    minima = _minima(result, grid, cfg, c_max_values)
    t.checkpoint('minimum')

    write_outputs(result, out, cfg, args, PlotSpec(
        x='chi_over_gamma', ys=['tau_gamma'],
        xlabel='χ/Γ_mech', ylabel='τ_meas Γ_mech',
        title='measurement time with capped cooperativity', logx=True, logy=True,
        group='c_max', group_values=[format_value(c) for c in c_max_values],
    ))
    minima.write_csv(minimum_path(out))
    for c_max, x, tau in minima.rows:
        print(f'  {dim("c_max")} {c_max:<8g} {dim("minimum τΓ")} {tau:.4g} '
              f'{dim("at χ/Γ")} {x:.4g}')
    t.checkpoint('write')
    result.failures += minima.failures
    code = finish(result, out)
    t.print()
    return code
