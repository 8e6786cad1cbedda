"""
omit spectrum — OMIT reflection |r(δ)|, arg r(δ) for the two spin branches ε = ∓χ.

  omit spectrum                   δ/Γ ∈ [−5, 5], c_om = 1 when auto
"""

import numpy as np

from cli.commands.common import finish, load_config, output_path, points, write_outputs
from cli.plotting import PlotSpec
from cli.timing import Timer
from omit.dynamics import reflection_coefficient
from omit.sweep import SweepResult

SPECTRUM_COLUMNS = ('delta_over_gamma', 'r_abs_minus', 'r_arg_minus', 'r_abs_plus', 'r_arg_plus')
SPECTRUM_POINTS = 401
SPAN = 5.0


def spectrum(grid, sys, drive, chi):
    result = SweepResult(columns=SPECTRUM_COLUMNS)
    gamma = sys.gamma_mech
    for x in grid:
        minus = reflection_coefficient(x * gamma, sys, drive, -chi)
        plus = reflection_coefficient(x * gamma, sys, drive, chi)
        result.rows.append((float(x), abs(minus), float(np.angle(minus)),
                            abs(plus), float(np.angle(plus))))
    return result


def cmd_spectrum(args):
    t = Timer(enabled=getattr(args, 'timing', False))
    cfg = load_config(args)
    out = output_path(args, 'spectrum.csv')
    grid = np.linspace(-SPAN, SPAN, points(args, SPECTRUM_POINTS))
    t.checkpoint('config')

    result = spectrum(grid, cfg.system(), cfg.drive(), cfg.spin().chi)
    t.checkpoint('spectrum')

    write_outputs(result, out, cfg, args, PlotSpec(
        x='delta_over_gamma', ys=['r_abs_minus', 'r_abs_plus'],
        xlabel='δ/Γ_mech', ylabel='|r|', title='OMIT reflection',
    ))
    t.checkpoint('write')
    code = finish(result, out)
    t.print()
    return code
