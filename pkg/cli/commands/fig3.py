"""
omit fig3 — excess imprecision noise of OMIT readout against detection efficiency.

  omit fig3                       η on 50 points in (0, 1]
"""

import math

import numpy as np

from cli.commands.common import finish, load_config, output_path, points, write_outputs
from cli.plotting import PlotSpec
from cli.timing import Timer
from omit.sensing import sensing_sweep

ETA_POINTS = 50


def cmd_fig3(args):
    t = Timer(enabled=getattr(args, 'timing', False))
    cfg = load_config(args)
    out = output_path(args, 'fig3.csv')
    n = points(args, ETA_POINTS)
    grid = np.linspace(1.0 / n, 1.0, n)
    c_om_bae = getattr(args, 'c_om_bae', None)
    t.checkpoint('config')

    result = sensing_sweep(grid, cfg.n_th, c_om_bae=math.inf if c_om_bae is None else c_om_bae)
    t.checkpoint('sweep', points=len(grid))

    write_outputs(result, out, cfg, args, PlotSpec(
        x='eta', ys=['n_add_omit', 'n_add_sql', 'n_add_bae_inf'],
        xlabel='detection efficiency η', ylabel='n_add', title='excess imprecision noise',
    ))
    t.checkpoint('write')
    code = finish(result, out)
    t.print()
    return code
