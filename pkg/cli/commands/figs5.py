"""
omit figS5 — SiV strain coupling g_sm along the B_z sweep at fixed qubit splitting.

  omit figS5                          200 B_z points across the tuning range
  omit figS5 --set e_egy_hz=3e6
"""

import math

from cli.commands.common import finish, load_config, output_path, points, progress, write_outputs
from cli.format import dim
from cli.plotting import PlotSpec
from cli.timing import Timer
from omit.siv import default_bz_grid, sweep_bz

BZ_POINTS = 200


def cmd_figs5(args):
    t = Timer(enabled=getattr(args, 'timing', False))
    cfg = load_config(args)
    out = output_path(args, 'figS5.csv')
    p = cfg.siv()
    grid = default_bz_grid(cfg.omega_s, p, points(args, BZ_POINTS))
    t.checkpoint('config')

    bar = progress(len(grid), 'figS5')
    result = sweep_bz(grid, cfg.omega_s, cfg.strain(), p,
                      jobs=getattr(args, 'jobs', 1), on_done=bar.tick)
    bar.done()
    t.checkpoint('sweep', points=len(grid))

    write_outputs(result, out, cfg, args, PlotSpec(
        x='b_z_tesla', ys=['g_sm_hz'],
        xlabel='B_z (T)', ylabel='g_sm/2π (Hz)', title='SiV strain coupling',
    ))
    t.checkpoint('write')

    g = [v for v in result.column('g_sm_hz') if not math.isnan(v)]
    if g:
        k = result.column('g_sm_hz').index(max(g))
        print(f'  {dim("max g_sm/2π:")} {max(g) / 1e6:.3f} MHz  '
              f'{dim("at")} B_z = {result.rows[k][0]:.3f} T, B_x = {result.rows[k][1]:.3f} T')
    code = finish(result, out)
    t.print()
    return code
