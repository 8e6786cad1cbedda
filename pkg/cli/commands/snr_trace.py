"""
omit snr-trace — SNR(τ) and its ingredients at the device operating point.

  omit snr-trace                  τΓ log-spaced in [1e-6, 1e3], C_om optimized when auto
"""

import numpy as np

from cli.commands.common import finish, load_config, output_path, points, write_outputs
from cli.format import dim
from cli.plotting import PlotSpec
from cli.timing import Timer
from omit.readout import optimize_cooperativity, snr_trace

TRACE_POINTS = 200


def cmd_snr_trace(args):
    t = Timer(enabled=getattr(args, 'timing', False))
    cfg = load_config(args)
    out = output_path(args, 'snr_trace.csv')
    grid = np.logspace(-6, 3, points(args, TRACE_POINTS))
    chi = cfg.spin().chi
    gamma = cfg.gamma_mech
    t.checkpoint('config')

    if cfg.c_om_auto:
        c_om, _ = optimize_cooperativity(chi, cfg.a_pr_norm, cfg.n_th, gamma, c_max=cfg['c_max'])
        print(f'  {dim("optimized C_om:")} {c_om:.4g}')
    else:
        c_om = cfg['c_om']
    result = snr_trace(grid, chi, c_om, cfg.a_pr_norm, cfg.n_th, gamma)
    t.checkpoint('trace')

    write_outputs(result, out, cfg, args, PlotSpec(
        x='tau_gamma', ys=['snr'],
        xlabel='τ Γ_mech', ylabel='SNR', title='SNR build-up', logx=True, logy=True,
    ))
    t.checkpoint('write')
    code = finish(result, out)
    t.print()
    return code
