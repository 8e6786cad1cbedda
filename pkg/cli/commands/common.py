"""
Plumbing shared by the data commands: config resolution, output paths,
progress, and writing the CSV + .meta + .gp triple.

Exit codes: 0 success, 1 configuration error, 2 sweep finished with
failed points (the CSV is still written).
"""

import logging
import sys
from pathlib import Path

import numpy as np

from cli import __version__, config
from cli.format import err, ok, warn
from cli.plotting import write_script
from cli.progress import ProgressBar
from omit.errors import ConfigError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARTIAL = 2

CHI_RANGE = (1e-3, 1e3)
CHI_POINTS = 60


def load_config(args):
    """
    RunConfig from --config/--set; a ConfigError ends the run with exit 1.

    Flags not given on the command line are taken from the run keys of the
    config (a .meta sidecar records them), so a sidecar alone replays a run.
    """
    try:
        cfg = config.load(getattr(args, 'config', None), getattr(args, 'set', None) or ())
    except ConfigError as exc:
        err(str(exc))
        sys.exit(EXIT_CONFIG)
    cfg.apply_flags(args)
    return cfg


def output_path(args, default):
    path = Path(getattr(args, 'out', None) or default)
    if not path.parent.exists():
        err(f'Output directory {path.parent} does not exist.')
        sys.exit(EXIT_CONFIG)
    return path


def points(args, default):
    n = getattr(args, 'points', None) or default
    if n < 2:
        err(f'--points must be at least 2, got {n}')
        sys.exit(EXIT_CONFIG)
    return n


def chi_grid(args, cfg=None):
    """
    Log-spaced χ/Γ grid over CHI_RANGE; when cfg is given its operating
    point is inserted so the device value appears as its own row.
    """
    grid = np.logspace(np.log10(CHI_RANGE[0]), np.log10(CHI_RANGE[1]), points(args, CHI_POINTS))
    if cfg is not None:
        x = abs(cfg.spin().chi) / cfg.gamma_mech
        if CHI_RANGE[0] < x < CHI_RANGE[1] and not np.isclose(grid, x, rtol=1e-9, atol=0).any():
            grid = np.sort(np.append(grid, x))
    return grid


def tolerance(args, default):
    value = getattr(args, 'tolerance', None)
    return default if value is None else value


def progress(total, label):
    return ProgressBar(total, label=label)


def command_line(args):
    return ' '.join(['omit'] + list(getattr(args, 'argv', None) or sys.argv[1:]))


def write_outputs(result, path, cfg, args, plot=None):
    """CSV, then the .meta sidecar and the gnuplot script next to it."""
    result.write_csv(path)
    config.write_meta(path, cfg, f'omit {__version__}', command_line(args))
    if plot is not None:
        write_script(path, plot)
    logger.info('wrote %s (%d rows)', path, len(result.rows))


def finish(result, path):
    """Report the written file; exit code 2 when any point failed."""
    if result.failures:
        warn(f'{result.failures} of {len(result.rows)} rows failed; '
             f'see the warnings column in {path}')
        return EXIT_PARTIAL
    ok(f'{len(result.rows)} rows → {path}')
    return EXIT_OK
