"""
Formatting helpers: human-readable durations and rates, and minimal ANSI color.

Color is gated on os.isatty() of the underlying file descriptor so nothing
leaks into pipes, CSV redirects or logs.

Override with FORCE_COLOR=1 for terminals that don't report isatty()
correctly (some tmux, screen, VS Code, SSH setups). NO_COLOR always wins.
"""

import math
import os
import sys

from omit.params import rad_to_hz


# ── Human-readable durations and rates ────────────────────────────────────────

_TIME_UNITS = [(1.0, 's'), (1e-3, 'ms'), (1e-6, 'µs'), (1e-9, 'ns')]
_FREQ_UNITS = [(1e12, 'THz'), (1e9, 'GHz'), (1e6, 'MHz'), (1e3, 'kHz'), (1.0, 'Hz')]


def human_seconds(t):
    """3.31e-6 → '3.31 µs'"""
    if t is None or (isinstance(t, float) and math.isnan(t)):
        return '-'
    if math.isinf(t):
        return '∞'
    for scale, unit in _TIME_UNITS:
        if abs(t) >= scale:
            return f'{t / scale:.3g} {unit}'
    return f'{t:.3g} s'


def human_rate(omega):
    """Angular rate → linear frequency: 2π·2e9 rad/s → '2 GHz'"""
    f = rad_to_hz(omega)
    if math.isinf(f):
        return '∞'
    for scale, unit in _FREQ_UNITS:
        if abs(f) >= scale:
            return f'{f / scale:.4g} {unit}'
    return f'{f:.3g} Hz'


# ── ANSI color ─────────────────────────────────────────────────────────────────
#
# Priority:
#   NO_COLOR env var → always off
#   FORCE_COLOR env var → on (skips TTY check)
#   Normal → underlying fd is a real TTY

def _ansi_on(stream=None) -> bool:
    if os.environ.get('NO_COLOR'):
        return False
    if os.environ.get('FORCE_COLOR'):
        return True
    target = stream if stream is not None else sys.stdout
    try:
        return os.isatty(target.fileno())
    except Exception:
        return getattr(target, 'isatty', lambda: False)()


def _c(code: str, text: str, stream=None) -> str:
    if _ansi_on(stream):
        return f'\033[{code}m{text}\033[0m'
    return text


# ── Color palette ─────────────────────────────────────────────────────────────

def green(text, stream=None):  return _c('1;32', text, stream)   # bold green
def red(text, stream=None):    return _c('1;31', text, stream)   # bold red
def dim(text, stream=None):    return _c('2',    text, stream)   # faint/dim
def bold(text, stream=None):   return _c('1',    text, stream)   # bold white
def cyan(text, stream=None):   return _c('1;36', text, stream)   # bold cyan
def yellow(text, stream=None): return _c('1;33', text, stream)   # bold yellow


# ── Status lines ──────────────────────────────────────────────────────────────

def err(msg):
    """Print a formatted error to stderr."""
    print(f'  {red("✗", stream=sys.stderr)} {msg}', file=sys.stderr)


def warn(msg):
    print(f'  {yellow("!", stream=sys.stderr)} {msg}', file=sys.stderr)


def ok(msg):
    """Print a formatted success message."""
    print(f'  {green("✓")} {msg}')


def kv_table(title, rows):
    """Print a dim-labelled key/value block like `omit report`."""
    print(bold(title))
    print(dim('─' * len(title)))
    width = max(len(k) for k, _ in rows) + 2
    for key, value in rows:
        # pad on the raw key so escape codes don't skew the column
        print(f'  {dim(f"{key}:")}{" " * (width - len(key))}{value}')
