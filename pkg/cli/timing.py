"""
cli/timing.py

Step timing for omit commands, printed with --timing.

Usage:
    from cli.timing import Timer

    t = Timer(enabled=args.timing)
    t.checkpoint('config')
    t.checkpoint('sweep', points=len(grid))
    t.print()

A step given a point count also shows the mean cost per point, which is
what to look at before raising --points or --jobs.
"""

import sys
import time


class Timer:
    """
    Named wall-clock steps in milliseconds. Disabled timers record nothing
    and print nothing.
    """

    def __init__(self, enabled: bool = False):
        self.enabled = enabled
        self._start = time.perf_counter()
        self._last = self._start
        self._steps: list[tuple[str, float, int]] = []

    def checkpoint(self, label: str, points: int = 0) -> None:
        if not self.enabled:
            return
        now = time.perf_counter()
        self._steps.append((label, (now - self._last) * 1000, points))
        self._last = now

    @property
    def steps(self):
        return [(label, ms) for label, ms, _ in self._steps]

    def per_point(self, label):
        """Mean milliseconds per point of a step, or None without a count."""
        for name, ms, points in self._steps:
            if name == label and points:
                return ms / points
        return None

    def print(self) -> None:
        if not self.enabled:
            return

        from cli.format import dim

        total_ms = (time.perf_counter() - self._start) * 1000
        rows = [(label, f'{ms:.0f}ms', f'{ms / points:.2f}ms/pt' if points else '')
                for label, ms, points in self._steps]
        rows.append(('total', f'{total_ms:.0f}ms', ''))

        col_w = max(len(r[0]) for r in rows) + 2
        val_w = max(len(r[1]) for r in rows)
        rate_w = max(len(r[2]) for r in rows)
        sep = '─' * (col_w + val_w + (rate_w + 2 if rate_w else 0))

        out = ['', f'  {dim("timing", stream=sys.stderr)}', f'  {dim(sep, stream=sys.stderr)}']
        for label, val, rate in rows[:-1]:
            out.append(f'  {label:<{col_w}}{val.rjust(val_w)}'
                       + (f'  {dim(rate.rjust(rate_w), stream=sys.stderr)}' if rate else ''))
        out.append(f'  {dim(sep, stream=sys.stderr)}')
        label, val, _ = rows[-1]
        out.append(f'  {label:<{col_w}}{val.rjust(val_w)}')
        print('\n'.join(out), file=sys.stderr)
