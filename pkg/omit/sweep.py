"""
omit/sweep.py

Tabular sweep results and the ordered worker pool that fills them.

A SweepResult is a header plus rows in input-grid order. Floats are written
with 12 significant digits, so two runs on the same grid produce
byte-identical CSV bodies regardless of how many workers computed them.
"""

import csv
import io
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

logger = logging.getLogger(__name__)


def format_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return f'{value:.12g}'
    if value is None:
        return ''
    return str(value)


@dataclass
class SweepResult:
    """Independent variable, computed quantities and per-row diagnostics."""

    columns: tuple
    rows: list = field(default_factory=list)
    failures: int = 0
    meta: dict = field(default_factory=dict)

    def column(self, name):
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def to_csv_text(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()

    def write_csv(self, path):
        """Write atomically: a temp file next to the target, then rename."""
        path = Path(path)
        if not path.parent.exists():
            raise FileNotFoundError(f'output directory {path.parent} does not exist')
        tmp = path.with_name(f'.{path.name}.{os.getpid()}.tmp')
        tmp.write_text(self.to_csv_text())
        tmp.replace(path)
        return path


def ordered_map(func, items, jobs=1, on_done=None):
    """
    map(func, items) with results in input order.

    jobs > 1 dispatches to a bounded ProcessPoolExecutor; func and items
    must then be picklable (module-level functions, functools.partial).
    on_done() is called once per finished item, for progress display.
    """
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) <= 1:
        out = []
        for item in items:
            out.append(func(item))
            if on_done:
                on_done()
        return out

    workers = min(jobs, len(items))
    logger.info('dispatching %d points to %d workers', len(items), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        out = []
        for result in pool.map(func, items):
            out.append(result)
            if on_done:
                on_done()
        return out
