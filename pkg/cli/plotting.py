"""
cli/plotting.py

gnuplot scripts written next to every CSV. The data never depends on them;
run `gnuplot fig2.gp` to get fig2.png.
"""

from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class PlotSpec:
    x: str
    ys: list
    xlabel: str = ''
    ylabel: str = ''
    title: str = ''
    logx: bool = False
    logy: bool = False
    # optional column used to split the data into one curve per value
    group: str = None
    group_values: list = field(default_factory=list)


def script_path(csv_path):
    return Path(csv_path).with_suffix('.gp')


def _quote(text):
    return '"' + str(text).replace('\\', '\\\\').replace('"', '\\"') + '"'


def render(csv_path, spec):
    csv_name = Path(csv_path).name
    png_name = Path(csv_path).with_suffix('.png').name
    lines = [
        f'# plots {csv_name}',
        'set datafile separator ","',
        'set terminal pngcairo size 900,600',
        f'set output {_quote(png_name)}',
        'set key autotitle columnhead',
        'set grid',
    ]
    if spec.title:
        lines.append(f'set title {_quote(spec.title)}')
    if spec.xlabel:
        lines.append(f'set xlabel {_quote(spec.xlabel)}')
    if spec.ylabel:
        lines.append(f'set ylabel {_quote(spec.ylabel)}')
    axes = ('x' if spec.logx else '') + ('y' if spec.logy else '')
    if axes:
        lines.append(f'set logscale {axes}')

    curves = []
    for y in spec.ys:
        if spec.group:
            for value in spec.group_values:
                cond = f'(strcol("{spec.group}") eq "{value}" ? column("{y}") : NaN)'
                curves.append(f'{_quote(csv_name)} using "{spec.x}":{cond} '
                              f'with lines title {_quote(f"{y} {spec.group}={value}")}')
        else:
            curves.append(f'{_quote(csv_name)} using "{spec.x}":"{y}" '
                          f'with lines title {_quote(y)}')
    lines.append('plot ' + ', \\\n     '.join(curves))
    return '\n'.join(lines) + '\n'


def write_script(csv_path, spec):
    path = script_path(csv_path)
    path.write_text(render(csv_path, spec))
    return path
