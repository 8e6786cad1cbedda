"""
tests/unit/test_format_progress.py

Covers:
  - cli.format: human_seconds, human_rate, color gating (NO_COLOR / FORCE_COLOR),
    status lines, kv_table
  - cli.progress: ProgressBar on a non-tty stderr
  - cli.timing: Timer checkpoints and table
  - cli.plotting: gnuplot script rendering
"""

import math
import tempfile
from pathlib import Path
from unittest.mock import patch

import pytest


# ── cli.format ────────────────────────────────────────────────────────────────

class TestHumanSeconds:
    @pytest.mark.parametrize('t, text', [
        (3.31e-6, '3.31 µs'),
        (0.0281, '28.1 ms'),
        (2.5, '2.5 s'),
        (4e-9, '4 ns'),
        (math.inf, '∞'),
        (math.nan, '-'),
        (None, '-'),
    ])
    def test_values(self, t, text):
        from cli.format import human_seconds
        assert human_seconds(t) == text


class TestHumanRate:
    def test_linear_frequency(self):
        from cli.format import human_rate
        assert human_rate(2 * math.pi * 2e9) == '2 GHz'
        assert human_rate(2 * math.pi * 200e3) == '200 kHz'

    def test_small(self):
        from cli.format import human_rate
        assert human_rate(2 * math.pi * 0.5) == '0.5 Hz'


class TestColor:
    def test_no_color_wins(self, monkeypatch):
        from cli.format import green
        monkeypatch.setenv('FORCE_COLOR', '1')
        assert green('ok') == 'ok'

    def test_force_color(self, monkeypatch):
        from cli.format import red
        monkeypatch.delenv('NO_COLOR', raising=False)
        monkeypatch.setenv('FORCE_COLOR', '1')
        assert red('x') == '\033[1;31mx\033[0m'

    def test_pipe_is_plain(self, monkeypatch, capsys):
        from cli.format import cyan
        monkeypatch.delenv('NO_COLOR', raising=False)
        # capsys replaces stdout with a non-tty buffer
        assert cyan('x') == 'x'


class TestStatusLines:
    def test_ok(self, capsys):
        from cli.format import ok
        ok('12 rows → fig2.csv')
        assert capsys.readouterr().out == '  ✓ 12 rows → fig2.csv\n'

    def test_err_goes_to_stderr(self, capsys):
        from cli.format import err
        err('bad config')
        captured = capsys.readouterr()
        assert captured.out == ''
        assert captured.err == '  ✗ bad config\n'

    def test_warn(self, capsys):
        from cli.format import warn
        warn('2 rows failed')
        assert '! 2 rows failed' in capsys.readouterr().err

    def test_kv_table_aligns(self, capsys):
        from cli.format import kv_table
        kv_table('omit report', [('a', '1'), ('longer', '2')])
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == 'omit report'
        assert lines[1] == '─' * len('omit report')
        assert lines[2].index('1') == lines[3].index('2')


# ── cli.progress ──────────────────────────────────────────────────────────────

class TestProgressBar:
    def test_silent_until_done_without_tty(self, capsys):
        from cli.progress import ProgressBar
        with patch('sys.stderr.isatty', return_value=False):
            bar = ProgressBar(3, label='fig2')
            bar.tick()
            bar.tick()
            assert capsys.readouterr().err == ''
            bar.done()
        err = capsys.readouterr().err
        assert 'fig2  3 points' in err
        assert '\r' not in err

    def test_update_clamps(self):
        from cli.progress import ProgressBar
        with patch('sys.stderr.isatty', return_value=False):
            bar = ProgressBar(2)
            bar.update(10)
        assert bar.done_ == 2


# ── cli.timing ────────────────────────────────────────────────────────────────

class TestTimer:
    def test_disabled_is_noop(self, capsys):
        from cli.timing import Timer
        t = Timer(enabled=False)
        t.checkpoint('config')
        t.print()
        assert t.steps == []
        assert capsys.readouterr().err == ''

    def test_enabled_table(self, capsys):
        from cli.timing import Timer
        t = Timer(enabled=True)
        t.checkpoint('config')
        t.checkpoint('sweep')
        t.print()
        assert [label for label, _ in t.steps] == ['config', 'sweep']
        err = capsys.readouterr().err
        assert 'timing' in err and 'total' in err

    def test_per_point_cost(self, capsys):
        from cli.timing import Timer
        t = Timer(enabled=True)
        t.checkpoint('config')
        t.checkpoint('sweep', points=4)
        sweep_ms = t.steps[1][1]
        assert t.per_point('sweep') == pytest.approx(sweep_ms / 4)
        assert t.per_point('config') is None
        t.print()
        assert 'ms/pt' in capsys.readouterr().err


# ── cli.plotting ──────────────────────────────────────────────────────────────

class TestPlotting:
    def test_log_axes_and_columns(self):
        from cli.plotting import PlotSpec, render
        text = render('out/fig2.csv', PlotSpec(x='chi_over_gamma', ys=['tau_gamma'],
                                               logx=True, logy=True, title='t'))
        assert 'set logscale xy' in text
        assert 'set output "fig2.png"' in text
        assert '"fig2.csv" using "chi_over_gamma":"tau_gamma"' in text

    def test_grouped_curves(self):
        from cli.plotting import PlotSpec, render
        text = render('figS1.csv', PlotSpec(x='chi_over_gamma', ys=['tau_gamma'],
                                            group='n_th', group_values=['0', '10']))
        assert text.count('strcol("n_th")') == 2
        assert 'tau_gamma n_th=10' in text

    def test_quotes_escaped(self):
        from cli.plotting import PlotSpec, render
        text = render('a.csv', PlotSpec(x='x', ys=['y'], title='say "hi"'))
        assert 'set title "say \\"hi\\""' in text

    def test_write_next_to_csv(self):
        from cli.plotting import PlotSpec, write_script
        with tempfile.TemporaryDirectory() as d:
            path = write_script(Path(d) / 'fig3.csv', PlotSpec(x='eta', ys=['n_add_omit']))
            assert path.name == 'fig3.gp'
            assert path.read_text().startswith('# plots fig3.csv')
