"""
tests/integration/conftest.py

End-to-end fixtures. Commands run either in-process through cli.omit.main
(fast, exit codes via SystemExit) or as a real subprocess with
`python -m cli`, the way a user invokes the tool.

    workdir     temporary output directory, removed after the test
    run_cli     in-process runner: run_cli(*argv) -> exit code
    run_module  subprocess runner: run_module(*argv) -> CompletedProcess
    siv_cfg     RunConfig with the built-in SiV device
"""

import os
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest

_ROOT = Path(__file__).parent.parent.parent


@pytest.fixture
def workdir():
    with tempfile.TemporaryDirectory() as d:
        yield Path(d)


@pytest.fixture
def run_cli(monkeypatch):
    monkeypatch.setenv('NO_COLOR', '1')
    monkeypatch.delenv('FORCE_COLOR', raising=False)

    def _run(*argv):
        from cli.omit import main
        try:
            main([str(a) for a in argv])
        except SystemExit as exc:
            return exc.code or 0
        return 0

    return _run


@pytest.fixture
def run_module():
    env = {**os.environ, 'NO_COLOR': '1'}
    env.pop('FORCE_COLOR', None)

    def _run(*argv, timeout=300):
        return subprocess.run(
            [sys.executable, '-m', 'cli', *[str(a) for a in argv]],
            capture_output=True, text=True, cwd=_ROOT, env=env, timeout=timeout,
        )

    return _run


@pytest.fixture
def siv_cfg():
    from cli import config
    return config.load()

