"""
tests/unit/conftest.py

Device fixtures shared by the unit tests. Nothing here touches the
filesystem; the SiV numbers come from the built-in config defaults.

    siv_cfg      RunConfig with the built-in SiV device
    siv_system   SystemParams of that device (rad/s)
    siv_spin     SpinParams of that device (rad/s)
    unit_system  κ = 1e4, Γ = 1: the normalized device most closed forms are checked on
"""

import pytest


@pytest.fixture
def siv_cfg():
    from cli import config
    return config.load()


@pytest.fixture
def siv_system(siv_cfg):
    return siv_cfg.system()


@pytest.fixture
def siv_spin(siv_cfg):
    return siv_cfg.spin()


@pytest.fixture
def unit_system():
    from omit.params import SystemParams
    return SystemParams(kappa=1e4, gamma_mech=1.0, omega_m=1e6, g0=0.0)


@pytest.fixture(autouse=True)
def _no_color(monkeypatch):
    # status lines are compared as plain text
    monkeypatch.setenv('NO_COLOR', '1')
    monkeypatch.delenv('FORCE_COLOR', raising=False)
