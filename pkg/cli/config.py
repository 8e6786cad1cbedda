"""
Run configuration for the omit CLI.

A config file is plain text, one `key = value` per line, `#` starts a
comment. Frequencies are linear (Hz, Hz/T) on disk and angular (rad/s)
once loaded. Unknown keys, missing required keys and non-numeric values
are errors carrying the offending line number.

Without a file the built-in SiV device is used. `--set KEY=VALUE`
overrides are parsed with the same rules and applied last.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from omit.errors import ConfigError
from omit.params import DriveConfig, SpinParams, SystemParams, hz_to_rad
from omit.siv import SivLevelParams, StrainEnergies, StrainTensor, strain_energies
from omit.sweep import format_value

logger = logging.getLogger(__name__)

REQUIRED = object()
AUTO = 'auto'

# key → (kind, default when a config file is given)
FIELDS = {
    'kappa_hz':                 ('float', REQUIRED),
    'gamma_mech_hz':            ('float', REQUIRED),
    'omega_m_hz':               ('float', REQUIRED),
    'g0_hz':                    ('float', REQUIRED),
    'n_th':                     ('float', REQUIRED),
    'g_sm_hz':                  ('float', REQUIRED),
    'delta_sm_hz':              ('float', REQUIRED),
    'a_pr_in_normalized':       ('float', REQUIRED),
    'c_om':                     ('auto',  REQUIRED),
    'eta':                      ('float', REQUIRED),
    'n_spins':                  ('int',   REQUIRED),
    'beta':                     ('int',   REQUIRED),
    'gamma_rel_hz':             ('float', 0.0),
    'delta_hz':                 ('float', 0.0),
    'phi_rad':                  ('auto',  AUTO),
    'c_max':                    ('float', 1e6),
    'kappa_over_gamma_crit':    ('float', 1e4),
    'delta_sm_over_gamma_crit': ('float', 750.0),
    'eta_sw':                   ('float', 0.16),
    'lambda_so_hz':             ('float', 46e9),
    'gamma_l_hz_per_t':         ('float', 1.4e9),
    'gamma_s_hz_per_t':         ('float', 14e9),
    'd_sus_hz':                 ('float', 1.3e15),
    'f_sus_hz':                 ('float', -1.7e15),
    'e_egx_hz':                 ('float', -7.92e6),
    'e_egy_hz':                 ('float', 0.0),
    'omega_s_hz':               ('float', 7.64e9),
    # strain tensor; any component set replaces e_egx_hz / e_egy_hz through d_sus_hz / f_sus_hz
    'strain_xx':                ('float', None),
    'strain_yy':                ('float', None),
    'strain_zz':                ('float', None),
    'strain_xy':                ('float', None),
    'strain_yz':                ('float', None),
    'strain_zx':                ('float', None),
    # command flags recorded in the .meta sidecar; None keeps the command default
    'points':                   ('int',   None),
    'tolerance':                ('float', None),
    'n_th_values':              ('list',  None),
    'c_max_values':             ('list',  None),
    'c_om_bae':                 ('float', None),
}

STRAIN_COMPONENTS = ('xx', 'yy', 'zz', 'xy', 'yz', 'zx')

# config key → argparse dest of the flag it replays
RUN_FLAGS = {
    'points': 'points',
    'tolerance': 'tolerance',
    'n_th_values': 'n_th',
    'c_max_values': 'c_max',
    'c_om_bae': 'c_om_bae',
}

# SiV optomechanical crystal operating point
SIV_DEFAULTS = {
    'kappa_hz': 2e9,
    'gamma_mech_hz': 200e3,
    'omega_m_hz': 7.79e9,
    'g0_hz': 200e3,
    'n_th': 0.0,
    'g_sm_hz': 2e6,
    'delta_sm_hz': 150e6,
    'a_pr_in_normalized': 20.0,
    'c_om': AUTO,
    'eta': 1.0,
    'n_spins': 1,
    'beta': 1,
}


def _parse_float(key, raw, path, lineno, hint=''):
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f'{key}: expected a number{hint}, got {raw!r}', path, lineno)
    if not math.isfinite(value):
        raise ConfigError(f'{key}: value must be finite, got {raw!r}', path, lineno)
    return value


def _parse_value(key, raw, path=None, lineno=None):
    kind, _ = FIELDS[key]
    raw = raw.strip()
    if kind == 'auto' and raw.lower() == AUTO:
        return AUTO
    if kind == 'list':
        return [_parse_float(key, item.strip(), path, lineno) for item in raw.split(',')]
    if kind == 'int':
        try:
            value = int(raw)
        except ValueError:
            raise ConfigError(f'{key}: expected an integer, got {raw!r}', path, lineno)
        if key == 'beta' and value not in (1, 2):
            raise ConfigError(f'beta must be 1 or 2, got {value}', path, lineno)
        if key == 'n_spins' and value < 1:
            raise ConfigError(f'n_spins must be >= 1, got {value}', path, lineno)
        return value
    return _parse_float(key, raw, path, lineno, ' or "auto"' if kind == 'auto' else '')


def _split(line, path, lineno):
    if '=' not in line:
        raise ConfigError(f'expected "key = value", got {line.strip()!r}', path, lineno)
    key, raw = line.split('=', 1)
    key = key.strip()
    if key not in FIELDS:
        raise ConfigError(f'unknown key {key!r}', path, lineno)
    if not raw.strip():
        raise ConfigError(f'{key}: missing value', path, lineno)
    return key, raw


def parse_text(text, path=None):
    """key → value for every assignment in text; duplicates warn, last wins."""
    values = {}
    seen = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0]
        if not line.strip():
            continue
        key, raw = _split(line, path, lineno)
        if key in seen:
            logger.warning('%s:%d: duplicate key %r (first on line %d); last value wins',
                           path or '<config>', lineno, key, seen[key])
        seen[key] = lineno
        values[key] = _parse_value(key, raw, path, lineno)
    return values


def parse_overrides(items):
    """Parse `KEY=VALUE` strings from --set; position n is reported as line n."""
    values = {}
    for n, item in enumerate(items or (), start=1):
        key, raw = _split(item, None, n)
        values[key] = _parse_value(key, raw, None, n)
    return values


@dataclass
class RunConfig:
    """Resolved configuration in external units (Hz, Hz/T)."""

    values: dict
    source: str = '<built-in SiV defaults>'
    overrides: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    @property
    def c_om_auto(self):
        return self.values['c_om'] == AUTO

    @property
    def phi_auto(self):
        return self.values['phi_rad'] == AUTO

    @property
    def gamma_mech(self):
        return hz_to_rad(self.values['gamma_mech_hz'])

    @property
    def a_pr_norm(self):
        return self.values['a_pr_in_normalized']

    @property
    def n_th(self):
        return self.values['n_th']

    def system(self):
        v = self.values
        return SystemParams(
            kappa=hz_to_rad(v['kappa_hz']),
            gamma_mech=hz_to_rad(v['gamma_mech_hz']),
            omega_m=hz_to_rad(v['omega_m_hz']),
            g0=hz_to_rad(v['g0_hz']),
            n_th=v['n_th'],
        )

    def drive(self, c_om=None, phi=None):
        """DriveConfig; auto cooperativity/angle must be supplied by the caller."""
        v = self.values
        if c_om is None:
            c_om = 1.0 if self.c_om_auto else v['c_om']
        if phi is None:
            phi = 0.0 if self.phi_auto else v['phi_rad']
        return DriveConfig(
            c_om=c_om,
            a_pr_in=self.a_pr_norm * math.sqrt(self.gamma_mech),
            delta=hz_to_rad(v['delta_hz']),
            phi=phi,
            eta=v['eta'],
        )

    def spin(self):
        v = self.values
        return SpinParams(
            g_sm=hz_to_rad(v['g_sm_hz']),
            delta_sm=hz_to_rad(v['delta_sm_hz']),
            n_spins=v['n_spins'],
            beta=v['beta'],
            gamma_rel=hz_to_rad(v['gamma_rel_hz']),
        )

    def siv(self):
        v = self.values
        return SivLevelParams(
            lambda_so=hz_to_rad(v['lambda_so_hz']),
            gamma_l=hz_to_rad(v['gamma_l_hz_per_t']),
            gamma_s=hz_to_rad(v['gamma_s_hz_per_t']),
            d_sus=hz_to_rad(v['d_sus_hz']),
            f_sus=hz_to_rad(v['f_sus_hz']),
        )

    def strain_tensor(self):
        """StrainTensor from the strain_* keys, or None when none is set."""
        parts = {k: self.values[f'strain_{k}'] for k in STRAIN_COMPONENTS}
        if all(v is None for v in parts.values()):
            return None
        return StrainTensor(**{f'e_{k}': v or 0.0 for k, v in parts.items()})

    def strain(self):
        v = self.values
        tensor = self.strain_tensor()
        if tensor is not None:
            return strain_energies(tensor, self.siv())
        return StrainEnergies(e_egx=hz_to_rad(v['e_egx_hz']), e_egy=hz_to_rad(v['e_egy_hz']))

    @property
    def omega_s(self):
        return hz_to_rad(self.values['omega_s_hz'])

    def apply_flags(self, args):
        """
        Fill command flags left unset on args from the recorded run keys,
        then record the flags the run actually uses so the .meta replays it.
        """
        for key, dest in RUN_FLAGS.items():
            if not hasattr(args, dest):
                self.values[key] = None
                continue
            if getattr(args, dest) is None and self.values.get(key) is not None:
                setattr(args, dest, self.values[key])
            value = getattr(args, dest)
            self.values[key] = list(value) if isinstance(value, (list, tuple)) else value

    def to_text(self, header=()):
        """The resolved configuration as a loadable config file."""
        lines = [f'# {h}' for h in header]
        for key in FIELDS:
            value = self.values[key]
            if value is None:
                continue
            if isinstance(value, list):
                value = ', '.join(format_value(v) for v in value)
            else:
                value = format_value(value)
            lines.append(f'{key} = {value}')
        return '\n'.join(lines) + '\n'


def load(path=None, overrides=()):
    """
    Resolve a RunConfig from an optional file plus --set overrides.

    Raises ConfigError (with path and line number) on any malformed input.
    """
    if path is None:
        values = dict(SIV_DEFAULTS)
        source = '<built-in SiV defaults>'
    else:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise ConfigError(f'cannot read config: {exc.strerror or exc}', p) from exc
        values = parse_text(text, p)
        missing = [k for k, (_, d) in FIELDS.items() if d is REQUIRED and k not in values]
        if missing:
            raise ConfigError(f'missing required key(s): {", ".join(missing)}', p)
        source = str(p)

    extra = parse_overrides(overrides)
    values.update(extra)
    for key, (_, default) in FIELDS.items():
        if key not in values:
            values[key] = default
    return RunConfig(values=values, source=source, overrides=extra)


def parse_config(path, overrides=()):
    """(SystemParams, DriveConfig, SpinParams, SivLevelParams) from a config file."""
    cfg = load(path, overrides)
    return cfg.system(), cfg.drive(), cfg.spin(), cfg.siv()


def meta_path(out_path):
    return Path(out_path).with_suffix('.meta')


def write_meta(out_path, cfg, tool, command):
    """Write the `.meta` sidecar next to out_path; it is itself a valid config."""
    path = meta_path(out_path)
    path.write_text(cfg.to_text(header=(f'tool = {tool}', f'command = {command}',
                                        f'source = {cfg.source}')))
    return path
