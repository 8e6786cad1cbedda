"""
omit/siv.py

Ground-state manifold of the silicon-vacancy center: spin-orbit, Zeeman and
E_g strain terms in the basis {e₋↓, e₊↑, e₊↓, e₋↑}, the magnetic-field tuning
that holds the qubit splitting E₊↑ − E₋↓ fixed, and the dressed-basis strain
coupling g_sm that enters the spin-phonon Hamiltonian.

Conventions:
  - b is (B_x, B_y, B_z) in tesla; energies in rad/s.
  - The A_1g strain term only shifts all four levels and is left out of the
    matrix, so tr H = 0.
  - At zero strain H is block diagonal: τ = − on {e₋↓, e₋↑}, τ = + on
    {e₊↑, e₊↓}. Within each block the lower eigenstate is e₋↓′ (τ = −) and
    e₊↑′ (τ = +); with no transverse field the labels are the basis states
    themselves.
"""

import functools
import logging
import math
from dataclasses import dataclass

import numpy as np

from omit.errors import DomainError, LabelingError, OmitError, ParameterError
from omit.params import TWO_PI
from omit.sweep import SweepResult, ordered_map

logger = logging.getLogger(__name__)

LABELS = ('e-down', 'e+up', 'e+down', 'e-up')
MINUS_BLOCK = (0, 3)
PLUS_BLOCK = (1, 2)
GAP_TOLERANCE = 1e-6
TUNING_GUARD = 1e-9
STRAIN_WARN = 1e-3

BZ_COLUMNS = ('b_z_tesla', 'b_x_tesla', 'g_sm_hz', 'c2_abs', 'c3_abs', 'error')


# ── Value types ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SivLevelParams:
    lambda_so: float = TWO_PI * 46e9
    gamma_l: float = TWO_PI * 1.4e9
    gamma_s: float = TWO_PI * 14e9
    d_sus: float = TWO_PI * 1.3e15
    f_sus: float = TWO_PI * -1.7e15
    t_par: float = 0.0
    t_perp: float = 0.0

    def __post_init__(self):
        for name in ('lambda_so', 'gamma_l', 'gamma_s', 'd_sus', 'f_sus', 't_par', 't_perp'):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f'{name} must be finite')
        if self.lambda_so <= 0:
            raise ParameterError(f'lambda_so must be > 0, got {self.lambda_so!r}')
        if not self.gamma_s > self.gamma_l > 0:
            raise ParameterError('require gamma_s > gamma_l > 0')


@dataclass(frozen=True)
class StrainTensor:
    e_xx: float = 0.0
    e_yy: float = 0.0
    e_zz: float = 0.0
    e_xy: float = 0.0
    e_yz: float = 0.0
    e_zx: float = 0.0

    def __post_init__(self):
        values = (self.e_xx, self.e_yy, self.e_zz, self.e_xy, self.e_yz, self.e_zx)
        if not all(math.isfinite(v) for v in values):
            raise ParameterError('strain components must be finite')
        if max(abs(v) for v in values) > STRAIN_WARN:
            logger.warning('strain component above %g; zero-point strain is O(1e-9)', STRAIN_WARN)


@dataclass(frozen=True)
class StrainEnergies:
    e_a1g: float = 0.0
    e_egx: float = 0.0
    e_egy: float = 0.0

    @property
    def e_complex(self):
        return complex(self.e_egx, self.e_egy)


@dataclass(frozen=True)
class DressedBasis:
    """Zero-strain eigenstates; column k of vectors is the state LABELS[k]."""

    energies: np.ndarray
    vectors: np.ndarray

    def energy(self, label):
        return float(self.energies[LABELS.index(label)])

    def state(self, label):
        return self.vectors[:, LABELS.index(label)]


@dataclass(frozen=True)
class DressedTwoLevel:
    omega_s: float
    g_sm: float
    b_field: tuple
    c1: complex
    c2: complex
    c3: complex
    c4: complex


# ── Hamiltonian ───────────────────────────────────────────────────────────────

def strain_energies(tensor, p):
    return StrainEnergies(
        e_a1g=p.t_perp * (tensor.e_xx + tensor.e_yy) + p.t_par * tensor.e_zz,
        e_egx=p.d_sus * (tensor.e_xx - tensor.e_yy) + p.f_sus * tensor.e_zx,
        e_egy=-2.0 * p.d_sus * tensor.e_xy + p.f_sus * tensor.e_yz,
    )


def _field(b):
    if len(b) != 3:
        raise ParameterError(f'magnetic field must be (B_x, B_y, B_z), got {b!r}')
    bx, by, bz = (float(v) for v in b)
    if not all(math.isfinite(v) for v in (bx, by, bz)):
        raise ParameterError('magnetic field components must be finite')
    return bx, by, bz


def _zeeman_so(b, p):
    bx, by, bz = _field(b)
    lam, gs, gl = p.lambda_so, p.gamma_s, p.gamma_l
    h = np.diag([
        -lam / 2.0 - (gs + gl) * bz,
        -lam / 2.0 + (gs + gl) * bz,
        lam / 2.0 - (gs - gl) * bz,
        lam / 2.0 + (gs - gl) * bz,
    ]).astype(complex)
    h[0, 3] = gs * complex(bx, by)
    h[3, 0] = np.conj(h[0, 3])
    h[1, 2] = gs * complex(bx, -by)
    h[2, 1] = np.conj(h[1, 2])
    return h


def strain_hamiltonian(se):
    """E_g strain part alone; couples the two orbital branches at equal spin."""
    eps = se.e_complex
    h = np.zeros((4, 4), dtype=complex)
    h[0, 2] = -eps
    h[2, 0] = -np.conj(eps)
    h[1, 3] = -np.conj(eps)
    h[3, 1] = -eps
    return h


def hamiltonian_4x4(b, se, p):
    return _zeeman_so(b, p) + strain_hamiltonian(se)


def analytic_energies(b, p):
    """
    Zero-strain energies keyed by label.

    Within each orbital branch the spin-up-like state is the one shifted by
    −τ·root/2, i.e. the lower state of the τ = + branch is e₊↑.
    """
    bx, _, bz = _field(b)
    out = {}
    for tau in (-1, 1):
        root = math.sqrt(4.0 * p.gamma_s ** 2 * bx * bx + (p.lambda_so - 2.0 * tau * p.gamma_s * bz) ** 2)
        for up in (True, False):
            sign = 1.0 if up else -1.0
            label = ('e+' if tau > 0 else 'e-') + ('up' if up else 'down')
            out[label] = tau * (p.gamma_l * bz - sign * root / 2.0)
    return out


# ── Dressed states ────────────────────────────────────────────────────────────

def dressed_states(b, p):
    """
    Labeled eigenstates of the zero-strain Hamiltonian.

    Each 2×2 orbital block is diagonalized separately; the lower state of
    the τ = − block is e₋↓′ and of the τ = + block e₊↑′. Without a
    transverse field the eigenvectors are the basis states themselves.
    """
    bx, by, _ = _field(b)
    h = _zeeman_so(b, p)
    energies = np.zeros(4)
    vectors = np.zeros((4, 4), dtype=complex)

    if bx == 0 and by == 0:
        energies[:] = np.real(np.diag(h))
        vectors[:] = np.eye(4)
        return DressedBasis(energies=energies, vectors=vectors)

    # Labels follow energy order inside each block. Near an avoided crossing
    # of a block (B_z close to ±λ_SO/2γ_S with small B_x) the order no longer
    # tracks the bare-state overlap; a gap below GAP_TOLERANCE·λ_SO is refused.
    for block, (lower, upper) in ((MINUS_BLOCK, (0, 3)), (PLUS_BLOCK, (1, 2))):
        idx = np.array(block)
        w, v = np.linalg.eigh(h[np.ix_(idx, idx)])
        if w[1] - w[0] < GAP_TOLERANCE * p.lambda_so:
            raise LabelingError(
                f'near-degenerate levels in branch {LABELS[lower]}/{LABELS[upper]} '
                f'at B = {b!r} (gap {w[1] - w[0]:.3g} rad/s)')
        for k, label_index in enumerate((lower, upper)):
            energies[label_index] = w[k]
            vectors[idx, label_index] = v[:, k]
    return DressedBasis(energies=energies, vectors=vectors)


def qubit_splitting(b, p):
    basis = dressed_states(b, p)
    return basis.energy('e+up') - basis.energy('e-down')


def _element(basis, h, bra, ket):
    return complex(np.vdot(basis.state(bra), h @ basis.state(ket)))


def strain_coupling(b, se, p):
    """
    Dressed strain matrix elements and g_sm = |c₁|·|ε_Egx + iε_Egy|.

    c₁…c₄ are the dressed elements of the strain term for unit complex strain
    (ε_Egx + iε_Egy = 1) between the τ = − row states (e₋↓′, e₋↑′) and the
    τ = + column states (e₊↑′, e₊↓′).
    """
    basis = dressed_states(b, p)
    unit = strain_hamiltonian(StrainEnergies(e_egx=1.0))
    c1 = _element(basis, unit, 'e-down', 'e+up')
    c2 = _element(basis, unit, 'e-down', 'e+down')
    c3 = _element(basis, unit, 'e-up', 'e+up')
    c4 = _element(basis, unit, 'e-up', 'e+down')
    return DressedTwoLevel(
        omega_s=basis.energy('e+up') - basis.energy('e-down'),
        g_sm=abs(c1) * abs(se.e_complex),
        b_field=tuple(float(v) for v in b),
        c1=c1, c2=c2, c3=c3, c4=c4,
    )


def perturbative_shift(b, se, p):
    """
    Shift of the lowest state e₋↓′ under strain: exact and second order.

    Returns (exact, second_order). The first-order term vanishes because the
    strain only connects the two orbital branches.
    """
    basis = dressed_states(b, p)
    h0 = _zeeman_so(b, p)
    hs = strain_hamiltonian(se)
    ground = basis.state('e-down')
    e0 = basis.energy('e-down')
    exact = float(np.linalg.eigvalsh(h0 + hs)[0] - np.linalg.eigvalsh(h0)[0])
    second = 0.0
    for label in LABELS[1:]:
        m = np.vdot(basis.state(label), hs @ ground)
        second += abs(m) ** 2 / (e0 - basis.energy(label))
    return exact, float(second)


# ── Field tuning ──────────────────────────────────────────────────────────────

def tuning_range(omega_s, p):
    """[B_z,min, B_z,max) over which tune_bx has a solution."""
    return omega_s / (2.0 * (p.gamma_l + p.gamma_s)), omega_s / (2.0 * p.gamma_l)


def tune_bx(b_z, omega_s_target, p):
    """
    |B_x| that keeps E₊↑ − E₋↓ = omega_s_target at the given B_z (B_y = 0).

    Raises DomainError outside the tuning range or when B_z sits on the
    divergence at omega_s/(2γ_L).
    """
    lo, hi = tuning_range(omega_s_target, p)
    slack = 1e-12 * lo
    if b_z < lo - slack or b_z >= hi:
        raise DomainError(
            f'B_z = {b_z:.6g} T outside the tuning range [{lo:.6g}, {hi:.6g}) T')
    d = omega_s_target - 2.0 * p.gamma_l * b_z
    if abs(d) < TUNING_GUARD * omega_s_target:
        raise DomainError(f'B_x diverges at B_z = {b_z:.6g} T')
    spin = max((2.0 * p.gamma_s * b_z) ** 2 - d * d, 0.0)
    orbit = p.lambda_so ** 2 - d * d
    if orbit < 0:
        raise DomainError('qubit splitting exceeds the spin-orbit gap')
    return math.sqrt(spin) * math.sqrt(orbit) / (2.0 * p.gamma_s * abs(d))


def _bz_row(b_z, omega_s_target, se, p):
    try:
        bx = tune_bx(b_z, omega_s_target, p)
        dressed = strain_coupling((bx, 0.0, b_z), se, p)
    except OmitError as exc:
        return (b_z, math.nan, math.nan, math.nan, math.nan, str(exc)), False
    return (b_z, bx, dressed.g_sm / TWO_PI, abs(dressed.c2), abs(dressed.c3), ''), True


def sweep_bz(b_z_grid, omega_s_target, se, p, jobs=1, on_done=None):
    """g_sm across B_z with B_x retuned at every point to hold the qubit splitting."""
    work = functools.partial(_bz_row, omega_s_target=omega_s_target, se=se, p=p)
    result = SweepResult(columns=BZ_COLUMNS)
    for row, ok in ordered_map(work, [float(v) for v in b_z_grid], jobs=jobs, on_done=on_done):
        result.rows.append(row)
        if not ok:
            result.failures += 1
            logger.warning('sweep_bz: B_z=%.4g T failed: %s', row[0], row[-1])
    return result


def default_bz_grid(omega_s_target, p, points=200):
    """Linear grid over the tuning range, stopping short of the B_x divergence."""
    lo, hi = tuning_range(omega_s_target, p)
    return np.linspace(lo, lo + 0.98 * (hi - lo), points)
