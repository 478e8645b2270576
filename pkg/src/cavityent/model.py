"""Physical model: parameters, basis conventions, Hamiltonian, initial state.

Two identical two-level atoms couple symmetrically to one cavity mode that
starts in vacuum. We work in the rotating frame where only the detuning
Delta = omega_0 - omega and the coupling g appear; the dropped multiple of
the conserved excitation number contributes only sector-global phases.

Basis conventions (fixed once, everything downstream depends on them):
  * single atom: index 0 = |e>, index 1 = |g>
  * atomic pair: |ee>, |eg>, |ge>, |gg> at indices 0..3
  * full space:  cavity-major, |n> (x) |atom1> (x) |atom2>
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_complex_matrix, herm_eig, tensor

# atomic pair indices
IDX_EE, IDX_EG, IDX_GE, IDX_GG = 0, 1, 2, 3

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)   # |e><g|
SIGMA_MINUS = SIGMA_PLUS.conj().T

BELL_PLUS = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
BELL_MINUS = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)

# y (x) y spin flip, used by the concurrence
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class SystemParams:
    """Physical parameters of the two-atom/cavity system.

    g       coupling strength (> 0)
    delta   detuning Delta = omega_0 - omega (any sign)
    lambda_ initial excited population of atom 1, in [0, 1]
    gamma   phase decoherence rate (>= 0; units of time)
    n_max   cavity Fock cutoff (>= 1)
    """

    g: float
    delta: float = 0.0
    lambda_: float = 1.0
    gamma: float = 0.0
    n_max: int = 1

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError(f"g must be positive, got {self.g}")
        if not 0.0 <= self.lambda_ <= 1.0:
            raise ValueError(f"lambda_ must be in [0, 1], got {self.lambda_}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be nonnegative, got {self.gamma}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def omega(self) -> float:
        """Generalized Rabi frequency Omega = sqrt(Delta^2 + 8 g^2)."""
        return float(np.sqrt(self.delta**2 + 8.0 * self.g**2))

    @property
    def dim(self) -> int:
        return 4 * (self.n_max + 1)


@dataclass(frozen=True)
class TwoQubitState:
    """Validated 4x4 density matrix of the two atoms (atomic ordering)."""

    matrix: np.ndarray

    HERM_ATOL = 1e-10
    TRACE_ATOL = 1e-10
    EIG_FLOOR = -1e-9

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        if m.shape[0] != 4:
            raise ValueError(f"two-qubit state must be 4x4, got dim {m.shape[0]}")
        dev = np.abs(m - m.conj().T).max()
        if dev > self.HERM_ATOL:
            raise ValueError(f"state not Hermitian (max deviation {dev:.3e})")
        tr = m.trace()
        if abs(tr - 1.0) > self.TRACE_ATOL:
            raise ValueError(f"state trace {tr} deviates from 1")
        wmin = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
        if wmin < self.EIG_FLOOR:
            raise ValueError(f"state has negative eigenvalue {wmin:.3e}")
        object.__setattr__(self, "matrix", m)


def as_state_matrix(state) -> np.ndarray:
    """Accept a TwoQubitState or a raw 4x4 array; return the array."""
    if isinstance(state, TwoQubitState):
        return state.matrix
    return as_complex_matrix(state)


def destroy(n_levels: int) -> np.ndarray:
    """Truncated annihilation operator on n_levels Fock states."""
    return np.diag(np.sqrt(np.arange(1, n_levels, dtype=float)), 1).astype(complex)


def _three_kron(c, a1, a2) -> np.ndarray:
    return tensor(c, tensor(a1, a2))


def hamiltonian(p: SystemParams) -> np.ndarray:
    """Rotating-frame Hamiltonian: Delta * (atomic excitations) + couplings."""
    nc = p.n_max + 1
    a = destroy(nc)
    ic = np.eye(nc, dtype=complex)
    i2 = np.eye(2, dtype=complex)
    n_e = SIGMA_PLUS @ SIGMA_MINUS
    h = p.delta * (_three_kron(ic, n_e, i2) + _three_kron(ic, i2, n_e))
    coupling = _three_kron(a, SIGMA_PLUS, i2) + _three_kron(a, i2, SIGMA_PLUS)
    h = h + p.g * (coupling + coupling.conj().T)
    return h


def initial_state(p: SystemParams) -> np.ndarray:
    """rho(0): vacuum cavity, atom 1 mixed with weight lambda_, atom 2 ground."""
    rho = np.zeros((p.dim, p.dim), dtype=complex)
    rho[IDX_EG, IDX_EG] = p.lambda_          # |0, e, g>
    rho[IDX_GG, IDX_GG] = 1.0 - p.lambda_    # |0, g, g>
    return rho


def excitation_number(p: SystemParams) -> np.ndarray:
    """Total excitation N = a^dag a + sum_i sigma_+^(i) sigma_-^(i)."""
    nc = p.n_max + 1
    ic = np.eye(nc, dtype=complex)
    i2 = np.eye(2, dtype=complex)
    n_cav = np.diag(np.arange(nc, dtype=float)).astype(complex)
    n_e = SIGMA_PLUS @ SIGMA_MINUS
    return (
        _three_kron(n_cav, i2, i2)
        + _three_kron(ic, n_e, i2)
        + _three_kron(ic, i2, n_e)
    )


def single_excitation_indices(n_max: int) -> list[int]:
    """Full-space indices spanning the reachable subspace of the Eq.-(2)-type
    initial state: {|0,eg>, |0,ge>, |0,gg>, |1,gg>}."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return [IDX_EG, IDX_GE, IDX_GG, 4 + IDX_GG]


__all__ = [
    "SystemParams",
    "TwoQubitState",
    "as_state_matrix",
    "hamiltonian",
    "initial_state",
    "excitation_number",
    "single_excitation_indices",
    "destroy",
    "herm_eig",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "BELL_PLUS",
    "BELL_MINUS",
    "SPIN_FLIP",
    "IDX_EE",
    "IDX_EG",
    "IDX_GE",
    "IDX_GG",
]
