"""Numeric evolution oracle for the dephasing master equation.

    d rho / dt = -i [H, rho] - (gamma/2) [H, [H, rho]]

H is time independent, so the exact solution is spectral: in the H
eigenbasis, rho_mn(t) = rho_mn(0) exp(-i w_mn t - (gamma/2) w_mn^2 t) with
w_mn = E_m - E_n. A fixed-step RK4 integrator of the right-hand side is
kept as an independent cross-check with a different failure mode.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metrics import wootters_concurrence_many
from .model import SystemParams, hamiltonian, initial_state, single_excitation_indices


class StepSizeError(RuntimeError):
    """RK4 step too large: step-halving discrepancy exceeded the bound."""


@dataclass(frozen=True)
class EvolutionResult:
    """Spectral-evolution trajectory of full-system states.

    times    scaled times gt (increasing)
    states   array (n_times, dim, dim) of full-system density matrices
    leakage  max population outside the single-excitation subspace
    """

    times: np.ndarray
    states: np.ndarray
    leakage: float


def _eigensystem(p: SystemParams):
    w, v = np.linalg.eigh(hamiltonian(p))
    return w, v


def evolve_spectral_grid(p: SystemParams, gts) -> np.ndarray:
    """Full-system states at each scaled time, shape (n, dim, dim)."""
    gts = np.atleast_1d(np.asarray(gts, dtype=float))
    if np.any(gts < 0):
        raise ValueError("times must be nonnegative")
    w, v = _eigensystem(p)
    rho0 = v.conj().T @ initial_state(p) @ v
    omega_mn = w[:, None] - w[None, :]
    t = gts / p.g
    expo = (-1j * omega_mn - p.gamma / 2.0 * omega_mn**2)[None, :, :] * t[
        :, None, None
    ]
    rho_t = rho0[None, :, :] * np.exp(expo)
    return np.einsum("ab,tbc,cd->tad", v, rho_t, v.conj().T)


def evolve_spectral(p: SystemParams, gt: float) -> np.ndarray:
    """Full-system state at a single scaled time."""
    return evolve_spectral_grid(p, [float(gt)])[0]


def reduce_to_atoms(states: np.ndarray, n_max: int) -> np.ndarray:
    """Trace out the cavity from a stack of full-system states."""
    states = np.asarray(states)
    squeeze = states.ndim == 2
    if squeeze:
        states = states[None]
    nc = n_max + 1
    reduced = np.einsum("tnanb->tab", states.reshape(-1, nc, 4, nc, 4))
    return reduced[0] if squeeze else reduced


def subspace_leakage(p: SystemParams, states: np.ndarray) -> float:
    """Max total population outside the single-excitation subspace."""
    states = np.asarray(states)
    if states.ndim == 2:
        states = states[None]
    pops = np.einsum("tii->ti", states).real
    outside = np.ones(states.shape[1], dtype=bool)
    outside[single_excitation_indices(p.n_max)] = False
    return float(pops[:, outside].sum(axis=1).max())


def evolve_grid(p: SystemParams, gts) -> EvolutionResult:
    """Spectral evolution over a time grid, with the leakage monitor."""
    gts = np.atleast_1d(np.asarray(gts, dtype=float))
    if np.any(np.diff(gts) <= 0):
        raise ValueError("times must be strictly increasing")
    states = evolve_spectral_grid(p, gts)
    return EvolutionResult(
        times=gts, states=states, leakage=subspace_leakage(p, states)
    )


def _rhs(h: np.ndarray, gamma: float, rho: np.ndarray) -> np.ndarray:
    comm = h @ rho - rho @ h
    out = -1j * comm
    if gamma:
        out = out - gamma / 2.0 * (h @ comm - comm @ h)
    return out


def evolve_rk4(
    p: SystemParams,
    gt: float,
    dt: float | None = None,
    check_step: bool = True,
) -> np.ndarray:
    """Fixed-step RK4 integration of the master equation up to scaled time gt.

    dt is the unscaled step (default 0.005/Omega). With check_step the run
    is repeated at dt/2 and a discrepancy above 1e-4 raises StepSizeError.
    """
    if gt < 0:
        raise ValueError("gt must be nonnegative")
    if dt is None:
        dt = 0.005 / p.omega
    if dt <= 0:
        raise ValueError("dt must be positive")
    h = hamiltonian(p)
    rho = _rk4_run(h, p.gamma, initial_state(p), gt / p.g, dt)
    if check_step:
        rho_half = _rk4_run(h, p.gamma, initial_state(p), gt / p.g, dt / 2.0)
        disc = np.abs(rho - rho_half).max()
        if disc > 1e-4:
            raise StepSizeError(
                f"step-halving discrepancy {disc:.3e} > 1e-4; reduce dt"
            )
    return rho


def _rk4_run(h, gamma, rho0, t_final, dt):
    rho = rho0.astype(complex)
    if t_final == 0:
        return rho
    n_steps = max(1, int(np.ceil(t_final / dt)))
    step = t_final / n_steps
    for _ in range(n_steps):
        k1 = _rhs(h, gamma, rho)
        k2 = _rhs(h, gamma, rho + step / 2.0 * k1)
        k3 = _rhs(h, gamma, rho + step / 2.0 * k2)
        k4 = _rhs(h, gamma, rho + step * k3)
        rho = rho + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return rho


def dephased_concurrence_oracle(p: SystemParams, gt):
    """Wootters concurrence of the cavity-traced spectral solution."""
    gts = np.atleast_1d(np.asarray(gt, dtype=float))
    reduced = reduce_to_atoms(evolve_spectral_grid(p, gts), p.n_max)
    out = wootters_concurrence_many(reduced)
    return float(out[0]) if np.ndim(gt) == 0 else out
