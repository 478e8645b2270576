"""Closed-form dynamics of the two-atom/cavity system.

The printed term lists for the full and reduced density matrices end in
"+h.c."; they are interpreted as rho = X + X^dagger over the *entire* term
list (Hermitian diagonal terms included, hence doubled). That is the only
reading consistent with trace one and with the t = 0 atomic marginal, and
it is cross-checked against the numeric evolution oracle in the tests.

All public time arguments are the dimensionless scaled time gt; conversion
to physical time happens exactly once at each function boundary.
"""
from __future__ import annotations

import numpy as np

from .model import (
    BELL_MINUS,
    BELL_PLUS,
    IDX_GG,
    SystemParams,
    TwoQubitState,
    initial_state,
)

_GG = np.zeros(4, dtype=complex)
_GG[IDX_GG] = 1.0

_P_BP = np.outer(BELL_PLUS, BELL_PLUS.conj())
_P_BM = np.outer(BELL_MINUS, BELL_MINUS.conj())
_P_GG = np.outer(_GG, _GG.conj())
_BP_BM = np.outer(BELL_PLUS, BELL_MINUS.conj())


def _reduced_coeffs(p: SystemParams, gt):
    """Coefficients of the reduced-state term list (before Hermitian closure).

    Returns (c_plus, c_minus, c_gg, c_cross) broadcast over gt.
    """
    gt = np.asarray(gt, dtype=float)
    t = gt / p.g
    omega = p.omega
    r = p.delta / omega
    lam = p.lambda_
    cos_ot = np.cos(omega * t)
    c_plus = lam / 8.0 * (1.0 + r * r + (1.0 - r * r) * cos_ot)
    c_minus = np.full_like(gt, lam / 4.0)
    c_gg = p.g**2 * lam / omega**2 * (1.0 - cos_ot) + (1.0 - lam) / 2.0
    c_cross = (
        lam
        / 4.0
        * (
            (1.0 - r) * np.exp(1j * (omega + p.delta) * t / 2.0)
            + (1.0 + r) * np.exp(-1j * (omega - p.delta) * t / 2.0)
        )
    )
    return c_plus, c_minus, c_gg, c_cross


def rho_s_matrices(p: SystemParams, gt) -> np.ndarray:
    """Reduced two-atom density matrices on a grid of scaled times.

    Returns an array of shape gt.shape + (4, 4).
    """
    c_plus, c_minus, c_gg, c_cross = _reduced_coeffs(p, gt)
    x = (
        c_plus[..., None, None] * _P_BP
        + c_minus[..., None, None] * _P_BM
        + c_gg[..., None, None] * _P_GG
        + c_cross[..., None, None] * _BP_BM
    )
    return x + np.swapaxes(x, -1, -2).conj()


def rho_s_analytic(p: SystemParams, gt: float) -> TwoQubitState:
    """Reduced two-atom state at scaled time gt, validated."""
    if gt < 0:
        raise ValueError("gt must be nonnegative")
    return TwoQubitState(rho_s_matrices(p, float(gt)))


def rho_full_analytic(p: SystemParams, gt: float) -> np.ndarray:
    """Full atom-cavity density matrix at scaled time gt."""
    if gt < 0:
        raise ValueError("gt must be nonnegative")
    t = gt / p.g
    omega = p.omega
    r = p.delta / omega
    lam = p.lambda_
    cos_ot = np.cos(omega * t)

    nc = p.n_max + 1
    ket0 = np.zeros(nc, dtype=complex)
    ket0[0] = 1.0
    ket1 = np.zeros(nc, dtype=complex)
    ket1[1] = 1.0
    p00 = np.outer(ket0, ket0.conj())
    p11 = np.outer(ket1, ket1.conj())
    p01 = np.outer(ket0, ket1.conj())

    c_plus, _, _, c_cross = _reduced_coeffs(p, gt)
    x = complex(c_plus) * np.kron(p00, _P_BP)
    x += p.g**2 * lam / omega**2 * (1.0 - cos_ot) * np.kron(p11, _P_GG)
    x += lam / 4.0 * np.kron(p00, _P_BM)
    x += (
        np.sqrt(2.0) * p.g * lam / (2.0 * omega)
        * (r * (1.0 - cos_ot) + 1j * np.sin(omega * t))
        * np.kron(p01, np.outer(BELL_PLUS, _GG.conj()))
    )
    x += (
        np.sqrt(2.0) * p.g * lam / (2.0 * omega)
        * (
            np.exp(1j * (omega - p.delta) * t / 2.0)
            - np.exp(-1j * (omega + p.delta) * t / 2.0)
        )
        * np.kron(p01, np.outer(BELL_MINUS, _GG.conj()))
    )
    x += complex(c_cross) * np.kron(p00, _BP_BM)
    x += (1.0 - lam) / 2.0 * np.kron(p00, _P_GG)

    rho = x + x.conj().T
    tr = rho.trace().real
    if abs(tr - 1.0) > 1e-10:
        raise ValueError(f"full-state trace {tr} deviates from 1")
    return rho


def concurrence_closed(p: SystemParams, gt):
    """Closed-form concurrence lambda*sqrt(A^2 + B^2) of the reduced state."""
    gt = np.asarray(gt, dtype=float)
    if np.any(gt < 0):
        raise ValueError("gt must be nonnegative")
    a, b = _ab_terms(p, gt, gamma=0.0)
    out = p.lambda_ * np.hypot(a, b)
    return out if out.ndim else float(out)


def _ab_terms(p: SystemParams, gt, gamma: float):
    """A and B of the concurrence closed form, with optional dephasing damping."""
    t = np.asarray(gt, dtype=float) / p.g
    omega = p.omega
    r = p.delta / omega
    damp_cos = np.exp(-gamma * t / 2.0 * omega**2) if gamma else 1.0
    damp_p = np.exp(-gamma * t / 8.0 * (omega + p.delta) ** 2) if gamma else 1.0
    damp_m = np.exp(-gamma * t / 8.0 * (omega - p.delta) ** 2) if gamma else 1.0
    a = (
        p.delta**2 / (4.0 * omega**2)
        - 0.25
        + 0.25 * (1.0 - r * r) * np.cos(omega * t) * damp_cos
    )
    b = 0.5 * (1.0 - r) * np.sin((omega + p.delta) * t / 2.0) * damp_p - 0.5 * (
        1.0 + r
    ) * np.sin((omega - p.delta) * t / 2.0) * damp_m
    return a, b


def concurrence_dephased(p: SystemParams, gt):
    """Closed-form concurrence under pure phase decoherence at rate gamma."""
    gt = np.asarray(gt, dtype=float)
    if np.any(gt < 0):
        raise ValueError("gt must be nonnegative")
    a, b = _ab_terms(p, gt, gamma=p.gamma)
    out = p.lambda_ * np.hypot(a, b)
    return out if out.ndim else float(out)


def _require_pure_initial(p: SystemParams):
    if p.lambda_ != 1.0:
        raise ValueError(
            "closed-form CHSH terms are only available for lambda_ == 1"
        )


def sigma_zeta(p: SystemParams, gt):
    """Closed-form (sigma, zeta) entering the maximal CHSH violation.

    Only valid for lambda_ == 1; other initial mixtures must use the
    general correlation-matrix route in the metrics module.
    """
    _require_pure_initial(p)
    t = np.asarray(gt, dtype=float) / p.g
    omega = p.omega
    r = p.delta / omega
    cos_ot = np.cos(omega * t)
    sig = 4.0 * p.g**4 / omega**4 * (1.0 - cos_ot) ** 2 + 0.25 * (
        (1.0 - r) * np.sin((omega + p.delta) * t / 2.0)
        - (1.0 + r) * np.sin((omega - p.delta) * t / 2.0)
    ) ** 2
    zeta = (
        (p.delta**2 + 4.0 * p.g**2) / omega**2
        + 4.0 * p.g**2 / omega**2 * cos_ot
    ) ** 2
    if sig.ndim:
        return sig, zeta
    return float(sig), float(zeta)


def bell_max_closed(p: SystemParams, gt):
    """Closed-form maximal CHSH value 2*sqrt(sigma + max(sigma, zeta))."""
    sig, zeta = sigma_zeta(p, gt)
    out = 2.0 * np.sqrt(sig + np.maximum(sig, zeta))
    return out if np.ndim(out) else float(out)


def recurrence_concurrences(p: SystemParams, k_max: int):
    """Pure-state recurrence series (k, gt_k, C_k).

    At gt_k = 2 k pi g / Omega the lambda_ = 1 reduced state is pure with
    concurrence |sin(Delta k pi / Omega)|.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    k = np.arange(1, k_max + 1)
    gt_k = 2.0 * np.pi * k * p.g / p.omega
    c_k = np.abs(np.sin(p.delta * k * np.pi / p.omega))
    return k, gt_k, c_k


def stationary_concurrence(p: SystemParams) -> float:
    """Long-time dephased concurrence 2 * lambda * g^2 / Omega^2."""
    if p.gamma <= 0:
        raise ValueError("stationary state requires gamma > 0")
    return 2.0 * p.lambda_ * p.g**2 / p.omega**2


def initial_state_check(p: SystemParams) -> float:
    """Max entry deviation between rho_full_analytic at t=0 and rho(0)."""
    return float(np.abs(rho_full_analytic(p, 0.0) - initial_state(p)).max())
