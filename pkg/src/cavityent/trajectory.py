"""Time-grid sweeps producing metric trajectories.

A sweep evaluates (concurrence, linear entropy, maximal CHSH value, purity)
on a uniform grid of scaled times from one of three sources:

  analytic  closed-form reduced states and closed-form concurrence
  spectral  exact spectral solution of the master equation, cavity-traced
  rk4       fixed-step RK4 integration (slow; cross-check only)

With gamma > 0 only the concurrence has a closed form, so the analytic
source takes the remaining metrics from the spectral states.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.spatial import cKDTree

from . import analytic, evolution, metrics
from .frontier import (
    BELL_FRONTIER,
    TSIRELSON,
    FrontierCurve,
    mems_concurrence_at,
    mems_linear_entropy,
)
from .model import SystemParams

ANALYTIC = "analytic"
SPECTRAL = "spectral"
RK4 = "rk4"
SOURCES = (ANALYTIC, SPECTRAL, RK4)


@dataclass(frozen=True)
class TrajectoryPoint:
    gt: float
    concurrence: float
    linear_entropy: float
    bell_max: float
    purity: float


@dataclass(frozen=True)
class Trajectory:
    params: SystemParams
    source: str
    gt: np.ndarray
    concurrence: np.ndarray
    linear_entropy: np.ndarray
    bell_max: np.ndarray
    purity: np.ndarray

    def __len__(self) -> int:
        return len(self.gt)

    def points(self) -> Iterator[TrajectoryPoint]:
        for i in range(len(self.gt)):
            yield TrajectoryPoint(
                gt=float(self.gt[i]),
                concurrence=float(self.concurrence[i]),
                linear_entropy=float(self.linear_entropy[i]),
                bell_max=float(self.bell_max[i]),
                purity=float(self.purity[i]),
            )

    def plane_points(self, kind: str = "mems") -> np.ndarray:
        """(M, C) points, or (M, |B|max) for the Bell frontier kind."""
        value = self.bell_max if kind == BELL_FRONTIER else self.concurrence
        return np.column_stack([self.linear_entropy, value])


def _validate_ranges(traj: Trajectory):
    eps = 1e-9
    checks = [
        (traj.concurrence, 0.0 - eps, 1.0 + eps, "concurrence"),
        (traj.linear_entropy, 0.0 - eps, 1.0 + eps, "linear entropy"),
        (traj.bell_max, 0.0 - eps, TSIRELSON + eps, "bell_max"),
        (traj.purity, 0.25 - eps, 1.0 + eps, "purity"),
    ]
    for values, lo, hi, name in checks:
        if values.min() < lo or values.max() > hi:
            raise ValueError(
                f"{name} out of range [{values.min()}, {values.max()}]"
            )


def sweep(
    p: SystemParams, gt_max: float, n_steps: int, source: str = ANALYTIC
) -> Trajectory:
    """Uniform time-grid sweep of all trajectory metrics."""
    if gt_max <= 0:
        raise ValueError("gt_max must be positive")
    if n_steps < 2:
        raise ValueError("n_steps must be >= 2")
    if source not in SOURCES:
        raise ValueError(f"unknown source {source!r}; expected one of {SOURCES}")
    gts = np.linspace(0.0, gt_max, n_steps)

    if source == ANALYTIC:
        if p.gamma == 0.0:
            states = analytic.rho_s_matrices(p, gts)
        else:
            states = evolution.reduce_to_atoms(
                evolution.evolve_spectral_grid(p, gts), p.n_max
            )
        conc = np.asarray(
            analytic.concurrence_dephased(p, gts)
            if p.gamma > 0.0
            else analytic.concurrence_closed(p, gts)
        )
        if p.lambda_ == 1.0 and p.gamma == 0.0:
            bell = np.asarray(analytic.bell_max_closed(p, gts))
        else:
            bell = metrics.bell_max_many(states)
    else:
        if source == SPECTRAL:
            full = evolution.evolve_spectral_grid(p, gts)
        else:
            dt = 0.005 / p.omega
            full = np.stack(
                [
                    evolution.evolve_rk4(p, gt, dt=dt, check_step=False)
                    for gt in gts
                ]
            )
        states = evolution.reduce_to_atoms(full, p.n_max)
        conc = metrics.wootters_concurrence_many(states)
        bell = metrics.bell_max_many(states)

    pur = metrics.purity_many(states)
    traj = Trajectory(
        params=p,
        source=source,
        gt=gts,
        concurrence=np.clip(conc, 0.0, 1.0),
        linear_entropy=np.clip(metrics.linear_entropy_many(states), 0.0, 1.0),
        bell_max=np.clip(bell, 0.0, TSIRELSON),
        purity=np.clip(pur, 0.25, 1.0),
    )
    _validate_ranges(traj)
    return traj


def mirror_symmetry_check(traj: Trajectory, curve: FrontierCurve) -> float:
    """Hausdorff-style asymmetry score of the (M, C) pattern.

    Reflects the trajectory about the horizontal axis at half the frontier
    concurrence corresponding to the initial linear entropy; a small score
    means the pattern is close to mirror symmetric. Undefined for a pure
    initial state (the initial linear entropy is 0 and the axis degenerates).
    """
    if traj.params.lambda_ >= 1.0:
        raise ValueError("mirror axis undefined for lambda_ == 1")
    m0 = float(traj.linear_entropy[0])
    if curve.kind == BELL_FRONTIER:
        raise ValueError("mirror check is defined in the (M, C) plane")
    axis = float(np.interp(m0, curve.points[:, 0], curve.points[:, 1])) / 2.0
    pts = traj.plane_points()
    reflected = pts.copy()
    reflected[:, 1] = 2.0 * axis - reflected[:, 1]
    t_pts = cKDTree(pts)
    t_ref = cKDTree(reflected)
    d_fwd = t_ref.query(pts)[0].max()
    d_bwd = t_pts.query(reflected)[0].max()
    return float(max(d_fwd, d_bwd))


def initial_linear_entropy(p: SystemParams) -> float:
    """Linear entropy of the t = 0 reduced state, (8/3) lambda (1 - lambda)."""
    return 8.0 / 3.0 * p.lambda_ * (1.0 - p.lambda_)


def min_mems_distance(traj: Trajectory) -> float:
    """Smallest Euclidean (M, C)-plane distance to the MEMS frontier."""
    c = np.linspace(1.0, 0.0, 4097)
    curve_pts = np.column_stack([mems_linear_entropy(c), c])
    return float(cKDTree(curve_pts).query(traj.plane_points())[0].min())


__all__ = [
    "ANALYTIC",
    "SPECTRAL",
    "RK4",
    "SOURCES",
    "Trajectory",
    "TrajectoryPoint",
    "sweep",
    "mirror_symmetry_check",
    "initial_linear_entropy",
    "min_mems_distance",
    "mems_concurrence_at",
]
