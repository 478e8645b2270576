"""Reference curves and plane analytics in the (linear entropy, value) plane.

Curves:
  * Werner: p |B+><B+| + (1-p) I/4, p in [1/3, 1].
  * MEMS:   the standard concurrence-vs-linear-entropy frontier family,
    validated in-repo by an optimization/sampling oracle rather than trusted.
  * Bell frontier: numerically estimated upper envelope of the maximal CHSH
    value vs linear entropy.

Also: epsilon-coverage of a frontier by a trajectory, and continued-fraction
classification of Delta/Omega (floating-point ratios are always rational;
"irrational" is operationalized relative to a tolerance and a denominator
horizon).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import optimize
from scipy.spatial import cKDTree

from .metrics import bell_max_many, linear_entropy_many, wootters_concurrence_many
from .model import BELL_PLUS, IDX_EE, IDX_EG, IDX_GG, SystemParams

TSIRELSON = 2.0 * np.sqrt(2.0)

WERNER = "werner"
MEMS_CM = "mems"
BELL_FRONTIER = "bell"

EFFECTIVELY_RATIONAL = "EFFECTIVELY_RATIONAL"
EFFECTIVELY_IRRATIONAL = "EFFECTIVELY_IRRATIONAL"


@dataclass(frozen=True)
class FrontierCurve:
    """Sampled boundary curve: points[:, 0] = linear entropy (increasing),
    points[:, 1] = frontier value (concurrence or CHSH maximum)."""

    kind: str
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ValueError("curve needs an (n, 2) array with n >= 2")
        if np.any(np.diff(pts[:, 0]) <= 0):
            raise ValueError("linear entropy must be strictly increasing")
        object.__setattr__(self, "points", pts)

    def value_at(self, m) -> np.ndarray:
        """Interpolation of the curve value at linear entropy m.

        The Bell envelope is interpolated in squared value: both analytic
        branches of the envelope have |B|^2 linear in M, so this is exact
        between knots and avoids chord sag under the concave curve.
        """
        if self.kind == BELL_FRONTIER:
            sq = np.interp(m, self.points[:, 0], self.points[:, 1] ** 2)
            return np.sqrt(sq)
        return np.interp(m, self.points[:, 0], self.points[:, 1])


@dataclass(frozen=True)
class CoverageReport:
    epsilon: float
    min_distance: float
    fraction_covered: float


@dataclass(frozen=True)
class RationalityReport:
    ratio: float
    tol: float
    q_max: int
    convergents: list[tuple[int, int]] = field(default_factory=list)
    best_q: int | None = None
    classification: str = EFFECTIVELY_IRRATIONAL


def werner_matrix(p_bell: float) -> np.ndarray:
    """Werner state p |B+><B+| + (1-p) I/4."""
    if not 0.0 <= p_bell <= 1.0:
        raise ValueError("Werner parameter must be in [0, 1]")
    return p_bell * np.outer(BELL_PLUS, BELL_PLUS.conj()) + (
        1.0 - p_bell
    ) / 4.0 * np.eye(4, dtype=complex)


def werner_curve(n_points: int) -> FrontierCurve:
    """(M, C) curve of Werner states for p in [1/3, 1]."""
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    p = np.linspace(1.0, 1.0 / 3.0, n_points)  # M increases as p drops
    m = 1.0 - p * p
    c = (3.0 * p - 1.0) / 2.0
    return FrontierCurve(WERNER, np.column_stack([m, c]))


def mems_matrix(c: float) -> np.ndarray:
    """Maximally entangled mixed state with concurrence c.

    X-structured with corner coherence c/2 and corner populations
    g(c) = c/2 for c >= 2/3 else 1/3.
    """
    if not 0.0 <= c <= 1.0:
        raise ValueError("concurrence must be in [0, 1]")
    g = c / 2.0 if c >= 2.0 / 3.0 else 1.0 / 3.0
    rho = np.zeros((4, 4), dtype=complex)
    rho[IDX_EE, IDX_EE] = g
    rho[IDX_GG, IDX_GG] = g
    rho[IDX_EG, IDX_EG] = 1.0 - 2.0 * g
    rho[IDX_EE, IDX_GG] = c / 2.0
    rho[IDX_GG, IDX_EE] = c / 2.0
    return rho


def mems_linear_entropy(c) -> np.ndarray:
    """Linear entropy of the MEMS with concurrence c (branchwise closed form)."""
    c = np.asarray(c, dtype=float)
    return np.where(
        c >= 2.0 / 3.0,
        8.0 / 3.0 * c * (1.0 - c),
        8.0 / 9.0 - 2.0 / 3.0 * c * c,
    )


def mems_concurrence_at(m) -> np.ndarray:
    """Frontier concurrence at linear entropy m (inverse of the MEMS curve)."""
    m = np.asarray(m, dtype=float)
    if np.any(m < -1e-12) or np.any(m > 8.0 / 9.0 + 1e-12):
        raise ValueError("linear entropy outside [0, 8/9]")
    m = np.clip(m, 0.0, 8.0 / 9.0)
    upper = (1.0 + np.sqrt(np.clip(1.0 - 1.5 * m, 0.0, None))) / 2.0
    lower = np.sqrt(np.clip(1.5 * (8.0 / 9.0 - m), 0.0, None))
    out = np.where(m <= 16.0 / 27.0, upper, lower)
    return out if out.ndim else float(out)


def mems_curve(n_points: int) -> FrontierCurve:
    """(M, C) frontier curve sampled over c in [0, 1]."""
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    c = np.linspace(1.0, 0.0, n_points)  # M increases as c drops
    m = mems_linear_entropy(c)
    return FrontierCurve(MEMS_CM, np.column_stack([m, c]))


def random_two_qubit_states(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random pure states mixed with I/4 at uniform weight; shape (n, 4, 4)."""
    vec = rng.standard_normal((n, 4)) + 1j * rng.standard_normal((n, 4))
    vec /= np.linalg.norm(vec, axis=1, keepdims=True)
    pure = vec[:, :, None] * vec.conj()[:, None, :]
    x = rng.uniform(0.0, 1.0, size=n)[:, None, None]
    return (1.0 - x) * pure + x * np.eye(4)[None] / 4.0


def mems_excess(samples: np.ndarray) -> float:
    """Max amount by which sampled states exceed the MEMS curve in (M, C)."""
    m = linear_entropy_many(samples)
    c = wootters_concurrence_many(samples)
    return float((c - mems_concurrence_at(np.clip(m, 0.0, 8.0 / 9.0))).max())


def mems_oracle_excess(
    samples: int, seed: int, refine: int = 32, rng_refine_scale: float = 0.02
) -> float:
    """Optimization oracle for the MEMS curve.

    Draws seeded random states, locally perturbs the ones closest to the
    frontier, and reports the worst excess of concurrence over the curve.
    A positive return larger than ~1e-3 would mean the closed-form family
    is not actually the frontier.
    """
    rng = np.random.default_rng(seed)
    states = random_two_qubit_states(samples, rng)
    m = linear_entropy_many(states)
    c = wootters_concurrence_many(states)
    gap = mems_concurrence_at(np.clip(m, 0.0, 8.0 / 9.0)) - c
    worst = -float(gap.min())
    # hill-climb from the closest states
    for idx in np.argsort(gap)[:refine]:
        rho = states[idx]
        best_gap = gap[idx]
        scale = rng_refine_scale
        for _ in range(200):
            pert = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            pert = (pert + pert.conj().T) / 2.0
            cand = rho + scale * pert
            w, v = np.linalg.eigh(cand)
            w = np.clip(w, 0.0, None)
            cand = (v * w) @ v.conj().T
            cand /= cand.trace().real
            g = float(
                mems_concurrence_at(
                    np.clip(linear_entropy_many(cand[None])[0], 0.0, 8.0 / 9.0)
                )
                - wootters_concurrence_many(cand[None])[0]
            )
            if g < best_gap:
                best_gap, rho = g, cand
            else:
                scale *= 0.9
        worst = max(worst, -best_gap)
    return worst


def _bell_diagonal(probs: np.ndarray) -> np.ndarray:
    """Bell-diagonal state from 4 nonnegative weights (normalized here)."""
    e = np.eye(2)
    phi_p = (np.kron(e[0], e[0]) + np.kron(e[1], e[1])) / np.sqrt(2)
    phi_m = (np.kron(e[0], e[0]) - np.kron(e[1], e[1])) / np.sqrt(2)
    psi_p = (np.kron(e[0], e[1]) + np.kron(e[1], e[0])) / np.sqrt(2)
    psi_m = (np.kron(e[0], e[1]) - np.kron(e[1], e[0])) / np.sqrt(2)
    kets = np.stack([phi_p, phi_m, psi_p, psi_m]).astype(complex)
    p = np.abs(probs)
    p = p / p.sum()
    return np.einsum("k,ka,kb->ab", p, kets, kets.conj())


def _bell_opt_at(m_target: float, rng: np.random.Generator) -> float:
    """Max CHSH value over Bell-diagonal states at fixed linear entropy."""

    def objective(x):
        rho = _bell_diagonal(x)
        m = linear_entropy_many(rho[None])[0]
        b = bell_max_many(rho[None])[0]
        return -(b - 200.0 * (m - m_target) ** 2 * 8.0)

    best = 0.0
    starts = [np.array([0.5, 0.5, 0.0, 0.0]), np.array([1.0, 0.0, 0.0, 0.0])]
    starts += [rng.dirichlet(np.ones(4)) for _ in range(2)]
    for x0 in starts:
        res = optimize.minimize(
            objective, x0, method="Nelder-Mead",
            options={"maxfev": 400, "xatol": 1e-9, "fatol": 1e-12},
        )
        rho = _bell_diagonal(res.x)
        m = float(linear_entropy_many(rho[None])[0])
        if abs(m - m_target) < 5e-4:
            best = max(best, float(bell_max_many(rho[None])[0]))
    return best


def bell_envelope_candidate(m) -> np.ndarray:
    """Best Bell-diagonal CHSH value at linear entropy m.

    Maximizing the two largest squared singular values of T over the
    Bell-diagonal tetrahedron at fixed purity gives |B|^2 = 4(2 - 3M/2)
    for M <= 2/3 (two-Bell-state mixtures) and |B|^2 = 12(1 - M) above
    (rank-deficient correlation tensors, t3 = 0).
    """
    m = np.asarray(m, dtype=float)
    return np.where(
        m <= 2.0 / 3.0,
        2.0 * np.sqrt(np.clip(2.0 - 1.5 * m, 0.0, None)),
        2.0 * np.sqrt(np.clip(3.0 * (1.0 - m), 0.0, None)),
    )


def bell_frontier(
    n_points: int = 129, samples: int = 100_000, seed: int = 0
) -> FrontierCurve:
    """Upper envelope of the maximal CHSH value vs linear entropy.

    The Bell-diagonal candidate curve is combined with per-bin maxima of
    seeded random states and refined by local optimization at anchor
    mixedness values, then forced monotone non-increasing away from the
    exact (M=0, 2*sqrt(2)) endpoint.
    """
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    if samples < 100_000:
        raise ValueError("need at least 1e5 samples for the envelope")
    rng = np.random.default_rng(seed)
    states = random_two_qubit_states(samples, rng)
    m = linear_entropy_many(states)
    b = bell_max_many(states)

    grid = np.linspace(0.0, 1.0, n_points)
    # keep the branch point an exact knot so squared-value interpolation
    # is exact on both branches
    grid[np.argmin(np.abs(grid - 2.0 / 3.0))] = 2.0 / 3.0
    env = bell_envelope_candidate(grid)
    # sampled maxima, assigned to the nearest bin at or below their M
    bins = np.clip(np.searchsorted(grid, m) - 1, 0, n_points - 1)
    np.maximum.at(env, bins, b)
    # local optimization on a coarser set of anchors
    for i in range(0, n_points, max(1, n_points // 16)):
        if grid[i] > 0.95:
            continue
        env[i] = max(env[i], _bell_opt_at(grid[i], rng))
    env[0] = TSIRELSON
    # envelope must not increase with mixedness
    for i in range(n_points - 2, -1, -1):
        env[i] = max(env[i], env[i + 1])
    return FrontierCurve(BELL_FRONTIER, np.column_stack([grid, env]))


def _polyline_resample(points: np.ndarray, n: int = 4096) -> np.ndarray:
    """Resample a polyline uniformly by arc length."""
    seg = np.linalg.norm(np.diff(points, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    if s[-1] == 0.0:
        return points[:1].repeat(n, axis=0)
    u = np.linspace(0.0, s[-1], n)
    x = np.interp(u, s, points[:, 0])
    y = np.interp(u, s, points[:, 1])
    return np.column_stack([x, y])


def coverage(traj, curve: FrontierCurve, epsilon: float) -> CoverageReport:
    """Epsilon-coverage of ``curve`` by the trajectory's plane points.

    ``traj`` is a Trajectory (or anything with plane_points()) whose plane
    coordinates match the curve kind: (M, C) for concurrence curves,
    (M, |B|max) for the Bell frontier.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    pts = traj.plane_points(curve.kind) if hasattr(traj, "plane_points") else np.asarray(traj, dtype=float)
    if pts.size == 0:
        raise ValueError("empty trajectory")
    dense = _polyline_resample(curve.points)
    tree = cKDTree(pts)
    dist, _ = tree.query(dense)
    # uniform arc-length resampling: covered fraction is a sample mean
    fraction = float(np.mean(dist <= epsilon))
    return CoverageReport(
        epsilon=float(epsilon),
        min_distance=float(dist.min()),
        fraction_covered=fraction,
    )


def continued_fraction_convergents(x: Fraction, q_max: int) -> list[tuple[int, int]]:
    """Convergents (p, q) of x with q <= q_max, in lowest terms, q increasing."""
    convergents: list[tuple[int, int]] = []
    a0 = x.numerator // x.denominator  # floor
    p_prev, q_prev = 1, 0
    p_cur, q_cur = a0, 1
    rem = x - a0
    while q_cur <= q_max:
        if not convergents or (p_cur, q_cur) != convergents[-1]:
            convergents.append((p_cur, q_cur))
        if rem == 0:
            break
        x = 1 / rem
        a = x.numerator // x.denominator
        rem = x - a
        p_cur, p_prev = a * p_cur + p_prev, p_cur
        q_cur, q_prev = a * q_cur + q_prev, q_cur
    return convergents


def classify_ratio(p: SystemParams, tol: float, q_max: int) -> RationalityReport:
    """Continued-fraction rationality report for Delta/Omega."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if q_max < 2:
        raise ValueError("q_max must be >= 2")
    ratio = p.delta / p.omega
    exact = Fraction(ratio)
    convergents = continued_fraction_convergents(exact, q_max)
    best = exact.limit_denominator(q_max)
    best_q: int | None = None
    if abs(ratio - best.numerator / best.denominator) < tol:
        # smallest convergent denominator already inside the tolerance
        for pq, q in convergents:
            if q <= q_max and abs(ratio - pq / q) < tol:
                best_q = q
                break
        if best_q is None:
            best_q = best.denominator
    classification = (
        EFFECTIVELY_RATIONAL if best_q is not None else EFFECTIVELY_IRRATIONAL
    )
    return RationalityReport(
        ratio=ratio,
        tol=tol,
        q_max=q_max,
        convergents=convergents,
        best_q=best_q,
        classification=classification,
    )
