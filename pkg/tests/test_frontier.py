from fractions import Fraction

import numpy as np
import pytest

from cavityent import frontier, metrics
from cavityent.model import SystemParams


class TestFrontierCurve:
    def test_validation(self):
        with pytest.raises(ValueError):
            frontier.FrontierCurve("werner", np.zeros((1, 2)))
        with pytest.raises(ValueError):
            frontier.FrontierCurve("werner", np.array([[0.0, 1.0], [0.0, 0.5]]))

    def test_linear_interpolation(self):
        curve = frontier.FrontierCurve("werner", np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert curve.value_at(0.25) == pytest.approx(0.75)

    def test_bell_kind_interpolates_squared_value(self):
        pts = np.array([[0.0, 2.0], [1.0, 1.0]])
        curve = frontier.FrontierCurve(frontier.BELL_FRONTIER, pts)
        assert curve.value_at(0.5) == pytest.approx(np.sqrt((4.0 + 1.0) / 2.0))


class TestWerner:
    def test_matrix_properties(self):
        rho = frontier.werner_matrix(0.5)
        assert abs(rho.trace() - 1.0) < 1e-14
        assert np.linalg.eigvalsh(rho).min() >= 0.0

    def test_endpoints(self):
        curve = frontier.werner_curve(101)
        assert curve.points[0] == pytest.approx([0.0, 1.0])
        assert curve.points[-1] == pytest.approx([8.0 / 9.0, 0.0])

    def test_curve_matches_state_functionals(self):
        for p in [0.4, 0.7, 1.0]:
            rho = frontier.werner_matrix(p)
            m = metrics.linear_entropy(rho)
            c = metrics.wootters_concurrence(rho)
            curve = frontier.werner_curve(2001)
            assert curve.value_at(m) == pytest.approx(c, abs=1e-6)

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            frontier.werner_matrix(1.2)
        with pytest.raises(ValueError):
            frontier.werner_curve(1)


class TestMems:
    def test_matrix_functionals_match_closed_forms(self):
        for c in [0.0, 0.3, 2.0 / 3.0, 0.8, 1.0]:
            rho = frontier.mems_matrix(c)
            assert abs(rho.trace() - 1.0) < 1e-14
            assert metrics.wootters_concurrence(rho) == pytest.approx(c, abs=1e-12)
            assert metrics.linear_entropy(rho) == pytest.approx(
                float(frontier.mems_linear_entropy(c)), abs=1e-12
            )

    def test_branch_point_continuity(self):
        eps = 1e-9
        below = frontier.mems_linear_entropy(2.0 / 3.0 - eps)
        above = frontier.mems_linear_entropy(2.0 / 3.0 + eps)
        assert abs(float(below) - float(above)) < 1e-8
        assert float(frontier.mems_linear_entropy(2.0 / 3.0)) == pytest.approx(
            16.0 / 27.0
        )

    def test_inverse_round_trip(self):
        c = np.linspace(0.0, 1.0, 501)
        m = frontier.mems_linear_entropy(c)
        assert np.abs(frontier.mems_concurrence_at(m) - c).max() < 1e-12

    def test_inverse_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            frontier.mems_concurrence_at(0.95)

    def test_dominates_random_samples(self):
        rng = np.random.default_rng(17)
        states = frontier.random_two_qubit_states(20_000, rng)
        assert frontier.mems_excess(states) <= 1e-12

    def test_oracle_excess_small(self):
        assert frontier.mems_oracle_excess(20_000, seed=3, refine=8) <= 1e-3


class TestBellFrontier:
    def test_candidate_endpoints_and_branch(self):
        assert frontier.bell_envelope_candidate(0.0) == pytest.approx(
            frontier.TSIRELSON
        )
        assert frontier.bell_envelope_candidate(1.0) == pytest.approx(0.0, abs=1e-12)
        # both branches meet at M = 2/3 with |B| = 2
        assert frontier.bell_envelope_candidate(2.0 / 3.0) == pytest.approx(2.0)
        lo = frontier.bell_envelope_candidate(2.0 / 3.0 - 1e-10)
        hi = frontier.bell_envelope_candidate(2.0 / 3.0 + 1e-10)
        assert abs(float(lo) - float(hi)) < 1e-8

    def test_envelope_dominates_fresh_samples(self):
        curve = frontier.bell_frontier(n_points=129, samples=100_000, seed=0)
        rng = np.random.default_rng(99)
        states = frontier.random_two_qubit_states(50_000, rng)
        m = metrics.linear_entropy_many(states)
        b = metrics.bell_max_many(states)
        excess = b - curve.value_at(m)
        assert excess.max() <= 1e-6

    def test_envelope_monotone_and_bounded(self):
        curve = frontier.bell_frontier(n_points=129, samples=100_000, seed=1)
        vals = curve.points[:, 1]
        assert vals[0] == pytest.approx(frontier.TSIRELSON)
        assert np.all(np.diff(vals) <= 1e-12)
        assert vals.max() <= frontier.TSIRELSON + 1e-12

    def test_rejects_low_sample_count(self):
        with pytest.raises(ValueError):
            frontier.bell_frontier(samples=1000)


class TestCoverage:
    def curve(self):
        return frontier.FrontierCurve(
            "werner", np.column_stack([np.linspace(0, 1, 11), np.linspace(1, 0, 11)])
        )

    def test_full_coverage(self):
        pts = np.column_stack([np.linspace(0, 1, 2000), np.linspace(1, 0, 2000)])
        rep = frontier.coverage(pts, self.curve(), epsilon=0.01)
        assert rep.fraction_covered == 1.0
        assert rep.min_distance < 1e-3

    def test_partial_coverage(self):
        # points only over the first half of the diagonal
        pts = np.column_stack([np.linspace(0, 0.5, 1000), np.linspace(1, 0.5, 1000)])
        rep = frontier.coverage(pts, self.curve(), epsilon=0.01)
        assert 0.4 < rep.fraction_covered < 0.6

    def test_offset_trajectory(self):
        pts = np.column_stack([np.linspace(0, 1, 500), np.linspace(1, 0, 500) - 0.1])
        rep = frontier.coverage(pts, self.curve(), epsilon=0.05)
        assert rep.fraction_covered == 0.0
        assert rep.min_distance == pytest.approx(0.1 / np.sqrt(2), abs=1e-3)

    def test_rejects_bad_epsilon(self):
        with pytest.raises(ValueError):
            frontier.coverage(np.zeros((3, 2)), self.curve(), epsilon=0.0)


class TestRationality:
    def test_convergents_of_pi_like_fraction(self):
        x = Fraction(355, 113)
        conv = frontier.continued_fraction_convergents(x, 200)
        assert (3, 1) in conv
        assert (22, 7) in conv
        assert conv[-1] == (355, 113)

    def test_exact_rational_ratio(self):
        # Delta/Omega = 1/2 exactly when Delta^2 = 8 g^2 / 3... floating point
        # makes it approximate, but well within any reasonable tolerance
        p = SystemParams(g=1.0, delta=np.sqrt(8.0 / 3.0))
        rep = frontier.classify_ratio(p, tol=1e-9, q_max=1000)
        assert rep.classification == frontier.EFFECTIVELY_RATIONAL
        assert rep.best_q == 2

    def test_zero_detuning_rational(self):
        rep = frontier.classify_ratio(SystemParams(g=1.0), tol=1e-9, q_max=100)
        assert rep.classification == frontier.EFFECTIVELY_RATIONAL
        assert rep.best_q == 1

    def test_generic_detuning_irrational(self):
        p = SystemParams(g=1.0, delta=0.5)
        rep = frontier.classify_ratio(p, tol=1e-12, q_max=1000)
        assert rep.classification == frontier.EFFECTIVELY_IRRATIONAL
        assert rep.best_q is None

    def test_loose_tolerance_flips_classification(self):
        p = SystemParams(g=1.0, delta=0.5)
        rep = frontier.classify_ratio(p, tol=1e-2, q_max=1000)
        assert rep.classification == frontier.EFFECTIVELY_RATIONAL

    def test_rejects_bad_args(self):
        p = SystemParams(g=1.0)
        with pytest.raises(ValueError):
            frontier.classify_ratio(p, tol=0.0, q_max=100)
        with pytest.raises(ValueError):
            frontier.classify_ratio(p, tol=1e-6, q_max=1)
