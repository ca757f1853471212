"""Dimension machinery: box estimates, Hausdorff brackets, trace
trajectories, regularity verdicts, and partial-sum doubling.

Expected values frozen from closed forms: box dimension 1/alpha for
pure powers, bracket containment of the plateau construction's
parameter, trajectory limits lam^{1/(1-lam)}/(lam-1), doubling ratios
2^{1-d/d_B}.
"""

import json
import math

import numpy as np
import pytest

from specdim import (
    Besicovitch,
    BranchContradictionError,
    External,
    InputError,
    PowerLaw,
    PowerLog,
    TorusLaplacian,
    box_dimension,
    dimension_report,
    dixmier_trajectory,
    hausdorff_dimension,
    partial_sum_doubling,
    regularity_tests,
)
from specdim.models import Model


class _FlatCorners(Model):
    """Corners on a horizontal line: decay order exactly zero."""

    label = "flat"

    def corner_logs(self, log_n_max):
        ts = np.linspace(1.0, log_n_max, 40)
        return ts, np.zeros(40)


class _Inverted(Model):
    """Rigged verdicts: bounded sums at small d, runaway at large d.

    No decreasing sequence behaves this way, so the classifier must
    refuse rather than bracket.
    """

    label = "inverted"

    def sigma_checkpoints(self, log_n_max):
        return np.geomspace(20.0, 1e6, 48)

    def log_sigma(self, d, log_ns):
        us = np.asarray(log_ns, dtype=float)
        if d < 1.0:
            return np.zeros(us.size)
        return 2.0 * np.log(us)


class _ThreePoint(Model):
    """Too few checkpoints for any growth verdict."""

    label = "threepoint"

    def sigma_checkpoints(self, log_n_max):
        return np.array([10.0, 100.0, 1000.0])

    def log_sigma(self, d, log_ns):
        return np.zeros(np.asarray(log_ns, dtype=float).size)


class TestBoxDimension:
    def test_pure_powers_exact(self):
        for alpha in (0.5, 1.0, 2.0, 3.0):
            d, est = box_dimension(PowerLaw(alpha), 1e6)
            assert d == pytest.approx(1.0 / alpha, abs=1e-9)
            assert est.converged

    def test_plateau_model(self):
        d, est = box_dimension(Besicovitch(2.0), 1e6)
        assert d == pytest.approx(1.0, abs=0.05)

    def test_log_corrected(self):
        # the log factor inflates the apparent order; it fades like
        # 1/log n, so the window endpoint is what gets frozen
        d, _ = box_dimension(PowerLog(1.0, 1.0), 1e6)
        assert d == pytest.approx(0.9090, abs=2e-3)
        d, _ = box_dimension(PowerLog(1.0, 1.0), 2.0**40)
        assert d == pytest.approx(0.9524, abs=2e-3)

    def test_torus_half_dimension(self):
        # mu_n ~ n^{-2/d} on the d-torus, so the sequence dimension is d/2
        d, _ = box_dimension(TorusLaplacian(2, 180), 1e9)
        assert d == pytest.approx(1.0, abs=0.05)

    def test_zero_order_maps_to_infinite(self):
        d, est = box_dimension(_FlatCorners(), 1e6)
        assert est.value == 0.0
        assert math.isinf(d)

    def test_n_max_validation(self):
        with pytest.raises(InputError):
            box_dimension(PowerLaw(1.0), 1.0)

    def test_data_capped_at_stream_end(self):
        ns = np.arange(1.0, 2000.0)
        ext = External(ns, ns**-0.5)
        d, _ = box_dimension(ext, 1e18)
        assert d == pytest.approx(2.0, abs=1e-9)


class TestHausdorffBracket:
    def test_pure_power_containment(self):
        for alpha, d_h in ((0.5, 2.0), (2.0, 0.5)):
            br = hausdorff_dimension(PowerLaw(alpha), 1e6)
            assert br.d_lo <= d_h <= br.d_hi
            assert br.width <= 0.01
            assert br.warning is None

    def test_plateau_containment(self):
        for lam in (1.5, 2.0, 3.0):
            br = hausdorff_dimension(Besicovitch(lam), 1e6)
            assert br.d_lo <= lam <= br.d_hi
            assert br.width <= 0.01

    def test_log_critical_case(self):
        # sum n^{-d} log(n)^{-2d} converges at d = 1; the divergent side
        # is invisible this close to critical, so the bracket midpoint
        # is the frozen quantity rather than containment
        br = hausdorff_dimension(PowerLog(1.0, 2.0), 1e6)
        assert br.midpoint == pytest.approx(1.0, abs=0.01)
        assert br.width <= 0.01

    def test_splits_from_box_dimension(self):
        # the plateau construction has box dimension 1 at every lam but
        # Hausdorff dimension lam: the two notions genuinely differ
        d_b, _ = box_dimension(Besicovitch(3.0), 1e6)
        br = hausdorff_dimension(Besicovitch(3.0), 1e6)
        assert abs(d_b - br.midpoint) > 1.5

    def test_probe_verdicts_monotone(self):
        br = hausdorff_dimension(PowerLaw(1.0), 1e6)
        rank = {"infinite": 0, "finite": 1, "indeterminate": 1, "zero": 2}
        ranks = [rank[v] for _, v in br.probes]
        assert ranks == sorted(ranks)

    def test_degenerate_zero_side(self):
        # values above 1 keep every partial sum growing within the data
        # window, so no probed d ever classifies as zero
        ns = np.arange(1.0, 400.0)
        br = hausdorff_dimension(External(ns, 2.0 - ns / 1000.0), 1e6)
        assert br.d_hi == 20.0
        assert "no zero verdict" in br.warning

    def test_inverted_verdicts_refused(self):
        with pytest.raises(BranchContradictionError):
            hausdorff_dimension(_Inverted(), 1e6)

    def test_indeterminate_everywhere(self):
        br = hausdorff_dimension(_ThreePoint(), 1e6)
        assert (br.d_lo, br.d_hi) == (0.05, 20.0)
        assert "indeterminate at every probe" in br.warning

    def test_span_validation(self):
        with pytest.raises(InputError):
            hausdorff_dimension(PowerLaw(1.0), 1e6, span=(2.0, 1.0))

    def test_json_shape(self):
        br = hausdorff_dimension(PowerLaw(1.0), 1e6)
        d = br.to_json_dict()
        assert set(d) == {"d_lo", "d_hi", "midpoint", "width", "probes", "warning"}
        json.dumps(d)


class TestDixmierTrajectory:
    # closed-form plateau limit lam^{1/(1-lam)}/(lam-1); the k = 20
    # values are frozen from the first run and sit within 10% of it
    FROZEN = {1.5: 0.892310, 2.0: 0.500017, 3.0: 0.288676}

    def test_plateau_limits(self):
        for lam, frozen in self.FROZEN.items():
            tr = dixmier_trajectory(Besicovitch(lam), lam, "auto", 1e6)
            closed = lam ** (1.0 / (1.0 - lam)) / (lam - 1.0)
            assert tr.ratios[18] == pytest.approx(frozen, abs=5e-4)
            assert abs(tr.ratios[18] - closed) <= 0.1 * closed
            assert tr.subsequence == "auto"

    def test_deep_labels_overflow_to_inf(self):
        tr = dixmier_trajectory(Besicovitch(2.0), 2.0, "auto", 1e6)
        assert math.isinf(tr.ns[-1])
        assert math.isfinite(tr.log_ns[-1])

    def test_harmonic_drift(self):
        # sigma_n(1)/log n = 1 + gamma/log n + o(1/log n) for mu_n = 1/n
        tr = dixmier_trajectory(PowerLaw(1.0), 1.0, np.exp(np.linspace(10, 35, 12)))
        assert tr.ratios[-1] == pytest.approx(1.0 + 0.5772 / 35.0, abs=1e-3)
        assert tr.subsequence == "explicit"

    def test_convergent_sum_decays(self):
        tr = dixmier_trajectory(PowerLaw(2.0), 1.0, "auto", 1e6)
        assert tr.ratios[-1] < tr.ratios[0]
        assert tr.ratios[-1] == pytest.approx(
            math.pi**2 / 6.0 / tr.log_ns[-1], rel=1e-2
        )

    def test_validation(self):
        with pytest.raises(InputError):
            dixmier_trajectory(PowerLaw(1.0), 0.0)
        with pytest.raises(InputError):
            dixmier_trajectory(PowerLaw(1.0), 1.0, np.array([10.0, 5.0]))
        with pytest.raises(InputError):
            dixmier_trajectory(PowerLaw(1.0), 1.0, np.array([1.0, 2.0]))
        with pytest.raises(InputError):
            dixmier_trajectory(PowerLaw(1.0), 1.0, "dyadic")

    def test_csv_round_trip(self):
        tr = dixmier_trajectory(PowerLaw(1.0), 1.0, "auto", 1e4)
        text = tr.to_csv_text()
        lines = text.strip().splitlines()
        assert lines[0] == "n,log_n,ratio"
        assert len(lines) == len(tr.ratios) + 1
        n, u, r = lines[1].split(",")
        assert float(u) == pytest.approx(tr.log_ns[0])


class TestRegularityTests:
    def test_half_power(self):
        rep = regularity_tests(PowerLaw(0.5), 1e6)
        assert rep.regularity_a is True
        assert rep.regularity_b is True
        assert rep.ratio_2n == pytest.approx(2.0**-0.5, abs=1e-3)

    def test_ratio_matches_box_dimension(self):
        # for a doubling-regular sequence the halving ratio is 2^{-1/d_B}
        for alpha in (0.5, 1.0, 2.0):
            rep = regularity_tests(PowerLaw(alpha), 1e6)
            d_b, _ = box_dimension(PowerLaw(alpha), 1e6)
            assert rep.ratio_2n == pytest.approx(2.0 ** (-1.0 / d_b), abs=1e-3)

    def test_plateau_model_fails_a(self):
        rep = regularity_tests(Besicovitch(2.0), 1e6)
        assert rep.regularity_a is False
        assert rep.spread_a > 0.05

    def test_log_factor_needs_depth(self):
        # the 1/log n correction dies off too slowly for a 10^6 window
        shallow = regularity_tests(PowerLog(1.0, 1.0), 1e6)
        deep = regularity_tests(PowerLog(1.0, 1.0), 2.0**60)
        assert shallow.regularity_a is False
        assert deep.regularity_a is True

    def test_short_window_abstains(self):
        rep = regularity_tests(PowerLaw(0.5), 100.0)
        assert rep.regularity_a is None
        assert rep.regularity_b is None
        assert math.isfinite(rep.ratio_2n)

    def test_empty_window_rejected(self):
        with pytest.raises(InputError):
            regularity_tests(PowerLaw(0.5), 1.5)


class TestPartialSumDoubling:
    def test_divergent_branch_exact(self):
        est = partial_sum_doubling(PowerLaw(0.5), 1.0, math.exp(500.0))
        assert est.branch == "partial"
        assert est.value == pytest.approx(2.0**0.5, abs=1e-6)
        assert est.converged

    def test_critical_exponent_near_one(self):
        # s_n ~ log n at d = d_B, so the ratio is 1 + log(2)/log n
        est = partial_sum_doubling(PowerLaw(0.5), 2.0, math.exp(500.0))
        assert est.value == pytest.approx(1.0, abs=0.01)
        assert est.value == pytest.approx(1.0 + math.log(2.0) / 500.0, abs=1e-4)

    def test_summable_switches_to_tails(self):
        est = partial_sum_doubling(PowerLaw(0.5), 4.0, 1e6)
        assert est.branch == "tail"
        assert est.value == pytest.approx(0.5, abs=1e-5)

    def test_partial_override_is_trivial_when_summable(self):
        est = partial_sum_doubling(PowerLaw(0.5), 4.0, 1e6, branch="partial")
        assert est.branch == "partial"
        assert est.value == pytest.approx(1.0, abs=1e-3)

    def test_tail_override_rejected_when_divergent(self):
        with pytest.raises(InputError):
            partial_sum_doubling(PowerLaw(0.5), 1.0, 1e6, branch="tail")

    def test_finite_data_forces_partial(self):
        ns = np.arange(1.0, 5000.0)
        est = partial_sum_doubling(External(ns, ns**-2.0), 10.0, 1e6)
        assert est.branch == "partial"

    def test_irregular_window_warns(self):
        est = partial_sum_doubling(Besicovitch(2.0), 1.0, 1e3)
        assert est.warning is not None

    def test_validation(self):
        with pytest.raises(InputError):
            partial_sum_doubling(PowerLaw(0.5), -1.0, 1e6)
        with pytest.raises(InputError):
            partial_sum_doubling(PowerLaw(0.5), 1.0, 1e6, branch="mixed")
        with pytest.raises(InputError):
            partial_sum_doubling(PowerLaw(0.5), 1.0, 3.0)


class TestScalingBridge:
    """Squaring a stream halves every dimension readout."""

    def test_box_dimension_halves(self):
        ns = np.arange(1.0, 400.0)
        d_base, _ = box_dimension(External(ns, ns**-0.7), 400.0)
        d_sq, _ = box_dimension(External(ns, ns**-1.4), 400.0)
        assert 2.0 * d_sq == pytest.approx(d_base, abs=1e-9)

    def test_halving_ratio_squares(self):
        ns = np.arange(1.0, 400.0)
        r1 = regularity_tests(External(ns, ns**-0.7), 399.0).ratio_2n
        r2 = regularity_tests(External(ns, ns**-1.4), 399.0).ratio_2n
        assert r1**2 == pytest.approx(r2, abs=1e-9)


class TestDimensionReport:
    def test_pure_power_panel(self):
        rep = dimension_report(PowerLaw(0.5), 1e6)
        assert rep.d_B == pytest.approx(2.0, abs=1e-9)
        assert rep.hausdorff.d_lo <= 2.0 <= rep.hausdorff.d_hi
        assert rep.regularity.regularity_a is True
        assert rep.warnings == ()

    def test_plateau_full_panel(self):
        # the one model where every panel entry is known independently:
        # box 1, Hausdorff lam, trajectory near the closed form, and
        # the a-regularity test must fail
        rep = dimension_report(Besicovitch(2.0), 1e6)
        assert rep.d_B == pytest.approx(1.0, abs=0.05)
        assert rep.hausdorff.d_lo <= 2.0 <= rep.hausdorff.d_hi
        assert rep.regularity.regularity_a is False
        assert rep.dixmier.subsequence == "auto"

    def test_json_serializable(self):
        rep = dimension_report(PowerLaw(1.0), 1e4)
        blob = json.dumps(rep.to_json_dict(), sort_keys=True)
        parsed = json.loads(blob)
        assert set(parsed) == {
            "model", "n_max", "d_B", "box_estimate", "hausdorff",
            "regularity", "dixmier", "warnings",
        }
        assert parsed["model"] == {"kind": "powerlaw", "alpha": 1.0}
