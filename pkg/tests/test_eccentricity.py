"""Doubling functionals: branch selection, S values, cluster verdicts."""

import math

import numpy as np
import pytest

from specdim import (
    Besicovitch,
    BranchContradictionError,
    DoublingProfile,
    End,
    GridSpec,
    IndeterminateError,
    InputError,
    StepFunction,
    classify_integrability,
    doubling_profile,
    eccentric_verdict,
    integrate,
    s_infinity,
    s_zero,
)

QUARTER = 2.0 ** 0.25


def stairs_toward_infinity(fn, lo=2.0, hi=2.0**200, per_octave=4):
    k = np.arange(round(math.log2(lo) * per_octave), round(math.log2(hi) * per_octave) + 1)
    ts = 2.0 ** (k / per_octave)
    return StepFunction.from_samples(ts, fn(ts), zero_beyond=True)


def stairs_toward_zero(fn, lo=2.0**-200, hi=1.0, per_octave=4, inf_head=False):
    k = np.arange(round(math.log2(lo) * per_octave), round(math.log2(hi) * per_octave) + 1)
    ts = 2.0 ** (k / per_octave)
    return StepFunction.from_samples(
        ts, fn(ts), zero_beyond=True, unbounded_at_zero=inf_head
    )


def harmonic_at_zero():
    return stairs_toward_zero(lambda t: 1.0 / t, inf_head=True)


def log_square_at_zero():
    # decreasing only below 1/e, so samples stop at 1/4
    return stairs_toward_zero(lambda t: 1.0 / t / np.log(np.e / t) ** 2, hi=0.25)


def harmonic_at_infinity():
    # starts at the reference point so the left staircase dominates 1/t
    # on every integration window
    return stairs_toward_infinity(lambda t: 1.0 / t, lo=1.0)


def log_square_at_infinity():
    return stairs_toward_infinity(lambda t: 1.0 / t / np.log(t) ** 2)


def final_decade(profile):
    edge = profile.grid[-1][0]
    if profile.end is End.INFINITY:
        return [w for w in profile.witnesses if w[0] >= edge / 10.0]
    return [w for w in profile.witnesses if w[0] <= edge * 10.0]


class TestClassifyIntegrability:
    def test_inverse_square_at_infinity_summable(self):
        f = stairs_toward_infinity(lambda t: t**-2.0)
        assert classify_integrability(f, End.INFINITY) is True

    def test_harmonic_at_infinity_not_summable(self):
        assert classify_integrability(harmonic_at_infinity(), End.INFINITY) is False

    def test_log_square_at_infinity_summable(self):
        f = stairs_toward_infinity(lambda t: 1.0 / t / np.log(t) ** 2, hi=2.0**60)
        assert classify_integrability(f, End.INFINITY) is True
        # left staircase dominates the decreasing integrand, and sits
        # below f(t * 2^-1/4), whose integral shifts the window down a
        # quarter octave; both bounds are closed-form
        exact = 1.0 / math.log(2.0) - 1.0 / (60.0 * math.log(2.0))
        upper = QUARTER * (1.0 / (0.75 * math.log(2.0)) - 1.0 / (60.0 * math.log(2.0)))
        got = integrate(f, 2.0, 2.0**60)
        assert exact <= got <= upper

    def test_harmonic_at_zero_not_summable(self):
        assert classify_integrability(harmonic_at_zero(), End.ZERO) is False

    def test_half_power_at_zero_summable(self):
        f = stairs_toward_zero(lambda t: t**-0.5)
        assert classify_integrability(f, End.ZERO) is True

    def test_log_square_at_zero_summable(self):
        assert classify_integrability(log_square_at_zero(), End.ZERO) is True

    def test_override_flag_wins(self):
        f = harmonic_at_infinity()
        assert classify_integrability(f, End.INFINITY, summable=True) is True

    def test_zero_function_summable(self):
        assert classify_integrability(StepFunction.constant(0.0), End.ZERO) is True

    def test_short_data_demands_flag(self):
        f = StepFunction.from_samples([2.0, 4.0, 8.0], [0.5, 0.25, 0.125], zero_beyond=True)
        with pytest.raises(IndeterminateError):
            classify_integrability(f, End.INFINITY)
        assert classify_integrability(f, End.INFINITY, summable=True) is True

    def test_constant_demands_flag(self):
        with pytest.raises(IndeterminateError):
            classify_integrability(StepFunction.constant(1.0), End.INFINITY)


class TestSZero:
    def test_constant_summable(self):
        one = StepFunction.from_samples([1.0], [1.0], zero_beyond=True)
        assert s_zero(one, 0.25, summable=True) == 0.25

    def test_harmonic_brackets_log_four(self):
        v = s_zero(harmonic_at_zero(), 0.25)
        assert math.log(4.0) <= v <= math.log(4.0) * QUARTER
        assert v == pytest.approx(8.0 * (QUARTER - 1.0), rel=1e-12)
        assert v == pytest.approx(1.5136569200217687, abs=1e-12)

    def test_half_power_near_one(self):
        f = stairs_toward_zero(lambda t: t**-0.5)
        v = s_zero(f, 0.25)
        assert 1.0 <= v <= QUARTER
        assert v == pytest.approx(1.0452538663326285, abs=1e-12)

    def test_dual_route_against_integrate(self):
        # prefix-sum evaluation against direct segment summation; the
        # two orders agree to rounding, not bit for bit
        f = harmonic_at_zero()
        assert s_zero(f, 0.25) == pytest.approx(integrate(f, 0.25, 1.0), rel=1e-12)
        g = stairs_toward_zero(lambda t: t**-0.5)
        assert s_zero(g, 0.25) == pytest.approx(integrate(g, 0.0, 0.25), rel=1e-12)

    def test_infinite_head_contradicts_summable_branch(self):
        f = stairs_toward_zero(lambda t: t**-0.5, inf_head=True)
        with pytest.raises(BranchContradictionError):
            s_zero(f, 0.25, summable=True)

    @pytest.mark.parametrize("t", [0.0, -0.5, 1.0, 2.0])
    def test_domain_validation(self, t):
        with pytest.raises(InputError):
            s_zero(harmonic_at_zero(), t)

    def test_reference_validation(self):
        with pytest.raises(InputError):
            s_zero(harmonic_at_zero(), 0.25, ref=math.inf)


class TestSInfinity:
    def test_harmonic_brackets_log_four(self):
        v = s_infinity(harmonic_at_infinity(), 4.0)
        assert math.log(4.0) <= v <= math.log(4.0) * QUARTER
        assert v == pytest.approx(1.5136569200217687, abs=1e-12)

    def test_inverse_square_near_half(self):
        f = stairs_toward_infinity(lambda t: t**-2.0, per_octave=16)
        v = s_infinity(f, 2.0)
        assert 0.5 <= v <= 0.5 * 2.0 ** (1.0 / 16.0)
        assert v == pytest.approx(0.52213689121370666, abs=1e-12)

    def test_zero_beyond_support(self):
        n = np.arange(1.0, 50.0)
        f = StepFunction.from_samples(n, n**-2.0, zero_beyond=True)
        assert s_infinity(f, 60.0, summable=True) == 0.0

    def test_at_reference_point(self):
        assert s_infinity(harmonic_at_infinity(), 1.0) == 0.0

    def test_dual_route_against_integrate(self):
        f = harmonic_at_infinity()
        assert s_infinity(f, 4.0) == pytest.approx(integrate(f, 1.0, 4.0), rel=1e-12)

    def test_held_tail_contradicts_summable_branch(self):
        n = np.arange(1.0, 5000.0)
        f = StepFunction.from_samples(n, 1.0 / n)  # positive value held forever
        with pytest.raises(BranchContradictionError):
            s_infinity(f, 4.0, summable=True)

    def test_domain_validation(self):
        with pytest.raises(InputError):
            s_infinity(harmonic_at_infinity(), 0.5)


class TestDoublingProfile:
    def test_harmonic_at_infinity_ratios_track_log(self):
        p = doubling_profile(harmonic_at_infinity(), End.INFINITY)
        assert p.integrable is False
        assert p.cluster_at_one is True
        t_last, s_last, r_last = p.grid[-1]
        assert r_last == pytest.approx(math.log(2.0 * t_last) / math.log(t_last), abs=5e-3)
        assert r_last == pytest.approx(1.033407518188725, abs=1e-12)
        assert s_last == pytest.approx(22.654435320080434, abs=1e-9)

    def test_inverse_square_at_infinity_constant_half(self):
        f = stairs_toward_infinity(lambda t: t**-2.0, per_octave=16)
        p = doubling_profile(f, End.INFINITY)
        assert p.integrable is True
        ratios = np.array([r for _, _, r in p.grid])
        assert np.max(np.abs(ratios - 0.5)) <= 1e-9
        assert p.witnesses == ()
        assert p.cluster_at_one is False

    def test_besicovitch_at_dimension_power(self):
        f = Besicovitch(2.0).to_step_function(2**28, zero_beyond=True)
        p = doubling_profile(f, End.INFINITY, summable=False)
        assert p.cluster_at_one is True
        assert len(final_decade(p)) >= 10

    def test_witnesses_outside_final_quarter_do_not_cluster(self):
        # held-value horizon stops the grid before the deep plateau, so
        # the only flat stretch sits early in the grid
        f = Besicovitch(2.0).to_step_function(2**28)
        p = doubling_profile(f, End.INFINITY, summable=False)
        assert len(p.witnesses) > 0
        assert p.cluster_at_one is False

    def test_zero_mass_points_skipped(self):
        f = stairs_toward_zero(lambda t: 1.0 / t, hi=0.1, inf_head=True)
        p = doubling_profile(f, End.ZERO, summable=False)
        assert len(p.skipped) > 0
        assert all(t >= 0.1 for t in p.skipped)
        assert all(s > 0.0 for _, s, _ in p.grid)

    def test_unbounded_rows_skipped_and_empty_grid(self):
        ts = 2.0 ** np.arange(2, 60, dtype=float)
        f = StepFunction.from_samples(ts, 1.0 / ts, zero_beyond=True, unbounded_at_zero=True)
        p = doubling_profile(f, End.INFINITY, summable=False)
        assert p.grid == ()
        assert p.cluster_at_one is False
        assert len(p.skipped) > 0

    def test_grid_origin_honored(self):
        p = doubling_profile(
            harmonic_at_infinity(), End.INFINITY, grid=GridSpec(t0=64.0, count=48)
        )
        assert p.grid[0][0] == 64.0

    def test_tolerance_validation(self):
        for tol in (0.0, 1.0, -0.1):
            with pytest.raises(InputError):
                doubling_profile(harmonic_at_infinity(), End.INFINITY, tol=tol)

    def test_constant_function_rejected(self):
        with pytest.raises(InputError):
            doubling_profile(StepFunction.constant(1.0), End.INFINITY, summable=False)

    def test_narrow_window_rejected(self):
        f = StepFunction.from_samples([0.2, 0.22, 0.24], [3.0, 2.0, 1.0], zero_beyond=True)
        with pytest.raises(InputError):
            doubling_profile(f, End.ZERO, summable=True)


class TestBranchCoherence:
    @pytest.mark.parametrize(
        "make,end,summable,ratios_at_least_one",
        [
            (harmonic_at_zero, End.ZERO, False, False),
            (log_square_at_zero, End.ZERO, True, True),
            (harmonic_at_infinity, End.INFINITY, False, True),
            (log_square_at_infinity, End.INFINITY, True, False),
        ],
    )
    def test_ratio_side_and_monotone_mass(self, make, end, summable, ratios_at_least_one):
        p = doubling_profile(make(), end)
        assert p.integrable is summable
        ratios = np.array([r for _, _, r in p.grid])
        if ratios_at_least_one:
            assert np.all(ratios >= 1.0 - 1e-9)
        else:
            assert np.all(ratios <= 1.0 + 1e-9)
        ss = np.array([s for _, s, _ in p.grid])
        # the grid runs toward the end, so mass accumulates along it
        # exactly when the branch integrates away from the end
        grows_along_grid = not summable
        diffs = np.diff(ss)
        scale = 1e-9 * ss.max()
        if grows_along_grid:
            assert np.all(diffs >= -scale)
        else:
            assert np.all(diffs <= scale)

    def test_wrong_branch_on_bounded_mass_trivializes(self):
        # forcing the non-integrable branch on t^-2 makes S bounded, so
        # ratios drift to 1 and the verdict carries no information;
        # this is exactly why the branch must be classified first
        f = stairs_toward_infinity(lambda t: t**-2.0, per_octave=16)
        p = doubling_profile(f, End.INFINITY, summable=False)
        assert p.cluster_at_one is True
        assert p.grid[-1][2] == pytest.approx(1.0, abs=1e-6)

    def test_wrong_branch_on_divergent_mass_raises(self):
        n = np.arange(1.0, 5000.0)
        f = StepFunction.from_samples(n, 1.0 / n)
        with pytest.raises(BranchContradictionError):
            doubling_profile(f, End.INFINITY, summable=True)
        g = stairs_toward_zero(lambda t: t**-0.5, inf_head=True)
        with pytest.raises(BranchContradictionError):
            doubling_profile(g, End.ZERO, summable=True)


class TestImplicationSuite:
    @pytest.mark.parametrize(
        "make,end",
        [
            (harmonic_at_zero, End.ZERO),
            (log_square_at_zero, End.ZERO),
            (harmonic_at_infinity, End.INFINITY),
            (log_square_at_infinity, End.INFINITY),
        ],
        ids=["nonsummable-zero", "summable-zero", "nonsummable-infinity", "summable-infinity"],
    )
    def test_order_one_families_are_eccentric(self, make, end):
        verdict, profile = eccentric_verdict(make(), end, tol=0.05)
        assert verdict is True
        assert len(final_decade(profile)) >= 10

    def test_frozen_tail_ratios(self):
        for make, end, expected in [
            (harmonic_at_zero, End.ZERO, 0.96660154067490422),
            (log_square_at_zero, End.ZERO, 1.0388033381160076),
            (harmonic_at_infinity, End.INFINITY, 1.033407518188725),
            (log_square_at_infinity, End.INFINITY, 0.961851586239858),
        ]:
            p = doubling_profile(make(), end)
            assert p.grid[-1][2] == pytest.approx(expected, abs=1e-12)


class TestEccentricVerdict:
    def test_bundles_profile(self):
        verdict, profile = eccentric_verdict(harmonic_at_infinity(), End.INFINITY)
        assert verdict is profile.cluster_at_one
        assert isinstance(profile, DoublingProfile)

    def test_order_two_at_zero_observed_false(self):
        f = stairs_toward_zero(lambda t: t**-2.0, inf_head=True)
        verdict, profile = eccentric_verdict(f, End.ZERO)
        assert profile.integrable is False
        assert verdict is False
        assert profile.grid[-1][2] == pytest.approx(0.5, abs=0.01)

    def test_besicovitch_at_infinity(self):
        f = Besicovitch(2.0).to_step_function(2**28, zero_beyond=True)
        verdict, _ = eccentric_verdict(f, End.INFINITY, summable=False)
        assert verdict is True


class TestScaleCovariance:
    @pytest.mark.parametrize("c", [2.0, 0.5, 8.0, 2.0**-20])
    def test_power_of_two_scaling_exact(self, c):
        f = harmonic_at_infinity()
        cf = StepFunction(f.breakpoints, c * f.values, f.support_end)
        p = doubling_profile(f, End.INFINITY)
        q = doubling_profile(cf, End.INFINITY)
        assert all(a[2] == b[2] for a, b in zip(p.grid, q.grid))
        assert all(b[1] == c * a[1] for a, b in zip(p.grid, q.grid))

    def test_general_scaling_to_rounding(self):
        f = log_square_at_zero()
        cf = StepFunction(f.breakpoints, 3.0 * f.values, f.support_end)
        p = doubling_profile(f, End.ZERO)
        q = doubling_profile(cf, End.ZERO)
        for a, b in zip(p.grid, q.grid):
            assert b[2] == pytest.approx(a[2], rel=1e-12)


class TestReferenceInterval:
    @pytest.mark.parametrize("make,end", [
        (harmonic_at_zero, End.ZERO),
        (log_square_at_zero, End.ZERO),
        (harmonic_at_infinity, End.INFINITY),
        (log_square_at_infinity, End.INFINITY),
    ])
    def test_verdict_unchanged(self, make, end):
        f = make()
        base, _ = eccentric_verdict(f, end)
        for c in (0.5, 2.0):
            moved, _ = eccentric_verdict(f, end, ref=c)
            assert moved == base

    def test_s_values_shift_with_reference(self):
        f = harmonic_at_infinity()
        assert s_infinity(f, 4.0, ref=2.0) == pytest.approx(integrate(f, 2.0, 4.0), rel=1e-12)


class TestSerialization:
    def test_json_shape(self):
        p = doubling_profile(harmonic_at_infinity(), End.INFINITY)
        d = p.to_json_dict()
        assert d["end"] == "infinity"
        assert d["integrable"] is False
        assert d["cluster_at_one"] is True
        assert d["tol"] == 0.05
        assert len(d["grid"]) == len(p.grid)
        assert all(len(row) == 3 for row in d["grid"])
        assert d["skipped"] == []

    def test_csv_round(self):
        p = doubling_profile(harmonic_at_infinity(), End.INFINITY)
        text = p.to_csv_text()
        lines = text.strip().split("\n")
        assert lines[0] == "t,S,ratio,witness"
        assert len(lines) == 1 + len(p.grid)
        flags = [int(line.split(",")[3]) for line in lines[1:]]
        assert sum(flags) == len(p.witnesses)

    def test_csv_header_only_for_empty_grid(self):
        ts = 2.0 ** np.arange(2, 60, dtype=float)
        f = StepFunction.from_samples(ts, 1.0 / ts, zero_beyond=True, unbounded_at_zero=True)
        p = doubling_profile(f, End.INFINITY, summable=False)
        assert p.to_csv_text() == "t,S,ratio,witness\n"
