import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specdim import (
    CsvFormatError,
    InfiniteMeasureError,
    InputError,
    MassSample,
    StepFunction,
    distribution,
    integrate,
    rearrange,
    round_trip,
)


def sf(bps, vals, end=None):
    return StepFunction(np.array(bps, dtype=float), np.array(vals, dtype=float), end)


class TestConstruction:
    def test_basic_evaluation_right_continuous(self):
        f = sf([1.0, 2.0], [5.0, 3.0, 1.0])
        assert f(0.5) == 5.0
        assert f(1.0) == 3.0  # value at a breakpoint is the right limit
        assert f(1.5) == 3.0
        assert f(2.0) == 1.0
        assert f(100.0) == 1.0

    def test_vector_evaluation(self):
        f = sf([1.0, 2.0], [5.0, 3.0, 0.0])
        out = f(np.array([0.5, 1.0, 3.0]))
        assert out.tolist() == [5.0, 3.0, 0.0]

    def test_domain_excludes_zero(self):
        f = sf([1.0], [2.0, 1.0])
        with pytest.raises(InputError):
            f(0.0)
        with pytest.raises(InputError):
            f(-1.0)

    def test_tie_merge(self):
        f = sf([1.0, 2.0, 3.0], [5.0, 3.0, 3.0, 1.0])
        assert f.breakpoints.tolist() == [1.0, 3.0]
        assert f.values.tolist() == [5.0, 3.0, 1.0]

    def test_support_end_folds_to_zero_plateau(self):
        f = sf([1.0], [4.0, 2.0], end=3.0)
        assert f.values.tolist() == [4.0, 2.0, 0.0]
        assert f.breakpoints.tolist() == [1.0, 3.0]
        assert f.support_end == 3.0
        assert f(2.9) == 2.0 and f(3.0) == 0.0

    def test_support_end_derived_from_trailing_zero(self):
        f = sf([1.0, 4.0], [2.0, 1.0, 0.0])
        assert f.support_end == 4.0

    def test_no_trailing_zero_means_unbounded_support(self):
        f = sf([1.0], [2.0, 1.0])
        assert f.support_end is None

    def test_increasing_values_rejected(self):
        with pytest.raises(InputError):
            sf([1.0], [1.0, 2.0])

    def test_unsorted_breakpoints_rejected(self):
        with pytest.raises(InputError):
            sf([2.0, 1.0], [3.0, 2.0, 1.0])

    def test_nonpositive_breakpoint_rejected(self):
        with pytest.raises(InputError):
            sf([0.0, 1.0], [3.0, 2.0, 1.0])

    def test_interior_inf_rejected(self):
        with pytest.raises(InputError):
            sf([1.0], [math.inf, math.inf])

    def test_leading_inf_allowed(self):
        f = sf([1.0], [math.inf, 2.0])
        assert f(0.5) == math.inf
        assert f(1.0) == 2.0

    def test_identically_inf_rejected(self):
        with pytest.raises(InfiniteMeasureError):
            sf([], [math.inf])

    def test_negative_value_rejected(self):
        with pytest.raises(InputError):
            sf([1.0], [2.0, -1.0])

    def test_from_samples_holds_last_value(self):
        f = StepFunction.from_samples([1.0, 2.0, 4.0], [9.0, 4.0, 1.0])
        assert f(0.5) == 9.0 and f(1.5) == 9.0
        assert f(2.0) == 4.0 and f(3.9) == 4.0
        assert f(4.0) == 1.0 and f(1e9) == 1.0

    def test_from_samples_zero_beyond(self):
        f = StepFunction.from_samples([1.0, 2.0], [3.0, 1.0], zero_beyond=True)
        assert f(1.5) == 3.0 and f(2.0) == 0.0
        assert f(0.5) == 3.0
        assert f.support_end == 2.0


class TestRearrange:
    def test_worked_example(self):
        # values 3, 1, 5 with masses 1, 2, 1
        s = MassSample.from_pairs([(3.0, 1.0), (1.0, 2.0), (5.0, 1.0)])
        f = rearrange(s)
        assert f.breakpoints.tolist() == [1.0, 2.0, 4.0]
        assert f.values.tolist() == [5.0, 3.0, 1.0, 0.0]
        assert f.support_end == 4.0

    def test_duplicate_values_merge(self):
        s = MassSample.from_pairs([(2.0, 1.0), (2.0, 3.0), (7.0, 0.5)])
        f = rearrange(s)
        assert f.breakpoints.tolist() == [0.5, 4.5]
        assert f.values.tolist() == [7.0, 2.0, 0.0]

    def test_zero_values_extend_nothing(self):
        s = MassSample.from_pairs([(0.0, 4.0), (1.0, 1.0)])
        f = rearrange(s)
        assert f.breakpoints.tolist() == [1.0]
        assert f.values.tolist() == [1.0, 0.0]

    def test_all_zero_sample(self):
        f = rearrange(MassSample.from_pairs([(0.0, 2.0)]))
        assert f.is_zero()

    def test_mass_is_preserved(self):
        s = MassSample.from_pairs([(4.0, 0.25), (9.0, 1.5), (4.0, 0.75)])
        f = rearrange(s)
        assert integrate(f, 0.0, math.inf) == pytest.approx(
            float(np.dot(s.sample_values, s.masses)), rel=1e-15
        )


class TestDistribution:
    def test_worked_example(self):
        f = rearrange(MassSample.from_pairs([(3.0, 1.0), (1.0, 2.0), (5.0, 1.0)]))
        lam = distribution(f)
        # measure above level s: 4 for s<1, 2 for s in [1,3), 1 for s in [3,5)
        assert lam.breakpoints.tolist() == [1.0, 3.0, 5.0]
        assert lam.values.tolist() == [4.0, 2.0, 1.0, 0.0]

    def test_matches_bruteforce_measure(self):
        f = sf([0.5, 2.0, 8.0], [7.0, 3.5, 1.25, 0.0])
        lam = distribution(f)
        grid = np.linspace(1e-3, 10.0, 997)
        fine = np.linspace(1e-6, 20.0, 400001)
        dt = fine[1] - fine[0]
        fv = f(fine)
        for s in grid:
            approx = float(np.sum(fv > s) * dt)
            assert abs(lam(s) - approx) < 5e-4

    def test_constant_function(self):
        f = StepFunction.constant(3.0)
        lam = distribution(f)
        assert lam(1.0) == math.inf
        assert lam(2.9999) == math.inf
        assert lam(3.0) == 0.0

    def test_unbounded_support(self):
        f = sf([2.0], [5.0, 1.0])  # stays at 1 forever
        lam = distribution(f)
        assert lam(0.5) == math.inf
        assert lam(1.0) == 2.0
        assert lam(4.9) == 2.0
        assert lam(5.0) == 0.0

    def test_infinite_leading_value(self):
        f = sf([1.0, 2.0], [math.inf, 3.0, 0.0])
        lam = distribution(f)
        assert lam(1.0) == 2.0
        assert lam(3.0) == 1.0
        assert lam(1e300) == 1.0  # the infinite spike never empties

    def test_zero_function(self):
        assert distribution(sf([], [0.0])).is_zero()

    def test_involution_exact(self):
        f = sf([0.1, 1.5, 2.0, 64.0], [9.5, 7.25, 3.0, 0.125, 0.0])
        g = round_trip(f)
        assert g.breakpoints.tolist() == f.breakpoints.tolist()
        assert g.values.tolist() == f.values.tolist()

    def test_involution_exact_awkward_floats(self):
        bps = [math.pi / 10, math.e, 7.000000000000001]
        vals = [1 / 3, 0.1 + 0.2, 1e-17, 0.0]
        f = sf(bps, vals)
        g = round_trip(f)
        assert np.array_equal(g.breakpoints, f.breakpoints)
        assert np.array_equal(g.values, f.values)


@st.composite
def step_functions(draw):
    n = draw(st.integers(min_value=0, max_value=6))
    bps = draw(
        st.lists(
            st.floats(min_value=1e-6, max_value=1e6, allow_nan=False),
            min_size=n,
            max_size=n,
            unique=True,
        )
    )
    bps = sorted(bps)
    vals = draw(
        st.lists(
            st.floats(min_value=0.0, max_value=1e9, allow_nan=False),
            min_size=n + 1,
            max_size=n + 1,
        )
    )
    vals = sorted(vals, reverse=True)
    if draw(st.booleans()):
        vals[0] = math.inf
    if n == 0 and math.isinf(vals[0]):
        vals[0] = 1.0
    return sf(bps, vals)


class TestProperties:
    @given(step_functions())
    @settings(max_examples=200, deadline=None)
    def test_round_trip_is_identity(self, f):
        g = round_trip(f)
        assert np.array_equal(g.breakpoints, f.breakpoints)
        assert np.array_equal(g.values, f.values)
        assert g.support_end == f.support_end

    @given(step_functions())
    @settings(max_examples=200, deadline=None)
    def test_distribution_nonincreasing_and_nonnegative(self, f):
        lam = distribution(f)
        assert np.all(np.diff(lam.values[np.isfinite(lam.values)]) <= 0)
        assert np.all(lam.values >= 0)

    @given(step_functions())
    @settings(max_examples=100, deadline=None)
    def test_layer_cake_mass_identity(self, f):
        # integral of f equals integral of its distribution function
        lhs = integrate(f, 0.0, math.inf)
        rhs = integrate(distribution(f), 0.0, math.inf)
        if math.isinf(lhs) or math.isinf(rhs):
            assert lhs == rhs
        else:
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=0.0, max_value=100.0, allow_nan=False),
                st.floats(min_value=1e-3, max_value=10.0, allow_nan=False),
            ),
            min_size=1,
            max_size=12,
        )
    )
    @settings(max_examples=200, deadline=None)
    def test_rearrange_sorted_and_mass_preserving(self, pairs):
        s = MassSample.from_pairs(pairs)
        f = rearrange(s)
        assert np.all(np.diff(f.values) < 0)
        expected = float(np.dot(s.sample_values, s.masses))
        assert integrate(f, 0.0, math.inf) == pytest.approx(expected, rel=1e-12, abs=1e-12)


class TestIntegrate:
    def test_finite_window(self):
        f = sf([1.0, 2.0], [5.0, 3.0, 0.0])
        assert integrate(f, 0.0, 2.0) == 8.0
        assert integrate(f, 0.5, 1.5) == 0.5 * 5.0 + 0.5 * 3.0
        assert integrate(f, 2.0, math.inf) == 0.0

    def test_infinite_tail(self):
        f = sf([1.0], [2.0, 1.0])
        assert integrate(f, 0.0, math.inf) == math.inf
        assert integrate(f, 0.0, 1.0) == 2.0

    def test_infinite_head(self):
        f = sf([1.0], [math.inf, 0.0])
        assert integrate(f, 0.0, 1.0) == math.inf
        assert integrate(f, 1.0, 5.0) == 0.0

    def test_bad_limits(self):
        f = StepFunction.constant(1.0)
        with pytest.raises(InputError):
            integrate(f, 2.0, 1.0)
        with pytest.raises(InputError):
            integrate(f, -1.0, 1.0)


class TestSerialization:
    def test_csv_round_trip(self):
        f = sf([0.1, 2.5], [4.0, 2.0, 0.5])
        g = StepFunction.from_csv_text(f.to_csv_text())
        assert np.array_equal(g.breakpoints, f.breakpoints)
        assert np.array_equal(g.values, f.values)

    def test_csv_layout(self):
        f = sf([1.0], [3.0, 0.0])
        text = f.to_csv_text()
        lines = text.strip().splitlines()
        assert lines[0] == "t,value"
        assert lines[1].startswith("0,")

    def test_csv_missing_anchor_row(self):
        with pytest.raises(CsvFormatError):
            StepFunction.from_csv_text("t,value\n1.0,3.0\n")

    def test_csv_bad_field_reports_line(self):
        try:
            StepFunction.from_csv_text("t,value\n0,5\n1.0,abc\n")
        except CsvFormatError as exc:
            assert exc.line == 3
            assert "line 3" in str(exc)
        else:
            pytest.fail("expected CsvFormatError")

    def test_csv_wrong_arity(self):
        with pytest.raises(CsvFormatError):
            StepFunction.from_csv_text("t,value\n0,5,9\n")

    def test_csv_empty(self):
        with pytest.raises(CsvFormatError):
            StepFunction.from_csv_text("\n\n")

    def test_json_round_trip(self):
        f = sf([1.0, 2.0], [math.inf, 1.5, 0.0])
        g = StepFunction.from_json(f.to_json())
        assert np.array_equal(g.breakpoints, f.breakpoints)
        assert np.array_equal(g.values, f.values)
        assert g.support_end == f.support_end

    def test_json_keys(self):
        payload = sf([1.0], [2.0, 0.0]).to_json_dict()
        assert set(payload) == {"breakpoints", "values", "support_end"}
