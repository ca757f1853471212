"""Doubling functionals S(t) near an end and the cluster-at-one test.

The running integral is branch-dependent: toward the end when the
profile is integrable there, away from it otherwise.  Which branch
applies is decided from the data by a Cauchy test on dyadic partial
integrals, unless the caller forces it.  A profile then tabulates
S(2t)/S(t) on a geometric grid and asks whether ratios keep returning
to 1 in the tail, which is the computable certificate that singular
averaging applies to the sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BranchContradictionError,
    IndeterminateError,
    InputError,
)
from .orders import GridSpec
from .stepfn import End, StepFunction

__all__ = [
    "DoublingProfile",
    "classify_integrability",
    "s_zero",
    "s_infinity",
    "doubling_profile",
    "eccentric_verdict",
]

_CAUCHY_TOL = 1e-3
_MIN_OCTAVES = 8
_PROFILE_FACTOR = 2.0 ** (1.0 / 16.0)
_PROFILE_COUNT = 448
_SUMMABLE_GROWTH_CAP = 1e6
_MONO_SLACK = 1e-9


class _Stairs:
    """Prefix-integral view of a step function.

    Evaluates many exact integrals in one pass; the +inf head cell and
    a positive trailing value are tracked as flags so extended-real
    answers come out right instead of as inf - inf.
    """

    def __init__(self, f: StepFunction):
        bps = f.breakpoints
        vals = f.values
        self.edges = np.concatenate([[0.0], bps])
        body = np.where(np.isfinite(vals), vals, 0.0)
        widths = np.diff(self.edges)
        cells = body[:-1] * widths
        self.cum = np.concatenate([[0.0], np.cumsum(cells)])
        # suffix sums accumulated from the deep end: subtracting two
        # near-equal prefixes would wipe out a small tail integral
        self.sufcum = np.concatenate([np.cumsum(cells[::-1])[::-1], [0.0]])
        self.vals = body
        if vals[0] == math.inf:
            self.inf_head_end = float(bps[0]) if bps.size else math.inf
        else:
            self.inf_head_end = 0.0
        self.tail_value = float(vals[-1])
        self.last_edge = float(self.edges[-1])

    def _finite_prefix(self, ts: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.edges, ts, side="right") - 1
        return self.cum[idx] + self.vals[idx] * (ts - self.edges[idx])

    def _finite_suffix(self, ts: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.edges, ts, side="right") - 1
        nxt = np.minimum(idx + 1, self.edges.size - 1)
        return self.sufcum[nxt] + self.vals[idx] * np.maximum(
            self.edges[nxt] - ts, 0.0
        )

    def between(self, a, b) -> np.ndarray:
        """Integral over (a_i, b_i), extended-real, elementwise."""
        a = np.atleast_1d(np.asarray(a, dtype=float))
        b = np.atleast_1d(np.asarray(b, dtype=float))
        a, b = np.broadcast_arrays(a, b)
        finite_b = np.isfinite(b)
        bm = np.maximum(np.where(finite_b, b, a), a)
        pa = self._finite_prefix(a)
        sb = self._finite_suffix(bm)
        # difference of two huge prefixes would cancel a small window;
        # anchor each window at whichever end carries less outside mass
        out = np.where(
            pa <= sb,
            self._finite_prefix(bm) - pa,
            self._finite_suffix(a) - sb,
        )
        if not np.all(finite_b):
            if self.tail_value > 0.0:
                out = np.where(finite_b, out, math.inf)
            else:
                out = np.where(finite_b, out, self._finite_suffix(a))
        if self.inf_head_end > 0.0:
            cap = np.where(finite_b, b, math.inf)
            out = np.where(a < np.minimum(self.inf_head_end, cap), math.inf, out)
        return out


def _dyadic_partials(stairs: _Stairs, f: StepFunction, end: End) -> np.ndarray:
    """Partial integrals toward the end at dyadic scales, innermost last."""
    bps = f.breakpoints
    if bps.size == 0:
        raise IndeterminateError(
            "no breakpoints to classify; pass the summable flag explicitly"
        )
    if end is End.INFINITY:
        octaves = int(math.floor(math.log2(bps[-1]))) if bps[-1] > 1 else 0
        if octaves < _MIN_OCTAVES:
            raise IndeterminateError(
                "fewer than 8 dyadic scales of data beyond 1; "
                "pass the summable flag explicitly"
            )
        ts = 2.0 ** np.arange(1, octaves + 1, dtype=float)
        return stairs.between(np.ones(ts.size), ts)
    floor = bps[0]
    octaves = int(math.floor(-math.log2(floor))) if floor < 1 else 0
    if octaves < _MIN_OCTAVES:
        raise IndeterminateError(
            "fewer than 8 dyadic scales of data below 1; "
            "pass the summable flag explicitly"
        )
    ts = 2.0 ** -np.arange(1, octaves + 1, dtype=float)
    return stairs.between(ts, np.ones(ts.size))


def classify_integrability(f: StepFunction, end: End, summable: bool | None = None) -> bool:
    """Decide whether f is integrable near the end.

    The data verdict: partial integrals at dyadic scales must have
    settled, with relative growth below 1e-3 over the last two scales.
    A caller who knows the answer passes ``summable`` to skip the
    heuristic (mandatory when the data covers fewer than 8 scales).
    """
    if summable is not None:
        return bool(summable)
    if f.is_zero():
        return True
    partials = _dyadic_partials(_Stairs(f), f, end)
    total = float(partials[-1])
    if math.isinf(total):
        return False
    if total == 0.0:
        return True
    return bool((total - partials[-3]) / total < _CAUCHY_TOL)


def _check_reference(ref: float) -> float:
    ref = float(ref)
    if not (ref > 0.0 and math.isfinite(ref)):
        raise InputError("reference point must be positive and finite")
    return ref


def s_zero(f: StepFunction, t: float, summable: bool | None = None, ref: float = 1.0) -> float:
    """Mass functional near 0: integral of f over (0, t) in the
    integrable branch, over (t, ref) otherwise."""
    ref = _check_reference(ref)
    t = float(t)
    if not (0.0 < t < ref):
        raise InputError("need 0 < t < reference")
    branch = classify_integrability(f, End.ZERO, summable)
    stairs = _Stairs(f)
    if branch:
        v = float(stairs.between(0.0, t)[0])
        if math.isinf(v):
            raise BranchContradictionError(
                "divergent integral near 0 in the integrable branch"
            )
        return v
    return float(stairs.between(t, ref)[0])


def s_infinity(f: StepFunction, t: float, summable: bool | None = None, ref: float = 1.0) -> float:
    """Mass functional near infinity: integral of f over (t, inf) in
    the integrable branch, over (ref, t) otherwise."""
    ref = _check_reference(ref)
    t = float(t)
    if not t >= ref:
        raise InputError("need t >= reference")
    branch = classify_integrability(f, End.INFINITY, summable)
    stairs = _Stairs(f)
    if branch:
        v = float(stairs.between(t, math.inf)[0])
        if math.isinf(v):
            raise BranchContradictionError(
                "divergent integral near infinity in the integrable branch"
            )
        return v
    if t == ref:
        return 0.0
    return float(stairs.between(ref, t)[0])


@dataclass(frozen=True)
class DoublingProfile:
    """Grid of (t, S(t), S(2t)/S(t)) with the cluster-at-one verdict.

    ``witnesses`` are the grid rows with |ratio - 1| <= tol;
    ``cluster_at_one`` is true iff a witness lands in the final quarter
    of the grid, the tail evidence that 1 stays in the closure of the
    ratio set.  Rows whose S vanished or overflowed are in ``skipped``.
    """

    end: End
    integrable: bool
    grid: tuple[tuple[float, float, float], ...]
    witnesses: tuple[tuple[float, float, float], ...]
    cluster_at_one: bool
    tol: float
    skipped: tuple[float, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "end": self.end.name.lower(),
            "integrable": self.integrable,
            "grid": [[t, s, r] for t, s, r in self.grid],
            "witnesses": [[t, s, r] for t, s, r in self.witnesses],
            "cluster_at_one": self.cluster_at_one,
            "tol": self.tol,
            "skipped": list(self.skipped),
        }

    def to_csv_text(self) -> str:
        lines = ["t,S,ratio,witness"]
        witness_set = set(self.witnesses)
        for row in self.grid:
            t, s, r = row
            lines.append(f"{t!r},{s!r},{r!r},{1 if row in witness_set else 0}")
        return "\n".join(lines) + "\n"


def _profile_points(f: StepFunction, end: End, grid: GridSpec, ref: float) -> np.ndarray:
    bps = f.breakpoints
    if bps.size == 0:
        raise InputError("no breakpoints: nothing to profile")
    factor = grid.factor
    if end is End.INFINITY:
        t0 = grid.t0 if grid.t0 is not None else 4.0 * ref
        top = bps[-1] / 2.0
        ts = t0 * factor ** np.arange(grid.count, dtype=float)
        ts = ts[ts <= top]
    else:
        t0 = grid.t0 if grid.t0 is not None else ref / 4.0
        ts = t0 * factor ** -np.arange(grid.count, dtype=float)
        ts = ts[(ts >= bps[0]) & (2.0 * ts < ref)]
    if ts.size < 8:
        raise InputError("fewer than 8 grid points inside the data window")
    return ts


def doubling_profile(
    f: StepFunction,
    end: End,
    grid: GridSpec | None = None,
    tol: float = 0.05,
    summable: bool | None = None,
    ref: float = 1.0,
) -> DoublingProfile:
    """Tabulate S(2t)/S(t) on a geometric grid running toward the end.

    The default grid is 16 points per octave, deep enough that a decay
    of order exactly 1 shows its ratios inside any practical tolerance.
    """
    ref = _check_reference(ref)
    if not (0.0 < tol < 1.0):
        raise InputError("tolerance must be in (0, 1)")
    branch = classify_integrability(f, end, summable)
    grid = grid if grid is not None else GridSpec(factor=_PROFILE_FACTOR, count=_PROFILE_COUNT)
    ts = _profile_points(f, end, grid, ref)
    stairs = _Stairs(f)
    if end is End.INFINITY:
        if branch:
            s1 = stairs.between(ts, math.inf)
            s2 = stairs.between(2.0 * ts, math.inf)
        else:
            s1 = stairs.between(ref, ts)
            s2 = stairs.between(ref, 2.0 * ts)
    else:
        if branch:
            s1 = stairs.between(0.0, ts)
            s2 = stairs.between(0.0, 2.0 * ts)
        else:
            s1 = stairs.between(ts, ref)
            s2 = stairs.between(2.0 * ts, ref)
    if branch:
        finite = s1[np.isfinite(s1)]
        if finite.size and finite.max() > _SUMMABLE_GROWTH_CAP * finite[0]:
            raise BranchContradictionError(
                "running mass grew a million-fold in the integrable branch"
            )
        if np.any(np.isinf(s1)) or np.any(np.isinf(s2)):
            raise BranchContradictionError(
                "divergent integral in the integrable branch"
            )

    usable = (s1 > 0.0) & np.isfinite(s1) & np.isfinite(s2)
    skipped = tuple(float(t) for t in ts[~usable])
    ts_kept = ts[usable]
    s_kept = s1[usable]
    ratios = s2[usable] / s_kept

    # S is monotone in t per branch; ratios land on one side of 1.
    # The grid ascends at infinity and descends at 0, so the expected
    # sign of the S differences flips with both the end and the branch.
    increasing = (end is End.ZERO) == branch
    if s_kept.size:
        scale = _MONO_SLACK * float(np.max(s_kept))
        sign = 1.0 if (end is End.INFINITY) == increasing else -1.0
        if np.any(sign * np.diff(s_kept) < -scale):
            raise BranchContradictionError(
                "running mass is not monotone for the classified branch"
            )
        bad = ratios < 1.0 - _MONO_SLACK if increasing else ratios > 1.0 + _MONO_SLACK
        if np.any(bad):
            raise BranchContradictionError(
                "doubling ratios on the wrong side of 1 for the branch"
            )

    rows = tuple(
        (float(t), float(s), float(r))
        for t, s, r in zip(ts_kept, s_kept, ratios)
    )
    hits = np.abs(ratios - 1.0) <= tol
    witnesses = tuple(row for row, h in zip(rows, hits) if h)
    quarter = (3 * len(rows)) // 4
    cluster = bool(np.any(hits[quarter:])) if rows else False
    return DoublingProfile(
        end=end,
        integrable=branch,
        grid=rows,
        witnesses=witnesses,
        cluster_at_one=cluster,
        tol=float(tol),
        skipped=skipped,
    )


def eccentric_verdict(
    f: StepFunction,
    end: End,
    grid: GridSpec | None = None,
    tol: float = 0.05,
    summable: bool | None = None,
    ref: float = 1.0,
) -> tuple[bool, DoublingProfile]:
    """Certificate that 1 clusters in the doubling-ratio set at the
    end, bundled with the profile that witnessed it."""
    profile = doubling_profile(f, end, grid, tol, summable, ref)
    return profile.cluster_at_one, profile
