"""Polynomial order estimation at the two ends of (0, inf).

The order of decay at infinity (or of growth at 0) is estimated from
secant slopes of the log-log staircase.  Corners of the staircase are
projected onto a geometric grid, and each reported ratio is the slope
from the corner sitting halfway back (in log abscissa) to the current
one.  Long secants cancel constant prefactors exactly and average out
bounded oscillations, which pointwise log-ratios do not: a pointwise
ratio carries an O(log C / log t) prefactor bias that dominates every
realistic horizon.  The estimate is the extremum (min for a liminf, max
for a limsup) of these slopes over the tail window, reported together
with the tail spread; no extrapolation beyond the data is attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .stepfn import End, StepFunction

__all__ = [
    "GridSpec",
    "OrderEstimate",
    "slope_estimate",
    "estimate_from_corners",
    "order_at_infinity",
    "order_at_zero",
    "order_via_distribution",
    "power_scale",
]

_CONVERGED_TOL = 0.02
_MIN_TAIL_RATIOS = 8


@dataclass(frozen=True)
class GridSpec:
    """Geometric evaluation grid t_j = t0 * factor**j.

    ``t0 = None`` anchors the grid so that it ends exactly at the data
    horizon (count points reaching back from the deepest corner).
    ``tail_fraction`` is the trailing fraction of ratios the extremum is
    taken over.
    """

    t0: float | None = None
    factor: float = 2.0
    count: int = 48
    tail_fraction: float = 0.5

    def __post_init__(self):
        if self.t0 is not None and not (self.t0 > 0 and math.isfinite(self.t0)):
            raise InputError("grid anchor t0 must be positive and finite")
        if not self.factor > 1.0:
            raise InputError("grid factor must exceed 1")
        if self.count < 2:
            raise InputError("grid needs at least 2 points")
        if not 0.0 < self.tail_fraction <= 1.0:
            raise InputError("tail_fraction must lie in (0, 1]")


@dataclass(frozen=True)
class OrderEstimate:
    """Exponent estimate with its evidence window.

    ``value`` is the tail extremum of the window ratios for the direct
    estimators; the distribution-side route stores the dual ratios and
    the reciprocal convention is applied to ``value`` there.
    ``converged`` demands at least 8 tail ratios whose final-quarter
    spread is below 0.02; ``tail_spread`` is that spread (the honest
    uncertainty of a finite-horizon liminf/limsup).
    """

    value: float
    window_ratios: tuple[tuple[float, float], ...]
    tail_fraction: float
    converged: bool
    tail_spread: float
    mode: str

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "window_ratios": [[t, r] for t, r in self.window_ratios],
            "tail_fraction": self.tail_fraction,
            "converged": self.converged,
            "tail_spread": self.tail_spread,
            "mode": self.mode,
        }


def _exact(value: float, mode: str, tail_fraction: float, converged: bool = True) -> OrderEstimate:
    return OrderEstimate(value, (), tail_fraction, converged, 0.0, mode)


def slope_estimate(log_ts, log_vs, mode: str, tail_fraction: float = 0.5) -> OrderEstimate:
    """Half-back secant estimate on pre-selected log-log corners.

    ``log_ts`` must be ordered toward the limit end (increasing toward
    infinity, decreasing toward 0); ``log_vs`` are the matching log
    values.  Ratio k is (w_k - w_a)/(L_a - L_k) with anchor a the corner
    nearest the log-midpoint between the first corner and corner k.
    """
    if mode not in ("liminf", "limsup"):
        raise InputError("mode must be 'liminf' or 'limsup'")
    L = np.asarray(log_ts, dtype=float)
    w = np.asarray(log_vs, dtype=float)
    if L.size != w.size:
        raise InputError("mismatched corner arrays")
    if L.size < 2:
        return OrderEstimate(0.0, (), tail_fraction, False, math.inf, mode)

    toward_zero = L[-1] < L[0]
    ratios = []
    abscissae = []
    for k in range(1, L.size):
        target = 0.5 * (L[0] + L[k])
        if toward_zero:
            a = int(np.searchsorted(-L[: k], -target))
        else:
            a = int(np.searchsorted(L[: k], target))
        if a > 0 and abs(L[a - 1] - target) <= abs(L[min(a, k - 1)] - target):
            a -= 1
        a = min(a, k - 1)
        span = L[a] - L[k]
        if span == 0.0:
            continue
        ratios.append((w[k] - w[a]) / span)
        abscissae.append(math.exp(L[k]))
    if not ratios:
        return OrderEstimate(0.0, (), tail_fraction, False, math.inf, mode)

    r = np.array(ratios)
    n_tail = max(1, math.ceil(tail_fraction * r.size))
    tail = r[-n_tail:]
    value = float(tail.min() if mode == "liminf" else tail.max())

    n_q = max(2, math.ceil(r.size / 4))
    quarter = r[-n_q:]
    spread = float(quarter.max() - quarter.min())
    converged = tail.size >= _MIN_TAIL_RATIOS and spread < _CONVERGED_TOL
    window = tuple(zip(abscissae, (float(x) for x in ratios)))
    return OrderEstimate(value, window, tail_fraction, converged, spread, mode)


def _corner_logs(f: StepFunction) -> tuple[np.ndarray, np.ndarray]:
    """(log t_i, log v_i) at every breakpoint whose value is positive
    and finite."""
    keep = np.isfinite(f.values[1:]) & (f.values[1:] > 0.0)
    return np.log(f.breakpoints[keep]), np.log(f.values[1:][keep])


def _select_corners(log_t, log_v, end: End, grid: GridSpec):
    """Project the corner set onto the geometric grid and deduplicate.

    Toward infinity each grid point picks the last corner at or below
    it; toward zero, the first corner at or above it.  Consecutive grid
    points inside one plateau collapse to a single corner, so chords
    never degenerate.
    """
    if log_t.size == 0:
        return log_t, log_v
    log_f = math.log(grid.factor)
    if end is End.INFINITY:
        horizon = log_t[-1]
        start = math.log(grid.t0) if grid.t0 is not None else horizon - (grid.count - 1) * log_f
        start = max(start, log_t[0])
        u = start + log_f * np.arange(grid.count)
        u = u[u <= horizon + 1e-12]
        if u.size == 0 or u[-1] < horizon:
            u = np.append(u, horizon)
        idx = np.searchsorted(log_t, u, side="right") - 1
    else:
        horizon = log_t[0]
        start = math.log(grid.t0) if grid.t0 is not None else horizon + (grid.count - 1) * log_f
        start = min(start, log_t[-1])
        u = start - log_f * np.arange(grid.count)
        u = u[u >= horizon - 1e-12]
        if u.size == 0 or u[-1] > horizon:
            u = np.append(u, horizon)
        idx = np.searchsorted(log_t, u, side="left")
        idx[idx >= log_t.size] = log_t.size - 1
    idx = idx[idx >= 0]
    idx = idx[np.concatenate([[True], np.diff(idx) != 0])] if idx.size else idx
    return log_t[idx], log_v[idx]


def estimate_from_corners(log_ts, log_vs, end: End, mode: str,
                          grid: GridSpec | None = None) -> OrderEstimate:
    """Grid-project a raw corner set (ascending log abscissae) and run
    the secant estimator on the selection."""
    grid = grid or GridSpec()
    log_t = np.asarray(log_ts, dtype=float)
    log_v = np.asarray(log_vs, dtype=float)
    if log_t.size != log_v.size:
        raise InputError("mismatched corner arrays")
    if log_t.size > 1 and np.any(np.diff(log_t) <= 0):
        raise InputError("corner abscissae must be strictly increasing")
    sel_t, sel_v = _select_corners(log_t, log_v, end, grid)
    return slope_estimate(sel_t, sel_v, mode, grid.tail_fraction)


def _estimate_on(f: StepFunction, end: End, mode: str, grid: GridSpec) -> OrderEstimate:
    log_t, log_v = _corner_logs(f)
    sel_t, sel_v = _select_corners(log_t, log_v, end, grid)
    return slope_estimate(sel_t, sel_v, mode, grid.tail_fraction)


def order_at_infinity(mu: StepFunction, grid: GridSpec | None = None) -> OrderEstimate:
    """Decay exponent of mu at infinity (liminf convention).

    A function that is eventually exactly 0 decays faster than any
    power (value +inf); one that never develops a corner is bounded
    below and has order 0.
    """
    grid = grid or GridSpec()
    if mu.support_end is not None:
        return _exact(math.inf, "liminf", grid.tail_fraction)
    if mu.breakpoints.size == 0:
        return _exact(0.0, "liminf", grid.tail_fraction)
    return _estimate_on(mu, End.INFINITY, "liminf", grid)


def order_at_zero(mu: StepFunction, grid: GridSpec | None = None) -> OrderEstimate:
    """Growth exponent of mu at 0 (liminf convention).

    Requires the unbounded-at-zero representation (leading value +inf)
    to carry decay data; a finite leading value means mu is bounded
    near 0, which has order 0 exactly.
    """
    grid = grid or GridSpec()
    if math.isfinite(mu.values[0]):
        return _exact(0.0, "liminf", grid.tail_fraction)
    log_t, log_v = _corner_logs(mu)
    if log_t.size < 2:
        raise InputError("function is infinite on an interval near 0 with no decay data")
    sel_t, sel_v = _select_corners(log_t, log_v, End.ZERO, grid)
    return slope_estimate(sel_t, sel_v, "liminf", grid.tail_fraction)


def _reciprocal(est: OrderEstimate) -> OrderEstimate:
    if est.value == 0.0:
        value = math.inf
    elif math.isinf(est.value):
        value = 0.0
    else:
        value = 1.0 / est.value
    return OrderEstimate(value, est.window_ratios, est.tail_fraction,
                         est.converged, est.tail_spread, est.mode)


def order_via_distribution(lam: StepFunction, end: End, grid: GridSpec | None = None) -> OrderEstimate:
    """Order of the underlying function read off its distribution
    function: the reciprocal of the limsup log-log slope of lam at the
    opposite end (small levels probe infinity, large levels probe 0).

    ``value`` holds the order itself; ``window_ratios`` hold the
    distribution-side slopes feeding the reciprocal.
    """
    grid = grid or GridSpec()
    if lam.is_zero():
        return _exact(math.inf, "limsup", grid.tail_fraction)
    if end is End.INFINITY:
        # behavior of lam(s) as s -> 0
        if math.isfinite(lam.values[0]):
            # finite total measure above every level: bounded support
            return _exact(math.inf, "limsup", grid.tail_fraction)
        log_t, log_v = _corner_logs(lam)
        if log_t.size < 2:
            # lam = +inf at every sampled level: unbounded-support floor
            return _exact(0.0, "limsup", grid.tail_fraction)
        sel_t, sel_v = _select_corners(log_t, log_v, End.ZERO, grid)
        return _reciprocal(slope_estimate(sel_t, sel_v, "limsup", grid.tail_fraction))
    # end is ZERO: behavior of lam(s) as s -> infinity
    if lam.support_end is not None:
        # lam vanishes beyond a level: the function is bounded near 0,
        # which grows slower than any power
        return _exact(0.0, "limsup", grid.tail_fraction)
    if lam.breakpoints.size == 0:
        # lam constant: the function sits at +inf on an interval
        return _exact(math.inf, "limsup", grid.tail_fraction)
    return _reciprocal(_estimate_on(lam, End.INFINITY, "limsup", grid))


def power_scale(mu: StepFunction, alpha: float) -> StepFunction:
    """Pointwise power mu**alpha on the same breakpoints."""
    alpha = float(alpha)
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise InputError("power must be positive and finite")
    scaled = np.power(mu.values, alpha)
    if np.any((mu.values > 0.0) & np.isfinite(mu.values) & (scaled == 0.0)):
        raise InputError("power scaling underflowed positive values to 0")
    return StepFunction(mu.breakpoints.copy(), scaled)
