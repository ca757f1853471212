"""Heat-semigroup dimension estimators on discrete data.

The heat kernel of a lattice is played by the lazy simple random walk:
its return probability is computed by exact convolution powers and
decays like t**(-d/2), so the step count carries the same asymptotic
dimension as continuous time while staying free of special functions.
On top of the walk sit the estimators: the log-slope dimension of a
decaying trace, its dual reading as the supremal feasible power bound,
the entry/diagonal norm identity for positive kernels, both sides of
the inverse-spectrum counting identity, the discrete Laplace transform
of a counting function, and the near-zero spectral exponents.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    BranchContradictionError,
    CsvFormatError,
    InputError,
    OracleMismatchError,
    PositivityViolationError,
    ResourceLimitError,
)
from .orders import GridSpec, OrderEstimate, estimate_from_corners
from .stepfn import End, StepFunction

__all__ = [
    "HeatTrace",
    "SpectralCounting",
    "FiniteKernel",
    "DualityCount",
    "NsNumbers",
    "lattice_return_probability",
    "asdim",
    "asdim_sup_form",
    "one_inf_norm",
    "counting_duality",
    "generic_probe_times",
    "laplace_stieltjes",
    "ns_numbers",
]

_STEP_LIMIT = 1 << 15
_MASS_TOL = 1e-10
_MIN_OCTAVES = 8.0
# identity slack: rounding in a 64-term dot product stays far below
# 1e-12 of the scale, a real Schwarz-bound violation lands far above
_IDENTITY_SLACK = 1e-9
_SUP_FORM_WIDTH = 1e-9
_KERNEL_REL_TOL = 1e-10
# transform horizon 1/(margin * smallest level): beyond it the missing
# spectrum below the resolution floor would bend the tail slopes
_RESOLUTION_MARGIN = 32.0


def _as_1d_float(xs, name: str) -> np.ndarray:
    arr = np.asarray(xs, dtype=float)
    if arr.ndim != 1:
        raise InputError(f"{name} must be one-dimensional")
    return arr


# -- domain types ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HeatTrace:
    """Sampled per-site heat trace: times t >= 1 against theta(t) - b.

    ``values`` carry the trace with the kernel contribution ``betti``
    already removed, so they must be positive; a positivity-preserving
    contraction can only lose mass on the kernel complement, so they
    must also be non-increasing.
    """

    times: np.ndarray
    values: np.ndarray
    betti: float = 0.0

    def __post_init__(self):
        ts = _as_1d_float(self.times, "times")
        vs = _as_1d_float(self.values, "values")
        if ts.size == 0:
            raise InputError("a trace needs at least one sample")
        if vs.size != ts.size:
            raise InputError("times and values must have equal length")
        if not np.all(np.isfinite(ts)) or ts[0] < 1.0:
            raise InputError("times must be finite and at least 1")
        if ts.size > 1 and not np.all(np.diff(ts) > 0.0):
            raise InputError("times must be strictly increasing")
        if not np.all(np.isfinite(vs)) or np.any(vs <= 0.0):
            raise InputError("trace values must be positive and finite")
        if np.any(np.diff(vs) > 0.0):
            raise InputError("trace values must be non-increasing")
        b = float(self.betti)
        if not (math.isfinite(b) and b >= 0.0):
            raise InputError("betti must be nonnegative and finite")
        object.__setattr__(self, "times", ts)
        object.__setattr__(self, "values", vs)
        object.__setattr__(self, "betti", b)

    @property
    def octave_span(self) -> float:
        return math.log2(float(self.times[-1]) / float(self.times[0]))

    def tail_from(self, t0: float) -> "HeatTrace":
        """The samples at or beyond ``t0`` as a new trace."""
        cut = float(t0)
        if not math.isfinite(cut):
            raise InputError("threshold must be finite")
        keep = self.times >= cut
        if not keep.any():
            raise InputError("no samples at or beyond the threshold")
        return HeatTrace(self.times[keep].copy(), self.values[keep].copy(),
                         self.betti)

    # -- serialization ----------------------------------------------------

    def to_csv_text(self) -> str:
        rows = ["t,theta_minus_b"]
        for t, v in zip(self.times, self.values):
            rows.append(f"{float(t)!r},{float(v)!r}")
        return "\n".join(rows) + "\n"

    @classmethod
    def from_csv_text(cls, text: str, betti: float = 0.0) -> "HeatTrace":
        ts, vs = _parse_two_columns(text, "t,theta_minus_b")
        try:
            return cls(ts, vs, betti)
        except InputError as exc:
            raise CsvFormatError(str(exc)) from exc

    def to_json_dict(self) -> dict:
        return {
            "times": [float(t) for t in self.times],
            "values": [float(v) for v in self.values],
            "betti": self.betti,
        }


@dataclass(frozen=True, eq=False)
class SpectralCounting:
    """Right-continuous counting function with finitely many jumps.

    ``levels`` are the jump positions (nonnegative, strictly
    increasing), ``jumps`` the positive masses added there; N(t) is
    the total mass at levels <= t and vanishes left of the first
    level.  Mass sitting at level 0 is the kernel count ``betti``.
    """

    levels: np.ndarray
    jumps: np.ndarray

    def __post_init__(self):
        lv = _as_1d_float(self.levels, "levels")
        jp = _as_1d_float(self.jumps, "jumps")
        if lv.size == 0:
            raise InputError("a counting function needs at least one jump")
        if jp.size != lv.size:
            raise InputError("levels and jumps must have equal length")
        if not np.all(np.isfinite(lv)) or lv[0] < 0.0:
            raise InputError("levels must be finite and nonnegative")
        if lv.size > 1 and not np.all(np.diff(lv) > 0.0):
            raise InputError("levels must be strictly increasing")
        if not np.all(np.isfinite(jp)) or np.any(jp <= 0.0):
            raise InputError("jump masses must be positive and finite")
        object.__setattr__(self, "levels", lv)
        object.__setattr__(self, "jumps", jp)

    @property
    def betti(self) -> float:
        return float(self.jumps[0]) if self.levels[0] == 0.0 else 0.0

    @property
    def total(self) -> float:
        return float(self.jumps.sum())

    def value_at(self, t):
        """N(t); right-continuous, 0 left of the first level."""
        t_arr = np.asarray(t, dtype=float)
        cum = np.concatenate([[0.0], np.cumsum(self.jumps)])
        idx = np.searchsorted(self.levels, t_arr, side="right")
        out = cum[idx]
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def minus_betti(self, t):
        return self.value_at(t) - self.betti

    @classmethod
    def from_eigenvalues(cls, eigs, zero_tol: float = 0.0) -> "SpectralCounting":
        """Counting function of a finite nonnegative spectrum; values
        within ``zero_tol`` of 0 are folded into the kernel mass."""
        arr = _as_1d_float(eigs, "eigs")
        if arr.size == 0:
            raise InputError("need at least one eigenvalue")
        if not np.all(np.isfinite(arr)):
            raise InputError("eigenvalues must be finite")
        tol = float(zero_tol)
        if not (math.isfinite(tol) and tol >= 0.0):
            raise InputError("zero_tol must be nonnegative and finite")
        if np.any(arr < -tol):
            raise InputError("eigenvalues of a nonnegative operator must be nonnegative")
        folded = np.where(np.abs(arr) <= tol, 0.0, arr)
        levels, counts = np.unique(folded, return_counts=True)
        return cls(levels, counts.astype(float))

    @classmethod
    def from_samples(cls, ts, values) -> "SpectralCounting":
        """Jump representation of sampled cumulative counts; flat
        stretches carry no jump."""
        lv = _as_1d_float(ts, "ts")
        vs = _as_1d_float(values, "values")
        if lv.size != vs.size:
            raise InputError("ts and values must have equal length")
        if lv.size == 0:
            raise InputError("need at least one sample")
        if not np.all(np.isfinite(vs)) or vs[0] < 0.0:
            raise InputError("counts must be finite and start nonnegative")
        if np.any(np.diff(vs) < 0.0):
            raise InputError("counts must be non-decreasing")
        jumps = np.concatenate([vs[:1], np.diff(vs)])
        keep = jumps > 0.0
        if not keep.any():
            raise InputError("counting function is identically zero")
        return cls(lv[keep], jumps[keep])

    def reciprocal_distribution(self, zero_beyond: bool = True) -> StepFunction:
        """Distribution function of the reciprocal spectrum: the mass
        above 0 re-read at abscissa 1/level, so the counting data of
        an inverse operator.  Constant 0 when only kernel mass is
        present.

        ``zero_beyond=False`` extends the last observed count past the
        largest reciprocal instead of dropping to 0 there, for order
        estimators that must not read the finite-sample horizon as
        genuine decay."""
        pos = self.levels > 0.0
        if not pos.any():
            return StepFunction.constant(0.0)
        cum = np.cumsum(self.jumps[pos])
        bps = 1.0 / self.levels[pos][::-1]
        if zero_beyond:
            return StepFunction(bps, np.concatenate([cum[::-1], [0.0]]))
        if bps.size == 1:
            return StepFunction.constant(float(cum[0]))
        return StepFunction(bps[:-1], cum[::-1])

    # -- serialization ----------------------------------------------------

    def to_csv_text(self) -> str:
        rows = ["t,N"]
        cum = np.cumsum(self.jumps)
        for t, n in zip(self.levels, cum):
            rows.append(f"{float(t)!r},{float(n)!r}")
        return "\n".join(rows) + "\n"

    @classmethod
    def from_csv_text(cls, text: str) -> "SpectralCounting":
        ts, ns = _parse_two_columns(text, "t,N")
        try:
            return cls.from_samples(ts, ns)
        except InputError as exc:
            raise CsvFormatError(str(exc)) from exc

    def to_json_dict(self) -> dict:
        return {
            "levels": [float(t) for t in self.levels],
            "jumps": [float(j) for j in self.jumps],
            "betti": self.betti,
            "total": self.total,
        }


@dataclass(frozen=True, eq=False)
class FiniteKernel:
    """Dense kernel over a finite site set, scalar or square-block
    valued, with a positive weight per site (counting measure by
    default).

    ``positive`` is the caller's claim that the quadratic form is
    nonnegative; consumers verify consequences of the claim and refuse
    when the data contradicts it.
    """

    matrix: np.ndarray
    weights: np.ndarray | None = None
    positive: bool = False

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        if mat.ndim not in (2, 4):
            raise InputError("kernel must be a 2-d matrix or a 4-d block matrix")
        if mat.shape[0] != mat.shape[1]:
            raise InputError("kernel must be square over sites")
        if mat.ndim == 4 and mat.shape[2] != mat.shape[3]:
            raise InputError("kernel blocks must be square")
        if mat.shape[0] == 0:
            raise InputError("kernel needs at least one site")
        if not np.all(np.isfinite(mat)):
            raise InputError("kernel entries must be finite")
        w = self.weights
        w = np.ones(mat.shape[0]) if w is None else _as_1d_float(w, "weights")
        if w.size != mat.shape[0]:
            raise InputError("need exactly one weight per site")
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            raise InputError("weights must be positive and finite")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "positive", bool(self.positive))

    @property
    def sites(self) -> int:
        return int(self.matrix.shape[0])

    def entry_norms(self) -> np.ndarray:
        """Operator norm of every block (absolute value when scalar)."""
        if self.matrix.ndim == 2:
            return np.abs(self.matrix)
        return np.linalg.norm(self.matrix, ord=2, axis=(2, 3))

    def diagonal_norms(self) -> np.ndarray:
        if self.matrix.ndim == 2:
            return np.abs(np.diagonal(self.matrix))
        idx = np.arange(self.sites)
        return np.linalg.norm(self.matrix[idx, idx], ord=2, axis=(1, 2))

    def diagonal_form_floor(self) -> float:
        """Worst diagonal quadratic form over unit block vectors (the
        smallest eigenvalue of any symmetrized diagonal block)."""
        if self.matrix.ndim == 2:
            return float(np.diagonal(self.matrix).min())
        idx = np.arange(self.sites)
        diag = self.matrix[idx, idx]
        sym = 0.5 * (diag + np.transpose(diag, (0, 2, 1)))
        return float(np.linalg.eigvalsh(sym)[:, 0].min())

    def quadratic_form(self, f) -> float:
        """<f, Kf> in the weighted inner product, one entry (or one
        block vector) per site."""
        if self.matrix.ndim == 2:
            vec = _as_1d_float(f, "f")
            if vec.size != self.sites:
                raise InputError("need one entry per site")
            kf = self.matrix @ (self.weights * vec)
            return float(np.dot(self.weights * vec, kf))
        arr = np.asarray(f, dtype=float)
        if arr.shape != (self.sites, self.matrix.shape[2]):
            raise InputError("need one block vector per site")
        kf = np.einsum("xyij,y,yj->xi", self.matrix, self.weights, arr)
        return float(np.einsum("x,xi,xi->", self.weights, arr, kf))

    def counting(self, zero_tol: float | None = None) -> SpectralCounting:
        """Counting function of the kernel's spectrum (counting
        measure, self-adjoint data only).  Eigenvalues within
        ``zero_tol`` of 0 (default 1e-10 of the spectral radius) are
        kernel mass."""
        if not np.all(self.weights == 1.0):
            raise InputError("spectral counting is implemented for the counting measure")
        if self.matrix.ndim == 2:
            flat = self.matrix
        else:
            n, _, m, _ = self.matrix.shape
            flat = self.matrix.transpose(0, 2, 1, 3).reshape(n * m, n * m)
        scale = float(np.abs(flat).max())
        if not np.allclose(flat, flat.T, rtol=0.0, atol=1e-12 * max(scale, 1.0)):
            raise InputError("kernel is not self-adjoint")
        eigs = np.linalg.eigvalsh(0.5 * (flat + flat.T))
        tol = _KERNEL_REL_TOL * float(np.abs(eigs).max()) if zero_tol is None else float(zero_tol)
        return SpectralCounting.from_eigenvalues(eigs, zero_tol=tol)

    # -- serialization ----------------------------------------------------

    @classmethod
    def from_csv_text(cls, text: str, positive: bool = False) -> "FiniteKernel":
        rows = []
        width = None
        for lineno, ln in enumerate(text.splitlines(), start=1):
            ln = ln.strip()
            if not ln:
                continue
            parts = [p.strip() for p in ln.split(",")]
            if width is None:
                width = len(parts)
            elif len(parts) != width:
                raise CsvFormatError("ragged matrix row", lineno)
            try:
                rows.append([float(p) for p in parts])
            except ValueError:
                raise CsvFormatError(f"non-numeric field in {ln!r}", lineno) from None
        if not rows:
            raise CsvFormatError("no data rows")
        try:
            return cls(np.array(rows), positive=positive)
        except InputError as exc:
            raise CsvFormatError(str(exc)) from exc

    def to_csv_text(self) -> str:
        if self.matrix.ndim != 2:
            raise InputError("block kernels have no flat delimited form")
        return "\n".join(",".join(repr(float(v)) for v in row)
                         for row in self.matrix) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "weights": [float(w) for w in self.weights],
            "positive": self.positive,
        }


def _parse_two_columns(text: str, header: str) -> tuple[np.ndarray, np.ndarray]:
    rows = []
    seen_header = False
    for lineno, ln in enumerate(text.splitlines(), start=1):
        ln = ln.strip()
        if not ln:
            continue
        parts = [p.strip() for p in ln.split(",")]
        if len(parts) != 2:
            raise CsvFormatError("expected two comma-separated fields", lineno)
        if not rows and not seen_header and not _is_number(parts[0]):
            if ",".join(p.lower() for p in parts) != header.lower():
                raise CsvFormatError(f"unrecognized header (expected {header!r})", lineno)
            seen_header = True
            continue
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise CsvFormatError(f"non-numeric field in {ln!r}", lineno) from None
    if not rows:
        raise CsvFormatError("no data rows")
    return (np.array([r[0] for r in rows]), np.array([r[1] for r in rows]))


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


# -- lattice walk ---------------------------------------------------------


def lattice_return_probability(d: int, t_max: int, laziness: float) -> HeatTrace:
    """Return probability of the lazy simple walk on the d-dimensional
    integer lattice at dyadic step counts.

    The 1-d step distribution (hold with probability ``laziness``,
    otherwise one step either way with equal odds) is powered by dense
    exact convolution, and the d-dimensional diagonal is the d-th
    power of the 1-d value because the lattice walk factorizes over
    coordinates.  Only dyadic checkpoints and the horizon are kept.
    Checkpoints start at step 2: from an even step the diagonal can
    only fall, while the one-step diagonal still sits below the
    two-step value when holding is rare.
    """
    try:
        dim = operator.index(d)
    except TypeError:
        raise InputError("dimension must be an integer") from None
    if dim not in (1, 2, 3, 4):
        raise InputError("dimension must be one of 1, 2, 3, 4")
    try:
        steps = operator.index(t_max)
    except TypeError:
        raise InputError("t_max must be an integer step count") from None
    if steps > _STEP_LIMIT:
        raise ResourceLimitError(
            f"{steps} steps exceed the {_STEP_LIMIT}-step convolution buffer; "
            "shorten the horizon instead of truncating")
    if steps < 2:
        raise InputError("need at least two steps")
    hold = float(laziness)
    if not (math.isfinite(hold) and 0.0 < hold < 1.0):
        raise InputError("laziness must lie strictly inside (0, 1)")
    jump = 0.5 * (1.0 - hold)

    center = steps
    cur = np.zeros(2 * steps + 1)
    cur[center] = 1.0
    nxt = np.zeros_like(cur)
    marks = {1 << k for k in range(1, steps.bit_length())}
    marks.add(steps)
    diagonal: dict[int, float] = {}
    for t in range(1, steps + 1):
        lo, hi = center - t + 1, center + t - 1
        seg = cur[lo:hi + 1]
        nxt[lo - 1] = 0.0
        nxt[hi + 1] = 0.0
        nxt[lo:hi + 1] = hold * seg
        nxt[lo - 1:hi] += jump * seg
        nxt[lo + 1:hi + 2] += jump * seg
        cur, nxt = nxt, cur
        mass = float(cur[lo - 1:hi + 2].sum())
        if abs(mass - 1.0) > _MASS_TOL:
            # tripwire: the update is a convex combination and cannot
            # drift this far over 2**15 steps unless the state is bad
            raise BranchContradictionError(
                f"probability mass drifted to {mass!r} at step {t}")
        if t in marks:
            diagonal[t] = float(cur[center])
    times = np.array(sorted(diagonal), dtype=float)
    one_d = np.array([diagonal[int(t)] for t in times])
    return HeatTrace(times, np.power(one_d, dim), betti=0.0)


# -- trace dimension estimators --------------------------------------------


def _restricted_logs(trace: HeatTrace, t_start: float) -> tuple[np.ndarray, np.ndarray]:
    """Log coordinates of the samples at or beyond ``t_start``; the
    span precondition is checked on the full trace, so a deep start
    still rides a certified horizon."""
    if trace.octave_span + 1e-12 < _MIN_OCTAVES:
        raise InputError(
            f"trace spans {trace.octave_span:.2f} octaves; need at least "
            f"{_MIN_OCTAVES:.0f} for a tail estimate")
    cut = float(t_start)
    if not (math.isfinite(cut) and cut >= 1.0):
        raise InputError("t_start must be finite and at least 1")
    keep = trace.times >= cut
    if keep.sum() < 2:
        raise InputError("fewer than two samples at or beyond t_start")
    return np.log(trace.times[keep]), np.log(trace.values[keep])


def _doubled(est: OrderEstimate) -> OrderEstimate:
    return OrderEstimate(
        2.0 * est.value,
        tuple((t, 2.0 * r) for t, r in est.window_ratios),
        est.tail_fraction,
        est.converged,
        2.0 * est.tail_spread,
        est.mode,
    )


def asdim(trace: HeatTrace, grid: GridSpec | None = None,
          t_start: float = 1.0) -> OrderEstimate:
    """Asymptotic dimension of a decaying trace: twice the liminf of
    the tail log-slopes, so value(t) ~ t**(-n/2) reads as n.

    Rides the shared windowing (half-back secants on a geometric
    grid, extremum over the trailing half); the returned estimate is
    already doubled, window ratios included.  ``t_start`` drops the
    samples before it without touching the machinery, which is how
    the threshold-invariance property is probed.
    """
    log_t, log_v = _restricted_logs(trace, t_start)
    est = estimate_from_corners(log_t, log_v, End.INFINITY, "liminf", grid)
    return _doubled(est)


def asdim_sup_form(trace: HeatTrace, grid: GridSpec | None = None,
                   t_start: float = 1.0) -> float:
    """Largest n for which value(t) * t**(n/2) stays dominated by a
    constant anchored inside the sampled range.

    A power bound with a free constant holds from t >= 1 exactly when
    it holds from any later threshold (the constant absorbs the head),
    so the sampled criterion asks where the tight anchor sits: n is
    feasible while the running maximum of value * t**(n/2) is attained
    strictly before the horizon, and infeasible once the horizon itself
    is the tight point, because then the bound is still being lost at
    the edge of the data.  Tilting n upward only moves the maximum
    outward, so the feasible set is a left half-line and the boundary
    is found by bisection.
    """
    log_t, log_v = _restricted_logs(trace, t_start)

    def feasible(n: float) -> bool:
        c = log_v + 0.5 * n * log_t
        return c[-1] <= float(np.max(c[:-1])) + _IDENTITY_SLACK

    # n = 0 is always feasible: the values are non-increasing
    lo, hi = 0.0, 1.0
    while feasible(hi):
        lo = hi
        hi *= 2.0
    while hi - lo > _SUP_FORM_WIDTH:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- kernel norm identity ---------------------------------------------------


def one_inf_norm(kernel: FiniteKernel) -> float:
    """The 1->inf operator norm of a finite kernel: the largest block
    norm over all entries.

    When the kernel is flagged positive the largest entry must sit on
    the diagonal (a Schwarz bound), so the diagonal maximum is checked
    against the global one and returned; a negative diagonal quadratic
    form, or an off-diagonal entry beyond the diagonal supremum,
    contradicts the flag and raises instead.
    """
    if not np.all(kernel.weights == 1.0):
        raise InputError("the norm identity is implemented for the counting measure")
    entry_peak = float(kernel.entry_norms().max())
    if not kernel.positive:
        return entry_peak
    floor = kernel.diagonal_form_floor()
    scale = max(entry_peak, 1e-300)
    if floor < -_IDENTITY_SLACK * scale:
        raise PositivityViolationError(
            f"kernel flagged positive has a diagonal quadratic form reaching {floor!r}")
    diag_peak = float(kernel.diagonal_norms().max())
    if entry_peak > diag_peak * (1.0 + _IDENTITY_SLACK) + 1e-300:
        raise PositivityViolationError(
            f"kernel flagged positive has an off-diagonal block of norm "
            f"{entry_peak!r} beyond the diagonal supremum {diag_peak!r}")
    return diag_peak


# -- counting duality -------------------------------------------------------


class DualityCount(NamedTuple):
    lhs: float
    rhs: float
    boundary: bool


def counting_duality(eigs, t) -> DualityCount:
    """Both sides of the inverse-spectrum counting identity at level t.

    ``lhs`` counts reciprocals of positive eigenvalues exceeding t;
    ``rhs`` reads the counting function at 1/t and removes the kernel
    mass.  Away from jump abscissae the two must agree and a mismatch
    raises; at a jump the pair is returned with ``boundary`` set and
    nothing is asserted, since the sides may differ by the jump mass
    depending on endpoint convention.
    """
    arr = _as_1d_float(eigs, "eigs")
    if arr.size == 0:
        raise InputError("need at least one eigenvalue")
    if not np.all(np.isfinite(arr)):
        raise InputError("eigenvalues must be finite")
    if np.any(arr < 0.0):
        raise InputError("eigenvalues of a nonnegative operator must be nonnegative")
    level = float(t)
    if not (math.isfinite(level) and level > 0.0):
        raise InputError("the probe level must be positive and finite")
    pos = arr[arr > 0.0]
    recip = 1.0 / pos
    lhs = float(np.count_nonzero(recip > level))
    counting = SpectralCounting.from_eigenvalues(arr)
    rhs = counting.value_at(1.0 / level) - counting.betti
    boundary = bool(np.any(recip == level) or np.any(pos == 1.0 / level))
    if not boundary and lhs != rhs:
        raise OracleMismatchError(
            f"counting duality failed at generic level {level!r}: "
            f"{lhs} direct vs {rhs} via the counting function")
    return DualityCount(lhs, rhs, boundary)


def generic_probe_times(eigs, per_gap: int = 1) -> np.ndarray:
    """Probe levels avoiding every jump of the inverse-spectrum count:
    evenly placed interior points of each gap between consecutive
    distinct reciprocal eigenvalues, plus one probe below and one
    above the whole range."""
    arr = _as_1d_float(eigs, "eigs")
    if np.any(arr < 0.0):
        raise InputError("eigenvalues of a nonnegative operator must be nonnegative")
    pos = np.unique(arr[arr > 0.0])
    if pos.size == 0:
        raise InputError("no positive eigenvalues to probe around")
    per = operator.index(per_gap)
    if per < 1:
        raise InputError("per_gap must be at least 1")
    recip = np.sort(1.0 / pos)
    probes = [0.5 * recip[0], 2.0 * recip[-1]]
    fracs = np.arange(1, per + 1) / (per + 1.0)
    for a, b in zip(recip[:-1], recip[1:]):
        probes.extend(a + (b - a) * fracs)
    return np.sort(np.asarray(probes))


# -- transform and exponents -------------------------------------------------


def laplace_stieltjes(counting: SpectralCounting, t) -> float:
    """The transform sum exp(-level * t) weighted by the jump masses
    (kernel mass included; subtract ``betti`` for the decaying part)."""
    level = float(t)
    if not (math.isfinite(level) and level > 0.0):
        raise InputError("the transform abscissa must be positive and finite")
    return float(np.exp(-level * counting.levels) @ counting.jumps)


class NsNumbers(NamedTuple):
    alpha_lower: float
    alpha: float
    alpha_prime: float

    def to_json_dict(self) -> dict:
        return {
            "alpha_lower": self.alpha_lower,
            "alpha": self.alpha,
            "alpha_prime": self.alpha_prime,
        }


def _transform_exponent(levels: np.ndarray, jumps: np.ndarray,
                        grid: GridSpec | None) -> float:
    t_lo = 1.0 / float(levels[-1])
    t_hi = 1.0 / (_RESOLUTION_MARGIN * float(levels[0]))
    if not t_hi > 4.0 * t_lo:
        # the levels span less than seven octaves: every transform
        # abscissa is already inside the exponential regime
        return math.inf
    count = max(2, int(math.floor(4.0 * math.log2(t_hi / t_lo))) + 1)
    ts = np.geomspace(t_lo, t_hi, count)
    decaying = np.exp(-np.outer(ts, levels)) @ jumps
    keep = decaying > 0.0
    if np.count_nonzero(keep) < 2:
        return math.inf
    est = estimate_from_corners(np.log(ts[keep]), np.log(decaying[keep]),
                                End.INFINITY, "limsup", grid)
    return 2.0 * est.value


def ns_numbers(source, grid: GridSpec | None = None) -> NsNumbers:
    """Near-zero spectral exponents (all doubled, the customary
    normalization): the lower and upper exponents of the counting
    data and the upper exponent of the transform tail.

    From counting data the first two read the log-slope of N(t) - b
    toward 0 (liminf and limsup); the transform side is summed over
    the positive levels directly, never as a difference, and sampled
    on the window the levels can resolve.  From a trace only the
    transform side exists: the lower exponent is the liminf of the
    tail slopes (the semigroup dimension), the upper one the limsup,
    and the counting-side exponent is reported as nan.  Counting data
    with fewer than two positive levels is all gap: every exponent is
    +inf.
    """
    if isinstance(source, HeatTrace):
        log_t, log_v = _restricted_logs(source, 1.0)
        low = estimate_from_corners(log_t, log_v, End.INFINITY, "liminf", grid)
        high = estimate_from_corners(log_t, log_v, End.INFINITY, "limsup", grid)
        return NsNumbers(2.0 * low.value, math.nan, 2.0 * high.value)
    if not isinstance(source, SpectralCounting):
        raise InputError("source must be a SpectralCounting or a HeatTrace")
    pos = source.levels > 0.0
    if np.count_nonzero(pos) < 2:
        return NsNumbers(math.inf, math.inf, math.inf)
    levels = source.levels[pos]
    mass = np.cumsum(source.jumps[pos])
    # the counting data decays toward 0, the mirror image of a
    # rearrangement's growth there, so the window ratios come out
    # negated: the liminf of the quotient is read off the limsup of
    # the ratios and vice versa
    log_t, log_v = np.log(levels), np.log(mass)
    up = estimate_from_corners(log_t, log_v, End.ZERO, "limsup", grid)
    down = estimate_from_corners(log_t, log_v, End.ZERO, "liminf", grid)
    alpha_lower = -2.0 * up.value
    alpha = -2.0 * down.value
    alpha_prime = _transform_exponent(levels, source.jumps[pos], grid)
    return NsNumbers(alpha_lower, alpha, alpha_prime)
