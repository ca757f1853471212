"""Non-increasing right-continuous step functions on (0, inf).

The representation is exact: a sorted breakpoint list, one value per
plateau, and an optional point beyond which the function vanishes.
Rearrangement and the distribution function are staircase reflections,
so they move coordinates between the two axes without arithmetic and
round-trip bit-for-bit.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import CsvFormatError, InfiniteMeasureError, InputError

__all__ = [
    "End",
    "StepFunction",
    "MassSample",
    "rearrange",
    "distribution",
    "round_trip",
    "integrate",
]


class End(enum.Enum):
    """Which end of the domain (0, inf) a limit statement refers to."""

    ZERO = "zero"
    INFINITY = "infinity"

    @classmethod
    def parse(cls, text: str) -> "End":
        key = str(text).strip().lower()
        for member in cls:
            if member.value.startswith(key) and key:
                return member
        raise InputError(f"unknown end {text!r} (use 'zero' or 'infinity')")


def _as_1d_float(xs, name: str) -> np.ndarray:
    arr = np.asarray(xs, dtype=float)
    if arr.ndim != 1:
        raise InputError(f"{name} must be one-dimensional")
    return arr


@dataclass(frozen=True, eq=False)
class StepFunction:
    """f(t) = values[i] on [breakpoints[i-1], breakpoints[i]) with
    values[0] on (0, breakpoints[0]) and values[-1] beyond the last
    breakpoint.

    Invariants enforced at construction: breakpoints strictly increasing,
    positive and finite; values non-negative and strictly decreasing after
    canonicalization (ties are merged); only values[0] may be +inf.  A
    trailing zero value is folded into ``support_end``.
    """

    breakpoints: np.ndarray
    values: np.ndarray
    support_end: float | None = None

    def __post_init__(self):
        bps = _as_1d_float(self.breakpoints, "breakpoints")
        vals = _as_1d_float(self.values, "values")
        if vals.size != bps.size + 1:
            raise InputError("need exactly one value per plateau (len(values) == len(breakpoints) + 1)")
        if bps.size and (not np.all(np.isfinite(bps)) or bps[0] <= 0.0):
            raise InputError("breakpoints must be positive and finite")
        if bps.size > 1 and not np.all(np.diff(bps) > 0.0):
            raise InputError("breakpoints must be strictly increasing")
        if np.any(np.isnan(vals)) or np.any(vals < 0.0):
            raise InputError("values must be non-negative")
        if np.any(np.isinf(vals[1:])):
            raise InputError("only the leading value may be infinite")
        if vals.size == 1 and np.isinf(vals[0]):
            raise InfiniteMeasureError("function is identically +inf; not representable")
        if np.any(np.diff(vals) > 0.0):
            raise InputError("values must be non-increasing")

        end = self.support_end
        if end is not None:
            end = float(end)
            if not math.isfinite(end) or end <= 0.0:
                raise InputError("support_end must be positive and finite")
            last = bps[-1] if bps.size else 0.0
            if vals[-1] > 0.0:
                if end <= last:
                    raise InputError("support_end must exceed the last breakpoint")
                bps = np.append(bps, end)
                vals = np.append(vals, 0.0)
            elif bps.size and end != bps[-1]:
                raise InputError("support_end conflicts with an explicit trailing zero")

        # Merge plateaus with equal values: keep a breakpoint only where
        # the value actually drops.
        if bps.size:
            keep = vals[1:] < vals[:-1]
            bps = bps[keep]
            vals = np.concatenate([vals[:1], vals[1:][keep]])

        end = float(bps[-1]) if (bps.size and vals[-1] == 0.0) else None
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "support_end", end)

    # -- evaluation ------------------------------------------------------

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr <= 0.0):
            raise InputError("the domain is (0, inf)")
        idx = np.searchsorted(self.breakpoints, t_arr, side="right")
        out = self.values[idx]
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    @property
    def plateau_count(self) -> int:
        return int(self.values.size)

    def is_zero(self) -> bool:
        return self.values.size == 1 and self.values[0] == 0.0

    def equal_within_ulp(self, other: "StepFunction", scale: float = 4.0) -> bool:
        """Coordinate-wise equality within a few ulps of each coordinate."""
        if self.breakpoints.size != other.breakpoints.size:
            return False
        for a, b in zip(
            np.concatenate([self.breakpoints, self.values]),
            np.concatenate([other.breakpoints, other.values]),
        ):
            if a == b:
                continue
            if not (math.isfinite(a) and math.isfinite(b)):
                return False
            if abs(a - b) > scale * math.ulp(max(abs(a), abs(b))):
                return False
        return True

    # -- serialization ---------------------------------------------------

    def to_csv_text(self) -> str:
        """Rows ``t,value``: a leading ``0,<v0>`` row, then one row per
        breakpoint."""
        rows = ["t,value", f"0,{float(self.values[0])!r}"]
        for t, v in zip(self.breakpoints, self.values[1:]):
            rows.append(f"{float(t)!r},{float(v)!r}")
        return "\n".join(rows) + "\n"

    @classmethod
    def from_csv_text(cls, text: str) -> "StepFunction":
        lines = [ln.strip() for ln in text.splitlines()]
        rows = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
        if not rows:
            raise CsvFormatError("empty file")
        start = 0
        if rows[0][1].lower().replace(" ", "") == "t,value":
            start = 1
        parsed = []
        for lineno, ln in rows[start:]:
            parts = ln.split(",")
            if len(parts) != 2:
                raise CsvFormatError("expected two comma-separated fields", lineno)
            try:
                parsed.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise CsvFormatError(f"non-numeric field in {ln!r}", lineno) from None
        if not parsed or parsed[0][0] != 0.0:
            raise CsvFormatError("first data row must anchor the leading plateau as 0,<v0>",
                                 rows[start][0] if start < len(rows) else None)
        bps = [t for t, _ in parsed[1:]]
        vals = [v for _, v in parsed]
        try:
            return cls(np.array(bps), np.array(vals))
        except InputError as exc:
            raise CsvFormatError(str(exc)) from exc

    def to_json_dict(self) -> dict:
        return {
            "breakpoints": [float(t) for t in self.breakpoints],
            "values": [float(v) for v in self.values],
            "support_end": self.support_end,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, payload: dict) -> "StepFunction":
        return cls(
            np.asarray(payload["breakpoints"], dtype=float),
            np.asarray(payload["values"], dtype=float),
            payload.get("support_end"),
        )

    @classmethod
    def from_json(cls, text: str) -> "StepFunction":
        return cls.from_json_dict(json.loads(text))

    @classmethod
    def constant(cls, value: float) -> "StepFunction":
        return cls(np.empty(0), np.array([float(value)]))

    @classmethod
    def from_samples(
        cls,
        ts,
        vals,
        zero_beyond: bool = False,
        unbounded_at_zero: bool = False,
    ) -> "StepFunction":
        """Right-continuous staircase through sampled points: value
        ``vals[i]`` holds on [ts[i], ts[i+1]).  The leading plateau on
        (0, ts[0]) repeats vals[0], or is +inf with ``unbounded_at_zero``
        (the honest representation when data merely stops at ts[0]).
        ``zero_beyond`` cuts support at the last sample abscissa."""
        ts = _as_1d_float(ts, "ts")
        vals = _as_1d_float(vals, "vals")
        if ts.size != vals.size or ts.size == 0:
            raise InputError("need matching, non-empty sample arrays")
        lead = np.array([math.inf]) if unbounded_at_zero else vals[:1]
        if zero_beyond:
            return cls(ts, np.concatenate([lead, vals[:-1], [0.0]]), None)
        if unbounded_at_zero:
            return cls(ts, np.concatenate([lead, vals]), None)
        return cls(ts[1:], vals)


@dataclass(frozen=True, eq=False)
class MassSample:
    """Finite weighted sample {(value_i, mass_i)}: the measure
    sum_i mass_i * delta(value_i)."""

    sample_values: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        v = _as_1d_float(self.sample_values, "sample_values")
        m = _as_1d_float(self.masses, "masses")
        if v.size != m.size or v.size == 0:
            raise InputError("need matching, non-empty value and mass arrays")
        if not np.all(np.isfinite(v)) or np.any(v < 0.0):
            raise InputError("sample values must be finite and non-negative")
        if not np.all(np.isfinite(m)) or np.any(m <= 0.0):
            raise InputError("masses must be finite and positive")
        object.__setattr__(self, "sample_values", v)
        object.__setattr__(self, "masses", m)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]]) -> "MassSample":
        pairs = list(pairs)
        return cls(np.array([p[0] for p in pairs]), np.array([p[1] for p in pairs]))

    def total_mass(self) -> float:
        return float(math.fsum(self.masses))


def rearrange(sample: MassSample) -> StepFunction:
    """Non-increasing rearrangement of a finite mass sample.

    Sorts values in decreasing order, merges ties into single plateaus,
    and lays plateaus end to end with lengths given by the merged masses,
    e.g. {(3,1),(1,2),(5,1)} -> 5 on [0,1), 3 on [1,2), 1 on [2,4), 0 after.
    """
    order = np.argsort(-sample.sample_values, kind="stable")
    v_sorted = sample.sample_values[order]
    m_sorted = sample.masses[order]

    plateau_vals: list[float] = []
    plateau_masses: list[float] = []
    for v, m in zip(v_sorted, m_sorted):
        if plateau_vals and v == plateau_vals[-1]:
            plateau_masses[-1] += m
        else:
            plateau_vals.append(float(v))
            plateau_masses.append(float(m))

    # Zero-valued mass only extends the region where the function is 0.
    if plateau_vals and plateau_vals[-1] == 0.0:
        plateau_vals.pop()
        plateau_masses.pop()
    if not plateau_vals:
        return StepFunction(np.empty(0), np.array([0.0]))

    bps = np.cumsum(plateau_masses)
    vals = np.array(plateau_vals + [0.0])
    return StepFunction(bps, vals)


def distribution(f: StepFunction) -> StepFunction:
    """Distribution function lambda(s) = |{t > 0 : f(t) > s}|.

    For this class the graph is the reflection of f across the diagonal,
    so breakpoints and values swap roles; no arithmetic is performed on
    the coordinates.  The same reflection computes the non-increasing
    rearrangement (the generalized inverse), hence
    ``distribution(distribution(f)) == f`` exactly.
    """
    if f.is_zero():
        return StepFunction(np.empty(0), np.array([0.0]))

    bps = f.breakpoints
    vals = f.values
    if bps.size == 0:
        # Constant c > 0 on (0, inf): lambda = +inf below c, 0 at or above.
        return StepFunction(np.array([vals[0]]), np.array([math.inf, 0.0]))

    v0 = vals[0]
    v_last = vals[-1]
    # Interior levels: lambda(s) = t_i on [v_i, v_{i-1}).
    new_bps = vals[:0:-1]  # v_m, ..., v_1 ascending
    new_vals = bps[::-1]  # t_m, ..., t_1
    if v_last == 0.0:
        new_bps = new_bps[1:]  # leading plateau (0, v_{m-1}) carries t_m
    else:
        new_vals = np.concatenate([[math.inf], new_vals])  # f > s everywhere below v_m
    if math.isfinite(v0):
        new_bps = np.concatenate([new_bps, [v0]])
        new_vals = np.concatenate([new_vals, [0.0]])
    # else: lambda stays at t_1 for all s >= v_1
    return StepFunction(np.array(new_bps, dtype=float), np.array(new_vals, dtype=float))


def round_trip(f: StepFunction) -> StepFunction:
    """Rearrangement of the distribution function of f.

    Both maps are the staircase reflection, so this is the identity on
    canonical step functions.
    """
    return distribution(distribution(f))


def integrate(f: StepFunction, a: float, b: float) -> float:
    """Exact Lebesgue integral of f over (a, b), 0 <= a < b <= inf."""
    a = float(a)
    b = float(b)
    if not (0.0 <= a < b):
        raise InputError("need 0 <= a < b")
    if math.isnan(b):
        raise InputError("bad upper limit")

    bps = f.breakpoints
    vals = f.values
    first_bp = bps[0] if bps.size else math.inf
    if math.isinf(vals[0]) and a < min(b, first_bp):
        return math.inf
    if math.isinf(b) and vals[-1] > 0.0:
        return math.inf

    edges = np.concatenate([[0.0], bps, [math.inf]])
    terms = []
    for i, v in enumerate(vals):
        if v == 0.0:
            continue
        lo = max(a, edges[i])
        hi = min(b, edges[i + 1])
        if hi > lo:
            terms.append(v * (hi - lo))
    return float(math.fsum(terms))
