"""Eigenvalue sequence models.

Every model describes a non-increasing positive sequence mu_1 >= mu_2 >= ...
(the singular values of an inverse operator) three ways at once:

* run-length blocks ``(value, count)`` for streaming consumers;
* a vectorized ``log_mu`` over log-indices, so closed-form models can be
  probed at depths where n itself is not representable;
* log-space partial power sums ``log_sigma`` (and tail sums), the single
  engine behind dimension classification, trace trajectories, and the
  partial-sum doubling ratios.

Sums use continuous block counts (e^{a_{k+1}} - e^{a_k} rather than the
integer count); the two differ by O(1) per block, far below every
threshold downstream, and the continuous form stays meaningful at
depths beyond integer range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import CsvFormatError, InputError, ResourceLimitError
from .stepfn import StepFunction

__all__ = [
    "Model",
    "PowerLaw",
    "PowerLog",
    "Besicovitch",
    "TorusLaplacian",
    "External",
    "parse_model",
]

_DENSE_LIMIT = 1 << 26
_HEAD_N = 1 << 16
_SEG_FACTOR = 1.2
_SUBDIV = 16


def _floor_exp(u: float) -> int:
    """floor(e^u) robust to the 1-ulp droop of exp at integer targets."""
    return int(math.floor(math.exp(u) * (1.0 + 4e-16) + 1e-12))


def _logsumexp(logs: np.ndarray) -> float:
    logs = np.asarray(logs, dtype=float)
    logs = logs[logs > -math.inf]
    if logs.size == 0:
        return -math.inf
    m = float(logs.max())
    if math.isinf(m):
        return m
    return m + math.log(np.exp(logs - m).sum())


def _log_diff(la: float, lb: float) -> float:
    """log(e^la - e^lb) for la > lb."""
    if lb == -math.inf:
        return la
    if not la > lb:
        raise InputError("log-difference of a non-positive quantity")
    return la + math.log1p(-math.exp(lb - la))


def _segment_log_integrals(log_g, knots: np.ndarray) -> np.ndarray:
    """log of integral of g(x) dx over each knot interval, x = e^u.

    Within each interval log(g(x)*x) is treated as piecewise linear in
    u on _SUBDIV subintervals; exact whenever g is a pure power.
    """
    out = np.empty(knots.size - 1)
    for i in range(knots.size - 1):
        us = np.linspace(knots[i], knots[i + 1], _SUBDIV + 1)
        L = log_g(us) + us
        du = np.diff(us)
        dL = np.diff(L)
        parts = np.empty(du.size)
        for j in range(du.size):
            if du[j] <= 0.0:
                # knots one ulp apart subdivide to zero width
                parts[j] = -math.inf
            elif abs(dL[j]) < 1e-9:
                parts[j] = L[j] + math.log(du[j]) + 0.5 * dL[j]
            elif dL[j] > 0:
                parts[j] = _log_diff(L[j + 1], L[j]) + math.log(du[j]) - math.log(dL[j])
            else:
                parts[j] = _log_diff(L[j], L[j + 1]) + math.log(du[j]) - math.log(-dL[j])
        out[i] = _logsumexp(parts)
    return out


def _fill_knots(u_lo: float, targets: np.ndarray) -> np.ndarray:
    """Ascending knot sequence from u_lo through every target, with
    consecutive knots within a factor of _SEG_FACTOR."""
    knots = [u_lo]
    for t in targets:
        while knots[-1] * _SEG_FACTOR < t:
            knots.append(knots[-1] * _SEG_FACTOR)
        if t > knots[-1]:
            knots.append(t)
    return np.array(knots)


class Model:
    """Shared plumbing over the per-kind generators."""

    label: str = "model"
    closed_forms: dict = {}

    # -- required per kind -------------------------------------------------

    def log_mu(self, log_n) -> np.ndarray:
        raise NotImplementedError

    def blocks(self, n_max: int) -> Iterator[tuple[float, int]]:
        """(value, integer count) pairs covering 1..min(n_max, data end)."""
        raise NotImplementedError

    def corner_logs(self, log_n_max: float) -> tuple[np.ndarray, np.ndarray]:
        """(log n, log mu) at the natural corners of the sequence up to
        the horizon, for order estimation."""
        raise NotImplementedError

    def log_sigma(self, d: float, log_ns) -> np.ndarray:
        """log of sum_{k <= n} mu_k^d at each log n (ascending)."""
        raise NotImplementedError

    def n_limit(self) -> float | None:
        """Largest index carrying data; None when the model is a formula
        valid at any depth."""
        return None

    def power_summable(self, d: float) -> bool:
        raise NotImplementedError

    def sigma_checkpoints(self, log_n_max: float) -> np.ndarray:
        """Ascending log-n schedule for limsup classification."""
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.label}

    # -- shared -------------------------------------------------------------

    def log_tail_sigma(self, d: float, log_ns) -> np.ndarray:
        raise InputError(f"{self.label}: tail sums not supported")

    def mu(self, n) -> np.ndarray:
        arr = np.asarray(n, dtype=float)
        if np.any(arr < 1):
            raise InputError("indices start at 1")
        out = np.exp(self.log_mu(np.log(arr)))
        return float(out) if np.isscalar(n) else out

    def generate(self, n_max: int) -> np.ndarray:
        """Dense mu_1..mu_n; guarded, meant for moderate n and tests."""
        n_max = int(n_max)
        if n_max < 1:
            raise InputError("n_max must be at least 1")
        if n_max > _DENSE_LIMIT:
            raise ResourceLimitError(
                f"dense generation capped at {_DENSE_LIMIT}; use blocks() or log-space access"
            )
        vals = []
        cnts = []
        for v, c in self.blocks(n_max):
            vals.append(v)
            cnts.append(c)
        return np.repeat(np.array(vals), np.array(cnts, dtype=np.int64))[:n_max]

    def to_step_function(self, n_max: int, zero_beyond: bool = False) -> StepFunction:
        """The sequence as a right-continuous step function of a real
        index; the last in-range block value is held beyond the horizon,
        or the support is cut there with ``zero_beyond`` (the integral
        over (0, horizon) then matches the partial sum exactly)."""
        starts = []
        vals = []
        pos = 1
        for v, c in self.blocks(int(n_max)):
            starts.append(pos)
            vals.append(v)
            pos += c
        if not vals:
            raise InputError("empty stream")
        if zero_beyond:
            return StepFunction(
                np.array(starts[1:] + [pos], dtype=float),
                np.array(vals + [0.0]),
            )
        return StepFunction(np.array(starts[1:], dtype=float), np.array(vals))


class _FormulaModel(Model):
    """Models given by a smooth formula for log mu; partial sums are an
    exact head plus log-space quadrature, valid at any depth."""

    def blocks(self, n_max: int) -> Iterator[tuple[float, int]]:
        n_max = int(n_max)
        chunk = 1 << 20
        lo = 1
        while lo <= n_max:
            hi = min(n_max, lo + chunk - 1)
            for v in np.exp(self.log_mu(np.log(np.arange(lo, hi + 1, dtype=float)))):
                yield float(v), 1
            lo = hi + 1

    def corner_logs(self, log_n_max: float) -> tuple[np.ndarray, np.ndarray]:
        count = int(log_n_max / math.log(2.0))
        us = np.arange(count + 1) * math.log(2.0)
        if us[-1] < log_n_max:
            us = np.append(us, log_n_max)
        return us, self.log_mu(us)

    def _head(self, d: float) -> np.ndarray:
        terms = np.exp(d * self.log_mu(np.log(np.arange(1, _HEAD_N + 1, dtype=float))))
        return np.cumsum(terms)

    def log_sigma(self, d: float, log_ns) -> np.ndarray:
        us = np.asarray(log_ns, dtype=float)
        head = self._head(d)
        u_head = math.log(_HEAD_N)
        out = np.empty(us.size)
        deep = us > u_head
        for i in np.nonzero(~deep)[0]:
            out[i] = math.log(head[_floor_exp(us[i]) - 1])
        targets = us[deep]
        if targets.size:
            order = np.argsort(targets, kind="stable")
            sorted_targets = targets[order]
            knots = _fill_knots(u_head, sorted_targets)
            seg = _segment_log_integrals(lambda u: d * self.log_mu(u), knots)
            cum = np.logaddexp.accumulate(seg)
            log_head_total = math.log(head[-1])
            pos = np.searchsorted(knots, sorted_targets) - 1
            vals = np.logaddexp(log_head_total, cum[pos])
            restored = np.empty_like(vals)
            restored[order] = vals
            out[deep] = restored
        return out

    def log_tail_sigma(self, d: float, log_ns) -> np.ndarray:
        us = np.asarray(log_ns, dtype=float)
        if not self.power_summable(d):
            raise InputError("tail sums of a divergent series")
        out = np.empty(us.size)
        for i, u in enumerate(us):
            # Euler-Maclaurin: sum_{k>=n} g(k) ~ g(n)/2 + integral_n^inf g
            total = d * float(self.log_mu(np.array([u]))[0]) - math.log(2.0)
            lo = u
            width = math.log(2.0)
            while True:
                hi = lo + width
                seg = _segment_log_integrals(lambda x: d * self.log_mu(x), np.array([lo, hi]))[0]
                total = float(np.logaddexp(total, seg))
                if seg < total - 40.0:
                    break
                lo = hi
                width *= _SEG_FACTOR
            out[i] = total
        return out

    def sigma_checkpoints(self, log_n_max: float) -> np.ndarray:
        top = max(log_n_max, 1e6)
        lo = math.log(_HEAD_N) + 1.0
        pts = [lo]
        while pts[-1] < top:
            pts.append(min(pts[-1] * 1.25, top))
        return np.array(pts)


@dataclass(frozen=True)
class PowerLaw(_FormulaModel):
    """mu_n = n^{-alpha}."""

    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise InputError("power-law exponent must be positive")
        object.__setattr__(self, "label", f"powerlaw:{self.alpha:g}")
        object.__setattr__(
            self,
            "closed_forms",
            {"d_B": 1.0 / self.alpha, "d_H": 1.0 / self.alpha, "ord_infinity": self.alpha},
        )

    def log_mu(self, log_n) -> np.ndarray:
        return -self.alpha * np.asarray(log_n, dtype=float)

    def power_summable(self, d: float) -> bool:
        return self.alpha * d > 1.0

    def describe(self) -> dict:
        return {"kind": "powerlaw", "alpha": self.alpha}


@dataclass(frozen=True)
class PowerLog(_FormulaModel):
    """mu_n = n^{-alpha} * log(n+1)^{-beta}."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise InputError("power exponent must be positive")
        if not math.isfinite(self.beta) or self.beta < 0:
            raise InputError("log exponent must be nonnegative")
        object.__setattr__(self, "label", f"powerlog:{self.alpha:g},{self.beta:g}")
        object.__setattr__(
            self,
            "closed_forms",
            {"d_B": 1.0 / self.alpha, "d_H": 1.0 / self.alpha, "ord_infinity": self.alpha},
        )

    def log_mu(self, log_n) -> np.ndarray:
        u = np.asarray(log_n, dtype=float)
        # log log(n+1) computed as log(logaddexp(u, 0)) stays exact for huge u
        return -self.alpha * u - self.beta * np.log(np.logaddexp(u, 0.0))

    def power_summable(self, d: float) -> bool:
        if self.alpha * d != 1.0:
            return self.alpha * d > 1.0
        return self.beta * d > 1.0

    def describe(self) -> dict:
        return {"kind": "powerlog", "alpha": self.alpha, "beta": self.beta}


class Besicovitch(Model):
    """Plateau sequence mu_n = e^{-a_k} for e^{a_k} <= n < e^{a_{k+1}},
    with a_1 = 0 and a_k = lam^k - (log lam/(lam-1)) k for k >= 2.

    Block counts grow doubly exponentially, so everything is computed on
    the exponent sequence; elementwise materialization beyond a couple
    dozen blocks is impossible and never attempted.
    """

    def __init__(self, lam: float, k_cap: int = 600):
        lam = float(lam)
        if not (lam > 1.0 and math.isfinite(lam)):
            raise InputError("plateau growth rate must exceed 1")
        self.lam = lam
        self.label = f"besicovitch:{lam:g}"
        ks = np.arange(1, k_cap + 1, dtype=float)
        a = np.power(lam, ks) - (math.log(lam) / (lam - 1.0)) * ks
        a[0] = 0.0
        a = a[np.isfinite(a)]
        if np.any(np.diff(a) <= 0):
            raise InputError(
                "exponent sequence is not increasing for this growth rate; no valid plateau model"
            )
        self.a = a
        self.closed_forms = {
            "d_B": 1.0,
            "d_H": lam,
            "ord_infinity": 1.0,
            "dixmier": lam ** (1.0 / (1.0 - lam)) / (lam - 1.0),
        }

    def describe(self) -> dict:
        return {"kind": "besicovitch", "lam": self.lam}

    def plateau_starts(self, log_n_max: float) -> np.ndarray:
        """Exponents a_k with a_k <= log_n_max."""
        return self.a[self.a <= log_n_max]

    def log_mu(self, log_n) -> np.ndarray:
        u = np.asarray(log_n, dtype=float)
        idx = np.searchsorted(self.a, u, side="right") - 1
        if np.any(idx < 0):
            raise InputError("indices start at 1")
        if np.any(u > self.a[-1]):
            raise InputError("probe beyond the representable exponent range")
        return -self.a[idx]

    def blocks(self, n_max: int) -> Iterator[tuple[float, int]]:
        n_max = int(n_max)
        for k in range(self.a.size):
            start = math.ceil(math.exp(self.a[k]))
            if start > n_max:
                return
            if k + 1 < self.a.size:
                end = min(math.ceil(math.exp(self.a[k + 1])) - 1, n_max)
            else:
                end = n_max
            if end >= start:
                yield math.exp(-self.a[k]), end - start + 1

    def corner_logs(self, log_n_max: float) -> tuple[np.ndarray, np.ndarray]:
        a = self.plateau_starts(log_n_max)
        log_t = np.array([
            math.log(math.ceil(math.exp(x))) if x <= 36.0 else x for x in a
        ])
        return log_t, -a

    def _log_counts(self) -> np.ndarray:
        # log(e^{a_{k+1}} - e^{a_k}), continuous count of block k
        a = self.a
        return a[1:] + np.log1p(-np.exp(a[:-1] - a[1:]))

    def log_sigma(self, d: float, log_ns) -> np.ndarray:
        us = np.asarray(log_ns, dtype=float)
        if np.any(us > self.a[-1]):
            raise InputError("checkpoint beyond the representable exponent range")
        logcnt = self._log_counts()
        full_terms = logcnt - d * self.a[:-1]
        out = np.empty(us.size)
        for i, u in enumerate(us):
            K = int(np.searchsorted(self.a, u, side="right")) - 1
            terms = list(full_terms[:K])
            if u > self.a[K]:
                terms.append(u + math.log1p(-math.exp(self.a[K] - u)) - d * self.a[K])
            out[i] = _logsumexp(np.array(terms)) if terms else -math.inf
        return out

    def log_tail_sigma(self, d: float, log_ns) -> np.ndarray:
        if not self.power_summable(d):
            raise InputError("tail sums of a divergent series")
        us = np.asarray(log_ns, dtype=float)
        logcnt = self._log_counts()
        full_terms = logcnt - d * self.a[:-1]
        out = np.empty(us.size)
        for i, u in enumerate(us):
            K = int(np.searchsorted(self.a, u, side="right")) - 1
            terms = []
            if K + 1 < self.a.size:
                # rest of the current block, from u to a_{K+1}
                terms.append(self.a[K + 1] + math.log1p(-math.exp(u - self.a[K + 1])) - d * self.a[K])
                terms.extend(full_terms[K + 1:])
            out[i] = _logsumexp(np.array(terms)) if terms else -math.inf
        return out

    def power_summable(self, d: float) -> bool:
        # sum of count_k * e^{-d a_k} with count_k ~ e^{a_{k+1}}: terms are
        # e^{a_{k+1} - d a_k}, and a_{k+1}/a_k -> lam
        return d > self.lam

    def n_limit(self) -> float | None:
        return None

    def sigma_checkpoints(self, log_n_max: float) -> np.ndarray:
        top = max(log_n_max, 1e6)
        pts = self.a[1:][self.a[1:] <= top]
        return pts[-64:] if pts.size > 64 else pts


class TorusLaplacian(Model):
    """Inverse eigenvalues (4 pi^2 |k|^2)^{-1} of the Laplacian on the
    d-torus, over lattice vectors 0 < |k| <= cutoff; multiplicities are
    exact lattice-point counts per squared norm."""

    def __init__(self, dim: int, cutoff: int):
        dim = int(dim)
        cutoff = int(cutoff)
        if dim not in (1, 2, 3, 4):
            raise InputError("torus dimension must be 1..4")
        if cutoff < 1:
            raise InputError("cutoff must be at least 1")
        if (2 * cutoff + 1) ** dim > 3e8:
            raise ResourceLimitError("lattice enumeration too large for this cutoff")
        self.dim = dim
        self.cutoff = cutoff
        self.label = f"torus:{dim},{cutoff}"
        if dim == 1:
            # squared norms are sparse; a bincount over them would not fit
            self.norms = np.arange(1, cutoff + 1, dtype=np.int64) ** 2
            self.counts = np.full(cutoff, 2, dtype=np.int64)
        else:
            line = np.arange(-cutoff, cutoff + 1, dtype=np.int64) ** 2
            sq = line
            for _ in range(dim - 1):
                sq = np.add.outer(sq, line).ravel()
            sq = sq[sq <= cutoff * cutoff]
            counts = np.bincount(sq, minlength=cutoff * cutoff + 1)
            counts[0] = 0  # k = 0 spans the kernel; excluded
            self.norms = np.nonzero(counts)[0]
            self.counts = counts[self.norms]
        self.starts = 1 + np.concatenate([[0], np.cumsum(self.counts)[:-1]])
        self.values = 1.0 / (4.0 * math.pi**2 * self.norms)
        self.total = int(self.counts.sum())
        self.closed_forms = {"d_B": dim / 2.0, "ord_infinity": 2.0 / dim, "weyl_dimension": dim}

    def describe(self) -> dict:
        return {"kind": "torus", "dim": self.dim, "cutoff": self.cutoff, "eigenvalues": self.total}

    def n_limit(self) -> float | None:
        return float(self.total)

    def mu(self, n) -> np.ndarray:
        arr = np.asarray(n, dtype=float)
        if np.any(arr < 1) or np.any(arr > self.total):
            raise InputError("index outside the enumerated spectrum")
        out = self.values[np.searchsorted(self.starts, arr, side="right") - 1]
        return float(out) if np.isscalar(n) else out

    def log_mu(self, log_n) -> np.ndarray:
        u = np.asarray(log_n, dtype=float)
        n = np.exp(u)
        if np.any(n < 1) or np.any(n > self.total * (1 + 1e-12)):
            raise InputError("index outside the enumerated spectrum")
        idx = np.searchsorted(self.starts, np.minimum(np.round(n), self.total), side="right") - 1
        return np.log(self.values[idx])

    def blocks(self, n_max: int) -> Iterator[tuple[float, int]]:
        n_max = int(n_max)
        for v, s, c in zip(self.values, self.starts, self.counts):
            if s > n_max:
                return
            yield float(v), int(min(c, n_max - s + 1))

    def corner_logs(self, log_n_max: float) -> tuple[np.ndarray, np.ndarray]:
        keep = np.log(self.starts) <= log_n_max
        return np.log(self.starts[keep].astype(float)), np.log(self.values[keep])

    def log_sigma(self, d: float, log_ns) -> np.ndarray:
        us = np.asarray(log_ns, dtype=float)
        powers = self.values**d
        cums = np.cumsum(powers * self.counts)
        out = np.empty(us.size)
        for i, u in enumerate(us):
            n = min(_floor_exp(u), self.total)
            j = int(np.searchsorted(self.starts, n, side="right")) - 1
            full = cums[j - 1] if j > 0 else 0.0
            out[i] = math.log(full + (n - self.starts[j] + 1) * powers[j])
        return out

    def power_summable(self, d: float) -> bool:
        return True  # finite spectrum

    def sigma_checkpoints(self, log_n_max: float) -> np.ndarray:
        top = min(log_n_max, math.log(self.total))
        return np.linspace(math.log(16.0), top, 40)


class External(Model):
    """Sequence ingested from data: either sampled (n, mu) pairs, where
    mu_i holds on [n_i, n_{i+1}), or run-length (value, count) pairs."""

    def __init__(self, starts, values, counts=None):
        starts = np.asarray(starts, dtype=float)
        values = np.asarray(values, dtype=float)
        if starts.size != values.size or starts.size == 0:
            raise InputError("need matching, non-empty index and value arrays")
        if starts[0] != 1:
            raise InputError("the first index must be 1")
        if np.any(np.diff(starts) <= 0):
            raise InputError("indices must be strictly increasing")
        if np.any(values <= 0) or not np.all(np.isfinite(values)):
            raise InputError("values must be positive and finite")
        if np.any(np.diff(values) > 0):
            raise InputError("values must be non-increasing")
        self.starts = starts
        self.values = values
        if counts is None:
            counts = np.append(np.diff(starts), 1.0)
        self.counts = np.asarray(counts, dtype=float)
        self.total = float(self.starts[-1] + self.counts[-1] - 1)
        self.label = "external"
        self.closed_forms = {}

    @classmethod
    def from_rle(cls, values, counts) -> "External":
        counts = np.asarray(counts, dtype=float)
        if np.any(counts < 1) or np.any(counts != np.floor(counts)):
            raise InputError("run lengths must be positive integers")
        starts = 1 + np.concatenate([[0.0], np.cumsum(counts)[:-1]])
        keep = np.concatenate([[True], np.diff(np.asarray(values, dtype=float)) != 0])
        if not np.all(keep):
            merged_counts = np.add.reduceat(counts, np.nonzero(keep)[0])
            return cls(starts[keep], np.asarray(values, dtype=float)[keep], merged_counts)
        return cls(starts, values, counts)

    @classmethod
    def from_csv_text(cls, text: str) -> "External":
        rows = []
        header = None
        for lineno, ln in enumerate(text.splitlines(), start=1):
            ln = ln.strip()
            if not ln:
                continue
            parts = [p.strip() for p in ln.split(",")]
            if len(parts) != 2:
                raise CsvFormatError("expected two comma-separated fields", lineno)
            # only the first non-empty line may be a header; a later
            # non-numeric row is corrupt data, not a late header
            if not rows and header is None and any(not _is_number(p) for p in parts):
                header = tuple(p.lower() for p in parts)
                continue
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise CsvFormatError(f"non-numeric field in {ln!r}", lineno) from None
        if not rows:
            raise CsvFormatError("no data rows")
        a = np.array([r[0] for r in rows])
        b = np.array([r[1] for r in rows])
        try:
            if header == ("value", "count"):
                return cls.from_rle(a, b)
            return cls(a, b)
        except InputError as exc:
            raise CsvFormatError(str(exc)) from exc

    def describe(self) -> dict:
        return {"kind": "external", "blocks": int(self.values.size), "n_max": self.total}

    def n_limit(self) -> float | None:
        return self.total

    def mu(self, n) -> np.ndarray:
        arr = np.asarray(n, dtype=float)
        if np.any(arr < 1) or np.any(arr > self.total):
            raise InputError("index outside the data")
        out = self.values[np.searchsorted(self.starts, arr, side="right") - 1]
        return float(out) if np.isscalar(n) else out

    def log_mu(self, log_n) -> np.ndarray:
        u = np.asarray(log_n, dtype=float)
        n = np.exp(u)
        if np.any(n < 1) or np.any(n > self.total * (1 + 1e-12)):
            raise InputError("index outside the data")
        idx = np.searchsorted(self.starts, np.round(n), side="right") - 1
        return np.log(self.values[idx])

    def blocks(self, n_max: int) -> Iterator[tuple[float, int]]:
        for v, s, c in zip(self.values, self.starts, self.counts):
            if s > n_max:
                return
            yield float(v), int(min(c, n_max - s + 1))

    def corner_logs(self, log_n_max: float) -> tuple[np.ndarray, np.ndarray]:
        keep = np.log(self.starts) <= log_n_max
        return np.log(self.starts[keep]), np.log(self.values[keep])

    def log_sigma(self, d: float, log_ns) -> np.ndarray:
        us = np.asarray(log_ns, dtype=float)
        powers = self.values**d
        cums = np.cumsum(powers * self.counts)
        out = np.empty(us.size)
        for i, u in enumerate(us):
            n = min(_floor_exp(u), self.total)
            j = int(np.searchsorted(self.starts, n, side="right")) - 1
            full = cums[j - 1] if j > 0 else 0.0
            out[i] = math.log(full + (n - self.starts[j] + 1) * powers[j])
        return out

    def log_tail_sigma(self, d: float, log_ns) -> np.ndarray:
        us = np.asarray(log_ns, dtype=float)
        powers = self.values**d
        rev = np.cumsum((powers * self.counts)[::-1])[::-1]
        out = np.empty(us.size)
        for i, u in enumerate(us):
            n = min(_floor_exp(u), self.total)
            j = int(np.searchsorted(self.starts, n, side="right")) - 1
            rest = rev[j + 1] if j + 1 < rev.size else 0.0
            inblock = (self.starts[j] + self.counts[j] - n) * powers[j]
            out[i] = math.log(rest + inblock)
        return out

    def power_summable(self, d: float) -> bool:
        return True  # finite data

    def sigma_checkpoints(self, log_n_max: float) -> np.ndarray:
        top = min(log_n_max, math.log(self.total))
        lo = min(math.log(16.0), top / 2)
        return np.linspace(lo, top, 40)


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def parse_model(spec: str) -> Model:
    """Parse CLI model specs like ``powerlaw:0.5``, ``powerlog:1,2``,
    ``besicovitch:2``, ``torus:2,180``."""
    kind, _, args = spec.partition(":")
    kind = kind.strip().lower()
    parts = [p for p in args.split(",") if p.strip()] if args else []
    try:
        if kind == "powerlaw" and len(parts) == 1:
            return PowerLaw(float(parts[0]))
        if kind == "powerlog" and len(parts) == 2:
            return PowerLog(float(parts[0]), float(parts[1]))
        if kind == "besicovitch" and len(parts) == 1:
            return Besicovitch(float(parts[0]))
        if kind == "torus" and len(parts) == 2:
            return TorusLaplacian(int(parts[0]), int(parts[1]))
    except ValueError:
        raise InputError(f"malformed model arguments in {spec!r}") from None
    raise InputError(
        f"unknown model {spec!r}; expected powerlaw:a, powerlog:a,b, besicovitch:lam, or torus:dim,cutoff"
    )
