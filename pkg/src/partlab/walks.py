"""The paired exponential surrogate walk and its event estimators.

Two independent sequences of mean-1 exponentials X, X' drive prefix
sums S, S' and centered walks R_j = S_j - j, R'_j = S'_j - j.  The map

    ceil((sqrt(n)/c) * log((sqrt(n)/c) / S_j)),   c = pi/sqrt(6),

turns prefix sums into surrogate row (from S) and column (from S')
lengths of a size-n random partition's diagram.  The estimators here
measure the probability of the inequality events tying the surrogate
to graphicality, plus concentration diagnostics for R_j and for the
ratios S'_j/S_j.

Monte Carlo draws happen in chunks: each chunk draws the X block, then
the X' block, then (for paired-uniform needs) any acceptance variates,
row by row within a block.  That order is part of the determinism
contract; estimates are bit-reproducible for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .stats import C_SCALE, kahan_cumsum, kahan_cumsum_rows, make_estimate

__all__ = [
    "ContainmentReport",
    "RatioTailDiagnostic",
    "SurrogateRowsCols",
    "WalkPath",
    "check_containment",
    "check_rj_concentration",
    "estimate_event",
    "event_early_min_drop",
    "event_eg_surrogate",
    "event_log",
    "event_log_drift_gap",
    "floor_power",
    "gen_walk",
    "headline_threshold",
    "log_cube",
    "log_drift_gap_bound",
    "log_prefix_bound_check",
    "min_weighted_stat",
    "ratio_tail_diagnostic",
    "rj_concentration_bound",
    "surrogate_rows_cols",
]

_CHUNK = 4096


@dataclass(frozen=True)
class WalkPath:
    """One realization of the paired exponential walk.

    Fields are aligned 1-based in spirit: index j of each array holds
    the values at time j+1.  r and r_prime are redundant with s and
    s_prime (r_j = s_j - j) and kept for direct use.
    """

    x: np.ndarray
    x_prime: np.ndarray
    s: np.ndarray
    s_prime: np.ndarray
    r: np.ndarray
    r_prime: np.ndarray

    @property
    def length(self):
        return len(self.x)


def gen_walk(m, rng):
    """Paired exponential walk of length m; draws X then X'."""
    if m < 1:
        raise ValueError("walk length must be >= 1")
    x = rng.exponential(m)
    xp = rng.exponential(m)
    s = np.cumsum(x)
    sp = np.cumsum(xp)
    j = np.arange(1, m + 1, dtype=np.float64)
    return WalkPath(x=x, x_prime=xp, s=s, s_prime=sp, r=s - j, r_prime=sp - j)


def floor_power(n, gamma):
    """floor(n**gamma) guarded against floating error at integer boundaries.

    Comparisons run in log space with 1e-12 slack so that, e.g.,
    floor((10**4)**0.25) comes out 10 even though the float power
    evaluates just below 10.  Exact boundaries within the slack round
    up, which matches the mathematically exact value.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    target = gamma * math.log(n)
    out = max(int(n**gamma), 1)
    while math.log(out + 1) <= target + 1e-12:
        out += 1
    while out > 1 and math.log(out) > target + 1e-12:
        out -= 1
    return out


@dataclass(frozen=True)
class SurrogateRowsCols:
    """Surrogate row/column lengths for the first floor(n**gamma) indices."""

    n: int
    gamma: float
    rows: np.ndarray
    cols: np.ndarray


def _row_values(n, prefix_sums):
    # unclamped: values can go <= 0 on atypical paths and are kept as is
    scale = math.sqrt(n) / C_SCALE
    vals = np.ceil(scale * (math.log(scale) - np.log(prefix_sums)))
    return vals.astype(np.int64)


def _require_length(n, gamma, walk):
    if not 0.0 < gamma < 0.25:
        raise ValueError("gamma must lie in (0, 1/4)")
    length = floor_power(n, gamma)
    if walk.length < length:
        raise ValueError(
            f"walk length {walk.length} shorter than floor(n**gamma) = {length}"
        )
    return length


def surrogate_rows_cols(n, gamma, walk):
    """Row values from S and column values from S', as signed integers.

    rows[i] = ceil((sqrt(n)/c) log((sqrt(n)/c)/S_{i+1})) for the first
    floor(n**gamma) indices; cols likewise from S'.  Values are not
    clamped at zero.
    """
    length = _require_length(n, gamma, walk)
    return SurrogateRowsCols(
        n=n,
        gamma=gamma,
        rows=_row_values(n, walk.s[:length]),
        cols=_row_values(n, walk.s_prime[:length]),
    )


def event_eg_surrogate(n, gamma, walk):
    """Ceiled-sum graphicality inequality on the surrogate diagram.

    True iff for every i <= floor(n**gamma),
    sum_{j<=i} rows_j >= sum_{j<=i} cols_j + i, in exact integer
    arithmetic.
    """
    rc = surrogate_rows_cols(n, gamma, walk)
    lhs = np.cumsum(rc.rows)
    rhs = np.cumsum(rc.cols) + np.arange(1, len(rc.cols) + 1)
    return bool(np.all(lhs >= rhs))


def event_log(n, gamma, walk, threshold=-1.0):
    """Prefix log-ratio sums staying at or above ``threshold``.

    True iff sum_{j<=i} log(S'_j/S_j) >= threshold for every
    i <= floor(n**gamma).  Each term is computed as
    log(S'_j) - log(S_j); prefixes accumulate with compensated
    summation so hundreds of terms cannot drift.
    """
    length = _require_length(n, gamma, walk)
    diffs = np.log(walk.s_prime[:length]) - np.log(walk.s[:length])
    return bool(np.all(kahan_cumsum(diffs) >= threshold))


def min_weighted_stat(walk, length):
    """min over 1 <= l <= length of sum_{j<=l} (R'_j - R_j)/j."""
    if not 1 <= length <= walk.length:
        raise ValueError(f"length must lie in [1, {walk.length}]")
    j = np.arange(1, length + 1, dtype=np.float64)
    terms = (walk.r_prime[:length] - walk.r[:length]) / j
    return float(kahan_cumsum(terms).min())


def headline_threshold(n, delta, multiplier=5.0):
    """-multiplier * n^(delta/2) * ceil(log^(3/2) n).

    The canonical multiplier is 5; it is exposed because it is a
    proof-shaped constant, not a tuned one.
    """
    return -multiplier * n ** (delta / 2.0) * math.ceil(math.log(n) ** 1.5)


def log_cube(n):
    """ceil(log^3 n), the burn-in index range of the ratio diagnostics."""
    return math.ceil(math.log(n) ** 3)


def estimate_event(kind, n, gamma, delta, trials, rng, *,
                   threshold=-1.0, multiplier=5.0):
    """Monte Carlo probability of a named surrogate event.

    kind 'eg': the ceiled-sum inequality event; 'log': prefix
    log-ratio sums staying above ``threshold``; 'headline':
    min_weighted_stat over floor(n**gamma) indices staying at or above
    -multiplier * n^(delta/2) * ceil(log^(3/2) n) (requires delta).
    Walks are generated in chunks (X block then X' block); per-row
    evaluation matches the single-path event functions exactly.
    """
    if kind not in ("eg", "log", "headline"):
        raise ValueError(f"unknown event kind {kind!r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0.0 < gamma < 0.25:
        raise ValueError("gamma must lie in (0, 1/4)")
    if kind == "headline":
        if delta is None or delta <= 0:
            raise ValueError("headline event needs delta > 0")
        cut = headline_threshold(n, delta, multiplier)
    length = floor_power(n, gamma)

    hits = 0
    done = 0
    while done < trials:
        chunk = min(_CHUNK, trials - done)
        x = rng.exponential((chunk, length))
        xp = rng.exponential((chunk, length))
        s = np.cumsum(x, axis=1)
        sp = np.cumsum(xp, axis=1)
        if kind == "eg":
            lhs = np.cumsum(_row_values(n, s), axis=1)
            rhs = np.cumsum(_row_values(n, sp), axis=1) + np.arange(1, length + 1)
            ok = np.all(lhs >= rhs, axis=1)
        elif kind == "log":
            prefix = kahan_cumsum_rows(np.log(sp) - np.log(s))
            ok = prefix.min(axis=1) >= threshold
        else:
            jj = np.arange(1, length + 1, dtype=np.float64)
            prefix = kahan_cumsum_rows((sp - s) / jj)
            ok = prefix.min(axis=1) >= cut
        hits += int(ok.sum())
        done += chunk
    return make_estimate(kind, hits, trials, n=n, gamma=gamma, delta=delta)


@dataclass(frozen=True)
class ContainmentReport:
    """Path-by-path tally of the inequality chain eg => log(0) => log(-1)."""

    trials: int
    eg_hits: int
    log0_hits: int
    logneg1_hits: int
    eg_without_log0: int
    log0_without_logneg1: int

    @property
    def violations(self):
        return self.eg_without_log0 + self.log0_without_logneg1


def check_containment(n, gamma, trials, rng):
    """Evaluate all three chained events on common paths.

    The ceiling inequalities give eg => log(0) => log(-1) on every
    single path (not merely in distribution); the report counts any
    violations, which should be zero.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    length = floor_power(n, gamma)
    eg_hits = log0 = logneg1 = bad01 = bad12 = 0
    for _ in range(trials):
        path = gen_walk(length, rng)
        a = event_eg_surrogate(n, gamma, path)
        b = event_log(n, gamma, path, threshold=0.0)
        c = event_log(n, gamma, path, threshold=-1.0)
        eg_hits += a
        log0 += b
        logneg1 += c
        bad01 += a and not b
        bad12 += b and not c
    return ContainmentReport(
        trials=trials,
        eg_hits=eg_hits,
        log0_hits=log0,
        logneg1_hits=logneg1,
        eg_without_log0=bad01,
        log0_without_logneg1=bad12,
    )


def rj_concentration_bound(n):
    """The tail envelope 2 exp(-log^2(n)/6) for |R_j/j| >= log(n)/sqrt(j)."""
    return 2.0 * math.exp(-math.log(n) ** 2 / 6.0)


def check_rj_concentration(j, n, trials, rng):
    """Empirical frequency of |R_j/j| >= log(n)/sqrt(j).

    Valid in the regime j > log^2(n).  S_j is a sum of j unit
    exponentials, i.e. Gamma(j, 1), and is drawn directly in that
    form.  Compare the estimate against rj_concentration_bound(n); at
    small n the bound exceeds 1 and the check is vacuous.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if j <= math.log(n) ** 2:
        raise ValueError(f"j = {j} must exceed log^2(n) = {math.log(n) ** 2:.3f}")
    cut = math.log(n) / math.sqrt(j)
    hits = 0
    done = 0
    while done < trials:
        chunk = min(10**6, trials - done)
        s = rng.gamma(float(j), chunk)
        hits += int((np.abs(s / j - 1.0) >= cut).sum())
        done += chunk
    return make_estimate("rj-concentration", hits, trials, n=n)


@dataclass(frozen=True)
class RatioTailDiagnostic:
    """Summed exceedance frequencies of S'_j/S_j over the burn-in range.

    per_j[i] estimates P(S'_j/S_j >= 1 + n^(delta/2)/sqrt(j)) at
    j = i+1; ``total`` is their sum, to be held against the asymptotic
    envelope ``bound`` = 8 n^(-delta/2).  All indices share common
    paths, so ``ci_halfwidth`` comes from the per-path exceedance
    counts, which is the correct CI for the dependent sum.
    """

    n: int
    delta: float
    trials: int
    indices: int
    per_j: np.ndarray
    total: float
    bound: float
    ci_halfwidth: float


def ratio_tail_diagnostic(n, delta, trials, rng):
    """Estimate sum_{j <= ceil(log^3 n)} P(S'_j/S_j >= 1 + n^(delta/2)/sqrt(j)).

    One set of paths serves every j.  Memory stays bounded by chunking
    paths; the per-path exceedance count across indices feeds a CLT
    interval for the total.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if delta <= 0:
        raise ValueError("delta must be positive")
    count = log_cube(n)
    jj = np.arange(1, count + 1, dtype=np.float64)
    cuts = 1.0 + n ** (delta / 2.0) / np.sqrt(jj)
    hits_per_j = np.zeros(count, dtype=np.int64)
    path_sum = 0.0
    path_sumsq = 0.0
    done = 0
    chunk_cap = max(1, min(trials, (4 * 10**6) // count))
    while done < trials:
        chunk = min(chunk_cap, trials - done)
        s = np.cumsum(rng.exponential((chunk, count)), axis=1)
        sp = np.cumsum(rng.exponential((chunk, count)), axis=1)
        exceed = sp / s >= cuts
        hits_per_j += exceed.sum(axis=0)
        per_path = exceed.sum(axis=1).astype(np.float64)
        path_sum += float(per_path.sum())
        path_sumsq += float((per_path**2).sum())
        done += chunk
    per_j = hits_per_j / trials
    total = float(path_sum / trials)
    var = max(path_sumsq / trials - total**2, 0.0)
    ci = 1.959963984540054 * math.sqrt(var / trials)
    return RatioTailDiagnostic(
        n=n,
        delta=delta,
        trials=trials,
        indices=count,
        per_j=per_j,
        total=total,
        bound=8.0 * n ** (-delta / 2.0),
        ci_halfwidth=ci,
    )


def log_prefix_bound_check(n, delta, walk):
    """Deterministic per-path check of the burn-in log-sum bound.

    On any path where S'_j/S_j < 1 + n^(delta/2)/sqrt(j) for every
    j <= ceil(log^3 n), the prefix sum of log(S'_j/S_j) over that
    range must stay at or below 2 n^(delta/2) ceil(log^(3/2) n),
    because log(1+t) <= t and sum 1/sqrt(j) <= 2 sqrt(count).  Returns
    (applicable, holds, value, cap); ``holds`` is None when the ratio
    condition fails, since then the bound promises nothing.
    """
    count = log_cube(n)
    if walk.length < count:
        raise ValueError(f"walk length {walk.length} < ceil(log^3 n) = {count}")
    jj = np.arange(1, count + 1, dtype=np.float64)
    ratios = walk.s_prime[:count] / walk.s[:count]
    applicable = bool(np.all(ratios < 1.0 + n ** (delta / 2.0) / np.sqrt(jj)))
    value = float(
        kahan_cumsum(np.log(walk.s_prime[:count]) - np.log(walk.s[:count]))[-1]
    )
    cap = 2.0 * n ** (delta / 2.0) * math.ceil(math.log(n) ** 1.5)
    holds = (value <= cap) if applicable else None
    return applicable, holds, value, cap


def event_log_drift_gap(n, gamma, walk):
    """Per-path diagnostic: beyond the burn-in range, do the prefix
    log-ratio sums ever exceed the centered-drift sums by more than
    log^3 n?

    The event is a union over l in (ceil(log^3 n), floor(n**gamma)] of

        sum_{j=burnin+1..l} log(S'_j/S_j)
            > sum_{j=burnin+1..l} (R'_j - R_j)/j + log^3 n.

    When floor(n**gamma) <= ceil(log^3 n) the index range is empty and
    the event is False by convention; that is the usual situation at
    desk-scale n, where this stays a large-n diagnostic.
    """
    length = _require_length(n, gamma, walk)
    burnin = log_cube(n)
    if length <= burnin:
        return False
    lo, hi = burnin, length
    logs = np.log(walk.s_prime[lo:hi]) - np.log(walk.s[lo:hi])
    jj = np.arange(lo + 1, hi + 1, dtype=np.float64)
    drift = (walk.r_prime[lo:hi] - walk.r[lo:hi]) / jj
    gap = kahan_cumsum(logs) - kahan_cumsum(drift)
    return bool(np.any(gap > math.log(n) ** 3))


def log_drift_gap_bound(n):
    """Asymptotic envelope 4 n^(1/4) exp(-log^2(n)/6) for the drift-gap event."""
    return 4.0 * n**0.25 * math.exp(-math.log(n) ** 2 / 6.0)


def event_early_min_drop(n, delta, walk):
    """Per-path diagnostic: does the weighted drift min over the burn-in
    range drop to -n^(delta/2) ceil(log^(3/2) n) or below?

    This event's probability is asymptotically O(n^(-delta/2)); no
    finite-n target exists, so it is reported as a raw diagnostic.
    """
    count = log_cube(n)
    if walk.length < count:
        raise ValueError(f"walk length {walk.length} < ceil(log^3 n) = {count}")
    cut = -(n ** (delta / 2.0)) * math.ceil(math.log(n) ** 1.5)
    return min_weighted_stat(walk, count) <= cut
