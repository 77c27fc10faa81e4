"""The harmonic-weighted Gaussian process and the decay-exponent solver.

The process is Z_n = sum_{k<=n} B_k/k with B a standard Brownian
motion observed at integer times, so B_k is a sum of k iid standard
normals.  Its covariance has the closed form

    Cov(Z_m, Z_n) = 2m - (m+1) H_m + m H_n   for m <= n,

with H_k the k-th harmonic number.  The module offers two exact
samplers (linear-cost incremental, and dense Cholesky as an
independent check on the law), persistence-probability estimation,
and the constant pipeline: the root of g(rho) = 5/4, the rate
beta = 1/(10 log rho), and the maximin exponent solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as _sps

from .stats import kahan_cumsum, make_estimate

__all__ = [
    "CHOLESKY_CAP",
    "DecayFit",
    "ExponentSolution",
    "GPPath",
    "beta_from_rho",
    "cov_matrix",
    "decay_fit",
    "g_rho",
    "gp_cov",
    "harmonic",
    "harmonic_prefix",
    "optimize_exponents",
    "persistence_prob",
    "sample_gp_cholesky",
    "sample_gp_incremental",
    "solve_exponent_pipeline",
    "solve_rho_star",
]

#: Largest N for which the dense covariance factorization is offered.
CHOLESKY_CAP = 2000


def harmonic(k):
    """H_k = sum_{j<=k} 1/j by exact compensated summation; H_0 = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return math.fsum(1.0 / j for j in range(1, k + 1))


def harmonic_prefix(n):
    """Array of H_1..H_n, accumulated with compensated summation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return kahan_cumsum(1.0 / np.arange(1.0, n + 1.0))


def gp_cov(m, n):
    """Cov(Z_m, Z_n) = 2m - (m+1) H_m + m H_n for m <= n.

    Arguments in either order; both must be >= 1.
    """
    if m < 1 or n < 1:
        raise ValueError("indices must be >= 1")
    if m > n:
        m, n = n, m
    return 2.0 * m - (m + 1.0) * harmonic(m) + m * harmonic(n)


def cov_matrix(n):
    """Dense covariance matrix of (Z_1, ..., Z_n).

    Symmetric positive definite; entry (i, j) equals
    gp_cov(min(i,j)+1, max(i,j)+1) up to accumulation error ~1 ulp.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    h = np.concatenate(([0.0], harmonic_prefix(n)))
    idx = np.arange(1, n + 1)
    lo = np.minimum.outer(idx, idx)
    hi = np.maximum.outer(idx, idx)
    return 2.0 * lo - (lo + 1.0) * h[lo] + lo * h[hi]


@dataclass(frozen=True)
class GPPath:
    """One realization of (Z_1..Z_N); ``b`` carries the Brownian values
    when the sampler produces them (the Cholesky sampler does not)."""

    z: np.ndarray
    b: np.ndarray | None = None

    @property
    def length(self):
        return len(self.z)


def sample_gp_incremental(n, rng):
    """Exact path of Z via Brownian increments; O(n) per path."""
    if n < 1:
        raise ValueError("n must be >= 1")
    b = np.cumsum(rng.standard_normal(n))
    z = np.cumsum(b / np.arange(1, n + 1))
    return GPPath(z=z, b=b)


def sample_gp_cholesky(n, rng, *, jitter=0.0, cap=CHOLESKY_CAP):
    """Exact path of Z (marginal law only) via dense Cholesky.

    Cost is O(n^3), so n is capped (default 2000).  If factorization
    fails through rounding, retry with a small ``jitter`` added to the
    diagonal, e.g. 1e-10.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise ValueError(f"n = {n} above dense factorization cap {cap}")
    cov = cov_matrix(n)
    if jitter:
        cov = cov + jitter * np.eye(n)
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(
            "covariance factorization failed; retry with jitter > 0"
        ) from exc
    return GPPath(z=chol @ rng.standard_normal(n))


def persistence_prob(n, alpha, trials, rng):
    """Monte Carlo estimate of P(max_{k<=n} Z_k <= n**alpha).

    Uses the incremental sampler in chunks; alpha must lie in [0, 1/2).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= alpha < 0.5:
        raise ValueError("alpha must lie in [0, 1/2)")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    cut = float(n) ** alpha
    weights = 1.0 / np.arange(1, n + 1)
    hits = 0
    done = 0
    chunk_cap = max(1, min(trials, (4 * 10**6) // n))
    while done < trials:
        chunk = min(chunk_cap, trials - done)
        b = np.cumsum(rng.standard_normal((chunk, n)), axis=1)
        z = np.cumsum(b * weights, axis=1)
        hits += int((z.max(axis=1) <= cut).sum())
        done += chunk
    return make_estimate("gp-persistence", hits, trials, n=n)


def g_rho(rho):
    """g(rho) = 1 + 2(x/(1-x) + (log(rho)/2) x/(1-x)^2), x = rho^(-1/2).

    Strictly decreasing from +inf (pole at rho = 1) to 1 as rho grows.
    """
    if rho <= 1.0:
        raise ValueError("rho must exceed 1")
    x = rho**-0.5
    return 1.0 + 2.0 * (x / (1.0 - x) + 0.5 * math.log(rho) * x / (1.0 - x) ** 2)


def solve_rho_star(tolerance=1e-12, *, lo=1.000001, hi=1e6, scan_points=80):
    """Root of g(rho) = 5/4 by bisection.

    A log-spaced scan first verifies g decreases over (lo, hi) and that
    the bracket straddles 5/4; bisection then runs until the residual
    |g(mid) - 5/4| drops to ``tolerance``.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    target = 1.25
    grid = np.exp(np.linspace(math.log(lo), math.log(hi), scan_points))
    vals = [g_rho(float(r)) for r in grid]
    if any(b >= a for a, b in zip(vals, vals[1:])):
        raise RuntimeError("g(rho) is not decreasing on the scan grid")
    if not (vals[0] > target > vals[-1]):
        raise RuntimeError(
            f"bracket failure: g({lo}) = {vals[0]:.6g}, g({hi}) = {vals[-1]:.6g}"
        )
    a, b = lo, hi
    for _ in range(500):
        mid = 0.5 * (a + b)
        val = g_rho(mid)
        if abs(val - target) <= tolerance:
            return mid
        if val > target:
            a = mid
        else:
            b = mid
    raise RuntimeError("bisection did not reach the requested tolerance")


def beta_from_rho(rho):
    """The per-log rate beta = 1/(10 log rho), natural log."""
    if rho <= 1.0:
        raise ValueError("rho must exceed 1")
    return 1.0 / (10.0 * math.log(rho))


@dataclass(frozen=True)
class ExponentSolution:
    """The solved constants: rho*, beta, and the maximin triple.

    ``exponent`` is the common value of the three objective terms,
    which equals delta/2.  ``rho_star`` is None when beta was supplied
    directly instead of derived from the g-equation root.
    """

    rho_star: float | None
    beta: float
    delta: float
    gamma: float
    exponent: float

    def residuals(self):
        """Pairwise gaps of the three objective terms; ~0 at a solution."""
        t1 = 0.5 - 2.0 * self.gamma
        t2 = self.delta / 2.0
        t3 = self.beta * (self.gamma - self.delta)
        return (t1 - t2, t2 - t3, t1 - t3)

    def as_dict(self):
        return {
            "rho_star": self.rho_star,
            "beta": self.beta,
            "delta": self.delta,
            "gamma": self.gamma,
            "exponent": self.exponent,
        }


def _search_exponents(beta, iters=120):
    # nested ternary search of max_{delta,gamma} min(...) over
    # 0 < delta < gamma < 1/4; the objective is jointly concave
    def value(delta, gamma):
        return min(0.5 - 2.0 * gamma, delta / 2.0, beta * (gamma - delta))

    def best_gamma(delta):
        a, b = delta, 0.25
        for _ in range(iters):
            m1 = a + (b - a) / 3.0
            m2 = b - (b - a) / 3.0
            if value(delta, m1) < value(delta, m2):
                a = m1
            else:
                b = m2
        g = 0.5 * (a + b)
        return g, value(delta, g)

    a, b = 0.0, 0.25
    for _ in range(iters):
        m1 = a + (b - a) / 3.0
        m2 = b - (b - a) / 3.0
        if best_gamma(m1)[1] < best_gamma(m2)[1]:
            a = m1
        else:
            b = m2
    d = 0.5 * (a + b)
    return d, best_gamma(d)[0]


def optimize_exponents(beta, *, rho_star=None, cross_check=True):
    """Maximin solution of min(1/2 - 2 gamma, delta/2, beta (gamma - delta)).

    At the optimum all three terms are equal, which gives the closed
    form delta = beta/(2 + 5 beta), gamma = 1/4 - delta/4, and
    exponent = delta/2.  A derivative-free nested ternary search over
    the feasible region re-derives the optimum to 1e-6 as a guard
    against algebra slips (disable with cross_check=False).
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    delta = beta / (2.0 + 5.0 * beta)
    gamma = 0.25 - delta / 4.0
    if cross_check:
        d2, g2 = _search_exponents(beta)
        if abs(d2 - delta) > 1e-6 or abs(g2 - gamma) > 1e-6:
            raise RuntimeError(
                "closed-form optimum disagrees with direct search: "
                f"({delta}, {gamma}) vs ({d2}, {g2})"
            )
    return ExponentSolution(
        rho_star=rho_star,
        beta=beta,
        delta=delta,
        gamma=gamma,
        exponent=delta / 2.0,
    )


def solve_exponent_pipeline(tolerance=1e-12, beta_override=None):
    """End-to-end constants: rho* from g(rho) = 5/4, beta = 1/(10 log rho*),
    then the maximin exponents.  ``beta_override`` skips the root step."""
    if beta_override is not None:
        return optimize_exponents(beta_override)
    rho = solve_rho_star(tolerance)
    return optimize_exponents(beta_from_rho(rho), rho_star=rho)


@dataclass(frozen=True)
class DecayFit:
    """OLS slope of log(estimate) against log(n), with standard error."""

    slope: float
    stderr: float


def decay_fit(points):
    """Fit log(estimate) = a + slope * log(n) by least squares.

    ``points`` is a sequence of (n, estimate) pairs with at least three
    entries, estimates strictly inside (0, 1), and at least two
    distinct n.  Returns DecayFit(slope, stderr).
    """
    pts = [(float(n), float(p)) for n, p in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    if any(not 0.0 < p < 1.0 for _, p in pts):
        raise ValueError("estimates must lie strictly inside (0, 1)")
    x = np.log([n for n, _ in pts])
    y = np.log([p for _, p in pts])
    if np.ptp(x) == 0.0:
        raise ValueError("points must span more than one n")
    fit = _sps.linregress(x, y)
    return DecayFit(slope=float(fit.slope), stderr=float(fit.stderr))
