"""TwoNN intrinsic-dimension estimators.

The ratio mu = r2/r1 of second- to first-neighbor distances on a
d-dimensional manifold is Pareto distributed on [1, inf) with density
d * mu^-(d+1), independently of the embedding dimension. All estimators
here recover d from a sample of mu values: closed-form maximum
likelihood, a linear fit to the empirical cumulate, and the restriction
to non-intersecting neighbor triplets.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, asdict

import numpy as np

from .data import ActivationMatrix
from .errors import ConfigurationError, DegenerateDataError, InsufficientDataError
from .neighbors import two_nearest

__all__ = [
    "IdEstimate",
    "estimate_mle",
    "estimate_cumulate",
    "estimate_triplets",
    "estimate_matrix",
    "subsample_estimate",
    "sample_pareto",
]

METHODS = ("mle", "cumulate", "triplets")


@dataclass(frozen=True)
class IdEstimate:
    """An intrinsic-dimension estimate with its uncertainty."""

    d_hat: float
    std: float
    method: str
    n_used: int
    repeats: int = 1
    seed: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _check_mu(mu: np.ndarray) -> np.ndarray:
    mu = np.asarray(mu, dtype=np.float64).ravel()
    if mu.size < 1:
        raise InsufficientDataError("empty mu vector")
    if np.any(mu < 1.0 - 1e-12):
        raise DegenerateDataError("mu values must be >= 1 (got ratios below 1)")
    return np.maximum(mu, 1.0)


def estimate_mle(mu) -> IdEstimate:
    """Closed-form Pareto maximum likelihood: d = N / sum(log mu).

    The reported std is the asymptotic d/sqrt(N) of the Pareto
    likelihood.
    """
    mu = _check_mu(mu)
    total = float(np.log(mu).sum())
    if total <= 0.0:
        raise DegenerateDataError(
            "all mu ratios equal 1: estimated dimension diverges (lattice-like data?)"
        )
    n = mu.size
    d_hat = n / total
    return IdEstimate(d_hat=d_hat, std=d_hat / np.sqrt(n), method="mle", n_used=n)


def estimate_cumulate(mu, discard_fraction: float = 0.1) -> IdEstimate:
    """Linear-regression estimator on the empirical cumulate.

    Sorts mu, sets F(mu_(i)) = i/N, and fits -log(1 - F) = d * log(mu)
    through the origin over the lower (1 - discard_fraction) quantiles.
    The top quantiles are discarded because the transform amplifies the
    noise of the largest order statistics.
    """
    if not 0.0 <= discard_fraction < 1.0:
        raise DegenerateDataError(f"discard_fraction must be in [0,1), got {discard_fraction}")
    mu = _check_mu(mu)
    n = mu.size
    n_eff = int(np.floor(n * (1.0 - discard_fraction)))
    if n_eff < 3:
        raise InsufficientDataError(
            f"only {n_eff} points retained for the cumulate fit; need at least 3"
        )
    mu_sorted = np.sort(mu)[:n_eff]
    f_emp = np.arange(1, n_eff + 1) / n
    x = np.log(mu_sorted)
    with np.errstate(divide="ignore"):  # f_emp = 1 at the top order statistic
        y = -np.log1p(-f_emp)
    ok = np.isfinite(y) & (x > 0)
    if not np.any(ok):
        raise DegenerateDataError("all retained mu equal 1; cumulate fit undefined")
    if np.unique(x[ok]).size == 1:
        warnings.warn("cumulate fit on a single distinct abscissa (low rank)")
    x, y = x[ok], y[ok]
    d_hat = float(x @ y) / float(x @ x)
    return IdEstimate(d_hat=d_hat, std=d_hat / np.sqrt(n), method="cumulate", n_used=n)


def estimate_triplets(m: ActivationMatrix, seed: int = 0) -> IdEstimate:
    """MLE restricted to non-intersecting neighbor triplets.

    Points are visited in seeded-random order; a point is kept when its
    triplet {i, nn1(i), nn2(i)} is disjoint from all triplets kept so
    far, which makes the retained mu values strictly independent.
    """
    m.require_min_rows(9)
    stats = two_nearest(m)
    pos_of_id = {int(rid): p for p, rid in enumerate(m.row_ids)}
    rng = np.random.default_rng(seed)
    order = rng.permutation(m.n)
    used = np.zeros(m.n, dtype=bool)
    picked = []
    for p in order:
        a, b = pos_of_id[int(stats.nn1_idx[p])], pos_of_id[int(stats.nn2_idx[p])]
        if not (used[p] or used[a] or used[b]):
            used[p] = used[a] = used[b] = True
            picked.append(p)
    if len(picked) < 3:
        raise InsufficientDataError(
            f"only {len(picked)} disjoint triplets found; need at least 3"
        )
    base = estimate_mle(stats.mu[picked])
    return IdEstimate(
        d_hat=base.d_hat, std=base.std, method="triplets", n_used=len(picked), seed=seed
    )


def estimate_matrix(
    m: ActivationMatrix,
    method: str = "mle",
    seed: int = 0,
    discard_fraction: float = 0.1,
) -> IdEstimate:
    """Estimate the ID of a (deduplicated) matrix with the chosen method."""
    if method == "triplets":
        return estimate_triplets(m, seed=seed)
    mu = two_nearest(m).mu
    if method == "mle":
        return estimate_mle(mu)
    if method == "cumulate":
        return estimate_cumulate(mu, discard_fraction=discard_fraction)
    raise ConfigurationError(f"unknown method {method!r}; choose from {METHODS}")


def subsample_estimate(
    m: ActivationMatrix,
    fraction: float = 0.9,
    repeats: int = 20,
    method: str = "mle",
    seed: int = 0,
) -> IdEstimate:
    """Mean/std of the ID across seeded random subsamples.

    Each repeat draws floor(fraction * n) rows without replacement,
    recomputes the two nearest neighbors inside the subsample, and
    re-estimates. With a single repeat at fraction 1.0 this reduces
    exactly to the direct estimate.
    """
    n_sub = int(np.floor(fraction * m.n))
    if n_sub < 3:
        raise InsufficientDataError(f"subsample of {n_sub} rows is too small")
    estimates = []
    for rep in range(repeats):
        if n_sub == m.n:
            sub = m
        else:
            rng = np.random.default_rng([seed, rep])
            sub = m.take(np.sort(rng.choice(m.n, size=n_sub, replace=False)))
        try:
            est = estimate_matrix(sub, method=method, seed=seed)
        except DegenerateDataError as exc:
            raise type(exc)(f"repeat {rep}: {exc}") from exc
        estimates.append(est.d_hat)
    estimates = np.asarray(estimates)
    if repeats == 1:
        inner_n = n_sub
        std = float(estimates[0]) / np.sqrt(inner_n)
    else:
        std = float(np.std(estimates, ddof=1))
    return IdEstimate(
        d_hat=float(np.mean(estimates)),
        std=std,
        method=method,
        n_used=n_sub,
        repeats=repeats,
        seed=seed,
    )


def sample_pareto(d: float, n: int, seed: int = 0) -> np.ndarray:
    """Draw n Pareto(d+1) ratio values via the inverse CDF (1-u)^(-1/d)."""
    if d <= 0:
        raise DegenerateDataError(f"d must be positive, got {d}")
    if n < 1:
        raise DegenerateDataError(f"n must be >= 1, got {n}")
    u = np.random.default_rng(seed).random(n)
    return (1.0 - u) ** (-1.0 / d)
