"""Scale dependence of the ID via decimation, and a stability verdict.

A well-defined intrinsic dimension depends only weakly on the sample
size. The curve is built by k-fold decimation: for k = k_max .. 1 the
(shuffled) dataset is split into k disjoint folds of ~N/k points, the ID
is estimated on each fold, and mean/std across folds are recorded. An
estimate that keeps growing as the sample grows is the signature of an
ill-defined (e.g. full-dimensional Gaussian) dimensionality.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np
from scipy.stats import spearmanr

from .data import ActivationMatrix
from .errors import ConfigurationError, DegenerateDataError
from .twonn import estimate_matrix

__all__ = ["DecimationCurve", "decimation_curve", "stability_verdict",
           "WELL_DEFINED", "ILL_DEFINED", "INCONCLUSIVE"]

WELL_DEFINED = "well_defined"
ILL_DEFINED = "ill_defined"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DecimationCurve:
    """Ordered (k, n_sub, id_mean, id_std) entries, k_max down to 1."""

    k: np.ndarray
    n_sub: np.ndarray
    id_mean: np.ndarray
    id_std: np.ndarray
    method: str
    seed: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema_version": 1,
                "method": self.method,
                "seed": self.seed,
                "points": [
                    {"k": int(k), "n_sub": int(n), "id_mean": float(m), "id_std": float(s)}
                    for k, n, m, s in zip(self.k, self.n_sub, self.id_mean, self.id_std)
                ],
            },
            indent=2,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("k,n_sub,id_mean,id_std\n")
        for k, n, m, s in zip(self.k, self.n_sub, self.id_mean, self.id_std):
            buf.write(f"{int(k)},{int(n)},{m:.10g},{s:.10g}\n")
        return buf.getvalue()


def decimation_curve(
    m: ActivationMatrix,
    k_max: int = 20,
    method: str = "mle",
    seed: int = 0,
) -> DecimationCurve:
    """ID mean/std per fold count k = k_max .. 1 on seeded disjoint folds."""
    if k_max < 1:
        raise ConfigurationError(f"k_max must be >= 1, got {k_max}")
    if m.n // k_max < 10:
        raise ConfigurationError(
            f"n/k_max = {m.n // k_max} < 10; choose a smaller k_max"
        )
    ks, n_subs, means, stds = [], [], [], []
    for k in range(k_max, 0, -1):
        rng = np.random.default_rng([seed, k])
        perm = rng.permutation(m.n)
        folds = np.array_split(perm, k)
        ids = [estimate_matrix(m.take(np.sort(f)), method=method, seed=seed).d_hat
               for f in folds]
        ks.append(k)
        n_subs.append(m.n // k)
        means.append(float(np.mean(ids)))
        stds.append(float(np.std(ids, ddof=1)) if k > 1 else 0.0)
    return DecimationCurve(
        k=np.asarray(ks), n_sub=np.asarray(n_subs),
        id_mean=np.asarray(means), id_std=np.asarray(stds),
        method=method, seed=seed,
    )


def stability_verdict(curve: DecimationCurve, rel_tol: float = 0.1) -> str:
    """Classify a decimation curve.

    well_defined: every id_mean is within rel_tol of the full-sample
    (k=1) value. ill_defined: the ID grows with sample size (Spearman
    rho > 0.9 between n_sub and id_mean) by more than rel_tol overall.
    Anything else: inconclusive.
    """
    if curve.k.size < 3:
        raise DegenerateDataError("need at least 3 curve entries for a verdict")
    full = curve.id_mean[curve.k == 1]
    if full.size != 1:
        raise DegenerateDataError("curve has no k=1 entry")
    full = float(full[0])
    if np.all(np.abs(curve.id_mean - full) <= rel_tol * full):
        return WELL_DEFINED
    order = np.argsort(curve.n_sub)
    lo, hi = curve.id_mean[order[0]], curve.id_mean[order[-1]]
    rho = spearmanr(curve.n_sub, curve.id_mean).statistic
    if rho > 0.9 and (hi - lo) > rel_tol * lo:
        return ILL_DEFINED
    return INCONCLUSIVE
