"""Linear (PCA) baselines: eigenspectra, PC-ID, Gaussian surrogates.

The PCA spectrum of the correlation (or covariance) matrix gives a
linear notion of dimensionality: the smallest number of components whose
cumulative variance fraction reaches a threshold (PC-ID). Comparing the
TwoNN ID of a dataset against that of a Gaussian surrogate with the same
second-order moments exposes curvature: the surrogate destroys all
structure beyond the covariance, so a large ID gap means the data lie on
a curved, nonlinear manifold.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .data import ActivationMatrix
from .errors import DegenerateDataError

__all__ = ["SpectrumReport", "spectrum", "pc_id", "gaussian_surrogate"]

# above this width (with n << D) the spectrum goes through the n x n Gram
# matrix, which has the same nonzero eigenvalues as the D x D covariance
_GRAM_CUTOFF = 4096


@dataclass(frozen=True)
class SpectrumReport:
    """Descending eigenvalues with cumulative variance fractions."""

    eigenvalues: np.ndarray
    cumulative_fraction: np.ndarray
    used_correlation: bool
    pc_id: int
    threshold: float
    dropped_columns: int = 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("rank,eigenvalue,cumulative_fraction\n")
        for i, (ev, cf) in enumerate(zip(self.eigenvalues, self.cumulative_fraction), 1):
            buf.write(f"{i},{ev:.10g},{cf:.10g}\n")
        return buf.getvalue()


def _column_spectrum(z: np.ndarray, d_out: int) -> np.ndarray:
    """Eigenvalues (descending, >= 0) of z.T z / (n-1), padded to d_out."""
    n, d = z.shape
    if d <= _GRAM_CUTOFF or d <= n:
        mat = (z.T @ z) / (n - 1)
    else:
        mat = (z @ z.T) / (n - 1)
    ev = np.linalg.eigvalsh(mat)[::-1]
    ev = np.clip(ev, 0.0, None)
    out = np.zeros(d_out)
    out[: min(ev.size, d_out)] = ev[:d_out]
    return out


def spectrum(
    m: ActivationMatrix,
    use_correlation: bool = True,
    threshold: float = 0.9,
) -> SpectrumReport:
    """PCA eigenspectrum of the correlation (default) or covariance matrix.

    Zero-variance columns are dropped before a correlation analysis and
    reported in ``dropped_columns``.
    """
    m.require_min_rows(2)
    z = m.data - m.data.mean(axis=0)
    dropped = 0
    if use_correlation:
        sd = z.std(axis=0, ddof=1)
        alive = sd > 0
        dropped = int(np.count_nonzero(~alive))
        if dropped == m.d_embed:
            raise DegenerateDataError("all columns are constant; spectrum undefined")
        z = z[:, alive] / sd[alive]
    else:
        if not np.any(z.std(axis=0) > 0):
            raise DegenerateDataError("all columns are constant; spectrum undefined")
    ev = _column_spectrum(np.asarray(z, dtype=np.float64), z.shape[1])
    total = ev.sum()
    cumulative = np.cumsum(ev) / total
    idx = int(np.searchsorted(cumulative, threshold - 1e-12))
    return SpectrumReport(
        eigenvalues=ev,
        cumulative_fraction=cumulative,
        used_correlation=use_correlation,
        pc_id=min(idx, cumulative.size - 1) + 1,
        threshold=threshold,
        dropped_columns=dropped,
    )


def pc_id(report: SpectrumReport, threshold: float = 0.9) -> int:
    """Smallest component count whose cumulative fraction reaches threshold."""
    if not 0.0 < threshold <= 1.0:
        raise DegenerateDataError(f"threshold must be in (0,1], got {threshold}")
    idx = np.searchsorted(report.cumulative_fraction, threshold - 1e-12)
    return int(min(idx, report.cumulative_fraction.size - 1) + 1)


def gaussian_surrogate(m: ActivationMatrix, seed: int = 0) -> ActivationMatrix:
    """Sample a Gaussian dataset with m's empirical mean and covariance.

    For narrow matrices the covariance is factorized by eigendecomposition
    (negative fp eigenvalues clamped to zero); for wide matrices the
    centered data matrix itself is used as an exact symmetric factor,
    which avoids forming the D x D covariance. Rank deficiency is handled
    naturally in both paths.
    """
    m.require_min_rows(2)
    rng = np.random.default_rng(seed)
    x = m.data
    n, d = x.shape
    mean = x.mean(axis=0)
    z = (x - mean) / np.sqrt(n - 1)
    if d <= n or d <= _GRAM_CUTOFF:
        cov = z.T @ z
        ev, vec = np.linalg.eigh(cov)
        ev = np.clip(ev, 0.0, None)
        factor = vec * np.sqrt(ev)  # cov = factor @ factor.T
        g = rng.standard_normal((n, factor.shape[1]))
        out = mean + g @ factor.T
    else:
        # z.T @ z == cov exactly, so g @ z has the right second moments
        g = rng.standard_normal((n, n))
        out = mean + g @ z
    return ActivationMatrix(np.ascontiguousarray(out))
