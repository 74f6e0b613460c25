"""Exact first/second nearest neighbors with a blocked Euclidean kernel.

Distances for candidate selection use the ||a||^2 + ||b||^2 - 2 a.b
expansion (one BLAS matmul per row block); the shortlisted candidates are
then re-evaluated by direct subtraction, which is immune to the
catastrophic cancellation the expansion can suffer when points are much
closer to each other than to the origin. Ties are broken toward the
smaller row_id, so results are deterministic and identical to a
sequential naive scan.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import ActivationMatrix
from .errors import DegenerateDataError, DuplicatePointError

__all__ = ["NeighborStats", "two_nearest", "dedupe"]

# Candidates shortlisted per point before the exact re-check. Two would
# suffice in exact arithmetic; a small surplus absorbs expansion-form
# rounding that could swap near-ties.
_N_CANDIDATES = 8


@dataclass(frozen=True)
class NeighborStats:
    """Per-point distances to the two nearest neighbors and their ratio."""

    r1: np.ndarray
    r2: np.ndarray
    nn1_idx: np.ndarray  # row_ids, not positions
    nn2_idx: np.ndarray
    mu: np.ndarray

    @property
    def n(self) -> int:
        return self.r1.shape[0]


def _exact_sq_dists(x_rows: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Direct-subtraction squared distances, accumulated in float64."""
    diff = x_rows - y
    return np.einsum("...i,...i->...", diff, diff, dtype=np.float64)


def two_nearest(m: ActivationMatrix, block_size: int = 512) -> NeighborStats:
    """Exact Euclidean 2-NN for every row of ``m``.

    Requires a deduplicated matrix with at least 3 rows; a zero
    first-neighbor distance raises ``DuplicatePointError``.
    """
    m.require_min_rows(3)
    x = m.data
    n = m.n
    sq = np.einsum("ij,ij->i", x, x)

    k = min(_N_CANDIDATES, n - 1)
    r1 = np.empty(n)
    r2 = np.empty(n)
    nn1 = np.empty(n, dtype=np.int64)
    nn2 = np.empty(n, dtype=np.int64)

    for start in range(0, n, block_size):
        stop = min(start + block_size, n)
        g = x[start:stop] @ x.T
        d2 = sq[None, :] - 2.0 * g
        d2 += sq[start:stop, None]
        b = stop - start
        d2[np.arange(b), np.arange(start, stop)] = np.inf
        cand = np.argpartition(d2, k - 1, axis=1)[:, :k]

        # exact re-check of the shortlist, in sub-chunks to bound the gather
        chunk = max(1, min(64, int(1e7 // max(1, k * x.shape[1]) + 1)))
        for cs in range(0, b, chunk):
            ce = min(cs + chunk, b)
            rows = cand[cs:ce]
            exact = _exact_sq_dists(x[rows], x[start + cs:start + ce, None, :])
            # sort by (distance, row_id): lower row_id wins ties
            order = np.lexsort((rows, exact), axis=1)[:, :2]
            take = np.take_along_axis
            d_top = np.sqrt(take(exact, order, axis=1))
            i_top = take(rows, order, axis=1)
            r1[start + cs:start + ce] = d_top[:, 0]
            r2[start + cs:start + ce] = d_top[:, 1]
            nn1[start + cs:start + ce] = i_top[:, 0]
            nn2[start + cs:start + ce] = i_top[:, 1]

    if np.any(r1 == 0.0):
        bad = int(np.flatnonzero(r1 == 0.0)[0])
        raise DuplicatePointError(
            f"row {int(m.row_ids[bad])} has a zero-distance neighbor; run dedupe first"
        )
    mu = r2 / r1
    return NeighborStats(
        r1=r1,
        r2=r2,
        nn1_idx=m.row_ids[nn1],
        nn2_idx=m.row_ids[nn2],
        mu=mu,
    )


def dedupe(m: ActivationMatrix, tol: float = 0.0) -> tuple[ActivationMatrix, int]:
    """Remove every row that has a twin with a lower row index within
    Euclidean distance ``tol``. Returns the reduced matrix and the number
    of rows removed.
    """
    if tol < 0:
        raise DegenerateDataError(f"tol must be nonnegative, got {tol}")
    x = m.data
    n = m.n
    if tol == 0.0:
        _, first = np.unique(x, axis=0, return_index=True)
        keep = np.zeros(n, dtype=bool)
        keep[first] = True
    else:
        keep = np.ones(n, dtype=bool)
        sq = np.einsum("ij,ij->i", x, x)
        tol2 = tol * tol
        for start in range(1, n, 512):
            stop = min(start + 512, n)
            d2 = sq[None, :stop] - 2.0 * (x[start:stop] @ x[:stop].T)
            d2 += sq[start:stop, None]
            for i in range(start, stop):
                row = d2[i - start, :i]
                close = np.flatnonzero(row <= tol2 + 1e-12 * max(tol2, 1.0))
                # confirm shortlisted hits by direct subtraction
                if close.size and np.any(_exact_sq_dists(x[close], x[i]) <= tol2):
                    keep[i] = False
    removed = int(n - keep.sum())
    out = m.take(np.flatnonzero(keep))
    if out.n < 2:
        raise DegenerateDataError(
            f"only {out.n} row remains after dedupe; data is degenerate"
        )
    return out, removed
