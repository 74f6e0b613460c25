"""Point-cloud container and file I/O (NPY / headerless CSV)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataValidationError, DegenerateDataError

__all__ = ["ActivationMatrix", "load_matrix", "save_matrix"]


@dataclass(frozen=True)
class ActivationMatrix:
    """N x D matrix of real-valued points, one row per sample.

    ``row_ids`` are stable integer identifiers that survive deduplication
    and subsampling, so neighbor indices always refer to rows of the
    original dataset.
    """

    data: np.ndarray
    row_ids: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 2:
            raise DataValidationError(f"expected a 2-D matrix, got ndim={data.ndim}")
        if data.dtype not in (np.float32, np.float64):
            data = data.astype(np.float64)
        object.__setattr__(self, "data", data)
        if self.row_ids is None:
            object.__setattr__(self, "row_ids", np.arange(data.shape[0], dtype=np.int64))
        else:
            ids = np.asarray(self.row_ids, dtype=np.int64)
            if ids.shape != (data.shape[0],):
                raise DataValidationError("row_ids length must match row count")
            if len(np.unique(ids)) != len(ids):
                raise DataValidationError("row_ids must be unique")
            object.__setattr__(self, "row_ids", ids)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def d_embed(self) -> int:
        return self.data.shape[1]

    def validate_finite(self) -> "ActivationMatrix":
        """Raise if any entry is NaN/Inf; returns self for chaining."""
        finite_rows = np.isfinite(self.data).all(axis=1)
        if not finite_rows.all():
            bad = int(np.flatnonzero(~finite_rows)[0])
            raise DataValidationError(f"non-finite entry in row {bad}")
        return self

    def require_min_rows(self, k: int) -> "ActivationMatrix":
        if self.n < k:
            raise DegenerateDataError(f"need at least {k} rows, have {self.n}")
        return self

    def take(self, positions: np.ndarray) -> "ActivationMatrix":
        """Row subset by positional index; row_ids carried along."""
        positions = np.asarray(positions)
        return ActivationMatrix(self.data[positions], self.row_ids[positions])


def _load_npy(path: Path) -> np.ndarray:
    try:
        arr = np.load(path, allow_pickle=False)
    except Exception as exc:  # numpy raises ValueError on bad magic/header
        raise DataValidationError(f"{path}: not a readable NPY file ({exc})") from exc
    if arr.ndim != 2:
        raise DataValidationError(f"{path}: expected 2-D array, got shape {arr.shape}")
    if arr.dtype not in (np.float32, np.float64):
        raise DataValidationError(f"{path}: expected float32/float64, got {arr.dtype}")
    return np.ascontiguousarray(arr)


def _load_csv(path: Path) -> np.ndarray:
    rows = []
    width = None
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = np.fromiter((float(tok) for tok in line.split(",")), dtype=np.float64)
            except ValueError as exc:
                raise DataValidationError(f"{path}: parse error at line {lineno}: {exc}") from exc
            if width is None:
                width = row.size
            elif row.size != width:
                raise DataValidationError(
                    f"{path}: line {lineno} has {row.size} fields, expected {width}"
                )
            rows.append(row)
    if not rows:
        raise DataValidationError(f"{path}: empty CSV")
    return np.vstack(rows)


def load_matrix(path, fmt: str | None = None) -> ActivationMatrix:
    """Load an N x D matrix from an ``.npy`` or headerless ``.csv`` file.

    ``fmt`` is inferred from the extension when omitted. Non-finite
    entries raise a validation error naming the offending row.
    """
    path = Path(path)
    if not path.exists():
        raise DataValidationError(f"{path}: no such file")
    if fmt is None:
        fmt = path.suffix.lstrip(".").lower()
    if fmt == "npy":
        arr = _load_npy(path)
    elif fmt == "csv":
        arr = _load_csv(path)
    else:
        raise DataValidationError(f"{path}: unsupported format {fmt!r} (use npy or csv)")
    finite_rows = np.isfinite(arr).all(axis=1)
    if not finite_rows.all():
        bad = int(np.flatnonzero(~finite_rows)[0])
        raise DataValidationError(f"{path}: non-finite value in row {bad}")
    return ActivationMatrix(arr)


def save_matrix(m: ActivationMatrix, path, fmt: str | None = None, sidecar: dict | None = None):
    """Write a matrix as NPY (default) or CSV; optional JSON sidecar."""
    path = Path(path)
    if fmt is None:
        fmt = path.suffix.lstrip(".").lower() or "npy"
    if fmt == "npy":
        np.save(path, m.data)
    elif fmt == "csv":
        np.savetxt(path, m.data, delimiter=",", fmt="%.17g")
    else:
        raise DataValidationError(f"unsupported format {fmt!r}")
    if sidecar is not None:
        path.with_suffix(".json").write_text(json.dumps(sidecar, indent=2) + "\n")
