"""Layer profiles, relative depth, the output-layer class bound, Pearson r.

A layer profile runs the subsample ID estimator over every checkpoint of
a network manifest and pairs the estimates with relative depths, the
standard x-axis for cross-architecture comparison. The manifest is a
JSON document::

    {"network_name": str, "total_layers": int,
     "checkpoints": [{"name": str, "order_index": int, "d_embed": int,
                      "matrix_path": str, "category": str?}, ...]}

When checkpoints carry categories, per-layer estimates are the mean of
the per-category IDs and the reported std is taken across categories.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .data import load_matrix
from .errors import ConfigurationError, DataValidationError, DegenerateDataError
from .twonn import IdEstimate, subsample_estimate

__all__ = [
    "LayerCheckpoint",
    "LayerProfile",
    "ClassBound",
    "load_manifest",
    "profile",
    "relative_depth",
    "min_id_bound",
    "pearson",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class LayerCheckpoint:
    name: str
    order_index: int
    total_layers: int
    d_embed: int
    matrix_path: str
    category: str | None = None

    @property
    def relative_depth(self) -> float:
        return relative_depth(self.order_index, self.total_layers)


@dataclass(frozen=True)
class LayerProfile:
    network_name: str
    checkpoints: list[LayerCheckpoint]
    estimates: list[IdEstimate]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "network_name": self.network_name,
            "layers": [
                {
                    "name": c.name,
                    "order_index": c.order_index,
                    "relative_depth": c.relative_depth,
                    "d_embed": c.d_embed,
                    **e.to_dict(),
                }
                for c, e in zip(self.checkpoints, self.estimates)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        lines = ["name,order_index,relative_depth,d_embed,d_hat,std,method,n_used,repeats"]
        for c, e in zip(self.checkpoints, self.estimates):
            lines.append(
                f"{c.name},{c.order_index},{c.relative_depth:.10g},{c.d_embed},"
                f"{e.d_hat:.10g},{e.std:.10g},{e.method},{e.n_used},{e.repeats}"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ClassBound:
    """Smallest integer ID whose 2^ID binary code can separate n_classes."""

    n_classes: int
    min_id: int


def relative_depth(order_index: int, total_layers: int) -> float:
    """Layer position as a fraction of network depth, in [0, 1]."""
    if total_layers < 1:
        raise ConfigurationError(f"total_layers must be >= 1, got {total_layers}")
    if not 0 <= order_index <= total_layers:
        raise ConfigurationError(
            f"order_index {order_index} outside [0, {total_layers}]"
        )
    return order_index / total_layers


def min_id_bound(n_classes: int) -> ClassBound:
    """ceil(log2 n_classes): the ID needed to binary-encode that many classes."""
    if n_classes < 1:
        raise ConfigurationError(f"n_classes must be >= 1, got {n_classes}")
    return ClassBound(n_classes=n_classes, min_id=max(0, math.ceil(math.log2(n_classes))))


def pearson(x, y) -> float:
    """Sample Pearson correlation coefficient."""
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size or x.size < 2:
        raise ConfigurationError("pearson needs two equal-length vectors of size >= 2")
    xc = x - x.mean()
    yc = y - y.mean()
    denom = np.sqrt((xc @ xc) * (yc @ yc))
    if denom == 0.0:
        raise DegenerateDataError("correlation undefined for a constant vector")
    return float(np.clip((xc @ yc) / denom, -1.0, 1.0))


def load_manifest(path) -> tuple[str, list[LayerCheckpoint]]:
    """Parse and validate a manifest JSON file."""
    path = Path(path)
    if not path.exists():
        raise DataValidationError(f"{path}: no such file")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DataValidationError(f"{path}: invalid JSON at char {exc.pos}") from exc
    try:
        name = doc["network_name"]
        total = int(doc["total_layers"])
        entries = doc["checkpoints"]
    except (KeyError, TypeError) as exc:
        raise DataValidationError(f"{path}: missing manifest field: {exc}") from exc
    if not entries:
        raise DataValidationError(f"{path}: manifest has no checkpoints")
    checkpoints = []
    for e in entries:
        try:
            cp = LayerCheckpoint(
                name=e["name"],
                order_index=int(e["order_index"]),
                total_layers=total,
                d_embed=int(e["d_embed"]),
                matrix_path=str(e["matrix_path"]),
                category=e.get("category"),
            )
        except (KeyError, TypeError) as exc:
            raise DataValidationError(f"{path}: malformed checkpoint entry: {exc}") from exc
        cp.relative_depth  # bounds check
        checkpoints.append(cp)
    return name, checkpoints


def profile(
    manifest_path,
    method: str = "mle",
    fraction: float = 0.9,
    repeats: int = 20,
    seed: int = 0,
) -> LayerProfile:
    """Estimate the ID at every checkpoint of a manifest.

    Checkpoints sharing a name (differing only in category) are collapsed
    into one layer whose d_hat is the mean of the per-category estimates
    and whose std is the spread across categories.
    """
    network_name, checkpoints = load_manifest(manifest_path)
    base = Path(manifest_path).parent
    groups: dict[tuple[int, str], list[LayerCheckpoint]] = {}
    for cp in checkpoints:
        groups.setdefault((cp.order_index, cp.name), []).append(cp)

    out_cps: list[LayerCheckpoint] = []
    out_est: list[IdEstimate] = []
    for (order_index, name), members in sorted(groups.items()):
        per_cat = []
        for cp in members:
            mpath = Path(cp.matrix_path)
            if not mpath.is_absolute():
                mpath = base / mpath
            if not mpath.exists():
                raise DataValidationError(f"checkpoint {cp.name!r}: missing file {mpath}")
            matrix = load_matrix(mpath)
            if matrix.n < 3:
                raise DegenerateDataError(f"checkpoint {cp.name!r}: only {matrix.n} rows")
            per_cat.append(
                subsample_estimate(
                    matrix, fraction=fraction, repeats=repeats, method=method, seed=seed
                )
            )
        first = members[0]
        if len(per_cat) == 1:
            est = per_cat[0]
        else:
            vals = np.array([e.d_hat for e in per_cat])
            est = IdEstimate(
                d_hat=float(vals.mean()),
                std=float(vals.std(ddof=1)),
                method=method,
                n_used=per_cat[0].n_used,
                repeats=repeats,
                seed=seed,
            )
        out_cps.append(first)
        out_est.append(est)
    return LayerProfile(network_name=network_name, checkpoints=out_cps, estimates=out_est)
