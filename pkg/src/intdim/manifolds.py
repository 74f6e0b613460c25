"""Synthetic datasets of known intrinsic dimension, plus perturbations.

These generators are the validation oracles of the toolkit: every
estimator claim is checked against data whose true dimension is known by
construction. ``embed_orthogonal`` lifts a dataset into a higher ambient
dimension while preserving all pairwise distances exactly, and
``perturb_luminance`` stretches image-like data along the all-ones
direction the way a per-image brightness offset does.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .data import ActivationMatrix
from .errors import ConfigurationError

__all__ = [
    "ManifoldSpec",
    "LuminanceConfig",
    "gen_manifold",
    "embed_orthogonal",
    "perturb_luminance",
    "nonlinear_feature_embed",
    "KINDS",
]

KINDS = ("line", "hypercube", "hypersphere", "swiss_roll", "gaussian_blob")

# minimal ambient dimension as a function of intrinsic dimension
_MIN_AMBIENT = {
    "line": lambda d: 1,
    "hypercube": lambda d: d,
    "hypersphere": lambda d: d + 1,
    "swiss_roll": lambda d: 3,
    "gaussian_blob": lambda d: d,
}


@dataclass(frozen=True)
class ManifoldSpec:
    """Recipe for a synthetic dataset with a known intrinsic dimension."""

    kind: str
    d_intrinsic: int
    n: int
    d_embed: int | None = None
    noise: float = 0.0
    seed: int = 0

    def sidecar(self) -> dict:
        meta = asdict(self)
        meta["true_id"] = self.d_intrinsic
        return meta


def _validate(spec: ManifoldSpec) -> int:
    if spec.kind not in KINDS:
        raise ConfigurationError(f"unknown manifold kind {spec.kind!r}; choose from {KINDS}")
    if spec.d_intrinsic < 1:
        raise ConfigurationError(f"d_intrinsic must be >= 1, got {spec.d_intrinsic}")
    if spec.kind == "line" and spec.d_intrinsic != 1:
        raise ConfigurationError("line has d_intrinsic = 1")
    if spec.kind == "swiss_roll" and spec.d_intrinsic != 2:
        raise ConfigurationError("swiss_roll has d_intrinsic = 2")
    if spec.n < 3:
        raise ConfigurationError(f"n must be >= 3, got {spec.n}")
    if spec.noise < 0:
        raise ConfigurationError(f"noise must be nonnegative, got {spec.noise}")
    minimal = _MIN_AMBIENT[spec.kind](spec.d_intrinsic)
    if spec.d_embed is not None and spec.d_embed < minimal:
        raise ConfigurationError(
            f"d_embed={spec.d_embed} below minimal ambient dimension {minimal} for {spec.kind}"
        )
    return minimal


def gen_manifold(spec: ManifoldSpec) -> tuple[ActivationMatrix, int]:
    """Sample the manifold named by ``spec``; returns (matrix, true_id).

    Points are drawn uniformly on the manifold in its minimal ambient
    dimension, optionally perturbed by isotropic Gaussian noise, then
    lifted to ``spec.d_embed`` with a seeded orthonormal map.
    """
    minimal = _validate(spec)
    rng = np.random.default_rng(spec.seed)
    d, n = spec.d_intrinsic, spec.n
    if spec.kind == "line":
        x = rng.random((n, 1))
    elif spec.kind == "hypercube":
        x = rng.random((n, d))
    elif spec.kind == "hypersphere":
        g = rng.standard_normal((n, d + 1))
        x = g / np.linalg.norm(g, axis=1, keepdims=True)
    elif spec.kind == "swiss_roll":
        t = rng.uniform(1.5 * np.pi, 4.5 * np.pi, n)
        h = rng.uniform(0.0, 21.0, n)
        x = np.column_stack([t * np.cos(t), h, t * np.sin(t)])
    else:  # gaussian_blob
        x = rng.standard_normal((n, d))
    if spec.noise > 0:
        x = x + spec.noise * rng.standard_normal(x.shape)
    m = ActivationMatrix(x)
    if spec.d_embed is not None and spec.d_embed > minimal:
        m = embed_orthogonal(m, spec.d_embed, seed=spec.seed + 1)
    return m, spec.d_intrinsic


def embed_orthogonal(
    m: ActivationMatrix,
    d_target: int,
    seed: int = 0,
    dtype=None,
) -> ActivationMatrix:
    """Lift to ``d_target`` dimensions with a seeded orthonormal map.

    The map comes from the QR factorization of a Gaussian matrix, so the
    columns are orthonormal by construction and all pairwise distances
    are preserved. ``dtype`` lets callers produce float32 output without
    materializing a float64 intermediate (useful at D ~ 1e5).
    """
    d = m.d_embed
    if d_target < d:
        raise ConfigurationError(f"d_target={d_target} < current dimension {d}")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((d_target, d)))
    q = q * np.sign(np.diag(r))  # fix signs so the map is seed-stable
    out_dtype = dtype or m.data.dtype
    out = np.empty((m.n, d_target), dtype=out_dtype)
    for start in range(0, m.n, 1024):
        stop = min(start + 1024, m.n)
        out[start:stop] = m.data[start:stop] @ q.T
    return ActivationMatrix(out, m.row_ids)


@dataclass(frozen=True)
class LuminanceConfig:
    """Strength and seed of the per-row brightness perturbation."""

    lam: float
    seed: int = 0

    def __post_init__(self):
        if self.lam < 0:
            raise ConfigurationError(f"lambda must be nonnegative, got {self.lam}")


def perturb_luminance(m: ActivationMatrix, cfg: LuminanceConfig) -> ActivationMatrix:
    """Add lam * xi_i (xi_i ~ U[0,1], one draw per row) to every coordinate.

    This stretches the cloud along the all-ones direction, mimicking
    random per-image luminance offsets; components orthogonal to the
    all-ones vector are untouched.
    """
    if cfg.lam == 0.0:
        return m
    xi = np.random.default_rng(cfg.seed).random(m.n)
    return ActivationMatrix(m.data + (cfg.lam * xi)[:, None], m.row_ids)


def nonlinear_feature_embed(
    m: ActivationMatrix,
    d_target: int,
    seed: int = 0,
    frequency: float = 6.0,
) -> ActivationMatrix:
    """Curl a dataset through ``d_target`` dimensions with random sinusoids.

    Each output coordinate is sin(w . x + phi) with seeded random w, phi.
    The image is a curved manifold of the same intrinsic dimension whose
    covariance has full rank, unlike the rank-preserving orthogonal lift;
    this is the "low-ID but curved" regime where linear baselines and
    covariance-matched surrogates overshoot badly.
    """
    if d_target < 1:
        raise ConfigurationError(f"d_target must be >= 1, got {d_target}")
    rng = np.random.default_rng(seed)
    w = frequency * rng.standard_normal((m.d_embed, d_target))
    phi = rng.uniform(0.0, 2.0 * np.pi, d_target)
    return ActivationMatrix(np.sin(m.data @ w + phi), m.row_ids)
