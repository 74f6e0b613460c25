"""Profiling the dimension of a network's activations, layer by layer.

The report layer consumes a manifest: a JSON file naming one activation
matrix per checkpoint (layer), in depth order. This demo fabricates a
small "network" whose layers are synthetic clouds of known dimension,
runs the profile, and shows the two auxiliary statistics that go with
it: the class-count lower bound and the brightness-perturbation probe.

Run:  python demos/layer_profile_walkthrough.py
"""

import json
import tempfile
from pathlib import Path

from intdim import (
    LuminanceConfig,
    embed_orthogonal,
    estimate_matrix,
    gen_manifold,
    min_id_bound,
    perturb_luminance,
    profile,
    save_matrix,
)
from intdim.manifolds import ManifoldSpec

# ---------------------------------------------------------------------------
# 1. Fabricate activations: a rise-then-fall dimension profile.
# ---------------------------------------------------------------------------
workdir = Path(tempfile.mkdtemp(prefix="profile_demo_"))
layer_dims = [("input", 3), ("conv1", 6), ("conv2", 9), ("fc1", 5), ("fc2", 2)]
checkpoints = []
for i, (name, d) in enumerate(layer_dims):
    m, _ = gen_manifold(ManifoldSpec("hypercube", d, 1200, seed=10 + i, d_embed=64))
    save_matrix(m, workdir / f"{name}.npy")
    checkpoints.append(
        {"name": name, "order_index": i, "d_embed": 64, "matrix_path": f"{name}.npy"}
    )
manifest = workdir / "manifest.json"
manifest.write_text(json.dumps({
    "network_name": "toy-net",
    "total_layers": len(layer_dims),
    "checkpoints": checkpoints,
}))

prof = profile(manifest, repeats=5, seed=0)
print(f"Layer profile of {prof.network_name!r}:")
for cp, est in zip(prof.checkpoints, prof.estimates):
    bar = "#" * round(4 * est.d_hat)
    print(f"  depth {cp.relative_depth:4.2f}  {cp.name:6s} "
          f"d_hat = {est.d_hat:5.2f} +- {est.std:4.2f}  {bar}")

# ---------------------------------------------------------------------------
# 2. How low can the last layer go? A classifier that separates C classes
#    needs at least ceil(log2 C) dimensions in its final representation.
# ---------------------------------------------------------------------------
print("\nLower bound on the final-layer dimension:")
for c in (2, 10, 1000):
    print(f"  {c:5d} classes -> at least {min_id_bound(c).min_id} dimensions")

# ---------------------------------------------------------------------------
# 3. The brightness probe: adding a random per-sample offset along the
#    all-ones direction stretches the cloud along a single line. As the
#    offsets grow, that one direction dominates and the measured
#    dimension collapses toward 1 -- a useful check that the estimator
#    responds to the geometry actually present in pixel data.
# ---------------------------------------------------------------------------
base, _ = gen_manifold(ManifoldSpec("hypercube", 8, 2000, seed=6))
img_like = perturb_luminance(
    embed_orthogonal(base, 784, seed=7), LuminanceConfig(10.0, seed=99)
)
print("\nBrightness perturbation sweep (784-dimensional cloud, true d = 8):")
for lam in (0, 10, 100, 1000):
    est = estimate_matrix(perturb_luminance(img_like, LuminanceConfig(lam, seed=8)))
    print(f"  lambda = {lam:5.0f}  d_hat = {est.d_hat:5.2f}")
