"""Release acceptance suite.

Each test covers one release criterion end to end and prints a single
PASS/FAIL line (visible with ``pytest -s`` or in captured output). All
sub-checks of a criterion are evaluated before the verdict so a failure
report names every violated bound, not just the first.
"""

import json
import time
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import spearmanr

from intdim import (
    ActivationMatrix,
    ILL_DEFINED,
    WELL_DEFINED,
    decimation_curve,
    embed_orthogonal,
    estimate_cumulate,
    estimate_matrix,
    estimate_mle,
    gaussian_surrogate,
    gen_manifold,
    sample_pareto,
    spectrum,
    stability_verdict,
    two_nearest,
)
from intdim.manifolds import ManifoldSpec, nonlinear_feature_embed
from intdim.report import min_id_bound, pearson

from conftest import naive_two_nearest

REPO_ROOT = Path(__file__).resolve().parents[1]


def _verdict(name: str, checks: list[tuple[str, bool]]):
    """Print one PASS/FAIL line for the criterion, then assert."""
    failed = [label for label, ok in checks if not ok]
    status = "PASS" if not failed else "FAIL"
    detail = "" if not failed else " -- " + "; ".join(failed)
    print(f"\n[acceptance] {name}: {status}{detail}")
    assert not failed, f"{name}: {failed}"


def test_pareto_recovery():
    """MLE within 5% in >= 19/20 seeds per d; cumulate within 5% of MLE."""
    checks = []
    t0 = time.perf_counter()
    for d in (1, 2, 5, 10, 20):
        hits = 0
        worst_gap = 0.0
        for seed in range(20):
            mu = sample_pareto(d, 10_000, seed=seed)
            mle = estimate_mle(mu)
            if abs(mle.d_hat - d) / d <= 0.05:
                hits += 1
            cum = estimate_cumulate(mu)
            worst_gap = max(worst_gap, abs(cum.d_hat - mle.d_hat) / mle.d_hat)
        checks.append((f"d={d}: mle within 5% in {hits}/20 seeds", hits >= 19))
        checks.append((f"d={d}: cumulate-vs-mle gap {worst_gap:.4f}", worst_gap <= 0.05))
    elapsed = time.perf_counter() - t0
    checks.append((f"runtime {elapsed:.2f}s", elapsed < 10.0))
    _verdict("pareto-recovery", checks)


@pytest.mark.slow
def test_known_id_manifolds_high_dimensional():
    """Hypercubes lifted to D=1e4: d in {2,5,7,10} within 10%; d=20 in
    [0.7d, 1.05d]."""
    checks = []
    t0 = time.perf_counter()
    for d in (2, 5, 7, 10):
        lat, _ = gen_manifold(ManifoldSpec("hypercube", d, 10_000, seed=d))
        m = embed_orthogonal(lat, 10_000, seed=100 + d, dtype=np.float32)
        d_hat = estimate_matrix(m).d_hat
        checks.append((f"d={d}: d_hat={d_hat:.3f}", abs(d_hat - d) / d <= 0.10))
    lat, _ = gen_manifold(ManifoldSpec("hypercube", 20, 10_000, seed=20))
    m = embed_orthogonal(lat, 10_000, seed=120, dtype=np.float32)
    d_hat = estimate_matrix(m).d_hat
    checks.append((f"d=20: d_hat={d_hat:.3f}", 0.7 * 20 <= d_hat <= 1.05 * 20))
    elapsed = time.perf_counter() - t0
    checks.append((f"runtime {elapsed:.1f}s", elapsed < 300.0))
    _verdict("known-id-manifolds", checks)


def test_curvature_gap_swiss_roll():
    """Swiss roll: TwoNN sees the 2-D sheet, the linear baseline needs
    all 3 coordinates and shows no rank-1 dominance."""
    roll, _ = gen_manifold(ManifoldSpec("swiss_roll", 2, 10_000, seed=5))
    d_hat = estimate_matrix(roll).d_hat
    rep = spectrum(roll)
    checks = [
        (f"twonn d_hat={d_hat:.3f}", 1.8 <= d_hat <= 2.2),
        (f"pc_id={rep.pc_id}", rep.pc_id == 3),
        (
            f"top eigenvalue fraction {rep.cumulative_fraction[0]:.3f}",
            rep.cumulative_fraction[0] < 0.5,
        ),
    ]
    _verdict("curvature-gap", checks)


def test_surrogate_divergence():
    """A curved 2-D manifold in D=512 keeps a low, sample-size-stable ID;
    its covariance-matched Gaussian surrogate does not."""
    lat, _ = gen_manifold(ManifoldSpec("hypercube", 2, 2000, seed=23))
    curved = nonlinear_feature_embed(lat, 512, seed=24)
    surr = gaussian_surrogate(curved, seed=25)

    id_orig = estimate_matrix(curved).d_hat
    id_surr = estimate_matrix(surr).d_hat
    curve_orig = decimation_curve(curved, k_max=20, seed=1)
    curve_surr = decimation_curve(surr, k_max=20, seed=1)
    rho = spearmanr(curve_surr.n_sub, curve_surr.id_mean).statistic

    checks = [
        (f"ratio {id_surr / id_orig:.2f}x", id_surr > 5.0 * id_orig),
        (f"original verdict {stability_verdict(curve_orig)}",
         stability_verdict(curve_orig) == WELL_DEFINED),
        (f"surrogate verdict {stability_verdict(curve_surr)}",
         stability_verdict(curve_surr) == ILL_DEFINED),
        (f"surrogate growth rho={rho:.3f}", rho > 0.9),
    ]
    _verdict("surrogate-divergence", checks)


def test_invariance_suite():
    """d_hat is unchanged by isometries, positive scaling, zero-padding,
    and orthogonal lifts; the class-count bound and pearson behave under
    their exact algebraic identities."""
    base, _ = gen_manifold(ManifoldSpec("hypercube", 3, 1500, seed=4))
    ref = estimate_matrix(base).d_hat

    rng = np.random.default_rng(0)
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q *= np.sign(np.diag(r))
    rotated = ActivationMatrix(base.data @ q + np.array([3.0, -1.0, 7.0]))
    scaled = ActivationMatrix(base.data * 2.0)  # power of two: exact
    padded = ActivationMatrix(np.hstack([base.data, np.zeros((base.n, 5))]))
    lifted = embed_orthogonal(base, 200, seed=9)

    checks = [
        ("isometry", abs(estimate_matrix(rotated).d_hat - ref) / ref < 1e-9),
        ("positive scaling", estimate_matrix(scaled).d_hat == ref),
        ("zero padding", estimate_matrix(padded).d_hat == ref),
        ("orthogonal lift", abs(estimate_matrix(lifted).d_hat - ref) / ref < 1e-6),
    ]

    bound_ok = all(
        min_id_bound(n).min_id == (n - 1).bit_length() for n in range(1, 1_000_001)
    )
    checks.append(("class bound exhaustive to 1e6", bound_ok))

    x, y = rng.standard_normal(50), rng.standard_normal(50)
    r0 = pearson(x, y)
    checks.append(
        ("pearson affine invariance",
         abs(pearson(2.5 * x + 3.0, y) - r0) < 1e-12
         and abs(pearson(-x, y) + r0) < 1e-12)
    )
    _verdict("invariance-suite", checks)


@pytest.mark.slow
def test_oracle_equivalence():
    """Blocked 2-NN matches the naive O(N^2) scan exactly on 50 random
    instances across low, medium, and high embedding dimension."""
    rng = np.random.default_rng(2024)
    plans = [(2, 20, 2000), (100, 20, 2000), (10_000, 10, 400)]
    mismatches = 0
    total = 0
    for d_embed, count, n_max in plans:
        for _ in range(count):
            n = int(rng.integers(10, n_max + 1))
            x = rng.standard_normal((n, d_embed))
            stats = two_nearest(ActivationMatrix(x))
            r1, r2, nn1, nn2 = naive_two_nearest(x)
            same = (
                np.array_equal(stats.r1, r1)
                and np.array_equal(stats.r2, r2)
                and np.array_equal(stats.nn1_idx, nn1)
                and np.array_equal(stats.nn2_idx, nn2)
            )
            mismatches += not same
            total += 1
    _verdict(
        "oracle-equivalence",
        [(f"{mismatches} mismatches in {total} instances", mismatches == 0)],
    )


@pytest.mark.slow
def test_performance_benchmark():
    """N=1e4 at D=1e3 within 5 s and at D=1e5 within 5 min; actual times
    are recorded in benchmark_report.json at the repository root."""
    rng = np.random.default_rng(7)
    cases = []
    checks = []

    x = rng.standard_normal((10_000, 1_000))
    t0 = time.perf_counter()
    estimate_matrix(ActivationMatrix(x))
    small = time.perf_counter() - t0
    cases.append({"n": 10_000, "d_embed": 1_000, "dtype": "float64",
                  "seconds": round(small, 3), "limit_seconds": 5.0})
    checks.append((f"D=1e3 in {small:.2f}s", small <= 5.0))
    del x

    x = rng.standard_normal((10_000, 100_000), dtype=np.float32)
    t0 = time.perf_counter()
    estimate_matrix(ActivationMatrix(x))
    big = time.perf_counter() - t0
    cases.append({"n": 10_000, "d_embed": 100_000, "dtype": "float32",
                  "seconds": round(big, 3), "limit_seconds": 300.0})
    checks.append((f"D=1e5 in {big:.1f}s", big <= 300.0))
    del x

    report = {
        "schema_version": 1,
        "recorded_at": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "cases": cases,
    }
    (REPO_ROOT / "benchmark_report.json").write_text(json.dumps(report, indent=2) + "\n")
    _verdict("performance-benchmark", checks)


def test_decimation_protocol():
    """k runs 20..1, fold sizes track N/k within one point, and the curve
    stays flat within 10% on a well-defined manifold."""
    n = 2017  # deliberately not divisible by most k
    cube, _ = gen_manifold(ManifoldSpec("hypercube", 5, n, seed=8))
    curve = decimation_curve(cube, k_max=20, seed=3)
    full = float(curve.id_mean[curve.k == 1][0])

    size_dev = max(abs(int(ns) - n / k) for k, ns in zip(curve.k, curve.n_sub))
    flatness = float(np.max(np.abs(curve.id_mean - full)) / full)
    checks = [
        ("k spans 20..1",
         np.array_equal(np.sort(curve.k), np.arange(1, 21))),
        (f"fold-size deviation {size_dev:.2f}", size_dev <= 1.0),
        (f"flatness {flatness:.3f}", flatness <= 0.10),
        ("verdict well_defined", stability_verdict(curve) == WELL_DEFINED),
    ]
    _verdict("decimation-protocol", checks)
