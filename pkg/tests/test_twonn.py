import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from intdim import (
    ActivationMatrix,
    DegenerateDataError,
    InsufficientDataError,
    estimate_cumulate,
    estimate_matrix,
    estimate_mle,
    estimate_triplets,
    gen_manifold,
    sample_pareto,
    subsample_estimate,
)
from intdim.manifolds import ManifoldSpec
from conftest import matrix


def test_mle_analytic_e():
    est = estimate_mle(np.full(4, np.e))
    assert est.d_hat == pytest.approx(1.0)
    assert est.std == pytest.approx(0.5)


def test_mle_analytic_half_log():
    est = estimate_mle(np.full(8, np.exp(0.5)))
    assert est.d_hat == pytest.approx(2.0)


def test_mle_degenerate_all_one():
    with pytest.raises(DegenerateDataError, match="diverges"):
        estimate_mle(np.ones(10))


def test_mle_rejects_below_one():
    with pytest.raises(DegenerateDataError):
        estimate_mle(np.array([0.5, 2.0]))


def test_mle_recovers_pareto():
    # oracle: inverse-CDF sampler; 3-sigma band at std = d/sqrt(N)
    mu = sample_pareto(5.0, 10_000, seed=42)
    est = estimate_mle(mu)
    assert 4.85 <= est.d_hat <= 5.15


def test_sample_pareto_endpoints():
    # u = 0 -> mu = 1; d=1, u=0.5 -> mu = 2 (checked via the formula)
    assert (1.0 - 0.0) ** (-1.0 / 3.0) == 1.0
    assert (1.0 - 0.5) ** (-1.0 / 1.0) == 2.0
    mu = sample_pareto(2.0, 1000, seed=0)
    assert np.all(mu >= 1.0)


def test_sample_pareto_log_moment():
    # ln mu is exponential with mean 1/d
    mu = sample_pareto(10.0, 100_000, seed=3)
    log_mean = np.log(mu).mean()
    # 3 sigma of the sample mean of Exp(1/d): sd = (1/d)/sqrt(n)
    assert abs(log_mean - 0.1) < 3 * 0.1 / np.sqrt(100_000)


def test_sample_pareto_validation():
    with pytest.raises(DegenerateDataError):
        sample_pareto(-1.0, 10)
    with pytest.raises(DegenerateDataError):
        sample_pareto(2.0, 0)


def test_cumulate_analytic_quantiles():
    # exact Pareto(d=3) quantiles via the analytic inverse CDF
    n = 1000
    i = np.arange(1, n + 1)
    mu = (1.0 - i / (n + 1)) ** (-1.0 / 3.0)
    est = estimate_cumulate(mu)
    assert est.d_hat == pytest.approx(3.0, rel=0.01)


def test_cumulate_close_to_mle():
    mu = sample_pareto(5.0, 10_000, seed=42)
    mle = estimate_mle(mu)
    cum = estimate_cumulate(mu)
    assert abs(cum.d_hat - mle.d_hat) / mle.d_hat < 0.05


def test_cumulate_degenerate_single_abscissa():
    mu = np.full(4, np.e)
    with pytest.warns(UserWarning, match="low rank"):
        est = estimate_cumulate(mu, discard_fraction=0.0)
    mle = estimate_mle(mu)
    assert np.isfinite(est.d_hat)
    assert est.d_hat <= mle.d_hat + 1e-12


def test_cumulate_insufficient():
    with pytest.raises(InsufficientDataError):
        estimate_cumulate(np.array([1.5, 2.0]), discard_fraction=0.0)


def test_cumulate_all_one_degenerate():
    with pytest.raises(DegenerateDataError):
        estimate_cumulate(np.ones(100), discard_fraction=0.1)


def test_triplets_three_tight_clusters(rng):
    centers = np.array([[0.0, 0.0], [100.0, 0.0], [0.0, 100.0]])
    pts = np.vstack([c + 0.01 * rng.standard_normal((3, 2)) for c in centers])
    est = estimate_triplets(ActivationMatrix(pts), seed=0)
    assert est.n_used == 3


def test_triplets_too_few_points():
    with pytest.raises(DegenerateDataError):
        estimate_triplets(matrix(np.random.default_rng(0).random((5, 2))), seed=0)


def test_triplets_agree_with_mle():
    m, _ = gen_manifold(ManifoldSpec("hypercube", 5, 10_000, seed=4))
    tri = estimate_triplets(m, seed=5)
    mle = estimate_matrix(m, method="mle")
    assert abs(tri.d_hat - mle.d_hat) < 0.1 * mle.d_hat


def test_subsample_identity():
    m, _ = gen_manifold(ManifoldSpec("hypercube", 3, 500, seed=1))
    direct = estimate_matrix(m, method="mle")
    sub = subsample_estimate(m, fraction=1.0, repeats=1, method="mle", seed=9)
    assert sub.d_hat == direct.d_hat


def test_subsample_disk(rng):
    # generator oracle: uniform disk has ID 2
    r = np.sqrt(rng.random(5000))
    th = rng.uniform(0, 2 * np.pi, 5000)
    disk = ActivationMatrix(np.column_stack([r * np.cos(th), r * np.sin(th)]))
    est = subsample_estimate(disk, fraction=0.9, repeats=20, method="mle", seed=1)
    assert 1.9 <= est.d_hat <= 2.1
    assert est.std < 0.1


def test_subsample_seed_consistency():
    m, _ = gen_manifold(ManifoldSpec("hypercube", 2, 2000, seed=2))
    a = subsample_estimate(m, 0.9, 10, "mle", seed=100)
    b = subsample_estimate(m, 0.9, 10, "mle", seed=200)
    assert abs(a.d_hat - b.d_hat) < 2 * (a.std + b.std)


def test_subsample_too_small():
    m, _ = gen_manifold(ManifoldSpec("hypercube", 2, 10, seed=0))
    with pytest.raises(InsufficientDataError):
        subsample_estimate(m, fraction=0.1, repeats=2)


@given(st.floats(min_value=0.01, max_value=5.0))
@settings(max_examples=30, deadline=None)
def test_mle_monotone_in_log_shift(shift):
    # adding a constant to all ln(mu) strictly decreases d = N / sum(ln mu)
    mu = sample_pareto(4.0, 100, seed=7)
    base = estimate_mle(mu).d_hat
    shifted = estimate_mle(np.exp(np.log(mu) + shift)).d_hat
    assert shifted < base


@given(st.integers(min_value=1, max_value=10), st.integers(min_value=50, max_value=500))
@settings(max_examples=20, deadline=None)
def test_mle_positive_and_scaled(d, n):
    mu = sample_pareto(float(d), n, seed=d * 1000 + n)
    est = estimate_mle(mu)
    assert est.d_hat > 0
    assert est.std == pytest.approx(est.d_hat / np.sqrt(n))


def test_closed_form_recovery_sweep():
    # >= 95/100 seeds within 3% for each d
    for d in (1.0, 2.0, 5.0, 10.0, 20.0):
        hits = 0
        for seed in range(100):
            est = estimate_mle(sample_pareto(d, 10_000, seed=seed))
            hits += abs(est.d_hat - d) <= 0.03 * d
        assert hits >= 95, f"d={d}: only {hits}/100 seeds in band"
