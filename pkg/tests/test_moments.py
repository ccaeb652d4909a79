import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from conftest import dense_b_matrix, random_distribution, standard_distributions
from modnull import (
    ColorDistribution,
    DomainError,
    Graph,
    InputError,
    center_decompose,
    exact_moments_by_enumeration,
    gen_er,
    gen_regular,
    martingale_variance,
    modularity,
    null_moments,
    null_q_samples,
)


def modularity_bruteforce(g, colors):
    """Double sum of B_ij over same-color ordered pairs, diagonal included."""
    b = dense_b_matrix(g)
    c = np.asarray(colors)
    same = (c[:, None] == c[None, :]).astype(float)
    return float((b * same).sum() / (2.0 * g.m))


def enumeration_bruteforce(g, dist):
    """Independent tiny enumeration via itertools, for validating the package oracle."""
    qs, ws = [], []
    for coloring in product(range(1, dist.K + 1), repeat=g.n):
        ws.append(math.prod(dist.p[c - 1] for c in coloring))
        qs.append(modularity_bruteforce(g, coloring))
    total = math.fsum(ws)
    mean = math.fsum(w * q for w, q in zip(ws, qs)) / total
    var = math.fsum(w * (q - mean) ** 2 for w, q in zip(ws, qs)) / total
    return mean, var


def rel_err(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def test_modularity_examples(triangle, path3):
    assert modularity(triangle, [1, 2, 2]) == pytest.approx(-2 / 9, abs=1e-15)
    assert modularity(path3, [1, 1, 2]) == pytest.approx(-1 / 8, abs=1e-15)
    assert modularity(triangle, [1, 1, 1]) == 0.0


def test_modularity_matches_bruteforce(small_graphs):
    rng = np.random.default_rng(3)
    for g in small_graphs:
        for _ in range(5):
            colors = rng.integers(1, 4, size=g.n)
            q = modularity(g, colors)
            assert q == pytest.approx(modularity_bruteforce(g, colors), abs=1e-12)
            assert -1.0 < q < 1.0


def test_modularity_validation(triangle):
    with pytest.raises(InputError):
        modularity(triangle, [1, 2])
    with pytest.raises(InputError):
        modularity(triangle, [0, 1, 1])


def test_b_matrix_rows_sum_to_zero(small_graphs):
    for g in small_graphs:
        b = dense_b_matrix(g)
        assert np.max(np.abs(b.sum(axis=0))) < 1e-12
        assert np.max(np.abs(b.sum(axis=1))) < 1e-12


def test_b_sums_match_dense(small_graphs):
    d = ColorDistribution([0.3, 0.7])
    for g in small_graphs:
        b = dense_b_matrix(g)
        mom = null_moments(g, d)
        off = float((b ** 2).sum() - (np.diag(b) ** 2).sum())
        assert rel_err(mom.sum_offdiag_B2, off) < 1e-12
        assert rel_err(mom.sum_diag_B2, float((np.diag(b) ** 2).sum())) < 1e-12


def test_null_moments_triangle_pinned(triangle):
    d = ColorDistribution([1 / 3, 2 / 3])
    mom = null_moments(triangle, d)
    # frozen from the enumeration oracle; fractions are exact
    assert mom.mu == pytest.approx(float(Fraction(-4, 27)), abs=1e-15)
    assert mom.sigma2 == pytest.approx(float(Fraction(8, 729)), abs=1e-15)
    assert mom.delta2 == pytest.approx(float(Fraction(16, 243)), abs=1e-15)
    mu_e, var_e = exact_moments_by_enumeration(triangle, d)
    assert rel_err(mom.mu, mu_e) < 1e-12
    assert rel_err(mom.sigma2, var_e) < 1e-12


def test_null_moments_single_edge(single_edge):
    d = ColorDistribution.uniform(2)
    mom = null_moments(single_edge, d)
    assert mom.mu == pytest.approx(-0.25, abs=1e-15)
    mu_e, var_e = exact_moments_by_enumeration(single_edge, d)
    assert rel_err(mom.mu, mu_e) < 1e-13
    assert rel_err(mom.sigma2, var_e) < 1e-13


def test_null_moments_degenerate_distribution(triangle):
    mom = null_moments(triangle, ColorDistribution.uniform(1))
    assert (mom.mu, mom.sigma2, mom.delta2) == (0.0, 0.0, 0.0)


def test_null_moments_sign_and_composition(small_graphs):
    for g in small_graphs:
        for d in standard_distributions():
            mom = null_moments(g, d)
            assert mom.mu <= 0.0
            assert mom.sigma2 >= 0.0
            assert mom.delta2 == d.r1 / g.m
            recomposed = (
                mom.r1 / (2 * g.m * g.m) * mom.sum_offdiag_B2
                + mom.r2 / (g.m * g.m) * mom.sum_diag_B2
            )
            assert recomposed == mom.sigma2


def test_enumeration_oracle_vs_independent_bruteforce(triangle, star3):
    for g, d in ((triangle, ColorDistribution([1 / 3, 2 / 3])),
                 (star3, ColorDistribution.uniform(2))):
        mu_pkg, var_pkg = exact_moments_by_enumeration(g, d)
        mu_ref, var_ref = enumeration_bruteforce(g, d)
        assert mu_pkg == pytest.approx(mu_ref, abs=1e-14)
        assert var_pkg == pytest.approx(var_ref, abs=1e-14)


def test_closed_form_matches_enumeration(small_graphs):
    for g in small_graphs:
        for d in standard_distributions():
            mom = null_moments(g, d)
            mu_e, var_e = exact_moments_by_enumeration(g, d)
            assert rel_err(mom.mu, mu_e) < 1e-11
            assert rel_err(mom.sigma2, var_e) < 1e-11


def test_enumeration_guard():
    g = gen_regular(30, 2, 1)
    with pytest.raises(DomainError):
        exact_moments_by_enumeration(g, ColorDistribution.uniform(2))


def test_decomposition_identity_examples(triangle, path3):
    d = ColorDistribution([1 / 3, 2 / 3])
    dec = center_decompose(triangle, [1, 2, 2], d)
    q = modularity(triangle, [1, 2, 2])
    mom = null_moments(triangle, d)
    assert dec.reconstructed_Q == pytest.approx(q, abs=1e-12)
    assert dec.constant_term == pytest.approx(mom.mu, abs=1e-15)
    assert dec.kernel_term + dec.degree_term == pytest.approx(q - mom.mu, abs=1e-12)

    emp = ColorDistribution.from_coloring([1, 1, 2])
    dec = center_decompose(path3, [1, 1, 2], emp)
    assert dec.reconstructed_Q == pytest.approx(-1 / 8, abs=1e-12)


def test_decomposition_vanishes_for_one_color(triangle):
    dec = center_decompose(triangle, [1, 1, 1], ColorDistribution.uniform(1))
    assert dec.constant_term == 0.0
    assert abs(dec.kernel_term) < 1e-15
    assert abs(dec.degree_term) < 1e-15


def test_decomposition_identity_random():
    rng = np.random.default_rng(41)
    for _ in range(100):
        n = int(rng.integers(4, 20))
        g = gen_er(n, 0.4, seed=int(rng.integers(0, 2 ** 32)))
        d = random_distribution(rng, max_k=5)
        colors = d.sample_coloring(g.n, int(rng.integers(0, 2 ** 32)))
        dec = center_decompose(g, colors, d)
        q = modularity(g, colors)
        assert rel_err(dec.reconstructed_Q, q) < 1e-10 or abs(dec.reconstructed_Q - q) < 1e-12


def test_martingale_variance_single_edge(single_edge):
    u2 = ColorDistribution.uniform(2)
    assert martingale_variance(single_edge, [1, 2], u2) == pytest.approx(1.0, abs=1e-15)
    assert martingale_variance(single_edge, [2, 2], u2) == pytest.approx(1.0, abs=1e-15)


def test_martingale_variance_matches_direct_formula(cycle5):
    # direct evaluation of the filtration sum, scalar and independent
    d = ColorDistribution([0.2, 0.5, 0.3])
    colors = [1, 3, 2, 2, 1]
    total = 0.0
    for j in range(cycle5.n):
        lower = [int(i) for i in cycle5.neighbors(j) if i < j]
        for i in lower:
            total += d.cond_second_moment(colors[i])
        for x in range(len(lower)):
            for y in range(x + 1, len(lower)):
                total += 2.0 * d.cond_cross_moment(colors[lower[x]], colors[lower[y]])
    expected = total / (cycle5.m ** 2 * (d.r1 / cycle5.m))
    assert martingale_variance(cycle5, colors, d) == pytest.approx(expected, abs=1e-13)


def test_martingale_variance_errors(triangle):
    with pytest.raises(DomainError):
        martingale_variance(triangle, [1, 1, 1], ColorDistribution.uniform(1))
    with pytest.raises(DomainError):
        Graph(3, [])  # no-edge graphs cannot exist, the m = 0 case is unreachable


def test_martingale_variance_mean_is_one():
    g = gen_regular(120, 4, 7)
    d = ColorDistribution.uniform(3)
    from modnull import martingale_variance_samples

    v2 = martingale_variance_samples(g, d, 4000, 2222)
    se = v2.std(ddof=1) / math.sqrt(v2.size)
    assert abs(v2.mean() - 1.0) <= 4 * se


def test_monte_carlo_consistency_with_exact_moments():
    g = gen_regular(100, 6, 11)
    d = ColorDistribution.uniform(2)
    mom = null_moments(g, d)
    q = null_q_samples(g, d, 200000, 314159, threads=2)
    se_mean = q.std(ddof=1) / math.sqrt(q.size)
    assert abs(q.mean() - mom.mu) <= 4 * se_mean
    var = q.var(ddof=1)
    centered = q - q.mean()
    m4 = np.mean(centered ** 4)
    se_var = math.sqrt(max(m4 - var ** 2, 0.0) / q.size)
    assert abs(var - mom.sigma2) <= 4 * se_var


def test_offdiag_normalization_trend():
    d = ColorDistribution.uniform(2)
    gaps, ratio_gaps = [], []
    for n in (100, 400, 1600):
        g = gen_regular(n, 6, 13)
        mom = null_moments(g, d)
        gaps.append(abs(mom.sum_offdiag_B2 / (2 * g.m) - 1.0))
        ratio_gaps.append(abs(mom.sigma2 / mom.delta2 - 1.0))
    assert gaps[0] > gaps[1] > gaps[2]
    assert ratio_gaps[0] > ratio_gaps[1] > ratio_gaps[2]


def test_sigma_delta_ratio_trend_skewed_distribution():
    d = ColorDistribution([1 / 3, 2 / 3])
    gaps = []
    for n in (100, 400, 1600):
        g = gen_regular(n, 6, 13)
        mom = null_moments(g, d)
        gaps.append(abs(mom.sigma2 / mom.delta2 - 1.0))
    assert gaps[0] > gaps[1] > gaps[2]
