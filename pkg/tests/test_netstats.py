import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lateralnet.errors import FitError, UndefinedStatistic
from lateralnet.netstats import (EmpiricalDistribution, ensemble_reference, fit_ck_exponent,
                                 fit_power_law, global_clustering, golden_section, ks_test,
                                 local_clustering, local_clustering_curve, mean_geodesic,
                                 measure_distribution, small_world_ness, degree_correlation,
                                 degree_histogram)
from lateralnet.network import (DirectedNetwork, RewireWarning, UndirectedNetwork, random_er,
                                undirected_projection)

from oracles import zeta_samples


def U(edges, nodes=None):
    return UndirectedNetwork.from_edges(edges, nodes)


def complete(n):
    return U([(i, j) for i in range(n) for j in range(i + 1, n)])


K3 = complete(3)
K4 = complete(4)
K4_MINUS = U([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
PATH3 = U([(0, 1), (1, 2)])


def star(k):
    return U([(0, i) for i in range(1, k + 1)])


def ring_with_shortcuts(n=20, k=4, shortcuts=((0, 10), (5, 15))):
    edges = {(i, (i + d) % n) for i in range(n) for d in range(1, k // 2 + 1)}
    edges |= set(shortcuts)
    return U(sorted(edges))


# ---------------------------------------------------------------- oracles

def triple_clustering(g):
    adj = {i: set() for i in range(g.n_nodes)}
    for i, j in g.edges:
        adj[i].add(j)
        adj[j].add(i)
    closed = paths = 0
    for u, v, w in permutations(range(g.n_nodes), 3):
        if v in adj[u] and w in adj[v]:
            paths += 1
            closed += w in adj[u]
    return Fraction(closed, paths) if paths else None


def matrix_degree_correlation(g):
    a = g.adjacency().astype(float)
    k = a.sum(axis=1)
    two_a = k.sum()
    kk = np.outer(k, k)
    num = ((a - kk / two_a) * kk).sum()
    den = ((np.diag(k) - kk / two_a) * kk).sum()
    if abs(den) < 1e-9:
        return None
    return num / den


# ---------------------------------------------------------------- clustering / geodesics

def test_clustering_examples():
    assert global_clustering(K3) == 1
    assert global_clustering(star(3)) == 0
    assert global_clustering(K4_MINUS) == pytest.approx(0.75, abs=1e-15)
    with pytest.raises(UndefinedStatistic):
        global_clustering(U([(0, 1), (2, 3)]))


def test_local_clustering_examples():
    assert local_clustering_curve(K3) == {2: 1.0}
    assert local_clustering_curve(PATH3) == {2: 0.0}
    curve = local_clustering_curve(K4_MINUS)
    assert curve[3] == pytest.approx(2 / 3, abs=1e-15) and curve[2] == 1.0
    assert set(local_clustering(PATH3)) == {1}


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 14), st.floats(0.1, 0.8), st.integers(0, 2**32))
def test_clustering_matches_triple_enumeration(n, p, seed):
    g = undirected_projection(random_er(n, p, seed))
    want = triple_clustering(g)
    if want is None:
        with pytest.raises(UndefinedStatistic):
            global_clustering(g)
    else:
        c = global_clustering(g)
        assert 0 <= c <= 1 and c == pytest.approx(float(want), abs=1e-12)


def test_clustering_oracle_thirty_nodes():
    for seed in range(3):
        g = undirected_projection(random_er(30, 0.12, seed))
        assert global_clustering(g) == pytest.approx(float(triple_clustering(g)), abs=1e-12)


def test_mean_geodesic_examples():
    assert mean_geodesic(complete(5)) == 1
    assert mean_geodesic(PATH3) == pytest.approx(4 / 3, abs=1e-15)
    assert mean_geodesic(U([(0, 1), (2, 3)])) == 1
    with pytest.raises(UndefinedStatistic):
        mean_geodesic(U([], nodes=[0, 1]))


def test_small_world_examples():
    assert small_world_ness(K4) == pytest.approx(math.log(4) / math.log(3) * 4 / 3, abs=1e-9)
    assert small_world_ness(ring_with_shortcuts()) > 1
    with pytest.raises(UndefinedStatistic):
        small_world_ness(U([(0, 1), (2, 3)]))


def test_degree_correlation_examples():
    assert degree_correlation(PATH3) == -1
    assert degree_correlation(complete(5)) is None
    # every edge of a star joins degrees (1, 5); the exact formula still has a nonzero denominator
    assert degree_correlation(star(5)) == -1
    assert matrix_degree_correlation(star(5)) == pytest.approx(-1)
    assert degree_correlation(U([], nodes=[0])) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 25), st.floats(0.05, 0.6), st.integers(0, 2**32))
def test_degree_correlation_matches_matrix_formula(n, p, seed):
    g = undirected_projection(random_er(n, p, seed))
    r = degree_correlation(g)
    want = matrix_degree_correlation(g) if g.n_edges else None
    if want is None:
        assert r is None or abs(r) <= 1
    else:
        assert r == pytest.approx(want, abs=1e-9) and -1 <= r <= 1


def test_degree_histogram():
    assert degree_histogram([1, 2, 2, 5]) == {1: 1, 2: 2, 5: 1}


# ---------------------------------------------------------------- distributions / KS

def test_empirical_cdf_right_continuous():
    e = EmpiricalDistribution.from_samples([0.2, 0.1, 0.2, 0.5])
    assert e(0.0) == 0 and e(0.1) == 0.25 and e(0.15) == 0.25 and e(0.2) == 0.75 and e(1.0) == 1.0
    assert np.all(np.diff(e.cdf) > 0) and e.cdf[-1] == 1.0
    text = e.to_csv(header_comment="manifest: manifest.json")
    assert text.splitlines()[:3] == ["# manifest: manifest.json", "value,cumulative_frequency", "0.1,0.25"]


def test_empirical_empty():
    with pytest.raises(ValueError):
        EmpiricalDistribution.from_samples([])


def test_average_is_pointwise():
    a = EmpiricalDistribution.from_samples([0.0, 1.0])
    b = EmpiricalDistribution.from_samples([0.5])
    m = EmpiricalDistribution.average([a, b])
    assert m.support.tolist() == [0.0, 0.5, 1.0]
    assert m.cdf.tolist() == [0.25, 0.75, 1.0]


def test_ks_examples():
    e = EmpiricalDistribution.from_samples([0.1, 0.3, 0.3])
    r = ks_test(e, EmpiricalDistribution.from_samples([0.3, 0.1, 0.3]))
    assert r.d_statistic == 0 and r.p_value == 1
    r = ks_test(EmpiricalDistribution.from_samples([0.0]), EmpiricalDistribution.from_samples([1.0]))
    assert r.d_statistic == 1


def test_ks_uniform_matches_brute_sup():
    rng = np.random.default_rng(3)
    x = rng.random(100)
    e = EmpiricalDistribution.from_samples(x)
    r = ks_test(e, lambda t: np.clip(t, 0, 1))
    xs = np.sort(x)
    brute = max(max(abs((i + 1) / 100 - xs[i]), abs(i / 100 - xs[i])) for i in range(100))
    assert abs(r.d_statistic - brute) < 1e-12
    assert r.effective_n == 100 and 0 <= r.p_value <= 1


def test_ks_step_reference_matches_brute():
    rng = np.random.default_rng(8)
    a = EmpiricalDistribution.from_samples(rng.integers(0, 10, 40) / 10)
    b = EmpiricalDistribution.from_samples(rng.integers(0, 12, 70) / 10)
    grid = np.linspace(-0.05, 1.25, 2601)
    brute = np.max(np.abs(a(grid) - b(grid)))
    assert ks_test(a, b).d_statistic == pytest.approx(brute, abs=1e-15)


def test_measure_distribution_degenerate():
    g = DirectedNetwork.from_arcs([("a", "b"), ("c", "d")])
    e = measure_distribution(g, "dbc")
    assert e.degenerate == 1 and e.support.tolist() == [0.0]


def test_ensemble_single_replica_is_own_cdf():
    from lateralnet.network import rewire_preserving_degrees
    g = random_er(20, 0.15, 4)
    ref = ensemble_reference(g, "lbc", replicas=1, seed=9)
    h = rewire_preserving_degrees(g, seed=np.random.SeedSequence([9, 0])).network
    own = measure_distribution(h, "lbc")
    assert np.array_equal(ref.support, own.support) and np.array_equal(ref.cdf, own.cdf)


def test_ensemble_deterministic_and_jobs_independent():
    g = random_er(18, 0.15, 2)
    a = ensemble_reference(g, "dbc", replicas=4, seed=1)
    b = ensemble_reference(g, "dbc", replicas=4, seed=1, jobs=2)
    assert np.array_equal(a.support, b.support) and np.array_equal(a.cdf, b.cdf)
    assert np.all(np.diff(a.cdf) >= 0) and a.cdf[-1] == 1.0


def test_ensemble_propagates_rewire_warnings():
    g = random_er(4, 1.0, 0)
    with pytest.warns(RewireWarning):
        ensemble_reference(g, "lbc", replicas=2, seed=0, swaps=3)


# ---------------------------------------------------------------- power law

def test_zeta_sampler_matches_pmf():
    rng = np.random.default_rng(0)
    s = zeta_samples(rng, 2.0, 1, 5, 200_000)
    w = np.arange(1, 6, dtype=float) ** -2.0
    freq = np.bincount(s, minlength=6)[1:] / len(s)
    np.testing.assert_allclose(freq, w / w.sum(), atol=5e-3)


def test_golden_section_quadratic():
    assert golden_section(lambda a: (a - 2.3) ** 2, 1.01, 6.0) == pytest.approx(2.3, abs=1e-7)


@pytest.mark.parametrize("seed", [1, 2])
def test_power_law_recovers_alpha(seed):
    x = zeta_samples(np.random.default_rng(seed), 2.5, 1, 1000, 30_000)
    fit = fit_power_law(x)
    assert abs(fit.alpha - 2.5) < 0.08
    assert abs(fit.pmf().sum() - 1) < 1e-12
    assert 1.01 <= fit.alpha <= 6.0 and fit.k_min <= fit.k_max


def test_power_law_duplication_invariant():
    x = zeta_samples(np.random.default_rng(5), 2.2, 1, 200, 5000)
    a = fit_power_law(x)
    b = fit_power_law(np.concatenate([x, x]))
    assert (a.k_min, a.k_max) == (b.k_min, b.k_max)
    assert a.alpha == pytest.approx(b.alpha, abs=1e-7)


def test_power_law_errors():
    with pytest.raises(FitError):
        fit_power_law([3] * 50)
    with pytest.raises(FitError):
        fit_power_law([1, 2, 3])
    with pytest.raises(FitError):
        fit_power_law([0, 1, 2] * 10)


def test_power_law_pmf_outside_range_is_zero():
    fit = fit_power_law(zeta_samples(np.random.default_rng(2), 2.5, 1, 100, 3000))
    assert fit.pmf([fit.k_max + 1])[0] == 0
    d = fit.as_dict()
    assert set(d) >= {"alpha", "k_min", "k_max", "ks_distance", "log_likelihood"}


# ---------------------------------------------------------------- C(k)

def test_ck_exact_power():
    fit = fit_ck_exponent({k: k ** -2.0 for k in range(2, 21)})
    assert abs(fit.beta - 2.0) < 1e-9 and fit.range == (2, 20)


def test_ck_constant():
    fit = fit_ck_exponent({k: 0.3 for k in range(2, 12)})
    assert fit.beta == 0


def test_ck_noisy():
    rng = np.random.default_rng(4)
    curve = {k: k ** -3.0 * (1 + 0.01 * rng.standard_normal()) for k in range(2, 31)}
    assert abs(fit_ck_exponent(curve).beta - 3.0) < 0.1


def test_ck_too_few_points():
    with pytest.raises(FitError):
        fit_ck_exponent({2: 0.5, 3: 0.0, 4: 0.25})
