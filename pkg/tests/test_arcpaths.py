import io
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lateralnet.arcpaths import (betweenness, dbc, directed_efficiency, directed_metric,
                                 l_transform, lateral_components, lateral_efficiency,
                                 lateral_metric, lbc, r_transform, weak_arc_components,
                                 write_centrality_csv, write_metric_csv, centrality)
from lateralnet.errors import UndefinedStatistic
from lateralnet.network import DirectedNetwork, random_er

from conftest import random_multigraph, small_corpus, two_route_graph
from oracles import brute_betweenness, brute_distance


def _arcs(g):
    return list(zip(g.src.tolist(), g.tgt.tolist()))


# ---------------------------------------------------------------- oracle self-checks

def test_oracle_ngraph():
    vals, norm = brute_betweenness([(0, 2), (1, 2), (1, 3)], "lateral")
    assert norm == 14 and vals == [Fraction(2, 7), Fraction(3, 7), Fraction(2, 7)]


def test_oracle_path_directed():
    vals, norm = brute_betweenness([(0, 1), (1, 2), (2, 3)], "directed")
    assert norm == 7 and vals == [Fraction(2, 7), Fraction(3, 7), Fraction(2, 7)]


# ---------------------------------------------------------------- transforms

def test_r_transform_examples():
    r = r_transform(DirectedNetwork.from_arcs([("x", "y")]))
    assert r.n_nodes == 1 and r.n_arcs == 0
    r = r_transform(DirectedNetwork.from_arcs([("a", "b"), ("b", "c")]))
    assert r.n_nodes == 2 and r.n_arcs == 1
    tri = DirectedNetwork.from_arcs([("a", "b"), ("b", "c"), ("c", "a")])
    r = r_transform(tri)
    assert sorted((s, t) for _, s, t in r.arcs()) == [(0, 1), (1, 2), (2, 0)]


def _count_paths(g, length):
    arcs = _arcs(g)
    total = 0
    for seq in product(range(len(arcs)), repeat=length):
        if all(arcs[seq[i]][1] == arcs[seq[i + 1]][0] for i in range(length - 1)):
            total += 1
    return total


@pytest.mark.parametrize("seed", range(8))
def test_rr_arcs_are_length_three_paths(seed):
    g = random_er(6, 0.35, seed)
    rr = r_transform(r_transform(g))
    assert rr.n_arcs == _count_paths(g, 3)
    # the composite label ((f,g),(g,h)) names the directed 3-path f,g,h
    for (a, b), (c, d) in rr.arc_ids:
        assert b == c


def _ends(net):
    return {aid: (s, t) for aid, s, t in net.arcs()}


def test_l_transform_examples():
    e = _ends(l_transform(DirectedNetwork.from_arcs([("x", "y")])))
    assert len({v for st in e.values() for v in st}) == 3 and len(e) == 2
    # a directed path x then y
    assert e["x"][1] == e["y"][0] and e["x"][0] != e["y"][1]
    L = l_transform(DirectedNetwork(("v",), [], []))
    assert L.n_nodes == 2 and L.n_arcs == 1
    L = l_transform(DirectedNetwork.from_arcs([("a", "c"), ("b", "c")]))
    e = _ends(L)
    assert L.n_nodes == 4
    assert e["a"][1] == e["b"][1] == e["c"][0]


# ---------------------------------------------------------------- metrics

def test_lateral_metric_examples(ngraph):
    fork = DirectedNetwork.from_arcs([("a", "b"), ("a", "c")])
    m = lateral_metric(fork)
    assert m.distance[0, 1] == 1 and m.geodesic_counts[0, 1] == 1
    m = lateral_metric(DirectedNetwork.from_arcs([("a", "b"), ("b", "c")]))
    assert np.isinf(m.distance[0, 1])
    m = lateral_metric(ngraph)
    assert m.distance[0, 2] == 2 and m.geodesic_counts[0, 2] == 1


def test_directed_metric_examples(path4):
    m = directed_metric(path4)
    assert m.distance[0, 2] == 2 and m.geodesic_counts[0, 2] == 1
    assert np.isinf(m.distance[2, 0])
    fork = directed_metric(DirectedNetwork.from_arcs([("a", "b"), ("a", "c")]))
    assert np.isinf(fork.distance[0, 1]) and np.isinf(fork.distance[1, 0])
    routes = DirectedNetwork.from_arcs([("p", "a", "b"), ("q", "b", "d"), ("r", "a", "c"), ("s", "c", "d")])
    m = directed_metric(routes)
    assert m.distance[0, 1] == 1 and np.isinf(m.distance[0, 2])


def test_metric_invariants_against_oracle():
    rng = np.random.default_rng(5)
    for _ in range(40):
        g = random_multigraph(rng, max_nodes=5, max_arcs=8)
        for metric, kind in ((lateral_metric(g), "lateral"), (directed_metric(g), "directed")):
            d, cnt = brute_distance(_arcs(g), kind)
            for i in range(g.n_arcs):
                for j in range(g.n_arcs):
                    if d[i][j] is None:
                        assert np.isinf(metric.distance[i, j])
                    else:
                        assert metric.distance[i, j] == d[i][j]
                        assert metric.geodesic_counts[i, j] == cnt[i][j]


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 12), st.floats(0.05, 0.6), st.integers(0, 2**32))
def test_lateral_symmetric_directed_triangle(n, p, seed):
    g = random_er(n, p, seed)
    L = lateral_metric(g).distance
    assert np.array_equal(L, L.T)
    D = directed_metric(g).distance
    m = g.n_arcs
    if m:
        via = (D[:, :, None] + D[None, :, :]).min(axis=1)
        assert np.all(D <= via)


# ---------------------------------------------------------------- betweenness

def test_ngraph_lbc(ngraph):
    r = lbc(ngraph, exact=True)
    assert r.kind == "LBC" and r.normalizer == 14
    assert r.exact == (Fraction(2, 7), Fraction(3, 7), Fraction(2, 7))
    np.testing.assert_allclose(lbc(ngraph).values, [2 / 7, 3 / 7, 2 / 7], rtol=0, atol=1e-15)


def test_path_dbc(path4):
    r = dbc(path4, exact=True)
    assert r.kind == "DBC" and r.normalizer == 7
    assert r.exact == (Fraction(2, 7), Fraction(3, 7), Fraction(2, 7))


def test_degenerate_all_infinite():
    g = DirectedNetwork.from_arcs([("a", "b"), ("c", "d")])
    r = dbc(g)
    assert r.degenerate and r.normalizer == 0 and not r.values.any()
    r = centrality(g, "lbc")
    assert r.degenerate


def test_centrality_rejects_unknown_measure(ngraph):
    with pytest.raises(ValueError):
        centrality(ngraph, "xbc")


def test_two_routes_share_centrality():
    g = two_route_graph(2)
    r = dbc(g, exact=True)
    by = dict(zip(g.arc_ids, r.exact))
    assert by["x0"] == by["y0"] and by["x1"] == by["y1"] and by["x2"] == by["y2"]
    assert sum(r.exact) == 1


@pytest.mark.parametrize("kind", ["lateral", "directed"])
def test_brandes_matches_oracle_small_corpus(kind):
    for g in small_corpus(7, 60, max_arcs=10):
        metric = lateral_metric(g) if kind == "lateral" else directed_metric(g)
        r = betweenness(metric, exact=True)
        vals, norm = brute_betweenness(_arcs(g), kind)
        assert r.normalizer == norm
        assert list(r.exact) == vals


def test_brandes_matches_oracle_multigraphs():
    rng = np.random.default_rng(17)
    for _ in range(60):
        g = random_multigraph(rng, max_nodes=4, max_arcs=8)
        for metric, kind in ((lateral_metric(g), "lateral"), (directed_metric(g), "directed")):
            vals, norm = brute_betweenness(_arcs(g), kind)
            r = betweenness(metric, exact=True)
            assert list(r.exact) == vals
            np.testing.assert_allclose(betweenness(metric).values, [float(v) for v in vals], atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.floats(0.02, 0.4), st.integers(0, 2**32))
def test_sums_to_one(n, p, seed):
    g = random_er(n, p, seed)
    for r in (centrality(g, "lbc"), centrality(g, "dbc")):
        assert np.all(r.values >= 0)
        if not r.degenerate:
            assert abs(r.values.sum() - 1) < 1e-9


def test_fast_and_metric_paths_agree():
    g = random_er(25, 0.12, 4)
    np.testing.assert_allclose(centrality(g, "lbc").values, lbc(g).values, atol=1e-14)
    np.testing.assert_allclose(centrality(g, "dbc").values, dbc(g, exact=True).values, atol=1e-12)


def test_centrality_csv(ngraph):
    text = write_centrality_csv(ngraph, [lbc(ngraph)])
    lines = text.splitlines()
    assert lines[0] == "arc_id,source,target,value"
    assert lines[2].startswith("g,b,c,0.428571")
    both = write_centrality_csv(ngraph, [lbc(ngraph), dbc(ngraph)])
    assert both.splitlines()[0] == "arc_id,source,target,lbc,dbc"
    buf = io.StringIO()
    write_metric_csv(lateral_metric(ngraph), buf)
    assert "f,h,2,1" in buf.getvalue().splitlines()


# ---------------------------------------------------------------- efficiency

def test_efficiency_examples(path4):
    assert directed_efficiency(path4, exact=True) == Fraction(5, 12)
    eff_l = lateral_efficiency(path4, exact=True)
    assert eff_l == 0 and isinstance(eff_l, Fraction)
    star = DirectedNetwork.from_arcs([("hub", f"v{i}") for i in range(5)])
    assert lateral_efficiency(star, exact=True) == 1


def test_efficiency_needs_two_arcs():
    with pytest.raises(UndefinedStatistic):
        lateral_efficiency(DirectedNetwork.from_arcs([("a", "b")]))


def test_efficiency_against_oracle():
    for g in small_corpus(9, 30, max_arcs=9):
        if g.n_arcs < 2:
            continue
        for kind, fn in (("lateral", lateral_efficiency), ("directed", directed_efficiency)):
            d, _ = brute_distance(_arcs(g), kind)
            m = g.n_arcs
            want = sum(Fraction(1, d[i][j]) for i in range(m) for j in range(m)
                       if i != j and d[i][j]) / (m * (m - 1))
            assert fn(g, exact=True) == want


# ---------------------------------------------------------------- components

def test_components_examples():
    g1 = two_route_graph(1)
    assert sorted(map(sorted, lateral_components(g1))) == [["x0", "y0"], ["x1", "y1"]]
    g2 = two_route_graph(2)
    assert sorted(map(sorted, lateral_components(g2))) == [["x0", "y0"], ["x1"], ["x2", "y2"], ["y1"]]
    assert len(weak_arc_components(g2)) == 1
