"""End-to-end acceptance checks; each test records one PASS/FAIL line for the run summary."""

import json
import math
import time
import warnings

import numpy as np
import pytest

from lateralnet.arcpaths import (betweenness, centrality, directed_metric, lateral_components,
                                 lateral_metric, weak_arc_components)
from lateralnet.cli import main as cli_main
from lateralnet.evolve import EvolutionConfig, evolve, quality, run_grid
from lateralnet.netstats import (degree_correlation, fit_power_law, global_clustering,
                                 mean_geodesic, small_world_ness)
from lateralnet.network import (DirectedNetwork, RewireWarning, UndirectedNetwork, make_rng,
                                random_er, rewire_preserving_degrees)
from lateralnet.presheaf import (builtin_representation, check_gluing, check_stability, fibers,
                                 interface, presheaves_isomorphic, refines, same_partition,
                                 stability_conditions_m0, tensor, tensor_of_representations)

from conftest import (assert_run_invariants, equivalence_graph, gnm_corpus, record_acceptance,
                      two_route_graph)
from oracles import brute_betweenness, zeta_samples

pytestmark = pytest.mark.slow


def _arcs(g):
    return list(zip(g.src.tolist(), g.tgt.tolist()))


def _er_corpus(tag, count, max_nodes):
    out = []
    for k in range(count):
        rng = make_rng(np.random.SeedSequence([tag, k]))
        n = int(rng.integers(2, max_nodes + 1))
        out.append(random_er(n, float(rng.uniform(0.1, 0.6)), rng))
    return out


def _same_block(partition, a, b):
    return any(a in blk and b in blk for blk in partition)


def test_criterion_01_normalization():
    t0 = time.perf_counter()
    worst, used, seed = 0.0, 0, 0
    while used < 100:
        g = random_er(30, 0.1, seed)
        seed += 1
        reports = [centrality(g, "lbc"), centrality(g, "dbc")]
        if any(r.degenerate for r in reports):
            continue
        used += 1
        worst = max(worst, *(abs(r.values.sum() - 1) for r in reports))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt < 60
    record_acceptance(1, ok, f"max |sum - 1| = {worst:.2e} over 100 networks, {dt:.1f}s")
    assert ok


def test_criterion_02_oracle_equivalence():
    t0 = time.perf_counter()
    corpus = gnm_corpus(2, 500, max_arcs=12, max_nodes=8)
    mismatches = 0
    for g in corpus:
        for metric, kind in ((lateral_metric(g), "lateral"), (directed_metric(g), "directed")):
            vals, norm = brute_betweenness(_arcs(g), kind)
            r = betweenness(metric, exact=True)
            if r.normalizer != norm or list(r.exact) != vals:
                mismatches += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and dt < 120
    record_acceptance(2, ok, f"{mismatches} exact mismatches on {len(corpus)} networks (<= 12 arcs), {dt:.1f}s")
    assert ok


def test_criterion_03_fiber_oracle():
    M0 = builtin_representation("m0")
    corpus = _er_corpus(3, 200, 8)
    bad = sum(not same_partition(fibers(g, M0), lateral_components(g)) for g in corpus)
    record_acceptance(3, bad == 0, f"{bad} mismatches on {len(corpus)} digraphs (<= 8 nodes)")
    assert bad == 0


def test_criterion_04_refinement():
    M0 = builtin_representation("m0")
    names = ["y", "mu", "m1", "m2", "m4", "m1p"]
    reps = {n: builtin_representation(n) for n in names}
    corpus = _er_corpus(3, 200, 8)
    not_refined = 0
    weak_bad = 0
    for g in corpus:
        f0 = fibers(g, M0)
        for name, M in reps.items():
            fm = fibers(g, M)
            not_refined += not refines(f0, fm)
            if name == "mu":
                weak_bad += not same_partition(fm, weak_arc_components(g))
    ok = not_refined == 0 and weak_bad == 0
    record_acceptance(4, ok, f"{not_refined} refinement failures, {weak_bad} Mu/weak-component mismatches")
    assert ok


def test_criterion_05_worked_examples():
    t0 = time.perf_counter()
    rep = builtin_representation
    checks = {}
    first = DirectedNetwork.from_arcs([("s1", "s", "u1"), ("x", "u1", "v1"), ("t1", "v1", "t"),
                                       ("s2", "s", "u2"), ("y", "u2", "v2"), ("t2", "v2", "t")])
    checks["two detours: same M2 fiber"] = _same_block(fibers(first, rep("m2")), "x", "y")
    checks["two detours: laterally separate"] = not _same_block(lateral_components(first), "x", "y")
    two_path = DirectedNetwork.from_arcs([("x", "a", "b"), ("y", "b", "c")])
    checks["two-path: different M2 fibers"] = not _same_block(fibers(two_path, rep("m2")), "x", "y")
    for n in (1, 2):
        g = two_route_graph(2 * n)
        checks[f"fiber chain n={n}"] = (_same_block(fibers(g, rep(f"m{2 * n}")), f"x{n}", f"y{n}")
                                and not _same_block(fibers(g, rep(f"m{2 * (n - 1)}")), f"x{n}", f"y{n}"))
    M1p, M0 = rep("m1p"), rep("m0")
    lhs = tensor(interface(M1p, 1).presheaf, M0).presheaf
    rhs = interface(tensor_of_representations(M1p, M0), 1).presheaf
    checks["M1p interface non-isomorphism"] = not presheaves_isomorphic(lhs, rhs)
    checks["gluing M0 true"] = check_gluing(M0)
    checks["gluing y false"] = not check_gluing(rep("y"))
    for blocks in ([["1", "2", "3"], ["4", "5"]], [["a"], ["b", "c"]], [["p", "q", "r", "s"]]):
        g = equivalence_graph(blocks)
        checks[f"equivalence graph {len(blocks)} blocks"] = (check_stability(g, rep("mu"))
                                                             and stability_conditions_m0(g))
    dt = time.perf_counter() - t0
    failed = [k for k, v in checks.items() if not v]
    ok = not failed and dt < 60
    record_acceptance(5, ok, f"{len(checks) - len(failed)}/{len(checks)} worked examples, {dt:.1f}s"
                      + (f"; failed: {failed}" if failed else ""))
    assert ok


def test_criterion_06_stability_equivalence():
    M0 = builtin_representation("m0")
    corpus = _er_corpus(6, 200, 6)
    bad = sum(stability_conditions_m0(g) != check_stability(g, M0) for g in corpus)
    stable = sum(stability_conditions_m0(g) for g in corpus)
    record_acceptance(6, bad == 0, f"{bad} mismatches on {len(corpus)} networks (<= 6 nodes, {stable} stable)")
    assert bad == 0


def _load_runs(run_dir):
    return [json.loads(p.read_text()) for p in sorted(run_dir.glob("*.json"))]


def _check_run_json(d):
    qs = [q for _, q in d["q_trace"]]
    monotone = all(b > a for a, b in zip(qs, qs[1:]))
    arcs = len(d["final_arcs"]) == len(d["initial_arcs"])
    g = DirectedNetwork.from_arcs([tuple(a) for a in d["final_arcs"]], nodes=d["final_nodes"])
    consistent = quality(g, d["config"]["lam"]) == d["final_q"]
    return monotone and arcs and consistent and g.simple


def test_criterion_07_and_11_evolution(tmp_path):
    t0 = time.perf_counter()
    rows = run_grid(30, 0.1, [0.0, 1.0], 20, seed=2024, out_dir=tmp_path)
    dt = time.perf_counter() - t0
    corr = {lam: [r["corr_lbc_dbc"] for r in rows if r["lambda"] == lam and r["corr_lbc_dbc"] is not None]
            for lam in (0.0, 1.0)}
    mean0, mean1 = float(np.mean(corr[0.0])), float(np.mean(corr[1.0]))
    ok7 = mean0 < 0 < mean1 and dt < 1800
    record_acceptance(7, ok7, f"mean corr(LBC,DBC): lambda=0 {mean0:+.3f} (n={len(corr[0.0])}), "
                              f"lambda=1 {mean1:+.3f} (n={len(corr[1.0])}); {dt:.0f}s")

    # criterion 11: invariants on every run of the grid plus byte-identical reruns
    runs = _load_runs(tmp_path / "runs")
    invariant_ok = len(runs) == 40 and all(_check_run_json(d) for d in runs)
    extra = [EvolutionConfig(15, 0.15, lam, seed=s) for s, lam in enumerate((0.0, 0.3, 0.7, 1.0))]
    for cfg in extra:
        assert_run_invariants(evolve(cfg))
    rerun_ok = all(evolve(cfg).to_json() == evolve(cfg).to_json() for cfg in extra[:2])
    repeat = run_grid(30, 0.1, [0.0], 2, seed=2024, out_dir=tmp_path / "again")
    rerun_ok = rerun_ok and all(
        (tmp_path / "runs" / f"lam00_rep00{r}.json").read_bytes()
        == (tmp_path / "again" / "runs" / f"lam00_rep00{r}.json").read_bytes()
        for r in range(2)) and [r["q_final"] for r in repeat] == [r["q_final"] for r in rows[:2]]
    for d in ("c1", "c2"):
        assert cli_main(["evolve", "--out", str(tmp_path / d), "--n", "10", "--p", "0.2",
                         "--lambda-grid", "0,1", "--replicas", "2", "--seed", "9"]) == 0
    rerun_ok = rerun_ok and all((tmp_path / "c1" / f).read_bytes() == (tmp_path / "c2" / f).read_bytes()
                                for f in ("grid.csv", "aggregate.csv", "runs/lam01_rep001.json"))
    ok11 = invariant_ok and rerun_ok
    record_acceptance(11, ok11, f"invariants on {len(runs) + len(extra)} runs: {invariant_ok}; "
                                f"byte-identical reruns: {rerun_ok}")
    assert ok7 and ok11


def test_criterion_08_degree_preservation():
    corpus = gnm_corpus(2, 500, max_arcs=12, max_nodes=8) + _er_corpus(3, 200, 8)
    corpus += [random_er(30, 0.1, s) for s in range(100)]
    bad = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RewireWarning)
        for k, g in enumerate(corpus):
            h = rewire_preserving_degrees(g, seed=k).network
            bad += not (np.array_equal(np.sort(h.out_degree()), np.sort(g.out_degree()))
                        and np.array_equal(h.out_degree(), g.out_degree())
                        and np.array_equal(h.in_degree(), g.in_degree()) and h.simple)
    record_acceptance(8, bad == 0, f"{bad} degree changes over {len(corpus)} rewired networks")
    assert bad == 0


def test_criterion_09_power_law():
    t0 = time.perf_counter()
    x = zeta_samples(np.random.default_rng(20240601), 2.5, 1, 1000, 100_000)
    fit = fit_power_law(x)
    dt = time.perf_counter() - t0
    mass = float(fit.pmf().sum())
    ok = abs(fit.alpha - 2.5) <= 0.05 and abs(mass - 1) <= 1e-12 and dt < 60
    record_acceptance(9, ok, f"alpha = {fit.alpha:.4f} on [{fit.k_min}, {fit.k_max}], "
                             f"|pmf sum - 1| = {abs(mass - 1):.1e}, {dt:.1f}s")
    assert ok


def test_criterion_10_statistics():
    U = UndirectedNetwork.from_edges
    k3 = U([(0, 1), (1, 2), (0, 2)])
    k4 = U([(i, j) for i in range(4) for j in range(i + 1, 4)])
    k4e = U([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    p3 = U([(0, 1), (1, 2)])
    checks = {
        "K3 C": global_clustering(k3) == 1,
        "K4-e C": abs(global_clustering(k4e) - 0.75) < 1e-12,
        "path-3 l": abs(mean_geodesic(p3) - 4 / 3) < 1e-12,
        "path-3 r": degree_correlation(p3) == -1,
        "K4 S": abs(small_world_ness(k4) - math.log(4) / math.log(3) * 4 / 3) < 1e-9,
    }
    failed = [k for k, v in checks.items() if not v]
    record_acceptance(10, not failed, "all five spot checks" if not failed else f"failed: {failed}")
    assert not failed
