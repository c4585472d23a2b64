import os
import sys
from pathlib import Path

import numpy as np
import pytest

from lateralnet.network import DirectedNetwork, make_rng, random_er

DATA = Path(__file__).parent / "data"

# acceptance results collected by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES = {}


def record_acceptance(number, ok, detail):
    ACCEPTANCE_LINES[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[number])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


def small_corpus(tag, count, max_arcs=12, max_nodes=7):
    """Seeded random simple digraphs with at most ``max_arcs`` arcs."""
    out = []
    k = 0
    while len(out) < count:
        rng = make_rng(np.random.SeedSequence([tag, k]))
        k += 1
        n = int(rng.integers(2, max_nodes + 1))
        p = float(rng.uniform(0.1, 0.6))
        g = random_er(n, p, rng)
        if g.n_arcs <= max_arcs:
            out.append(g)
    return out


def gnm_corpus(tag, count, max_arcs=12, max_nodes=8):
    """Simple digraphs with arc count uniform on ``1..max_arcs`` (distinct pairs, no loops)."""
    out = []
    for k in range(count):
        rng = make_rng(np.random.SeedSequence([tag, k]))
        m = int(rng.integers(1, max_arcs + 1))
        n_min = next(n for n in range(2, max_nodes + 1) if n * (n - 1) >= m)
        n = int(rng.integers(n_min, max_nodes + 1))
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        pick = rng.choice(len(pairs), size=m, replace=False)
        s, t = zip(*(pairs[i] for i in sorted(pick)))
        out.append(DirectedNetwork(tuple(str(i) for i in range(n)), s, t))
    return out


def random_multigraph(rng, max_nodes=6, max_arcs=10, loops=True):
    n = int(rng.integers(1, max_nodes + 1))
    m = int(rng.integers(0, max_arcs + 1))
    s = rng.integers(0, n, m)
    t = rng.integers(0, n, m)
    if not loops:
        keep = s != t
        s, t = s[keep], t[keep]
    return DirectedNetwork(tuple(str(i) for i in range(n)), s, t)


def two_route_graph(n):
    """Two parallel directed paths of ``n + 1`` arcs from ``s`` to ``t``: x0..xn and y0..yn."""
    xs = ["s"] + [f"u{i}" for i in range(1, n + 1)] + ["t"]
    ys = ["s"] + [f"v{i}" for i in range(1, n + 1)] + ["t"]
    arcs = []
    for i in range(n + 1):
        arcs.append((f"x{i}", xs[i], xs[i + 1]))
        arcs.append((f"y{i}", ys[i], ys[i + 1]))
    return DirectedNetwork.from_arcs(arcs)


def equivalence_graph(blocks):
    """All ordered pairs (loops included) within each block."""
    nodes = [v for b in blocks for v in b]
    arcs = [(a, b) for blk in blocks for a in blk for b in blk]
    return DirectedNetwork.from_arcs(arcs, nodes=nodes)


@pytest.fixture
def ngraph():
    return DirectedNetwork.from_arcs([("f", "a", "c"), ("g", "b", "c"), ("h", "b", "d")])


@pytest.fixture
def path4():
    return DirectedNetwork.from_arcs([("f1", "a", "b"), ("f2", "b", "c"), ("f3", "c", "d")])


@pytest.fixture
def cli_env(monkeypatch):
    monkeypatch.delenv("LATERALNET_SEED", raising=False)
    return os.environ


sys.path.insert(0, str(Path(__file__).parent))


def assert_run_invariants(run):
    """Strictly increasing Q trace, conserved arc count, and Q(final) matching the trace."""
    from lateralnet.evolve import quality
    qs = [q for _, q in run.q_trace]
    steps = [s for s, _ in run.q_trace]
    assert all(b > a for a, b in zip(qs, qs[1:]))
    assert all(b > a for a, b in zip(steps, steps[1:]))
    assert run.final.n_arcs == run.initial.n_arcs
    assert run.final.simple
    assert quality(run.final, run.config.lam, exact=True) == run.q_exact
    assert quality(run.initial, run.config.lam) == run.initial_q
