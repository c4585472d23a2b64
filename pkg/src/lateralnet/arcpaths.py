"""Arc-space transforms and geodesic statistics on arcs.

Two adjacency notions live on the arc set of a directed network:

* directed: ``f -> g`` when ``f`` ends where ``g`` starts (shortest paths in
  the line graph ``R(G)``);
* lateral: ``f ~ g`` when they share a source or share a target.  Same-type
  sharing is transitive, so every shortest lateral adjacency path alternates
  between shared sources and shared targets.
"""

from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from ._unionfind import UnionFind
from .errors import UndefinedStatistic
from .network import DirectedNetwork

LATERAL = kernels.LATERAL
DIRECTED = kernels.DIRECTED


# ----------------------------------------------------------------- transforms

def r_transform(g: DirectedNetwork) -> DirectedNetwork:
    """Line graph: one node per arc, one arc ``(f, g)`` per composable pair."""
    out_ptr, out_items = kernels.group_by(g.src, g.n_nodes)
    ids = g.arc_ids
    arcs = []
    for f in range(g.n_arcs):
        v = g.tgt[f]
        for k in range(out_ptr[v], out_ptr[v + 1]):
            h = out_items[k]
            arcs.append(((ids[f], ids[h]), ids[f], ids[h]))
    return DirectedNetwork.from_arcs(arcs, nodes=ids)


def l_transform(g: DirectedNetwork) -> DirectedNetwork:
    """Left adjoint of :func:`r_transform`: every node becomes an arc.

    Node ``x`` becomes an arc ``[(x,0)] -> [(x,1)]`` where ``N x {0,1}`` is
    quotiented by ``(s,1) ~ (t,0)`` for every arc ``s -> t``.  Result nodes are
    labelled by the tuple of their ``(node, side)`` members.
    """
    n = g.n_nodes
    uf = UnionFind(2 * n)
    for s, t in zip(g.src.tolist(), g.tgt.tolist()):
        uf.union(2 * s + 1, 2 * t)
    labels, count = uf.classes()
    members = [[] for _ in range(count)]
    for k, lab in enumerate(labels):
        members[lab].append((g.nodes[k // 2], k % 2))
    names = tuple(tuple(m) for m in members)
    src = [labels[2 * x] for x in range(n)]
    tgt = [labels[2 * x + 1] for x in range(n)]
    return DirectedNetwork(names, np.array(src, dtype=np.int64), np.array(tgt, dtype=np.int64),
                           g.nodes, None)


def lateral_components(g: DirectedNetwork) -> list[list]:
    """Arc ids grouped by lateral connectivity, blocks ordered by first arc."""
    uf = UnionFind(g.n_arcs)
    first_out, first_in = {}, {}
    for f, (s, t) in enumerate(zip(g.src.tolist(), g.tgt.tolist())):
        uf.union(f, first_out.setdefault(s, f))
        uf.union(f, first_in.setdefault(t, f))
    return [[g.arc_ids[f] for f in block] for block in uf.groups()]


def weak_arc_components(g: DirectedNetwork) -> list[list]:
    """Arc ids grouped by undirected (weak) connectivity."""
    uf = UnionFind(g.n_arcs + g.n_nodes)
    m = g.n_arcs
    for f, (s, t) in enumerate(zip(g.src.tolist(), g.tgt.tolist())):
        uf.union(f, m + s)
        uf.union(f, m + t)
    labels, _ = uf.classes()
    blocks = {}
    for f in range(m):
        blocks.setdefault(labels[f], []).append(g.arc_ids[f])
    return list(blocks.values())


# ---------------------------------------------------------------- metric space

@dataclass(eq=False)
class ArcMetricSpace:
    """Geodesic structure of one adjacency notion on the arc set.

    ``distance`` is an ``|A| x |A|`` float array (``inf`` when unreachable);
    ``geodesic_counts`` is computed on first access with Python integers.
    """

    kind: str
    network: DirectedNetwork
    distance: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    _counts: np.ndarray = field(default=None, repr=False)

    @property
    def arc_ids(self):
        return self.network.arc_ids

    @property
    def size(self) -> int:
        return self.network.n_arcs

    def neighbors(self, f: int) -> np.ndarray:
        return self.indices[self.indptr[f]:self.indptr[f + 1]]

    def histogram(self) -> np.ndarray:
        """Number of ordered pairs ``f != g`` at each finite distance ``d >= 1``."""
        d = self.distance
        finite = d[np.isfinite(d) & (d > 0)].astype(np.int64)
        return np.bincount(finite, minlength=self.size + 1)[: self.size + 1]

    @property
    def geodesic_counts(self) -> np.ndarray:
        if self._counts is None:
            m = self.size
            counts = np.zeros((m, m), dtype=object)
            adj = [self.neighbors(f).tolist() for f in range(m)]
            for s in range(m):
                sigma, _, _ = _bfs_counts(s, adj)
                for v, c in sigma.items():
                    counts[s, v] = c
            self._counts = counts
        return self._counts


def _metric(g: DirectedNetwork, kind: str) -> ArcMetricSpace:
    dm = kernels.distance_matrix(g.src, g.tgt, g.n_nodes, kind).astype(np.float64)
    dm[dm < 0] = np.inf
    indptr, indices = kernels.arc_adjacency(g.src, g.tgt, g.n_nodes, kind)
    return ArcMetricSpace(kind, g, dm, indptr, indices)


def lateral_metric(g: DirectedNetwork) -> ArcMetricSpace:
    return _metric(g, LATERAL)


def directed_metric(g: DirectedNetwork) -> ArcMetricSpace:
    return _metric(g, DIRECTED)


def _bfs_counts(s, adj):
    sigma = {s: 1}
    dist = {s: 0}
    order = [s]
    queue = deque([s])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in adj[v]:
            if w not in dist:
                dist[w] = dv
                sigma[w] = 0
                order.append(w)
                queue.append(w)
            if dist[w] == dv:
                sigma[w] += sigma[v]
    return sigma, dist, order


# ------------------------------------------------------------------ centrality

@dataclass(frozen=True)
class CentralityReport:
    """Per-arc betweenness values normalised to sum to one.

    ``normalizer`` is the sum of ``distance + 1`` over ordered pairs of
    distinct arcs at finite distance.  When it is zero every value is zero
    and ``degenerate`` is set.  ``exact`` holds the rational values when the
    report was computed with exact arithmetic.
    """

    kind: str
    arc_ids: tuple
    values: np.ndarray
    normalizer: int
    degenerate: bool
    exact: tuple | None = None

    def as_dict(self):
        return dict(zip(self.arc_ids, self.values.tolist()))


def _label(kind):
    return "LBC" if kind == LATERAL else "DBC"


def betweenness(metric: ArcMetricSpace, exact: bool = False) -> CentralityReport:
    """Lateral (LBC) or directed (DBC) betweenness of every arc.

    A geodesic from ``g`` to ``h`` passes through ``f`` when ``f`` is any arc
    on it, endpoints included, so a geodesic of length ``d`` is shared by
    ``d + 1`` arcs and the normalised values sum to one.  Ordered pairs with
    ``g != h`` at finite distance contribute.

    With ``exact=True`` the dependency accumulation runs on Python integers
    and fractions; otherwise the compiled float kernel is used.
    """
    hist = metric.histogram()
    normalizer = int(np.dot(hist, np.arange(len(hist)) + 1))
    m = metric.size
    label = _label(metric.kind)
    if normalizer == 0:
        zeros = np.zeros(m)
        return CentralityReport(label, metric.arc_ids, zeros, 0, True,
                                tuple(Fraction(0) for _ in range(m)) if exact else None)
    if exact:
        raw = _brandes_exact(metric)
        fracs = tuple(Fraction(r) / normalizer for r in raw)
        return CentralityReport(label, metric.arc_ids, np.array([float(x) for x in fracs]),
                                normalizer, False, fracs)
    raw = kernels.brandes(metric.indptr, metric.indices)
    return CentralityReport(label, metric.arc_ids, raw / normalizer, normalizer, False)


def _brandes_exact(metric: ArcMetricSpace):
    m = metric.size
    adj = [metric.neighbors(f).tolist() for f in range(m)]
    pred = [[] for _ in range(m)]
    for v in range(m):
        for w in adj[v]:
            pred[w].append(v)
    score = [Fraction(0)] * m
    for s in range(m):
        sigma, dist, order = _bfs_counts(s, adj)
        delta = dict.fromkeys(order, Fraction(0))
        for w in reversed(order[1:]):
            coeff = (1 + delta[w]) / sigma[w]
            for v in pred[w]:
                if dist.get(v, -1) == dist[w] - 1:
                    delta[v] += sigma[v] * coeff
            score[w] += delta[w] + 1
        score[s] += len(order) - 1
    return score


def lbc(g: DirectedNetwork, exact: bool = False) -> CentralityReport:
    return betweenness(lateral_metric(g), exact)


def dbc(g: DirectedNetwork, exact: bool = False) -> CentralityReport:
    return betweenness(directed_metric(g), exact)


def _fast_betweenness(g: DirectedNetwork, kind: str) -> CentralityReport:
    # skips the dense distance table; used by the ensemble and evolution drivers
    hist = kernels.distance_histogram(g.src, g.tgt, g.n_nodes, kind)
    normalizer = int(np.dot(hist, np.arange(len(hist)) + 1))
    if normalizer == 0:
        return CentralityReport(_label(kind), g.arc_ids, np.zeros(g.n_arcs), 0, True)
    indptr, indices = kernels.arc_adjacency(g.src, g.tgt, g.n_nodes, kind)
    raw = kernels.brandes(indptr, indices)
    return CentralityReport(_label(kind), g.arc_ids, raw / normalizer, normalizer, False)


def centrality(g: DirectedNetwork, measure: str) -> CentralityReport:
    """``measure`` is ``"lbc"`` or ``"dbc"`` (case-insensitive)."""
    measure = measure.lower()
    if measure == "lbc":
        return _fast_betweenness(g, LATERAL)
    if measure == "dbc":
        return _fast_betweenness(g, DIRECTED)
    raise ValueError(f"unknown measure {measure!r}")


def write_centrality_csv(g: DirectedNetwork, reports, fh=None) -> str:
    """CSV ``arc_id,source,target,<kind>...``; one value column per report.

    With a single report the value column is named ``value``.
    """
    reports = list(reports)
    buf = fh if fh is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = ["value"] if len(reports) == 1 else [r.kind.lower() for r in reports]
    w.writerow(["arc_id", "source", "target", *cols])
    for k, (aid, s, t) in enumerate(g.arcs()):
        w.writerow([aid, s, t, *(repr(float(r.values[k])) for r in reports)])
    return buf.getvalue() if fh is None else ""


def write_metric_csv(metric: ArcMetricSpace, fh=None) -> str:
    """Debug dump: ``from,to,distance,count`` for every reachable ordered pair."""
    buf = fh if fh is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["from", "to", "distance", "count"])
    counts = metric.geodesic_counts
    ids = metric.arc_ids
    for i in range(metric.size):
        for j in range(metric.size):
            if np.isfinite(metric.distance[i, j]):
                w.writerow([ids[i], ids[j], int(metric.distance[i, j]), counts[i, j]])
    return buf.getvalue() if fh is None else ""


# ------------------------------------------------------------------ efficiency

def efficiency_from_histogram(hist, n_arcs: int, exact: bool = False):
    """Mean reciprocal distance over ordered distinct pairs, from a distance histogram."""
    if n_arcs < 2:
        raise UndefinedStatistic("efficiency needs at least two arcs")
    hist = np.asarray(hist)
    pairs = n_arcs * (n_arcs - 1)
    nz = np.nonzero(hist[1:])[0] + 1
    total = sum((Fraction(int(hist[d]), int(d)) for d in nz), Fraction(0))
    if exact:
        return total / pairs
    return float(total / pairs)


def efficiency(metric: ArcMetricSpace, exact: bool = False):
    return efficiency_from_histogram(metric.histogram(), metric.size, exact)


def lateral_efficiency(g: DirectedNetwork, exact: bool = False):
    return efficiency_from_histogram(kernels.distance_histogram(g.src, g.tgt, g.n_nodes, LATERAL),
                                     g.n_arcs, exact)


def directed_efficiency(g: DirectedNetwork, exact: bool = False):
    return efficiency_from_histogram(kernels.distance_histogram(g.src, g.tgt, g.n_nodes, DIRECTED),
                                     g.n_arcs, exact)
