"""Directed and undirected network containers, edge-list I/O, generators and null models."""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError, ValidationError

NODES_DIRECTIVE = "# nodes:"


def make_rng(seed) -> np.random.Generator:
    """Generator for a 64-bit seed, a SeedSequence, or an existing Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed) & 0xFFFFFFFFFFFFFFFF)))


def _readonly(a):
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DirectedNetwork:
    """Finite directed multigraph ``(A, N, source, target)``.

    Nodes and arcs are stored densely: ``src[i]`` and ``tgt[i]`` are node
    indices of arc ``i``. ``nodes`` holds the external node labels and
    ``arc_ids`` the external arc labels (positions when not given).
    """

    nodes: tuple
    src: np.ndarray
    tgt: np.ndarray
    arc_ids: tuple = None
    simple: bool = None
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        src, tgt = _readonly(self.src), _readonly(self.tgt)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "tgt", tgt)
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if src.shape != tgt.shape or src.ndim != 1:
            raise ValueError("src and tgt must be 1-d arrays of equal length")
        n = len(self.nodes)
        if len(src) and (src.min() < 0 or tgt.min() < 0 or src.max() >= n or tgt.max() >= n):
            raise ValueError("arc endpoint outside the node set")
        if len(set(self.nodes)) != n:
            raise ValueError("duplicate node identifiers")
        ids = tuple(range(len(src))) if self.arc_ids is None else tuple(self.arc_ids)
        if len(ids) != len(src) or len(set(ids)) != len(ids):
            raise ValueError("arc ids must be unique, one per arc")
        object.__setattr__(self, "arc_ids", ids)
        actual = _is_simple(src, tgt, n)
        if self.simple is None:
            object.__setattr__(self, "simple", actual)
        elif self.simple and not actual:
            raise ValidationError("network flagged simple has a self-loop or duplicate arc")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.nodes)})

    @classmethod
    def from_arcs(cls, arcs: Iterable[Sequence], nodes: Iterable | None = None, simple=None):
        """Build from ``(source, target)`` or ``(arc_id, source, target)`` tuples of labels."""
        arcs = [tuple(a) for a in arcs]
        node_list = list(nodes) if nodes is not None else []
        index = {v: i for i, v in enumerate(node_list)}
        ids, src, tgt = [], [], []
        for k, a in enumerate(arcs):
            if len(a) == 2:
                aid, s, t = k, a[0], a[1]
            elif len(a) == 3:
                aid, s, t = a
            else:
                raise ValueError(f"arc spec {a!r} must have 2 or 3 entries")
            for v in (s, t):
                if v not in index:
                    if nodes is not None:
                        raise ValueError(f"arc endpoint {v!r} not among nodes")
                    index[v] = len(node_list)
                    node_list.append(v)
            ids.append(aid)
            src.append(index[s])
            tgt.append(index[t])
        return cls(tuple(node_list), np.array(src, dtype=np.int64), np.array(tgt, dtype=np.int64),
                   tuple(ids), simple)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_arcs(self) -> int:
        return len(self.src)

    def node_index(self, label) -> int:
        return self._index[label]

    def arc_index(self, arc_id) -> int:
        return self.arc_ids.index(arc_id)

    def arcs(self):
        """List of ``(arc_id, source label, target label)`` in storage order."""
        nodes = self.nodes
        return [(a, nodes[s], nodes[t]) for a, s, t in zip(self.arc_ids, self.src.tolist(), self.tgt.tolist())]

    def out_degree(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.n_nodes)

    def in_degree(self) -> np.ndarray:
        return np.bincount(self.tgt, minlength=self.n_nodes)

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.nodes, self.arc_ids)).encode())
        h.update(self.src.tobytes())
        h.update(self.tgt.tobytes())
        return h.hexdigest()

    def with_arcs(self, src, tgt, arc_ids=None) -> "DirectedNetwork":
        return DirectedNetwork(self.nodes, src, tgt, arc_ids, None)

    def __eq__(self, other):
        if not isinstance(other, DirectedNetwork):
            return NotImplemented
        return (self.nodes == other.nodes and self.arc_ids == other.arc_ids
                and np.array_equal(self.src, other.src) and np.array_equal(self.tgt, other.tgt))

    def __hash__(self):
        return hash(self.digest())

    def __repr__(self):
        return f"DirectedNetwork(|N|={self.n_nodes}, |A|={self.n_arcs}, simple={self.simple})"


def _is_simple(src, tgt, n) -> bool:
    if np.any(src == tgt):
        return False
    keys = src * max(n, 1) + tgt
    return len(np.unique(keys)) == len(keys)


@dataclass(frozen=True)
class UndirectedNetwork:
    """Simple undirected graph; ``edges`` holds sorted index pairs ``(i, j)``, ``i < j``."""

    nodes: tuple
    edges: tuple

    def __post_init__(self):
        n = len(self.nodes)
        clean = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError("self-pairs are not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError("edge endpoint outside the node set")
            clean.add((min(i, j), max(i, j)))
        if len(clean) != len(self.edges):
            raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    @classmethod
    def from_edges(cls, edges, nodes=None):
        node_list = list(nodes) if nodes is not None else []
        index = {v: i for i, v in enumerate(node_list)}
        pairs = set()
        for u, v in edges:
            for w in (u, v):
                if w not in index:
                    index[w] = len(node_list)
                    node_list.append(w)
            if u != v:
                i, j = index[u], index[v]
                pairs.add((min(i, j), max(i, j)))
        return cls(tuple(node_list), tuple(sorted(pairs)))

    @property
    def n_nodes(self):
        return len(self.nodes)

    @property
    def n_edges(self):
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n_nodes, self.n_nodes), dtype=np.int64)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        return a

    def degrees(self) -> np.ndarray:
        return self.adjacency().sum(axis=1)

    def neighbors(self):
        nbrs = [[] for _ in range(self.n_nodes)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return nbrs


# --------------------------------------------------------------------------- I/O

def parse_edge_list(text, require_simple: bool = False, exclude: Iterable = ()) -> DirectedNetwork:
    """Parse whitespace-separated ``source target`` lines.

    ``#`` starts a comment line. A ``# nodes: a b c`` header fixes node order
    and declares isolated nodes. Arcs touching a node listed in ``exclude``
    are dropped together with the node.
    """
    if not isinstance(text, str):
        text = text.read()
    excluded = {str(x) for x in exclude}
    node_list, index = [], {}

    def add(v):
        if v not in index:
            index[v] = len(node_list)
            node_list.append(v)

    src, tgt, lines, seen = [], [], [], {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith(NODES_DIRECTIVE):
                for v in line[len(NODES_DIRECTIVE):].split():
                    if v not in excluded:
                        add(v)
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 'source target', got {len(tokens)} token(s)", lineno)
        s, t = tokens
        if s in excluded or t in excluded:
            continue
        if require_simple:
            if s == t:
                raise ValidationError(f"self-loop at node {s!r}", lineno)
            if (s, t) in seen:
                raise ValidationError(f"duplicate arc {s} -> {t} (first on line {seen[(s, t)]})", lineno)
        seen.setdefault((s, t), lineno)
        add(s)
        add(t)
        src.append(index[s])
        tgt.append(index[t])
        lines.append(lineno)
    return DirectedNetwork(tuple(node_list), np.array(src, dtype=np.int64),
                           np.array(tgt, dtype=np.int64), None,
                           True if require_simple else None)


def read_edge_list(path, require_simple=False, exclude=()) -> DirectedNetwork:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), require_simple=require_simple, exclude=exclude)


def serialize_edge_list(g: DirectedNetwork) -> str:
    """Deterministic edge-list text; the node header preserves isolated nodes."""
    out = [NODES_DIRECTIVE + " " + " ".join(str(v) for v in g.nodes)]
    for _, s, t in g.arcs():
        out.append(f"{s} {t}")
    return "\n".join(out) + "\n"


def exclude_nodes(g: DirectedNetwork, labels: Iterable) -> DirectedNetwork:
    drop = {g.node_index(v) for v in labels if v in g._index}
    keep_nodes = [i for i in range(g.n_nodes) if i not in drop]
    remap = np.full(g.n_nodes, -1, dtype=np.int64)
    remap[keep_nodes] = np.arange(len(keep_nodes))
    mask = (remap[g.src] >= 0) & (remap[g.tgt] >= 0)
    ids = tuple(a for a, m in zip(g.arc_ids, mask) if m)
    return DirectedNetwork(tuple(g.nodes[i] for i in keep_nodes), remap[g.src[mask]],
                           remap[g.tgt[mask]], ids, None)


# ----------------------------------------------------------------- generators

def random_er(n: int, p: float, seed=0) -> DirectedNetwork:
    """Directed G(n, p): each ordered pair ``u != v`` is an arc with probability ``p``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = make_rng(seed)
    draw = rng.random((n, n)) < p
    np.fill_diagonal(draw, False)
    s, t = np.nonzero(draw)
    return DirectedNetwork(tuple(str(i) for i in range(n)), s, t, None, True)


@dataclass(frozen=True)
class RewireResult:
    network: DirectedNetwork
    accepted: int
    exhausted: bool


class RewireWarning(UserWarning):
    pass


def rewire_preserving_degrees(g: DirectedNetwork, swaps: int | None = None, seed=0,
                              retry_factor: int = 100) -> RewireResult:
    """Degree-preserving randomisation by repeated target swaps.

    Two distinct arcs ``a->b`` and ``c->d`` become ``a->d`` and ``c->b``.
    A proposal creating a self-loop or a duplicate arc is redrawn; after
    ``retry_factor * |A|`` consecutive rejections the walk stops and the
    network reached so far is returned with ``exhausted`` set.
    ``swaps`` defaults to ``10 * |A|`` accepted swaps.
    """
    if not g.simple:
        raise ValidationError("degree-preserving rewiring requires a simple network")
    m = g.n_arcs
    if swaps is None:
        swaps = 10 * m
    if swaps < 0:
        raise ValueError("swaps must be >= 0")
    if swaps == 0 or m == 0:
        return RewireResult(g, 0, False)
    rng = make_rng(seed)
    src = g.src.copy()
    tgt = g.tgt.copy()
    n = g.n_nodes
    present = set((src * n + tgt).tolist())
    limit = retry_factor * m
    accepted = 0
    exhausted = m < 2
    while accepted < swaps and not exhausted:
        rejected = 0
        while True:
            i, j = rng.integers(0, m, size=2)
            if i != j:
                a, b, c, d = src[i], tgt[i], src[j], tgt[j]
                if a != d and c != b and (a * n + d) not in present and (c * n + b) not in present:
                    break
            rejected += 1
            if rejected >= limit:
                exhausted = True
                break
        if exhausted:
            break
        present.difference_update((a * n + b, c * n + d))
        present.update((a * n + d, c * n + b))
        tgt[i], tgt[j] = d, b
        accepted += 1
    if exhausted:
        warnings.warn(f"rewiring stopped after {accepted} of {swaps} swaps: no valid swap found",
                      RewireWarning, stacklevel=2)
    return RewireResult(DirectedNetwork(g.nodes, src, tgt, g.arc_ids, True), accepted, exhausted)


def undirected_projection(g: DirectedNetwork) -> UndirectedNetwork:
    """Forget arc directions; antiparallel pairs collapse and self-loops vanish."""
    pairs = {(min(s, t), max(s, t)) for s, t in zip(g.src.tolist(), g.tgt.tolist()) if s != t}
    return UndirectedNetwork(g.nodes, tuple(sorted(pairs)))
