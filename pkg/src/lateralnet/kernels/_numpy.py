"""Vectorised all-sources BFS and Brandes on dense arc adjacency matrices.

Memory is O(|A|^2); intended as the portable path and as a cross-check of
the compiled kernels.
"""

import numpy as np

from ._common import arc_adjacency, dense_adjacency


def _levels(adj):
    m = adj.shape[0]
    dist = np.full((m, m), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    reached = np.eye(m, dtype=bool)
    frontier = reached.copy()
    a = adj.astype(np.float32)
    d = 0
    while frontier.any():
        d += 1
        frontier = ((frontier.astype(np.float32) @ a) > 0) & ~reached
        dist[frontier] = d
        reached |= frontier
    return dist


def distance_matrix(src, tgt, n_nodes, kind):
    return _levels(dense_adjacency(np.asarray(src), np.asarray(tgt), n_nodes, kind))


def distance_histogram(src, tgt, n_nodes, kind):
    m = len(src)
    dist = distance_matrix(src, tgt, n_nodes, kind)
    return np.bincount(dist[dist > 0], minlength=m + 1)[: m + 1].astype(np.int64)


def brandes(indptr, indices):
    """Endpoint-inclusive pair-dependency sums for all sources at once."""
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    m = len(indptr) - 1
    if m == 0:
        return np.zeros(0)
    adj = np.zeros((m, m), dtype=np.float64)
    adj[np.repeat(np.arange(m), np.diff(indptr)), indices] = 1.0
    dist = _levels(adj > 0)
    sigma = np.eye(m)
    top = int(dist.max(initial=0))
    for d in range(1, top + 1):
        layer = dist == d
        sigma[layer] = ((sigma * (dist == d - 1)) @ adj)[layer]
    delta = np.zeros((m, m))
    for d in range(top, 0, -1):
        nxt = dist == d
        coeff = np.where(nxt, (1.0 + delta) / np.where(nxt, sigma, 1.0), 0.0)
        cur = dist == d - 1
        delta[cur] = (sigma * (coeff @ adj.T))[cur]
    reach = (dist > 0)
    score = (np.where(reach, delta, 0.0) + reach).sum(axis=0)
    score += reach.sum(axis=1)
    return score


__all__ = ["distance_matrix", "distance_histogram", "brandes", "arc_adjacency"]
