import numpy as np
from numba import njit

from ._common import DIRECTED, LATERAL, arc_adjacency, group_by


@njit(cache=True, nogil=True)
def _bfs_row(s, src, tgt, out_ptr, out_items, in_ptr, in_items, lateral, dist, queue,
             src_done, tgt_done):
    # node-star expansion: each star is scanned at most once per source, O(|A| + |N|)
    dist[:] = -1
    src_done[:] = False
    tgt_done[:] = False
    dist[s] = 0
    queue[0] = s
    head, tail = 0, 1
    while head < tail:
        f = queue[head]
        head += 1
        d = dist[f] + 1
        if lateral:
            u = src[f]
            if not src_done[u]:
                src_done[u] = True
                for k in range(out_ptr[u], out_ptr[u + 1]):
                    g = out_items[k]
                    if dist[g] < 0:
                        dist[g] = d
                        queue[tail] = g
                        tail += 1
            v = tgt[f]
            if not tgt_done[v]:
                tgt_done[v] = True
                for k in range(in_ptr[v], in_ptr[v + 1]):
                    g = in_items[k]
                    if dist[g] < 0:
                        dist[g] = d
                        queue[tail] = g
                        tail += 1
        else:
            v = tgt[f]
            if not src_done[v]:
                src_done[v] = True
                for k in range(out_ptr[v], out_ptr[v + 1]):
                    g = out_items[k]
                    if dist[g] < 0:
                        dist[g] = d
                        queue[tail] = g
                        tail += 1
    return tail


@njit(cache=True, nogil=True)
def _all_pairs(src, tgt, n_nodes, out_ptr, out_items, in_ptr, in_items, lateral, want_matrix):
    m = src.shape[0]
    dist = np.empty(m, np.int64)
    queue = np.empty(m, np.int64)
    src_done = np.zeros(n_nodes, np.bool_)
    tgt_done = np.zeros(n_nodes, np.bool_)
    hist = np.zeros(m + 1, np.int64)
    if want_matrix:
        mat = np.empty((m, m), np.int64)
    else:
        mat = np.empty((0, 0), np.int64)
    for s in range(m):
        reached = _bfs_row(s, src, tgt, out_ptr, out_items, in_ptr, in_items, lateral, dist,
                           queue, src_done, tgt_done)
        for k in range(1, reached):
            hist[dist[queue[k]]] += 1
        if want_matrix:
            mat[s, :] = dist
    return hist, mat


def _run(src, tgt, n_nodes, kind, want_matrix):
    src = np.ascontiguousarray(src, dtype=np.int64)
    tgt = np.ascontiguousarray(tgt, dtype=np.int64)
    out_ptr, out_items = group_by(src, n_nodes)
    in_ptr, in_items = group_by(tgt, n_nodes)
    if kind not in (LATERAL, DIRECTED):
        raise ValueError(f"unknown adjacency kind {kind!r}")
    return _all_pairs(src, tgt, n_nodes, out_ptr, out_items, in_ptr, in_items,
                      kind == LATERAL, want_matrix)


def distance_matrix(src, tgt, n_nodes, kind):
    return _run(src, tgt, n_nodes, kind, True)[1]


def distance_histogram(src, tgt, n_nodes, kind):
    return _run(src, tgt, n_nodes, kind, False)[0]


@njit(cache=True, nogil=True)
def _brandes_with_pred(indptr, indices, rindptr, rindices):
    m = indptr.shape[0] - 1
    score = np.zeros(m, np.float64)
    sigma = np.zeros(m, np.float64)
    delta = np.zeros(m, np.float64)
    dist = np.empty(m, np.int64)
    order = np.empty(m, np.int64)
    for s in range(m):
        dist[:] = -1
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head, tail = 0, 1
        while head < tail:
            v = order[head]
            head += 1
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        for i in range(tail - 1, 0, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            for k in range(rindptr[w], rindptr[w + 1]):
                v = rindices[k]
                if dist[v] >= 0 and dist[v] == dist[w] - 1:
                    delta[v] += sigma[v] * coeff
            # interior dependency plus the geodesics ending at w
            score[w] += delta[w] + 1.0
        # the source lies on every geodesic it starts
        score[s] += tail - 1
    return score


def brandes(indptr, indices):
    """Endpoint-inclusive pair-dependency sums (unnormalised), float64."""
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    m = len(indptr) - 1
    rows = np.repeat(np.arange(m), np.diff(indptr))
    order = np.lexsort((rows, indices))
    rindices = rows[order].astype(np.int64)
    rindptr = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(np.bincount(indices, minlength=m), out=rindptr[1:])
    return _brandes_with_pred(indptr, indices, rindptr, rindices)


__all__ = ["distance_matrix", "distance_histogram", "brandes", "arc_adjacency"]
