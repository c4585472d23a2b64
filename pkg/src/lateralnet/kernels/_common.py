import numpy as np

LATERAL = "lateral"
DIRECTED = "directed"


def group_by(keys, n_groups):
    """CSR grouping: arcs of group ``u`` are ``items[ptr[u]:ptr[u+1]]`` in increasing order."""
    keys = np.asarray(keys, dtype=np.int64)
    items = np.argsort(keys, kind="stable").astype(np.int64)
    ptr = np.zeros(n_groups + 1, dtype=np.int64)
    np.cumsum(np.bincount(keys, minlength=n_groups), out=ptr[1:])
    return ptr, items


def arc_adjacency(src, tgt, n_nodes, kind):
    """Deduplicated CSR adjacency on arcs.

    lateral: ``f ~ g`` iff they share a source or share a target;
    directed: ``f -> g`` iff target of ``f`` is the source of ``g``.
    Self-adjacency is never included.
    """
    src = np.asarray(src, dtype=np.int64)
    tgt = np.asarray(tgt, dtype=np.int64)
    m = len(src)
    out_ptr, out_items = group_by(src, n_nodes)
    if kind == DIRECTED:
        rows, cols = _expand(np.arange(m), tgt, out_ptr, out_items)
    elif kind == LATERAL:
        in_ptr, in_items = group_by(tgt, n_nodes)
        r1, c1 = _expand(np.arange(m), src, out_ptr, out_items)
        r2, c2 = _expand(np.arange(m), tgt, in_ptr, in_items)
        rows, cols = np.concatenate([r1, r2]), np.concatenate([c1, c2])
    else:
        raise ValueError(f"unknown adjacency kind {kind!r}")
    keep = rows != cols
    key = np.unique(rows[keep] * max(m, 1) + cols[keep])
    rows, cols = key // max(m, 1), key % max(m, 1)
    indptr = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=m), out=indptr[1:])
    return indptr, cols.astype(np.int64)


def _expand(arcs, via, ptr, items):
    # pair every arc with each member of the group selected by via[arc]
    counts = ptr[via + 1] - ptr[via]
    rows = np.repeat(arcs, counts)
    starts = np.repeat(ptr[via], counts)
    within = np.arange(len(rows)) - np.repeat(np.cumsum(counts) - counts, counts)
    return rows, items[starts + within]


def dense_adjacency(src, tgt, n_nodes, kind):
    m = len(src)
    s = np.zeros((m, n_nodes), dtype=np.float32)
    t = np.zeros((m, n_nodes), dtype=np.float32)
    s[np.arange(m), src] = 1.0
    t[np.arange(m), tgt] = 1.0
    if kind == LATERAL:
        adj = (s @ s.T + t @ t.T) > 0
    elif kind == DIRECTED:
        adj = (t @ s.T) > 0
    else:
        raise ValueError(f"unknown adjacency kind {kind!r}")
    np.fill_diagonal(adj, False)
    return adj
