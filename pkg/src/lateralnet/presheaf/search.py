"""Homomorphism and isomorphism search between finite multi-sorted unary algebras.

Presheaves (sorts = objects, operations = generator actions) and
representations (sorts = pairs of objects, operations = inner actions plus
the components of each ``M(f)``) both reduce to this shape.  The search
assigns one element at a time and propagates along operations: once ``x`` is
sent to ``b``, ``op(x)`` is forced to ``op(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ResourceLimitError

DEFAULT_BOUND = 10**6


@dataclass(frozen=True, eq=False)
class Algebra:
    """``sizes[s]`` elements per sort; ``ops[name] = (from_sort, to_sort, table)``."""

    sizes: dict
    ops: dict

    def signature(self):
        return (tuple(sorted(map(repr, self.sizes))),
                tuple(sorted((repr(k), repr(v[0]), repr(v[1])) for k, v in self.ops.items())))


def presheaf_algebra(F) -> Algebra:
    C = F.category
    ops = {n: (c, d, np.asarray(F.actions[n])) for n, d, c in C.generators}
    return Algebra(F.sizes(), ops)


def representation_algebra(M) -> Algebra:
    C = M.category
    sizes, ops = {}, {}
    for c in C.objects:
        F = M.objects[c]
        for e in C.objects:
            sizes[(c, e)] = F.size(e)
        for n, d, e in C.generators:
            ops[("act", c, n)] = ((c, e), (c, d), np.asarray(F.actions[n]))
    for n, d, c in C.generators:
        comps = M.maps[n].components
        for e in C.objects:
            ops[("map", n, e)] = ((d, e), (c, e), np.asarray(comps[e]))
    return Algebra(sizes, ops)


def _order(A: Algebra):
    """Elements in an order where forced images are reached early.

    Sorts are ranked by how many other sorts they reach through operations;
    sorts that determine more come first.
    """
    succ = {s: set() for s in A.sizes}
    for src, dst, _ in A.ops.values():
        succ[src].add(dst)
    reach = {}
    for s in A.sizes:
        seen, stack = {s}, [s]
        while stack:
            for t in succ[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        reach[s] = len(seen)
    sorts = sorted(A.sizes, key=lambda s: (-reach[s], list(A.sizes).index(s)))
    return [(s, i) for s in sorts for i in range(A.sizes[s])]


def iter_homs(A: Algebra, B: Algebra, injective: bool = False, bound: int | None = DEFAULT_BOUND):
    """Yield every homomorphism ``A -> B`` as ``{sort: index array}``.

    ``bound`` caps the number of candidate assignments tried; exceeding it
    raises :class:`ResourceLimitError`.
    """
    if set(A.sizes) != set(B.sizes) or set(A.ops) != set(B.ops):
        raise ValueError("algebras have different signatures")
    for k, (s, t, _) in A.ops.items():
        if B.ops[k][:2] != (s, t):
            raise ValueError(f"operation {k!r} is typed differently")
    if injective and any(A.sizes[s] > B.sizes[s] for s in A.sizes):
        return
    out_ops = {s: [] for s in A.sizes}
    for k, (s, t, tab) in A.ops.items():
        out_ops[s].append((t, tab, B.ops[k][2]))
    assign = {s: np.full(A.sizes[s], -1, dtype=np.int64) for s in A.sizes}
    used = {s: np.zeros(B.sizes[s], dtype=bool) for s in A.sizes} if injective else None
    order = _order(A)
    tried = [0]

    def place(s, i, b, trail):
        # assign and propagate; returns False on conflict (trail records what to undo)
        stack = [(s, i, b)]
        while stack:
            s, i, b = stack.pop()
            cur = assign[s][i]
            if cur >= 0:
                if cur != b:
                    return False
                continue
            if injective:
                if used[s][b]:
                    return False
                used[s][b] = True
            assign[s][i] = b
            trail.append((s, i))
            for t, ta, tb in out_ops[s]:
                stack.append((t, int(ta[i]), int(tb[b])))
        return True

    def undo(trail):
        for s, i in reversed(trail):
            if injective:
                used[s][assign[s][i]] = False
            assign[s][i] = -1

    def rec(k):
        while k < len(order) and assign[order[k][0]][order[k][1]] >= 0:
            k += 1
        if k == len(order):
            yield {s: a.copy() for s, a in assign.items()}
            return
        s, i = order[k]
        for b in range(B.sizes[s]):
            tried[0] += 1
            if bound is not None and tried[0] > bound:
                raise ResourceLimitError("hom-set enumeration exceeded its candidate bound", bound)
            trail = []
            if place(s, i, b, trail):
                yield from rec(k + 1)
            undo(trail)

    yield from rec(0)


def count_homs(A: Algebra, B: Algebra, bound: int | None = DEFAULT_BOUND) -> int:
    return sum(1 for _ in iter_homs(A, B, bound=bound))


def find_isomorphism(A: Algebra, B: Algebra, bound: int | None = DEFAULT_BOUND):
    """An isomorphism ``A -> B`` as ``{sort: index array}``, or ``None``."""
    if set(A.sizes) != set(B.sizes) or any(A.sizes[s] != B.sizes[s] for s in A.sizes):
        return None
    if set(A.ops) != set(B.ops):
        return None
    for h in iter_homs(A, B, injective=True, bound=bound):
        return h
    return None


def presheaves_isomorphic(F, G, bound: int | None = DEFAULT_BOUND) -> bool:
    if F.category != G.category or F.sizes() != G.sizes():
        return False
    return find_isomorphism(presheaf_algebra(F), presheaf_algebra(G), bound) is not None


def representations_isomorphic(M, N, bound: int | None = DEFAULT_BOUND) -> bool:
    if M.category != N.category:
        return False
    return find_isomorphism(representation_algebra(M), representation_algebra(N), bound) is not None


def presheaf_homs(F, G, bound: int | None = DEFAULT_BOUND):
    """Iterate presheaf morphisms ``F -> G`` as component dicts."""
    return iter_homs(presheaf_algebra(F), presheaf_algebra(G), bound=bound)
