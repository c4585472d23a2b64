"""Named representations of the parallel pair ``m0, m1: 0 -> 1``.

Each presheaf on the parallel pair is drawn as a small directed graph
(object 0 = nodes, object 1 = arcs, ``m0`` = source, ``m1`` = target) and
each ``M(mi)`` as a graph map given on arcs and nodes.
"""

from __future__ import annotations

import re

from .category import FreeCategory, parallel_arrows
from .core import Representation, graph_presheaf, morphism_from_labels, yoneda_representation

MAX_PATH_INDEX = 8


def _path(prefix_node, prefix_arc, n_arcs, C):
    nodes = [f"{prefix_node}{i}" for i in range(n_arcs + 1)]
    arcs = [(f"{prefix_arc}{i}", nodes[i], nodes[i + 1]) for i in range(n_arcs)]
    return graph_presheaf(nodes, arcs, C)


def _rep(C, m_0, m_1, maps, name):
    M0, M1 = m_0, m_1
    return Representation(C, {0: M0, 1: M1},
                          {g: morphism_from_labels(M0, M1, mp) for g, mp in maps.items()}, name)


def path_representation(n: int, C: FreeCategory | None = None) -> Representation:
    """``M_n``: ``M_n(0)`` is a path ``a_0 .. a_n``, ``M_n(1)`` a path ``b_0 .. b_{n+1}``.

    ``m0`` sends ``a_i -> b_i`` and ``m1`` sends ``a_i -> b_{i+1}``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    C = C or parallel_arrows()
    A = _path("p", "a", n + 1, C)
    B = _path("q", "b", n + 2, C)
    m0 = {f"a{i}": f"b{i}" for i in range(n + 1)} | {f"p{i}": f"q{i}" for i in range(n + 2)}
    m1 = {f"a{i}": f"b{i + 1}" for i in range(n + 1)} | {f"p{i}": f"q{i + 1}" for i in range(n + 2)}
    return _rep(C, A, B, {"m0": m0, "m1": m1}, f"M{n}")


def m0_representation(C: FreeCategory | None = None) -> Representation:
    """``M0``: one arc ``a`` glued head-to-tail into ``q0 -b0-> q1 -b1-> q2``."""
    return path_representation(0, C)


def mu_representation(C: FreeCategory | None = None) -> Representation:
    """``M_u``: ``M_u(1)`` is ``q0 -b0-> q1 <-b1- q2``; ``m0: a -> b0``, ``m1: a -> b1``."""
    C = C or parallel_arrows()
    A = graph_presheaf(["p0", "p1"], [("a", "p0", "p1")], C)
    B = graph_presheaf(["q0", "q1", "q2"], [("b0", "q0", "q1"), ("b1", "q2", "q1")], C)
    m0 = {"a": "b0", "p0": "q0", "p1": "q1"}
    m1 = {"a": "b1", "p0": "q2", "p1": "q1"}
    return _rep(C, A, B, {"m0": m0, "m1": m1}, "Mu")


def m1prime_representation(C: FreeCategory | None = None) -> Representation:
    """``M1'``: ``q0 -b0-> q1``, two parallel arcs ``b10, b11: q1 -> q2``, ``q2 -b2-> q3``.

    ``m0: a0 -> b0, a1 -> b10`` and ``m1: a0 -> b11, a1 -> b2``.
    """
    C = C or parallel_arrows()
    A = _path("p", "a", 2, C)
    B = graph_presheaf(["q0", "q1", "q2", "q3"],
                       [("b0", "q0", "q1"), ("b10", "q1", "q2"), ("b11", "q1", "q2"), ("b2", "q2", "q3")], C)
    m0 = {"a0": "b0", "a1": "b10", "p0": "q0", "p1": "q1", "p2": "q2"}
    m1 = {"a0": "b11", "a1": "b2", "p0": "q1", "p1": "q2", "p2": "q3"}
    return _rep(C, A, B, {"m0": m0, "m1": m1}, "M1'")


def builtin_names():
    return ["y", "m0", "mu", "m1p"] + [f"m{n}" for n in range(1, MAX_PATH_INDEX + 1)]


def builtin_representation(name: str, C: FreeCategory | None = None) -> Representation:
    """Look up ``y``, ``m0``, ``mu``, ``m1p`` (also ``m1'``) or ``m<n>`` for ``n <= 8``."""
    key = name.strip().lower()
    C = C or parallel_arrows()
    if key == "y":
        return yoneda_representation(C)
    if key == "mu":
        return mu_representation(C)
    if key in ("m1p", "m1'", "m1prime"):
        return m1prime_representation(C)
    m = re.fullmatch(r"m(\d+)", key)
    if m and int(m.group(1)) <= MAX_PATH_INDEX:
        return path_representation(int(m.group(1)), C)
    raise KeyError(f"unknown representation {name!r}; choose from {', '.join(builtin_names())}")


def builtin_representations(C: FreeCategory | None = None) -> dict:
    return {n: builtin_representation(n, C) for n in builtin_names()}
