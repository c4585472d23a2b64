"""Finite presheaves, their morphisms, and representations into presheaves."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..network import DirectedNetwork
from .category import FreeCategory, Morphism, parallel_arrows


def _table(values, size_hint=None):
    a = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.int64)
    if a.ndim != 1:
        a = a.reshape(-1)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FinitePresheaf:
    """Contravariant finite-set-valued functor on a free category.

    ``elements[c]`` lists the labels of ``G(c)``; ``actions[f]`` for a
    generator ``f: d -> c`` is an index array sending ``G(c)`` to ``G(d)``
    (``x |-> x.f``).
    """

    category: FreeCategory
    elements: dict
    actions: dict
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        C = self.category
        elements = {c: tuple(self.elements.get(c, ())) for c in C.objects}
        actions = {}
        for n, d, c in C.generators:
            t = _table(self.actions.get(n, ()))
            if len(t) != len(elements[c]):
                raise ValueError(f"action of {n} must have one entry per element of G({c})")
            if len(t) and (t.min() < 0 or t.max() >= len(elements[d])):
                raise ValueError(f"action of {n} leaves G({d})")
            actions[n] = t
        index = {}
        for c, labs in elements.items():
            index[c] = {x: i for i, x in enumerate(labs)}
            if len(index[c]) != len(labs):
                raise ValueError(f"duplicate element labels in G({c})")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "_index", index)

    def size(self, c) -> int:
        return len(self.elements[c])

    def sizes(self) -> dict:
        return {c: len(v) for c, v in self.elements.items()}

    def index_of(self, c, label) -> int:
        return self._index[c][label]

    def act(self, i: int, f: Morphism) -> int:
        """Index of ``x.f`` for ``x`` the ``i``-th element of ``G(cod f)``."""
        for g in reversed(f.gens):
            i = int(self.actions[g][i])
        return i

    def act_table(self, f: Morphism) -> np.ndarray:
        t = np.arange(self.size(f.cod), dtype=np.int64)
        for g in reversed(f.gens):
            t = self.actions[g][t]
        return t

    def is_empty(self) -> bool:
        return all(len(v) == 0 for v in self.elements.values())

    def signature(self):
        """Hashable summary used for quick inequality checks."""
        return tuple((c, len(self.elements[c])) for c in self.category.objects)

    def __repr__(self):
        body = ", ".join(f"{c}:{len(v)}" for c, v in self.elements.items())
        return f"FinitePresheaf({body})"


@dataclass(frozen=True, eq=False)
class PresheafMorphism:
    """Natural transformation ``source -> target`` given by index arrays per object."""

    source: FinitePresheaf
    target: FinitePresheaf
    components: dict
    check: bool = True

    def __post_init__(self):
        comps = {}
        for c in self.source.category.objects:
            t = _table(self.components.get(c, ()))
            if len(t) != self.source.size(c):
                raise ValueError(f"component at {c} has wrong length")
            if len(t) and (t.min() < 0 or t.max() >= self.target.size(c)):
                raise ValueError(f"component at {c} leaves the target")
            comps[c] = t
        object.__setattr__(self, "components", comps)
        if self.check and not self.is_natural():
            raise ValueError("family of maps is not natural")

    def is_natural(self) -> bool:
        s, t = self.source, self.target
        for n, d, c in s.category.generators:
            lhs = self.components[d][s.actions[n]]
            rhs = t.actions[n][self.components[c]]
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def table(self) -> tuple:
        return tuple(tuple(self.components[c].tolist()) for c in self.source.category.objects)

    def then(self, other: "PresheafMorphism") -> "PresheafMorphism":
        """``other o self``."""
        return PresheafMorphism(self.source, other.target,
                                {c: other.components[c][self.components[c]] for c in self.components},
                                check=False)

    def is_bijective(self) -> bool:
        for c, comp in self.components.items():
            if self.target.size(c) != len(comp) or len(np.unique(comp)) != len(comp):
                return False
        return True

    @staticmethod
    def identity(F: FinitePresheaf) -> "PresheafMorphism":
        return PresheafMorphism(F, F, {c: np.arange(F.size(c)) for c in F.category.objects}, check=False)


@dataclass(frozen=True, eq=False)
class Representation:
    """Functor from a free category into presheaves on the same category.

    ``objects[c]`` is the presheaf ``M(c)``; ``maps[f]`` for a generator
    ``f: d -> c`` is the presheaf morphism ``M(f): M(d) -> M(c)``.
    """

    category: FreeCategory
    objects: dict
    maps: dict
    name: str = ""

    def __post_init__(self):
        C = self.category
        for c in C.objects:
            if c not in self.objects:
                raise ValueError(f"M({c}) missing")
            if self.objects[c].category != C:
                raise ValueError(f"M({c}) lives over another category")
        for n, d, c in C.generators:
            m = self.maps.get(n)
            if m is None:
                raise ValueError(f"M({n}) missing")
            if m.source is not self.objects[d] or m.target is not self.objects[c]:
                raise ValueError(f"M({n}) must run M({d}) -> M({c})")
            if not m.is_natural():
                raise ValueError(f"M({n}) is not natural")

    def __call__(self, c) -> FinitePresheaf:
        return self.objects[c]

    def apply(self, f: Morphism) -> PresheafMorphism:
        out = PresheafMorphism.identity(self.objects[f.dom])
        for g in f.gens:
            out = out.then(self.maps[g])
        return out

    def __repr__(self):
        return f"Representation({self.name or '?'}: " + ", ".join(
            f"M({c})={self.objects[c]!r}" for c in self.category.objects) + ")"


# ------------------------------------------------------------------ Yoneda

def yoneda(C: FreeCategory, c) -> FinitePresheaf:
    """``y(c)(d) = hom(d, c)``; a generator acts by precomposition."""
    elements = {d: C.hom(d, c) for d in C.objects}
    index = {d: {f: i for i, f in enumerate(elements[d])} for d in C.objects}
    actions = {}
    for n, d, e in C.generators:
        g = C.generator(n)
        actions[n] = [index[d][C.compose(h, g)] for h in elements[e]]
    return FinitePresheaf(C, elements, actions)


def yoneda_representation(C: FreeCategory) -> Representation:
    objs = {c: yoneda(C, c) for c in C.objects}
    maps = {}
    for n, d, c in C.generators:
        g = C.generator(n)
        src, tgt = objs[d], objs[c]
        comps = {e: [tgt.index_of(e, C.compose(g, h)) for h in src.elements[e]] for e in C.objects}
        maps[n] = PresheafMorphism(src, tgt, comps)
    return Representation(C, objs, maps, "y")


# ------------------------------------------------------------------ networks

def network_to_presheaf(g: DirectedNetwork, C: FreeCategory | None = None) -> FinitePresheaf:
    """Nodes at object 0, arcs at object 1; ``m0`` gives sources, ``m1`` targets."""
    C = C or parallel_arrows()
    return FinitePresheaf(C, {0: g.nodes, 1: g.arc_ids}, {"m0": g.src, "m1": g.tgt})


def presheaf_to_network(G: FinitePresheaf) -> DirectedNetwork:
    return DirectedNetwork(G.elements[0], G.actions["m0"], G.actions["m1"], G.elements[1])


def graph_presheaf(nodes, arcs, C: FreeCategory | None = None) -> FinitePresheaf:
    """Presheaf on the parallel pair from node labels and ``(arc, source, target)`` triples."""
    C = C or parallel_arrows()
    idx = {v: i for i, v in enumerate(nodes)}
    return FinitePresheaf(C, {0: tuple(nodes), 1: tuple(a for a, _, _ in arcs)},
                          {"m0": [idx[s] for _, s, _ in arcs], "m1": [idx[t] for _, _, t in arcs]})


def morphism_from_labels(F: FinitePresheaf, G: FinitePresheaf, mapping: dict) -> PresheafMorphism:
    """Presheaf morphism from a ``{label: label}`` dict covering every element of ``F``.

    Labels are looked up per object, so the same label may occur at several
    objects only if it maps consistently.
    """
    comps = {}
    for c in F.category.objects:
        comps[c] = [G.index_of(c, mapping[x]) for x in F.elements[c]]
    return PresheafMorphism(F, G, comps)
