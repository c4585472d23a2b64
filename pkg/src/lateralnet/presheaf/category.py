"""Categories freely generated by finite acyclic multigraphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple


class Morphism(NamedTuple):
    """A path ``dom -> cod``; ``gens`` lists generator names in application order.

    The composite ``g_k o ... o g_1`` is stored as ``(g_1, ..., g_k)``; the
    identity on ``c`` has ``gens == ()``.
    """

    dom: object
    cod: object
    gens: tuple

    def __str__(self):
        if not self.gens:
            return f"id_{self.dom}"
        return ".".join(reversed(self.gens))


@dataclass(frozen=True, eq=False)
class FreeCategory:
    """Free category on a finite acyclic multigraph.

    ``generators`` holds ``(name, dom, cod)`` triples.  Every hom-set is
    finite and enumerated once at construction.
    """

    objects: tuple
    generators: tuple
    _gen: dict = field(default=None, repr=False)
    _hom: dict = field(default=None, repr=False)

    def __post_init__(self):
        objs = tuple(self.objects)
        gens = tuple((str(n), d, c) for n, d, c in self.generators)
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "generators", gens)
        if len(set(objs)) != len(objs):
            raise ValueError("duplicate objects")
        names = [g[0] for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for n, d, c in gens:
            if d not in objs or c not in objs:
                raise ValueError(f"generator {n} has an unknown endpoint")
        object.__setattr__(self, "_gen", {n: (d, c) for n, d, c in gens})
        object.__setattr__(self, "_hom", self._enumerate())

    def _enumerate(self):
        out_gens = {c: [] for c in self.objects}
        for n, d, c in self.generators:
            out_gens[d].append((n, c))
        hom = {(d, c): [] for d in self.objects for c in self.objects}

        def walk(start, here, path, on_path):
            hom[(start, here)].append(Morphism(start, here, tuple(path)))
            for n, nxt in out_gens[here]:
                if nxt in on_path:
                    raise ValueError("generating graph has a directed cycle")
                on_path.add(nxt)
                path.append(n)
                walk(start, nxt, path, on_path)
                path.pop()
                on_path.discard(nxt)

        for d in self.objects:
            walk(d, d, [], {d})
        return {k: tuple(v) for k, v in hom.items()}

    def generator(self, name) -> Morphism:
        d, c = self._gen[name]
        return Morphism(d, c, (name,))

    def gen_names(self):
        return [g[0] for g in self.generators]

    def hom(self, d, c) -> tuple:
        return self._hom[(d, c)]

    def into(self, c) -> list:
        """All morphisms with codomain ``c``."""
        return [f for d in self.objects for f in self._hom[(d, c)]]

    def out_of(self, d) -> list:
        return [f for c in self.objects for f in self._hom[(d, c)]]

    def morphisms(self) -> list:
        return [f for d in self.objects for c in self.objects for f in self._hom[(d, c)]]

    @staticmethod
    def identity(c) -> Morphism:
        return Morphism(c, c, ())

    @staticmethod
    def compose(g: Morphism, f: Morphism) -> Morphism:
        """``g o f`` (``f`` first)."""
        if f.cod != g.dom:
            raise ValueError(f"cannot compose {g} after {f}")
        return Morphism(f.dom, g.cod, f.gens + g.gens)

    def describe(self):
        return {"objects": list(self.objects),
                "generators": [[n, d, c] for n, d, c in self.generators]}

    def __eq__(self, other):
        return isinstance(other, FreeCategory) and (self.objects, self.generators) == (
            other.objects, other.generators)

    def __hash__(self):
        return hash((self.objects, self.generators))


@dataclass(frozen=True)
class DualStructure:
    """Isomorphism of the generating graph with its reverse.

    A generator ``f: d -> c`` goes to a generator ``sigma(f): sigma(c) -> sigma(d)``.
    """

    category: FreeCategory
    object_map: dict
    generator_map: dict

    def __post_init__(self):
        C = self.category
        om, gm = dict(self.object_map), dict(self.generator_map)
        objs = set(C.objects)
        if set(om) != objs or set(om.values()) != objs or len(om) != len(objs):
            raise ValueError("object map must be a bijection of the objects")
        names = C.gen_names()
        if sorted(gm) != sorted(names) or sorted(gm.values()) != sorted(names):
            raise ValueError("generator map must be a bijection of the generators")
        for n, d, c in C.generators:
            d2, c2 = C._gen[gm[n]]
            if (d2, c2) != (om[c], om[d]):
                raise ValueError(f"sigma({n}) must run sigma({c}) -> sigma({d})")
        object.__setattr__(self, "object_map", om)
        object.__setattr__(self, "generator_map", gm)

    def obj(self, c):
        return self.object_map[c]

    def mor(self, f: Morphism) -> Morphism:
        """Image of a path; order reverses because sigma is contravariant."""
        return Morphism(self.object_map[f.cod], self.object_map[f.dom],
                        tuple(self.generator_map[g] for g in reversed(f.gens)))


def parallel_arrows() -> FreeCategory:
    """Two objects ``0, 1`` and generators ``m0, m1: 0 -> 1``; presheaves are directed networks."""
    return FreeCategory((0, 1), (("m0", 0, 1), ("m1", 0, 1)))


def single_arrow() -> FreeCategory:
    return FreeCategory((0, 1), (("m", 0, 1),))


def swap_dual(C: FreeCategory | None = None) -> DualStructure:
    """Dual structure on the parallel pair exchanging the two generators."""
    C = C or parallel_arrows()
    return DualStructure(C, {0: 1, 1: 0}, {"m0": "m1", "m1": "m0"})


def fixed_dual(C: FreeCategory | None = None) -> DualStructure:
    """Dual structure on the parallel pair keeping each generator."""
    C = C or parallel_arrows()
    return DualStructure(C, {0: 1, 1: 0}, {"m0": "m0", "m1": "m1"})
