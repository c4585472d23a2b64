"""Tensor products, interfaces, interface transformations, stability and gluing."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .._unionfind import UnionFind
from ..errors import ResourceLimitError
from ..network import DirectedNetwork
from .category import DualStructure, FreeCategory, Morphism
from .core import FinitePresheaf, PresheafMorphism, Representation, network_to_presheaf
from .search import DEFAULT_BOUND, iter_homs, presheaf_algebra


# ----------------------------------------------------------------- tensor

@dataclass(frozen=True, eq=False)
class Tensor:
    """``G (x) M`` together with the lookup behind the injections ``mu``.

    ``cls[e][(c, i, p)]`` is the class index in ``(G (x) M)(e)`` of the pair
    ``(x_i, p)`` with ``x_i in G(c)`` and ``p in M(c)(e)``.
    """

    presheaf: FinitePresheaf
    G: FinitePresheaf
    M: Representation
    cls: dict = field(repr=False)

    def mu(self, c, i) -> PresheafMorphism:
        """Injection ``mu_(c, x_i): M(c) -> G (x) M``."""
        F = self.M.objects[c]
        comps = {e: [self.cls[e][(c, i, p)] for p in range(F.size(e))] for e in F.category.objects}
        return PresheafMorphism(F, self.presheaf, comps, check=False)

    def class_of(self, e, c, i, p) -> int:
        return self.cls[e][(c, i, p)]


def tensor(G: FinitePresheaf, M: Representation) -> Tensor:
    """``(G (x) M)(e) = (sum_c G(c) x M(c)(e)) / ~`` with ``(x, M(f)p) ~ (x.f, p)``.

    Class labels are ``(c, x, p)`` label triples of the first member in
    enumeration order (objects, then elements of ``G``, then of ``M(c)(e)``).
    """
    C = G.category
    if M.category != C:
        raise ValueError("presheaf and representation live over different categories")
    elements, cls, labels_of = {}, {}, {}
    for e in C.objects:
        pairs = []
        for c in C.objects:
            Mc = M.objects[c]
            for i in range(G.size(c)):
                for p in range(Mc.size(e)):
                    pairs.append((c, i, p))
        pos = {t: k for k, t in enumerate(pairs)}
        uf = UnionFind(len(pairs))
        for n, d, c in C.generators:
            comp = M.maps[n].components[e]
            act = G.actions[n]
            for i in range(G.size(c)):
                xi = int(act[i])
                for p in range(M.objects[d].size(e)):
                    uf.union(pos[(c, i, int(comp[p]))], pos[(d, xi, p)])
        lab, count = uf.classes()
        first = [None] * count
        for k, t in enumerate(pairs):
            if first[lab[k]] is None:
                first[lab[k]] = t
        elements[e] = tuple((c, G.elements[c][i], M.objects[c].elements[e][p]) for c, i, p in first)
        cls[e] = {t: int(lab[k]) for k, t in enumerate(pairs)}
        labels_of[e] = first
    actions = {}
    for n, d, e in C.generators:
        # [(x, p)] . n = [(x, p . n)]
        tab = []
        for c, i, p in labels_of[e]:
            tab.append(cls[d][(c, i, int(M.objects[c].actions[n][p]))])
        actions[n] = tab
    return Tensor(FinitePresheaf(C, elements, actions), G, M, cls)


def tensor_of_representations(M: Representation, N: Representation) -> Representation:
    """``(M (x) N)(c) = M(c) (x) N`` with ``(M (x) N)(f) [(x, p)] = [(M(f) x, p)]``."""
    C = M.category
    parts = {c: tensor(M.objects[c], N) for c in C.objects}
    objs = {c: parts[c].presheaf for c in C.objects}
    maps = {}
    for n, d, c in C.generators:
        src, tgt = parts[d], parts[c]
        mf = M.maps[n].components
        comps = {}
        for e in C.objects:
            tab = np.empty(src.presheaf.size(e), dtype=np.int64)
            for (c2, i, p), k in src.cls[e].items():
                tab[k] = tgt.cls[e][(c2, int(mf[c2][i]), p)]
            comps[e] = tab
        maps[n] = PresheafMorphism(objs[d], objs[c], comps)
    name = f"{M.name}*{N.name}" if M.name and N.name else ""
    return Representation(C, objs, maps, name)


def tensor_power(M: Representation, k: int) -> Representation:
    out = M
    for _ in range(k - 1):
        out = tensor_of_representations(out, M)
    return out


# ----------------------------------------------------------------- interface

@dataclass(frozen=True, eq=False)
class Interface:
    """``Int_M(c)`` as compatible tuples indexed by ``keys`` (morphisms into ``c``).

    ``tuples[e][k]`` is the ``k``-th element of ``Int_M(c)(e)`` as a tuple of
    indices, entry ``j`` living in ``M(keys[j].dom)(e)``.
    """

    presheaf: FinitePresheaf
    M: Representation
    c: object
    keys: tuple
    tuples: dict = field(repr=False)

    def nu(self, f: Morphism) -> PresheafMorphism:
        """Projection ``nu_(d, f): Int_M(c) -> M(d)``."""
        j = self.keys.index(f)
        comps = {e: [t[j] for t in self.tuples[e]] for e in self.presheaf.category.objects}
        return PresheafMorphism(self.presheaf, self.M.objects[f.dom], comps, check=False)


def interface(M: Representation, c) -> Interface:
    """Limit of ``M`` over the category of elements of ``y(c)``.

    That category is a tree rooted at ``(c, id)``: the object ``(d, g)`` with
    ``g = f o h`` (``h`` its first generator) has exactly one arrow out of
    it, to ``(cod h, f)``.  Compatible tuples are enumerated by choosing the
    root component and then each subtree independently among preimages.
    """
    C = M.category
    keys = tuple(C.into(c))
    root = C.identity(c)
    children = {f: [] for f in keys}
    for g in keys:
        if g.gens:
            parent = Morphism(C._gen[g.gens[0]][1], c, g.gens[1:])
            children[parent].append(g)
    pos = {f: j for j, f in enumerate(keys)}
    tuples = {}
    for e in C.objects:
        def solve(f, value):
            # all assignments of the subtree under f given a_f = value
            subs = []
            for g in children[f]:
                comp = M.maps[g.gens[0]].components[e]
                options = []
                for a in np.nonzero(comp == value)[0].tolist():
                    options.extend([[(g, a)] + rest for rest in solve(g, a)])
                if not options:
                    return []
                subs.append(options)
            return [[item for part in combo for item in part] for combo in itertools.product(*subs)]

        found = []
        for v in range(M.objects[c].size(e)):
            for assignment in solve(root, v):
                t = [0] * len(keys)
                t[pos[root]] = v
                for g, a in assignment:
                    t[pos[g]] = a
                found.append(tuple(t))
        tuples[e] = sorted(found)
    elements = {e: tuple(tuple(M.objects[k.dom].elements[e][a] for k, a in zip(keys, t))
                         for t in tuples[e]) for e in C.objects}
    index = {e: {t: i for i, t in enumerate(tuples[e])} for e in C.objects}
    actions = {}
    for n, d, e in C.generators:
        tab = []
        for t in tuples[e]:
            moved = tuple(int(M.objects[k.dom].actions[n][a]) for k, a in zip(keys, t))
            tab.append(index[d][moved])
        actions[n] = tab
    return Interface(FinitePresheaf(C, elements, actions), M, c, keys, tuples)


# ----------------------------------------------------- interface transformation

def interface_transformation(G: FinitePresheaf, M: Representation, c, T: Tensor | None = None,
                             I: Interface | None = None) -> list:
    """Tags of ``phi_c(x) = mu_(c, x) o nu_(c, id)`` for every ``x`` in ``G(c)``.

    Each tag is the full component table of the morphism
    ``Int_M(c) -> G (x) M``, so two tags are equal exactly when the
    morphisms are.
    """
    T = T or tensor(G, M)
    I = I or interface(M, c)
    j = I.keys.index(G.category.identity(c))
    objs = G.category.objects
    tags = []
    for i in range(G.size(c)):
        tags.append(tuple(tuple(T.cls[e][(c, i, t[j])] for t in I.tuples[e]) for e in objs))
    return tags


def fibers(G, M: Representation, c=1) -> list:
    """Partition of ``G(c)`` by equal interface-transformation tags.

    ``G`` may be a presheaf or a :class:`DirectedNetwork`; blocks hold element
    labels and are ordered by first member.
    """
    if isinstance(G, DirectedNetwork):
        G = network_to_presheaf(G, M.category)
    tags = interface_transformation(G, M, c)
    blocks = {}
    for i, t in enumerate(tags):
        blocks.setdefault(t, []).append(G.elements[c][i])
    return list(blocks.values())


def refines(fine, coarse) -> bool:
    """Every block of ``fine`` lies inside one block of ``coarse``."""
    where = {x: k for k, block in enumerate(coarse) for x in block}
    return all(len({where[x] for x in block}) == 1 for block in fine)


def same_partition(p, q) -> bool:
    return sorted(map(sorted, map(lambda b: map(repr, b), p))) == \
        sorted(map(sorted, map(lambda b: map(repr, b), q)))


# ----------------------------------------------------------------- stability

@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    hom_counts: dict
    element_counts: dict
    injective: dict


def stability(G, M: Representation, bound: int = DEFAULT_BOUND) -> StabilityReport:
    """Check whether ``eta_c: G(c) -> Hom(M(c), G (x) M)``, ``x |-> mu_(c, x)``, is bijective.

    Each hom-set is enumerated outright; more than ``bound`` candidate
    assignments raises :class:`ResourceLimitError`.
    """
    if isinstance(G, DirectedNetwork):
        G = network_to_presheaf(G, M.category)
    T = tensor(G, M)
    target = presheaf_algebra(T.presheaf)
    homs, elems, inj = {}, {}, {}
    ok = True
    for c in G.category.objects:
        mus = {T.mu(c, i).table() for i in range(G.size(c))}
        n_homs = sum(1 for _ in iter_homs(presheaf_algebra(M.objects[c]), target, bound=bound))
        homs[c] = n_homs
        elems[c] = G.size(c)
        inj[c] = len(mus) == G.size(c)
        # every mu is a hom, so distinct mus exhausting the hom-set means bijective
        ok = ok and inj[c] and n_homs == len(mus)
    return StabilityReport(ok, homs, elems, inj)


def check_stability(G, M: Representation, bound: int = DEFAULT_BOUND) -> bool:
    return stability(G, M, bound).stable


def stability_conditions_m0(g: DirectedNetwork) -> bool:
    """No parallel arcs, and zigzag completion.

    Whenever ``f: a -> b`` and ``g: c -> b`` share a target and ``g`` and
    ``h: c -> d`` share a source, some arc ``a -> d`` exists.
    """
    pairs = list(zip(g.src.tolist(), g.tgt.tolist()))
    arcs = set(pairs)
    if len(arcs) != len(pairs):
        return False
    into = {}
    out = {}
    for s, t in pairs:
        into.setdefault(t, []).append(s)
        out.setdefault(s, []).append(t)
    for c, d_list in out.items():
        # targets b reached from c; every source a into such b must reach every d
        for b in d_list:
            for a in into[b]:
                for d in d_list:
                    if (a, d) not in arcs:
                        return False
    return True


# ----------------------------------------------------------------- gluing

def gluing_comparison(M: Representation, c=None):
    """Pushout of the ``M(d)`` over the interface and its comparison map to ``M(c)``.

    For every generator ``f: d -> c`` one copy of ``M(d)`` is taken; for each
    tuple of ``Int_M(c)`` the entries at the generators are identified.
    Returns ``(sizes of the pushout, per-object bijectivity of the comparison)``.
    """
    C = M.category
    if c is None:
        c = _gluing_object(C)
    gens = [(n, d) for n, d, cod in C.generators if cod == c]
    I = interface(M, c)
    col = {n: I.keys.index(C.generator(n)) for n, _ in gens}
    target = M.objects[c]
    sizes, bij = {}, {}
    for e in C.objects:
        offsets, k = {}, 0
        for n, d in gens:
            offsets[n] = k
            k += M.objects[d].size(e)
        uf = UnionFind(k)
        for t in I.tuples[e]:
            first = None
            for n, _ in gens:
                node = offsets[n] + t[col[n]]
                if first is None:
                    first = node
                else:
                    uf.union(first, node)
        lab, count = uf.classes()
        image = [None] * count
        consistent = True
        for n, d in gens:
            comp = M.maps[n].components[e]
            for p in range(M.objects[d].size(e)):
                cl = lab[offsets[n] + p]
                v = int(comp[p])
                if image[cl] is None:
                    image[cl] = v
                elif image[cl] != v:
                    consistent = False
        sizes[e] = count
        bij[e] = consistent and count == target.size(e) and len(set(image)) == count
    return sizes, bij


def _gluing_object(C: FreeCategory):
    cods = {cod for _, _, cod in C.generators}
    if len(cods) != 1:
        raise ValueError("specify the object to glue at")
    return next(iter(cods))


def check_gluing(M: Representation, c=None) -> bool:
    """Whether ``M(c)`` is the pushout of copies of ``M(d)`` glued along ``Int_M(c)``.

    On the parallel pair this is the pushout of ``M(m0)`` and ``M(m1)`` over
    the interface projections, checked at both objects.
    """
    _, bij = gluing_comparison(M, c)
    return all(bij.values())


# ------------------------------------------------------- standard representation

def standard_representation(C: FreeCategory, sigma: DualStructure, name="M0") -> Representation:
    """``M0(d)(x)``: spans ``sigma(d) -g-> e <-j- x`` modulo ``(g, j) ~ (k o g, k o j)``.

    A generator ``h: x' -> x`` acts by ``(g, j) |-> (g, j o h)`` and
    ``M0(f)`` for ``f: d -> d'`` sends ``[(g, j)]`` to ``[(g o sigma(f), j)]``.
    """
    if sigma.category != C:
        raise ValueError("dual structure belongs to another category")
    parts = {}
    for d in C.objects:
        s = sigma.obj(d)
        parts[d] = {x: _span_classes(C, s, x) for x in C.objects}
    objs = {}
    for d in C.objects:
        elements = {x: tuple(labels) for x, (_, labels, _) in parts[d].items()}
        actions = {}
        for n, x2, x in C.generators:
            h = C.generator(n)
            spans, labels, cls = parts[d][x]
            cls2 = parts[d][x2][2]
            tab = []
            for g, j in labels:
                tab.append(cls2[(g, C.compose(j, h))])
            actions[n] = tab
        objs[d] = FinitePresheaf(C, elements, actions)
    maps = {}
    for n, d, d2 in C.generators:
        sf = sigma.mor(C.generator(n))
        comps = {}
        for x in C.objects:
            _, labels, _ = parts[d][x]
            cls2 = parts[d2][x][2]
            comps[x] = [cls2[(C.compose(g, sf), j)] for g, j in labels]
        maps[n] = PresheafMorphism(objs[d], objs[d2], comps)
    return Representation(C, objs, maps, name)


def _span_classes(C: FreeCategory, s, x):
    spans = [(g, j) for e in C.objects for g in C.hom(s, e) for j in C.hom(x, e)]
    pos = {sp: k for k, sp in enumerate(spans)}
    uf = UnionFind(len(spans))
    for g, j in spans:
        for k in C.out_of(g.cod):
            if k.gens and len(k.gens) == 1:
                uf.union(pos[(g, j)], pos[(C.compose(k, g), C.compose(k, j))])
    lab, count = uf.classes()
    labels = [None] * count
    for k, sp in enumerate(spans):
        if labels[lab[k]] is None:
            labels[lab[k]] = sp
    cls = {sp: int(lab[k]) for k, sp in enumerate(spans)}
    return spans, labels, cls


def check_naturality(M: Representation) -> bool:
    return all(m.is_natural() for m in M.maps.values())


__all__ = [
    "Tensor", "tensor", "tensor_of_representations", "tensor_power", "Interface", "interface",
    "interface_transformation", "fibers", "refines", "same_partition", "StabilityReport",
    "stability", "check_stability", "stability_conditions_m0", "gluing_comparison",
    "check_gluing", "standard_representation", "check_naturality", "ResourceLimitError",
]
