"""JSON form of categories, presheaves and representations.

Presheaf::

    {"objects": [...], "generators": [[name, dom, cod], ...],
     "elements": {"<obj>": [label, ...]}, "actions": {"<gen>": [index, ...]}}

Representation::

    {"objects": [...], "generators": [...], "name": str,
     "values": {"<obj>": <presheaf without category keys>},
     "maps": {"<gen>": {"<obj>": [index, ...]}}}

Object keys are stringified; labels are written with ``str``.
"""

from __future__ import annotations

import json

from .category import DualStructure, FreeCategory
from .core import FinitePresheaf, PresheafMorphism, Representation


def category_to_dict(C: FreeCategory) -> dict:
    return C.describe()


def category_from_dict(d: dict) -> FreeCategory:
    return FreeCategory(tuple(d["objects"]), tuple(tuple(g) for g in d["generators"]))


def _obj_lookup(C):
    return {str(c): c for c in C.objects}


def _label(x):
    if isinstance(x, (str, int)):
        return x
    return str(x)


def presheaf_to_dict(F: FinitePresheaf, with_category=True) -> dict:
    C = F.category
    d = {
        "elements": {str(c): [_label(x) for x in F.elements[c]] for c in C.objects},
        "actions": {n: F.actions[n].tolist() for n in C.gen_names()},
    }
    if with_category:
        d = {**category_to_dict(C), **d}
    return d


def presheaf_from_dict(d: dict, C: FreeCategory | None = None) -> FinitePresheaf:
    C = C or category_from_dict(d)
    look = _obj_lookup(C)
    elements = {look[k]: tuple(v) for k, v in d["elements"].items()}
    return FinitePresheaf(C, elements, dict(d["actions"]))


def representation_to_dict(M: Representation) -> dict:
    C = M.category
    return {
        **category_to_dict(C),
        "name": M.name,
        "values": {str(c): presheaf_to_dict(M.objects[c], False) for c in C.objects},
        "maps": {n: {str(e): M.maps[n].components[e].tolist() for e in C.objects}
                 for n in C.gen_names()},
    }


def representation_from_dict(d: dict) -> Representation:
    C = category_from_dict(d)
    look = _obj_lookup(C)
    objs = {look[k]: presheaf_from_dict(v, C) for k, v in d["values"].items()}
    maps = {}
    for n, dom, cod in C.generators:
        comps = {look[k]: v for k, v in d["maps"][n].items()}
        maps[n] = PresheafMorphism(objs[dom], objs[cod], comps)
    return Representation(C, objs, maps, d.get("name", ""))


def dual_from_dict(C: FreeCategory, d: dict) -> DualStructure:
    look = _obj_lookup(C)
    om = {look[str(k)]: look[str(v)] for k, v in d["objects"].items()}
    return DualStructure(C, om, dict(d["generators"]))


def dumps(obj) -> str:
    if isinstance(obj, Representation):
        return json.dumps(representation_to_dict(obj), sort_keys=True)
    if isinstance(obj, FinitePresheaf):
        return json.dumps(presheaf_to_dict(obj), sort_keys=True)
    raise TypeError(f"cannot serialise {type(obj).__name__}")
