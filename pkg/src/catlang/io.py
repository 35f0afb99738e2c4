"""JSON formats for categories, functors, displayed categories and
comprehension-category bundles.

Every loader accepts a path, a JSON string already decoded into a dict, or a
dict with a ``"fixture"`` key naming one of the bundled categories.  Nested
``source``/``target``/``base`` entries may be paths, resolved relative to the
file that mentions them.
"""

import json
from pathlib import Path

from . import fixtures
from .compcat import assemble_compcat, self_indexing
from .displayed import DispCat, DispFunctor, arrow_displayed
from .fincat import FinFunctor, identity_functor, validate_category
from .results import CatlangError


class InputError(CatlangError):
    pass


def read_json(src, base_dir=None):
    """``(data, directory)`` for a path or an already-decoded value."""
    if isinstance(src, (str, Path)):
        path = Path(src)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        try:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh), path.parent
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from None
    return src, base_dir


def load_category(src, base_dir=None):
    data, _ = read_json(src, base_dir)
    if not isinstance(data, dict):
        raise InputError("a category must be a JSON object")
    if "fixture" in data:
        try:
            return fixtures.by_name(data["fixture"])
        except KeyError:
            raise InputError(f"unknown fixture {data['fixture']!r}") from None
    name = data.get("name") or (Path(src).stem if isinstance(src, (str, Path)) else "")
    try:
        return validate_category(data, name=name)
    except KeyError as exc:
        raise InputError(f"category is missing the field {exc}") from None


def dump_category(cat):
    """The explicit presentation; identities and identity composites are implicit."""
    ident = set(cat.identity.values())
    return {
        "name": cat.name,
        "objects": list(cat.objects),
        "identities": {x: cat.identity[x] for x in cat.objects if cat.identity[x] != f"id_{x}"},
        "morphisms": [{"name": f, "src": cat.src(f), "dst": cat.dst(f)}
                      for f in cat.morphisms if f not in ident],
        "composition": [{"first": f, "then": g, "equals": h}
                        for (f, g), h in cat.composition_table().items()
                        if f not in ident and g not in ident],
    }


def load_functor(src, base_dir=None):
    data, here = read_json(src, base_dir)
    try:
        source = load_category(data["source"], here)
        target = load_category(data["target"], here)
        return FinFunctor(source, target, data["object_map"], data["morphism_map"],
                          name=data.get("name", ""))
    except KeyError as exc:
        raise InputError(f"functor is missing the field {exc}") from None


def dump_functor(fun):
    return {"name": fun.name, "source": dump_category(fun.source), "target": dump_category(fun.target),
            "object_map": {x: fun.ob(x) for x in fun.source.objects},
            "morphism_map": {f: fun.mor(f) for f in fun.source.morphisms}}


def load_displayed(src, base_dir=None, base=None):
    data, here = read_json(src, base_dir)
    try:
        base = base or load_category(data["base"], here)
        dmor = [(m["name"], m["over"], m["src"], m["dst"]) for m in data.get("dmorphisms", ())]
        dcomp = [(c["first"], c["then"], c["equals"]) for c in data.get("dcomposition", ())]
        return DispCat.build(base, data["dobjects"], dmor, dcomp, didentity=data.get("didentity"),
                             name=data.get("name", ""))
    except KeyError as exc:
        raise InputError(f"displayed category is missing the field {exc}") from None


def dump_displayed(disp, include_base=True):
    ident = set(disp.didentity.values())
    out = {"name": disp.name,
           "dobjects": {x: list(names) for x, names in disp.dobjects.items()},
           "didentity": dict(disp.didentity),
           "dmorphisms": [{"name": m, "over": f, "src": a, "dst": b}
                          for m, (f, a, b) in disp._dmor.items() if m not in ident],
           "dcomposition": [{"first": m1, "then": m2, "equals": m3}
                            for (m1, m2), m3 in disp._dcomp.items()
                            if m1 not in ident and m2 not in ident]}
    if include_base:
        out["base"] = dump_category(disp.base)
    return out


def load_compcat(src, base_dir=None):
    """A comprehension-category bundle.

    ``{"base": ..., "self_indexing": true}`` is the self-indexing of the base.
    Otherwise ``"types"`` is a displayed category over the base and
    ``"comprehension"`` maps every type to a morphism into its context and
    every displayed morphism to the top of its square.
    A bare category file is read as its self-indexing.
    """
    data, here = read_json(src, base_dir)
    if "objects" in data or "poset" in data or "fixture" in data:
        return self_indexing(load_category(data, here))
    try:
        base = load_category(data["base"], here)
        if data.get("self_indexing"):
            return self_indexing(base)
        types = load_displayed(data["types"], here, base=base)
        chi = data["comprehension"]
    except KeyError as exc:
        raise InputError(f"comprehension-category bundle is missing the field {exc}") from None
    arr = arrow_displayed(base)
    omap = dict(chi["dobjects"])
    mmap = {}
    for m, (f, a, b) in types._dmor.items():
        top = chi["dmorphisms"].get(m)
        if top is None and m in types.didentity.values():
            top = base.identity[base.src(omap[a])]
        if top is None:
            raise InputError(f"comprehension does not say where {m!r} goes")
        mmap[m] = arr.square(omap[a], omap[b], top, f)
    fun = DispFunctor(identity_functor(base), types, arr, omap, mmap, name="chi")
    return assemble_compcat(types, fun, name=data.get("name", ""))


def dump_compcat(k):
    if k.comprehension.source is arrow_displayed(k.base) and k.types is arrow_displayed(k.base):
        return {"name": k.name, "base": dump_category(k.base), "self_indexing": True}
    arr = k.arrow
    chi = k.comprehension
    return {"name": k.name, "base": dump_category(k.base),
            "types": dump_displayed(k.types, include_base=False),
            "comprehension": {"dobjects": {a: chi.dob(a) for a in k.types.all_dobjects},
                              "dmorphisms": {m: arr.top[chi.dmor(m)] for m in k.types._dmor}}}


def dumps(data):
    """Deterministic JSON text."""
    return json.dumps(data, indent=2, ensure_ascii=False, default=str)
