"""Finite categories given by explicit composition tables.

Composition is written in diagrammatic order throughout: ``C.comp(f, g)`` is
"first f, then g" and is defined when ``C.dst(f) == C.src(g)``.
"""

from itertools import product

import numpy as np

from .results import CatlangError, Check


class CategoryError(CatlangError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DuplicateName(CategoryError):
    pass


class DanglingEndpoint(CategoryError):
    pass


class MissingComposite(CategoryError):
    pass


class IllTypedComposite(CategoryError):
    pass


class UnitLawViolation(CategoryError):
    pass


class NonAssociative(CategoryError):
    pass


class FunctorError(CatlangError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FinCat:
    """A finite category.

    The constructor trusts its input; use :meth:`build` (or
    :func:`validate_category`) for anything that has not been checked yet.
    Objects and morphisms keep the order in which they were declared, and
    every search in the package walks them in that order.
    """

    def __init__(self, objects, ends, identity, table, name=""):
        self.name = name
        self.objects = tuple(objects)
        self._ends = dict(ends)
        self.identity = dict(identity)
        self._table = dict(table)
        self.morphisms = tuple(self._ends)
        self._obj_pos = {x: i for i, x in enumerate(self.objects)}
        self._mor_pos = {f: i for i, f in enumerate(self.morphisms)}
        homs = {}
        for f, (s, t) in self._ends.items():
            homs.setdefault((s, t), []).append(f)
        self._hom = {k: tuple(v) for k, v in homs.items()}
        self._identities = frozenset(self.identity.values())
        self.cache = {}

    @classmethod
    def build(cls, objects, morphisms, composition=(), identities=None, name=""):
        """Validate a presentation and return the category.

        ``morphisms`` holds ``(name, src, dst)`` triples and ``composition``
        holds ``(first, then, equals)`` triples.  Identities missing from
        ``identities`` are called ``id_<obj>`` and their composites are filled
        in automatically.
        """
        objects = [str(x) for x in objects]
        seen = set()
        for x in objects:
            if x in seen:
                raise DuplicateName(f"object {x!r} declared twice", x)
            seen.add(x)
        identity = {x: f"id_{x}" for x in objects}
        if identities:
            for x, f in identities.items():
                if x not in seen:
                    raise DanglingEndpoint(f"identity given for unknown object {x!r}", x)
                identity[x] = f
        ends = {}
        for x in objects:
            if identity[x] in ends:
                raise DuplicateName(f"identity name {identity[x]!r} used twice", identity[x])
            ends[identity[x]] = (x, x)
        declared = set()
        for name_, s, t in morphisms:
            if name_ in declared:
                raise DuplicateName(f"morphism {name_!r} declared twice", name_)
            declared.add(name_)
            if s not in seen or t not in seen:
                raise DanglingEndpoint(f"morphism {name_!r} has an unknown endpoint", name_)
            if name_ in ends:
                if ends[name_] != (s, t) or identity[s] != name_:
                    raise DuplicateName(f"morphism {name_!r} clashes with an identity", name_)
                continue
            ends[name_] = (s, t)

        table = {}
        for f, g, h in composition:
            for m in (f, g, h):
                if m not in ends:
                    raise DanglingEndpoint(f"composition mentions unknown morphism {m!r}", (f, g, h))
            if ends[f][1] != ends[g][0] or ends[h] != (ends[f][0], ends[g][1]):
                raise IllTypedComposite(f"{f} ; {g} = {h} is ill-typed", (f, g, h))
            if table.get((f, g), h) != h:
                raise IllTypedComposite(f"{f} ; {g} given two values", (f, g))
            table[f, g] = h
        for f, (s, t) in ends.items():
            for key in ((identity[s], f), (f, identity[t])):
                if table.setdefault(key, f) != f:
                    raise UnitLawViolation(f"{key[0]} ; {key[1]} should be {f}", key)

        cat = cls(objects, ends, identity, table, name)
        for f in cat.morphisms:
            for g in cat.hom_from(cat.dst(f)):
                if (f, g) not in table:
                    raise MissingComposite(f"no composite for {f} ; {g}", (f, g))
        bad = associativity_failure(cat)
        if bad is not None:
            raise NonAssociative("composition is not associative at %s ; %s ; %s" % bad, bad)
        return cat

    # basic access

    def src(self, f):
        return self._ends[f][0]

    def dst(self, f):
        return self._ends[f][1]

    def ends(self, f):
        return self._ends[f]

    def hom(self, x, y):
        return self._hom.get((x, y), ())

    def hom_from(self, x):
        return tuple(f for y in self.objects for f in self.hom(x, y))

    def hom_to(self, y):
        return tuple(f for x in self.objects for f in self.hom(x, y))

    def comp(self, *fs):
        """Diagrammatic composite ``fs[0] ; fs[1] ; ...``."""
        out = fs[0]
        for g in fs[1:]:
            out = self._table[out, g]
        return out

    def is_identity(self, f):
        return f in self._identities

    def obj_index(self, x):
        return self._obj_pos[x]

    def mor_index(self, f):
        return self._mor_pos[f]

    def inverse(self, f):
        s, t = self._ends[f]
        for g in self.hom(t, s):
            if self.comp(f, g) == self.identity[s] and self.comp(g, f) == self.identity[t]:
                return g
        return None

    def is_iso(self, f):
        return self.inverse(f) is not None

    def isos(self, x, y):
        return tuple(f for f in self.hom(x, y) if self.is_iso(f))

    def is_thin(self):
        return all(len(v) <= 1 for v in self._hom.values())

    def leq(self, x, y):
        return bool(self.hom(x, y))

    def composition_table(self):
        return dict(self._table)

    def __len__(self):
        return len(self.objects)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"FinCat({label}{len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def same_presentation(c, d):
    """True when two categories have literally the same data."""
    return (c.objects == d.objects and c._ends == d._ends
            and c.identity == d.identity and c._table == d._table)


def associativity_failure(cat):
    """First triple (f, g, h) with (f;g);h != f;(g;h), or None.

    Each hom-set block of the table becomes an integer array so that every
    triple over a fixed (w, x, y, z) is compared with one fancy-indexing step.
    """
    objs = cat.objects
    pos = {}
    for fs in cat._hom.values():
        for i, f in enumerate(fs):
            pos[f] = i
    blocks = {}
    for x, y, z in product(objs, repeat=3):
        hxy, hyz, hxz = cat.hom(x, y), cat.hom(y, z), cat.hom(x, z)
        if not hxy or not hyz:
            continue
        arr = np.empty((len(hxy), len(hyz)), dtype=np.int32)
        for i, f in enumerate(hxy):
            for j, g in enumerate(hyz):
                arr[i, j] = pos[cat._table[f, g]]
        blocks[x, y, z] = arr
    for w, x, y, z in product(objs, repeat=4):
        wxy, xyz = blocks.get((w, x, y)), blocks.get((x, y, z))
        if wxy is None or xyz is None:
            continue
        wyz, wxz = blocks[w, y, z], blocks[w, x, z]
        n_wx, n_xy = wxy.shape
        n_yz = xyz.shape[1]
        step = max(1, 2_000_000 // max(1, n_xy * n_yz))
        for lo in range(0, n_wx, step):
            part = wxy[lo:lo + step]
            left = wyz[part[:, :, None], np.arange(n_yz)[None, None, :]]
            right = wxz[np.arange(lo, lo + part.shape[0])[:, None, None], xyz[None, :, :]]
            bad = np.argwhere(left != right)
            if bad.size:
                i, j, k = bad[0]
                return (cat.hom(w, x)[lo + i], cat.hom(x, y)[j], cat.hom(y, z)[k])
    return None


def validate_category(presentation, name=""):
    """Build a category from its JSON-shaped presentation.

    Two shapes are accepted: ``{"objects", "morphisms", "composition"}`` and
    ``{"poset": {"elements", "leq"}}``.
    """
    if "poset" in presentation:
        p = presentation["poset"]
        return poset(p["elements"], p.get("leq", ()), name=presentation.get("name", name))
    morphisms = [(m["name"], str(m["src"]), str(m["dst"])) for m in presentation.get("morphisms", ())]
    composition = [(c["first"], c["then"], c["equals"]) for c in presentation.get("composition", ())]
    return FinCat.build(presentation["objects"], morphisms, composition,
                        identities=presentation.get("identities"),
                        name=presentation.get("name", name))


def poset(elements, leq, name=""):
    """The thin category of a finite preorder.

    ``leq`` lists generating pairs; the reflexive-transitive closure is taken.
    Non-identity morphisms are named ``le_<a>_<b>``.
    """
    elements = [str(e) for e in elements]
    n = len(elements)
    at = {e: i for i, e in enumerate(elements)}
    rel = np.eye(n, dtype=bool)
    for a, b in leq:
        a, b = str(a), str(b)
        if a not in at or b not in at:
            raise DanglingEndpoint(f"order relation mentions unknown element {(a, b)!r}", (a, b))
        rel[at[a], at[b]] = True
    for k in range(n):
        rel |= rel[:, k:k + 1] & rel[k:k + 1, :]

    def arrow(i, j):
        return f"id_{elements[i]}" if i == j else f"le_{elements[i]}_{elements[j]}"

    morphisms = [(arrow(i, j), elements[i], elements[j])
                 for i in range(n) for j in range(n) if rel[i, j] and i != j]
    composition = [(arrow(i, j), arrow(j, k), arrow(i, k))
                   for i in range(n) for j in range(n) if rel[i, j]
                   for k in range(n) if rel[j, k]]
    return FinCat.build(elements, morphisms, composition, name=name)


def opposite(cat):
    """The opposite category, sharing morphism names."""
    if "op" not in cat.cache:
        ends = {f: (t, s) for f, (s, t) in cat._ends.items()}
        table = {(g, f): h for (f, g), h in cat._table.items()}
        op = FinCat(cat.objects, ends, cat.identity, table, name=f"{cat.name}^op")
        op.cache["op"] = cat
        cat.cache["op"] = op
    return cat.cache["op"]


def slice_objects(cat, x):
    """Morphisms into x, ordered by their domain and then by declaration."""
    return tuple(f for a in cat.objects for f in cat.hom(a, x))


def slice_category(cat, x):
    """The slice C/x.

    Objects are the morphisms into x, named as in C.  A morphism from f to g
    is a morphism h of C with h;g = f and is named ``h@f>g``.
    """
    key = ("slice", x)
    if key in cat.cache:
        return cat.cache[key]
    objs = slice_objects(cat, x)
    ends, top, over = {}, {}, {}
    identity = {}
    for f in objs:
        for g in objs:
            for h in cat.hom(cat.src(f), cat.src(g)):
                if cat.comp(h, g) == f:
                    m = f"{h}@{f}>{g}"
                    ends[m] = (f, g)
                    top[m] = h
                    over[h, f, g] = m
                    if f == g and cat.is_identity(h):
                        identity[f] = m
    table = {}
    for m1, (f, g) in ends.items():
        for m2, (g2, k) in ends.items():
            if g2 == g:
                table[m1, m2] = over[cat.comp(top[m1], top[m2]), f, k]
    out = FinCat(objs, ends, identity, table, name=f"{cat.name}/{x}")
    out.cache["slice_top"] = top
    out.cache["slice_of"] = (cat, x)
    cat.cache[key] = out
    return out


def slice_domain(cat, x):
    """The forgetful functor C/x -> C."""
    s = slice_category(cat, x)
    top = s.cache["slice_top"]
    return FinFunctor(s, cat, {f: cat.src(f) for f in s.objects}, dict(top), check=False)


class FinFunctor:
    """A functor between finite categories, stored as two lookup tables."""

    def __init__(self, source, target, on_objects, on_morphisms, name="", check=True):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)
        self.name = name
        self._check_shape()
        if check:
            bad = functoriality_failure(self)
            if bad is not None:
                raise FunctorError(f"not functorial at {bad}", bad)

    def _check_shape(self):
        src, tgt = self.source, self.target
        for x in src.objects:
            if self.on_objects.get(x) not in tgt._obj_pos:
                raise FunctorError(f"object {x!r} is not sent to an object", x)
        for f in src.morphisms:
            g = self.on_morphisms.get(f)
            if g not in tgt._mor_pos:
                raise FunctorError(f"morphism {f!r} is not sent to a morphism", f)
            s, t = src.ends(f)
            if tgt.ends(g) != (self.on_objects[s], self.on_objects[t]):
                raise FunctorError(f"morphism {f!r} is sent to {g!r} with the wrong endpoints", f)

    def ob(self, x):
        return self.on_objects[x]

    def mor(self, f):
        return self.on_morphisms[f]

    def __repr__(self):
        return f"FinFunctor({self.name or '?'}: {self.source!r} -> {self.target!r})"


def functoriality_failure(fun):
    """A witness against functoriality (an object or a composable pair), or None."""
    src, tgt = fun.source, fun.target
    for x in src.objects:
        if fun.mor(src.identity[x]) != tgt.identity[fun.ob(x)]:
            return x
    for (f, g), h in src._table.items():
        if tgt.comp(fun.mor(f), fun.mor(g)) != fun.mor(h):
            return (f, g)
    return None


def identity_functor(cat):
    if "id_functor" not in cat.cache:
        cat.cache["id_functor"] = FinFunctor(
            cat, cat, {x: x for x in cat.objects}, {f: f for f in cat.morphisms},
            name=f"id_{cat.name}", check=False)
    return cat.cache["id_functor"]


def compose_functors(first, then):
    """The functor ``first ; then``."""
    if first.target is not then.source:
        raise FunctorError("functors are not composable")
    return FinFunctor(
        first.source, then.target,
        {x: then.ob(y) for x, y in first.on_objects.items()},
        {f: then.mor(g) for f, g in first.on_morphisms.items()},
        name=f"{first.name};{then.name}", check=False)


def same_functor(f1, f2):
    return (f1.source is f2.source and f1.target is f2.target
            and f1.on_objects == f2.on_objects and f1.on_morphisms == f2.on_morphisms)


class NatTrans:
    """A natural transformation ``source => target`` given by its components."""

    def __init__(self, source, target, components, check=True):
        if source.source is not target.source or source.target is not target.target:
            raise FunctorError("functors of a natural transformation must be parallel")
        self.source = source
        self.target = target
        self.components = dict(components)
        cat = source.target
        for x in source.source.objects:
            a = self.components.get(x)
            if a is None or cat.ends(a) != (source.ob(x), target.ob(x)):
                raise FunctorError(f"component at {x!r} is missing or ill-typed", x)
        if check:
            for f in source.source.morphisms:
                x, y = source.source.ends(f)
                if cat.comp(source.mor(f), self.components[y]) != cat.comp(self.components[x], target.mor(f)):
                    raise FunctorError(f"naturality fails at {f!r}", f)

    def __getitem__(self, x):
        return self.components[x]

    def is_iso(self):
        return all(self.source.target.is_iso(a) for a in self.components.values())

    def inverse(self):
        cat = self.source.target
        return NatTrans(self.target, self.source,
                        {x: cat.inverse(a) for x, a in self.components.items()}, check=False)


def identity_nat(fun):
    cat = fun.target
    return NatTrans(fun, fun, {x: cat.identity[fun.ob(x)] for x in fun.source.objects}, check=False)


def find_isomorphism(c, d):
    """An isomorphism of categories c -> d, or None.

    Plain backtracking; hom-set sizes prune the object bijection.
    """
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None
    objs = list(c.objects)

    def sizes(cat, x, y):
        return len(cat.hom(x, y))

    def assign_objects(i, omap, used):
        if i == len(objs):
            yield dict(omap)
            return
        x = objs[i]
        for y in d.objects:
            if y in used:
                continue
            if sizes(c, x, x) != sizes(d, y, y):
                continue
            if any(sizes(c, x, a) != sizes(d, y, omap[a]) or sizes(c, a, x) != sizes(d, omap[a], y)
                   for a in objs[:i]):
                continue
            omap[x] = y
            used.add(y)
            yield from assign_objects(i + 1, omap, used)
            used.discard(y)
            del omap[x]

    morphs = list(c.morphisms)
    entries = {f: [] for f in morphs}
    for (a, b), h in c._table.items():
        for m in {a, b, h}:
            entries[m].append((a, b, h))
    for omap in assign_objects(0, {}, set()):
        mmap = {}

        def consistent(f):
            for a, b, h in entries[f]:
                if a in mmap and b in mmap and h in mmap and d.comp(mmap[a], mmap[b]) != mmap[h]:
                    return False
            return True

        def assign(i, used):
            if i == len(morphs):
                return True
            f = morphs[i]
            s, t = c.ends(f)
            for g in d.hom(omap[s], omap[t]):
                if g in used or c.is_identity(f) != d.is_identity(g):
                    continue
                mmap[f] = g
                if consistent(f):
                    used.add(g)
                    if assign(i + 1, used):
                        return True
                    used.discard(g)
                del mmap[f]
            return False

        if assign(0, set()):
            return FinFunctor(c, d, omap, mmap, name="iso")
    return None


def is_gaunt(cat):
    """Check that every isomorphism is an identity.

    The witness on failure is a pair (f, inverse of f) with f not an identity.
    """
    for f in cat.morphisms:
        if cat.is_identity(f):
            continue
        g = cat.inverse(f)
        if g is not None:
            return Check(False, (f, g))
    return Check(True)
