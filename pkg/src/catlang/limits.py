"""Finite limits and colimits found by exhaustive search over cones.

A cone is a tuple of legs out of a vertex; it is universal when, at every
vertex, precomposition gives a bijection from morphisms into the apex onto the
cones at that vertex.  Searches walk apexes in object order and leg tuples in
hom-set order, so the first universal cone found is the one returned.
Colimits are limits in the opposite category.
"""

from dataclasses import dataclass, field
from itertools import product

from .fincat import opposite
from .results import CatlangError, NotFound

LIMIT_SHAPES = ("terminal", "binary_product", "equalizer", "pullback")
COLIMIT_SHAPES = ("initial", "binary_coproduct", "coequalizer", "pushout")
_DUAL = dict(zip(COLIMIT_SHAPES, LIMIT_SHAPES))


class ShapeError(CatlangError):
    pass


@dataclass(frozen=True)
class Diagram:
    """A small diagram: the shape name and its data (objects or morphisms)."""

    shape: str
    items: tuple = ()

    @property
    def is_colimit(self):
        return self.shape in _DUAL

    def dual(self):
        if self.shape in _DUAL:
            return Diagram(_DUAL[self.shape], self.items)
        back = {v: k for k, v in _DUAL.items()}
        return Diagram(back[self.shape], self.items)

    def __str__(self):
        return f"{self.shape}({', '.join(self.items)})"


def terminal():
    return Diagram("terminal")


def binary_product(a, b):
    return Diagram("binary_product", (a, b))


def equalizer(f, g):
    return Diagram("equalizer", (f, g))


def pullback(f, g):
    return Diagram("pullback", (f, g))


def initial():
    return Diagram("initial")


def binary_coproduct(a, b):
    return Diagram("binary_coproduct", (a, b))


def coequalizer(f, g):
    return Diagram("coequalizer", (f, g))


def pushout(f, g):
    return Diagram("pushout", (f, g))


@dataclass
class LimitWitness:
    """A universal cone together with its table of mediators.

    ``mediators[(v, legs)]`` is the unique morphism from ``v`` into the apex
    that induces the cone ``legs`` at ``v``.
    """

    diagram: Diagram
    apex: str
    legs: tuple
    mediators: dict = field(repr=False, default_factory=dict)

    def mediator(self, vertex, legs):
        return self.mediators.get((vertex, tuple(legs)))

    def __bool__(self):
        return True


@dataclass
class ColimitWitness(LimitWitness):
    """A universal cocone; legs go from the diagram into the apex."""


def _check_shape(cat, d):
    s, items = d.shape, d.items
    if s in ("terminal", "initial"):
        ok = items == ()
    elif s in ("binary_product", "binary_coproduct"):
        ok = len(items) == 2 and all(x in cat._obj_pos for x in items)
    else:
        ok = len(items) == 2 and all(f in cat._mor_pos for f in items)
        if ok:
            f, g = items
            if s in ("equalizer", "coequalizer"):
                ok = cat.ends(f) == cat.ends(g)
            elif s == "pullback":
                ok = cat.dst(f) == cat.dst(g)
            elif s == "pushout":
                ok = cat.src(f) == cat.src(g)
            else:
                ok = False
    if not ok:
        raise ShapeError(f"{d} is not a well-formed diagram")


def _targets(cat, d):
    if d.shape == "binary_product":
        return d.items
    if d.shape == "equalizer":
        return (cat.src(d.items[0]),)
    if d.shape == "pullback":
        return (cat.src(d.items[0]), cat.src(d.items[1]))
    return ()


def _is_cone(cat, d, legs):
    if d.shape == "equalizer":
        f, g = d.items
        return cat.comp(legs[0], f) == cat.comp(legs[0], g)
    if d.shape == "pullback":
        f, g = d.items
        return cat.comp(legs[0], f) == cat.comp(legs[1], g)
    return True


def cones_at(cat, d, vertex):
    """All cones over a limit diagram with the given vertex, in search order."""
    homs = [cat.hom(vertex, t) for t in _targets(cat, d)]
    return [legs for legs in product(*homs) if _is_cone(cat, d, legs)]


def _universal(cat, d, apex, legs, cones):
    mediators = {}
    for v in cat.objects:
        images = {}
        for m in cat.hom(v, apex):
            key = tuple(cat.comp(m, leg) for leg in legs)
            if key in images:
                return None
            images[key] = m
        if len(images) != len(cones[v]):
            return None
        for key, m in images.items():
            mediators[v, key] = m
    return LimitWitness(d, apex, tuple(legs), mediators)


def _as_colimit(w, d):
    return ColimitWitness(d, w.apex, w.legs, w.mediators)


def find_limit(cat, d):
    """The first universal cone over ``d``, or :class:`NotFound`."""
    if d.is_colimit:
        raise ShapeError(f"{d.shape} is a colimit shape; use find_colimit")
    _check_shape(cat, d)
    key = ("limit", d)
    if key in cat.cache:
        return cat.cache[key]
    cones = {v: cones_at(cat, d, v) for v in cat.objects}
    out = NotFound(f"no {d}", d)
    for apex in cat.objects:
        for legs in cones[apex]:
            w = _universal(cat, d, apex, legs, cones)
            if w is not None:
                out = w
                break
        else:
            continue
        break
    cat.cache[key] = out
    return out


def find_colimit(cat, d):
    """The first universal cocone under ``d``, or :class:`NotFound`."""
    if not d.is_colimit:
        raise ShapeError(f"{d.shape} is a limit shape; use find_limit")
    _check_shape(cat, d)
    w = find_limit(opposite(cat), d.dual())
    if not w:
        return NotFound(f"no {d}", d)
    return _as_colimit(w, d)


def verify_limit(cat, d, apex, legs):
    """Re-check a proposed (co)cone; returns the witness or None."""
    _check_shape(cat, d)
    if d.is_colimit:
        w = verify_limit(opposite(cat), d.dual(), apex, legs)
        return None if w is None else _as_colimit(w, d)
    legs = tuple(legs)
    targets = _targets(cat, d)
    if len(legs) != len(targets):
        return None
    for leg, t in zip(legs, targets):
        if leg not in cat._mor_pos or cat.ends(leg) != (apex, t):
            return None
    if not _is_cone(cat, d, legs):
        return None
    cones = {v: cones_at(cat, d, v) for v in cat.objects}
    return _universal(cat, d, apex, legs, cones)


def find(cat, d):
    """Dispatch to :func:`find_limit` or :func:`find_colimit`."""
    return find_colimit(cat, d) if d.is_colimit else find_limit(cat, d)


def diagrams(cat, shape):
    """Every diagram of a shape in ``cat``, in a fixed order."""
    if shape in ("terminal", "initial"):
        return [Diagram(shape)]
    if shape in ("binary_product", "binary_coproduct"):
        return [Diagram(shape, (a, b)) for a in cat.objects for b in cat.objects]
    out = []
    for f in cat.morphisms:
        for g in cat.morphisms:
            if shape in ("equalizer", "coequalizer") and cat.ends(f) == cat.ends(g):
                out.append(Diagram(shape, (f, g)))
            elif shape == "pullback" and cat.dst(f) == cat.dst(g):
                out.append(Diagram(shape, (f, g)))
            elif shape == "pushout" and cat.src(f) == cat.src(g):
                out.append(Diagram(shape, (f, g)))
    if shape not in LIMIT_SHAPES + COLIMIT_SHAPES:
        raise ShapeError(f"unknown shape {shape!r}")
    return out


def map_diagram(d, fun):
    """Image of a diagram under a functor."""
    if d.shape in ("binary_product", "binary_coproduct"):
        return Diagram(d.shape, tuple(fun.ob(x) for x in d.items))
    return Diagram(d.shape, tuple(fun.mor(f) for f in d.items))


def transport(w, fun):
    """Push a witness along a functor and re-verify it in the target.

    Returns the new witness, or None if the image is not universal.
    """
    d = map_diagram(w.diagram, fun)
    return verify_limit(fun.target, d, fun.ob(w.apex), tuple(fun.mor(f) for f in w.legs))
