"""Functor properties, adjoints and equivalences between finite categories."""

from dataclasses import dataclass, field

from .fincat import (FunctorError, FinFunctor, NatTrans, compose_functors,
                     functoriality_failure, identity_functor)
from .limits import LIMIT_SHAPES, diagrams, find, transport
from .results import CatlangError, NotFound, SearchBoundExceeded

MAX_OBJECTS = 8
MAX_MORPHISMS = 40


class AdjunctionError(CatlangError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class FunctorReport:
    functorial: bool
    faithful: bool
    full: bool
    essentially_surjective: bool
    preserves: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def fully_faithful(self):
        return self.faithful and self.full


def _faithful_witness(fun):
    src = fun.source
    for x in src.objects:
        for y in src.objects:
            seen = {}
            for f in src.hom(x, y):
                g = fun.mor(f)
                if g in seen:
                    return (seen[g], f)
                seen[g] = f
    return None


def _full_witness(fun):
    src, tgt = fun.source, fun.target
    for x in src.objects:
        for y in src.objects:
            image = {fun.mor(f) for f in src.hom(x, y)}
            for g in tgt.hom(fun.ob(x), fun.ob(y)):
                if g not in image:
                    return (x, y, g)
    return None


def _eso_witness(fun):
    src, tgt = fun.source, fun.target
    for d in tgt.objects:
        if not any(tgt.isos(fun.ob(c), d) for c in src.objects):
            return d
    return None


def check_functor(fun, shapes=LIMIT_SHAPES):
    """Report functoriality, faithfulness, fullness, essential surjectivity
    and, for each requested shape, whether the functor preserves limits.

    Preservation is tested by pushing every limit witness of the source along
    the functor and re-verifying the image in the target.
    """
    wit = {
        "functorial": functoriality_failure(fun),
        "faithful": _faithful_witness(fun),
        "full": _full_witness(fun),
        "essentially_surjective": _eso_witness(fun),
    }
    preserves = {}
    for shape in shapes:
        preserves[shape] = True
        for d in diagrams(fun.source, shape):
            w = find(fun.source, d)
            if w and transport(w, fun) is None:
                preserves[shape] = False
                wit[shape] = d
                break
    return FunctorReport(
        functorial=wit["functorial"] is None,
        faithful=wit["faithful"] is None,
        full=wit["full"] is None,
        essentially_surjective=wit["essentially_surjective"] is None,
        preserves=preserves,
        witnesses={k: v for k, v in wit.items() if v is not None},
    )


class Adjunction:
    """An adjunction ``left -| right`` with explicit unit and counit.

    ``left: C -> D`` and ``right: D -> C``; the unit has components
    ``c -> right(left(c))`` and the counit ``left(right(d)) -> d``.  Both
    triangle identities are checked on construction.
    """

    def __init__(self, left, right, unit, counit):
        c, d = left.source, left.target
        if right.source is not d or right.target is not c:
            raise AdjunctionError("left and right functors are not opposed")
        unit = getattr(unit, "components", unit)
        counit = getattr(counit, "components", counit)
        try:
            self.unit = NatTrans(identity_functor(c), compose_functors(left, right), unit)
            self.counit = NatTrans(compose_functors(right, left), identity_functor(d), counit)
        except FunctorError as exc:
            raise AdjunctionError(f"unit or counit is not natural: {exc}", exc.witness) from exc
        for x in c.objects:
            lx = left.ob(x)
            if d.comp(left.mor(self.unit[x]), self.counit[lx]) != d.identity[lx]:
                raise AdjunctionError(f"triangle identity fails at {x!r}", x)
        for y in d.objects:
            ry = right.ob(y)
            if c.comp(self.unit[ry], right.mor(self.counit[y])) != c.identity[ry]:
                raise AdjunctionError(f"triangle identity fails at {y!r}", y)
        self.left = left
        self.right = right

    def hom_to_right(self, x, k):
        """Transpose ``k: left(x) -> y`` to ``x -> right(y)``."""
        return self.right.target.comp(self.unit[x], self.right.mor(k))

    def hom_from_left(self, h, y):
        """Transpose ``h: x -> right(y)`` to ``left(x) -> y``."""
        return self.left.target.comp(self.left.mor(h), self.counit[y])

    def __repr__(self):
        return f"Adjunction({self.left.name or 'L'} -| {self.right.name or 'R'})"


def _thin_functor(src, tgt, omap, name):
    mmap = {f: tgt.hom(omap[src.src(f)], omap[src.dst(f)])[0] for f in src.morphisms}
    return FinFunctor(src, tgt, omap, mmap, name=name, check=False)


def _galois(fun, side):
    c, d = fun.source, fun.target
    omap = {}
    for y in d.objects:
        for x in c.objects:
            if side == "right":
                ok = all(d.leq(fun.ob(x2), y) == c.leq(x2, x) for x2 in c.objects)
            else:
                ok = all(d.leq(y, fun.ob(x2)) == c.leq(x, x2) for x2 in c.objects)
            if ok:
                omap[y] = x
                break
        else:
            return NotFound(f"no {side} adjoint: nothing universal for {y!r}", y)
    other = _thin_functor(d, c, omap, f"{side}_adjoint")
    if side == "right":
        left, right = fun, other
    else:
        left, right = other, fun
    cc, dd = left.source, left.target
    unit = {x: cc.hom(x, right.ob(left.ob(x)))[0] for x in cc.objects}
    counit = {y: dd.hom(left.ob(right.ob(y)), y)[0] for y in dd.objects}
    return Adjunction(left, right, unit, counit)


def _universal_arrows(fun, side):
    c, d = fun.source, fun.target
    choice, tables = {}, {}
    for y in d.objects:
        found = False
        for x in c.objects:
            arrows = d.hom(fun.ob(x), y) if side == "right" else d.hom(y, fun.ob(x))
            for a in arrows:
                table = {}
                ok = True
                for x2 in c.objects:
                    homs = c.hom(x2, x) if side == "right" else c.hom(x, x2)
                    images = {}
                    for h in homs:
                        k = d.comp(fun.mor(h), a) if side == "right" else d.comp(a, fun.mor(h))
                        if k in images:
                            ok = False
                            break
                        images[k] = h
                    target = d.hom(fun.ob(x2), y) if side == "right" else d.hom(y, fun.ob(x2))
                    if not ok or len(images) != len(target):
                        ok = False
                        break
                    for k, h in images.items():
                        table[x2, k] = h
                if ok:
                    choice[y] = (x, a)
                    tables[y] = table
                    found = True
                    break
            if found:
                break
        if not found:
            return NotFound(f"no {side} adjoint: nothing universal for {y!r}", y)
    omap = {y: choice[y][0] for y in d.objects}
    mmap = {}
    for u in d.morphisms:
        y, y2 = d.ends(u)
        a, a2 = choice[y][1], choice[y2][1]
        if side == "right":
            mmap[u] = tables[y2][omap[y], d.comp(a, u)]
        else:
            mmap[u] = tables[y][omap[y2], d.comp(u, a2)]
    other = FinFunctor(d, c, omap, mmap, name=f"{side}_adjoint", check=False)
    if side == "right":
        unit = {x: tables[fun.ob(x)][x, d.identity[fun.ob(x)]] for x in c.objects}
        counit = {y: choice[y][1] for y in d.objects}
        return Adjunction(fun, other, unit, counit)
    unit = {y: choice[y][1] for y in d.objects}
    counit = {x: tables[fun.ob(x)][x, d.identity[fun.ob(x)]] for x in c.objects}
    return Adjunction(other, fun, unit, counit)


def find_adjoint(fun, side="right", max_objects=MAX_OBJECTS, max_morphisms=MAX_MORPHISMS):
    """Search for a left or right adjoint of ``fun``.

    When both categories are thin, the Galois-connection test is used and no
    bound applies.  Otherwise the search builds universal arrows object by
    object and refuses inputs beyond the bound with
    :class:`SearchBoundExceeded`.  Returns an :class:`Adjunction` or
    :class:`NotFound` naming an object with no universal arrow.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    c, d = fun.source, fun.target
    if c.is_thin() and d.is_thin():
        return _galois(fun, side)
    for cat in (c, d):
        if max_objects is not None and len(cat.objects) > max_objects:
            raise SearchBoundExceeded("adjoint search (objects)", len(cat.objects), max_objects)
        if max_morphisms is not None and len(cat.morphisms) > max_morphisms:
            raise SearchBoundExceeded("adjoint search (morphisms)", len(cat.morphisms), max_morphisms)
    return _universal_arrows(fun, side)


@dataclass
class EquivalenceWitness:
    functor: FinFunctor
    inverse: FinFunctor
    adjunction: Adjunction

    @property
    def unit(self):
        return self.adjunction.unit

    @property
    def counit(self):
        return self.adjunction.counit

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotEquivalence:
    reason: str
    witness: object = None

    def __bool__(self):
        return False


def check_equivalence(fun):
    """Decide whether ``fun`` is an equivalence and, if so, build an adjoint
    quasi-inverse by choosing, for each target object, the first source
    object with an isomorphism onto it.
    """
    for kind, finder in (("faithful", _faithful_witness), ("full", _full_witness),
                         ("essentially surjective", _eso_witness)):
        bad = finder(fun)
        if bad is not None:
            return NotEquivalence(f"not {kind}", bad)
    c, d = fun.source, fun.target
    pick = {}
    for y in d.objects:
        for x in c.objects:
            isos = d.isos(fun.ob(x), y)
            if isos:
                pick[y] = (x, isos[0])
                break
    lift = {}
    for x in c.objects:
        for x2 in c.objects:
            for h in c.hom(x, x2):
                lift[x, x2, fun.mor(h)] = h
    mmap = {}
    for u in d.morphisms:
        y, y2 = d.ends(u)
        (x, i), (x2, i2) = pick[y], pick[y2]
        mmap[u] = lift[x, x2, d.comp(i, u, d.inverse(i2))]
    inv = FinFunctor(d, c, {y: pick[y][0] for y in d.objects}, mmap, name="quasi_inverse", check=False)
    unit = {}
    for x in c.objects:
        x2, i = pick[fun.ob(x)]
        unit[x] = lift[x, x2, d.inverse(i)]
    counit = {y: pick[y][1] for y in d.objects}
    return EquivalenceWitness(fun, inv, Adjunction(fun, inv, unit, counit))
