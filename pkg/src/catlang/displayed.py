"""Displayed categories over a finite base, cleavings and substitution.

Displayed objects and displayed morphisms carry globally unique names; each
knows the base object or morphism it lies over.  A displayed morphism over
``f: x -> y`` from ``a`` (over x) to ``b`` (over y) is written
``a -[f]-> b``.
"""

from dataclasses import dataclass, field

from .fincat import (FinCat, FinFunctor, FunctorError, NatTrans, associativity_failure,
                     compose_functors, identity_functor, slice_objects)
from .limits import diagrams, find_limit, transport
from .results import CatlangError, Check, NotFound


class DisplayedError(CatlangError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DispCat:
    """A displayed category over ``base``.

    ``dobjects`` maps each base object to the names over it; ``dmorphisms``
    maps a name to ``(base morphism, source, target)``; ``dcomp`` is the
    displayed composition table, again in diagrammatic order.  The
    constructor trusts its input; :meth:`build` validates.
    """

    def __init__(self, base, dobjects, dmorphisms, didentity, dcomp, name=""):
        self.base = base
        self.name = name
        self.dobjects = {x: tuple(dobjects.get(x, ())) for x in base.objects}
        self._over = {a: x for x, names in self.dobjects.items() for a in names}
        self._dmor = dict(dmorphisms)
        self.didentity = dict(didentity)
        self._dcomp = dict(dcomp)
        dhom = {}
        for m, (f, a, b) in self._dmor.items():
            dhom.setdefault((f, a, b), []).append(m)
        self._dhom = {k: tuple(v) for k, v in dhom.items()}
        self.cache = {}

    @classmethod
    def build(cls, base, dobjects, dmorphisms, dcomp=(), didentity=None, name=""):
        """Validate and build.  ``dmorphisms`` holds ``(name, over, src, dst)``;
        identities default to ``id_<dobject>``."""
        seen = set()
        objs = {}
        for x, names in dobjects.items():
            if x not in base._obj_pos:
                raise DisplayedError(f"displayed objects over unknown base object {x!r}", x)
            for a in names:
                if a in seen:
                    raise DisplayedError(f"displayed object {a!r} declared twice", a)
                seen.add(a)
            objs[x] = tuple(names)
        over = {a: x for x, names in objs.items() for a in names}
        ident = {a: f"id_{a}" for a in over}
        ident.update(didentity or {})
        dmor = {}
        for a, m in ident.items():
            if m in dmor:
                raise DisplayedError(f"identity name {m!r} used twice", m)
            dmor[m] = (base.identity[over[a]], a, a)
        for m, f, a, b in dmorphisms:
            if m in dmor and dmor[m] != (f, a, b):
                raise DisplayedError(f"displayed morphism {m!r} declared twice", m)
            if f not in base._mor_pos or a not in over or b not in over:
                raise DisplayedError(f"displayed morphism {m!r} has an unknown endpoint", m)
            if base.ends(f) != (over[a], over[b]):
                raise DisplayedError(f"displayed morphism {m!r} does not lie over {f!r}", m)
            dmor[m] = (f, a, b)
        table = {}
        for m1, m2, m3 in dcomp:
            for m in (m1, m2, m3):
                if m not in dmor:
                    raise DisplayedError(f"composition mentions unknown {m!r}", (m1, m2, m3))
            (f, a, b), (g, b2, c), (h, a3, c3) = dmor[m1], dmor[m2], dmor[m3]
            if b != b2 or (a3, c3) != (a, c) or h != base.comp(f, g):
                raise DisplayedError(f"{m1} ; {m2} = {m3} is ill-typed", (m1, m2, m3))
            table[m1, m2] = m3
        for m, (f, a, b) in dmor.items():
            for key in ((ident[a], m), (m, ident[b])):
                if table.setdefault(key, m) != m:
                    raise DisplayedError(f"unit law fails at {key}", key)
        disp = cls(base, objs, dmor, ident, table, name)
        for m1, (f, a, b) in dmor.items():
            for m2, (g, b2, c) in dmor.items():
                if b2 == b and (m1, m2) not in table:
                    raise DisplayedError(f"no displayed composite for {m1} ; {m2}", (m1, m2))
        bad = associativity_failure(total_category(disp)[0])
        if bad is not None:
            raise DisplayedError("displayed composition is not associative at %s ; %s ; %s" % bad, bad)
        return disp

    def over(self, a):
        return self._over[a]

    def dmor(self, m):
        """``(base morphism, source, target)`` of a displayed morphism."""
        return self._dmor[m]

    def over_mor(self, m):
        return self._dmor[m][0]

    def dsrc(self, m):
        return self._dmor[m][1]

    def ddst(self, m):
        return self._dmor[m][2]

    def dhom(self, f, a, b):
        return self._dhom.get((f, a, b), ())

    def dcomp(self, *ms):
        out = ms[0]
        for m in ms[1:]:
            out = self._dcomp[out, m]
        return out

    @property
    def all_dobjects(self):
        return tuple(a for x in self.base.objects for a in self.dobjects[x])

    @property
    def dmorphisms(self):
        return tuple(self._dmor)

    def is_vertical_iso(self, m):
        return fiber_category(self, self.over(self.dsrc(m))).is_iso(m)

    def __repr__(self):
        return f"DispCat({self.name or '?'} over {self.base!r}, {len(self._over)} objects)"


def total_category(disp):
    """The total category and its projection onto the base."""
    if "total" not in disp.cache:
        ends = {m: (a, b) for m, (f, a, b) in disp._dmor.items()}
        tot = FinCat(disp.all_dobjects, ends, disp.didentity, disp._dcomp, name=f"total({disp.name})")
        proj = FinFunctor(tot, disp.base, dict(disp._over),
                          {m: f for m, (f, a, b) in disp._dmor.items()}, name="projection", check=False)
        disp.cache["total"] = (tot, proj)
    return disp.cache["total"]


def fiber_category(disp, x):
    """The fiber over a base object: displayed objects over x and morphisms over id_x."""
    key = ("fiber", x)
    if key not in disp.cache:
        idx = disp.base.identity[x]
        objs = disp.dobjects[x]
        ends = {m: (a, b) for m, (f, a, b) in disp._dmor.items() if f == idx}
        table = {(m1, m2): disp._dcomp[m1, m2]
                 for m1, (a, b) in ends.items() for m2, (b2, c) in ends.items() if b2 == b}
        disp.cache[key] = FinCat(objs, ends, {a: disp.didentity[a] for a in objs}, table,
                                 name=f"{disp.name}[{x}]")
    return disp.cache[key]


def is_cartesian(disp, m):
    """Check the Cartesian property of a displayed morphism exhaustively.

    The witness on failure names a morphism ``hbar`` over ``g;f`` and the
    number of its factorizations through ``m`` over ``g`` (which should be 1).
    """
    memo = disp.cache.setdefault("cartesian", {})
    if m in memo:
        return memo[m]
    base = disp.base
    f, a, b = disp.dmor(m)
    x = base.src(f)
    out = Check(True)
    for w in base.objects:
        for g in base.hom(w, x):
            gf = base.comp(g, f)
            for c in disp.dobjects[w]:
                for h in disp.dhom(gf, c, b):
                    n = sum(1 for k in disp.dhom(g, c, a) if disp.dcomp(k, m) == h)
                    if n != 1:
                        out = Check(False, {"over": g, "source": c, "morphism": h, "factorizations": n})
                        break
                if not out:
                    break
            if not out:
                break
        if not out:
            break
    memo[m] = out
    return out


def factor(disp, m, g, h):
    """The unique displayed morphism ``k`` over ``g`` with ``k ; m == h``."""
    a = disp.dsrc(m)
    c = disp.dsrc(h)
    found = [k for k in disp.dhom(g, c, a) if disp.dcomp(k, m) == h]
    if len(found) != 1:
        raise DisplayedError(f"{h} has {len(found)} factorizations through {m} over {g}", (m, g, h))
    return found[0]


class Cleaving:
    """A choice of Cartesian lift for every base morphism and displayed target.

    ``lifts[(f, b)]`` is a Cartesian displayed morphism over ``f`` into ``b``.
    """

    def __init__(self, disp, lifts, check=True):
        self.disp = disp
        self.lifts = dict(lifts)
        base = disp.base
        for f in base.morphisms:
            for b in disp.dobjects[base.dst(f)]:
                m = self.lifts.get((f, b))
                if m is None or m not in disp._dmor or disp.over_mor(m) != f or disp.ddst(m) != b:
                    raise DisplayedError(f"no valid lift of {f!r} at {b!r}", (f, b))
                if check:
                    c = is_cartesian(disp, m)
                    if not c:
                        raise DisplayedError(f"chosen lift {m!r} is not Cartesian", (m, c.witness))
        self.cache = {}

    def lift(self, f, b):
        return self.lifts[f, b]

    def reindex(self, f, b):
        """The displayed object f*b."""
        return self.disp.dsrc(self.lifts[f, b])


def find_cleaving(disp):
    """Choose, for each ``(f, b)``, the first Cartesian lift in declaration order.

    Returns a :class:`Cleaving`, or :class:`NotFound` whose witness is the
    pair ``(f, b)`` that has no Cartesian lift.
    """
    base = disp.base
    lifts = {}
    for f in base.morphisms:
        x, y = base.ends(f)
        for b in disp.dobjects[y]:
            for a in disp.dobjects[x]:
                cand = [m for m in disp.dhom(f, a, b) if is_cartesian(disp, m)]
                if cand:
                    lifts[f, b] = cand[0]
                    break
            else:
                return NotFound(f"no Cartesian lift of {f!r} at {b!r}", (f, b))
    return Cleaving(disp, lifts, check=False)


def substitution_functor(cleaving, f):
    """The reindexing functor ``f*: D[y] -> D[x]`` for ``f: x -> y``."""
    key = ("subst", f)
    if key not in cleaving.cache:
        disp = cleaving.disp
        base = disp.base
        x, y = base.ends(f)
        src, tgt = fiber_category(disp, y), fiber_category(disp, x)
        omap = {b: cleaving.reindex(f, b) for b in src.objects}
        mmap = {}
        for v in src.morphisms:
            b1, b2 = src.ends(v)
            h = disp.dcomp(cleaving.lift(f, b1), v)
            mmap[v] = factor(disp, cleaving.lift(f, b2), base.identity[x], h)
        cleaving.cache[key] = FinFunctor(src, tgt, omap, mmap, name=f"{f}*", check=False)
    return cleaving.cache[key]


def identity_comparison(cleaving, x):
    """The vertical natural isomorphism ``id_x* => id`` on the fiber over x."""
    idx = cleaving.disp.base.identity[x]
    sub = substitution_functor(cleaving, idx)
    comps = {b: cleaving.lift(idx, b) for b in sub.source.objects}
    return NatTrans(sub, identity_functor(sub.source), comps)


def composite_comparison(cleaving, f, g):
    """The vertical natural isomorphism ``(f;g)* => g* ; f*``."""
    disp = cleaving.disp
    base = disp.base
    x = base.src(f)
    fg = base.comp(f, g)
    sub_fg = substitution_functor(cleaving, fg)
    both = compose_functors(substitution_functor(cleaving, g), substitution_functor(cleaving, f))
    comps = {}
    for c in sub_fg.source.objects:
        b = cleaving.reindex(g, c)
        k = factor(disp, cleaving.lift(g, c), f, cleaving.lift(fg, c))
        comps[c] = factor(disp, cleaving.lift(f, b), base.identity[x], k)
    return NatTrans(sub_fg, both, comps)


@dataclass
class FiberwiseReport:
    """Limits of one shape in every fiber, and their stability under reindexing."""

    shape: str
    witnesses: dict = field(default_factory=dict)
    missing: list = field(default_factory=list)
    unpreserved: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.missing and not self.unpreserved

    def __bool__(self):
        return self.ok

    def witness(self, x, d):
        return self.witnesses[x][d]


def check_fiberwise_limits(cleaving, shape):
    """Find limits of ``shape`` in each fiber and check every ``f*`` preserves them."""
    disp = cleaving.disp
    base = disp.base
    rep = FiberwiseReport(shape)
    for x in base.objects:
        fib = fiber_category(disp, x)
        found = {}
        for d in diagrams(fib, shape):
            w = find_limit(fib, d)
            if w:
                found[d] = w
            else:
                rep.missing.append((x, d))
        rep.witnesses[x] = found
    for f in base.morphisms:
        sub = substitution_functor(cleaving, f)
        for d, w in rep.witnesses[base.dst(f)].items():
            if transport(w, sub) is None:
                rep.unpreserved.append((f, d))
                break
    return rep


class DispFunctor:
    """A displayed functor over a base functor ``over``."""

    def __init__(self, over, source, target, on_dobjects, on_dmorphisms, name="", check=True):
        if source.base is not over.source or target.base is not over.target:
            raise DisplayedError("displayed functor does not lie over its base functor")
        self.over = over
        self.source = source
        self.target = target
        self.on_dobjects = dict(on_dobjects)
        self.on_dmorphisms = dict(on_dmorphisms)
        self.name = name
        for a in source.all_dobjects:
            b = self.on_dobjects.get(a)
            if b not in target._over or target.over(b) != over.ob(source.over(a)):
                raise DisplayedError(f"displayed object {a!r} is sent off the right fiber", a)
        for m, (f, a, b) in source._dmor.items():
            n = self.on_dmorphisms.get(m)
            if n not in target._dmor or target.dmor(n) != (over.mor(f), self.on_dobjects[a], self.on_dobjects[b]):
                raise DisplayedError(f"displayed morphism {m!r} is sent to an ill-typed image", m)
        if check:
            for a in source.all_dobjects:
                if self.on_dmorphisms[source.didentity[a]] != target.didentity[self.on_dobjects[a]]:
                    raise DisplayedError(f"identity on {a!r} is not preserved", a)
            for (m1, m2), m3 in source._dcomp.items():
                if target.dcomp(self.dmor(m1), self.dmor(m2)) != self.dmor(m3):
                    raise DisplayedError(f"composite {m1} ; {m2} is not preserved", (m1, m2))

    def dob(self, a):
        return self.on_dobjects[a]

    def dmor(self, m):
        return self.on_dmorphisms[m]

    def __repr__(self):
        return f"DispFunctor({self.name or '?'} over {self.over.name or '?'})"


def identity_disp_functor(disp):
    if "id_functor" not in disp.cache:
        disp.cache["id_functor"] = DispFunctor(
            identity_functor(disp.base), disp, disp,
            {a: a for a in disp.all_dobjects}, {m: m for m in disp._dmor}, name="id", check=False)
    return disp.cache["id_functor"]


def compose_disp_functors(first, then, over=None):
    """``first ; then``; ``over`` may supply an already built composite of the base functors."""
    return DispFunctor(
        over or compose_functors(first.over, then.over), first.source, then.target,
        {a: then.dob(b) for a, b in first.on_dobjects.items()},
        {m: then.dmor(n) for m, n in first.on_dmorphisms.items()},
        name=f"{first.name};{then.name}", check=False)


class DispNatTrans:
    """A displayed natural transformation over a base natural transformation."""

    def __init__(self, over, source, target, components, check=True):
        self.over = over
        self.source = source
        self.target = target
        self.components = dict(components)
        disp = source.target
        for a in source.source.all_dobjects:
            c = self.components.get(a)
            x = source.source.over(a)
            if c is None or disp.dmor(c) != (over[x], source.dob(a), target.dob(a)):
                raise DisplayedError(f"component at {a!r} is missing or ill-typed", a)
        if check:
            for m in source.source.dmorphisms:
                a, b = source.source.dsrc(m), source.source.ddst(m)
                if disp.dcomp(source.dmor(m), self.components[b]) != disp.dcomp(self.components[a], target.dmor(m)):
                    raise DisplayedError(f"naturality fails at {m!r}", m)

    def __getitem__(self, a):
        return self.components[a]


@dataclass
class DispFunctorReport:
    functorial: bool
    cartesian: Check

    @property
    def ok(self):
        return self.functorial and bool(self.cartesian)


def check_displayed_functor(fun, cleaving=None):
    """Re-check functoriality over the base and preservation of Cartesian morphisms.

    With a cleaving of the source only the chosen lifts are tested; every
    Cartesian morphism is a chosen lift followed by a vertical isomorphism,
    and functors preserve those.
    """
    src, tgt = fun.source, fun.target
    functorial = all(fun.dmor(src.didentity[a]) == tgt.didentity[fun.dob(a)] for a in src.all_dobjects) and \
        all(tgt.dcomp(fun.dmor(m1), fun.dmor(m2)) == fun.dmor(m3) for (m1, m2), m3 in src._dcomp.items())
    if cleaving is not None:
        candidates = list(cleaving.lifts.values())
    else:
        candidates = [m for m in src.dmorphisms if is_cartesian(src, m)]
    cart = Check(True)
    for m in candidates:
        if not is_cartesian(tgt, fun.dmor(m)):
            cart = Check(False, m)
            break
    return DispFunctorReport(functorial, cart)


def fiber_functor(fun, x):
    """The functor ``D1[x] -> D2[F x]`` induced by a displayed functor."""
    src = fiber_category(fun.source, x)
    tgt = fiber_category(fun.target, fun.over.ob(x))
    return FinFunctor(src, tgt, {a: fun.dob(a) for a in src.objects},
                      {m: fun.dmor(m) for m in src.morphisms}, name=f"{fun.name}[{x}]", check=False)


class ArrowDisp(DispCat):
    """The arrow displayed category of a base with its square bookkeeping.

    Displayed objects over y are the morphisms into y (same names).  A
    displayed morphism over ``f`` from ``g1`` to ``g2`` is a commuting square
    with top ``h`` and is named ``sq(g1,g2,h,f)``; ``top[name] == h``.
    """

    def __init__(self, base, dobjects, dmorphisms, didentity, dcomp, top, name=""):
        super().__init__(base, dobjects, dmorphisms, didentity, dcomp, name)
        self.top = dict(top)

    def square(self, g1, g2, h, f):
        return f"sq({g1},{g2},{h},{f})"


def arrow_displayed(base):
    """The arrow displayed category; one table per base, shared by all callers."""
    if "arrow" in base.cache:
        return base.cache["arrow"]
    dobjects = {y: slice_objects(base, y) for y in base.objects}
    dmor, top, ident = {}, {}, {}
    for f in base.morphisms:
        y1, y2 = base.ends(f)
        for g1 in dobjects[y1]:
            for g2 in dobjects[y2]:
                for h in base.hom(base.src(g1), base.src(g2)):
                    if base.comp(h, g2) == base.comp(g1, f):
                        name = f"sq({g1},{g2},{h},{f})"
                        dmor[name] = (f, g1, g2)
                        top[name] = h
                        if g1 == g2 and base.is_identity(f) and base.is_identity(h):
                            ident[g1] = name
    table = {}
    by_src = {}
    for m, (f, a, b) in dmor.items():
        by_src.setdefault(a, []).append(m)
    for m1, (f, a, b) in dmor.items():
        for m2 in by_src.get(b, ()):
            g, _, c = dmor[m2]
            table[m1, m2] = f"sq({a},{c},{base.comp(top[m1], top[m2])},{base.comp(f, g)})"
    disp = ArrowDisp(base, dobjects, dmor, ident, table, top, name=f"Arr({base.name})")
    base.cache["arrow"] = disp
    return disp


def arrow_functor(fun):
    """The displayed functor ``Arr(F): Arr(C1) -> Arr(C2)`` over ``F``."""
    if "arrow_functor" in fun.__dict__:
        return fun.arrow_functor
    a1, a2 = arrow_displayed(fun.source), arrow_displayed(fun.target)
    omap = {g: fun.mor(g) for g in a1.all_dobjects}
    mmap = {}
    for m, (f, g1, g2) in a1._dmor.items():
        mmap[m] = a2.square(fun.mor(g1), fun.mor(g2), fun.mor(a1.top[m]), fun.mor(f))
    out = DispFunctor(fun, a1, a2, omap, mmap, name=f"Arr({fun.name})", check=False)
    fun.arrow_functor = out
    return out


def arrow_nat_trans(tau):
    """``Arr(tau): Arr(F) => Arr(G)``; the component at ``g: x -> y`` is the
    square with top ``tau_x`` over ``tau_y``."""
    fa, ga = arrow_functor(tau.source), arrow_functor(tau.target)
    a2 = fa.target
    comps = {}
    for g in fa.source.all_dobjects:
        x, y = fa.source.base.ends(g)
        comps[g] = a2.square(fa.dob(g), ga.dob(g), tau[x], tau[y])
    return DispNatTrans(tau, fa, ga, comps, check=False)


def rename_displayed(disp, obj_name, mor_name):
    """A copy of ``disp`` with renamed displayed cells, plus the isomorphism
    from the copy back onto ``disp``."""
    objs = {x: tuple(obj_name(a) for a in names) for x, names in disp.dobjects.items()}
    dmor = {mor_name(m): (f, obj_name(a), obj_name(b)) for m, (f, a, b) in disp._dmor.items()}
    ident = {obj_name(a): mor_name(m) for a, m in disp.didentity.items()}
    table = {(mor_name(m1), mor_name(m2)): mor_name(m3) for (m1, m2), m3 in disp._dcomp.items()}
    copy = DispCat(disp.base, objs, dmor, ident, table, name=f"{disp.name}'")
    iso = DispFunctor(identity_functor(disp.base), copy, disp,
                      {obj_name(a): a for a in disp.all_dobjects},
                      {mor_name(m): m for m in disp._dmor}, name="rename")
    return copy, iso


@dataclass
class BCSquare:
    """A square of functors with a mate to test.

    ``f1: C1 -> C2``, ``g1: C1 -> C3``, ``g2: C2 -> C4``, ``f2: C3 -> C4`` and
    an invertible ``tau: g1;f2 => f1;g2``.  For ``side="left"`` the
    adjunctions are ``L1 -| g1`` and ``L2 -| g2``; for ``side="right"`` they
    are ``g1 -| R1`` and ``g2 -| R2``.
    """

    f1: FinFunctor
    g1: FinFunctor
    g2: FinFunctor
    f2: FinFunctor
    tau: NatTrans
    adj1: object
    adj2: object
    side: str = "left"

    def __post_init__(self):
        c1, c2 = self.f1.source, self.f1.target
        c3, c4 = self.f2.source, self.f2.target
        ok = (self.g1.source is c1 and self.g1.target is c3 and self.g2.source is c2
              and self.g2.target is c4)
        if not ok:
            raise DisplayedError("functors of the square do not fit together")
        if not self.tau.is_iso():
            raise DisplayedError("the square must commute up to a natural isomorphism")
        expect1 = self.adj1.right if self.side == "left" else self.adj1.left
        expect2 = self.adj2.right if self.side == "left" else self.adj2.left
        if expect1 is not self.g1 or expect2 is not self.g2:
            raise DisplayedError("adjunctions are not attached to the vertical functors")


def beck_chevalley(sq):
    """Build the mate of the square and check each component is invertible.

    Left side: at ``c`` in C3 the mate is
    ``L2 F2 c -> L2 F2 G1 L1 c -> L2 G2 F1 L1 c -> F1 L1 c``.
    Right side: ``F1 R1 c -> R2 G2 F1 R1 c -> R2 F2 G1 R1 c -> R2 F2 c``.
    The witness is the dict of mate components (or the failing object).
    """
    c2 = sq.f1.target
    c4 = sq.f2.target
    mate = {}
    if sq.side == "left":
        l1, l2 = sq.adj1.left, sq.adj2.left
        for c in sq.f2.source.objects:
            d = l1.ob(c)
            step1 = l2.mor(sq.f2.mor(sq.adj1.unit[c]))
            step2 = l2.mor(sq.tau[d])
            step3 = sq.adj2.counit[sq.f1.ob(d)]
            mate[c] = c2.comp(step1, step2, step3)
    else:
        r1, r2 = sq.adj1.right, sq.adj2.right
        for c in sq.f2.source.objects:
            d = r1.ob(c)
            step1 = sq.adj2.unit[sq.f1.ob(d)]
            step2 = r2.mor(c4.inverse(sq.tau[d]))
            step3 = r2.mor(sq.f2.mor(sq.adj1.counit[c]))
            mate[c] = c2.comp(step1, step2, step3)
    for c, m in mate.items():
        if not c2.is_iso(m):
            return Check(False, {"object": c, "component": m, "mate": mate})
    return Check(True, mate)
