"""Comprehension categories and the term calculus they support.

A comprehension category is a cloven displayed category of types over a
base of contexts, together with a Cartesian displayed functor ``chi`` from
the types into the arrow displayed category over the identity.  Context
extension reads the projection off ``chi``: ``chi(A)`` *is* the morphism
``pi_A: G.A -> G``.
"""

from dataclasses import dataclass

from .displayed import (ArrowDisp, DispNatTrans, arrow_displayed,
                        arrow_functor, arrow_nat_trans, check_displayed_functor,
                        compose_disp_functors, fiber_category, fiber_functor, find_cleaving,
                        identity_disp_functor)
from .fincat import compose_functors, identity_functor, identity_nat
from .functors import check_functor
from .limits import find_limit, pullback, terminal, verify_limit
from .results import CatlangError


class CompCatError(CatlangError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCartesian(CompCatError):
    pass


class NotOverIdentity(CompCatError):
    pass


class NoTerminal(CompCatError):
    pass


class NotPseudo(CompCatError):
    pass


class PreconditionError(CompCatError):
    pass


class CompCat:
    """An assembled comprehension category; build it with :func:`assemble_compcat`."""

    def __init__(self, base, types, cleaving, comprehension, terminal, full, name=""):
        self.base = base
        self.types = types
        self.cleaving = cleaving
        self.comprehension = comprehension
        self.terminal = terminal
        self.full = full
        self.name = name
        self.cache = {}

    @property
    def arrow(self):
        return self.comprehension.target

    def chi(self, a):
        """The projection ``pi_A`` named by ``chi(A)``."""
        return self.comprehension.dob(a)

    def ext(self, m):
        """The base morphism between extended contexts induced by a displayed morphism."""
        return self.arrow.top[self.comprehension.dmor(m)]

    def fiber(self, gamma):
        return fiber_category(self.types, gamma)

    def bang(self, gamma):
        """The unique morphism into the designated terminal object."""
        return self.base.hom(gamma, self.terminal)[0]

    def __repr__(self):
        return f"CompCat({self.name or '?'} over {self.base!r}, full={self.full})"


def assemble_compcat(types, comprehension, cleaving=None, name=""):
    """Check the pieces of a comprehension category and put them together.

    Raises :class:`NotOverIdentity` when ``chi`` does not lie over the
    identity, :class:`NotCartesian` when the types have no cleaving or ``chi``
    breaks a Cartesian lift, and :class:`NoTerminal` when the base has no
    terminal object.  The designated terminal is the first one in object
    order.  ``full`` records whether ``chi`` is fully faithful.
    """
    base = types.base
    if not isinstance(comprehension.target, ArrowDisp) or comprehension.target.base is not base:
        raise NotOverIdentity("comprehension must land in the arrow displayed category of the base")
    if comprehension.source is not types:
        raise NotOverIdentity("comprehension must start at the displayed category of types")
    over = comprehension.over
    if any(over.ob(x) != x for x in base.objects) or any(over.mor(f) != f for f in base.morphisms):
        raise NotOverIdentity("comprehension does not lie over the identity functor")
    if cleaving is None:
        cleaving = find_cleaving(types)
        if not cleaving:
            raise NotCartesian(f"types are not a fibration: {cleaving.reason}", cleaving.witness)
    elif cleaving.disp is not types:
        raise NotCartesian("cleaving belongs to another displayed category")
    rep = check_displayed_functor(comprehension, cleaving)
    if not rep.functorial:
        raise NotCartesian("comprehension is not a displayed functor")
    if not rep.cartesian:
        raise NotCartesian(f"comprehension sends the lift {rep.cartesian.witness!r} to a non-pullback square",
                           rep.cartesian.witness)
    w = find_limit(base, terminal())
    if not w:
        raise NoTerminal("base category has no terminal object")
    full = True
    for x in base.objects:
        r = check_functor(fiber_functor(comprehension, x), shapes=())
        if not r.fully_faithful:
            full = False
            break
    return CompCat(base, types, cleaving, comprehension, w.apex, full, name=name)


def self_indexing(base, name=""):
    """The comprehension category whose types are all morphisms, with chi the identity."""
    if "self_indexing" not in base.cache:
        arr = arrow_displayed(base)
        base.cache["self_indexing"] = assemble_compcat(arr, identity_disp_functor(arr),
                                                       name=name or f"H({base.name})")
    return base.cache["self_indexing"]


@dataclass(frozen=True)
class Term:
    """A term of type ``type`` in context ``context``: a section of its projection."""

    context: str
    type: str
    section: str


def ctx_extend(k, gamma, a):
    """``(G.A, pi_A)`` for a type ``A`` over ``G``."""
    if k.types.over(a) != gamma:
        raise PreconditionError(f"{a!r} is not a type over {gamma!r}", (gamma, a))
    p = k.chi(a)
    return k.base.src(p), p


def subst_type(k, s, a):
    """``(s*A, lift)`` from the cleaving, for ``s: D -> G`` and ``A`` over ``G``."""
    if k.types.over(a) != k.base.dst(s):
        raise PreconditionError(f"{a!r} does not lie over the codomain of {s!r}", (s, a))
    m = k.cleaving.lift(s, a)
    return k.types.dsrc(m), m


def lift_square(k, s, a):
    """The pullback square ``chi`` makes of the lift of ``s`` at ``A``.

    It is re-verified as a pullback of ``(s, pi_A)`` with legs
    ``(pi_{s*A}, top of chi(lift))``; a failure here means ``chi`` is broken.
    """
    key = ("square", s, a)
    if key not in k.cache:
        b, m = subst_type(k, s, a)
        base = k.base
        w = verify_limit(base, pullback(s, k.chi(a)), base.src(k.chi(b)), (k.chi(b), k.ext(m)))
        if w is None:
            raise NotCartesian(f"square of the lift of {s!r} at {a!r} is not a pullback", (s, a))
        k.cache[key] = w
    return k.cache[key]


def terms(k, gamma, a):
    """Every section of ``pi_A``, in hom-set order."""
    ext, p = ctx_extend(k, gamma, a)
    idg = k.base.identity[gamma]
    return [Term(gamma, a, t) for t in k.base.hom(gamma, ext) if k.base.comp(t, p) == idg]


def _check_term(k, t):
    ext, p = ctx_extend(k, t.context, t.type)
    if k.base.ends(t.section) != (t.context, ext) or k.base.comp(t.section, p) != k.base.identity[t.context]:
        raise PreconditionError(f"{t.section!r} is not a section of the projection of {t.type!r}", t)


def var_term(k, gamma, a):
    """The generic term: in context ``G.A`` of type ``pi_A* A``.

    It is the mediator into the pullback square of ``pi_A`` along itself
    for the cone ``(id, id)``.
    """
    ext, p = ctx_extend(k, gamma, a)
    w = lift_square(k, p, a)
    idx = k.base.identity[ext]
    v = w.mediator(ext, (idx, idx))
    return Term(ext, subst_type(k, p, a)[0], v)


def subst_term(k, s, t):
    """``s*t`` for ``s: D -> G`` and a term ``t`` of ``A`` in ``G``.

    It is the mediator for the cone ``(id_D, s;t)`` into the square of ``s*A``.
    """
    _check_term(k, t)
    if k.base.dst(s) != t.context:
        raise PreconditionError(f"{s!r} does not land in {t.context!r}", (s, t))
    delta = k.base.src(s)
    w = lift_square(k, s, t.type)
    v = w.mediator(delta, (k.base.identity[delta], k.base.comp(s, t.section)))
    return Term(delta, subst_type(k, s, t.type)[0], v)


def pair_sub(k, s, a, t):
    """``<s, t> = t ; chi(s*)`` for ``s: D -> G``, ``A`` over ``G`` and a term
    ``t`` of ``s*A`` in ``D``.

    ``A`` has to be named because many types can share one reindexing.
    """
    _check_term(k, t)
    b, m = subst_type(k, s, a)
    if t.type != b or t.context != k.base.src(s):
        raise PreconditionError(f"term is not of type {s!r}*{a!r}", (s, a, t))
    return k.base.comp(t.section, k.ext(m))


class CompCatMorphism:
    """A pseudo map of comprehension categories ``(F, Fbar, F_chi)``.

    ``F_chi`` is a displayed natural isomorphism ``Fbar;chi2 => chi1;Arr(F)``
    over the identity on ``F``.
    """

    def __init__(self, source, target, functor, disp_functor, chi_iso, name=""):
        self.source = source
        self.target = target
        self.functor = functor
        self.disp_functor = disp_functor
        self.chi_iso = chi_iso
        self.name = name
        if functor.source is not source.base or functor.target is not target.base:
            raise CompCatError("base functor has the wrong endpoints")
        if verify_limit(target.base, terminal(), functor.ob(source.terminal), ()) is None:
            raise CompCatError("base functor does not preserve the terminal object")
        if disp_functor.over is not functor or disp_functor.source is not source.types \
                or disp_functor.target is not target.types:
            raise CompCatError("displayed functor has the wrong endpoints")
        rep = check_displayed_functor(disp_functor, source.cleaving)
        if not rep.cartesian:
            raise NotCartesian("displayed functor is not Cartesian", rep.cartesian.witness)
        top = compose_disp_functors(disp_functor, target.comprehension)
        if chi_iso.source.on_dobjects != top.on_dobjects or \
                chi_iso.target.on_dobjects != compose_disp_functors(source.comprehension,
                                                                    arrow_functor(functor)).on_dobjects:
            raise CompCatError("chi square has the wrong boundary")
        arr = target.arrow
        for a, m in chi_iso.components.items():
            x = arr.over(arr.dsrc(m))
            if not fiber_category(arr, x).is_iso(m):
                raise NotPseudo(f"component of the chi square at {a!r} is not invertible", a)

    @property
    def base_functor(self):
        return self.functor


def chi_square(source, target, functor, disp_functor, components):
    """Build the displayed natural transformation filling the chi square."""
    top = compose_disp_functors(disp_functor, target.comprehension)
    bottom = compose_disp_functors(source.comprehension, arrow_functor(functor))
    return DispNatTrans(identity_nat(functor), top, bottom, components)


def identity_chi(source, target, functor, disp_functor):
    """Chi square with identity components; valid when both composites agree."""
    arr = target.arrow
    top = compose_disp_functors(disp_functor, target.comprehension)
    comps = {a: arr.didentity[top.dob(a)] for a in source.types.all_dobjects}
    return chi_square(source, target, functor, disp_functor, comps)


def identity_morphism(k):
    f = identity_functor(k.base)
    fb = identity_disp_functor(k.types)
    return CompCatMorphism(k, k, f, fb, identity_chi(k, k, f, fb), name="id")


def compose_morphisms(m1, m2):
    """``m1 ; m2``."""
    if m1.target is not m2.source:
        raise CompCatError("morphisms are not composable")
    f = compose_functors(m1.functor, m2.functor)
    fb = compose_disp_functors(m1.disp_functor, m2.disp_functor, over=f)
    arr2 = arrow_functor(m2.functor)
    arr3 = m2.target.arrow
    comps = {a: arr3.dcomp(m2.chi_iso[m1.disp_functor.dob(a)], arr2.dmor(m1.chi_iso[a]))
             for a in m1.source.types.all_dobjects}
    return CompCatMorphism(m1.source, m2.target, f, fb, chi_square(m1.source, m2.target, f, fb, comps),
                           name=f"{m1.name};{m2.name}")


class CompCat2Cell:
    """A 2-cell ``(tau, taubar)`` between parallel morphisms of comprehension categories.

    The pasting condition is checked at every type ``A``:
    ``chi2(taubar_A) ; G_chi(A) == F_chi(A) ; Arr(tau)_{chi1 A}``.
    """

    def __init__(self, source, target, tau, disp_tau):
        if source.source is not target.source or source.target is not target.target:
            raise CompCatError("2-cell between non-parallel morphisms")
        if tau.source is not source.functor or tau.target is not target.functor:
            raise CompCatError("base transformation has the wrong endpoints")
        if disp_tau.source is not source.disp_functor or disp_tau.target is not target.disp_functor:
            raise CompCatError("displayed transformation has the wrong endpoints")
        self.source = source
        self.target = target
        self.tau = tau
        self.disp_tau = disp_tau
        k1, k2 = source.source, source.target
        arr = k2.arrow
        atau = arrow_nat_trans(tau)
        for a in k1.types.all_dobjects:
            left = arr.dcomp(k2.comprehension.dmor(disp_tau[a]), target.chi_iso[a])
            right = arr.dcomp(source.chi_iso[a], atau[k1.chi(a)])
            if left != right:
                raise CompCatError(f"pasting condition fails at {a!r}", a)


def disp_identity_nat(fun):
    d = fun.target
    return DispNatTrans(identity_nat(fun.over), fun, fun,
                        {a: d.didentity[fun.dob(a)] for a in fun.source.all_dobjects}, check=False)


def identity_2cell(m):
    return CompCat2Cell(m, m, identity_nat(m.functor), disp_identity_nat(m.disp_functor))

