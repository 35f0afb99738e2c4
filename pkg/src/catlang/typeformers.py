"""Type formers in a comprehension category, checked by their universal properties.

Each ``check_*`` function either returns a structure holding the chosen
witnesses or raises a :class:`TypeFormerError` subclass that names the
context (and type) where the former is missing.
"""

from dataclasses import dataclass, field

from .compcat import PreconditionError, Term, subst_type
from .displayed import (BCSquare, beck_chevalley, check_fiberwise_limits, composite_comparison,
                        fiber_category, fiber_functor, substitution_functor as sub)
from .fincat import NatTrans, compose_functors
from .functors import check_equivalence, find_adjoint
from .limits import equalizer, find_limit
from .results import CatlangError, Check


class TypeFormerError(CatlangError):
    former = "?"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoFiberwiseTerminal(TypeFormerError):
    former = "unit"


class ProjectionNotIso(TypeFormerError):
    former = "unit"


class NotFull(TypeFormerError):
    former = "full"


class NoLeftAdjoint(TypeFormerError):
    former = "sigma"


class NoRightAdjoint(TypeFormerError):
    former = "pi"


class BCFails(TypeFormerError):
    pass


class NotStrong(TypeFormerError):
    former = "sigma"


class NotDemocratic(TypeFormerError):
    former = "democracy"


class FiberwiseLimitsFail(TypeFormerError):
    pass


@dataclass
class UnitStructure:
    """Chosen ``1_G`` in each fiber and the inverse of each ``pi_{1_G}``."""

    unit: dict
    inverse: dict
    report: object = field(repr=False, default=None)


def check_unit_types(k):
    """Fiberwise terminal objects, stable under reindexing, with invertible projections."""
    if "unit" in k.cache:
        return k.cache["unit"]
    rep = check_fiberwise_limits(k.cleaving, "terminal")
    if rep.missing:
        x, _ = rep.missing[0]
        raise NoFiberwiseTerminal(f"fiber over {x!r} has no terminal object", x)
    if rep.unpreserved:
        f, _ = rep.unpreserved[0]
        raise NoFiberwiseTerminal(f"reindexing along {f!r} does not preserve the terminal type", f)
    unit, inverse = {}, {}
    for x in k.base.objects:
        one = next(iter(rep.witnesses[x].values())).apex
        inv = k.base.inverse(k.chi(one))
        if inv is None:
            raise ProjectionNotIso(f"projection of the unit type over {x!r} is not invertible", x)
        unit[x] = one
        inverse[x] = inv
    out = UnitStructure(unit, inverse, rep)
    k.cache["unit"] = out
    return out


def check_prod_eq_types(k, shape):
    """Fiberwise limits of ``shape`` ("binary_product" or "equalizer") and their stability."""
    key = ("fiberwise", shape)
    if key not in k.cache:
        k.cache[key] = check_fiberwise_limits(k.cleaving, shape)
    return k.cache[key]


def _bc_square(k, s, a, adjunctions, side):
    """The square of reindexing functors for the pullback of ``pi_A`` along ``s``."""
    base = k.base
    cl = k.cleaving
    b, m = subst_type(k, s, a)
    q = k.ext(m)
    pa, pb = k.chi(a), k.chi(b)
    f1, g1, g2, f2 = sub(cl, s), sub(cl, pa), sub(cl, pb), sub(cl, q)
    one = composite_comparison(cl, q, pa)
    two = composite_comparison(cl, pb, s)
    c4 = f2.target
    comps = {x: c4.comp(c4.inverse(one[x]), two[x]) for x in f1.source.objects}
    tau = NatTrans(compose_functors(g1, f2), compose_functors(f1, g2), comps)
    gamma, delta = base.dst(s), base.src(s)
    return BCSquare(f1, g1, g2, f2, tau, adjunctions[gamma, a], adjunctions[delta, b], side=side)


def _adjoints(k, side, bound):
    cl = k.cleaving
    out = {}
    for gamma in k.base.objects:
        for a in k.types.dobjects[gamma]:
            kw = {} if bound is None else {"max_objects": bound[0], "max_morphisms": bound[1]}
            adj = find_adjoint(sub(cl, k.chi(a)), side=side, **kw)
            if not adj:
                err = NoLeftAdjoint if side == "left" else NoRightAdjoint
                raise err(f"reindexing along the projection of {a!r} has no {side} adjoint", (gamma, a))
            out[gamma, a] = adj
    return out


def _check_bc(k, adjunctions, side, former):
    for s in k.base.morphisms:
        gamma = k.base.dst(s)
        for a in k.types.dobjects[gamma]:
            res = beck_chevalley(_bc_square(k, s, a, adjunctions, side))
            if not res:
                err = BCFails(f"Beck-Chevalley fails for {a!r} along {s!r}", (s, a, res.witness))
                err.former = former
                raise err


@dataclass
class SigmaStructure:
    """Left adjoints ``Sigma_A -| pi_A*`` and the strong comparison isomorphisms.

    ``strong[(G, A, B)]`` is ``(comparison, inverse)`` for
    ``G.A.B -> G.A.(pi_A* Sigma_A B) -> G.(Sigma_A B)``.
    """

    adjunctions: dict
    strong: dict

    def sigma(self, gamma, a, b):
        return self.adjunctions[gamma, a].left.ob(b)


def check_sigma_types(k, bound=None):
    """Strong Sigma types: left adjoints, Beck-Chevalley, invertible comparisons.

    Requires a full comprehension category.  Raises :class:`NoLeftAdjoint`,
    :class:`BCFails` or :class:`NotStrong`.
    """
    if "sigma" in k.cache:
        return k.cache["sigma"]
    if not k.full:
        raise NotFull("Sigma types are only checked on full comprehension categories")
    adjs = _adjoints(k, "left", bound)
    _check_bc(k, adjs, "left", "sigma")
    base = k.base
    strong = {}
    for (gamma, a), adj in adjs.items():
        pa = k.chi(a)
        for b in adj.left.source.objects:
            sb = adj.left.ob(b)
            first = k.ext(adj.unit[b])
            second = k.ext(k.cleaving.lift(pa, sb))
            comp = base.comp(first, second)
            inv = base.inverse(comp)
            if inv is None:
                raise NotStrong(f"comparison for {b!r} over {a!r} is not invertible", (gamma, a, b))
            strong[gamma, a, b] = (comp, inv)
    out = SigmaStructure(adjs, strong)
    k.cache["sigma"] = out
    return out


@dataclass
class PiStructure:
    """Right adjoints ``pi_A* -| Pi_A``."""

    adjunctions: dict

    def pi(self, gamma, a, b):
        return self.adjunctions[gamma, a].right.ob(b)


def check_pi_types(k, bound=None):
    """Pi types: right adjoints to reindexing along projections, plus Beck-Chevalley."""
    if "pi" in k.cache:
        return k.cache["pi"]
    adjs = _adjoints(k, "right", bound)
    _check_bc(k, adjs, "right", "pi")
    out = PiStructure(adjs)
    k.cache["pi"] = out
    return out


@dataclass
class DemocracyStructure:
    """For each context ``G`` a closed type ``delta_G`` and an iso ``G -> 1.delta_G``."""

    types: dict
    isos: dict


def check_democracy(k):
    """Choose, for each context, the first closed type whose extension is isomorphic to it."""
    if "democracy" in k.cache:
        return k.cache["democracy"]
    base = k.base
    types, isos = {}, {}
    for gamma in base.objects:
        for d in k.types.dobjects[k.terminal]:
            found = base.isos(gamma, base.src(k.chi(d)))
            if found:
                types[gamma] = d
                isos[gamma] = found[0]
                break
        else:
            raise NotDemocratic(f"context {gamma!r} is not the extension of a closed type", gamma)
    out = DemocracyStructure(types, isos)
    k.cache["democracy"] = out
    return out


def section_to_vertical(k, t):
    """The vertical morphism ``1_G -> A`` corresponding to a term, using fullness."""
    unit = check_unit_types(k)
    gamma = t.context
    one = unit.unit[gamma]
    u = k.base.comp(k.chi(one), t.section)
    for v in fiber_category(k.types, gamma).hom(one, t.type):
        if k.ext(v) == u:
            return v
    raise NotFull(f"term {t.section!r} has no vertical counterpart", t)


def vertical_to_section(k, gamma, v):
    """The term of the codomain of ``v: 1_G -> A``."""
    unit = check_unit_types(k)
    fib = fiber_category(k.types, gamma)
    if fib.src(v) != unit.unit[gamma]:
        raise PreconditionError(f"{v!r} does not start at the unit type", v)
    return Term(gamma, fib.dst(v), k.base.comp(unit.inverse[gamma], k.ext(v)))


@dataclass
class IdType:
    """The extensional identity type of two terms, as a fiberwise equalizer."""

    type: str
    inclusion: str
    witness: object = field(repr=False, default=None)


def ext_id_type(k, t1, t2):
    """``Id(t1, t2)``: the equalizer of the two vertical maps ``1_G -> A``."""
    if (t1.context, t1.type) != (t2.context, t2.type):
        raise PreconditionError("identity type needs two terms of one type in one context", (t1, t2))
    v1, v2 = section_to_vertical(k, t1), section_to_vertical(k, t2)
    w = find_limit(fiber_category(k.types, t1.context), equalizer(v1, v2))
    if not w:
        raise FiberwiseLimitsFail(f"no equalizer of {v1!r} and {v2!r}", (t1, t2))
    return IdType(w.apex, w.legs[0], w)


@dataclass
class DFLReport:
    """Outcome of checking a comprehension category for the finite-limit formers."""

    full: bool
    unit: object = None
    products: object = None
    equalizers: object = None
    sigma: object = None
    democracy: object = None
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def to_dict(self):
        def status(x):
            return x is not None and bool(x)
        return {
            "verdict": "pass" if self.ok else "fail",
            "full": self.full,
            "unit": status(self.unit),
            "binary_products": status(self.products),
            "equalizers": status(self.equalizers),
            "strong_sigma": status(self.sigma),
            "democracy": status(self.democracy),
            "failures": [{"former": f, "message": m, "witness": repr(w)} for f, m, w in self.failures],
        }


def check_dfl(k, bound=None):
    """Check every former a DFL comprehension category needs and collect failures."""
    rep = DFLReport(full=k.full)
    if not k.full:
        rep.failures.append(("full", "comprehension is not fully faithful", None))
    try:
        rep.unit = check_unit_types(k)
    except TypeFormerError as exc:
        rep.failures.append((exc.former, str(exc), exc.witness))
    for shape, attr, label in (("binary_product", "products", "products"),
                               ("equalizer", "equalizers", "equalizers")):
        r = check_prod_eq_types(k, shape)
        setattr(rep, attr, r)
        if r.missing:
            rep.failures.append((label, f"missing fiberwise {shape}", r.missing[0]))
        elif r.unpreserved:
            rep.failures.append((label, f"reindexing does not preserve {shape}", r.unpreserved[0]))
    if k.full:
        try:
            rep.sigma = check_sigma_types(k, bound)
        except TypeFormerError as exc:
            rep.failures.append((exc.former, str(exc), exc.witness))
    try:
        rep.democracy = check_democracy(k)
    except TypeFormerError as exc:
        rep.failures.append((exc.former, str(exc), exc.witness))
    return rep


def is_adjequiv_1cell(m):
    """Whether a morphism of comprehension categories is an adjoint equivalence.

    Checks that the base functor and every fiber functor are equivalences;
    for Cartesian functors between fibrations this is enough.
    """
    base = check_equivalence(m.functor)
    if not base:
        return Check(False, ("base", base))
    for x in m.source.base.objects:
        r = check_equivalence(fiber_functor(m.disp_functor, x))
        if not r:
            return Check(False, ("fiber", x, r))
    return Check(True)

