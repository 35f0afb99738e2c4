"""Between finite-limit categories and DFL comprehension categories.

``H`` sends a finite-limit category to its self-indexing.  ``U`` keeps the
base and recomputes its limits inside the fiber over the terminal context,
transporting them back along that fiber's equivalence with the base.
"""

from dataclasses import dataclass, field

from .compcat import (CompCat, CompCat2Cell, CompCatMorphism, NotCartesian, Term, ctx_extend,
                      identity_chi, lift_square, pair_sub, self_indexing, subst_type, terms)
from .displayed import arrow_functor, arrow_nat_trans, fiber_category
from .fincat import (FinCat, FinFunctor, NatTrans, compose_functors, identity_functor, is_gaunt,
                     same_functor, same_presentation)
from .functors import check_equivalence, check_functor
from .limits import LIMIT_SHAPES, Diagram, diagrams, find_limit, verify_limit
from .results import CatlangError
from .typeformers import check_dfl, ext_id_type, is_adjequiv_1cell


class BiequivError(CatlangError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotFinLim(BiequivError):
    pass


class NotPreserving(BiequivError):
    pass


class NotDFL(BiequivError):
    pass


class FinLimCat:
    """A category together with one chosen limit witness per finite diagram."""

    def __init__(self, cat, witnesses):
        self.cat = cat
        self.witnesses = dict(witnesses)

    @property
    def terminal(self):
        return self.witnesses[Diagram("terminal")]

    def limit(self, d):
        return self.witnesses[d]

    def product(self, a, b):
        return self.witnesses[Diagram("binary_product", (a, b))]

    def pullback(self, f, g):
        return self.witnesses[Diagram("pullback", (f, g))]

    def equalizer(self, f, g):
        return self.witnesses[Diagram("equalizer", (f, g))]

    @property
    def name(self):
        return self.cat.name

    def __repr__(self):
        return f"FinLimCat({self.cat!r})"


def finlim(cat):
    """Compute every terminal, product, equalizer and pullback of ``cat``.

    Raises :class:`NotFinLim` naming the first missing limit.
    """
    if isinstance(cat, FinLimCat):
        return cat
    if "finlim" not in cat.cache:
        found = {}
        for shape in LIMIT_SHAPES:
            for d in diagrams(cat, shape):
                w = find_limit(cat, d)
                if not w:
                    raise NotFinLim(f"{cat.name or 'category'} has no {d}", d)
                found[d] = w
        cat.cache["finlim"] = FinLimCat(cat, found)
    return cat.cache["finlim"]


def _cat(x):
    return x.cat if isinstance(x, FinLimCat) else x


def H_object(c):
    """The self-indexing comprehension category of a finite-limit category."""
    c = finlim(c)
    return self_indexing(c.cat)


def H_morphism(fun):
    """``(F, Arr(F), identity)`` for a finite-limit preserving functor."""
    rep = check_functor(fun, shapes=LIMIT_SHAPES)
    if not all(rep.preserves.values()):
        bad = [s for s, ok in rep.preserves.items() if not ok]
        raise NotPreserving(f"functor does not preserve {bad[0]}", rep.witnesses.get(bad[0]))
    k1, k2 = H_object(fun.source), H_object(fun.target)
    fb = arrow_functor(fun)
    return CompCatMorphism(k1, k2, fun, fb, identity_chi(k1, k2, fun, fb), name=f"H({fun.name})")


def H_2cell(tau):
    m1, m2 = H_morphism(tau.source), H_morphism(tau.target)
    return CompCat2Cell(m1, m2, tau, arrow_nat_trans(tau))


def H_apply(x):
    """Apply ``H`` to a category, a functor or a natural transformation."""
    if isinstance(x, (FinLimCat, FinCat)):
        return H_object(x)
    if isinstance(x, FinFunctor):
        return H_morphism(x)
    if isinstance(x, NatTrans):
        return H_2cell(x)
    raise TypeError(f"H does not apply to {type(x).__name__}")


def _fiber_transport(k, dem):
    """Maps from the base into the fiber over the terminal context and back."""
    base = k.base
    fib = fiber_category(k.types, k.terminal)

    def mor(u):
        x, y = base.ends(u)
        w = base.comp(base.inverse(dem.isos[x]), u, dem.isos[y])
        for v in fib.hom(dem.types[x], dem.types[y]):
            if k.ext(v) == w:
                return v
        raise NotDFL(f"{u!r} has no vertical counterpart over the terminal context", u)

    def diagram(d):
        if d.shape == "binary_product":
            return Diagram(d.shape, tuple(dem.types[x] for x in d.items))
        return Diagram(d.shape, tuple(mor(f) for f in d.items))

    return fib, diagram


def _leg_targets(base, d):
    if d.shape == "binary_product":
        return d.items
    if d.shape == "equalizer":
        return (base.src(d.items[0]),)
    if d.shape == "pullback":
        return (base.src(d.items[0]), base.src(d.items[1]))
    return ()


def U_object(k):
    """The base of a DFL comprehension category with limits recomputed in the
    fiber over the terminal context and re-verified in the base."""
    if "U" in k.cache:
        return k.cache["U"]
    rep = check_dfl(k)
    if not rep:
        raise NotDFL(f"not a DFL comprehension category: {rep.failures[0][1]}", rep.failures[0])
    dem = rep.democracy
    base = k.base
    fib, to_fiber = _fiber_transport(k, dem)
    found = {}
    for shape in LIMIT_SHAPES:
        for d in diagrams(base, shape):
            w = find_limit(fib, to_fiber(d))
            if not w:
                raise NotDFL(f"fiber over the terminal context has no {to_fiber(d)}", d)
            apex = base.src(k.chi(w.apex))
            legs = tuple(base.comp(k.ext(leg), base.inverse(dem.isos[t]))
                         for leg, t in zip(w.legs, _leg_targets(base, d)))
            back = verify_limit(base, d, apex, legs)
            if back is None:
                raise NotDFL(f"transported {d} is not a limit in the base", d)
            found[d] = back
    out = FinLimCat(base, found)
    k.cache["U"] = out
    return out


def U_morphism(m):
    rep = check_functor(m.functor, shapes=LIMIT_SHAPES)
    if not all(rep.preserves.values()):
        raise NotPreserving("base functor does not preserve finite limits", rep.witnesses)
    return m.functor


def U_2cell(cell):
    return cell.tau


def U_apply(x):
    """Apply ``U`` to a comprehension category, a morphism or a 2-cell."""
    if isinstance(x, CompCat):
        return U_object(x)
    if isinstance(x, CompCatMorphism):
        return U_morphism(x)
    if isinstance(x, CompCat2Cell):
        return U_2cell(x)
    raise TypeError(f"U does not apply to {type(x).__name__}")


@dataclass
class EssentialPreimage:
    """A type ``A`` over ``G`` whose projection is isomorphic to ``s`` in the slice over ``G``.

    ``forward: G.A -> D`` and ``backward: D -> G.A`` are mutually inverse and
    commute with the maps down to ``G``.  ``steps`` keeps the intermediate
    data of the construction.
    """

    morphism: str
    type: str
    forward: str
    backward: str
    steps: dict = field(default_factory=dict)


def essential_preimage(k, s):
    """Exhibit ``s: D -> G`` as a display map up to isomorphism.

    Both contexts are rewritten as closed types by democracy and weakened to
    ``G``; two sections of the weakened ``delta_G`` compare ``s`` with the
    projection; their identity type, summed along the weakened ``delta_D``,
    is the required type.
    """
    rep = check_dfl(k)
    if not rep:
        raise NotDFL(f"not a DFL comprehension category: {rep.failures[0][1]}", rep.failures[0])
    base = k.base
    dem, sig = rep.democracy, rep.sigma
    delta, gamma = base.ends(s)
    d_delta, d_gamma = dem.types[delta], dem.types[gamma]
    iso_delta, iso_gamma = dem.isos[delta], dem.isos[gamma]
    inv_delta = base.inverse(iso_delta)

    bang_g = k.bang(gamma)
    dhat, lift1 = subst_type(k, bang_g, d_delta)
    gd, p_dhat = ctx_extend(k, gamma, dhat)
    c1 = k.ext(lift1)

    bang_gd = k.bang(gd)
    ghat, _ = subst_type(k, bang_gd, d_gamma)
    square = lift_square(k, bang_gd, d_gamma)
    idgd = base.identity[gd]
    left = square.mediator(gd, (idgd, base.comp(p_dhat, iso_gamma)))
    right = square.mediator(gd, (idgd, base.comp(c1, inv_delta, s, iso_gamma)))

    ident = ext_id_type(k, Term(gd, ghat, left), Term(gd, ghat, right))
    e = ident.type
    a = sig.sigma(gamma, dhat, e)
    phi, phi_inv = sig.strong[gamma, dhat, e]
    _, p_e = ctx_extend(k, gd, e)
    f = base.comp(p_e, c1, inv_delta)

    h = lift_square(k, bang_g, d_delta).mediator(delta, (s, iso_delta))
    he, _ = subst_type(k, h, e)
    found = terms(k, delta, he)
    if not found:
        raise BiequivError(f"reindexed identity type has no term along {h!r}", (s, h))
    back = pair_sub(k, h, e, found[0])

    forward = base.comp(phi_inv, f)
    backward = base.comp(back, phi)
    ga, p_a = ctx_extend(k, gamma, a)
    ok = (base.comp(forward, backward) == base.identity[ga]
          and base.comp(backward, forward) == base.identity[delta]
          and base.comp(forward, s) == p_a
          and base.comp(backward, p_a) == s)
    if not ok:
        raise BiequivError(f"construction for {s!r} does not give a slice isomorphism", s)
    steps = {"delta_hat": dhat, "gamma_hat": ghat, "l": left, "r": right, "id_type": e,
             "f": f, "h": h, "t": found[0].section, "comparison": phi}
    return EssentialPreimage(s, a, forward, backward, steps)


def xi_component(c):
    """``C -> U(H(C))``, which is the identity functor on the same base."""
    return identity_functor(_cat(c))


def zeta_component(k):
    """``K -> H(U(K))`` given by the identity on the base, ``chi`` on types and
    identity components on the square."""
    h = self_indexing(k.base)
    f = identity_functor(k.base)
    fb = k.comprehension
    if fb.target is not h.types:
        raise NotCartesian("comprehension does not land in the shared arrow category")
    return CompCatMorphism(k, h, f, fb, identity_chi(k, h, f, fb), name="zeta")


@dataclass
class RoundtripReport:
    nominal: bool = True
    witnesses_agree: bool = True
    xi_equivalence: bool = True
    zeta_equivalence: bool = True
    functor_laws: bool = True
    details: list = field(default_factory=list)

    @property
    def ok(self):
        return (self.nominal and self.witnesses_agree and self.xi_equivalence
                and self.zeta_equivalence and self.functor_laws)

    def __bool__(self):
        return self.ok


def _witnesses_agree(c, u, exact):
    base = c.cat
    for d, w in c.witnesses.items():
        v = u.witnesses.get(d)
        if v is None:
            return False, d
        if exact:
            if (v.apex, v.legs) != (w.apex, w.legs):
                return False, d
        elif not base.isos(v.apex, w.apex):
            return False, d
    return True, None


def roundtrip_check(x, functors=()):
    """Check both roundtrips on a finite-limit category or a comprehension category.

    For a category: ``U(H(C))`` has the same presentation, its recomputed
    limits agree with the originals (exactly when ``C`` is gaunt, up to
    isomorphism otherwise), and ``xi`` is an equivalence.  For a
    comprehension category: ``zeta`` is an adjoint equivalence.  Given
    functors, ``U(H(F)) == F``, ``H`` preserves identities and, for composable
    pairs, composites.
    """
    rep = RoundtripReport()
    if isinstance(x, CompCat):
        z = zeta_component(x)
        res = is_adjequiv_1cell(z)
        rep.zeta_equivalence = bool(res)
        if not res:
            rep.details.append(("zeta", res.witness))
        x = finlim(U_object(x).cat)
    c = finlim(x)
    k = H_object(c)
    u = U_object(k)
    rep.nominal = same_presentation(u.cat, c.cat)
    agree, bad = _witnesses_agree(c, u, bool(is_gaunt(c.cat)))
    rep.witnesses_agree = agree
    if not agree:
        rep.details.append(("witness", bad))
    rep.xi_equivalence = bool(check_equivalence(xi_component(c)))
    ident = H_morphism(identity_functor(c.cat))
    laws = ident.disp_functor.on_dmorphisms == {m: m for m in k.types.dmorphisms}
    for f in functors:
        laws = laws and same_functor(U_morphism(H_morphism(f)), f)
    for f in functors:
        for g in functors:
            if f.target is g.source:
                hfg = H_morphism(compose_functors(f, g))
                hf, hg = H_morphism(f), H_morphism(g)
                laws = laws and hfg.disp_functor.on_dmorphisms == {
                    m: hg.disp_functor.dmor(n) for m, n in hf.disp_functor.on_dmorphisms.items()}
    rep.functor_laws = laws
    return rep

