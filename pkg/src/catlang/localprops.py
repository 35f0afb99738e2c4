"""Local properties of finite-limit categories and the classification they induce.

A local property has two halves: a check on categories and a check on
finite-limit preserving functors.  Every check is exhaustive and runs under a
step budget; running out gives an ``InconclusiveAtBound`` verdict instead of
a guess.
"""

import os
from dataclasses import dataclass, field
from typing import Callable

from .biequiv import NotFinLim, finlim
from .compcat import self_indexing
from .displayed import fiber_category, substitution_functor
from .fincat import FinFunctor, compose_functors, identity_functor, slice_category
from .functors import check_equivalence, find_adjoint
from .limits import (binary_coproduct, coequalizer, find_colimit, initial, pullback,
                     verify_limit)
from .results import NotFound, SearchBoundExceeded

VERIFIED = "Verified"
COUNTEREXAMPLE = "Counterexample"
INCONCLUSIVE = "InconclusiveAtBound"

DEFAULT_BOUND = 2_000_000


def default_bound():
    env = os.environ.get("CATLANG_BOUND")
    return int(env) if env else DEFAULT_BOUND


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: object = None
    bound: int = None

    def __bool__(self):
        return self.status == VERIFIED

    @property
    def verified(self):
        return self.status == VERIFIED

    @property
    def counterexample(self):
        return self.status == COUNTEREXAMPLE


def verified(witness=None):
    return Verdict(VERIFIED, witness)


def counterexample(witness):
    return Verdict(COUNTEREXAMPLE, witness)


class _OutOfBudget(Exception):
    pass


class Budget:
    """Counts search steps and stops the search when the bound is reached."""

    def __init__(self, bound=None):
        self.bound = default_bound() if bound is None else bound
        self.used = 0

    def spend(self, n=1):
        self.used += n
        if self.bound is not None and self.used > self.bound:
            raise _OutOfBudget


def _run(check, *args, bound=None):
    budget = Budget(bound)
    try:
        return check(*args, budget)
    except _OutOfBudget:
        return Verdict(INCONCLUSIVE, None, budget.bound)


def combine(verdicts):
    """Conjunction of named verdicts: any counterexample wins over inconclusive."""
    bad = {k: v.witness for k, v in verdicts.items() if v.counterexample}
    if bad:
        return counterexample(bad)
    unsure = [k for k, v in verdicts.items() if v.status == INCONCLUSIVE]
    if unsure:
        return Verdict(INCONCLUSIVE, unsure, next(v.bound for v in verdicts.values() if v.bound))
    return verified()


# helpers on a FinLimCat


def _is_mono(cat, f, budget):
    x = cat.src(f)
    for w in cat.objects:
        seen = {}
        for g in cat.hom(w, x):
            budget.spend()
            k = cat.comp(g, f)
            if k in seen:
                return False
            seen[k] = g
    return True


def _regular_epi(c, e):
    cat = c.cat
    kp = c.pullback(e, e)
    return verify_limit(cat, coequalizer(*kp.legs), cat.dst(e), (e,)) is not None


def _initial(cat):
    return find_colimit(cat, initial())


# strict initial object


def _strict_initial_cat(c, budget):
    cat = c.cat
    w = _initial(cat)
    if not w:
        return counterexample({"axiom": "initial object exists"})
    for f in cat.hom_to(w.apex):
        budget.spend()
        if not cat.is_iso(f):
            return counterexample({"axiom": "initial object is strict", "morphism": f})
    return verified({"initial": w.apex})


def _preserves_initial(fun, c1, c2, budget):
    w = _initial(c1.cat)
    if w:
        budget.spend()
        if verify_limit(c2.cat, initial(), fun.ob(w.apex), ()) is None:
            return counterexample({"axiom": "initial object preserved", "image": fun.ob(w.apex)})
    return verified()


def _preserves_coproducts(fun, c1, c2, budget):
    cat = c1.cat
    for a in cat.objects:
        for b in cat.objects:
            w = find_colimit(cat, binary_coproduct(a, b))
            if not w:
                continue
            budget.spend()
            d = binary_coproduct(fun.ob(a), fun.ob(b))
            if verify_limit(c2.cat, d, fun.ob(w.apex), tuple(fun.mor(i) for i in w.legs)) is None:
                return counterexample({"axiom": "binary coproduct preserved", "pair": (a, b)})
    return verified()


# coproducts


def _coproducts(c, budget):
    cat = c.cat
    out = {}
    for a in cat.objects:
        for b in cat.objects:
            budget.spend()
            w = find_colimit(cat, binary_coproduct(a, b))
            if not w:
                return None, (a, b)
            out[a, b] = w
    return out, None


def _stable(c, coprods, budget):
    cat = c.cat
    for (a, b), w in coprods.items():
        i1, i2 = w.legs
        for f in cat.hom_to(w.apex):
            budget.spend()
            p1, p2 = c.pullback(f, i1), c.pullback(f, i2)
            x = cat.src(f)
            d = binary_coproduct(p1.apex, p2.apex)
            if verify_limit(cat, d, x, (p1.legs[0], p2.legs[0])) is None:
                return {"pair": (a, b), "along": f}
    return None


def _stable_coproducts_cat(c, budget):
    coprods, missing = _coproducts(c, budget)
    if coprods is None:
        return counterexample({"axiom": "binary coproducts exist", "pair": missing})
    bad = _stable(c, coprods, budget)
    if bad:
        return counterexample({"axiom": "coproducts stable under pullback", **bad})
    return verified()


def _extensive_cat(c, budget):
    cat = c.cat
    w0 = _initial(cat)
    if not w0:
        return counterexample({"axiom": "initial object exists"})
    coprods, missing = _coproducts(c, budget)
    if coprods is None:
        return counterexample({"axiom": "binary coproducts exist", "pair": missing})
    strict = _strict_initial_cat(c, budget)
    if not strict:
        return strict
    bad = _stable(c, coprods, budget)
    if bad:
        return counterexample({"axiom": "coproducts stable under pullback", **bad})
    for (a, b), w in coprods.items():
        i1, i2 = w.legs
        for i in (i1, i2):
            if not _is_mono(cat, i, budget):
                return counterexample({"axiom": "coproducts disjoint", "pair": (a, b),
                                       "reason": f"injection {i} is not monic"})
        p = c.pullback(i1, i2)
        if verify_limit(cat, initial(), p.apex, ()) is None:
            return counterexample({"axiom": "coproducts disjoint", "pair": (a, b),
                                   "reason": f"injections meet in {p.apex}, which is not initial"})
    return verified()


def _extensive_fun(fun, c1, c2, budget):
    return combine({"initial": _preserves_initial(fun, c1, c2, budget),
                    "coproducts": _preserves_coproducts(fun, c1, c2, budget)})


# regular and exact


def _regular_cat(c, budget):
    cat = c.cat
    for f in cat.morphisms:
        budget.spend()
        kp = c.pullback(f, f)
        if not find_colimit(cat, coequalizer(*kp.legs)):
            return counterexample({"axiom": "kernel pairs have coequalizers", "morphism": f})
    for e in cat.morphisms:
        if not _regular_epi(c, e):
            continue
        for g in cat.hom_to(cat.dst(e)):
            budget.spend()
            p = c.pullback(g, e)
            if not _regular_epi(c, p.legs[0]):
                return counterexample({"axiom": "regular epis stable under pullback",
                                       "epi": e, "along": g})
    return verified()


def _regular_fun(fun, c1, c2, budget):
    for e in c1.cat.morphisms:
        budget.spend()
        if _regular_epi(c1, e) and not _regular_epi(c2, fun.mor(e)):
            return counterexample({"axiom": "regular epis preserved", "epi": e})
    return verified()


def _equivalence_relations(c, budget):
    """Parallel pairs ``r -> x`` that are jointly monic, reflexive, symmetric and transitive."""
    cat = c.cat
    out = []
    for x in cat.objects:
        for r in cat.objects:
            homs = cat.hom(r, x)
            for r1 in homs:
                for r2 in homs:
                    budget.spend()
                    if _is_relation(c, r, r1, r2, budget):
                        out.append((r, r1, r2))
    return out


def _is_relation(c, r, r1, r2, budget):
    cat = c.cat
    x = cat.dst(r1)
    for w in cat.objects:
        seen = set()
        for g in cat.hom(w, r):
            budget.spend()
            key = (cat.comp(g, r1), cat.comp(g, r2))
            if key in seen:
                return False
            seen.add(key)
    idx = cat.identity[x]
    if not any(cat.comp(d, r1) == idx and cat.comp(d, r2) == idx for d in cat.hom(x, r)):
        return False
    if not any(cat.comp(s, r1) == r2 and cat.comp(s, r2) == r1 for s in cat.hom(r, r)):
        return False
    p = c.pullback(r2, r1)
    q1, q2 = p.legs
    return any(cat.comp(t, r1) == cat.comp(q1, r1) and cat.comp(t, r2) == cat.comp(q2, r2)
               for t in cat.hom(p.apex, r))


def _exact_cat(c, budget):
    reg = _regular_cat(c, budget)
    if not reg:
        return reg
    cat = c.cat
    for r, r1, r2 in _equivalence_relations(c, budget):
        budget.spend()
        q = find_colimit(cat, coequalizer(r1, r2))
        if not q or verify_limit(cat, pullback(q.legs[0], q.legs[0]), r, (r1, r2)) is None:
            return counterexample({"axiom": "equivalence relations effective", "relation": (r, r1, r2)})
    return verified()


# subobject classifier


def _subobjects(c, x, budget):
    """One mono into x per isomorphism class of subobjects."""
    cat = c.cat
    reps = []
    for a in cat.objects:
        for m in cat.hom(a, x):
            if not _is_mono(cat, m, budget):
                continue
            same = False
            for m2 in reps:
                budget.spend()
                a2 = cat.src(m2)
                if any(cat.comp(i, m2) == m for i in cat.isos(a, a2)):
                    same = True
                    break
            if not same:
                reps.append(m)
    return reps


def _classifies(c, omega, true, subs, budget):
    cat = c.cat
    one = c.terminal.apex
    for x, monos in subs.items():
        for m in monos:
            a = cat.src(m)
            bang = cat.hom(a, one)[0]
            n = 0
            for chi in cat.hom(x, omega):
                budget.spend()
                if verify_limit(cat, pullback(chi, true), a, (m, bang)) is not None:
                    n += 1
            if n != 1:
                return {"object": x, "mono": m, "classifying_maps": n}
    return None


def _omega_cat(c, budget):
    cat = c.cat
    one = c.terminal.apex
    subs = {x: _subobjects(c, x, budget) for x in cat.objects}
    for omega in cat.objects:
        for true in cat.hom(one, omega):
            if _classifies(c, omega, true, subs, budget) is None:
                return verified({"omega": omega, "true": true})
    order = [one] + [x for x in cat.objects if x != one]
    for x in order:
        largest = max(len(cat.hom(x, o)) for o in cat.objects)
        if len(subs[x]) > largest:
            return counterexample({"axiom": "subobject classifier", "object": x,
                                   "terminal": x == one, "subobjects": len(subs[x]),
                                   "largest_hom_out": largest,
                                   "reason": f"|Sub({x})| = {len(subs[x])} exceeds every |hom({x}, -)|"})
    return counterexample({"axiom": "subobject classifier", "reason": "no candidate classifies every mono"})


def _omega_fun(fun, c1, c2, budget):
    v = _omega_cat(c1, budget)
    if not v:
        return verified()
    subs = {x: _subobjects(c2, x, budget) for x in c2.cat.objects}
    omega, true = v.witness["omega"], v.witness["true"]
    image_true = c2.cat.comp(c2.cat.hom(c2.terminal.apex, fun.ob(c1.terminal.apex))[0], fun.mor(true))
    bad = _classifies(c2, fun.ob(omega), image_true, subs, budget)
    if bad:
        return counterexample({"axiom": "subobject classifier preserved", **bad})
    return verified()


# parameterized natural numbers object


def _is_pnno(c, n, zero, succ, budget):
    cat = c.cat
    one = c.terminal.apex
    for a in cat.objects:
        prod = c.product(a, n)
        p, (pa, pn) = prod.apex, prod.legs
        ida = cat.identity[a]
        bang = cat.hom(a, one)[0]
        start = prod.mediator(a, (ida, cat.comp(bang, zero)))
        step = prod.mediator(p, (pa, cat.comp(pn, succ)))
        for x in cat.objects:
            for f in cat.hom(a, x):
                for g in cat.hom(x, x):
                    count = 0
                    for h in cat.hom(p, x):
                        budget.spend()
                        if cat.comp(start, h) == f and cat.comp(step, h) == cat.comp(h, g):
                            count += 1
                    if count != 1:
                        return {"parameter": a, "target": x, "base": f, "step": g, "solutions": count}
    return None


def _nno_search(c, budget, nondegenerate):
    cat = c.cat
    one = c.terminal.apex
    failures = []
    for n in cat.objects:
        for zero in cat.hom(one, n):
            for succ in cat.hom(n, n):
                if nondegenerate and cat.comp(zero, succ) == zero:
                    failures.append({"candidate": (n, zero, succ), "reason": "successor fixes zero"})
                    continue
                bad = _is_pnno(c, n, zero, succ, budget)
                if bad is None:
                    return verified({"N": n, "zero": zero, "succ": succ})
                failures.append({"candidate": (n, zero, succ), **bad})
    return counterexample({"axiom": "parameterized natural numbers object", "candidates": failures[:5]})


def _nno_cat(c, budget):
    return _nno_search(c, budget, False)


def _nno_nondegenerate_cat(c, budget):
    return _nno_search(c, budget, True)


def _nno_fun(fun, c1, c2, budget, nondegenerate=False):
    v = _nno_search(c1, budget, nondegenerate)
    if not v:
        return verified()
    w = v.witness
    cat2 = c2.cat
    image_zero = cat2.comp(cat2.hom(c2.terminal.apex, fun.ob(c1.terminal.apex))[0], fun.mor(w["zero"]))
    bad = _is_pnno(c2, fun.ob(w["N"]), image_zero, fun.mor(w["succ"]), budget)
    if bad:
        return counterexample({"axiom": "natural numbers object preserved", **bad})
    return verified()


@dataclass(frozen=True)
class LocalProperty:
    name: str
    cat_check: Callable
    fun_check: Callable
    description: str = ""


def _conj(*props):
    def cat_check(c, budget):
        return combine({p.name: p.cat_check(c, budget) for p in props})

    def fun_check(fun, c1, c2, budget):
        return combine({p.name: p.fun_check(fun, c1, c2, budget) for p in props})

    return cat_check, fun_check


def registry():
    """Every registered local property, by name."""
    base = [
        LocalProperty("strict_initial", _strict_initial_cat, _preserves_initial,
                      "an initial object with every map into it invertible"),
        LocalProperty("stable_coproducts", _stable_coproducts_cat, _preserves_coproducts,
                      "binary coproducts stable under pullback"),
        LocalProperty("extensive", _extensive_cat, _extensive_fun,
                      "finite coproducts that are disjoint and stable, with a strict initial object"),
        LocalProperty("regular", _regular_cat, _regular_fun,
                      "coequalizers of kernel pairs and pullback-stable regular epis"),
        LocalProperty("exact", _exact_cat, _regular_fun,
                      "regular, with every equivalence relation effective"),
        LocalProperty("subobject_classifier", _omega_cat, _omega_fun,
                      "an object classifying monomorphisms"),
        LocalProperty("nno_param", _nno_cat, _nno_fun,
                      "a parameterized natural numbers object"),
        LocalProperty("nno_param_nondegenerate", _nno_nondegenerate_cat,
                      lambda f, a, b, bud: _nno_fun(f, a, b, bud, nondegenerate=True),
                      "a parameterized natural numbers object whose successor moves zero"),
    ]
    props = {p.name: p for p in base}
    props["conj"] = LocalProperty("conj", *_conj(props["extensive"], props["exact"]),
                                  "extensive and exact")
    return props


def lookup(name):
    props = registry()
    if name not in props:
        raise KeyError(f"unknown local property {name!r}; known: {sorted(props)}")
    return props[name]


def conjunction(name, *props):
    """A new local property that holds when all of ``props`` hold."""
    return LocalProperty(name, *_conj(*props), " and ".join(p.name for p in props))


def _prop(p):
    return lookup(p) if isinstance(p, str) else p


def check_local_property(c, p, bound=None):
    """Run the category half of a property on a finite-limit category."""
    return _run(_prop(p).cat_check, finlim(c), bound=bound)


def check_functor_property(fun, p, bound=None):
    """Run the functor half of a property on a functor between finite-limit categories."""
    return _run(_prop(p).fun_check, fun, finlim(fun.source), finlim(fun.target), bound=bound)


def pullback_functor(c, f):
    """``f*: C/y -> C/x`` computed from the chosen pullbacks of ``c``."""
    c = finlim(c)
    cat = c.cat
    key = ("pullback_functor", f)
    if key in cat.cache:
        return cat.cache[key]
    x, y = cat.ends(f)
    src, tgt = slice_category(cat, y), slice_category(cat, x)
    top = src.cache["slice_top"]
    omap, mmap = {}, {}
    for g in src.objects:
        omap[g] = c.pullback(f, g).legs[0]
    for m in src.morphisms:
        g1, g2 = src.ends(m)
        w1, w2 = c.pullback(f, g1), c.pullback(f, g2)
        med = w2.mediator(w1.apex, (w1.legs[0], cat.comp(w1.legs[1], top[m])))
        mmap[m] = f"{med}@{omap[g1]}>{omap[g2]}"
    out = FinFunctor(src, tgt, omap, mmap, name=f"{f}*")
    cat.cache[key] = out
    return out


def sliced_functor(fun, u):
    """``F/u: A/u -> B/F(u)``."""
    src = slice_category(fun.source, u)
    tgt = slice_category(fun.target, fun.ob(u))
    top = src.cache["slice_top"]
    omap = {v: fun.mor(v) for v in src.objects}
    mmap = {}
    for m in src.morphisms:
        v1, v2 = src.ends(m)
        mmap[m] = f"{fun.mor(top[m])}@{omap[v1]}>{omap[v2]}"
    return FinFunctor(src, tgt, omap, mmap, name=f"{fun.name}/{u}")


@dataclass
class ClosureReport:
    """One verdict per closure axiom."""

    property: str
    axioms: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(v.verified for v in self.axioms.values())

    def __bool__(self):
        return self.ok


def _implies(premise, conclusion):
    if premise.verified:
        return conclusion
    return verified({"vacuous": premise.status})


def check_property_closure(p, c, bound=None):
    """Check the five closure axioms of a local property on one category.

    identity: P(C) gives P(id).  composition: P(f*) and P(g*) give P(g*;f*).
    slices: P(C) gives P(C/x).  pullback functors: P(C) gives P(f*).
    sliced functors: P(F) gives P(F/u) for F the identity and each f*.
    """
    p = _prop(p)
    c = finlim(c)
    cat = c.cat
    budget = Budget(bound)
    rep = ClosureReport(p.name)

    def run(fn, *args):
        try:
            return fn(*args, budget)
        except _OutOfBudget:
            return Verdict(INCONCLUSIVE, None, budget.bound)

    def fun_verdict(fun):
        return run(p.fun_check, fun, finlim(fun.source), finlim(fun.target))

    def collect(pairs):
        out = {}
        for key, v in pairs:
            if not v.verified:
                out[key] = v
                if v.counterexample:
                    break
        if not out:
            return verified()
        return combine({str(k): v for k, v in out.items()})

    here = run(p.cat_check, c)
    ident = identity_functor(cat)
    rep.axioms["identity"] = _implies(here, fun_verdict(ident))
    pulls = {f: pullback_functor(c, f) for f in cat.morphisms}
    fun_v = {f: fun_verdict(pulls[f]) for f in cat.morphisms}

    def compositions():
        for f in cat.morphisms:
            for g in cat.hom_from(cat.dst(f)):
                if fun_v[f].verified and fun_v[g].verified:
                    yield (f, g), fun_verdict(compose_functors(pulls[g], pulls[f]))

    rep.axioms["composition"] = collect(compositions())
    rep.axioms["slices"] = _implies(here, collect(
        (x, run(p.cat_check, finlim(slice_category(cat, x)))) for x in cat.objects))
    rep.axioms["pullback_functors"] = _implies(here, collect(fun_v.items()))

    def slicings():
        tested = [(ident, here)] + [(pulls[f], fun_v[f]) for f in cat.morphisms]
        for fun, v in tested:
            if not v.verified:
                continue
            for u in fun.source.objects:
                yield (fun.name, u), fun_verdict(sliced_functor(fun, u))

    rep.axioms["sliced_functors"] = collect(slicings())
    return rep


def compcat_satisfies(k, p, bound=None):
    """P on every fiber and on every reindexing functor of a comprehension category.

    Every failing fiber is reported; reindexing functors stop at the first failure.
    """
    p = _prop(p)
    results = {}
    for x in k.base.objects:
        try:
            fib = finlim(fiber_category(k.types, x))
        except NotFinLim as exc:
            return counterexample({"fiber": x, "reason": str(exc)})
        results[f"fiber {x}"] = _run(p.cat_check, fib, bound=bound)
    for f in k.base.morphisms:
        sub = substitution_functor(k.cleaving, f)
        v = _run(p.fun_check, sub, finlim(sub.source), finlim(sub.target), bound=bound)
        results[f"reindex {f}"] = v
        if v.counterexample:
            return combine(results)
    return combine(results)


def _fiber_to_base(k):
    fib = fiber_category(k.types, k.terminal)
    return FinFunctor(fib, k.base, {a: k.base.src(k.chi(a)) for a in fib.objects},
                      {m: k.ext(m) for m in fib.morphisms}, name="extension")


def extend_biequiv_check(c, p, k=None, bound=None):
    """Check that P travels along the biequivalence in both directions.

    ``C`` satisfies P exactly when its self-indexing does; and for a DFL
    comprehension category ``k`` over ``C``, P of the fiber over the terminal
    context gives P of the base, transported along the extension functor
    (which must be an equivalence).
    """
    p = _prop(p)
    c = finlim(c)
    k = k or self_indexing(c.cat)
    here = check_local_property(c, p, bound)
    there = compcat_satisfies(self_indexing(c.cat), p, bound)
    parts = {"agree": verified() if here.status == there.status else
             counterexample({"category": here.status, "self_indexing": there.status})}
    ext = _fiber_to_base(k)
    eq = check_equivalence(ext)
    if not eq:
        parts["fiber_to_base"] = counterexample({"reason": eq.reason, "witness": eq.witness})
    else:
        fib_v = check_local_property(finlim(ext.source), p, bound)
        parts["fiber_to_base"] = _implies(fib_v, here)
    return combine(parts)


SIGNATURES = {
    "finlim": "1, ×, =ext, Σ",
    "lccc": "1, ×, =ext, Σ, Π",
    "pretopos": "O, 1, ×, =ext, Σ, +, Quot",
    "arithmetic_pretopos": "O, 1, ×, =ext, Σ, +, Quot, ℕ",
    "pi_pretopos": "O, 1, ×, =ext, Σ, Π, +, Quot",
    "topos": "O, 1, ×, =ext, Σ, Π, +, Quot, Ω",
    "topos_nno": "O, 1, ×, =ext, Σ, Π, +, Quot, Ω, ℕ",
}

STRENGTH = ("topos_nno", "topos", "pi_pretopos", "arithmetic_pretopos", "pretopos", "lccc", "finlim")


@dataclass
class ClassReport:
    flags: dict
    signatures: dict

    @property
    def strongest(self):
        return next((name for name in STRENGTH if self.flags[name].verified), None)

    @property
    def signature(self):
        s = self.strongest
        return SIGNATURES[s] if s else ""


def check_lccc(c, bound=None):
    """Right adjoints to every pullback functor ``f*: C/y -> C/x``."""
    c = finlim(c)
    max_morph = bound if bound is not None and bound < 10_000 else None
    for f in c.cat.morphisms:
        fun = pullback_functor(c, f)
        try:
            kw = {} if max_morph is None else {"max_morphisms": max_morph, "max_objects": max(1, max_morph // 5)}
            adj = find_adjoint(fun, side="right", **kw)
        except SearchBoundExceeded as exc:
            return Verdict(INCONCLUSIVE, {"morphism": f, "reason": str(exc)}, exc.bound)
        if isinstance(adj, NotFound):
            return counterexample({"axiom": "dependent products", "morphism": f, "object": adj.witness})
    return verified()


def classify(c, bound=None):
    """Decide each class of finite-limit category and pick the matching signature."""
    try:
        c = finlim(c)
    except NotFinLim as exc:
        miss = counterexample({"axiom": "finite limits", "missing": str(exc.witness)})
        flags = {name: miss for name in reversed(STRENGTH)}
        return ClassReport(flags, {})
    props = registry()
    v = {name: check_local_property(c, props[name], bound)
         for name in ("extensive", "exact", "subobject_classifier", "nno_param")}
    lccc = check_lccc(c, bound)
    pretopos = combine({"extensive": v["extensive"], "exact": v["exact"]})
    flags = {
        "finlim": verified(),
        "lccc": lccc,
        "pretopos": pretopos,
        "arithmetic_pretopos": combine({"pretopos": pretopos, "nno_param": v["nno_param"]}),
        "pi_pretopos": combine({"pretopos": pretopos, "lccc": lccc}),
        "topos": combine({"pretopos": pretopos, "subobject_classifier": v["subobject_classifier"],
                          "lccc": lccc}),
    }
    flags["topos_nno"] = combine({"topos": flags["topos"], "nno_param": v["nno_param"]})
    sigs = {name: SIGNATURES[name] for name in STRENGTH if flags[name].verified}
    return ClassReport(flags, sigs)
