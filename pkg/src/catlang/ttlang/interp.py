"""Interpretation of resolved syntax in a comprehension category.

A context denotes an iterated extension of the terminal context, a type a
displayed object over it and a term a section of the type's projection.
Checking is bidirectional: ``lam`` and ``pair`` are checked against their
expected type and everything else is inferred and then converted.

Conversion compares type formers syntactically and the terms inside ``Eq``
semantically, by equality of sections.  Two convertible types may still
denote different (isomorphic) displayed objects, for instance a weakened
variable type against the type re-interpreted in the longer context; terms
are then moved along the unique vertical isomorphism between them, and each
such comparison is recorded.
"""

from dataclasses import dataclass, field

from ..compcat import Term, ctx_extend, lift_square, pair_sub, subst_term, subst_type, terms, var_term
from ..limits import binary_product, find_limit
from ..typeformers import (TypeFormerError, check_pi_types, check_prod_eq_types, check_sigma_types,
                           check_unit_types, ext_id_type, section_to_vertical, vertical_to_section)
from .errors import FORMER_UNAVAILABLE, NOT_A_SECTION, TYPE_MISMATCH, TTTypeError, UnboundVariable
from .syntax import (Ann, App, Atom, CheckDecl, CtxDecl, Eq, Fst, Lam, Pair, Pi, Prod, Refl, Sigma, Snd,
                     TermDecl, TT, TypeDecl, Unit, Var, parse_judgment, shift, subst_top)


@dataclass(frozen=True)
class SemCtx:
    """``objects[i+1]`` is ``objects[i].types[i]`` with projection ``projections[i]``."""

    tele: tuple
    objects: tuple
    types: tuple
    projections: tuple

    @property
    def obj(self):
        return self.objects[-1]


@dataclass(frozen=True)
class Comparison:
    """A vertical isomorphism used to move a term between two denotations of one type."""

    context: str
    source: str
    target: str
    morphism: str
    inverse: str
    reason: str


@dataclass(frozen=True)
class IdentityRecord:
    """An interpreted ``Eq(t, u)``: its denotation and the two sections."""

    context: str
    type: str
    lhs: Term
    rhs: Term


def _mismatch(msg, pos):
    return TTTypeError(TYPE_MISMATCH, msg, pos)


class Interpreter:
    def __init__(self, k, assignment=None):
        self.k = k
        self.assignment = dict(assignment or {})
        self._contexts = {}
        self._types = {}
        self._ids = {}
        self.comparisons = []
        self.identities = []

    # structure of the model

    def _former(self, label, fn, pos):
        try:
            return fn(self.k)
        except TypeFormerError as exc:
            raise TTTypeError(FORMER_UNAVAILABLE, f"{label} types are unavailable in this model: {exc}",
                              pos) from None

    def _unit(self, pos):
        return self._former("unit", check_unit_types, pos)

    def _fiberwise(self, shape, label, pos):
        rep = check_prod_eq_types(self.k, shape)
        if not rep.ok:
            raise TTTypeError(FORMER_UNAVAILABLE, f"{label} types are unavailable in this model", pos)

    def _unique(self, fib, x, y, pos):
        hom = fib.hom(x, y)
        if len(hom) != 1:
            raise TTTypeError(FORMER_UNAVAILABLE,
                              f"expected exactly one vertical map {x!r} -> {y!r}, found {len(hom)}", pos)
        return hom[0]

    # contexts and types

    def context(self, tele):
        if tele in self._contexts:
            return self._contexts[tele]
        if not tele:
            out = SemCtx((), (self.k.terminal,), (), ())
        else:
            prev = self.context(tele[:-1])
            name, ty = tele[-1]
            if ty is None:
                raise _mismatch("lam needs an expected Pi type to name its variable", None)
            a = self.type(prev, ty)
            ext, p = ctx_extend(self.k, prev.obj, a)
            out = SemCtx(tele, prev.objects + (ext,), prev.types + (a,), prev.projections + (p,))
        self._contexts[tele] = out
        return out

    def extend(self, ctx, var, dom):
        return self.context(ctx.tele + ((var, dom),))

    def type(self, ctx, ty):
        key = (ctx.tele, ty)
        if key not in self._types:
            self._types[key] = self._type(ctx, ty)
        return self._types[key]

    def _type(self, ctx, ty):
        k, g, pos = self.k, ctx.obj, ty.pos
        if isinstance(ty, Unit):
            return self._unit(pos).unit[g]
        if isinstance(ty, Atom):
            if ty.name not in self.assignment:
                raise UnboundVariable(ty.name, pos, "atomic type without an assignment")
            x0 = self.assignment[ty.name]
            if x0 not in k.types.dobjects[k.terminal]:
                raise _mismatch(f"atomic type {ty.name} must be assigned a type over the empty context", pos)
            return x0 if g == k.terminal else k.cleaving.reindex(k.bang(g), x0)
        if isinstance(ty, Prod):
            self._fiberwise("binary_product", "product", pos)
            a, b = self.type(ctx, ty.left), self.type(ctx, ty.right)
            return find_limit(k.fiber(g), binary_product(a, b)).apex
        if isinstance(ty, Eq):
            self._fiberwise("equalizer", "identity", pos)
            s, t1 = self.infer(ctx, ty.lhs)
            t2 = self.check(ctx, ty.rhs, s)
            try:
                idt = ext_id_type(k, t1, t2)
            except TypeFormerError as exc:
                raise TTTypeError(FORMER_UNAVAILABLE, f"identity types are unavailable: {exc}", pos) from None
            self._ids[ctx.tele, ty] = idt
            self.identities.append(IdentityRecord(g, idt.type, t1, t2))
            return idt.type
        a, inner, b = self._binder(ctx, ty)
        if isinstance(ty, Sigma):
            return self._former("Sigma", check_sigma_types, pos).sigma(g, a, b)
        return self._former("Pi", check_pi_types, pos).pi(g, a, b)

    def _binder(self, ctx, ty):
        a = self.type(ctx, ty.dom)
        inner = self.extend(ctx, ty.var, ty.dom)
        return a, inner, self.type(inner, ty.cod)

    # moving terms between denotations

    def coerce(self, t, target, reason, pos):
        fib = self.k.fiber(t.context)
        if t.type == target:
            idt = fib.identity[target]
            self.comparisons.append(Comparison(t.context, target, target, idt, idt, reason))
            return t
        hom = fib.hom(t.type, target)
        if len(hom) != 1 or not fib.is_iso(hom[0]):
            raise _mismatch(f"no canonical isomorphism {t.type!r} -> {target!r} over {t.context!r}", pos)
        v = hom[0]
        self.comparisons.append(Comparison(t.context, t.type, target, v, fib.inverse(v), reason))
        return Term(t.context, target, self.k.base.comp(t.section, self.k.ext(v)))

    def section(self, t, pos):
        base = self.k.base
        ext, p = ctx_extend(self.k, t.context, t.type)
        if base.ends(t.section) != (t.context, ext) or base.comp(t.section, p) != base.identity[t.context]:
            raise TTTypeError(NOT_A_SECTION, f"{t.section!r} is not a section of {p!r}", pos)
        return t

    # checking

    def check(self, ctx, tm, ty):
        target = self.type(ctx, ty)
        if isinstance(tm, Lam):
            if not isinstance(ty, Pi):
                raise _mismatch(f"lam cannot have type {ty}", tm.pos)
            return self._lam(ctx, tm, ty)
        if isinstance(tm, Pair):
            if isinstance(ty, Sigma):
                return self._pair_sigma(ctx, tm, ty)
            if not isinstance(ty, Prod):
                raise _mismatch(f"pair cannot have type {ty}", tm.pos)
            ta = self.check(ctx, tm.first, ty.left)
            tb = self.check(ctx, tm.second, ty.right)
            return self._pair_prod(ctx, ty, ta, tb)
        got, t = self.infer(ctx, tm)
        if not self.convertible(ctx, got, ty):
            raise _mismatch(f"{tm} has type {got}, expected {ty}", tm.pos)
        return self.coerce(t, target, "conversion", tm.pos)

    def infer(self, ctx, tm):
        """``(type, term)`` with the term's type equal to the denotation of ``type``."""
        k, g, pos = self.k, ctx.obj, tm.pos
        if isinstance(tm, Var):
            return self._var(ctx, tm)
        if isinstance(tm, TT):
            u = self._unit(pos)
            return Unit(), Term(g, u.unit[g], u.inverse[g])
        if isinstance(tm, Pair):
            sa, ta = self.infer(ctx, tm.first)
            sb, tb = self.infer(ctx, tm.second)
            ty = Prod(sa, sb, pos)
            return ty, self._pair_prod(ctx, ty, ta, tb)
        if isinstance(tm, (Fst, Snd)):
            s, tp = self.infer(ctx, tm.arg)
            if isinstance(s, Prod):
                return self._proj_prod(ctx, s, tp, isinstance(tm, Fst))
            if isinstance(s, Sigma):
                return self._proj_sigma(ctx, s, tm, tp)
            raise _mismatch(f"{tm} needs a pair, but its argument has type {s}", pos)
        if isinstance(tm, Refl):
            self.infer(ctx, tm.arg)
            ty = Eq(tm.arg, tm.arg, pos)
            target = self.type(ctx, ty)
            idt = self._ids[ctx.tele, ty]
            one = self._unit(pos).unit[g]
            fib = k.fiber(g)
            v = idt.witness.mediator(one, (fib.identity[one],))
            t = vertical_to_section(k, g, v)
            assert t.type == target
            return ty, t
        if isinstance(tm, App):
            return self._app(ctx, tm)
        if isinstance(tm, Ann):
            return tm.type, self.check(ctx, tm.term, tm.type)
        raise _mismatch("cannot infer the type of a lam; use it where a Pi type is expected", pos)

    def convertible(self, ctx, s, t):
        if type(s) is not type(t):
            return False
        if isinstance(s, Unit):
            return True
        if isinstance(s, Atom):
            return s.name == t.name
        if isinstance(s, Prod):
            return self.convertible(ctx, s.left, t.left) and self.convertible(ctx, s.right, t.right)
        if isinstance(s, (Sigma, Pi)):
            if not self.convertible(ctx, s.dom, t.dom):
                return False
            return self.convertible(self.extend(ctx, s.var, s.dom), s.cod, t.cod)
        ty, l1 = self.infer(ctx, s.lhs)
        try:
            l2 = self.check(ctx, t.lhs, ty)
            r1, r2 = self.check(ctx, s.rhs, ty), self.check(ctx, t.rhs, ty)
        except TTTypeError as exc:
            if exc.kind == TYPE_MISMATCH:
                return False
            raise
        return l1.section == l2.section and r1.section == r2.section

    def equal(self, ctx, lhs, rhs, ty):
        t1, t2 = self.check(ctx, lhs, ty), self.check(ctx, rhs, ty)
        return t1.section == t2.section

    # the rules

    def _var(self, ctx, v):
        k = self.k
        n = len(ctx.tele)
        i = v.level
        ty = shift(ctx.tele[i][1], i, n - i)
        t = var_term(k, ctx.objects[i], ctx.types[i])
        if i < n - 1:
            weaken = k.base.comp(*reversed(ctx.projections[i + 1:]))
            t = subst_term(k, weaken, t)
        return ty, self.coerce(t, self.type(ctx, ty), "weakening", v.pos)

    def _pair_prod(self, ctx, ty, ta, tb):
        k, g = self.k, ctx.obj
        w = find_limit(k.fiber(g), binary_product(ta.type, tb.type))
        one = self._unit(ty.pos).unit[g]
        m = w.mediator(one, (section_to_vertical(k, ta), section_to_vertical(k, tb)))
        t = vertical_to_section(k, g, m)
        assert t.type == self.type(ctx, ty)
        return t

    def _proj_prod(self, ctx, s, tp, first):
        k, g = self.k, ctx.obj
        fib = k.fiber(g)
        a, b = self.type(ctx, s.left), self.type(ctx, s.right)
        w = find_limit(fib, binary_product(a, b))
        leg = w.legs[0 if first else 1]
        t = vertical_to_section(k, g, fib.comp(section_to_vertical(k, tp), leg))
        return (s.left if first else s.right), t

    def _strong(self, ctx, ty):
        g = ctx.obj
        a, inner, b = self._binder(ctx, ty)
        st = self._former("Sigma", check_sigma_types, ty.pos)
        comp, inv = st.strong[g, a, b]
        return a, inner, b, comp, inv

    def _pair_sigma(self, ctx, tm, ty):
        k, g = self.k, ctx.obj
        a, inner, b, comp, _ = self._strong(ctx, ty)
        ta = self.check(ctx, tm.first, ty.dom)
        s = ta.section
        tb = self.check(ctx, tm.second, subst_top(ty.cod, len(ctx.tele), tm.first))
        tb = self.coerce(tb, subst_type(k, s, b)[0], "substitution", tm.pos)
        into = pair_sub(k, s, b, tb)
        return Term(g, self.type(ctx, ty), k.base.comp(into, comp))

    def _proj_sigma(self, ctx, s, tm, tp):
        k, g = self.k, ctx.obj
        base = k.base
        a, inner, b, _, inv = self._strong(ctx, s)
        m = base.comp(tp.section, inv)
        first = base.comp(m, k.chi(b))
        if isinstance(tm, Fst):
            return s.dom, Term(g, a, first)
        w = lift_square(k, first, b)
        t = Term(g, subst_type(k, first, b)[0], w.mediator(g, (base.identity[g], m)))
        ty = subst_top(s.cod, len(ctx.tele), Fst(tm.arg, tm.pos))
        return ty, self.coerce(t, self.type(ctx, ty), "substitution", tm.pos)

    def _pi_pieces(self, ctx, ty):
        g = ctx.obj
        a, inner, b = self._binder(ctx, ty)
        adj = self._former("Pi", check_pi_types, ty.pos).adjunctions[g, a]
        unit = self._unit(ty.pos).unit
        fib_a = adj.left.target
        back = self._unique(fib_a, adj.left.ob(unit[g]), unit[inner.obj], ty.pos)
        return inner, b, adj, fib_a, back

    def _lam(self, ctx, tm, ty):
        k, g = self.k, ctx.obj
        inner, b, adj, fib_a, back = self._pi_pieces(ctx, ty)
        tb = self.check(inner, tm.body, ty.cod)
        h = adj.hom_to_right(self._unit(tm.pos).unit[g], fib_a.comp(back, section_to_vertical(k, tb)))
        return vertical_to_section(k, g, h)

    def _app(self, ctx, tm):
        k = self.k
        f, tf = self.infer(ctx, tm.fun)
        if not isinstance(f, Pi):
            raise _mismatch(f"{tm.fun} is applied but has type {f}", tm.pos)
        inner, b, adj, fib_a, back = self._pi_pieces(ctx, f)
        gmap = adj.hom_from_left(section_to_vertical(k, tf), b)
        vb = fib_a.comp(fib_a.inverse(back), gmap)
        tb = vertical_to_section(k, inner.obj, vb)
        ta = self.check(ctx, tm.arg, f.dom)
        r = subst_term(k, ta.section, tb)
        ty = subst_top(f.cod, len(ctx.tele), tm.arg)
        return ty, self.coerce(r, self.type(ctx, ty), "substitution", tm.pos)


@dataclass
class Interpretation:
    """Denotations of every declaration, plus the comparisons and identity
    types met along the way."""

    k: object
    interpreter: Interpreter = field(repr=False)
    scope: object = field(repr=False, default=None)
    contexts: dict = field(default_factory=dict)
    types: dict = field(default_factory=dict)
    terms: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def comparisons(self):
        return self.interpreter.comparisons

    @property
    def identities(self):
        return self.interpreter.identities

    @property
    def ok(self):
        return all(result for _, result in self.checks)


def interpret(decls, k, assignment=None):
    """Interpret resolved declarations in the comprehension category ``k``.

    ``assignment`` maps atomic type names to types over the terminal context.
    Raises :class:`TTTypeError` carrying the offending declaration.
    """
    it = Interpreter(k, assignment)
    out = Interpretation(k, it, getattr(decls, "scope", None))
    for d in decls:
        try:
            if isinstance(d, CtxDecl):
                out.contexts[d.name] = it.context(d.tele)
                continue
            ctx = it.context(d.ctx)
            if isinstance(d, TypeDecl):
                out.types[d.name] = it.type(ctx, d.type)
            elif isinstance(d, TermDecl):
                out.terms[d.name] = it.section(it.check(ctx, d.term, d.type), d.pos)
            elif isinstance(d, CheckDecl):
                out.checks.append((d, it.equal(ctx, d.lhs, d.rhs, d.type)))
        except TTTypeError as exc:
            if exc.decl is None:
                exc.decl = d
            if exc.pos is None:
                exc.pos = d.pos
            raise
    return out


def check_equal(interp, k, judgment):
    """Decide ``t == u : A in G`` in the model: equal iff the sections coincide.

    ``judgment`` is a resolved ``CheckDecl`` or the source of one ``check`` line.
    """
    if isinstance(judgment, str):
        judgment = parse_judgment(judgment, interp.scope)
    it = interp.interpreter if interp.k is k else Interpreter(k, interp.interpreter.assignment)
    return it.equal(it.context(judgment.ctx), judgment.lhs, judgment.rhs, judgment.type)


def eq_reflection_failures(interp):
    """Identity types that are inhabited although their two sides differ."""
    k = interp.k
    return [r for r in interp.identities
            if terms(k, r.context, r.type) and r.lhs.section != r.rhs.section]


def comparison_failures(interp):
    """Recorded comparisons whose stored inverse does not invert them."""
    k = interp.k
    bad = []
    for c in interp.comparisons:
        fib = k.fiber(c.context)
        if (c.inverse is None or fib.comp(c.morphism, c.inverse) != fib.identity[c.source]
                or fib.comp(c.inverse, c.morphism) != fib.identity[c.target]):
            bad.append(c)
    return bad
