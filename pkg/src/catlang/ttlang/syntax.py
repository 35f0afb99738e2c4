"""Surface syntax: tokens, a recursive-descent parser and name resolution.

Variables are resolved to de Bruijn levels, so a resolved type or term keeps
its meaning in every extension of the context it was written in.  Declared
types and terms are macros: a use is replaced by the declared body, which is
allowed whenever the declaration's context is a prefix of the current one.
"""

import re
from dataclasses import dataclass, field

from .errors import TTSyntaxError, UnboundVariable

KEYWORDS = {"ctx", "type", "term", "check", "in", "Unit", "Prod", "Eq", "Sigma", "Pi",
            "tt", "pair", "fst", "snd", "refl", "lam", "app"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>--[^\n]*)
  | (?P<sym>:=|==|[():,])
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<bad>.)
""", re.VERBOSE)


def _pos():
    return field(default=None, compare=False, repr=False)


# types

@dataclass(frozen=True)
class Unit:
    pos: tuple = _pos()

    def __str__(self):
        return "Unit"


@dataclass(frozen=True)
class Atom:
    name: str
    pos: tuple = _pos()

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Prod:
    left: object
    right: object
    pos: tuple = _pos()

    def __str__(self):
        return f"Prod({self.left}, {self.right})"


@dataclass(frozen=True)
class Eq:
    lhs: object
    rhs: object
    pos: tuple = _pos()

    def __str__(self):
        return f"Eq({self.lhs}, {self.rhs})"


@dataclass(frozen=True)
class Sigma:
    var: str
    dom: object
    cod: object
    pos: tuple = _pos()

    def __str__(self):
        return f"Sigma ({self.var} : {self.dom}) ({self.cod})"


@dataclass(frozen=True)
class Pi:
    var: str
    dom: object
    cod: object
    pos: tuple = _pos()

    def __str__(self):
        return f"Pi ({self.var} : {self.dom}) ({self.cod})"


# terms

@dataclass(frozen=True)
class Name:
    """An identifier before resolution."""

    name: str
    pos: tuple = _pos()

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Var:
    level: int
    name: str = field(default="", compare=False)
    pos: tuple = _pos()

    def __str__(self):
        return self.name or f"#{self.level}"


@dataclass(frozen=True)
class TT:
    pos: tuple = _pos()

    def __str__(self):
        return "tt"


@dataclass(frozen=True)
class Pair:
    first: object
    second: object
    pos: tuple = _pos()

    def __str__(self):
        return f"(pair {self.first} {self.second})"


@dataclass(frozen=True)
class Fst:
    arg: object
    pos: tuple = _pos()

    def __str__(self):
        return f"(fst {self.arg})"


@dataclass(frozen=True)
class Snd:
    arg: object
    pos: tuple = _pos()

    def __str__(self):
        return f"(snd {self.arg})"


@dataclass(frozen=True)
class Refl:
    arg: object
    pos: tuple = _pos()

    def __str__(self):
        return f"(refl {self.arg})"


@dataclass(frozen=True)
class Lam:
    body: object
    pos: tuple = _pos()

    def __str__(self):
        return f"(lam {self.body})"


@dataclass(frozen=True)
class App:
    fun: object
    arg: object
    pos: tuple = _pos()

    def __str__(self):
        return f"(app {self.fun} {self.arg})"


@dataclass(frozen=True)
class Ann:
    """A term with its type, produced when a declared term is used."""

    term: object
    type: object
    pos: tuple = _pos()

    def __str__(self):
        return str(self.term)


# declarations; ``ctx`` is a telescope, a context name, or None before resolution
# and always a telescope (tuple of (name, type)) afterwards

@dataclass(frozen=True)
class CtxDecl:
    name: str
    tele: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class TypeDecl:
    name: str
    ctx: object
    type: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class TermDecl:
    name: str
    type: object
    ctx: object
    term: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class CheckDecl:
    lhs: object
    rhs: object
    type: object
    ctx: object
    pos: tuple = _pos()


def tokenize(source):
    out = []
    line, start = 1, 0
    for m in _TOKEN.finditer(source):
        kind = m.lastgroup
        col = m.start() - start + 1
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind == "bad":
            raise TTSyntaxError(line, col, "a token", m.group())
        elif kind in ("sym", "name"):
            out.append((m.group(), (line, col)))
    out.append(("<eof>", (line, len(source) - start + 1)))
    return out


class Parser:
    def __init__(self, source):
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def peek(self):
        return self.tokens[self.i][0]

    @property
    def pos(self):
        return self.tokens[self.i][1]

    def fail(self, expected):
        tok, (line, col) = self.tokens[self.i]
        raise TTSyntaxError(line, col, expected, tok)

    def take(self, want=None):
        tok, pos = self.tokens[self.i]
        if want is not None and tok != want:
            self.fail(repr(want))
        self.i += 1
        return tok, pos

    def ident(self):
        tok = self.peek
        if tok in KEYWORDS or not re.match(r"[A-Za-z_]", tok):
            self.fail("an identifier")
        return self.take()[0]

    def program(self):
        decls = []
        while self.peek != "<eof>":
            decls.append(self.decl())
        return decls

    def decl(self):
        kw, pos = self.tokens[self.i]
        if kw == "ctx":
            self.take()
            name = self.ident()
            self.take(":=")
            return CtxDecl(name, self.telescope(), pos)
        if kw == "type":
            self.take()
            name = self.ident()
            ctx = self.ctx_clause()
            self.take(":=")
            return TypeDecl(name, ctx, self.type(), pos)
        if kw == "term":
            self.take()
            name = self.ident()
            self.take(":")
            ty = self.type()
            ctx = self.ctx_clause()
            self.take(":=")
            return TermDecl(name, ty, ctx, self.term(), pos)
        if kw == "check":
            self.take()
            lhs = self.term()
            self.take("==")
            rhs = self.term()
            self.take(":")
            ty = self.type()
            return CheckDecl(lhs, rhs, ty, self.ctx_clause(), pos)
        self.fail("'ctx', 'type', 'term' or 'check'")

    def ctx_clause(self):
        if self.peek != "in":
            return None
        self.take()
        if self.peek == "(":
            return self.telescope()
        pos = self.pos
        return Name(self.ident(), pos)

    def telescope(self):
        self.take("(")
        entries = []
        if self.peek != ")":
            while True:
                x = self.ident()
                self.take(":")
                entries.append((x, self.type()))
                if self.peek != ",":
                    break
                self.take()
        self.take(")")
        return tuple(entries)

    def binder(self):
        self.take("(")
        x = self.ident()
        self.take(":")
        ty = self.type()
        self.take(")")
        return x, ty

    def type(self):
        tok, pos = self.tokens[self.i]
        if tok == "Unit":
            self.take()
            return Unit(pos)
        if tok == "Prod":
            self.take()
            self.take("(")
            a = self.type()
            self.take(",")
            b = self.type()
            self.take(")")
            return Prod(a, b, pos)
        if tok == "Eq":
            self.take()
            if self.peek == "(":
                self.take()
                t = self.term()
                if self.peek == ",":
                    self.take()
                    u = self.term()
                    self.take(")")
                    return Eq(t, u, pos)
                self.take(")")
                return Eq(t, self.aterm(), pos)
            t = self.aterm()
            return Eq(t, self.aterm(), pos)
        if tok in ("Sigma", "Pi"):
            self.take()
            x, a = self.binder()
            b = self.type()
            return (Sigma if tok == "Sigma" else Pi)(x, a, b, pos)
        if tok == "(":
            self.take()
            ty = self.type()
            self.take(")")
            return ty
        if tok not in KEYWORDS and re.match(r"[A-Za-z_]", tok):
            self.take()
            return Name(tok, pos)
        self.fail("a type")

    def term(self):
        tok, pos = self.tokens[self.i]
        if tok in ("pair", "app"):
            self.take()
            a = self.aterm()
            b = self.aterm()
            return (Pair if tok == "pair" else App)(a, b, pos)
        unary = {"fst": Fst, "snd": Snd, "refl": Refl, "lam": Lam}
        if tok in unary:
            self.take()
            return unary[tok](self.aterm(), pos)
        return self.aterm()

    def aterm(self):
        tok, pos = self.tokens[self.i]
        if tok == "tt":
            self.take()
            return TT(pos)
        if tok == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        if tok not in KEYWORDS and re.match(r"[A-Za-z_]", tok):
            self.take()
            return Name(tok, pos)
        self.fail("a term")


class Scope:
    """Declared contexts, types and terms, for resolving names."""

    def __init__(self):
        self.contexts = {}
        self.types = {}
        self.terms = {}

    def _fresh(self, name, pos):
        if name in self.contexts or name in self.types or name in self.terms:
            line, col = pos or (0, 0)
            raise TTSyntaxError(line, col, f"a fresh name instead of {name!r}")

    def decl(self, d):
        if isinstance(d, CtxDecl):
            self._fresh(d.name, d.pos)
            tele = self.telescope(d.tele)
            self.contexts[d.name] = tele
            return CtxDecl(d.name, tele, d.pos)
        if isinstance(d, TypeDecl):
            self._fresh(d.name, d.pos)
            tele = self.context(d.ctx)
            ty = self.type(d.type, tele)
            self.types[d.name] = (tele, ty)
            return TypeDecl(d.name, tele, ty, d.pos)
        if isinstance(d, TermDecl):
            self._fresh(d.name, d.pos)
            tele = self.context(d.ctx)
            ty = self.type(d.type, tele)
            tm = self.term(d.term, tele, ty)
            self.terms[d.name] = (tele, Ann(tm, ty, d.pos))
            return TermDecl(d.name, ty, tele, tm, d.pos)
        tele = self.context(d.ctx)
        ty = self.type(d.type, tele)
        return CheckDecl(self.term(d.lhs, tele, ty), self.term(d.rhs, tele, ty), ty, tele, d.pos)

    def context(self, ctx):
        if ctx is None:
            return ()
        if isinstance(ctx, Name):
            if ctx.name not in self.contexts:
                raise UnboundVariable(ctx.name, ctx.pos, "no such context")
            return self.contexts[ctx.name]
        return self.telescope(ctx)

    def telescope(self, entries):
        tele = ()
        for x, ty in entries:
            tele = tele + ((x, self.type(ty, tele)),)
        return tele

    @staticmethod
    def _usable(declared, tele):
        return tele[:len(declared)] == declared

    def type(self, ty, tele):
        if isinstance(ty, Name):
            if ty.name in self.types:
                declared, body = self.types[ty.name]
                if not self._usable(declared, tele):
                    raise UnboundVariable(ty.name, ty.pos, "declared in a context that does not prefix this one")
                return shift(body, len(declared), len(tele) - len(declared))
            if any(x == ty.name for x, _ in tele) or ty.name in self.terms:
                raise UnboundVariable(ty.name, ty.pos, "a term used where a type is expected")
            return Atom(ty.name, ty.pos)
        if isinstance(ty, Unit):
            return ty
        if isinstance(ty, Prod):
            return Prod(self.type(ty.left, tele), self.type(ty.right, tele), ty.pos)
        if isinstance(ty, Eq):
            return Eq(self.term(ty.lhs, tele), self.term(ty.rhs, tele), ty.pos)
        dom = self.type(ty.dom, tele)
        cod = self.type(ty.cod, tele + ((ty.var, dom),))
        return type(ty)(ty.var, dom, cod, ty.pos)

    def term(self, tm, tele, expected=None):
        """Resolve a term; ``expected`` is its type when known, which supplies
        the binder names of ``lam``."""
        if isinstance(tm, Name):
            for level in range(len(tele) - 1, -1, -1):
                if tele[level][0] == tm.name:
                    return Var(level, tm.name, tm.pos)
            if tm.name in self.terms:
                declared, body = self.terms[tm.name]
                if not self._usable(declared, tele):
                    raise UnboundVariable(tm.name, tm.pos, "declared in a context that does not prefix this one")
                by = len(tele) - len(declared)
                return Ann(shift(body.term, len(declared), by), shift(body.type, len(declared), by), tm.pos)
            raise UnboundVariable(tm.name, tm.pos)
        if isinstance(tm, TT):
            return tm
        if isinstance(tm, Pair):
            ea = eb = None
            if isinstance(expected, Prod):
                ea, eb = expected.left, expected.right
            elif isinstance(expected, Sigma):
                ea, eb = expected.dom, expected.cod
            return Pair(self.term(tm.first, tele, ea), self.term(tm.second, tele, eb), tm.pos)
        if isinstance(tm, App):
            return App(self.term(tm.fun, tele), self.term(tm.arg, tele), tm.pos)
        if isinstance(tm, Lam):
            # the binder is named by the expected Pi type; without one the body's
            # extra variable cannot be referred to and checking will reject it
            if isinstance(expected, Pi):
                inner = tele + ((expected.var, expected.dom),)
                return Lam(self.term(tm.body, inner, expected.cod), tm.pos)
            return Lam(self.term(tm.body, tele + (("", None),)), tm.pos)
        return type(tm)(self.term(tm.arg, tele), tm.pos)


class Program(list):
    """Resolved declarations, with the scope needed to resolve further judgments."""

    def __init__(self, decls, scope):
        super().__init__(decls)
        self.scope = scope


def parse(source, scope=None):
    """Parse and resolve a source file into a :class:`Program`."""
    scope = scope or Scope()
    raw = Parser(source).program()
    return Program([scope.decl(d) for d in raw], scope)


def parse_judgment(source, scope):
    """Parse a single ``check`` judgment against an existing scope."""
    raw = Parser(source).program()
    if len(raw) != 1 or not isinstance(raw[0], CheckDecl):
        raise TTSyntaxError(1, 1, "exactly one 'check' judgment")
    return scope.decl(raw[0])


# operations on resolved syntax


def _map_vars(expr, on_var):
    """Rebuild ``expr``, replacing each ``Var`` by ``on_var(var, depth)``; depth
    counts the binders crossed on the way down."""
    def go(e, d):
        if isinstance(e, Var):
            return on_var(e, d)
        if isinstance(e, (Unit, Atom, TT)):
            return e
        if isinstance(e, Prod):
            return Prod(go(e.left, d), go(e.right, d), e.pos)
        if isinstance(e, Eq):
            return Eq(go(e.lhs, d), go(e.rhs, d), e.pos)
        if isinstance(e, (Sigma, Pi)):
            return type(e)(e.var, go(e.dom, d), go(e.cod, d + 1), e.pos)
        if isinstance(e, Pair):
            return Pair(go(e.first, d), go(e.second, d), e.pos)
        if isinstance(e, App):
            return App(go(e.fun, d), go(e.arg, d), e.pos)
        if isinstance(e, Lam):
            return Lam(go(e.body, d + 1), e.pos)
        if isinstance(e, Ann):
            return Ann(go(e.term, d), go(e.type, d), e.pos)
        return type(e)(go(e.arg, d), e.pos)
    return go(expr, 0)


def shift(expr, length, by):
    """Move ``expr`` from a context with ``length`` entries to one with
    ``length + by`` entries extending it."""
    if by == 0:
        return expr
    return _map_vars(expr, lambda v, d: Var(v.level + by, v.name, v.pos) if v.level >= length else v)


def subst_top(expr, level, value):
    """Replace variable ``level`` (the last one in scope) by ``value`` and drop it.

    ``value`` lives in the context of the first ``level`` variables."""
    def on_var(v, d):
        if v.level == level:
            return shift(value, level, d)
        return Var(v.level - 1, v.name, v.pos) if v.level > level else v
    return _map_vars(expr, on_var)
