"""
Interpreting a small dependent type theory
==========================================

Programs in the ttlang surface syntax are checked bidirectionally and
interpreted in a comprehension category.
"""

from catlang import fixtures as fx
from catlang import ttlang
from catlang.compcat import self_indexing
from catlang.ttlang.syntax import Scope

source = """
ctx G := (x : Unit, y : Unit)
type P in G := Sigma (z : Unit) (Eq x z)
term p : P in G := pair x (refl x)
check fst p == x : Unit in G
term f : Pi (a : Unit) Prod(Unit, Unit) := lam (pair a a)
term e : Eq(x, y) in G := refl x
"""

program = ttlang.parse(source, Scope())
for decl in program:
    print(type(decl).__name__, getattr(decl, "name", ""))

# in Div6 every type is an arrow into its context and terms are sections
interp = ttlang.interpret(program, self_indexing(fx.div6()))
for name, term in interp.terms.items():
    print(name, "in context", term.context, ": type", term.type, "section", term.section)

# extensional equality: an inhabited Eq makes the two sides judgmentally equal
print("eq reflection failures:", ttlang.eq_reflection_failures(interp))
print("substitution comparisons:", len(interp.comparisons), "all invertible:",
      not ttlang.comparison_failures(interp))

# type errors carry a kind and a position
try:
    ttlang.interpret(ttlang.parse("term q : Unit := pair tt tt", Scope()), self_indexing(fx.two()))
except ttlang.TypeError as exc:
    print(exc.kind, exc.pos)

# Pi is optional: M3 is not locally cartesian closed
try:
    ttlang.interpret(ttlang.parse("term k : Pi (a : Unit) Unit := lam tt", Scope()), self_indexing(fx.m3()))
except ttlang.TypeError as exc:
    print(exc.kind)

# atomic types come from an assignment of closed types in the model
atoms = ttlang.parse("ctx D := (a : X, b : X)\ncheck a == b : X in D\n", Scope())
print(ttlang.interpret(atoms, self_indexing(fx.div6()), {"X": "le_2_6"}).ok)
