import glob
import os

import pytest
from hypothesis import given, settings, strategies as st

from catlang import fixtures as fx
from catlang import ttlang
from catlang.compcat import Term, self_indexing
from catlang.ttlang.interp import Interpreter
from catlang.ttlang.syntax import Ann, Atom, Eq, Lam, Pi, Scope, Sigma, Var, shift, subst_top

from conftest import CORPUS

ASSIGN = {"Div6": {"X": "le_2_6"}, "Two": {"X": "le_0_1"}}
FILES = sorted(glob.glob(os.path.join(CORPUS, "*.tt")))


def run(source, make=fx.div6, assignment=None):
    return ttlang.interpret(ttlang.parse(source, Scope()), self_indexing(make()), assignment)


# parsing and resolution


def test_syntax_error_position():
    with pytest.raises(ttlang.SyntaxError) as info:
        ttlang.parse("term a : Unit := tt\nterm b : Unit := (tt\n")
    assert (info.value.line, info.value.col) == (3, 1)
    with pytest.raises(ttlang.SyntaxError) as info:
        ttlang.parse("term a : Unit = tt")
    assert (info.value.line, info.value.col) == (1, 15)


def test_comments_and_both_eq_forms():
    prog = ttlang.parse("-- a comment\nctx G := (x : Unit)\ntype A in G := Eq x tt\ntype B in G := Eq(x, tt)\n")
    assert prog[1].type == prog[2].type


def test_unbound_names():
    with pytest.raises(ttlang.UnboundVariable):
        ttlang.parse("term a : Unit := y")
    with pytest.raises(ttlang.UnboundVariable):
        ttlang.parse("term a : Unit in Nowhere := tt")
    with pytest.raises(ttlang.SyntaxError):
        ttlang.parse("term a : Unit := tt\nterm a : Unit := tt")


def test_lam_binder_named_by_expected_type():
    prog = ttlang.parse("term f : Pi (z : Unit) Unit := lam z")
    assert prog[0].term == Lam(Var(0, "z"))


def test_shift_and_substitution():
    # Sigma (y : Unit) Eq(x, y) in a context of one variable x
    ty = Sigma("y", Atom("U"), Eq(Var(0, "x"), Var(1, "y")))
    moved = shift(ty, 1, 2)
    assert moved.cod == Eq(Var(0, "x"), Var(3, "y"))
    # in context (x, w), replace w by x inside Pi (z : U) Eq(w, z)
    inner = Pi("z", Atom("U"), Eq(Var(1, "w"), Var(2, "z")))
    assert subst_top(inner, 1, Var(0, "x")) == Pi("z", Atom("U"), Eq(Var(0, "x"), Var(1, "z")))


def test_macro_used_in_longer_context():
    interp = run("ctx G := (x : Unit)\ntype S in G := Sigma (y : Unit) (Eq x y)\n"
                 "ctx H := (x : Unit, u : Unit, s : S)\nterm a : Eq(x, fst s) in H := snd s\n")
    assert interp.terms["a"].context == "6"


# interpretation errors


def test_pair_at_unit_is_a_type_mismatch():
    with pytest.raises(ttlang.TypeError) as info:
        run("term p : Unit := pair tt tt")
    assert info.value.kind == ttlang.TYPE_MISMATCH
    assert info.value.pos == (1, 18)


def test_lam_needs_a_pi_type():
    with pytest.raises(ttlang.TypeError) as info:
        run("term k : Unit := app (lam tt) tt")
    assert info.value.kind == ttlang.TYPE_MISMATCH


def test_pi_unavailable_in_m3():
    with pytest.raises(ttlang.TypeError) as info:
        run("term k : Pi (x : Unit) Unit := lam tt", make=fx.m3)
    assert info.value.kind == ttlang.FORMER_UNAVAILABLE


def test_atoms_need_assignments():
    with pytest.raises(ttlang.UnboundVariable):
        run("ctx D := (a : X)")
    with pytest.raises(ttlang.TypeError):
        run("ctx D := (a : X)", assignment={"X": "le_1_2"})


def test_not_a_section():
    k = self_indexing(fx.div6())
    it = Interpreter(k)
    with pytest.raises(ttlang.TypeError) as info:
        it.section(Term("6", "le_2_6", "le_2_6"), None)
    assert info.value.kind == ttlang.NOT_A_SECTION


# judgments


def test_check_equal_from_source():
    interp = run("ctx G := (x : Unit, y : Unit)\n")
    k = interp.k
    assert ttlang.check_equal(interp, k, "check x == y : Unit in G")
    assert ttlang.check_equal(interp, k, "check pair x y == pair y x : Prod(Unit, Unit) in G")


def test_atomic_variables_collapse_only_in_thin_models():
    src = "ctx D := (a : X, b : X)\ncheck a == b : X in D\n"
    assert run(src, assignment={"X": "le_2_6"}).ok
    iso = fx.walking_iso()
    interp = ttlang.interpret(ttlang.parse(src, Scope()), self_indexing(iso), {"X": "j"})
    assert interp.ok
    assert all(c.inverse is not None for c in interp.comparisons)


@pytest.mark.parametrize("model", ["Div6", "Two"])
@pytest.mark.parametrize("path", FILES, ids=os.path.basename)
def test_corpus_file(path, model):
    with open(path) as fh:
        prog = ttlang.parse(fh.read(), Scope())
    interp = ttlang.interpret(prog, self_indexing(fx.POSETS[model]()), ASSIGN[model])
    assert interp.ok
    assert ttlang.eq_reflection_failures(interp) == []
    assert ttlang.comparison_failures(interp) == []


def test_corpus_size():
    assert len(FILES) >= 20


# generated programs


def typed_terms(depth):
    """Pairs of a closed type and its evident inhabitant, as source text."""
    if depth == 0:
        return st.just(("Unit", "tt"))
    sub = typed_terms(depth - 1)
    return st.one_of(
        st.just(("Unit", "tt")),
        st.builds(lambda a, b: (f"Prod({a[0]}, {b[0]})", f"pair ({a[1]}) ({b[1]})"), sub, sub),
        st.builds(lambda a, b: (f"Sigma (v{depth} : {a[0]}) ({b[0]})", f"pair ({a[1]}) ({b[1]})"), sub, sub),
    )


@settings(max_examples=40, deadline=None)
@given(typed_terms(3), st.sampled_from(["Div6", "Two"]))
def test_generated_terms_interpret_and_are_reflexive(pair, model):
    ty, t = pair
    src = f"term a : {ty} := {t}\ncheck a == {t} : {ty}\nterm e : Eq(a, a) := refl a\n"
    interp = ttlang.interpret(ttlang.parse(src, Scope()), self_indexing(fx.POSETS[model]()))
    assert interp.ok
    assert ttlang.eq_reflection_failures(interp) == []
    assert ttlang.comparison_failures(interp) == []


def test_annotations_keep_their_type():
    prog = ttlang.parse("term f : Pi (z : Unit) Unit := lam tt\nterm g : Unit := app f tt\n")
    assert isinstance(prog[1].term.fun, Ann)
