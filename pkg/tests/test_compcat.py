import pytest

from catlang import fixtures as fx
from catlang.compcat import (NoTerminal, NotCartesian, NotOverIdentity, PreconditionError, Term,
                             assemble_compcat, compose_morphisms, ctx_extend, identity_morphism,
                             lift_square, pair_sub, self_indexing, subst_term, subst_type, terms,
                             var_term)
from catlang.displayed import DispCat, DispFunctor, arrow_displayed, identity_disp_functor
from catlang.fincat import identity_functor, poset


def test_self_indexing_is_full_with_top_as_terminal():
    k = self_indexing(fx.div6())
    assert k.full
    assert k.terminal == "6"
    assert self_indexing(fx.div6()) is k
    assert k.chi("le_2_6") == "le_2_6"


def test_no_terminal():
    base = poset(["a", "b"], [])
    with pytest.raises(NoTerminal):
        self_indexing(base)


def test_types_without_cleaving_are_rejected():
    base = fx.two()
    types = DispCat.build(base, {"0": ["a"], "1": ["b"]}, [])
    arr = arrow_displayed(base)
    chi = DispFunctor(identity_functor(base), types, arr, {"a": "id_0", "b": "id_1"},
                      {"id_a": arr.square("id_0", "id_0", "id_0", "id_0"),
                       "id_b": arr.square("id_1", "id_1", "id_1", "id_1")})
    with pytest.raises(NotCartesian):
        assemble_compcat(types, chi)


def test_comprehension_must_target_the_base_arrows():
    arr = arrow_displayed(fx.two())
    other = arrow_displayed(fx.div6())
    with pytest.raises(NotOverIdentity):
        assemble_compcat(arr, identity_disp_functor(other))


def test_relabeled_compcat_is_full_but_not_identity():
    k = fx.relabeled_compcat(fx.two())
    assert k.full
    assert k.types is not arrow_displayed(fx.two())
    assert k.chi("T[le_0_1]") == "le_0_1"


@pytest.mark.parametrize("make", [fx.two, fx.div6, fx.cube])
def test_terms_are_sections_counted_by_order(make):
    base = make()
    k = self_indexing(base)
    for gamma in base.objects:
        for a in k.types.dobjects[gamma]:
            # a section of a -> gamma exists exactly when a is an isomorphism
            expected = 1 if base.src(a) == gamma else 0
            assert len(terms(k, gamma, a)) == expected


def test_variable_and_substitution_laws():
    base = fx.div6()
    k = self_indexing(base)
    for gamma in base.objects:
        for a in k.types.dobjects[gamma]:
            ext, p = ctx_extend(k, gamma, a)
            v = var_term(k, gamma, a)
            assert v.context == ext
            assert base.comp(v.section, k.chi(v.type)) == base.identity[ext]
            for t in terms(k, gamma, a):
                assert subst_term(k, base.identity[gamma], t).section == t.section
    # (s ; s2)* t = s* (s2* t) in a poset, where reindexing is unique
    s, s2 = "le_1_2", "le_2_6"
    t = terms(k, "6", "id_6")[0]
    lhs = subst_term(k, base.comp(s, s2), t)
    rhs = subst_term(k, s, subst_term(k, s2, t))
    assert lhs == rhs


def test_lift_squares_and_pairing():
    base = fx.div6()
    k = self_indexing(base)
    w = lift_square(k, "le_2_6", "le_3_6")
    assert w.apex == "1"
    b, m = subst_type(k, "le_2_6", "le_3_6")
    assert b == "le_1_2"
    with pytest.raises(PreconditionError):
        subst_type(k, "le_2_6", "le_1_2")
    t = Term("1", *subst_type(k, "le_1_6", "id_6")[:1], section="id_1")
    assert pair_sub(k, "le_1_6", "id_6", t) == "le_1_6"


def test_identity_morphism_composes():
    k = self_indexing(fx.two())
    m = identity_morphism(k)
    mm = compose_morphisms(m, m)
    assert mm.functor.on_objects == m.functor.on_objects
