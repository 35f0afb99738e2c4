import pytest
from hypothesis import assume, given, settings, strategies as st

from catlang import fixtures as fx
from catlang.biequiv import NotFinLim, finlim
from catlang.compcat import self_indexing
from catlang.fincat import poset
from catlang.localprops import (COUNTEREXAMPLE, INCONCLUSIVE, SIGNATURES, VERIFIED, Verdict,
                                check_functor_property, check_lccc, check_local_property,
                                check_property_closure, classify, combine, compcat_satisfies,
                                conjunction, counterexample, default_bound, extend_biequiv_check,
                                lookup, pullback_functor, registry, verified)
from catlang.typeformers import TypeFormerError, check_pi_types

from oracles import PosetOracle, heyting_exists, sub_count_divisors


def test_combine_prefers_counterexamples():
    inc = Verdict(INCONCLUSIVE, None, 10)
    assert combine({"a": verified(), "b": inc}).status == INCONCLUSIVE
    assert combine({"a": counterexample(1), "b": inc}).status == COUNTEREXAMPLE
    assert combine({"a": verified(), "b": verified()})
    assert not Verdict(INCONCLUSIVE)


def test_registry_contents():
    props = registry()
    assert set(props) == {"strict_initial", "stable_coproducts", "extensive", "regular", "exact",
                          "subobject_classifier", "nno_param", "nno_param_nondegenerate", "conj"}
    with pytest.raises(KeyError):
        lookup("compact")


def test_one_is_a_degenerate_topos_with_nno():
    rep = classify(fx.one())
    assert rep.strongest == "topos_nno"
    assert rep.signature == "O, 1, ×, =ext, Σ, Π, +, Quot, Ω, ℕ"
    assert check_local_property(fx.one(), "nno_param")
    assert check_local_property(fx.one(), "nno_param_nondegenerate").counterexample


@pytest.mark.parametrize("make,top,subs", [(fx.two, "1", 2), (fx.div6, "6", sub_count_divisors(6))])
def test_distributive_lattices_are_lccc_not_topos(make, top, subs):
    rep = classify(make())
    assert rep.strongest == "lccc"
    assert rep.signature == SIGNATURES["lccc"]
    omega = rep.flags["topos"].witness["subobject_classifier"]
    assert omega["object"] == top and omega["terminal"]
    assert omega["subobjects"] == subs
    assert omega["largest_hom_out"] < subs


def test_m3_is_not_lccc():
    v = check_lccc(fx.m3())
    assert v.counterexample
    assert v.witness["morphism"] == "le_a_1"


def test_walking_iso_is_equivalent_to_one():
    assert classify(fx.walking_iso()).strongest == "topos_nno"


def test_missing_limits_reported():
    rep = classify(fx.v_shape())
    assert rep.strongest is None and rep.signature == ""
    assert list(rep.flags)[0] == "finlim"


def test_bound_gives_inconclusive(monkeypatch):
    v = check_local_property(fx.div60(), "exact", bound=50)
    assert v.status == INCONCLUSIVE and v.bound == 50
    monkeypatch.setenv("CATLANG_BOUND", "40")
    assert default_bound() == 40
    assert check_local_property(fx.div60(), "exact").status == INCONCLUSIVE


def lattice_is_lccc_by_oracle(elements, rel):
    o = PosetOracle(elements, rel)
    for x in elements:
        down = o.down(x)
        if not heyting_exists(down, o.le, o.meet):
            return False
    return True


@st.composite
def finite_meet_semilattices(draw):
    n = draw(st.integers(1, 6))
    elements = [f"p{i}" for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.sampled_from(elements), st.sampled_from(elements)), max_size=10))
    # drop cycles so the order is antisymmetric
    pairs = [(a, b) for a, b in pairs if a < b]
    cat = poset(elements, pairs, name="L")
    try:
        finlim(cat)
    except NotFinLim:
        assume(False)
    return elements, cat


@settings(max_examples=40, deadline=None)
@given(finite_meet_semilattices())
def test_lccc_matches_heyting_oracle(data):
    elements, cat = data
    rel = {(a, b) for a in elements for b in elements if cat.hom(a, b)}
    expected = lattice_is_lccc_by_oracle(elements, rel)
    assert check_lccc(cat).verified == expected
    try:
        check_pi_types(self_indexing(cat))
        pi = True
    except TypeFormerError:
        pi = False
    assert pi == expected


@pytest.mark.parametrize("prop", ["strict_initial", "stable_coproducts", "nno_param"])
def test_closure_axioms_on_div6(prop):
    rep = check_property_closure(prop, fx.div6())
    assert rep.ok, rep.axioms


def test_closure_is_vacuous_when_property_fails():
    rep = check_property_closure("subobject_classifier", fx.div6())
    assert rep.axioms["slices"].witness == {"vacuous": COUNTEREXAMPLE}


def test_pullback_functor_is_a_property_preserving_map():
    c = finlim(fx.div6())
    fun = pullback_functor(c, "le_2_6")
    assert fun.ob("le_3_6") == "le_1_2"
    assert check_functor_property(fun, "strict_initial")


def test_fiberwise_and_transport():
    k = self_indexing(fx.div6())
    assert compcat_satisfies(k, "strict_initial")
    bad = compcat_satisfies(k, "subobject_classifier")
    assert set(bad.witness) == {"fiber 2", "fiber 3", "fiber 6"}
    assert extend_biequiv_check(fx.div6(), "strict_initial")
    assert extend_biequiv_check(fx.div6(), "stable_coproducts", k=fx.relabeled_compcat(fx.div6()))


def test_conjunction():
    both = conjunction("si_and_sc", lookup("strict_initial"), lookup("stable_coproducts"))
    assert check_local_property(fx.two(), both)
    assert not check_local_property(fx.m3(), both)


def test_statuses_are_strings():
    assert (VERIFIED, COUNTEREXAMPLE, INCONCLUSIVE) == ("Verified", "Counterexample", "InconclusiveAtBound")


def test_pentagon_is_not_lccc():
    elements = ["0", "a", "b", "c", "1"]
    cat = poset(elements, [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")], name="N5")
    rel = {(x, y) for x in elements for y in elements if cat.hom(x, y)}
    assert not lattice_is_lccc_by_oracle(elements, rel)
    assert check_lccc(cat).counterexample
