import pytest
from hypothesis import assume, given, settings, strategies as st

from catlang import fixtures as fx
from catlang.fincat import FinCat, FinFunctor, FunctorError, identity_functor, poset
from catlang.functors import Adjunction, check_equivalence, check_functor, find_adjoint
from catlang.results import NotFound, SearchBoundExceeded

from oracles import left_adjoint_of_monotone, right_adjoint_of_monotone


def thin_functor(c, d, omap):
    mmap = {f: d.hom(omap[c.src(f)], omap[c.dst(f)])[0] for f in c.morphisms}
    return FinFunctor(c, d, omap, mmap)


def constant(c, d, y):
    return FinFunctor(c, d, {x: y for x in c.objects}, {f: d.identity[y] for f in c.morphisms})


def is_monotone(c, d, omap):
    return all(d.hom(omap[c.src(f)], omap[c.dst(f)]) for f in c.morphisms)


PAIRS = [("Two", "Div6"), ("Div6", "Two"), ("Div6", "Cube"), ("M3", "Two"), ("Two", "M3"), ("Div6", "M3")]


@st.composite
def monotone_maps(draw):
    a, b = draw(st.sampled_from(PAIRS))
    c, d = fx.POSETS[a](), fx.POSETS[b]()
    omap = {x: draw(st.sampled_from(d.objects)) for x in c.objects}
    assume(is_monotone(c, d, omap))
    return c, d, omap


@settings(max_examples=80, deadline=None)
@given(monotone_maps())
def test_galois_connections_match_oracle(data):
    c, d, omap = data
    fun = thin_functor(c, d, omap)

    def le_c(x, y):
        return bool(c.hom(x, y))

    def le_d(x, y):
        return bool(d.hom(x, y))

    for side, oracle in (("right", right_adjoint_of_monotone), ("left", left_adjoint_of_monotone)):
        want = oracle(omap, c.objects, d.objects, le_c, le_d)
        got = find_adjoint(fun, side=side)
        if want is None:
            assert isinstance(got, NotFound)
        else:
            other = got.right if side == "right" else got.left
            assert {y: other.ob(y) for y in d.objects} == want


def test_non_functorial_map_rejected():
    c = fx.two()
    with pytest.raises(FunctorError):
        FinFunctor(c, c, {"0": "1", "1": "0"}, {"id_0": "id_1", "id_1": "id_0", "le_0_1": "le_0_1"})


def test_constant_functor_is_faithful_not_full():
    rep = check_functor(constant(fx.div6(), fx.one(), "*"))
    assert rep.functorial and rep.faithful and rep.essentially_surjective
    assert not rep.full
    assert rep.witnesses["full"] == ("2", "1", "id_*")


def test_inclusion_preserves_limits():
    fun = thin_functor(fx.two(), fx.div6(), {"0": "1", "1": "6"})
    rep = check_functor(fun)
    assert all(rep.preserves.values())
    assert rep.full and rep.faithful and not rep.essentially_surjective


def test_map_onto_an_atom_loses_the_terminal():
    # the terminal object 1 of Two lands on an atom, which is not terminal in M3
    fun = thin_functor(fx.two(), fx.m3(), {"0": "a", "1": "a"})
    rep = check_functor(fun)
    assert not rep.preserves["terminal"]


def test_universal_arrow_search_on_non_thin_categories():
    iso, one = fx.walking_iso(), fx.one()
    adj = find_adjoint(constant(iso, one, "*"), side="right")
    assert isinstance(adj, Adjunction)
    assert adj.right.ob("*") == "x"
    assert check_equivalence(constant(iso, one, "*"))
    fin = fx.finset(2)
    bang = constant(fin, one, "*")
    assert find_adjoint(bang, side="right").right.ob("*") == "1"
    assert find_adjoint(bang, side="left").left.ob("*") == "0"


def test_adjoint_search_bound():
    fin = fx.finset(2)
    with pytest.raises(SearchBoundExceeded):
        find_adjoint(identity_functor(fin), max_morphisms=3)


def test_equivalence_quasi_inverse_and_failure():
    iso, one = fx.walking_iso(), fx.one()
    w = check_equivalence(FinFunctor(one, iso, {"*": "y"}, {"id_*": "id_y"}))
    assert w
    assert w.inverse.ob("x") == "*"
    assert w.unit.is_iso() and w.counit.is_iso()
    bad = check_equivalence(thin_functor(fx.two(), fx.div6(), {"0": "1", "1": "6"}))
    assert not bad and bad.reason == "not essentially surjective"


def test_poset_adjoint_is_inverse_on_isomorphic_orders():
    c = poset(["a", "b"], [("a", "b")])
    d = FinCat.build(["u", "v"], [("le", "u", "v")])
    fun = FinFunctor(c, d, {"a": "u", "b": "v"}, {"id_a": "id_u", "id_b": "id_v", "le_a_b": "le"})
    adj = find_adjoint(fun)
    assert adj.right.ob("u") == "a" and adj.right.ob("v") == "b"
