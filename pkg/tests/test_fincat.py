import pytest
from hypothesis import given, settings, strategies as st

from catlang import fixtures as fx
from catlang.fincat import (CategoryError, DanglingEndpoint, DuplicateName, FinCat, IllTypedComposite,
                            MissingComposite, NonAssociative, UnitLawViolation, is_gaunt, opposite,
                            same_presentation, slice_category, slice_objects, validate_category)

from conftest import ISO_RAW, POSET_DATA, poset_raw
from oracles import finset_semantic_errors, naive_is_category


def library_accepts(objects, morphisms, composition, identities=None):
    try:
        FinCat.build(objects, morphisms, composition, identities=identities)
    except CategoryError:
        return False
    return True


@pytest.mark.parametrize("name", sorted(POSET_DATA))
def test_poset_fixture_matches_naive_checker(name):
    objects, morphisms, composition, _ = poset_raw(name)
    assert naive_is_category(objects, morphisms, composition) == (True, "")
    cat = FinCat.build(objects, morphisms, composition)
    assert same_presentation(cat, fx.POSETS[name]())


def test_walking_iso_matches_naive_checker():
    assert naive_is_category(*ISO_RAW)[0]
    assert same_presentation(FinCat.build(*ISO_RAW), fx.walking_iso())


def test_finset_agrees_with_function_composition():
    objects, morphisms, composition, identities = fx.finset_presentation(4)
    assert len(morphisms) == 499
    assert finset_semantic_errors(composition) == []
    cat = fx.finset(4)
    assert len(cat.morphisms) == 499
    for x in cat.objects:
        assert cat.identity[x] == identities[x]


def test_small_finset_matches_naive_checker():
    objects, morphisms, composition, identities = fx.finset_presentation(3)
    assert naive_is_category(objects, morphisms, composition, identities)[0]
    assert library_accepts(objects, morphisms, composition, identities)


# mutations: the library must reject exactly what the naive checker rejects

BASES = {
    "Two": lambda: poset_raw("Two")[:3] + (None,),
    "Div6": lambda: poset_raw("Div6")[:3] + (None,),
    "M3": lambda: poset_raw("M3")[:3] + (None,),
    "Iso": lambda: ISO_RAW + (None,),
    "FinSet2": lambda: fx.finset_presentation(2),
}


@st.composite
def mutated(draw):
    objects, morphisms, composition, identities = BASES[draw(st.sampled_from(sorted(BASES)))]()
    objects, morphisms, composition = list(objects), list(morphisms), list(composition)
    kind = draw(st.sampled_from(["drop", "redirect", "duplicate", "dangle", "extra", "none"]))
    if kind == "drop" and composition:
        composition.pop(draw(st.integers(0, len(composition) - 1)))
    elif kind == "redirect" and composition:
        i = draw(st.integers(0, len(composition) - 1))
        f, g, _ = composition[i]
        names = [m[0] for m in morphisms] + [f"id_{x}" for x in objects]
        composition[i] = (f, g, draw(st.sampled_from(names)))
    elif kind == "duplicate" and morphisms:
        morphisms.append(draw(st.sampled_from(morphisms)))
    elif kind == "dangle":
        morphisms.append(("stray", objects[0], "nowhere"))
    elif kind == "extra":
        a, b = draw(st.sampled_from(objects)), draw(st.sampled_from(objects))
        morphisms.append(("extra", a, b))
    return objects, morphisms, composition, identities


@settings(max_examples=150, deadline=None)
@given(mutated())
def test_mutations_agree_with_naive_checker(pres):
    expected, _ = naive_is_category(*pres)
    assert library_accepts(*pres) == expected


def test_specific_errors():
    with pytest.raises(DuplicateName):
        FinCat.build(["x", "x"], [])
    with pytest.raises(DanglingEndpoint):
        FinCat.build(["x"], [("f", "x", "y")])
    with pytest.raises(MissingComposite):
        FinCat.build(["x", "y"], [("i", "x", "y"), ("j", "y", "x")], [("i", "j", "id_x")])
    with pytest.raises(IllTypedComposite):
        FinCat.build(["x", "y"], [("f", "x", "y")], [("f", "f", "f")])
    with pytest.raises(UnitLawViolation):
        FinCat.build(["x"], [("e", "x", "x")], [("id_x", "e", "id_x"), ("e", "e", "e")])
    # e;e = id and e;e;e must then be e: setting e;e = e with a second idempotent breaks associativity
    with pytest.raises(NonAssociative):
        FinCat.build(["x"], [("a", "x", "x"), ("b", "x", "x")],
                     [("a", "a", "a"), ("a", "b", "a"), ("b", "a", "b"), ("b", "b", "a")])


def test_nonassociative_witness_is_a_real_failure():
    pres = (["x"], [("a", "x", "x"), ("b", "x", "x")],
            [("a", "a", "a"), ("a", "b", "a"), ("b", "a", "b"), ("b", "b", "a")])
    assert naive_is_category(*pres) == (False, "associativity")
    with pytest.raises(NonAssociative) as info:
        FinCat.build(*pres)
    f, g, h = info.value.witness
    cat = FinCat(pres[0], {"id_x": ("x", "x"), "a": ("x", "x"), "b": ("x", "x")}, {"x": "id_x"},
                 {**{(p, q): r for p, q, r in pres[2]},
                  **{(m, "id_x"): m for m in ("id_x", "a", "b")},
                  **{("id_x", m): m for m in ("a", "b")}})
    assert cat.comp(cat.comp(f, g), h) != cat.comp(f, cat.comp(g, h))


def test_validate_category_json_forms():
    explicit = {"objects": ["x", "y"], "morphisms": [{"name": "f", "src": "x", "dst": "y"}],
                "composition": []}
    c = validate_category(explicit, name="arrow")
    assert c.morphisms == ("id_x", "id_y", "f")
    p = validate_category({"poset": {"elements": [1, 2, 3], "leq": [[1, 2], [2, 3]]}})
    assert p.hom("1", "3") == ("le_1_3",)


def test_opposite_is_an_involution(poset_name):
    c = fx.POSETS[poset_name]()
    op = opposite(c)
    assert opposite(op) is c
    for f in c.morphisms:
        assert op.ends(f) == tuple(reversed(c.ends(f)))


def test_slice_objects_and_size():
    c = fx.div6()
    # arrows into 6 are the four divisors
    assert len(slice_objects(c, "6")) == 4
    s = slice_category(c, "2")
    assert [c.src(f) for f in s.objects] == ["1", "2"]
    assert len(s.morphisms) == 3


def test_gaunt(poset_name):
    assert is_gaunt(fx.POSETS[poset_name]())


def test_walking_iso_not_gaunt():
    r = is_gaunt(fx.walking_iso())
    assert not r
    f, g = r.witness
    c = fx.walking_iso()
    assert not c.is_identity(f)
    assert c.comp(f, g) == c.identity[c.src(f)]
