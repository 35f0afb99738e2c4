"""
Finite categories, their self-indexing and a classification
============================================================

A walk through the library on the divisor lattice of 6.
"""

from catlang import fixtures as fx
from catlang.biequiv import U_object, essential_preimage, roundtrip_check, zeta_component
from catlang.compcat import ctx_extend, self_indexing, terms
from catlang.displayed import arrow_displayed, find_cleaving
from catlang.fincat import is_gaunt, same_presentation
from catlang.limits import binary_product, find_limit, pullback
from catlang.localprops import check_local_property, classify
from catlang.typeformers import check_dfl, is_adjequiv_1cell

# divisors of 6 ordered by divisibility; morphisms are named le_a_b
div6 = fx.div6()
print(div6, sorted(div6.morphisms))

# products are gcds, pullbacks are meets of the feet
print("2 x 3 =", find_limit(div6, binary_product("2", "3")).apex)
print("pullback of 2 -> 6 <- 3 =", find_limit(div6, pullback("le_2_6", "le_3_6")).apex)

# the codomain fibration: every arrow into x is a display object over x
arr = arrow_displayed(div6)
cleaving = find_cleaving(arr)
print(len(cleaving.lifts), "chosen Cartesian lifts")

# the self-indexing is a comprehension category with the arrows as types
k = self_indexing(div6)
print(k, "terminal context:", k.terminal)
print("context extension of 6 by le_2_6:", ctx_extend(k, "6", "le_2_6"))
print("closed terms of le_2_6:", terms(k, "6", "le_2_6"))
print("closed terms of id_6:", terms(k, "6", "id_6"))

# it is democratic, full and has the finite-limit type formers
print(check_dfl(k).to_dict()["verdict"])

# every context morphism is, up to iso, a display map
e = essential_preimage(k, "le_1_3")
print("le_1_3 is the display map of", e.type, "up to", (e.forward, e.backward))

# going around the biequivalence gives back what we started with
print("U(H(Div6)) is Div6:", same_presentation(U_object(k).cat, div6))
print("round trip:", roundtrip_check(div6).ok)
print("zeta is an adjoint equivalence:", bool(is_adjequiv_1cell(zeta_component(k))))

# a model with renamed types is only equivalent, not equal
relabeled = fx.relabeled_compcat(fx.two())
print("relabeled zeta:", bool(is_adjequiv_1cell(zeta_component(relabeled))))

# classification: a distributive lattice is lccc, but 6 has four subobjects
# and only one arrow out, so there is no subobject classifier
report = classify(div6)
print(report.strongest, "|", report.signature)
print(report.flags["topos"].witness["subobject_classifier"]["reason"])
print("strict initial object:", check_local_property(div6, "strict_initial").status)

# M3 has all finite limits but fails distributivity
print("M3:", classify(fx.m3()).strongest)

# gauntness: posets have no non-identity isos, the walking iso does
print(bool(is_gaunt(div6)), is_gaunt(fx.walking_iso()).witness)
