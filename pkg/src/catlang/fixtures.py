"""Small named categories used by the tests, the demos and the CLI."""

from functools import lru_cache
from itertools import product

from .compcat import assemble_compcat
from .displayed import arrow_displayed, rename_displayed
from .fincat import FinCat, poset


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def divisor_poset(n, name=None):
    ds = divisors(n)
    return poset(ds, [(a, b) for a in ds for b in ds if b % a == 0], name=name or f"Div{n}")


@lru_cache(maxsize=None)
def one():
    return poset(["*"], [], name="One")


@lru_cache(maxsize=None)
def two():
    return poset([0, 1], [(0, 1)], name="Two")


@lru_cache(maxsize=None)
def div6():
    return divisor_poset(6)


@lru_cache(maxsize=None)
def div60():
    return divisor_poset(60)


@lru_cache(maxsize=None)
def v_shape():
    """``a <= c >= b`` with no meet of ``a`` and ``b``."""
    return poset(["a", "b", "c"], [("a", "c"), ("b", "c")], name="V")


@lru_cache(maxsize=None)
def m3():
    """The diamond lattice: three incomparable atoms between a bottom and a top."""
    atoms = ["a", "b", "c"]
    return poset(["0", *atoms, "1"], [("0", x) for x in atoms] + [(x, "1") for x in atoms], name="M3")


@lru_cache(maxsize=None)
def cube():
    """Subsets of ``{a, b, c}`` under inclusion; the empty set is named ``0``."""
    subsets = ["".join(s) for s in product(*[("", x) for x in "abc"])]
    names = [s or "0" for s in subsets]
    leq = [(n1, n2) for s1, n1 in zip(subsets, names) for s2, n2 in zip(subsets, names)
           if set(s1) <= set(s2)]
    return poset(names, leq, name="Cube")


@lru_cache(maxsize=None)
def walking_iso():
    return FinCat.build(["x", "y"], [("i", "x", "y"), ("j", "y", "x")],
                        [("i", "j", "id_x"), ("j", "i", "id_y")], name="Iso")


def function_name(n, m, values):
    return f"f{n}_{m}_" + "".join(str(v) for v in values)


def finset_presentation(max_size=4):
    """All functions between the sets ``0 .. max_size`` as a raw presentation."""
    sizes = range(max_size + 1)
    morphisms, composition, identities = [], [], {}
    funcs = {(n, m): list(product(range(m), repeat=n)) for n in sizes for m in sizes}
    for (n, m), fs in funcs.items():
        for f in fs:
            morphisms.append((function_name(n, m, f), str(n), str(m)))
    for n in sizes:
        identities[str(n)] = function_name(n, n, tuple(range(n)))
    for (n, m), fs in funcs.items():
        for k in sizes:
            for f in fs:
                for g in funcs[m, k]:
                    h = tuple(g[v] for v in f)
                    composition.append((function_name(n, m, f), function_name(m, k, g),
                                        function_name(n, k, h)))
    return [str(n) for n in sizes], morphisms, composition, identities


@lru_cache(maxsize=None)
def finset(max_size=4):
    objects, morphisms, composition, identities = finset_presentation(max_size)
    return FinCat.build(objects, morphisms, composition, identities=identities,
                        name=f"FinSet<={max_size}")


def relabeled_compcat(base):
    """A DFL comprehension category over ``base`` whose types are a renamed copy
    of the arrow category, so that comprehension is not literally the identity."""
    copy, iso = rename_displayed(arrow_displayed(base), lambda a: f"T[{a}]", lambda m: f"t[{m}]")
    return assemble_compcat(copy, iso, name=f"Relabeled({base.name})")


POSETS = {"One": one, "Two": two, "Div6": div6, "Div60": div60, "V": v_shape, "M3": m3, "Cube": cube}
FINLIM = ("One", "Two", "Div6", "Div60", "M3", "Cube")
DISTRIBUTIVE = ("One", "Two", "Div6", "Div60", "Cube")


def by_name(name):
    table = {**POSETS, "Iso": walking_iso, "FinSet": finset}
    return table[name]()
