import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from catlang import fixtures as fx  # noqa: E402
from oracles import poset_presentation  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "demos", "data")
CORPUS = os.path.join(ROOT, "demos", "tt")


def _divides(n):
    ds = [d for d in range(1, n + 1) if n % d == 0]
    return ds, [(a, b) for a in ds for b in ds if b % a == 0]


def _cube():
    subsets = ["0", "c", "b", "bc", "a", "ac", "ab", "abc"]
    leq = [(s, t) for s in subsets for t in subsets if s == "0" or set(s) <= set(t)]
    return subsets, leq


# element lists and generating relations, written out independently of the fixtures module
POSET_DATA = {
    "One": (["*"], []),
    "Two": (["0", "1"], [("0", "1")]),
    "Div6": _divides(6),
    "Div60": _divides(60),
    "V": (["a", "b", "c"], [("a", "c"), ("b", "c")]),
    "M3": (["0", "a", "b", "c", "1"], [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]),
    "Cube": _cube(),
}


def poset_raw(name):
    """``(objects, morphisms, composition, relation)`` for a poset fixture."""
    elements, leq = POSET_DATA[name]
    return poset_presentation(elements, leq)


ISO_RAW = (["x", "y"], [("i", "x", "y"), ("j", "y", "x")], [("i", "j", "id_x"), ("j", "i", "id_y")])


@pytest.fixture(params=sorted(fx.POSETS))
def poset_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.line(n))
