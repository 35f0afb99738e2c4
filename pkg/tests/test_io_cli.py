import io as stdio
import json
import os

import pytest

from catlang import fixtures as fx
from catlang import io
from catlang.cli import FAIL, INVALID, OK, UNSURE, run
from catlang.compcat import self_indexing
from catlang.displayed import arrow_displayed
from catlang.fincat import same_presentation

from conftest import CORPUS, DATA


def data(name):
    return os.path.join(DATA, name)


def cli(*argv):
    out = stdio.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


# formats


@pytest.mark.parametrize("make", [fx.div6, fx.walking_iso, fx.m3, lambda: fx.finset(2)])
def test_category_roundtrip(make):
    c = make()
    back = io.load_category(json.loads(io.dumps(io.dump_category(c))))
    assert same_presentation(back, c)


def test_category_file_forms_agree():
    assert same_presentation(io.load_category(data("div6.json")), fx.div6())
    assert same_presentation(io.load_category(data("cube.json")), fx.cube())
    assert io.load_category(data("div60.json")) is not None


def test_bad_inputs():
    with pytest.raises(io.InputError):
        io.load_category(data("missing.json"))
    with pytest.raises(io.InputError):
        io.load_category({"fixture": "Nope"})
    with pytest.raises(io.InputError):
        io.load_category([1, 2])


def test_functor_and_displayed_roundtrip():
    fun = io.load_functor(data("div6_to_two.json"))
    again = io.load_functor(json.loads(io.dumps(io.dump_functor(fun))) | {
        "source": io.dump_category(fun.source), "target": io.dump_category(fun.target)})
    assert again.on_objects == fun.on_objects
    disp = arrow_displayed(fx.two())
    back = io.load_displayed(json.loads(io.dumps(io.dump_displayed(disp))))
    assert sorted(back.all_dobjects) == sorted(disp.all_dobjects)


def test_compcat_bundles():
    k = io.load_compcat(data("h_div6.json"))
    assert k.terminal == "6" and k.full
    rel = io.load_compcat(data("relabeled_two.json"))
    assert rel.chi("T[le_0_1]") == "le_0_1"
    back = io.load_compcat(json.loads(io.dumps(io.dump_compcat(rel))) | {
        "base": io.dump_category(rel.base)})
    assert back.chi("T[le_0_1]") == "le_0_1"
    bare = io.load_compcat(data("two.json"))
    assert bare.full and bare.terminal == "1"
    assert sorted(bare.types.all_dobjects) == sorted(self_indexing(fx.two()).types.all_dobjects)


# command line


def test_validate_and_exit_codes():
    assert cli("cat", "validate", data("div6.json"))[0] == OK
    assert cli("cat", "validate", data("broken_missing_composite.json"))[0] == INVALID
    assert cli("cat", "validate", data("missing.json"))[0] == INVALID
    assert cli("cat", "frobnicate", data("div6.json"))[0] == INVALID


def test_classify_exit_codes():
    code, out = cli("classify", data("div6.json"))
    assert code == OK and "Σ, Π" in out
    assert cli("classify", data("v_shape.json"))[0] == FAIL
    code, out = cli("classify", data("one.json"), "--json")
    assert code == OK
    assert json.loads(out)["report"]["strongest"] == "topos_nno"


def test_bound_gives_exit_three(monkeypatch):
    assert cli("prop", "check", "--property", "exact", "--bound", "50", data("div60.json"))[0] == UNSURE
    monkeypatch.setenv("CATLANG_BOUND", "50")
    assert cli("prop", "check", "--property", "exact", data("div60.json"))[0] == UNSURE
    monkeypatch.setenv("CATLANG_BOUND", "zero")
    assert cli("cat", "validate", data("div6.json"))[0] == INVALID


def test_adjoint_search_bound():
    code, out = cli("functor", "adjoint", data("two_to_div6.json"), "--json")
    assert code in (OK, FAIL)
    assert json.loads(out)["command"] == "functor adjoint"


def test_json_is_deterministic(tmp_path):
    report = tmp_path / "r.json"
    first = cli("compcat", "dfl", data("h_div6.json"), "--json", "--emit-report", str(report))
    second = cli("compcat", "dfl", data("h_div6.json"), "--json")
    assert first == second
    assert first[0] == OK
    assert json.loads(report.read_text()) == json.loads(first[1])


def test_roundtrip_and_zeta_commands():
    assert cli("biequiv", "roundtrip", data("div6.json"))[0] == OK
    assert cli("biequiv", "zeta", data("relabeled_two.json"))[0] == OK
    assert cli("compcat", "eso", data("h_div6.json"))[0] == OK


def test_tt_check():
    files = [os.path.join(CORPUS, f) for f in ("unit.tt", "atoms.tt")]
    code, out = cli("tt", "check", "--model", data("div6.json"), "--assign", "X=le_2_6", *files, "--json")
    assert code == OK
    report = json.loads(out)["report"]
    assert len(report["files"]) == 2
    for r in report["files"].values():
        assert r["ok"] and r["comparisons"] > 0
        assert r["eq_reflection_failures"] == 0 and r["comparison_failures"] == 0


def test_tt_errors(tmp_path):
    bad = tmp_path / "bad.tt"
    bad.write_text("term p : Unit := pair tt tt\n")
    assert cli("tt", "check", "--model", data("div6.json"), str(bad))[0] == FAIL
    bad.write_text("term p : Unit := (tt\n")
    assert cli("tt", "check", "--model", data("div6.json"), str(bad))[0] == INVALID
    atoms = os.path.join(CORPUS, "atoms.tt")
    assert cli("tt", "check", "--model", data("div6.json"), atoms)[0] == INVALID
