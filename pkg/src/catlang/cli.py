"""The ``catlang`` command line.

Exit codes: 0 when every requested check passes, 1 when a check fails with a
counterexample, 2 when the input is invalid and 3 when a bounded search gave
up before reaching a verdict.
"""

import argparse
import dataclasses
import json
import os
import sys

from . import io
from .biequiv import (BiequivError, H_object, U_object, essential_preimage, roundtrip_check,
                      zeta_component)
from .compcat import CompCatError
from .displayed import DisplayedError, arrow_displayed, fiber_category, find_cleaving
from .fincat import CategoryError, FunctorError, is_gaunt, slice_category
from .functors import check_equivalence, check_functor, find_adjoint
from .limits import COLIMIT_SHAPES, LIMIT_SHAPES, Diagram, diagrams, find
from .localprops import (INCONCLUSIVE, VERIFIED, Verdict, check_local_property,
                         check_property_closure, classify, compcat_satisfies, registry)
from .results import NotFound, SearchBoundExceeded
from .typeformers import check_dfl, is_adjequiv_1cell

OK, FAIL, INVALID, UNSURE = 0, 1, 2, 3


def plain(x):
    """A JSON-ready copy of a report value, keeping declaration order."""
    if isinstance(x, Verdict):
        out = {"status": x.status, "witness": plain(x.witness)}
        if x.status == INCONCLUSIVE:
            out["bound"] = x.bound
        return out
    if isinstance(x, Diagram):
        return str(x)
    if isinstance(x, dict):
        return {str(plain(k)) if not isinstance(k, str) else k: plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(plain(v) for v in x)
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: plain(getattr(x, f.name)) for f in dataclasses.fields(x) if f.repr}
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


def code_of(statuses):
    statuses = list(statuses)
    if any(s not in (VERIFIED, INCONCLUSIVE) for s in statuses):
        return FAIL
    if INCONCLUSIVE in statuses:
        return UNSURE
    return OK


def mark(ok):
    return "✓" if ok else "✗"


class Outcome:
    """What a subcommand hands back: a payload, summary lines and an exit code."""

    def __init__(self, payload, lines, code=OK):
        self.payload, self.lines, self.code = payload, lines, code


def verdict_line(label, v):
    text = f"{label} {mark(v.verified)} {v.status}"
    if not v.verified and v.witness is not None:
        text += f": {json.dumps(plain(v.witness), ensure_ascii=False)}"
    if v.status == INCONCLUSIVE:
        text += f" (bound {v.bound})"
    return text


# cat


def cmd_cat_validate(args):
    cat = io.load_category(args.file)
    return Outcome({"valid": True, "name": cat.name, "objects": len(cat.objects),
                    "morphisms": len(cat.morphisms)},
                   [f"{cat.name or args.file}: valid category with {len(cat.objects)} objects "
                    f"and {len(cat.morphisms)} morphisms"])


def cmd_cat_limits(args):
    cat = io.load_category(args.file)
    shapes = args.shape or list(LIMIT_SHAPES)
    found, missing = {}, []
    for shape in shapes:
        found[shape] = {}
        for d in diagrams(cat, shape):
            w = find(cat, d)
            found[shape][str(d)] = {"apex": w.apex, "legs": list(w.legs)} if w else None
            if not w:
                missing.append(str(d))
    lines = [f"{shape}: {sum(v is not None for v in found[shape].values())}/{len(found[shape])} found"
             for shape in shapes]
    if missing:
        lines.append(f"first missing: {missing[0]}")
    return Outcome({"limits": found, "missing": missing}, lines, FAIL if missing else OK)


def cmd_cat_slice(args):
    cat = io.load_category(args.file)
    if args.object not in cat.objects:
        raise io.InputError(f"unknown object {args.object!r}")
    s = slice_category(cat, args.object)
    return Outcome(io.dump_category(s),
                   [f"{s.name}: {len(s.objects)} objects, {len(s.morphisms)} morphisms"])


def cmd_cat_gaunt(args):
    cat = io.load_category(args.file)
    r = is_gaunt(cat)
    return Outcome({"gaunt": r.ok, "witness": plain(r.witness)},
                   [f"gaunt {mark(r.ok)}" + ("" if r.ok else f": non-identity iso {r.witness[0]} "
                                                         f"with inverse {r.witness[1]}")],
                   OK if r else FAIL)


# functor


def cmd_functor_check(args):
    fun = io.load_functor(args.file)
    rep = check_functor(fun)
    payload = {"functorial": rep.functorial, "faithful": rep.faithful, "full": rep.full,
               "essentially_surjective": rep.essentially_surjective,
               "preserves": rep.preserves, "witnesses": plain(rep.witnesses)}
    lines = [f"{k} {mark(payload[k])}" for k in ("functorial", "faithful", "full",
                                                 "essentially_surjective")]
    lines += [f"preserves {s} {mark(ok)}" for s, ok in rep.preserves.items()]
    return Outcome(payload, lines, OK if rep.functorial else FAIL)


def cmd_functor_adjoint(args):
    fun = io.load_functor(args.file)
    kw = {} if args.bound is None else {"max_morphisms": args.bound, "max_objects": args.bound}
    adj = find_adjoint(fun, side=args.side, **kw)
    if isinstance(adj, NotFound):
        return Outcome({"adjoint": None, "reason": adj.reason, "witness": plain(adj.witness)},
                       [f"no {args.side} adjoint: {adj.reason}"], FAIL)
    other = adj.right if args.side == "right" else adj.left
    return Outcome({"adjoint": {"object_map": {x: other.ob(x) for x in other.source.objects},
                                "morphism_map": {f: other.mor(f) for f in other.source.morphisms}}},
                   [f"{args.side} adjoint found"] +
                   [f"  {x} |-> {other.ob(x)}" for x in other.source.objects])


def cmd_functor_equiv(args):
    fun = io.load_functor(args.file)
    r = check_equivalence(fun)
    if not r:
        return Outcome({"equivalence": False, "reason": r.reason, "witness": plain(r.witness)},
                       [f"equivalence ✗: {r.reason} at {r.witness!r}"], FAIL)
    inv = r.inverse
    return Outcome({"equivalence": True,
                    "inverse": {x: inv.ob(x) for x in inv.source.objects},
                    "unit": dict(r.unit.components), "counit": dict(r.counit.components)},
                   ["equivalence ✓"])


# disp


def _displayed(path):
    data, here = io.read_json(path)
    if isinstance(data, dict) and "dobjects" in data:
        return io.load_displayed(data, here)
    return arrow_displayed(io.load_category(data, here))


def cmd_disp_arrow(args):
    arr = arrow_displayed(io.load_category(args.file))
    per = {x: len(arr.dobjects[x]) for x in arr.base.objects}
    return Outcome({"dobjects": per, "dmorphisms": len(arr.dmorphisms)},
                   [f"{arr.name}: {len(arr.all_dobjects)} displayed objects, "
                    f"{len(arr.dmorphisms)} displayed morphisms"])


def cmd_disp_cleaving(args):
    disp = _displayed(args.file)
    c = find_cleaving(disp)
    if not c:
        return Outcome({"cleaving": None, "reason": c.reason, "witness": plain(c.witness)},
                       [f"cleaving ✗: {c.reason}"], FAIL)
    lifts = {f"{f} at {b}": m for (f, b), m in c.lifts.items()}
    return Outcome({"cleaving": lifts}, [f"cleaving ✓ ({len(lifts)} Cartesian lifts)"])


def cmd_disp_fiber(args):
    disp = _displayed(args.file)
    if args.object not in disp.base.objects:
        raise io.InputError(f"unknown object {args.object!r}")
    fib = fiber_category(disp, args.object)
    return Outcome(io.dump_category(fib),
                   [f"fiber over {args.object}: {len(fib.objects)} objects, "
                    f"{len(fib.morphisms)} morphisms"])


# compcat


def cmd_compcat_assemble(args):
    k = io.load_compcat(args.file)
    return Outcome({"name": k.name, "full": k.full, "terminal": k.terminal,
                    "types": len(k.types.all_dobjects)},
                   [f"{k.name}: comprehension category ✓ (full {mark(k.full)}, "
                    f"terminal {k.terminal})"])


def cmd_compcat_dfl(args):
    k = io.load_compcat(args.file)
    rep = check_dfl(k, None if args.bound is None else (args.bound, args.bound))
    d = rep.to_dict()
    lines = [f"{key} {mark(d[key])}" for key in ("full", "unit", "binary_products", "equalizers",
                                                 "strong_sigma", "democracy")]
    lines += [f"  {f['former']}: {f['message']}" for f in d["failures"]]
    return Outcome(d, lines, OK if rep else FAIL)


def cmd_compcat_eso(args):
    k = io.load_compcat(args.file)
    out = {}
    for s in k.base.morphisms:
        e = essential_preimage(k, s)
        out[s] = {"type": e.type, "forward": e.forward, "backward": e.backward}
    return Outcome({"preimages": out},
                   [f"{s}: {v['type']} via {v['forward']} / {v['backward']}" for s, v in out.items()])


# biequiv


def cmd_biequiv_h(args):
    k = H_object(io.load_category(args.file))
    return Outcome({"name": k.name, "types": {x: list(k.types.dobjects[x]) for x in k.base.objects},
                    "full": k.full},
                   [f"{k.name}: {len(k.types.all_dobjects)} types over {len(k.base.objects)} contexts"])


def cmd_biequiv_u(args):
    u = U_object(io.load_compcat(args.file))
    out = io.dump_category(u.cat)
    out["limits"] = {str(d): {"apex": w.apex, "legs": list(w.legs)} for d, w in u.witnesses.items()}
    return Outcome(out, [f"U: {len(u.cat.objects)} objects, {len(u.witnesses)} chosen limits"])


def cmd_biequiv_zeta(args):
    r = is_adjequiv_1cell(zeta_component(io.load_compcat(args.file)))
    return Outcome({"adjoint_equivalence": r.ok, "witness": plain(r.witness)},
                   [f"zeta adjoint equivalence {mark(r.ok)}"], OK if r else FAIL)


def cmd_biequiv_roundtrip(args):
    data, here = io.read_json(args.file)
    x = io.load_compcat(data, here) if "types" in data else io.load_category(data, here)
    rep = roundtrip_check(x)
    payload = {k: getattr(rep, k) for k in ("nominal", "witnesses_agree", "xi_equivalence",
                                            "zeta_equivalence", "functor_laws")}
    payload["details"] = plain(rep.details)
    return Outcome(payload, [f"{k} {mark(v)}" for k, v in payload.items() if k != "details"],
                   OK if rep else FAIL)


# classify and local properties


def cmd_classify(args):
    rep = classify(io.load_category(args.file), args.bound)
    lines = [verdict_line(name, v) for name, v in rep.flags.items()]
    lines.append(f"class: {rep.strongest or 'none'}")
    lines.append(f"signature: {rep.signature}")
    payload = {"flags": plain(rep.flags), "strongest": rep.strongest, "signature": rep.signature}
    # a classification is a report: it fails only when the input lacks finite limits
    if not rep.flags["finlim"].verified:
        return Outcome(payload, lines, FAIL)
    unsure = any(v.status == INCONCLUSIVE for v in rep.flags.values())
    return Outcome(payload, lines, UNSURE if unsure else OK)


def _property(name):
    props = registry()
    if name not in props:
        raise io.InputError(f"unknown property {name!r}; known: {', '.join(props)}")
    return props[name]


def cmd_prop_check(args):
    v = check_local_property(io.load_category(args.file), _property(args.property), args.bound)
    return Outcome({"property": args.property, **plain(v)}, [verdict_line(args.property, v)],
                   code_of([v.status]))


def cmd_prop_closure(args):
    rep = check_property_closure(_property(args.property), io.load_category(args.file), args.bound)
    return Outcome({"property": args.property, "axioms": plain(rep.axioms)},
                   [verdict_line(name, v) for name, v in rep.axioms.items()],
                   code_of(v.status for v in rep.axioms.values()))


def cmd_prop_fiberwise(args):
    v = compcat_satisfies(io.load_compcat(args.file), _property(args.property), args.bound)
    return Outcome({"property": args.property, **plain(v)},
                   [verdict_line(f"{args.property} fiberwise", v)], code_of([v.status]))


# tt


def cmd_tt_check(args):
    from . import ttlang
    from .ttlang.syntax import Scope

    if args.model is None:
        raise io.InputError("tt check needs --model")
    k = io.load_compcat(args.model)
    assignment = {}
    for item in args.assign or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise io.InputError(f"--assign expects NAME=TYPE, got {item!r}")
        if value not in k.fiber(k.terminal).objects:
            raise io.InputError(f"{value!r} is not a type over the terminal context {k.terminal}")
        assignment[name] = value
    files, checks = {}, []
    code = OK
    for path in args.files:
        try:
            with open(path, encoding="utf-8") as fh:
                source = fh.read()
        except OSError as exc:
            raise io.InputError(f"cannot read {path}: {exc.strerror}") from None
        try:
            interp = ttlang.interpret(ttlang.parse(source, Scope()), k, assignment)
        except ttlang.TTSyntaxError as exc:
            raise io.InputError(f"{path}:{exc}") from None
        except ttlang.UnboundVariable as exc:
            raise io.InputError(f"{path}:{exc}") from None
        except ttlang.TTTypeError as exc:
            files[path] = {"ok": False, "error": exc.kind, "message": str(exc)}
            checks.append(f"{path}: ✗ {exc}")
            code = FAIL
            continue
        reflect = ttlang.eq_reflection_failures(interp)
        comps = ttlang.comparison_failures(interp)
        results = [{"line": d.pos[0] if d.pos else None, "holds": bool(r)} for d, r in interp.checks]
        ok = interp.ok and not reflect and not comps
        files[path] = {"ok": ok, "terms": dict(interp.terms), "types": dict(interp.types),
                       "checks": results, "comparisons": len(interp.comparisons),
                       "eq_reflection_failures": len(reflect), "comparison_failures": len(comps)}
        checks.append(f"{path}: {mark(ok)} {len(interp.terms)} terms, "
                      f"{sum(r['holds'] for r in results)}/{len(results)} checks hold")
        if not ok:
            code = FAIL
    return Outcome({"model": k.name, "files": files}, checks, code)


COMMANDS = {
    "cat": {"validate": cmd_cat_validate, "limits": cmd_cat_limits, "slice": cmd_cat_slice,
            "gaunt": cmd_cat_gaunt},
    "functor": {"check": cmd_functor_check, "adjoint": cmd_functor_adjoint, "equiv": cmd_functor_equiv},
    "disp": {"arrow": cmd_disp_arrow, "cleaving": cmd_disp_cleaving, "fiber": cmd_disp_fiber},
    "compcat": {"assemble": cmd_compcat_assemble, "dfl": cmd_compcat_dfl, "eso": cmd_compcat_eso},
    "biequiv": {"h": cmd_biequiv_h, "u": cmd_biequiv_u, "zeta": cmd_biequiv_zeta,
                "roundtrip": cmd_biequiv_roundtrip},
    "prop": {"check": cmd_prop_check, "closure": cmd_prop_closure, "fiberwise": cmd_prop_fiberwise},
    "tt": {"check": cmd_tt_check},
}

NEEDS_OBJECT = {("cat", "slice"), ("disp", "fiber")}
NEEDS_PROPERTY = {"prop"}


def _bound(text):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("bound must be positive")
    return n


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report on stdout")
    common.add_argument("--emit-report", metavar="PATH", help="also write the JSON report to PATH")
    common.add_argument("--bound", type=_bound, default=None,
                        help="search budget (default: $CATLANG_BOUND or the built-in bound)")

    parser = argparse.ArgumentParser(prog="catlang",
                                     description="Checks on finite categories and their type theories.")
    groups = parser.add_subparsers(dest="group", required=True)
    for group, verbs in COMMANDS.items():
        g = groups.add_parser(group)
        sub = g.add_subparsers(dest="verb", required=True)
        for verb in verbs:
            p = sub.add_parser(verb, parents=[common])
            if group == "tt":
                p.add_argument("--model", metavar="PATH", help="comprehension category bundle or category")
                p.add_argument("--assign", action="append", metavar="NAME=TYPE",
                               help="interpret an atomic type as a type over the terminal context")
                p.add_argument("files", nargs="+")
                continue
            p.add_argument("file")
            if (group, verb) in NEEDS_OBJECT:
                p.add_argument("object")
            if group in NEEDS_PROPERTY:
                p.add_argument("--property", required=True, choices=list(registry()))
            if (group, verb) == ("functor", "adjoint"):
                p.add_argument("--side", choices=("right", "left"), default="right")
            if (group, verb) == ("cat", "limits"):
                p.add_argument("--shape", action="append",
                               choices=list(LIMIT_SHAPES + COLIMIT_SHAPES))
    c = groups.add_parser("classify", parents=[common])
    c.add_argument("file")
    c.set_defaults(verb=None)
    return parser


def run(argv=None, stdout=None):
    """Parse ``argv``, run one subcommand and return its exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else INVALID
    if args.bound is None and os.environ.get("CATLANG_BOUND"):
        try:
            args.bound = _bound(os.environ["CATLANG_BOUND"])
        except (ValueError, argparse.ArgumentTypeError):
            print("catlang: CATLANG_BOUND must be a positive integer", file=sys.stderr)
            return INVALID
    fn = cmd_classify if args.group == "classify" else COMMANDS[args.group][args.verb]
    try:
        out = fn(args)
    except SearchBoundExceeded as exc:
        out = Outcome({"status": INCONCLUSIVE, "reason": str(exc), "bound": exc.bound},
                      [f"inconclusive: {exc}"], UNSURE)
    except (io.InputError, CategoryError, DisplayedError, FunctorError) as exc:
        print(f"catlang: invalid input: {exc}", file=sys.stderr)
        return INVALID
    except (CompCatError, BiequivError) as exc:
        out = Outcome({"error": type(exc).__name__, "message": str(exc),
                       "witness": plain(getattr(exc, "witness", None))},
                      [f"✗ {type(exc).__name__}: {exc}"], FAIL)
    payload = {"command": " ".join(x for x in (args.group, args.verb) if x),
               "exit_code": out.code, "report": plain(out.payload)}
    text = io.dumps(payload)
    if args.emit_report:
        with open(args.emit_report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text, file=stdout)
    else:
        for line in out.lines:
            print(line, file=stdout)
    return out.code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
