"""Command line interface.

Subcommands:

    xmodkit check FILE    axioms for every [xmod] in FILE (elementwise, word
                          level, ternary), reporting the first witnesses
    xmodkit pi0 FILE      component group per [xmod], both quotient routes
    xmodkit lift FILE     section search for every [morphism] in FILE
    xmodkit condp MODE    exponent-4 studies: z4-pipeline, non-schreier,
                          transfer, preservation
    xmodkit audit         built-in corpus sweep with cross checks

Exit codes: 0 all checks passed, 1 a checked property is falsified or a
searched section provably does not exist, 2 malformed input, 3 a search
budget ran out before the question was settled.  Budget exhaustion is never
reported as nonexistence.

Every subcommand accepts --json PATH to write a machine-readable report
("-" for stdout); the human summary always goes to stdout.
"""

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .errors import BudgetExhausted, DefinitionError, GroupError
from .defs import load_definitions
from .xmod import (
    check_axioms, check_axioms_wordlevel, check_ternary, pi0, pi0_comparison,
    pi0_preserves_split_ses,
)
from .sse import is_regular_epi
from .lifting import (
    find_xmod_section, inclusion_extension, projective_section,
    pullback_section,
)
from .condp import (
    non_schreier_demo, pi0_preservation_suite, pipeline_diagram_P,
    projectivity_survey, theorem_P_transfer_check,
)
from .corpus import (
    axiom_corpus, no_section_fixture, projective_section_corpus,
    pullback_no_section_fixture, pullback_section_corpus, split_ses_corpus,
    sse_morphism_corpus,
)


def _json_safe(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)


def _digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _emit(args, command, results, ok, started, *, exit_code=None):
    """Write the JSON report (if asked) and return the exit code."""
    code = exit_code if exit_code is not None else (0 if ok else 1)
    report = {
        "tool": "xmodkit",
        "version": __version__,
        "command": command,
        "ok": ok,
        "exit_code": code,
        "elapsed_seconds": round(time.perf_counter() - started, 3),
        "results": results,
    }
    path = getattr(args, "input", None)
    if path:
        report["input"] = path
        report["input_sha256"] = _digest(path)
    if getattr(args, "seed", None) is not None:
        report["seed"] = args.seed
    if args.json == "-":
        json.dump(report, sys.stdout, indent=2, default=_json_safe)
        sys.stdout.write("\n")
    elif args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, default=_json_safe)
        print(f"report written to {args.json}")
    print(f"VERDICT: {'pass' if ok else 'falsified'}")
    return code


def _first(lst):
    return lst[0] if lst else None


# -- check ------------------------------------------------------------------


def cmd_check(args):
    started = time.perf_counter()
    defs = load_definitions(args.input, check_xmods=False)
    xmods = defs.of_kind("xmod")
    if not xmods:
        raise DefinitionError(f"{args.input}: no [xmod] sections to check")
    results = []
    for name, xm in xmods:
        elem = check_axioms(xm)
        word = check_axioms_wordlevel(xm, args.word_len)
        tern = check_ternary(xm, args.ternary_len) if elem["ok"] else None
        entry = {
            "name": name,
            "ok": elem["ok"] and word["ok"] and (tern is None or tern["ok"]),
            "elementwise": {
                "ok": elem["ok"],
                "equivariance_violations": len(elem["equivariance_violations"]),
                "peiffer_violations": len(elem["peiffer_violations"]),
                "first_equivariance_witness": _first(elem["equivariance_violations"]),
                "first_peiffer_witness": _first(elem["peiffer_violations"]),
            },
            "wordlevel": {
                "ok": word["ok"],
                "max_len": word["max_len"],
                "words": word["equivariance_words"] + word["peiffer_words"],
                "first_violation": _first(word["equivariance_violations"])
                or _first(word["peiffer_violations"]),
            },
        }
        if tern is not None:
            entry["ternary"] = {"ok": tern["ok"], "max_len": tern["max_len"],
                                "words": tern["words"],
                                "first_violation": _first(tern["violations"])}
        results.append(entry)
        state = "ok" if entry["ok"] else "FAILS"
        print(f"check {name}: {state} "
              f"(eq viol {entry['elementwise']['equivariance_violations']}, "
              f"pf viol {entry['elementwise']['peiffer_violations']}, "
              f"{entry['wordlevel']['words']} words at L={args.word_len})")
    return _emit(args, "check", results, all(r["ok"] for r in results), started)


# -- pi0 ---------------------------------------------------------------------


def cmd_pi0(args):
    started = time.perf_counter()
    defs = load_definitions(args.input)
    xmods = defs.of_kind("xmod")
    if not xmods:
        raise DefinitionError(f"{args.input}: no [xmod] sections")
    results = []
    for name, xm in xmods:
        Q, _proj = pi0(xm)
        try:
            pi0_comparison(xm)
            agree = True
        except GroupError:
            agree = False
        results.append({
            "name": name,
            "order": Q.order,
            "commutative": Q.commutative,
            "element_names": list(Q.names),
            "coequalizer_route_agrees": agree,
        })
        print(f"pi0 {name}: order {Q.order}, "
              f"{'abelian' if Q.commutative else 'nonabelian'}, "
              f"coequalizer route {'agrees' if agree else 'DISAGREES'}")
    return _emit(args, "pi0", results, all(r["coequalizer_route_agrees"] for r in results), started)


# -- lift ---------------------------------------------------------------------


def cmd_lift(args):
    started = time.perf_counter()
    defs = load_definitions(args.input)
    mors = defs.of_kind("morphism")
    if args.name:
        mors = [(n, m) for n, m in mors if n == args.name]
        if not mors:
            raise DefinitionError(f"{args.input}: no [morphism {args.name}] section")
    if not mors:
        raise DefinitionError(f"{args.input}: no [morphism] sections")
    results = []
    for name, mor in mors:
        if args.algorithm == "projective-section":
            ext = inclusion_extension(mor.tgt, budget=args.budget)
            cert = projective_section(mor, ext, budget=args.budget,
                                      ternary_len=args.ternary_len)
        else:
            cert = pullback_section(mor, budget=args.budget)
        entry = {"morphism": name, "algorithm": args.algorithm,
                 "certificate": cert.to_json()}
        if args.cross_check:
            entry["generic_search_found_section"] = (
                find_xmod_section(mor, budget=args.budget) is not None)
        results.append(entry)
        print(f"lift {name} [{args.algorithm}]: {cert.status}")
    ok = all(r["certificate"]["status"] == "success" for r in results)
    return _emit(args, "lift", results, ok, started)


# -- condp ---------------------------------------------------------------------


def _parse_int_list(text, what):
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise DefinitionError(f"{what} must be a list of integers, got {text!r}")


def cmd_condp(args):
    started = time.perf_counter()
    results = {}
    if args.mode == "z4-pipeline":
        jobs = []
        if args.input:
            defs = load_definitions(args.input)
            jobs = [(n, sm.table, sm.section) for n, sm in defs.of_kind("setmap")]
            if not jobs:
                raise DefinitionError(f"{args.input}: no [setmap] sections")
        else:
            f = _parse_int_list(args.map, "--map") if args.map else (0, 0)
            s = _parse_int_list(args.section, "--section") if args.section else (0,)
            jobs = [("cli", f, s)]
        rows = []
        for name, f, s in jobs:
            rep = pipeline_diagram_P(list(f), list(s))
            rows.append({"name": name, "map": list(f), "section": list(s),
                         "report": rep})
            mat = rep["materialized"]
            extra = "" if mat is None else f", sections {mat}"
            print(f"pipeline {name}: kernel rank {len(rep['objects']['kernel_flat'])}"
                  f", squares ok {all(rep['squares'].values())}{extra}")
        results["pipelines"] = rows
        ok = all(r["report"]["ok"] for r in rows)
    elif args.mode == "non-schreier":
        rep = non_schreier_demo(relabel_seed=args.seed)
        results["demo"] = rep
        print(f"non-schreier: carrier {rep['carrier_order']}, family {rep['family']}, "
              f"free shape {rep['shape']['free_shape']}")
        ok = rep["ok"]
    elif args.mode == "transfer":
        rep = theorem_P_transfer_check(seed=args.seed or 0, count=args.count)
        survey = projectivity_survey(args.max_order)
        results["transfer"] = {k: v for k, v in rep.items() if k != "instances"}
        results["transfer"]["instances"] = rep["instances"]
        results["survey"] = survey
        print(f"transfer: {rep['count']} instances, {rep['vacuous']} vacuous, "
              f"{rep['oracle_checked']} oracle-checked, "
              f"counterexamples {rep['counterexamples']}")
        print(f"survey: {len(survey)} classes up to order {args.max_order}, "
              f"all agree {all(r['ok'] for r in survey)}")
        ok = rep["ok"] and all(r["ok"] for r in survey)
    else:
        rep = pi0_preservation_suite()
        results["preservation"] = rep
        print(f"preservation: split rows {rep['split_rows']['count']} ok, "
              f"left-exactness failures {rep['left_exactness_failures']}")
        ok = rep["ok"]
    return _emit(args, f"condp {args.mode}", results, ok, started)


# -- audit ----------------------------------------------------------------------


def cmd_audit(args):
    started = time.perf_counter()
    results = {}
    entries = axiom_corpus()
    agree = all(check_axioms(xm)["ok"] == valid
                == check_axioms_wordlevel(xm, 4)["ok"]
                for _, xm, valid in entries)
    results["axiom_corpus"] = {"entries": len(entries), "checkers_agree": agree}
    print(f"axiom corpus: {len(entries)} entries, checkers agree {agree}")

    dirty = [name for name, xm, valid in entries
             if valid and not check_ternary(xm, args.ternary_len)["ok"]]
    results["ternary"] = {"max_len": args.ternary_len, "violations": dirty}
    print(f"ternary law: clean at L={args.ternary_len} "
          f"except {dirty if dirty else 'none'}")

    mors = sse_morphism_corpus()
    epis = sum(1 for m in mors if is_regular_epi(m))
    results["sse_corpus"] = {"morphisms": len(mors), "regular_epis": epis}
    print(f"same-base corpus: {len(mors)} morphisms, {epis} regular epis, "
          f"carrier/total surjectivity consistent")

    rows = [pi0_preserves_split_ses(s)["ok"] for s in split_ses_corpus()]
    results["split_rows"] = {"count": len(rows), "all_ok": all(rows)}
    print(f"split rows: {len(rows)} rows, pi0 splits preserved {all(rows)}")

    pairs = projective_section_corpus()
    succ = sum(1 for mor, ext in pairs
               if projective_section(mor, ext, budget=args.budget).ok)
    mor0, ext0 = no_section_fixture()
    cert0 = projective_section(mor0, ext0, budget=args.budget)
    generic0 = find_xmod_section(mor0, budget=args.budget)
    results["projective_sections"] = {
        "pairs": len(pairs), "successes": succ,
        "nonexistence_status": cert0.status,
        "generic_search_agrees": generic0 is None,
    }
    print(f"projective sections: {succ}/{len(pairs)} built, "
          f"fixture status {cert0.status!r}, generic search agrees "
          f"{generic0 is None}")

    pb = [pullback_section(m, budget=args.budget).ok
          for m in pullback_section_corpus()]
    fix = pullback_section(pullback_no_section_fixture(), budget=args.budget)
    results["pullback_sections"] = {
        "pairs": len(pb), "successes": sum(pb),
        "nonexistence_status": fix.status,
    }
    print(f"pullback sections: {sum(pb)}/{len(pb)} built, "
          f"fixture status {fix.status!r}")

    ok = (agree and not dirty and all(rows) and succ == len(pairs)
          and cert0.status == "no-equivariant-section" and generic0 is None
          and all(pb) and fix.status == "no-cokernel-section")
    if not args.quick:
        survey = projectivity_survey()
        s_ok = all(r["ok"] for r in survey)
        results["survey"] = {"classes": len(survey), "all_agree": s_ok}
        print(f"projectivity survey: {len(survey)} classes, criterion and "
              f"oracle agree {s_ok}")
        ok = ok and s_ok
    return _emit(args, "audit", results, ok, started)


# -- plumbing ---------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="xmodkit",
        description="Finite crossed module toolkit: axiom checks, component "
                    "groups, section lifting, exponent-4 projectivity studies.")
    p.add_argument("--version", action="version", version=f"xmodkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", metavar="PATH",
                        help="write a JSON report to PATH ('-' for stdout)")
        sp.add_argument("--budget", type=int, default=None,
                        help="node budget for backtracking searches")

    sp = sub.add_parser("check", help="verify crossed module axioms")
    sp.add_argument("input", help="definition file")
    sp.add_argument("--word-len", type=int, default=4,
                    help="max word length for the word-level laws (default 4)")
    sp.add_argument("--ternary-len", type=int, default=8,
                    help="max word length for the ternary law (default 8)")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("pi0", help="component group of each crossed module")
    sp.add_argument("input", help="definition file")
    common(sp)
    sp.set_defaults(func=cmd_pi0)

    sp = sub.add_parser("lift", help="search sections of the given morphisms")
    sp.add_argument("input", help="definition file")
    sp.add_argument("--algorithm", choices=("projective-section", "pullback-section"),
                    default="projective-section")
    sp.add_argument("--name", help="only this [morphism] section")
    sp.add_argument("--ternary-len", type=int, default=8,
                    help="audit depth for successful projective sections")
    sp.add_argument("--cross-check", action="store_true",
                    help="also run the generic fiber search")
    common(sp)
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("condp", help="exponent-4 projectivity studies")
    sp.add_argument("mode", choices=("z4-pipeline", "non-schreier", "transfer",
                                     "preservation"))
    sp.add_argument("--input", help="definition file with [setmap] sections "
                                    "(z4-pipeline only)")
    sp.add_argument("--map", help="set surjection as integers, e.g. '0,0,1'")
    sp.add_argument("--section", help="section of --map, e.g. '0,2'")
    sp.add_argument("--seed", type=int, default=None,
                    help="relabel seed (non-schreier) or sweep seed (transfer)")
    sp.add_argument("--count", type=int, default=12,
                    help="transfer sweep size (default 12)")
    sp.add_argument("--max-order", type=int, default=64,
                    help="survey cap for transfer mode (default 64)")
    common(sp)
    sp.set_defaults(func=cmd_condp)

    sp = sub.add_parser("audit", help="run the built-in corpus sweep")
    sp.add_argument("--quick", action="store_true",
                    help="skip the projectivity survey")
    sp.add_argument("--ternary-len", type=int, default=6,
                    help="ternary depth for the corpus sweep (default 6)")
    common(sp)
    sp.set_defaults(func=cmd_audit)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DefinitionError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except GroupError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
