"""Command line: analyze one group, verify every check over the corpus, key-lemma threshold."""
from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from . import actions, corpus, keylemma, theorems
from .group import DEFAULT_ENUM_LIMIT, PermGroup, ResourceLimitError
from .orbitals import suborbits
from .perm import PermutationError, parse_generator_text
from .report import FAIL, PASS, SKIPPED, CheckReport, describe, dumps
from .structure import check_socle_primitive, check_subdirect, comp_a

DEFAULT_ORDER_LIMIT = 10**8

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _checks(G: PermGroup, name: str, limit: int) -> list[CheckReport]:
    """Every lemma check that applies to a transitive group."""
    reports = [theorems.check_prop3(G, name=name, limit=limit)]
    if G.degree >= 2 and actions.is_primitive(G):
        reports.append(theorems.check_jordan(G, name=name))
        if not G.point_stabilizer(0).is_trivial():
            reports.append(theorems.check_wielandt(G, name=name, limit=limit))
        try:
            reports.append(check_socle_primitive(G, name=name, limit=limit))
        except ResourceLimitError as err:
            reports.append(CheckReport("prop:Socle", describe(G, name), SKIPPED, reason=str(err)))
    if G.order() % 2:
        reports.append(theorems.check_odd_order(G, name=name, limit=limit))
    reports.append(theorems.check_theorem7(G, name=name, limit=limit))
    return reports


# -- analyze ------------------------------------------------------------------------


def analyze_group(G: PermGroup, name: str, limit: int) -> dict:
    """Full report for one group; raises ResourceLimitError if Comp_A of G is out of reach."""
    info = describe(G, name)
    transitive = G.is_transitive()
    report = {"group": info, "transitive": transitive, "orbits": G.orbits()}
    if not transitive:
        report["comp_a_G"] = sorted(comp_a(G, limit=limit))
        report["checks"] = []
        report["reason"] = "the checks need a transitive group"
        return report
    primitive = actions.is_primitive(G)
    report["primitive"] = primitive
    try:
        report["quasiprimitive"] = actions.is_quasiprimitive(G, limit)
    except ResourceLimitError as err:
        report["quasiprimitive"] = None
        report["quasiprimitive_reason"] = str(err)
    report["minimal_block_systems"] = [B.as_lists() for B in actions.minimal_block_systems(G)]
    report["suborbits"] = [{"size": s.size, "self_paired": s.self_paired,
                            "representative": s.representative} for s in suborbits(G, 0)]
    report["comp_a_G"] = sorted(comp_a(G, limit=limit))
    report["comp_a_Gx"] = sorted(comp_a(G.point_stabilizer(0), limit=limit))
    report["checks"] = [r.to_dict() for r in _checks(G, name, limit)]
    return report


def _exit_for(verdicts) -> int:
    return EXIT_FAIL if FAIL in verdicts else EXIT_OK


def _print_analysis(rep: dict) -> None:
    g = rep["group"]
    print(f"group {g['name']}: degree {g['degree']}, order {g['order']}")
    print(f"transitive: {rep['transitive']}")
    if not rep["transitive"]:
        print(f"orbits: {rep['orbits']}")
        print(f"comp_A(G) = {rep['comp_a_G']}")
        print(rep["reason"])
        return
    print(f"primitive: {rep['primitive']}   quasiprimitive: {rep['quasiprimitive']}")
    for blocks in rep["minimal_block_systems"]:
        print(f"minimal block system: {blocks}")
    subs = ", ".join(f"{s['size']}{'*' if s['self_paired'] else ''}" for s in rep["suborbits"])
    print(f"suborbit sizes (* self-paired): {subs}")
    print(f"comp_A(G) = {rep['comp_a_G']}   comp_A(G_x) = {rep['comp_a_Gx']}")
    for c in rep["checks"]:
        w = c["witness"]
        line = f"{c['lemma']:<14} {c['verdict']}"
        if c["lemma"] == "thm:7" and "value" in w:
            line += f"  |Comp_A(G_x)| = {w['value']} < {w['bound']:.4f}  (depth {w['depth']})"
        elif c["lemma"] == "prop:3" and "bound" in w:
            line += f"  |difference| = {w['difference_size']} < {w['bound']:.4f}"
        if "reason" in w:
            line += f"  ({w['reason']})"
        print(line)


def run_analyze(path: str, as_json: bool, order_limit: int, enum_limit: int) -> int:
    try:
        degree, gens = parse_generator_text(Path(path).read_text())
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (PermutationError, ValueError) as err:
        print(f"error: {path}: {err}", file=sys.stderr)
        return EXIT_INPUT
    G = PermGroup(gens, degree)
    name = Path(path).stem
    try:
        if G.order() > order_limit:
            raise ResourceLimitError(f"group order {G.order()} exceeds the order limit {order_limit}")
        rep = analyze_group(G, name, enum_limit)
    except ResourceLimitError as err:
        print(f"resource limit: {err}", file=sys.stderr)
        return EXIT_LIMIT
    if as_json:
        print(dumps(rep))
    else:
        _print_analysis(rep)
    return _exit_for(c["verdict"] for c in rep["checks"])


# -- verify -------------------------------------------------------------------------


def verify_corpus(max_degree: int, max_order: int, seeds: int, seed0: int,
                  order_limit: int = DEFAULT_ORDER_LIMIT,
                  enum_limit: int = DEFAULT_ENUM_LIMIT) -> dict:
    members = corpus.enumerate_corpus(max_degree, min(max_order, order_limit), seeds, seed0)
    reports = []
    for spec, G in members:
        reports += _checks(G, str(spec), enum_limit)
    for inst in corpus.subdirect_instances():
        if inst.group.degree <= 2 * max_degree and inst.group.order() <= max_order:
            try:
                reports.append(check_subdirect(inst.group, inst.domain1, inst.domain2,
                                               name=inst.name, limit=enum_limit))
            except ResourceLimitError as err:
                reports.append(CheckReport("lem:subdirect-product-structure",
                                           describe(inst.group, inst.name), SKIPPED, reason=str(err)))
    for inst in corpus.key_lemma_instances():
        reports.append(theorems.check_key_lemma_instance(inst.group, inst.normal, name=inst.name,
                                                         limit=enum_limit))
    summary: dict[str, Counter] = {}
    for r in reports:
        summary.setdefault(r.lemma, Counter({PASS: 0, FAIL: 0, SKIPPED: 0}))[r.verdict] += 1
    return {
        "parameters": {"max_degree": max_degree, "max_order": max_order, "seeds": seeds,
                       "seed0": seed0, "order_limit": order_limit, "enum_limit": enum_limit},
        "corpus": [{"spec": str(spec), "degree": G.degree, "order": G.order()} for spec, G in members],
        "summary": {k: dict(v) for k, v in summary.items()},
        "failures": [r.to_dict() for r in reports if r.verdict == FAIL],
        "reports": [r.to_dict() for r in reports],
    }


def run_verify(max_degree: int, max_order: int, seeds: int, seed0: int, as_json: bool,
               order_limit: int, enum_limit: int) -> int:
    result = verify_corpus(max_degree, max_order, seeds, seed0, order_limit, enum_limit)
    if as_json:
        print(dumps(result))
    else:
        print(f"corpus: {len(result['corpus'])} groups")
        print(f"{'lemma':<34}{'PASS':>6}{'FAIL':>6}{'SKIPPED':>9}")
        for lemma in sorted(result["summary"]):
            c = result["summary"][lemma]
            print(f"{lemma:<34}{c[PASS]:>6}{c[FAIL]:>6}{c[SKIPPED]:>9}")
        for f in result["failures"]:
            print(f"FAIL {f['lemma']} on {f['group']['name']}: {dumps(f['witness'])}")
    return _exit_for(r["verdict"] for r in result["reports"])


# -- threshold and corpus export ---------------------------------------------------


def run_threshold(k_max: int, as_json: bool) -> int:
    if k_max < 2:
        print("error: k_max must be at least 2", file=sys.stderr)
        return EXIT_INPUT
    rows = keylemma.threshold_table(k_max)
    k0 = keylemma.key_lemma_threshold(k_max)
    if as_json:
        print(dumps({"k_max": k_max, "K0": k0, "rows": rows}))
        return EXIT_OK
    print(f"{'k':>12} {'m(k)':>8} {'2k^(2/5)':>14}")
    for r in rows:
        print(f"{r['k']:>12} {r['m']:>8} {r['bound']:>14.4f}")
    print(f"K0 = {k0}" if k0 is not None else f"K0 = none <= {k_max}")
    return EXIT_OK


def run_export(directory: str, max_degree: int, max_order: int, seeds: int, seed0: int) -> int:
    members = corpus.enumerate_corpus(max_degree, max_order, seeds, seed0)
    paths = corpus.export_corpus(members, directory)
    print(f"wrote {len(paths)} files to {directory}")
    return EXIT_OK


def _corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-degree", type=int, default=12)
    p.add_argument("--max-order", type=lambda s: int(float(s)), default=10**6)
    p.add_argument("--seeds", type=int, default=5, help="random groups per degree")
    p.add_argument("--seed0", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permbound",
                                     description="Composition-factor bounds for permutation groups.")
    parser.add_argument("--order-limit", type=lambda s: int(float(s)), default=DEFAULT_ORDER_LIMIT,
                        help="refuse groups larger than this")
    parser.add_argument("--enum-limit", type=lambda s: int(float(s)), default=DEFAULT_ENUM_LIMIT,
                        help="largest group enumerated element by element")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report on the group in a generator file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run every check over the corpus")
    _corpus_args(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("threshold", help="tabulate m(k) and the key-lemma threshold")
    p.add_argument("kmax", type=lambda s: int(float(s)))
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("corpus", help="corpus utilities")
    csub = p.add_subparsers(dest="corpus_command", required=True)
    e = csub.add_parser("export", help="write one generator file per corpus group")
    e.add_argument("directory")
    _corpus_args(e)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return run_analyze(args.file, args.json, args.order_limit, args.enum_limit)
    if args.command == "verify":
        return run_verify(args.max_degree, args.max_order, args.seeds, args.seed0, args.json,
                          args.order_limit, args.enum_limit)
    if args.command == "threshold":
        return run_threshold(args.kmax, args.json)
    return run_export(args.directory, args.max_degree, args.max_order, args.seeds, args.seed0)


if __name__ == "__main__":
    sys.exit(main())
