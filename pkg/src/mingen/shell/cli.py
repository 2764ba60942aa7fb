"""Command line interface.

Exit status: 0 pass, 1 mismatch, 2 input error, 3 resource error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..config import DEFAULT_BUDGETS
from ..crowns import crown_decomposition
from ..dnum import d_brute, d_crown
from ..errors import InputError, InvariantError, ResourceError
from ..factors import FRATTINI
from ..structure import chief_series
from .corpus import CorpusOptions, bundled_corpus_path, load_entries, run_entries
from .expr import evaluate, parse
from .xlarge import extra_large_check, load_instances

EXIT_PASS, EXIT_MISMATCH, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def read_group_file(path: str) -> dict:
    """A group file holds one expression, or a JSON object with an "expr" field."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from exc
        if "expr" not in obj:
            raise InputError(f"{path}: missing field 'expr'")
        return obj
    return {"name": Path(path).stem, "expr": stripped}


def cmd_info(args) -> int:
    entry = read_group_file(args.file)
    G = evaluate(parse(entry["expr"]))
    print(f"group   {entry.get('name', '')}: {entry['expr']}")
    print(f"degree  {G.degree}")
    print(f"order   {G.order}")
    cs = chief_series(G, args.seed)
    print("chief series (bottom to top):")
    for i, F in enumerate(cs.factors):
        flag = "Frattini" if F.frattini_flag == FRATTINI else F.frattini_flag.replace("_", "-")
        print(f"  {i:>2}  order {F.order:<8} {F.describe():<18} {flag}")
    if G.order > 1:
        print("crowns:")
        for rec in crown_decomposition(G, args.seed, series=cs):
            row = rec.row()
            row.pop("members")
            print("  " + ", ".join(f"{k}={v}" for k, v in row.items()))
    return EXIT_PASS


def cmd_dnum(args) -> int:
    entry = read_group_file(args.file)
    G = evaluate(parse(entry["expr"]))
    budgets = DEFAULT_BUDGETS
    results = {}
    if args.method in ("crown", "both"):
        results["crown"] = d_crown(G, args.seed, budgets)
    if args.method in ("brute", "both"):
        results["brute"] = d_brute(G, args.budget or budgets.brute_tuples, args.seed, budgets)
    for name, iv in results.items():
        value = iv.lo if iv.exact else f"{iv.lo}..{iv.hi}"
        print(f"{name:<6} d = {value}  ({iv.lo_certificate}; {iv.hi_certificate})")
        if iv.witness:
            print("       witness: " + ", ".join(str(w) for w in iv.witness))
    exact = {iv.lo for iv in results.values() if iv.exact}
    status = EXIT_PASS if len(exact) <= 1 else EXIT_MISMATCH
    if "expected_d" in entry and exact != {entry["expected_d"]}:
        status = EXIT_MISMATCH
    return status


def cmd_corpus(args) -> int:
    path = args.file or bundled_corpus_path()
    entries = load_entries(path)
    report = run_entries(entries, CorpusOptions(seed=args.seed, jobs=args.jobs))
    print(report.to_text())
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n", encoding="utf-8")
    return EXIT_PASS if report.all_passed else EXIT_MISMATCH


def cmd_xlarge(args) -> int:
    if args.E is None:
        cases = load_instances(args.instances)
    else:
        cases = [{"E": args.E, "F": args.F or "", "t": args.t}]
    ok = True
    out = []
    for case in cases:
        rep = extra_large_check(case["E"], case["F"], case["t"], args.seed)
        out.append(rep)
        ok = ok and rep["matched"]
        print(f"E={case['E']}  |F|={rep['F_order']}  t={rep['t']}  |H|={rep['H_order']}  "
              f"{'match' if rep['matched'] else 'MISMATCH'}")
        for sec in rep["sections"]:
            pred = sec.get("predicted")
            want = ("total " + str(sec["total"])) if pred is None else \
                " ".join(str(p["order"]) + ("F" if p["frattini"] else "") for p in pred)
            got = " ".join(str(c["order"]) + ("F" if c["frattini"] else "") for c in sec["computed"])
            print(f"  {sec['label']:<48} predicted [{want}]  computed [{got}]")
    if args.json:
        Path(args.json).write_text(json.dumps(out, indent=2) + "\n", encoding="utf-8")
    return EXIT_PASS if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mingen", description="Minimal generation of permutation groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="order, chief series and crown table")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("dnum", help="minimal number of generators")
    p.add_argument("file")
    p.add_argument("--method", choices=["crown", "brute", "both"], default="both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None, help="random tuples for the brute-force search")
    p.set_defaults(func=cmd_dnum)

    p = sub.add_parser("corpus", help="run a regression corpus (bundled one by default)")
    p.add_argument("file", nargs="?")
    p.add_argument("--json", help="write the report as JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("xlarge", help="wreath-product chief factor harness")
    p.add_argument("--E", help="group expression for E")
    p.add_argument("--F", help="generators of F as cycle lists separated by ';'")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--instances", help="JSON file of {E, F, t} objects (bundled set by default)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json")
    p.set_defaults(func=cmd_xlarge)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
