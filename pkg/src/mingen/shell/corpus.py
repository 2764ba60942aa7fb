"""Regression corpus: evaluate named groups, run both d engines, compare with
recorded expectations and emit a report."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..config import DEFAULT_BUDGETS, Budgets
from ..crowns import crown_decomposition
from ..dnum import d_brute, d_crown
from ..errors import InputError, MingenError, ResourceError
from ..factors import FRATTINI
from ..structure import chief_series
from .expr import evaluate, parse, predicted_order, to_text

SCHEMA_VERSION = 1
_FIELDS = {"name": str, "expr": str, "expected_d": int, "expected_chief_orders": list,
           "expected_frattini": list, "provenance": str}


@dataclass
class CorpusOptions:
    seed: int = 0
    jobs: int = 1
    method: str = "both"
    budgets: Budgets = DEFAULT_BUDGETS


def bundled_corpus_path() -> Path:
    return Path(str(resources.files("mingen.shell").joinpath("data/corpus.json")))


def load_entries(path) -> list:
    """Corpus file: a JSON array of entry objects (or a single object)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read corpus file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"corpus file {path} is not valid JSON: {exc}") from exc
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise InputError("corpus must be a JSON array of entries")
    return data


def validate_entry(entry) -> list[str]:
    """Schema problems of one corpus entry (empty when valid)."""
    if not isinstance(entry, dict):
        return ["entry is not an object"]
    problems = []
    for key in ("name", "expr"):
        if key not in entry:
            problems.append(f"missing field {key!r}")
    for key, value in entry.items():
        want = _FIELDS.get(key)
        if want is None:
            problems.append(f"unknown field {key!r}")
        elif not isinstance(value, want) or isinstance(value, bool):
            problems.append(f"field {key!r} should be {want.__name__}")
    for key in ("expected_chief_orders", "expected_frattini"):
        if isinstance(entry.get(key), list) and not all(isinstance(x, int) for x in entry[key]):
            problems.append(f"field {key!r} should list integers")
    has_expectation = any(k in entry for k in ("expected_d", "expected_chief_orders", "expected_frattini"))
    if has_expectation and not entry.get("provenance"):
        problems.append("expected values need a provenance")
    return problems


def run_entry(entry, options: CorpusOptions = CorpusOptions()) -> dict:
    """Evaluate one entry; never raises."""
    start = time.perf_counter()
    out = {"name": entry.get("name") if isinstance(entry, dict) else None, "passed": False,
           "error": None, "checks": {}}
    problems = validate_entry(entry)
    if problems:
        out["error"] = "schema: " + "; ".join(problems)
        out["seconds"] = round(time.perf_counter() - start, 3)
        return out
    checks = out["checks"]
    try:
        node = parse(entry["expr"])
        out["expr"] = to_text(node)
        G = evaluate(node, options.budgets)
        out["order"] = G.order
        out["degree"] = G.degree
        want = predicted_order(node)
        if want is not None:
            checks["order"] = G.order == want
        cs = chief_series(G, options.seed, budgets=options.budgets)
        out["chief_orders"] = sorted(cs.factor_orders)
        out["frattini_orders"] = sorted(F.order for F in cs.factors if F.frattini_flag == FRATTINI)
        crown = brute = None
        if options.method in ("crown", "both"):
            crown = d_crown(G, options.seed, options.budgets)
            out["d_crown"] = crown.as_dict()
            out["crowns"] = [rec.row() for rec in crown.records]
        if options.method in ("brute", "both"):
            brute = d_brute(G, options.budgets.brute_tuples, options.seed, options.budgets)
            out["d_brute"] = brute.as_dict()
        exact = [iv.lo for iv in (crown, brute) if iv is not None and iv.exact]
        out["d"] = exact[0] if exact else None
        if crown is not None and brute is not None and crown.exact and brute.exact:
            checks["engines_agree"] = crown.lo == brute.lo
        if "expected_d" in entry:
            checks["expected_d"] = bool(exact) and all(x == entry["expected_d"] for x in exact)
        if "expected_chief_orders" in entry:
            checks["expected_chief_orders"] = sorted(entry["expected_chief_orders"]) == out["chief_orders"]
        if "expected_frattini" in entry:
            checks["expected_frattini"] = sorted(entry["expected_frattini"]) == out["frattini_orders"]
        out["passed"] = all(checks.values())
    except ResourceError as exc:
        out["error"] = f"resource: {exc}"
    except MingenError as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
    out["seconds"] = round(time.perf_counter() - start, 3)
    return out


@dataclass
class Report:
    entries: list = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(e["passed"] for e in self.entries)

    @property
    def engines_agree(self) -> bool:
        return all(e["checks"].get("engines_agree", True) for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "entries": self.entries,
            "aggregate": {
                "all_passed": self.all_passed,
                "engines_agree": self.engines_agree,
                "entries": len(self.entries),
                "failed": sum(not e["passed"] for e in self.entries),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        header = f"{'name':<28} {'order':>9} {'crown':>7} {'brute':>7} {'time':>7}  status"
        lines = [header, "-" * len(header)]
        for e in self.entries:
            def iv(key):
                d = e.get(key)
                if not d:
                    return "-"
                return str(d["lo"]) if d["exact"] else f"{d['lo']}..{d['hi']}"
            status = "pass" if e["passed"] else "FAIL " + (e["error"] or ",".join(
                k for k, v in e["checks"].items() if not v))
            lines.append(f"{str(e['name'])[:28]:<28} {e.get('order', '-'):>9} {iv('d_crown'):>7} "
                         f"{iv('d_brute'):>7} {e['seconds']:>7.2f}  {status}")
        lines.append(f"{len(self.entries)} entries, {sum(not e['passed'] for e in self.entries)} failed")
        return "\n".join(lines)


def run_entries(entries: list, options: CorpusOptions = CorpusOptions()) -> Report:
    if options.jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            results = list(pool.map(run_entry, entries, [options] * len(entries)))
    else:
        results = [run_entry(e, options) for e in entries]
    return Report(results)


def run_corpus(path=None, options: CorpusOptions = CorpusOptions()) -> Report:
    """Run every entry of a corpus file (the bundled corpus by default)."""
    return run_entries(load_entries(path or bundled_corpus_path()), options)
