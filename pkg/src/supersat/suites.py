"""Named verification batteries aggregating the per-module checks.

Each suite returns a JSON-ready document with a top-level passed flag and
one entry per member check. Suites are meant to be cheap enough to run on
every change; the heavyweight exact counts live in the test suite.
"""
from __future__ import annotations

import time

from .constructions import counterexample_pattern, kneser
from .criticality import critical_subsets, is_color_k_critical
from .embeddings import admissibility_report
from .formulas import (
    counterexample_threshold,
    main_term_ratio,
    verify_counterexample,
    verify_part_window,
    verify_petersen,
)

RATIO_N = 10**6


def suite_part_window() -> dict:
    """Planted-edge closed form against evaluator and brute count over the
    small-n window, plus the claim that part 1 realizes the minimum."""
    start = time.perf_counter()
    report = verify_part_window()
    members = []
    for row in report.details["rows"]:
        members.append(
            {
                "name": f"n={row['n']} part={row['part']}",
                "passed": row["agree"],
                "formula": row["formula"],
                "evaluator": row["evaluator"],
                "counted": row["counted"],
            }
        )
    by_n: dict[int, list] = {}
    for row in report.details["rows"]:
        by_n.setdefault(row["n"], []).append(row["formula"])
    for n, values in sorted(by_n.items()):
        members.append(
            {
                "name": f"n={n} minimum at part 1",
                "passed": values[0] == min(values),
                "values": values,
            }
        )
    passed = all(m["passed"] for m in members)
    return _finish("part-window", passed, members, start)


def suite_kneser() -> dict:
    """Criticality of the two smallest Kneser graphs and the full type scan
    for the Petersen graph."""
    start = time.perf_counter()
    members = []
    for t in (5, 6):
        witness = is_color_k_critical(kneser(t), 3)
        members.append(
            {
                "name": f"criticality t={t}",
                "passed": witness is not None,
                "witness_matching": list(witness.matching) if witness else None,
            }
        )
    records = critical_subsets(kneser(5))
    members.append(
        {
            "name": "critical subsets stable t=5",
            "passed": bool(records) and all(rec.stable for rec in records),
            "subsets": len(records),
        }
    )
    report = admissibility_report(kneser(5), 2, 3)
    members.append(
        {
            "name": "admissibility t=5",
            "passed": report["admissible"],
            "types_total": report["types_total"],
            "types_inadmissible": report["types_inadmissible"],
        }
    )
    passed = all(m["passed"] for m in members)
    return _finish("kneser", passed, members, start)


def suite_counterexample() -> dict:
    """Threshold formula and exact main-term ratios for the planted-star
    against planted-edges contest."""
    start = time.perf_counter()
    members = []
    for k in (2, 3):
        thr = counterexample_threshold(k)
        rows = []
        ok = True
        for q in range(max(1, thr - 2), thr + 3):
            ratio = main_term_ratio(RATIO_N, k, q)
            beats = ratio < 1
            rep = verify_counterexample(RATIO_N, k, q, mode="formula")
            agree = rep.agreement and beats == (q >= thr)
            ok = ok and agree
            rows.append(
                {
                    "q": q,
                    "ratio": f"{ratio.numerator}/{ratio.denominator}",
                    "beats": beats,
                    "agree": agree,
                }
            )
        members.append(
            {"name": f"threshold k={k}", "passed": ok, "threshold": thr, "rows": rows}
        )
    passed = all(m["passed"] for m in members)
    return _finish("counterexample", passed, members, start)


def suite_petersen() -> dict:
    """Petersen planted-edge closed form against evaluator and brute count."""
    start = time.perf_counter()
    report = verify_petersen()
    members = [
        {
            "name": f"n={row['n']}",
            "passed": row["agree"],
            "formula": row["formula"],
            "evaluator": row["evaluator"],
            "counted": row["counted"],
        }
        for row in report.details["rows"]
    ]
    passed = all(m["passed"] for m in members)
    return _finish("petersen", passed, members, start)


def _finish(name: str, passed: bool, members: list, start: float) -> dict:
    def enc(x):
        if isinstance(x, bool) or x is None:
            return x
        if isinstance(x, int):
            return str(x)
        if isinstance(x, dict):
            return {str(k): enc(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [enc(v) for v in x]
        return x

    return {
        "schema": 1,
        "suite": name,
        "passed": passed,
        "members": [enc(m) for m in members],
        "elapsed_seconds": round(time.perf_counter() - start, 3),
    }


SUITES = {
    "part-window": suite_part_window,
    "kneser": suite_kneser,
    "counterexample": suite_counterexample,
    "petersen": suite_petersen,
}


def run_suite(name: str) -> dict:
    if name == "all":
        start = time.perf_counter()
        docs = [SUITES[n]() for n in SUITES]
        return {
            "schema": 1,
            "suite": "all",
            "passed": all(d["passed"] for d in docs),
            "members": docs,
            "elapsed_seconds": round(time.perf_counter() - start, 3),
        }
    if name not in SUITES:
        known = ", ".join(sorted(SUITES) + ["all"])
        raise ValueError(f"unknown suite {name!r} (known: {known})")
    return SUITES[name]()


def summary_table(doc: dict) -> str:
    """Fixed-width pass/fail table for terminal output."""
    lines = []
    title = doc["suite"]
    lines.append(f"suite {title}: {'PASS' if doc['passed'] else 'FAIL'}")
    for m in doc["members"]:
        if "suite" in m:
            lines.append(summary_table(m))
            continue
        status = "pass" if m["passed"] else "FAIL"
        lines.append(f"  [{status}] {m['name']}")
    return "\n".join(lines)
