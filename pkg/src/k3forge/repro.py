"""Reproduction suites: run a bundled dataset and report per-item status."""

from __future__ import annotations

import json
import time
from typing import Callable, Dict, List

from . import corpus, fibration, ns
from .niemeier import verify_catalog

SUITE_ALIASES = {
    "table2": "specialized",
    "thm51": "extremal",
    "sec6": "highrank",
}

FRAME_TABLES = ("specialized", "extremal", "highrank", "selfisog")


def available_suites() -> List[str]:
    return ["niemeier", "embeddings", "specialized", "extremal", "highrank",
            "selfisog", "corpus", "ns", "all"]


def run_suite(suite: str, jobs: int = 1) -> dict:
    suite = SUITE_ALIASES.get(suite, suite)
    t0 = time.time()
    if suite == "all":
        parts = [run_suite(s, jobs) for s in available_suites() if s != "all"]
        items = [it for p in parts for it in p["items"]]
        return _report("all", items, time.time() - t0)
    if suite == "niemeier":
        items = [
            {"id": r["name"], "status": "pass" if r["ok"] else "fail",
             "computed": {k: v for k, v in r.items() if k not in ("name", "ok")}}
            for r in verify_catalog()
        ]
    elif suite == "embeddings":
        items = fibration.verify_embeddings(jobs)
    elif suite in FRAME_TABLES:
        items = fibration.verify_table(suite, jobs)
    elif suite == "corpus":
        items = corpus.audit_corpus(jobs)
    elif suite == "ns":
        items = ns.verify_all(jobs)
    else:
        raise KeyError(f"unknown suite {suite!r}")
    return _report(suite, items, time.time() - t0)


def _report(suite: str, items: List[dict], wall: float) -> dict:
    counts: Dict[str, int] = {}
    for it in items:
        counts[it["status"]] = counts.get(it["status"], 0) + 1
    return {
        "suite": suite,
        "items": sorted(items, key=lambda it: str(it.get("id"))),
        "counts": counts,
        "ok": counts.get("fail", 0) == 0,
        "wall_seconds": round(wall, 2),
    }


def render_text(report: dict) -> str:
    lines = [f"suite {report['suite']}: {report['counts']} in {report['wall_seconds']}s"]
    for it in report["items"]:
        status = it["status"]
        line = f"  [{status:>4}] {it.get('id')}"
        if status == "fail":
            if "error" in it:
                line += f"  error: {it['error']}"
            elif "computed" in it:
                line += f"  computed: {json.dumps(it['computed'], default=str)}"
        lines.append(line)
    return "\n".join(lines)
