"""Neron-Severi Gram matrices from fibration descriptions.

Each bundled surface ships the printed 19x19 or 20x20 Gram matrix verbatim
plus a structured description (fiber types, component indices, section
incidences).  Regenerating the matrix from the description and comparing
entrywise guards against transcription drift.  Discriminant forms feed the
transcendental-lattice matching.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .lattice import FiniteQuadraticForm, Lattice, discriminant_form, fqf_match
from .linalg import det_bareiss

Q = Fraction

# closed candidate list for transcendental lattices
CANDIDATES: Dict[str, List[List[int]]] = {
    "[2,0,4]": [[2, 0], [0, 4]],
    "[6,0,12]": [[6, 0], [0, 12]],
    "[12,0,24]": [[12, 0], [0, 24]],
    "[4,0,18]": [[4, 0], [0, 18]],
    "[2,0,36]": [[2, 0], [0, 36]],
    "M(20)": [[0, 0, 3], [0, 4, 0], [3, 0, 0]],
}


def data_dir() -> Path:
    env = os.environ.get("K3FORGE_DATA")
    if env:
        return Path(env)
    return Path(__file__).parent / "data"


def ns_ids() -> List[str]:
    return sorted(p.stem for p in (data_dir() / "ns").glob("*.json"))


def load_ns(name: str) -> dict:
    with open(data_dir() / "ns" / f"{name}.json") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# regeneration from descriptions

_DEFAULT_EDGES = {
    # Bourbaki E6 numbering for IV*
    "IV*": {(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)},
    # star for I0* (third listed component central)
    "I0*": {(1, 3), (2, 3), (3, 4)},
}


def _comp_pairing(fiber_spec, i: int, j: int) -> int:
    if i == j:
        return -2
    kind = fiber_spec["type"] if isinstance(fiber_spec, dict) else fiber_spec
    a, b = min(i, j), max(i, j)
    if isinstance(fiber_spec, dict) and "edges" in fiber_spec:
        return 1 if [a, b] in fiber_spec["edges"] or (a, b) in fiber_spec["edges"] else 0
    if kind[0] == "I" and kind[1:].isdigit():
        return 1 if b - a == 1 else 0
    if kind in _DEFAULT_EDGES:
        return 1 if (a, b) in _DEFAULT_EDGES[kind] else 0
    if kind.endswith("*") and kind[1:-1].isdigit():
        # near fork 1, 2 onto 3, then the multiplicity-two chain
        edges = {(1, 3), (2, 3)} | {(k, k + 1) for k in range(3, 30)}
        return 1 if (a, b) in edges else 0
    raise ValueError(f"no adjacency rule for {kind}")


def gram_from_description(desc: dict) -> List[List[int]]:
    els = desc["elements"]
    fibers = desc["fibers"]
    meets = desc.get("meets", {})
    pairs = desc.get("pairs", {})
    n = len(els)
    g = [[0] * n for _ in range(n)]

    def kind_of(el):
        return el.get("kind")

    for i, a in enumerate(els):
        for j, b in enumerate(els):
            if j < i:
                continue
            ka, kb = kind_of(a), kind_of(b)
            val = 0
            if ka == "zero" and kb == "zero":
                val = -2
            elif {ka, kb} == {"zero", "fiber"}:
                val = 1
            elif ka == "fiber" and kb == "fiber":
                val = 0
            elif {ka, kb} == {"fiber", "section"}:
                val = 1
            elif ka == "section" and kb == "section":
                if i == j:
                    val = -2
                else:
                    key1 = f"{a['name']}|{b['name']}"
                    key2 = f"{b['name']}|{a['name']}"
                    val = pairs.get(key1, pairs.get(key2, 0))
            elif ka == "comp" and kb == "comp":
                if a["fiber"] == b["fiber"]:
                    spec = fibers[a["fiber"]]
                    if isinstance(spec, dict) and "edges" in spec:
                        spec = {"type": spec["type"],
                                "edges": [tuple(e) for e in spec["edges"]]}
                    val = _comp_pairing(spec, a["i"], b["i"])
                else:
                    val = 0
            elif {ka, kb} == {"comp", "section"}:
                comp = a if ka == "comp" else b
                sec = b if ka == "comp" else a
                val = 1 if meets.get(sec["name"], {}).get(comp["fiber"]) == comp["i"] else 0
            elif {ka, kb} == {"comp", "zero"} or {ka, kb} == {"comp", "fiber"}:
                val = 0
            elif {ka, kb} == {"zero", "section"}:
                sec = a if ka == "section" else b
                val = pairs.get(f"{sec['name']}|zero", 0)
            g[i][j] = g[j][i] = val
    return g


# ---------------------------------------------------------------------------
# matching


def match_transcendental(ns_fq: FiniteQuadraticForm, cand_gram: List[List[int]]):
    cand = Lattice([list(r) for r in cand_gram])
    if abs(cand.det()) != ns_fq.group_order:
        raise ValueError("candidate determinant does not match the group order")
    fq = discriminant_form(cand)
    return fqf_match(ns_fq, fq, -1)


def find_candidate(ns_gram: List[List[int]]) -> Tuple[Optional[str], Optional[list]]:
    fq = discriminant_form(Lattice([list(r) for r in ns_gram]))
    for name, cand in CANDIDATES.items():
        if abs(det_bareiss(cand)) != fq.group_order:
            continue
        wit = match_transcendental(fq, cand)
        if wit is not None:
            return name, [list(map(int, w)) for w in wit]
    return None, None


def verify_ns(name: str) -> dict:
    obj = load_ns(name)
    gram = [list(map(int, r)) for r in obj["gram"]]
    out = {"id": name, "size": len(gram)}
    sym = all(gram[i][j] == gram[j][i] for i in range(len(gram)) for j in range(len(gram)))
    out["symmetric"] = sym
    out["det"] = det_bareiss(gram)
    ok = sym and out["det"] == obj["det"]
    if "description" in obj:
        regen = gram_from_description(obj["description"])
        out["regenerated_match"] = regen == gram
        ok = ok and out["regenerated_match"]
    if "candidate" in obj:
        cand_name, wit = find_candidate(gram)
        out["candidate"] = cand_name
        out["witness"] = wit
        ok = ok and cand_name == obj["candidate"]
    out["status"] = "pass" if ok else "fail"
    return out


def verify_all(jobs: int = 1) -> List[dict]:
    return [verify_ns(name) for name in ns_ids()]
