"""The 24-dimensional even unimodular lattices built from glue codes.

Each catalog entry glues copies of ADE root lattices along a code of
coset representatives.  Everything is realized in the concatenated
Euclidean coordinates of the components (negated dot product), scaled by
a common denominator so that all basis vectors are integral.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

from . import linalg, rootdata
from .lattice import Lattice

Q = Fraction

_DATA = Path(__file__).parent / "data" / "niemeier.json"


def _load_rows() -> List[dict]:
    with open(_DATA) as fh:
        return json.load(fh)


@lru_cache(maxsize=1)
def catalog_names() -> Tuple[str, ...]:
    return tuple(row["name"] for row in _load_rows())


def _expand_generators(row: dict) -> List[Tuple[int, ...]]:
    words: List[Tuple[int, ...]] = []
    for g in row["generators"]:
        if "word" in g:
            words.append(tuple(g["word"]))
        elif "even_perms" in g:
            base = tuple(g["even_perms"])
            for p in permutations(range(len(base))):
                if _perm_sign(p) == 1:
                    words.append(tuple(base[i] for i in p))
        else:
            pre = tuple(g.get("prefix", ()))
            cyc = tuple(g["cycle"])
            suf = tuple(g.get("suffix", ()))
            for s in range(len(cyc)):
                rot = cyc[s:] + cyc[:s]
                words.append(pre + rot + suf)
    return words


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


@dataclass
class NiemeierLattice:
    name: str
    components: List[Tuple[str, int]]
    offsets: List[int]              # start of each component's coordinate block
    ambient_dim: int
    scale: int                      # coordinates are scale * (true coordinates)
    basis: linalg.IntMat            # 24 rows, scaled integer ambient coordinates
    lattice: Lattice                # 24x24 Gram matrix of the basis
    glue_generators: List[Tuple[int, ...]]

    def component_index(self, family: str, n: int, copy: int = 0):
        hits = [i for i, (f, m) in enumerate(self.components) if f == family and m == n]
        return hits[copy]

    # -- coordinates ---------------------------------------------------------

    def embed_component_vector(self, comp: int, vec: Sequence[Q]) -> List[Q]:
        out = [Q(0)] * self.ambient_dim
        off = self.offsets[comp]
        for i, x in enumerate(vec):
            out[off + i] = x
        return out

    def scaled(self, vec: Sequence[Q]) -> List[int]:
        out = []
        for x in vec:
            y = x * self.scale
            if y.denominator != 1:
                raise ValueError(f"vector not integral at scale {self.scale}")
            out.append(int(y))
        return out

    def form(self, u: Sequence[int], v: Sequence[int]) -> Q:
        return Q(-sum(a * b for a, b in zip(u, v)), self.scale * self.scale)

    def membership_coords(self, scaled_vec: Sequence[int]) -> List[int]:
        """Coordinates of a vector with respect to the lattice basis."""
        return linalg.solve_integral(self.basis, list(scaled_vec))

    # -- glue code -----------------------------------------------------------

    def glue_code(self) -> set:
        zero = tuple(0 for _ in self.components)
        code = {zero}
        frontier = [zero]
        while frontier:
            cur = frontier.pop()
            for g in self.glue_generators:
                nxt = tuple(
                    rootdata.glue_add(f, n, a, b)
                    for (f, n), a, b in zip(self.components, cur, g)
                )
                if nxt not in code:
                    code.add(nxt)
                    frontier.append(nxt)
        return code

    def glue_order(self) -> int:
        return len(self.glue_code())

    def min_norm_of_word(self, word: Sequence[int]) -> Q:
        """Largest possible norm of a lattice vector in this glue class."""
        total = Q(0)
        for (f, n), lab in zip(self.components, word):
            total += _class_min_norm(f, n, lab)
        return total


def _class_min_norm(family: str, n: int, label: int) -> Q:
    """Norm of the minimal vectors of the glue class (0 for the trivial class)."""
    if label == 0:
        return Q(0)
    if family == "A":
        return Q(-label * (n + 1 - label), n + 1)
    if family == "D":
        return Q(-1) if label == 2 else Q(-n, 4)
    if n == 6:
        return Q(-4, 3)
    if n == 7:
        return Q(-3, 2)
    raise ValueError("E8 has no nontrivial glue class")


@lru_cache(maxsize=None)
def niemeier(name: str) -> NiemeierLattice:
    row = next((r for r in _load_rows() if r["name"] == name), None)
    if row is None:
        raise KeyError(f"unknown Niemeier lattice {name!r}")
    comps = [(f, n) for f, n in row["components"]]
    offsets, dim = [], 0
    for f, n in comps:
        offsets.append(dim)
        dim += rootdata.ambient_dim(f, n)
    gens = _expand_generators(row)

    rows_q: List[List[Q]] = []
    for ci, (f, n) in enumerate(comps):
        for r in rootdata.simple_roots(f, n):
            v = [Q(0)] * dim
            for i, x in enumerate(r):
                v[offsets[ci] + i] = x
            rows_q.append(v)
    for word in gens:
        v = [Q(0)] * dim
        for ci, lab in enumerate(word):
            f, n = comps[ci]
            rep = rootdata.glue_rep(f, n, lab)
            for i, x in enumerate(rep):
                v[offsets[ci] + i] = x
        rows_q.append(v)

    scale = 1
    for v in rows_q:
        for x in v:
            scale = scale * x.denominator // _gcd(scale, x.denominator)
    int_rows = [[int(x * scale) for x in v] for v in rows_q]
    h, _ = linalg.hnf(int_rows)
    basis = [r for r in h if any(r)]
    if len(basis) != 24:
        raise ValueError(f"{name}: glue construction has rank {len(basis)}")
    gram = _gram_from_scaled(basis, scale)
    lat = Lattice(gram)
    if abs(lat.det()) != 1:
        raise ValueError(f"{name}: lattice is not unimodular (det {lat.det()})")
    if not lat.is_even():
        raise ValueError(f"{name}: lattice is not even")
    return NiemeierLattice(name, comps, offsets, dim, scale, basis, lat, gens)


def _gram_from_scaled(basis: linalg.IntMat, scale: int) -> linalg.IntMat:
    n = len(basis)
    g = [[0] * n for _ in range(n)]
    s2 = scale * scale
    for i in range(n):
        for j in range(i, n):
            val = -sum(a * b for a, b in zip(basis[i], basis[j]))
            if val % s2:
                raise ValueError("non-integral Gram entry in glue construction")
            g[i][j] = g[j][i] = val // s2
    return g


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def root_names(components: Iterable[Tuple[str, int]]) -> List[str]:
    return sorted(f"{f}{n}" for f, n in components)


def verify_one(name: str) -> Dict[str, object]:
    """Check unimodularity, evenness, rank, glue order and root type."""
    nl = niemeier(name)
    report: Dict[str, object] = {"name": name}
    report["rank"] = nl.lattice.rank
    report["det"] = nl.lattice.det()
    report["even"] = nl.lattice.is_even()
    code = nl.glue_code()
    expect_order = 1
    row = next(r for r in _load_rows() if r["name"] == name)
    for d in row["group"]:
        expect_order *= d
    report["glue_order"] = len(code)
    report["glue_order_expected"] = expect_order
    # every nontrivial glue class must stay clear of norm -2, and the glue
    # words themselves must be even and pair integrally
    for w in code:
        if any(w):
            if nl.min_norm_of_word(w) > Q(-4):
                report["bad_word"] = list(w)
    report["roots_match"] = "bad_word" not in report
    report["ok"] = bool(
        report["rank"] == 24
        and abs(report["det"]) == 1
        and report["even"]
        and report["glue_order"] == expect_order
        and report["roots_match"]
    )
    return report


def verify_catalog() -> List[Dict[str, object]]:
    return [verify_one(name) for name in catalog_names()]
