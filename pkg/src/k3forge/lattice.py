"""Even-lattice calculus: discriminant forms, embeddings, root types.

A Lattice is a symmetric integer Gram matrix, optionally carrying the
coordinates of its basis inside an ambient lattice.  Embedding vectors are
always written in the basis coordinates of their ambient lattice, so the
ambient Gram matrix is the only bilinear form ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .linalg import IntMat, det_bareiss, hnf, integer_kernel, mat_mul, snf, transpose

Q = Fraction


@dataclass
class Lattice:
    gram: IntMat
    basis: Optional[IntMat] = None  # rows: coordinates in the ambient lattice

    def __post_init__(self):
        if not linalg.is_symmetric(self.gram):
            raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return det_bareiss(self.gram)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def is_negative_definite(self) -> bool:
        try:
            linalg._check_positive_definite([[-x for x in row] for row in self.gram])
            return True
        except ValueError:
            return False

    def to_json(self) -> dict:
        out = {"gram": [list(r) for r in self.gram]}
        if self.basis is not None:
            out["basis"] = [list(r) for r in self.basis]
        return out

    @staticmethod
    def from_json(obj: dict) -> "Lattice":
        return Lattice([list(map(int, r)) for r in obj["gram"]],
                       [list(map(int, r)) for r in obj["basis"]] if obj.get("basis") else None)


@dataclass
class EmbeddingMatrix:
    vectors: IntMat  # rows: images of the sublattice basis, ambient coordinates
    ambient: Lattice

    def induced_gram(self) -> IntMat:
        g = mat_mul(mat_mul(self.vectors, self.ambient.gram), transpose(self.vectors))
        return g


# ---------------------------------------------------------------------------
# discriminant forms


def _reduce_mod(x: Q, modulus: int) -> Q:
    r = x - (x / modulus).__floor__() * modulus
    return r


def _inverse_gram(gram: IntMat) -> List[List[Q]]:
    n = len(gram)
    aug = [[Q(gram[i][j]) for j in range(n)] + [Q(int(i == k)) for k in range(n)]
           for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ValueError("degenerate Gram matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


@dataclass
class FiniteQuadraticForm:
    """Discriminant group with its Q/2Z quadratic form.

    Generators are integer vectors in the dual-basis coordinates of the
    source lattice; the inverse Gram matrix evaluates the form.
    """

    orders: List[int]
    gens: IntMat
    graminv: List[List[Q]]

    @property
    def group_order(self) -> int:
        n = 1
        for d in self.orders:
            n *= d
        return n

    def elements(self):
        return product(*(range(d) for d in self.orders))

    def _vec(self, elt: Sequence[int]) -> List[Q]:
        n = len(self.graminv)
        v = [Q(0)] * n
        for c, g in zip(elt, self.gens):
            for i in range(n):
                v[i] += c * g[i]
        return v

    def q(self, elt: Sequence[int]) -> Q:
        """q-value, canonically reduced into [0, 2)."""
        v = self._vec(elt)
        val = sum(v[i] * self.graminv[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))
        return _reduce_mod(val, 2)

    def b(self, e1: Sequence[int], e2: Sequence[int]) -> Q:
        """Bilinear value, canonically reduced into [0, 1)."""
        v, w = self._vec(e1), self._vec(e2)
        val = sum(v[i] * self.graminv[i][j] * w[j] for i in range(len(v)) for j in range(len(v)))
        return _reduce_mod(val, 1)

    def add(self, e1: Sequence[int], e2: Sequence[int]) -> Tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(e1, e2, self.orders))

    def neg(self, e: Sequence[int]) -> Tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(e, self.orders))

    def zero(self) -> Tuple[int, ...]:
        return tuple(0 for _ in self.orders)

    def order_of(self, e: Sequence[int]) -> int:
        from math import gcd, lcm

        n = 1
        for a, d in zip(e, self.orders):
            n = lcm(n, d // gcd(a, d))
        return n

    def subgroup(self, gens: Sequence[Sequence[int]]) -> frozenset:
        seen = {self.zero()}
        frontier = [self.zero()]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = self.add(cur, g)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return frozenset(seen)

    def gen_vectors_dualbasis(self) -> IntMat:
        return [list(g) for g in self.gens]

    def gen_vector_in_basis(self, elt: Sequence[int]) -> List[Q]:
        """Coordinates of a lift of `elt` with respect to the lattice basis."""
        v = self._vec(elt)
        n = len(v)
        coords = [sum(v[i] * self.graminv[i][j] for i in range(n)) for j in range(n)]
        return [_reduce_mod(c, 1) for c in coords]

    def q_str(self, elt: Sequence[int]) -> str:
        return str(balanced_mod2(self.q(elt)))

    def to_json(self) -> dict:
        return {
            "orders": list(self.orders),
            "q": [str(balanced_mod2(self.q(e))) for e in _unit_elements(self.orders)],
            "b": [
                [str(self.b(e1, e2)) for e2 in _unit_elements(self.orders)]
                for e1 in _unit_elements(self.orders)
            ],
        }


def _unit_elements(orders: Sequence[int]):
    out = []
    for i in range(len(orders)):
        e = [0] * len(orders)
        e[i] = 1
        out.append(tuple(e))
    return out


def balanced_mod2(x: Q) -> Q:
    """Representative of x mod 2 in (-1, 1]."""
    r = _reduce_mod(x, 2)
    return r if r <= 1 else r - 2


def discriminant_form(lat: Lattice) -> FiniteQuadraticForm:
    """Discriminant group and quadratic form of an even lattice.

    Generators are the rows of V^{-1} (for the invariant factors > 1) read
    in the dual basis, where U * gram * V is the Smith normal form.
    """
    if not lat.is_even():
        raise ValueError("lattice must be even")
    gram = lat.gram
    d, u, v = snf(gram)
    n = len(gram)
    if any(d[i][i] == 0 for i in range(n)):
        raise ValueError("degenerate lattice")
    vinv = linalg.invert_unimodular(v)
    orders = [d[i][i] for i in range(n) if d[i][i] > 1]
    gens = [list(vinv[i]) for i in range(n) if d[i][i] > 1]
    return FiniteQuadraticForm(orders, gens, _inverse_gram(gram))


# ---------------------------------------------------------------------------
# embeddings


def is_primitive(emb: EmbeddingMatrix) -> bool:
    """True iff the gcd of the maximal minors is 1 (all SNF invariants 1)."""
    vecs = emb.vectors
    if linalg.rank(vecs) != len(vecs):
        raise ValueError("embedding rows are dependent")
    diag = linalg.snf_diagonal(vecs)
    return all(x == 1 for x in diag[: len(vecs)])


def orthogonal_complement(amb: Lattice, emb: EmbeddingMatrix) -> Lattice:
    """Saturated sublattice of `amb` orthogonal to the embedded vectors."""
    pair = mat_mul(emb.vectors, amb.gram)
    k = integer_kernel(pair)
    gram = mat_mul(mat_mul(k, amb.gram), transpose(k))
    return Lattice(gram, basis=k)


def primitive_closure(amb: Lattice, emb: EmbeddingMatrix) -> Tuple[Lattice, List[int]]:
    """Smallest saturated sublattice containing the image, with quotient."""
    sat = linalg.saturate(emb.vectors)
    gram = mat_mul(mat_mul(sat, amb.gram), transpose(sat))
    invs = [x for x in linalg.snf_diagonal(emb.vectors) if x > 1]
    return Lattice(gram, basis=sat), invs


# ---------------------------------------------------------------------------
# root classification


@dataclass
class RootComponent:
    family: str
    n: int
    simple_roots: IntMat  # rows, in the coordinates of the analyzed lattice

    @property
    def name(self) -> str:
        return f"{self.family}{self.n}"

    def det(self) -> int:
        if self.family == "A":
            return self.n + 1
        if self.family == "D":
            return 4
        return {6: 3, 7: 2, 8: 1}[self.n]


@dataclass
class RootDecomposition:
    components: List[RootComponent]

    @property
    def names(self) -> List[str]:
        return [c.name for c in sorted(self.components, key=lambda c: (c.family, c.n))]

    @property
    def rank(self) -> int:
        return sum(c.n for c in self.components)

    def det(self) -> int:
        d = 1
        for c in self.components:
            d *= c.det()
        return d

    def all_rows(self) -> IntMat:
        rows: IntMat = []
        for c in self.components:
            rows.extend(c.simple_roots)
        return rows


def root_type(lat: Lattice) -> RootDecomposition:
    """ADE decomposition of the sublattice spanned by the norm -2 vectors."""
    if lat.rank == 0:
        return RootDecomposition([])
    if not lat.is_negative_definite():
        raise ValueError("root classification needs a negative definite lattice")
    gram = lat.gram
    pairs = linalg.short_vectors(gram, 2)
    roots = []
    for v in pairs:
        norm = sum(v[i] * gram[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))
        if norm == -2:
            roots.append(tuple(v))
    if not roots:
        return RootDecomposition([])
    allroots = set(roots) | {tuple(-x for x in v) for v in roots}
    maxc = max(abs(x) for v in allroots for x in v)
    m = 2 * maxc + 1

    def phi(v) -> int:
        acc = 0
        for x in reversed(v):
            acc = acc * m + x
        return acc

    positives = {v for v in allroots if phi(v) > 0}

    def bil(v, w) -> int:
        return sum(v[i] * gram[i][j] * w[j] for i in range(len(v)) for j in range(len(w)))

    simples = []
    for r in positives:
        decomposable = any(
            tuple(a - b for a, b in zip(r, p)) in positives for p in positives if p != r
        )
        if not decomposable:
            simples.append(r)
    simples.sort(key=phi)
    # Dynkin graph on the simple roots
    adj: Dict[int, List[int]] = {i: [] for i in range(len(simples))}
    for i in range(len(simples)):
        for j in range(i + 1, len(simples)):
            if bil(simples[i], simples[j]) == 1:
                adj[i].append(j)
                adj[j].append(i)
    seen = set()
    comps: List[RootComponent] = []
    for start in range(len(simples)):
        if start in seen:
            continue
        stack, nodes = [start], []
        seen.add(start)
        while stack:
            cur = stack.pop()
            nodes.append(cur)
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        comps.append(_classify_component(nodes, adj, simples))
    comps.sort(key=lambda c: (c.family, c.n, c.simple_roots))
    return RootDecomposition(comps)


def _classify_component(nodes, adj, simples) -> RootComponent:
    deg = {i: len([j for j in adj[i] if j in nodes]) for i in nodes}
    n = len(nodes)
    branch = [i for i in nodes if deg[i] == 3]
    if any(deg[i] > 3 for i in nodes) or len(branch) > 1:
        raise ValueError("not a simply-laced Dynkin component")
    if not branch:
        # path: order from one end deterministically
        if n == 1:
            return RootComponent("A", 1, [list(simples[nodes[0]])])
        ends = [i for i in nodes if deg[i] == 1]
        ends.sort(key=lambda i: simples[i])
        order = _walk_path(ends[0], adj, set(nodes))
        return RootComponent("A", n, [list(simples[i]) for i in order])
    c = branch[0]
    arms = []
    for first in adj[c]:
        if first not in nodes:
            continue
        arm = [first]
        prev, cur = c, first
        while True:
            nxts = [j for j in adj[cur] if j != prev and j in nodes]
            if not nxts:
                break
            prev, cur = cur, nxts[0]
            arm.append(cur)
        arms.append(arm)
    arms.sort(key=lambda a: (len(a), [simples[i] for i in a]))
    lens = sorted(len(a) for a in arms)
    if lens[0] == 1 and lens[1] == 1:
        # D_n: the long arm becomes d_1..d_(n-3), the two short arms the fork
        long = max(arms, key=len)
        shorts = [a for a in arms if a is not long]
        chain = [long[i] for i in range(len(long) - 1, -1, -1)] + [c]
        order = chain + [shorts[0][0], shorts[1][0]]
        return RootComponent("D", n, [list(simples[i]) for i in order])
    # E type: arms (1, 2, n-4)
    if lens != [1, 2, n - 4] or n not in (6, 7, 8):
        raise ValueError(f"unrecognized branch component of size {n}")
    arm1 = next(a for a in arms if len(a) == 1)
    arm2 = next(a for a in arms if len(a) == 2 and a is not arm1)
    arml = next(a for a in arms if a is not arm1 and a is not arm2)
    order = [arm2[1], arm1[0], arm2[0], c] + arml
    return RootComponent("E", n, [list(simples[i]) for i in order])


def _walk_path(start, adj, nodes):
    order = [start]
    prev = None
    cur = start
    while True:
        nxts = [j for j in adj[cur] if j != prev and j in nodes]
        if not nxts:
            return order
        prev, cur = cur, nxts[0]
        order.append(cur)


# ---------------------------------------------------------------------------
# overlattices


def overlattices(lat: Lattice) -> List[Tuple[Lattice, List[Tuple[int, ...]]]]:
    """Even overlattices via isotropic subgroups of the discriminant group.

    Returns (overlattice, sorted subgroup elements) pairs, the trivial
    subgroup (the lattice itself) included.  Intended for small groups.
    """
    fq = discriminant_form(lat)
    if fq.group_order > 10 ** 4:
        raise ValueError("discriminant group too large for overlattice search")
    iso = [e for e in fq.elements() if fq.q(e) == 0]
    subgroups = {frozenset({fq.zero()})}
    frontier = [frozenset({fq.zero()})]
    while frontier:
        base = frontier.pop()
        for e in iso:
            if e in base:
                continue
            gens = list(base) + [e]
            sub = fq.subgroup(gens)
            if sub in subgroups:
                continue
            if all(fq.q(x) == 0 for x in sub):
                subgroups.add(sub)
                frontier.append(sub)
    out = []
    n = lat.rank
    for sub in sorted(subgroups, key=lambda s: (len(s), sorted(s))):
        lifts = [fq.gen_vector_in_basis(e) for e in sorted(sub) if any(e)]
        over = _overlattice_from_lifts(lat, lifts)
        out.append((over, sorted(sub)))
    return out


def _overlattice_from_lifts(lat: Lattice, lifts: List[List[Q]]) -> Lattice:
    n = lat.rank
    if not lifts:
        return Lattice([list(r) for r in lat.gram], basis=linalg.identity(n))
    den = 1
    for row in lifts:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    rows = [[den if i == j else 0 for j in range(n)] for i in range(n)]
    for row in lifts:
        rows.append([int(x * den) for x in row])
    h, _ = hnf(rows)
    basis = [r for r in h if any(r)]
    gram = [
        [
            _exact_div(
                sum(basis[i][a] * lat.gram[a][b] * basis[j][b] for a in range(n) for b in range(n)),
                den * den,
            )
            for j in range(len(basis))
        ]
        for i in range(len(basis))
    ]
    return Lattice(gram, basis=None)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _exact_div(a: int, b: int) -> int:
    if a % b:
        raise ValueError("overlattice Gram is not integral")
    return a // b


# ---------------------------------------------------------------------------
# finite quadratic form matching


def fqf_match(f1: FiniteQuadraticForm, f2: FiniteQuadraticForm, sign: int):
    """Search for an isomorphism with q2 = sign * q1; None if there is none.

    Returns the list of images (elements of f2) of f1's generators.
    """
    if f1.group_order != f2.group_order:
        return None
    if not f1.orders:
        return []
    elements = list(f2.elements())
    by_order: Dict[int, List[Tuple[int, ...]]] = {}
    for e in elements:
        by_order.setdefault(f2.order_of(e), []).append(e)
    gens = _unit_elements(f1.orders)
    target_q = [_reduce_mod(sign * f1.q(g), 2) for g in gens]
    target_b = [
        [_reduce_mod(sign * f1.b(gens[i], gens[j]), 1) for j in range(len(gens))]
        for i in range(len(gens))
    ]
    chosen: List[Tuple[int, ...]] = []

    def backtrack(i: int) -> bool:
        if i == len(gens):
            return len(f2.subgroup(chosen)) == f2.group_order
        want_order = f1.orders[i]
        for cand in by_order.get(want_order, []):
            if f2.q(cand) != target_q[i]:
                continue
            if any(f2.b(cand, chosen[j]) != target_b[i][j] for j in range(i)):
                continue
            chosen.append(cand)
            if backtrack(i + 1):
                return True
            chosen.pop()
        return False

    if backtrack(0):
        return list(chosen)
    return None
