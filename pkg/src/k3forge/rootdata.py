"""ADE root lattices: simple roots, Gram matrices, glue vectors.

Lattices are realized in Euclidean coordinates with the *negative* of the
standard dot product, so every Gram matrix here is negative definite:

* A_n lives in the sum-zero hyperplane of R^(n+1), a_i = eps_i - eps_(i+1);
* D_l lives in R^l, d_i = eps_i - eps_(i+1) for i < l and d_l = eps_(l-1)+eps_l;
* E_8 uses the even coordinate system in R^8 (Bourbaki numbering), with
  E_7 and E_6 spanned by the first 7 resp. 6 simple roots.

Glue vectors are the standard coset representatives of L*/L, labeled the
way the Niemeier glue codes use them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Vec = Tuple[Fraction, ...]

HALF = Fraction(1, 2)


def _fr(*xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def ambient_dim(family: str, n: int) -> int:
    if family == "A":
        return n + 1
    if family == "D":
        return n
    if family == "E":
        return 8
    raise ValueError(f"unknown family {family!r}")


def validate_spec(family: str, n: int) -> None:
    ok = (
        (family == "A" and n >= 1)
        or (family == "D" and n >= 4)
        or (family == "E" and n in (6, 7, 8))
    )
    if not ok:
        raise ValueError(f"invalid root lattice {family}{n}")


_E8_SIMPLE: List[Vec] = [
    _fr(HALF, -HALF, -HALF, -HALF, -HALF, -HALF, -HALF, HALF),  # e1
    _fr(1, 1, 0, 0, 0, 0, 0, 0),  # e2
    _fr(-1, 1, 0, 0, 0, 0, 0, 0),  # e3
    _fr(0, -1, 1, 0, 0, 0, 0, 0),  # e4
    _fr(0, 0, -1, 1, 0, 0, 0, 0),  # e5
    _fr(0, 0, 0, -1, 1, 0, 0, 0),  # e6
    _fr(0, 0, 0, 0, -1, 1, 0, 0),  # e7
    _fr(0, 0, 0, 0, 0, -1, 1, 0),  # e8
]


def simple_roots(family: str, n: int) -> List[Vec]:
    """Simple roots in ambient coordinates, indexed 1..n as in Bourbaki."""
    validate_spec(family, n)
    if family == "A":
        dim = n + 1
        out = []
        for i in range(n):
            v = [Fraction(0)] * dim
            v[i] = Fraction(1)
            v[i + 1] = Fraction(-1)
            out.append(tuple(v))
        return out
    if family == "D":
        out = []
        for i in range(n - 1):
            v = [Fraction(0)] * n
            v[i] = Fraction(1)
            v[i + 1] = Fraction(-1)
            out.append(tuple(v))
        v = [Fraction(0)] * n
        v[n - 2] = Fraction(1)
        v[n - 1] = Fraction(1)
        out.append(tuple(v))
        return out
    return [ _E8_SIMPLE[i] for i in range(n) ]


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum(a * b for a, b in zip(x, y))


def form(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    """The lattice bilinear form (negated dot product)."""
    return -dot(x, y)


def gram(family: str, n: int) -> List[List[int]]:
    roots = simple_roots(family, n)
    g = []
    for r in roots:
        g.append([int(form(r, s)) for s in roots])
    return g


def glue_group_order(family: str, n: int) -> int:
    if family == "A":
        return n + 1
    if family == "D":
        return 4
    return {6: 3, 7: 2, 8: 1}[family and n]


def glue_add(family: str, n: int, a: int, b: int) -> int:
    """Add two glue labels in the discriminant group of the component."""
    if family == "A":
        return (a + b) % (n + 1)
    if family == "D":
        if n % 2 == 0:
            return a ^ b  # Klein four group on labels 0..3
        return (a + b) % 4
    if family == "E":
        return (a + b) % glue_group_order(family, n)
    raise ValueError(family)


def glue_rep(family: str, n: int, label: int) -> Vec:
    """Standard coset representative of glue class `label` in L*/L."""
    validate_spec(family, n)
    order = glue_group_order(family, n)
    if not 0 <= label < order:
        raise ValueError(f"glue label {label} out of range for {family}{n}")
    if label == 0:
        return tuple([Fraction(0)] * ambient_dim(family, n))
    if family == "A":
        # [i] has n+1-i coordinates i/(n+1) followed by i coordinates i/(n+1)-1
        i = label
        c = Fraction(i, n + 1)
        return tuple([c] * (n + 1 - i) + [c - 1] * i)
    if family == "D":
        if label == 1:
            return tuple([HALF] * n)
        if label == 2:
            return tuple([Fraction(0)] * (n - 1) + [Fraction(1)])
        return tuple([HALF] * (n - 1) + [-HALF])
    # E6 / E7 weights expressed through the simple roots
    roots = simple_roots("E", n)
    if n == 6:
        coeffs = [2, 3, 4, 6, 5, 4]
        den = 3
        if label == 2:
            coeffs = [-c for c in coeffs]
    else:
        coeffs = [2, 3, 4, 6, 5, 4, 3]
        den = 2
    v = [Fraction(0)] * 8
    for c, r in zip(coeffs, roots):
        for k in range(8):
            v[k] -= Fraction(c, den) * r[k]
    return tuple(v)


def root_system(family: str, n: int) -> List[Vec]:
    """All roots (norm -2 vectors), both signs included."""
    validate_spec(family, n)
    out: List[Vec] = []
    if family == "A":
        dim = n + 1
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    v = [Fraction(0)] * dim
                    v[i], v[j] = Fraction(1), Fraction(-1)
                    out.append(tuple(v))
        return out
    if family == "D":
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        v = [Fraction(0)] * n
                        v[i], v[j] = Fraction(si), Fraction(sj)
                        out.append(tuple(v))
        return out
    # E family: roots of E8 lying in the span of the simple roots
    e8: List[Vec] = []
    for i in range(8):
        for j in range(i + 1, 8):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [Fraction(0)] * 8
                    v[i], v[j] = Fraction(si), Fraction(sj)
                    e8.append(tuple(v))
    for signs in range(256):
        v = [HALF if (signs >> k) & 1 == 0 else -HALF for k in range(8)]
        if sum(1 for x in v if x < 0) % 2 == 0:
            e8.append(tuple(v))
    if n == 8:
        return e8
    from .linalg import solve_rational  # local import to avoid a cycle

    basis = [list(map(Fraction, r)) for r in simple_roots("E", n)]
    span: List[Vec] = []
    mat = [[int(2 * x) for x in row] for row in basis]  # doubled to stay integral
    for r in e8:
        try:
            solve_rational(mat, [2 * x for x in r])
        except ValueError:
            continue
        span.append(r)
    return span
