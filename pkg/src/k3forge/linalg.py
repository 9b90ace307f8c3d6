"""Exact integer and rational linear algebra.

Matrices are lists of lists of Python ints (arbitrary precision) unless a
function says otherwise.  Everything here is a pure function; inputs are
never mutated.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

IntMat = List[List[int]]
IntVec = List[int]


def mat_copy(a: Sequence[Sequence[int]]) -> IntMat:
    return [list(row) for row in a]


def identity(n: int) -> IntMat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n: int, m: int) -> IntMat:
    return [[0] * m for _ in range(n)]


def transpose(a: Sequence[Sequence[int]]) -> IntMat:
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMat:
    if not a:
        return []
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> IntVec:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def is_symmetric(a: Sequence[Sequence[int]]) -> bool:
    n = len(a)
    return all(len(r) == n for r in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i)
    )


def det_bareiss(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


# ---------------------------------------------------------------------------
# Hermite normal form


def hnf(a: Sequence[Sequence[int]]) -> Tuple[IntMat, IntMat]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular, U*A = H, pivots positive, entries
    above each pivot reduced into [0, pivot), zero rows at the bottom.
    """
    h = mat_copy(a)
    n = len(h)
    m = len(h[0]) if h else 0
    u = identity(n)
    row = 0
    for col in range(m):
        piv = None
        for i in range(row, n):
            if h[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        h[row], h[piv] = h[piv], h[row]
        u[row], u[piv] = u[piv], u[row]
        for i in range(row + 1, n):
            while h[i][col] != 0:
                q = h[row][col] // h[i][col]
                for j in range(m):
                    h[row][j] -= q * h[i][j]
                for j in range(n):
                    u[row][j] -= q * u[i][j]
                h[row], h[i] = h[i], h[row]
                u[row], u[i] = u[i], u[row]
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        for i in range(row):
            q = h[i][col] // h[row][col]
            if q:
                for j in range(m):
                    h[i][j] -= q * h[row][j]
                for j in range(n):
                    u[i][j] -= q * u[row][j]
        row += 1
        if row == n:
            break
    return h, u


def rank(a: Sequence[Sequence[int]]) -> int:
    h, _ = hnf(a)
    return sum(1 for r in h if any(r))


# ---------------------------------------------------------------------------
# Smith normal form


def snf(a: Sequence[Sequence[int]]) -> Tuple[IntMat, IntMat, IntMat]:
    """Smith normal form with transforms.

    Returns (D, U, V) with U*A*V = D, U and V unimodular, and the diagonal
    entries d_1 | d_2 | ... nonnegative.  Pivot choice is
    minimal-absolute-value for deterministic output.
    """
    d = mat_copy(a)
    n = len(d)
    m = len(d[0]) if d else 0
    u = identity(n)
    v = identity(m)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        drow, srow = d[dst], d[src]
        for j in range(m):
            drow[j] += q * srow[j]
        drow2, srow2 = u[dst], u[src]
        for j in range(n):
            drow2[j] += q * srow2[j]

    def add_col(dst, src, q):
        for r in d:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    t = 0
    while t < min(n, m):
        # locate a minimal-absolute-value nonzero pivot in the trailing block
        piv = None
        best = None
        for i in range(t, n):
            for j in range(t, m):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, n):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(i, t, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, m):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(j, t, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # pivot must divide the whole trailing block
        p = d[t][t]
        fixed = True
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if d[i][j] % p:
                    add_row(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if d[t][t] < 0:
                for j in range(m):
                    d[t][j] = -d[t][j]
                for j in range(n):
                    u[t][j] = -u[t][j]
            t += 1
    return d, u, v


def snf_diagonal(a: Sequence[Sequence[int]]) -> List[int]:
    d, _, _ = snf(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


# ---------------------------------------------------------------------------
# Integer kernels and saturation


def integer_kernel(a: Sequence[Sequence[int]]) -> IntMat:
    """Basis of {v : A*v = 0} over the integers.

    The rows of the result form a basis of the kernel lattice; the basis is
    saturated because the kernel of an integer map always is.
    """
    if not a:
        return []
    at = transpose(a)
    h, u = hnf(at)
    return [list(u[i]) for i in range(len(h)) if not any(h[i])]


def left_kernel(a: Sequence[Sequence[int]]) -> IntMat:
    """Basis of {v : v*A = 0} as rows."""
    h, u = hnf(a)
    return [list(u[i]) for i in range(len(h)) if not any(h[i])]


def saturate(a: Sequence[Sequence[int]]) -> IntMat:
    """Basis of the saturation (primitive closure in Z^m) of the row span.

    The rational row span is the dot-orthogonal complement of the column
    kernel, so saturating twice through integer kernels does the job.
    """
    if not a:
        return []
    ker = integer_kernel(a)
    if not ker:
        return identity(len(a[0]))
    return integer_kernel(ker)


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[Fraction]) -> List[Fraction]:
    """Solve x * A = b exactly (x rational row vector); raise if unsolvable.

    A has full row rank (rows independent)."""
    n = len(a)
    m = len(a[0]) if a else 0
    # Gaussian elimination on the transposed system A^T x^T = b^T
    rows = [[Fraction(a[i][j]) for i in range(n)] + [Fraction(b[j])] for j in range(m)]
    piv_cols: List[int] = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][-1]
    for i in range(r, m):
        if rows[i][-1] != 0:
            raise ValueError("inconsistent linear system")
    return x


def solve_integral(a: Sequence[Sequence[int]], b: Sequence[int]) -> IntVec:
    """Solve x * A = b with x integral; raise if impossible."""
    x = solve_rational(a, [Fraction(v) for v in b])
    out = []
    for v in x:
        if v.denominator != 1:
            raise ValueError("no integral solution")
        out.append(int(v))
    return out


def invert_unimodular(a: Sequence[Sequence[int]]) -> IntMat:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    n = len(a)
    h, u = hnf(a)
    if h != identity(n):
        # determinant -1 case leaves pivots 1 as well; anything else is an error
        raise ValueError("matrix is not unimodular")
    return u


def gram_fraction(basis: Sequence[Sequence[int]], dot_scale: Fraction) -> List[List[Fraction]]:
    """Gram matrix of basis rows under the scaled negative dot product."""
    n = len(basis)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = sum(x * y for x, y in zip(basis[i], basis[j]))
            g[i][j] = g[j][i] = -dot_scale * s
    return g


# ---------------------------------------------------------------------------
# LLL reduction (exact, delta = 3/4)

_DELTA = Fraction(3, 4)


def lll_reduce(gram: Sequence[Sequence[int]]) -> Tuple[IntMat, IntMat]:
    """LLL-reduce a definite Gram matrix.

    Returns (G', T) with T unimodular and G' = T^t * G * T reduced at
    delta = 3/4.  Negative definite input is negated internally; the
    returned G' keeps the original sign.  Raises on indefinite or
    degenerate input.
    """
    n = len(gram)
    if n == 0:
        return [], []
    sign = 1 if gram[0][0] > 0 else -1
    g = [[sign * gram[i][j] for j in range(n)] for i in range(n)]
    _check_positive_definite(g)
    t = identity(n)  # rows: coordinates of the working basis in the input basis
    cur = mat_copy(g)  # cur = T G T^t, maintained under the row operations

    def row_sub(k: int, j: int, q: int) -> None:
        # basis_k -= q * basis_j
        t[k] = [a - q * b for a, b in zip(t[k], t[j])]
        for col in range(n):
            cur[k][col] -= q * cur[j][col]
        for row in cur:
            row[k] -= q * row[j]

    def row_swap(k: int, j: int) -> None:
        t[k], t[j] = t[j], t[k]
        cur[k], cur[j] = cur[j], cur[k]
        for row in cur:
            row[k], row[j] = row[j], row[k]

    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    valid = -1  # GS data is current for rows 0..valid

    def gs_extend(upto: int) -> None:
        nonlocal valid
        for i in range(valid + 1, upto + 1):
            b = Fraction(cur[i][i])
            for j in range(i):
                m = Fraction(cur[i][j])
                for k2 in range(j):
                    m -= mu[i][k2] * mu[j][k2] * bstar[k2]
                mu[i][j] = m / bstar[j]
                b -= mu[i][j] ** 2 * bstar[j]
            bstar[i] = b
        valid = max(valid, upto)

    k = 1
    gs_extend(0)
    while k < n:
        gs_extend(k)
        for j in range(k - 1, -1, -1):
            q = _round_half(mu[k][j])
            if q:
                row_sub(k, j, q)
                valid = min(valid, k - 1)
                gs_extend(k)
        if bstar[k] >= (_DELTA - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            row_swap(k, k - 1)
            valid = min(valid, k - 2)
            k = max(k - 1, 1)
            gs_extend(k)
    reduced = [[sign * x for x in row] for row in cur]
    return reduced, transpose(t)


def _round_half(x: Fraction) -> int:
    # nearest integer, ties toward zero for determinism
    fl = x.numerator // x.denominator
    r = x - fl
    if r > Fraction(1, 2):
        return fl + 1
    if r == Fraction(1, 2):
        return fl if fl >= 0 else fl + 1
    return fl


def _check_positive_definite(g: Sequence[Sequence[int]]) -> None:
    n = len(g)
    m = [[Fraction(g[i][j]) for j in range(n)] for i in range(n)]
    for k in range(n):
        if m[k][k] <= 0:
            raise ValueError("Gram matrix is not definite")
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    # also demand symmetry
    if not is_symmetric(g):
        raise ValueError("Gram matrix is not symmetric")


# ---------------------------------------------------------------------------
# Short vectors (Fincke-Pohst)


def short_vectors(gram: Sequence[Sequence[int]], bound: int) -> List[IntVec]:
    """All vectors with 0 < |v^t G v| <= bound, one per +/- pair.

    G must be negative definite; enumeration is exact Fincke-Pohst on the
    rational Cholesky decomposition of -G.
    """
    n = len(gram)
    if n == 0:
        return []
    if gram[0][0] >= 0:
        raise ValueError("Gram matrix must be negative definite")
    g = [[-gram[i][j] for j in range(n)] for i in range(n)]
    _check_positive_definite(g)
    # rational Cholesky: g = L D L^t with unit lower-triangular L
    q = [[Fraction(g[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    # now q[i][i] = D_i and q[i][j] (j>i)/q[i][i] after normalization:
    for i in range(n):
        d = q[i][i]
        for j in range(i + 1, n):
            q[i][j] /= d

    results: List[IntVec] = []
    x = [0] * n
    c = Fraction(bound)

    def recurse(i: int, remaining: Fraction) -> None:
        # remaining budget for sum_{k<=i} D_k (x_k + sum_j q[k][j] x_j)^2
        center = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        # |x_i - center|^2 <= remaining / D_i
        lim2 = remaining / q[i][i]
        lo, hi = _interval(center, lim2)
        for xi in range(lo, hi + 1):
            x[i] = xi
            contrib = q[i][i] * (Fraction(xi) - center) ** 2
            rem2 = remaining - contrib
            if rem2 < 0:
                continue
            if i == 0:
                if any(x):
                    v = list(x)
                    results.append(v)
            else:
                recurse(i - 1, rem2)
        x[i] = 0

    recurse(n - 1, c)
    # keep one representative per +/- pair: canonical sign = first nonzero > 0
    out = []
    for v in results:
        for e in v:
            if e:
                if e > 0:
                    out.append(v)
                break
    return out


def _interval(center: Fraction, lim2: Fraction) -> Tuple[int, int]:
    if lim2 < 0:
        return 0, -1
    r = _isqrt_fraction(lim2)
    lo = _ceil_fraction(center - r)
    hi = _floor_fraction(center + r)
    return lo, hi


def _isqrt_fraction(x: Fraction) -> Fraction:
    # rational upper bound for sqrt(x), tight enough for interval bounds
    if x == 0:
        return Fraction(0)
    num, den = x.numerator, x.denominator
    import math

    lo = math.isqrt(num * den)
    # sqrt(x) = sqrt(num*den)/den
    r = Fraction(lo, den)
    while r * r < x:
        r += Fraction(1, den)
    return r


def _floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)
