import random
from fractions import Fraction

from k3forge import linalg
from k3forge.linalg import (
    det_bareiss,
    hnf,
    integer_kernel,
    lll_reduce,
    mat_mul,
    saturate,
    short_vectors,
    snf,
    transpose,
)

N_GRAM = [[-2, 0, 1], [0, -2, 1], [1, 1, -4]]


def test_snf_of_n_gram():
    d, u, v = snf(N_GRAM)
    assert [d[i][i] for i in range(3)] == [1, 1, 12]
    assert mat_mul(mat_mul(u, N_GRAM), v) == d
    assert abs(det_bareiss(u)) == 1 and abs(det_bareiss(v)) == 1


def test_snf_identity_and_divisibility():
    d, u, v = snf(linalg.identity(3))
    assert [d[i][i] for i in range(3)] == [1, 1, 1]
    d2, _, _ = snf([[2, 4], [6, 8]])
    assert [d2[0][0], d2[1][1]] == [2, 4]


def test_snf_random_properties():
    rng = random.Random(7)
    for _ in range(25):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        a = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)]
        d, u, v = snf(a)
        assert mat_mul(mat_mul(u, a), v) == d
        diag = [d[i][i] for i in range(min(n, m))]
        for x, y in zip(diag, diag[1:]):
            assert y == 0 or (x != 0 and y % x == 0) or (x == 0 and y == 0)
        if n == m:
            prod = 1
            for x in diag:
                prod *= x
            assert abs(det_bareiss(a)) == prod


def test_hnf():
    h, u = hnf([[1, 2], [3, 4]])
    assert mat_mul(u, [[1, 2], [3, 4]]) == h
    assert h[0][0] == 1
    h2, _ = hnf([[2, 0], [0, 3]])
    assert h2 == [[2, 0], [0, 3]]
    h3, _ = hnf([[0, 0], [0, 0]])
    assert h3 == [[0, 0], [0, 0]]


def test_kernel_saturated():
    k = integer_kernel([[1, 1]])
    assert k == [[1, -1]] or k == [[-1, 1]]
    assert integer_kernel([[1, 0], [0, 1]]) == []
    rng = random.Random(3)
    for _ in range(20):
        a = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(2)]
        ker = integer_kernel(a)
        for v in ker:
            assert all(sum(r[i] * v[i] for i in range(4)) == 0 for r in a)
        # saturation: the kernel equals the saturation of itself as a lattice
        if ker:
            h1 = [r for r in linalg.hnf(saturate(ker))[0] if any(r)]
            h2 = [r for r in linalg.hnf(ker)[0] if any(r)]
            assert h1 == h2


def test_lll_preserves_class():
    rng = random.Random(11)
    for _ in range(10):
        g = [[-2, 0], [0, -2]]
        t = [[1, 0], [rng.randint(-6, 6), 1]]
        conj = mat_mul(mat_mul(t, g), transpose(t))
        red, tr = lll_reduce(conj)
        assert red == [[-2, 0], [0, -2]]
        assert mat_mul(mat_mul(transpose(tr), conj), tr) == red


def test_short_vectors_counts():
    a2 = [[-2, 1], [1, -2]]
    assert len(short_vectors(a2, 2)) == 3
    assert short_vectors([[-4]], 2) == []
    from k3forge.rootdata import gram

    assert len(short_vectors(gram("E", 8), 2)) == 120


def test_short_vectors_reject_indefinite():
    import pytest

    with pytest.raises(ValueError):
        short_vectors([[2, 0], [0, -2]], 2)
    with pytest.raises(ValueError):
        lll_reduce([[2, 0], [0, -2]])
