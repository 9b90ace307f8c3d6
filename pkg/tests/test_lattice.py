import random
from fractions import Fraction as Q

import pytest

from k3forge.lattice import (
    EmbeddingMatrix,
    Lattice,
    balanced_mod2,
    discriminant_form,
    fqf_match,
    is_primitive,
    orthogonal_complement,
    overlattices,
    primitive_closure,
    root_type,
)
from k3forge.rootdata import gram as rgram

N_GRAM = [[-2, 0, 1], [0, -2, 1], [1, 1, -4]]


def direct_sum(*grams):
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    off = 0
    for g in grams:
        for i in range(len(g)):
            for j in range(len(g)):
                out[off + i][off + j] = g[i][j]
        off += len(g)
    return out


def test_discriminant_form_of_n():
    fq = discriminant_form(Lattice(N_GRAM))
    assert fq.orders == [12]
    assert balanced_mod2(fq.q((1,))) == Q(-7, 12)


def test_an_discriminant():
    for n in (1, 2, 3, 7):
        fq = discriminant_form(Lattice(rgram("A", n)))
        assert fq.orders == [n + 1]
        assert balanced_mod2(fq.q((1,))) == Q(-n, n + 1)
    assert discriminant_form(Lattice(rgram("E", 8))).orders == []


def test_group_order_equals_det():
    rng = random.Random(5)
    for _ in range(10):
        base = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        g = [[-(2 * (i == j)) - 0 for j in range(3)] for i in range(3)]
        lat = Lattice(direct_sum(rgram("A", rng.randint(1, 3)), N_GRAM))
        fq = discriminant_form(lat)
        assert fq.group_order == abs(lat.det())


def test_primitivity():
    E8 = Lattice(rgram("E", 8))
    phi = EmbeddingMatrix(
        [[2, 0, 1, 0, 0, 0, 0, 0], [2, 3, 4, 6, 5, 4, 0, 0]], E8
    )
    assert is_primitive(phi)
    assert not is_primitive(EmbeddingMatrix([[2, 0, 0, 0, 0, 0, 0, 0]], E8))


def test_orthogonal_complement_n_in_e8():
    E8 = Lattice(rgram("E", 8))
    emb = EmbeddingMatrix(
        [[0, 1, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 1, 0], [0, 0, 0, 1, 0, 1, 0, 0]], E8
    )
    assert emb.induced_gram() == N_GRAM
    k = orthogonal_complement(E8, emb)
    assert k.rank == 5 and abs(k.det()) == 12
    assert root_type(k).names == ["A2", "A3"]
    # Nikulin duality inside the unimodular ambient
    assert fqf_match(discriminant_form(Lattice(N_GRAM)), discriminant_form(k), -1) is not None


def test_primitive_closure_quotient():
    D5 = Lattice(rgram("D", 5))
    vecs = [[0, 0, 0, 0, 1], [0, 0, 0, 1, 0], [1, 0, 1, 0, 0],
            [1, 1, 0, 0, 0], [0, 1, 2, 1, 1]]
    emb = EmbeddingMatrix(vecs, D5)
    assert not is_primitive(emb)
    closure, invs = primitive_closure(D5, emb)
    assert invs == [3]
    assert root_type(closure).names == ["D5"]


def test_overlattices_unique_up_to_isometry():
    for summand, want in ((rgram("A", 2), ["D5"]), ([[-2]], None)):
        lat = Lattice(direct_sum(summand, N_GRAM))
        nontrivial = [(o, s) for o, s in overlattices(lat) if len(s) > 1]
        if want is None:
            assert nontrivial == []
        else:
            assert nontrivial and all(root_type(o).names == want for o, _ in nontrivial)
            assert all(len(s) == 3 for _, s in nontrivial)


def test_overlattices_m():
    lat = Lattice(direct_sum([[-2]], rgram("A", 2), N_GRAM))
    nontrivial = [(o, s) for o, s in overlattices(lat) if len(s) > 1]
    assert nontrivial and all(root_type(o).names == ["A1", "D5"] for o, _ in nontrivial)


def test_fqf_match_signs():
    fa = discriminant_form(Lattice([[-2]]))
    fb = discriminant_form(Lattice([[2]]))
    assert fqf_match(fa, fb, 1) is None
    assert fqf_match(fa, fb, -1) is not None
    assert fqf_match(fa, fa, 1) is not None


def test_root_type_no_roots():
    assert root_type(Lattice([[-4, 0], [0, -6]])).names == []


def test_lattice_json_roundtrip():
    lat = Lattice(N_GRAM, basis=[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    again = Lattice.from_json(lat.to_json())
    assert again.gram == lat.gram and again.basis == lat.basis


def test_rank6_block_from_e8_embedding():
    # the orthogonal complement of the explicit primitive rank-2 embedding
    # splits as A1 + A2 + N after reduction
    from k3forge.linalg import lll_reduce

    E8 = Lattice(rgram("E", 8))
    emb = EmbeddingMatrix([[2, 0, 1, 0, 0, 0, 0, 0], [2, 3, 4, 6, 5, 4, 0, 0]], E8)
    assert is_primitive(emb)
    m = orthogonal_complement(E8, emb)
    assert m.rank == 6 and abs(m.det()) == 72
    red, _ = lll_reduce(m.gram)
    rt = root_type(Lattice(red))
    # N contributes two of its own roots, so the full root part is 3A1 + A2
    assert rt.names == ["A1", "A1", "A1", "A2"]
    a2 = next(c for c in rt.components if c.family == "A" and c.n == 2)
    a1s = [c for c in rt.components if c.n == 1]
    found_n = False
    for standalone in a1s:
        rows = standalone.simple_roots + a2.simple_roots
        inner = orthogonal_complement(Lattice(red), EmbeddingMatrix(rows, Lattice(red)))
        if abs(inner.det()) != 12:
            continue
        fq = discriminant_form(inner)
        if fq.orders == [12] and balanced_mod2(fq.q((1,))) == Q(-7, 12):
            found_n = True
    assert found_n  # the A1 + A2 split leaves a copy of N


def test_complement_orthogonal_and_saturated():
    import random

    from k3forge import linalg

    rng = random.Random(20)
    amb = Lattice(rgram("D", 7))
    for _ in range(10):
        vec = [rng.randint(-2, 2) for _ in range(7)]
        if not any(vec):
            continue
        emb = EmbeddingMatrix([vec], amb)
        comp = orthogonal_complement(amb, emb)
        for row in comp.basis:
            assert sum(row[i] * amb.gram[i][j] * vec[j]
                       for i in range(7) for j in range(7)) == 0
        sat = linalg.saturate(comp.basis)
        assert [r for r in linalg.hnf(sat)[0] if any(r)] == \
               [r for r in linalg.hnf(comp.basis)[0] if any(r)]


def test_discriminant_group_order_random():
    import random

    rng = random.Random(9)
    specs = [("A", 1), ("A", 2), ("A", 4), ("D", 4), ("D", 5), ("E", 6), ("E", 7)]
    for _ in range(10):
        pieces = [rgram(*rng.choice(specs)) for _ in range(2)]
        lat = Lattice(direct_sum(*pieces))
        fq = discriminant_form(lat)
        assert fq.group_order == abs(lat.det())
