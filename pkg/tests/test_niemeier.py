from fractions import Fraction as Q

import pytest

from k3forge import niemeier, rootdata


def test_glue_vector_norms():
    assert rootdata.form(rootdata.glue_rep("A", 2, 1), rootdata.glue_rep("A", 2, 1)) == Q(-2, 3)
    assert rootdata.form(rootdata.glue_rep("D", 16, 1), rootdata.glue_rep("D", 16, 1)) == Q(-4)
    assert rootdata.form(rootdata.glue_rep("D", 7, 2), rootdata.glue_rep("D", 7, 2)) == Q(-1)
    assert rootdata.form(rootdata.glue_rep("E", 7, 1), rootdata.glue_rep("E", 7, 1)) == Q(-3, 2)
    assert rootdata.form(rootdata.glue_rep("E", 6, 1), rootdata.glue_rep("E", 6, 1)) == Q(-4, 3)
    zero = rootdata.glue_rep("D", 5, 0)
    assert all(x == 0 for x in zero)


def test_glue_label_out_of_range():
    with pytest.raises(ValueError):
        rootdata.glue_rep("A", 2, 3)


def test_catalog_verifies():
    reports = niemeier.verify_catalog()
    assert len(reports) == 23
    assert all(r["ok"] for r in reports), [r for r in reports if not r["ok"]]


def test_d8_cube_code_words():
    nl = niemeier.niemeier("D8^3")
    code = sorted(nl.glue_code())
    assert code == [
        (0, 0, 0), (0, 3, 3), (1, 1, 1), (1, 2, 2),
        (2, 1, 2), (2, 2, 1), (3, 0, 3), (3, 3, 0),
    ]


def test_a1_24_glue_order():
    assert niemeier.niemeier("A1^24").glue_order() == 4096


def test_glue_pairings_integral():
    nl = niemeier.niemeier("A11D7E6")
    words = [w for w in nl.glue_code() if any(w)]
    for w in words:
        vec = [Q(0)] * nl.ambient_dim
        for ci, lab in enumerate(w):
            f, n = nl.components[ci]
            rep = rootdata.glue_rep(f, n, lab)
            for i, x in enumerate(rep):
                vec[nl.offsets[ci] + i] += x
        norm = -sum(x * x for x in vec)
        assert norm.denominator == 1 and int(norm) % 2 == 0


def test_unknown_name():
    with pytest.raises(KeyError):
        niemeier.niemeier("Leech")
