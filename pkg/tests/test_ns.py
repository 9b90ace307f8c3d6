from fractions import Fraction as Q

import pytest

from k3forge.lattice import Lattice, discriminant_form, fqf_match
from k3forge.ns import (
    CANDIDATES,
    find_candidate,
    gram_from_description,
    load_ns,
    match_transcendental,
    ns_ids,
    verify_all,
    verify_ns,
)


def test_all_ns_fixtures():
    reports = verify_all()
    assert len(reports) == 7
    for r in reports:
        assert r["status"] == "pass", r
        assert r["regenerated_match"]


def test_expected_determinants():
    dets = {name: load_ns(name)["det"] for name in ns_ids()}
    assert dets["kummer_fp"] == -288
    assert dets["ns20"] == 36 and dets["ns19"] == 36
    assert {dets["ne11"], dets["hc"], dets["h1910"], dets["h2010"]} == {-72}


def test_candidates():
    got = {name: verify_ns(name)["candidate"] for name in ns_ids()}
    assert got["ns20"] == "M(20)"
    assert got["ns19"] == "M(20)"
    assert got["ne11"] == "[4,0,18]"
    assert got["hc"] == "[2,0,36]"
    assert got["h1910"] == "[4,0,18]"
    assert got["h2010"] == "[4,0,18]"
    assert got["kummer_fp"] == "[12,0,24]"


def test_order_mismatch_raises():
    fq = discriminant_form(Lattice([[2, 0], [0, 4]]))
    with pytest.raises(ValueError):
        match_transcendental(fq, CANDIDATES["[6,0,12]"])


def test_scaled_transcendental_identity():
    # disc form of T(Y2) scaled by 3 equals disc form of the target lattice
    scaled = discriminant_form(Lattice([[6, 0], [0, 12]]))
    target = discriminant_form(Lattice([[6, 0], [0, 12]]))
    assert fqf_match(scaled, target, 1) is not None
    base = discriminant_form(Lattice([[2 * 3, 0], [0, 4 * 3]]))
    assert fqf_match(base, target, 1) is not None


def test_trivial_description():
    desc = {"elements": [{"kind": "zero"}, {"kind": "fiber"}], "fibers": {}}
    g = gram_from_description(desc)
    assert g == [[-2, 1], [1, 0]]
    from k3forge.linalg import det_bareiss

    assert det_bareiss(g) == -1
