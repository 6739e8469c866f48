import pytest

from sscurves import catalog as cat
from sscurves.autgrp import ProjAutomorphism, automorphism_group
from sscurves.ff import GF11
from sscurves.galois import (frobenius_map, galois_report, sigma_conjugacy_classes,
                             sigma_stabilizer, stabilizer_multiset)


def aut(cid):
    r = cat.get_record(cid)
    return automorphism_group(r.Q, r.P, 11, 0 if r.is_closure else 11, curve_id=cid)


@pytest.fixture(scope="module")
def c8():
    return aut("alc:8")


def test_rational_group_has_trivial_frobenius():
    G = aut("N2:2")
    S = frobenius_map(G)
    assert S.is_trivial()
    classes = sigma_conjugacy_classes(S)
    # abelian group, trivial twist: ordinary conjugacy classes are singletons
    assert [len(c) for c in classes] == [1] * G.order
    assert sigma_stabilizer(S, G.identity_index()).n == G.order


def test_frobenius_on_class_two_is_an_involution():
    G = aut("alc:2")
    assert G.field.q == 121
    S = frobenius_map(G)
    assert not S.is_trivial()
    assert all(S.sigma[S.sigma[i]] == i for i in range(S.order))
    e = G.identity_index()
    assert S.sigma[e] == e


def test_class_two_report():
    G = aut("alc:2")
    rep = galois_report(G, expected=[2, 2])
    assert rep.class_count == 2
    assert sorted(rep.stabilizer_orders) == [2, 2]
    assert rep.orbit_stabilizer_ok and rep.match
    assert sum(rep.class_sizes) == G.order
    assert rep.to_dict()["match"] is True


def test_class_seven_single_form():
    rep = galois_report(aut("alc:7"), expected=[1])
    assert rep.class_count == 1
    assert rep.stabilizer_orders == [1]


def test_class_eight_stabilizers(c8):
    S = frobenius_map(c8)
    classes = sigma_conjugacy_classes(S)
    assert len(classes) == 2
    printed = ProjAutomorphism(GF11, [1, 0, 0, 0, 0, 7, 1, 7, 0, 9, 7, 1, 0, 6, 9, 7])
    for cls in classes:
        H = sigma_stabilizer(S, cls[0])
        H.validate()
        assert H.n == 2
        non_identity = [lab for lab in H.labels if lab != c8.identity_index()]
        assert len(non_identity) == 1
        assert c8.proj(non_identity[0]) == printed


def test_mismatch_is_reported(c8):
    rep = galois_report(c8, expected=[2, 4])
    assert rep.match is False
    assert galois_report(c8).match is None
    assert stabilizer_multiset(rep) == {2: 2}
