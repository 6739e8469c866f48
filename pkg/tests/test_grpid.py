import pytest

from sscurves import catalog as cat
from sscurves.autgrp import automorphism_group
from sscurves.errors import ClosureViolation
from sscurves.grpid import (AbstractGroup, GroupName, alternating, candidate_names, cyclic,
                            dihedral, direct_product, from_table, identify, identify_group,
                            is_isomorphic, multiplication_table, symmetric,
                            verify_isomorphism)

MODELS = ["C1", "C2", "C3", "C4", "C6", "C12", "C2xC2", "D3", "D4", "D6", "S3", "S4", "A4",
          "D6xC3", "S4xC3", "C6xC2"]


def test_cyclic_and_klein_are_distinct():
    c4 = cyclic(4)
    v4 = direct_product(cyclic(2), cyclic(2))
    assert c4.order_multiset() == {1: 1, 2: 1, 4: 2}
    assert v4.order_multiset() == {1: 1, 2: 3}
    assert is_isomorphic(c4, v4) == (False, None)


def test_crt_isomorphism_has_verified_witness():
    c6 = cyclic(6)
    c23 = direct_product(cyclic(2), cyclic(3))
    ok, phi = is_isomorphic(c6, c23)
    assert ok and verify_isomorphism(c6, c23, phi)


def test_d6_is_not_a4():
    assert dihedral(6).n == alternating(4).n == 12
    assert 6 in dihedral(6).order_multiset()
    assert 6 not in alternating(4).order_multiset()
    assert not is_isomorphic(dihedral(6), alternating(4))[0]


def test_s4_order_multiset():
    assert symmetric(4).order_multiset() == {1: 1, 2: 9, 3: 8, 4: 6}


@pytest.mark.parametrize("text", MODELS)
def test_models_identify_to_themselves(text):
    name = GroupName.parse(text) if text != "C1" else GroupName((), 1)
    G = name.model()
    G.validate()
    got = identify_group(G)
    assert is_isomorphic(got.model(), G)[0]
    if text == "C6xC2":
        assert str(got) == "C6xC2"
    elif text == "S3":
        assert str(got) == "D3"
    elif text == "C1":
        assert str(got) == "1"
    else:
        assert str(got) == text


def test_names_round_trip():
    for text in ("C6", "D4", "S4", "A4", "C2xC2", "D6xC3", "S4xC3", "1"):
        n = GroupName.parse(text)
        assert str(n) == text
        assert n.order == n.model().n
    assert str(GroupName((), 10)) == "unidentified(order 10)"
    with pytest.raises(ValueError):
        GroupName.parse("Q8")


def test_candidate_order_follows_stages():
    names = [str(n) for n in candidate_names(24)]
    assert names[:3] == ["C24", "D12", "S4"]
    assert [str(n) for n in candidate_names(4)] == ["C4", "C2xC2"]
    assert "D6xC3" in [str(n) for n in candidate_names(36)]
    assert "S4xC3" in [str(n) for n in candidate_names(72)]


def test_quaternion_is_unidentified():
    # Q8 as a table of unit quaternions +-1, +-i, +-j, +-k
    basis = {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")}
    mult = {("1", x): (1, x) for x in "1ijk"}
    mult.update({(x, "1"): (1, x) for x in "1ijk"})
    mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in basis]
    idx = {e: i for i, e in enumerate(elems)}
    table = [[idx[(a[0] * b[0] * mult[(a[1], b[1])][0], mult[(a[1], b[1])][1])]
              for b in elems] for a in elems]
    G = from_table(table, idx[(1, "1")])
    G.validate()
    name = identify_group(G)
    assert not name.identified
    assert str(name) == "unidentified(order 8)"


def test_validate_rejects_bad_tables():
    with pytest.raises(ClosureViolation):
        AbstractGroup(2, [[0, 1], [1, 1]]).validate()
    with pytest.raises(ClosureViolation):
        AbstractGroup(3, [[0, 1, 2], [1, 2, 0], [2, 1, 0]]).validate()


def test_isomorphism_invariance_of_identification():
    G = direct_product(cyclic(3), cyclic(4))
    H = cyclic(12)
    assert is_isomorphic(G, H)[0]
    assert str(identify_group(G)) == str(identify_group(H)) == "C12"


@pytest.mark.parametrize("cid,name", [("Dege:6", "1"), ("N1:1", "C6"), ("N1:3", "D4"),
                                      ("N1:8", "S4")])
def test_catalog_groups(cid, name):
    r = cat.get_record(cid)
    G = automorphism_group(r.Q, r.P, 11, 11, curve_id=cid)
    T = multiplication_table(G)
    assert T.n == G.order
    T.validate()
    if cid == "N1:8":
        assert T.order_multiset() == {1: 1, 2: 9, 3: 8, 4: 6}
    assert identify(G) == name
    assert G.group_name == name
