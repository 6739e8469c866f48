import pytest

from sscurves import catalog as cat
from sscurves.autgrp import (ProjAutomorphism, automorphism_group, build_constraint_system,
                             generating_set, scalar_canonicalize, split_constraint_system)
from sscurves.errors import SingularMatrix
from sscurves.ff import GF11
from sscurves.groebner import groebner
from sscurves.mpoly import GREVLEX, MultiPoly
from sscurves.ortho import bruhat_patterns

F = GF11


def rec(cid):
    return cat.get_record(cid)


def aut(cid, **kw):
    r = rec(cid)
    q_prime = 0 if r.is_closure else 11
    return automorphism_group(r.Q, r.P, 11, q_prime, curve_id=cid, **kw)


def P(rows):
    return ProjAutomorphism(F, [v % 11 for r in rows for v in r])


def diag(*d):
    return [[d[i] if i == j else 0 for j in range(4)] for i in range(4)]


def test_scalar_canonicalize_examples():
    assert scalar_canonicalize(diag(3, 3, 3, 3)).entries == P(diag(1, 1, 1, 1)).entries
    assert scalar_canonicalize(diag(-1, 1, 1, -1)).rows() == diag(1, 10, 10, 1)
    g = scalar_canonicalize([[0, 2, 0, 0], [3, 0, 0, 0], [0, 0, 0, 5], [0, 0, 7, 0]])
    assert g.entries[1] == 1
    assert scalar_canonicalize(g) is g
    doubled = [[2 * v for v in r] for r in g.rows()]
    assert scalar_canonicalize(doubled) == g


def test_scalar_canonicalize_rejects_singular():
    with pytest.raises(SingularMatrix):
        scalar_canonicalize(diag(1, 1, 1, 0))
    with pytest.raises(SingularMatrix):
        scalar_canonicalize(diag(0, 0, 0, 0))


def test_identity_point_solves_pattern_one():
    r = rec("N1:1")
    pat = bruhat_patterns("N1")[0]
    point = {g: 1 for g in pat.gens}
    point.update({"d1": 0, "d2": 0})
    eqs = build_constraint_system(r.Q, r.P, pat)
    assert len(eqs) <= 20 + len(pat.constraints)
    assert all(e.evaluate(point) == 0 for e in eqs)


def test_diagonal_involution_in_solution_set():
    r = rec("N1:2")
    pat = bruhat_patterns("N1")[0]
    # diag(-1,1,1,-1) = diag(a1, b1, c*b2, c*a2); the cubic is odd, so the scalar matters
    point = {"a1": 10, "a2": 10, "b1": 1, "b2": 1, "c": 1, "s": 1, "d1": 0, "d2": 0, "r": 1}
    assert P(diag(-1, 1, 1, -1)).entries == P([list(pat.instantiate(point)[4 * i:4 * i + 4])
                                               for i in range(4)]).entries
    assert all(e.evaluate(point) == 0 for e in build_constraint_system(r.Q, r.P, pat))


@pytest.mark.parametrize("cid,idx", [("N1:2", 0), ("N2:2", 2), ("Dege:13", 1), ("Dege:6", 2)])
def test_split_system_has_same_ideal(cid, idx):
    r = rec(cid)
    pat = bruhat_patterns(r.Q.kind)[idx]
    a = groebner(build_constraint_system(r.Q, r.P, pat), GREVLEX)
    b = groebner(split_constraint_system(r.Q, r.P, pat), GREVLEX)
    assert sorted(map(str, a.basis)) == sorted(map(str, b.basis))


def test_small_orders():
    assert aut("N1:2").order == 2
    assert aut("Dege:6").order == 1
    assert aut("Dege:6").generators == []


def test_n1_1_contains_printed_generator():
    G = aut("N1:1")
    assert G.order == 6
    g = P([[2, 4, 5, 1], [3, 6, 5, 1], [7, 7, 1, 10], [6, 6, 10, 1]])
    assert G.contains(g)
    assert g.order() == 6
    gens = generating_set(G)
    assert len(gens) == 1 and ProjAutomorphism(G.field, gens[0], canonical=True).order() == 6


def test_group_axioms_and_engines_agree():
    for cid in ("N2:2", "Dege:17"):
        G = aut(cid, engine="both")
        G.verify_group()
        assert set(G.timings) >= {"groebner", "brute", "total"}
    G = aut("N2:2")
    gens = generating_set(G)
    assert [ProjAutomorphism(G.field, g, canonical=True).order() for g in gens] == [2, 2]


def test_rational_patterns_pin_ratio():
    for pat in bruhat_patterns("Dege"):
        assert any(c == MultiPoly.variable(F, pat.gens, "r") - 1 for c in pat.constraints)


def test_result_json_shape():
    d = aut("N1:2").to_dict()
    assert set(d) >= {"curve", "field", "order", "generators", "elements_count", "engine",
                      "timings", "mode"}
    assert d["order"] == d["elements_count"] == 2
    assert d["field"]["p"] == 11 and d["field"]["k"] == 1


def test_contains_and_inverse():
    G = aut("N1:2")
    for i in range(G.order):
        g = G.proj(i)
        assert G.contains(g) and G.contains(g.inverse())
    assert not G.contains(P(diag(1, 2, 3, 4)))


def test_closure_class_five():
    G = aut("alc:5")
    assert G.order == 72
    assert G.field.q in (11, 121)


def test_bad_arguments():
    r = rec("N1:2")
    with pytest.raises(ValueError):
        automorphism_group(r.Q, r.P, 11, 0, engine="brute")
    with pytest.raises(ValueError):
        automorphism_group(r.Q, r.P, 11, 5)
    with pytest.raises(ValueError):
        automorphism_group(r.Q, r.P, 11, 11, engine="magic")
