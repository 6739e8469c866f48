import itertools
import random

import pytest

from sscurves.errors import NotZeroDimensional, ResourceBudgetExceeded
from sscurves.ff import GF11, extension_of_degree, zeta
from sscurves.groebner import (eliminate, fglm, groebner, is_zero_dimensional, lex_basis,
                               reduced_groebner_basis, solve_zero_dimensional,
                               standard_monomials)
from sscurves.mpoly import GREVLEX, LEX, MultiPoly, parse_poly

XY = ("x", "y")


def P(text, gens=XY, field=GF11):
    return parse_poly(text, gens=gens, field=field)


def texts(G):
    return sorted(str(g) for g in G.basis)


def test_already_reduced_basis():
    G = reduced_groebner_basis([P("x - 1"), P("y - 2")], LEX)
    assert set(G.basis) == {P("x - 1"), P("y - 2")}


def test_unit_ideal():
    G = reduced_groebner_basis([P("x*y - 1"), P("x^2")], LEX)
    assert G.is_unit
    assert eliminate(G, 1) == G.basis


def test_two_point_basis_is_stable():
    G = reduced_groebner_basis([P("x^2 - y"), P("y^2 - 1")], LEX)
    assert set(G.basis) == {P("x^2 - y"), P("y^2 - 1")}
    assert is_zero_dimensional(G)
    assert sorted(standard_monomials(G)) == sorted([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert eliminate(G, 1) == [P("y^2 - 1")]
    sol = solve_zero_dimensional([P("x^2 - y"), P("y^2 - 1")], GF11)
    brute = [(a, b) for a in range(11) for b in range(11)
             if (a * a - b) % 11 == 0 and (b * b - 1) % 11 == 0]
    assert sol.raw_points == sorted(brute)


def test_zero_dimensionality():
    assert is_zero_dimensional(groebner([P("x - 1"), P("y - 2")], LEX))
    assert not is_zero_dimensional(groebner([P("x*y - 1")], LEX))
    assert eliminate(groebner([P("x - 1"), P("y - 2")], LEX), 1) == [P("y - 2")]


def test_empty_input_rejected():
    with pytest.raises(ValueError):
        reduced_groebner_basis([])


def test_basis_independent_of_generator_order():
    rng = random.Random(5)
    gens = ("a", "b", "c")
    polys = [P("a^2 + b*c - 1", gens), P("a*b - c + 3", gens), P("b^2 - a*c", gens),
             P("c^3 - 2", gens)]
    ref = texts(groebner(polys, GREVLEX))
    for _ in range(5):
        rng.shuffle(polys)
        assert texts(groebner(polys, GREVLEX)) == ref


def test_fglm_equals_direct_lex():
    gens = ("a", "b", "c")
    polys = [P("a^2 + b*c - 1", gens), P("a*b - c + 3", gens), P("b^2 - a*c", gens)]
    direct = groebner(polys, LEX)
    via = fglm(groebner(polys, GREVLEX), LEX)
    assert texts(direct) == texts(via)
    assert texts(lex_basis(polys)) == texts(direct)


def test_solve_examples():
    sol = solve_zero_dimensional([P("x^2 - y"), P("y - 4")], GF11)
    assert sol.raw_points == [(2, 4), (9, 4)]
    sol = solve_zero_dimensional([P(t, ("x", "y", "z")) for t in ("x - 1", "y - 2", "z - 3")],
                                 GF11)
    assert sol.raw_points == [(1, 2, 3)]
    assert len(solve_zero_dimensional([P("1")], GF11)) == 0


def test_closure_solve_lands_in_f121():
    sol = solve_zero_dimensional([P("x^2 + 7x + 2", ("x",))], GF11, rational_only=False)
    assert sol.field == extension_of_degree(11, 2)
    assert len(sol) == 2
    assert (zeta().value,) in sol.raw_points
    assert len(solve_zero_dimensional([P("x^2 + 7x + 2", ("x",))], GF11)) == 0


def test_positive_dimensional_rejected():
    with pytest.raises(NotZeroDimensional):
        solve_zero_dimensional([P("x*y - 1")], GF11)


def test_pair_budget():
    gens = ("a", "b", "c", "d")
    polys = [P("a + b + c + d", gens), P("a*b + b*c + c*d + d*a", gens),
             P("a*b*c + b*c*d + c*d*a + d*a*b", gens), P("a*b*c*d - 1", gens)]
    assert groebner(polys, GREVLEX).stats["pairs"] > 3
    with pytest.raises(ResourceBudgetExceeded):
        groebner(polys, GREVLEX, max_pairs=3)


def test_extension_field_basis():
    L = extension_of_degree(11, 2)
    z = zeta()
    x, y = MultiPoly.variables(L, XY)
    G = groebner([x * x - y * z, y * y - 1], LEX)
    assert G.field == L
    assert is_zero_dimensional(G)


def test_random_systems_match_enumeration():
    rng = random.Random(11)
    done = 0
    while done < 30:
        n = rng.randint(1, 3)
        gens = tuple(f"v{i}" for i in range(n))
        polys = []
        for _ in range(n + 1):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                e = [0] * n
                for _ in range(rng.randint(0, 3)):
                    e[rng.randrange(n)] += 1
                terms[tuple(e)] = rng.randrange(1, 11)
            polys.append(MultiPoly(GF11, gens, terms))
        polys = [f for f in polys if not f.is_zero()]
        try:
            sol = solve_zero_dimensional(polys, GF11)
        except NotZeroDimensional:
            continue
        brute = sorted(pt for pt in itertools.product(range(11), repeat=n)
                       if all(f.evaluate(pt) == 0 for f in polys))
        assert sol.raw_points == brute
        done += 1
