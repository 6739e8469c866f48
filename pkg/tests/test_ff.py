import pytest
from hypothesis import given, settings, strategies as st

from sscurves.errors import DegreeCapExceeded, ZeroInversion
from sscurves.ff import (GF11, FieldElem, build_extension, embed, extension_of_degree,
                         field_inverse, format_element, is_irreducible, parse_element,
                         poly_eval, prime_field, restrict, splitting_field, univariate_roots,
                         zeta, zeta_log)

F121 = extension_of_degree(11, 2)
F1331 = extension_of_degree(11, 3)
F11_4 = extension_of_degree(11, 4)


def test_inverse_examples():
    assert field_inverse(GF11(1)) == 1
    assert field_inverse(GF11(2)) == 6
    z = zeta()
    assert z * field_inverse(z) == 1
    # -(z + 7)/2 from the minimal polynomial
    assert field_inverse(z) == -(z + 7) / 2


def test_zero_inversion():
    with pytest.raises(ZeroInversion):
        field_inverse(GF11(0))
    with pytest.raises(ZeroInversion):
        F121(0).inverse()


def test_pinned_quadratic_modulus():
    assert F121.modulus == (2, 7, 1)
    assert build_extension(GF11, 2) == F121
    assert build_extension(GF11, 1) == GF11
    z = zeta()
    assert z * z + 7 * z + 2 == 0
    assert F121.multiplicative_order(z.value) == 120


def test_deterministic_moduli():
    assert build_extension(GF11, 3) is build_extension(GF11, 3)
    assert is_irreducible(F1331.modulus, 11)
    assert is_irreducible(F11_4.modulus, 11)
    assert not is_irreducible((1, 0, 1), 5)   # x^2 + 1 = (x - 2)(x + 2) mod 5


def test_prime_subfield_embeds_to_fixed_points():
    f = embed(GF11, F1331)
    for x in range(11):
        assert F1331.pow(f(x), 11) == f(x)


@pytest.mark.parametrize("F", [GF11, F121, F1331, F11_4])
def test_frobenius_fixed_field_has_p_elements(F):
    if F.q > 1331:
        sample = range(0, F.q, 7)
        fixed = [v for v in sample if F.frobenius(v) == v]
        assert all(v < 11 for v in fixed)
    else:
        assert sorted(v for v in range(F.q) if F.frobenius(v) == v) == list(range(11))


def test_embedding_is_a_homomorphism():
    f = embed(F121, F11_4)
    for a in range(0, 121, 5):
        for b in range(0, 121, 7):
            assert f(F121.add(a, b)) == F11_4.add(f(a), f(b))
            assert f(F121.mul(a, b)) == F11_4.mul(f(a), f(b))


def test_restrict_finds_smallest_subfield():
    up = embed(F121, F11_4)
    sub, u = restrict(F11_4, up(F121.p))
    assert sub == F121 and u == F121.p
    assert restrict(F11_4, 7) == (GF11, 7)


def test_root_examples():
    assert univariate_roots([-5, 1], GF11) == [5]
    assert univariate_roots([2, 7, 1], GF11) == []
    roots = univariate_roots([2, 7, 1], F121)
    assert len(roots) == 2 and zeta() in roots


def test_splitting_field_examples():
    L, roots = splitting_field([-3, 0, 1], GF11)
    assert L == GF11 and sorted(int(r) for r in roots) == [5, 6]
    L, roots = splitting_field([2, 7, 1], GF11)
    assert L == F121
    assert sorted(zeta_log(L, r.value) for r in roots) == [1, 11]
    L, roots = splitting_field([-1, 3, -3, 1], GF11)      # (X - 1)^3
    assert L == GF11 and roots == [1]


def test_splitting_field_cap():
    # irreducible factors of degrees 3 and 5 need F_{11^15}, beyond the cap of 12
    from sscurves.ff import poly_mul, smallest_irreducible
    f = poly_mul(GF11, list(smallest_irreducible(11, 3)), list(smallest_irreducible(11, 5)))
    with pytest.raises(DegreeCapExceeded):
        splitting_field(f, GF11)


def test_format_and_parse_roundtrip():
    for e in (0, 1, 6, 40, 80, 114):
        v = F121.pow(F121.p, e)
        text = format_element(F121, v)
        assert parse_element(F121, text) == v
    assert format_element(F121, 7) == "7"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 120), st.integers(0, 120), st.integers(0, 120))
def test_field_axioms_f121(a, b, c):
    F = F121
    a, b, c = a % F.q, b % F.q, c % F.q
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.inv(F.inv(a)) == a


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1330), st.integers(1, 1330))
def test_field_axioms_f1331(a, b):
    F = F1331
    assert F.mul(F.div(a, b), b) == a
    assert F.sub(F.add(a, b), b) == a
    assert F.pow(b, F.q - 1) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 10), min_size=2, max_size=8))
def test_splitting_field_reconstructs(coeffs):
    from sscurves.ff import poly_divmod, poly_trim
    f = poly_trim(list(coeffs))
    if len(f) < 2:
        return
    L, roots = splitting_field(f, GF11)
    g = list(f)
    for r in roots:
        assert poly_eval(L, f, r.value) == 0
        while len(g) > 1:
            q, rem = poly_divmod(L, g, [L.neg(r.value), 1])
            if any(rem):
                break
            g = q
    assert len(g) == 1


def test_field_elem_mixing():
    a = GF11(3)
    z = zeta()
    s = a + z
    assert s.field == F121
    assert s - z == 3
    assert isinstance(prime_field(11)(4), FieldElem)
