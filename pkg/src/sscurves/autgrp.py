"""Automorphism groups of curves V(Q, P) in P^3.

For each pattern g(params) of the similitude group of Q we solve
g.P = r P (mod Q) for the parameters, instantiate g at every solution, and
take the union modulo scalars.  The action is g.P(x,y,z,w) = P((x,y,z,w).tg),
so (gh).P = h.(g.P).

Two engines produce the solution set:

* ``groebner``: grevlex basis, FGLM to lex, then back-substitution.
* ``brute``: exhaustive enumeration over F_q of all free parameters, organised
  as a meet-in-the-middle join on g = A.B, i.e. A.P = r B^{-1}.P (mod Q).

Both use the split form g = A.B: A.P - r B^{-1}.P has the same coefficient
ideal as g.P - rP (B preserves Q and is polynomially invertible) but much
lower degree.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional

import numpy as np

from .errors import ClosureViolation, EngineDisagreement, SingularMatrix
from .ff import FieldElem, FiniteField, common_field, embed, restrict
from .groebner import GREVLEX, evaluate_in, fglm, groebner, solve_zero_dimensional
from .matrices import (format_matrix, mat_inv, mat_mul, projective_canonical,
                       projective_order)
from .mpoly import CURVE_VARS, MultiPoly, reduce_mod_quadric
from .ortho import PatternMatrix, QuadraticForm, bruhat_patterns, similitude_factor

log = logging.getLogger(__name__)

ENGINES = ("groebner", "brute", "both")


# ---------------------------------------------------------------------------
# Constraint systems
# ---------------------------------------------------------------------------

def _act(M, P: MultiPoly, gens):
    """M.P as a polynomial in gens + (x,y,z,w); M is a symbolic 16-tuple."""
    allg = tuple(gens) + CURVE_VARS
    X = [MultiPoly.variable(P.field, allg, v) for v in CURVE_VARS]
    zero = MultiPoly.zero(P.field, allg)
    images = []
    for i in range(4):
        acc = zero
        for j in range(4):
            entry = M[4 * i + j]
            if entry:
                acc = acc + entry.embed_in(allg) * X[j]
        images.append(acc)
    return P.substitute(images)


def _coefficient_system(expr, Q, gens):
    Qa = Q.form.embed_in(tuple(gens) + CURVE_VARS)
    nf = reduce_mod_quadric(expr, Qa)
    eqs = []
    for mono, coeff in sorted(nf.coefficients_in(CURVE_VARS).items(), reverse=True):
        if coeff:
            eqs.append(coeff)
    return eqs


def _r_poly(pat, allg):
    return MultiPoly.variable(pat.field, allg, "r")


def build_constraint_system(Q: QuadraticForm, P: MultiPoly, pat: PatternMatrix):
    """Coefficients of NF(g.P - rP, Q) together with the pattern's side constraints."""
    P = _curve_poly(P, Q.field)
    allg = pat.gens + CURVE_VARS
    gP = _act(pat.entries, P, pat.gens)
    expr = gP - _r_poly(pat, allg) * P.embed_in(allg)
    return _coefficient_system(expr, Q, pat.gens) + list(pat.constraints)


def split_constraint_system(Q: QuadraticForm, P: MultiPoly, pat: PatternMatrix):
    """Same ideal as :func:`build_constraint_system`, from A.P - r B^{-1}.P."""
    P = _curve_poly(P, Q.field)
    allg = pat.gens + CURVE_VARS
    lhs = _act(pat.left(), P, pat.gens)
    rhs = _act(pat.right_inverse(), P, pat.gens)
    expr = lhs - _r_poly(pat, allg) * rhs
    return _coefficient_system(expr, Q, pat.gens) + list(pat.constraints)


def _curve_poly(P, field):
    if P.gens != CURVE_VARS:
        raise ValueError("curve polynomial must be in x, y, z, w")
    if P.field != field:
        P = P.change_field(field)
    return P


# ---------------------------------------------------------------------------
# Projective automorphisms and groups
# ---------------------------------------------------------------------------

class ProjAutomorphism:
    """Canonical representative (first nonzero entry 1) of a class in PGL_4."""

    __slots__ = ("field", "entries")

    def __init__(self, field: FiniteField, entries, canonical=False):
        self.field = field
        self.entries = tuple(entries) if canonical else projective_canonical(field, entries)

    @property
    def canonical(self):
        return True

    @property
    def matrix(self):
        F = self.field
        return [[FieldElem(F, self.entries[4 * i + j]) for j in range(4)] for i in range(4)]

    def rows(self):
        return [list(self.entries[4 * i:4 * i + 4]) for i in range(4)]

    def key(self):
        return self.entries

    def __eq__(self, other):
        if not isinstance(other, ProjAutomorphism):
            return NotImplemented
        if self.field == other.field:
            return self.entries == other.entries
        L = common_field(self.field, other.field)
        return self.lift(L).entries == other.lift(L).entries

    def __hash__(self):
        return hash(self.entries) if self.field.k == 1 else hash((self.field, self.entries))

    def lift(self, L):
        f = embed(self.field, L)
        return ProjAutomorphism(L, tuple(f(v) for v in self.entries), canonical=True)

    def __mul__(self, other):
        L = common_field(self.field, other.field)
        a, b = self.lift(L), other.lift(L)
        return ProjAutomorphism(L, mat_mul(L, a.entries, b.entries))

    def inverse(self):
        return ProjAutomorphism(self.field, mat_inv(self.field, self.entries))

    def order(self):
        return projective_order(self.field, self.entries)

    def text(self):
        return format_matrix(self.field, self.entries)

    def __repr__(self):
        return f"ProjAutomorphism({self.text()})"


def scalar_canonicalize(g, field=None):
    """Canonical representative of a matrix (rows or flat tuple) modulo scalars."""
    if isinstance(g, ProjAutomorphism):
        return g
    if isinstance(g, (list, tuple)) and g and isinstance(g[0], (list, tuple)):
        flat = [v for row in g for v in row]
    else:
        flat = list(g)
    if field is None:
        fields = [v.field for v in flat if isinstance(v, FieldElem)]
        if not fields:
            from .ff import GF11
            field = GF11
        else:
            field = fields[0]
            for f in fields[1:]:
                field = common_field(field, f)
    raw = tuple(field.coerce(v) for v in flat)
    if not any(raw):
        raise SingularMatrix("zero matrix")
    from .matrices import mat_det
    if not mat_det(field, raw):
        raise SingularMatrix("matrix is not invertible")
    return ProjAutomorphism(field, raw)


def smallest_field(F, elements):
    """Smallest canonical field containing every entry of the raw matrices."""
    from .ff import extension_of_degree
    from math import gcd
    if F.k == 1:
        return F
    deg = 1
    for M in elements:
        for v in M:
            if v >= F.p:
                sub, _ = restrict(F, v)
                deg = deg * sub.k // gcd(deg, sub.k)
    return extension_of_degree(F.p, deg)


def lower_to(F, L, raw):
    """Map raw elements of F lying in the subfield L back to L's encoding."""
    if F == L:
        return raw
    up = embed(L, F)
    table = {up(u): u for u in range(L.q)}
    return tuple(table[v] for v in raw)


@dataclass
class AutGroupResult:
    curve: str
    field: FiniteField
    elements: List[tuple]               # canonical raw 16-tuples over field
    engine: str
    mode: str
    timings: Dict[str, float] = dc_field(default_factory=dict)
    pattern_counts: Dict[str, int] = dc_field(default_factory=dict)
    generators: List[tuple] = dc_field(default_factory=list)
    group_name: Optional[str] = None
    _table: Optional[list] = None

    @property
    def order(self):
        return len(self.elements)

    def proj(self, i):
        return ProjAutomorphism(self.field, self.elements[i], canonical=True)

    def automorphisms(self):
        return [self.proj(i) for i in range(self.order)]

    def index(self):
        return {e: i for i, e in enumerate(self.elements)}

    def multiplication_table(self):
        """table[i][j] = index of elements[i] * elements[j] (re-canonicalized)."""
        if self._table is None:
            F = self.field
            idx = self.index()
            tab = []
            for a in self.elements:
                row = []
                for b in self.elements:
                    c = projective_canonical(F, mat_mul(F, a, b))
                    j = idx.get(c)
                    if j is None:
                        raise ClosureViolation("product left the element set")
                    row.append(j)
                tab.append(row)
            self._table = tab
        return self._table

    def identity_index(self):
        from .matrices import IDENTITY
        return self.index()[IDENTITY]

    def verify_group(self):
        """Closure, identity and inverses; raises ClosureViolation."""
        from .matrices import IDENTITY
        if IDENTITY not in self.index():
            raise ClosureViolation("identity missing")
        tab = self.multiplication_table()
        e = self.identity_index()
        for i, row in enumerate(tab):
            if e not in row:
                raise ClosureViolation(f"element {i} has no inverse")
        return True

    def contains(self, g):
        pa = scalar_canonicalize(g, None) if not isinstance(g, ProjAutomorphism) else g
        L = common_field(self.field, pa.field)
        mine = {self.proj(i).lift(L).entries for i in range(self.order)}
        return pa.lift(L).entries in mine

    def to_dict(self):
        return {
            "curve": self.curve,
            "field": self.field.to_dict(),
            "mode": self.mode,
            "order": self.order,
            "group_name": self.group_name,
            "generators": [format_matrix(self.field, g) for g in self.generators],
            "elements_count": len(self.elements),
            "engine": self.engine,
            "timings": {k: round(v, 3) for k, v in self.timings.items()},
        }


def generated_subgroup(table, gens_idx, identity):
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens_idx:
                b = table[a][g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def generating_set(G: AutGroupResult):
    """Smallest generating set found by exhaustive search over 1, 2, then 3 elements,
    falling back to greedy growth; deterministic for a fixed element order."""
    n = G.order
    if n <= 1:
        return []
    tab = G.multiplication_table()
    e = G.identity_index()
    order_idx = sorted(range(n), key=lambda i: G.elements[i])
    cands = [i for i in order_idx if i != e]
    for size in (1, 2, 3):
        if size > 1 and len(cands) ** size > 2_000_000:
            break
        for combo in itertools.combinations(cands, size):
            if len(generated_subgroup(tab, combo, e)) == n:
                return [G.elements[i] for i in combo]
    chosen = []
    span = {e}
    for i in cands:
        if i not in span:
            chosen.append(i)
            span = generated_subgroup(tab, chosen, e)
            if len(span) == n:
                break
    return [G.elements[i] for i in chosen]


# ---------------------------------------------------------------------------
# Groebner engine
# ---------------------------------------------------------------------------

def solve_pattern_groebner(Q, P, pat: PatternMatrix, rational=True, time_budget=None):
    """Solutions of one pattern system as (field, [raw canonical matrices])."""
    t0 = time.monotonic()
    eqs = split_constraint_system(Q, P, pat)
    G = groebner(eqs, GREVLEX, time_budget=time_budget)
    stats = {"gb_seconds": time.monotonic() - t0, "gb_size": len(G)}
    if G.is_unit:
        return Q.field, [], stats
    L = fglm(G)
    sol = solve_zero_dimensional(eqs, Q.field, rational_only=rational, lex=L)
    F = sol.field
    mats = []
    for pt in sol.raw_points:
        g = tuple(evaluate_in(a, F, pt) if a else 0 for a in pat.entries)
        if similitude_factor(F, g, _phi_in(Q, F)) is None:
            raise AssertionError(f"{pat.id}: solution is not a similitude")
        mats.append(projective_canonical(F, g))
    stats["solutions"] = len(sol)
    stats["seconds"] = time.monotonic() - t0
    return F, mats, stats


def _phi_in(Q, F):
    f = embed(Q.field, F)
    return tuple(f(v) for v in Q.phi)


# ---------------------------------------------------------------------------
# Brute-force engine (rational points only)
# ---------------------------------------------------------------------------

_CUBICS = [e for e in itertools.product(range(4), repeat=4) if sum(e) == 3]
_CUBICS.sort(reverse=True)


def _solve_mod(A, p):
    """Inverse of a square integer matrix mod p (Gauss-Jordan)."""
    n = len(A)
    M = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] % p)
        M[col], M[piv] = M[piv], M[col]
        inv = pow(M[col][col], -1, p)
        M[col] = [v * inv % p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [(a - f * b) % p for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


class _CubicKeyer:
    """Maps batches of 4x4 matrices g to the normal-form coefficients of g.P mod Q."""

    def __init__(self, Q: QuadraticForm, P: MultiPoly):
        F = Q.field
        if F.k != 1:
            raise ValueError("brute engine needs a prime field")
        p = F.p
        self.p = p
        # 20 evaluation points with an invertible cubic Vandermonde matrix
        pts, rows = [], []
        for v in itertools.product(range(p), repeat=4):
            if not any(v):
                continue
            row = [_mono_val(v, e, p) for e in _CUBICS]
            if _rank_mod(rows + [row], p) > len(rows):
                pts.append(v)
                rows.append(row)
                if len(rows) == 20:
                    break
        Minv = _solve_mod(rows, p)           # coefficients = Minv @ values
        # normal-form map on coefficient vectors
        idx = {e: i for i, e in enumerate(_CUBICS)}
        N = [[0] * 20 for _ in range(20)]
        for j, e in enumerate(_CUBICS):
            mono = MultiPoly(F, CURVE_VARS, {e: 1})
            nf = reduce_mod_quadric(mono, Q.form)
            for e2, c in nf.terms.items():
                N[idx[e2]][j] = c
        keep = [i for i in range(20) if any(N[i])]
        K = np.array(N, dtype=np.int64)[keep] @ np.array(Minv, dtype=np.int64) % p
        self.K = K                            # (16, 20)
        self.V = np.array(pts, dtype=np.int64).T  # (4, 20)
        self.terms = [(np.array(e), c) for e, c in P.terms.items()]
        self.nkeep = len(keep)
        self.weights = np.array([p ** i for i in range(self.nkeep)], dtype=np.int64)

    def keys(self, mats):
        """mats: (n,4,4) int64 array -> (n,) int64 keys (base-p packing)."""
        p = self.p
        W = np.einsum("nij,jk->nik", mats, self.V) % p      # (n,4,20)
        vals = np.zeros((mats.shape[0], self.V.shape[1]), dtype=np.int64)
        pw = [[np.ones_like(W[:, 0, :])] for _ in range(4)]
        for i in range(4):
            for k in range(1, 4):
                pw[i].append(pw[i][-1] * W[:, i, :] % p)
        for e, c in self.terms:
            t = np.full_like(vals, c)
            for i in range(4):
                if e[i]:
                    t = t * pw[i][e[i]] % p
            vals = (vals + t) % p
        coeffs = vals @ self.K.T % p                        # (n,16)
        return coeffs @ self.weights


def _mono_val(v, e, p):
    r = 1
    for a, k in zip(v, e):
        r = r * pow(a, k, p) % p
    return r


def _rank_mod(rows, p):
    M = [list(r) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], -1, p)
        M[rank] = [v * inv % p for v in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col]:
                f = M[r][col]
                M[r] = [(a - f * b) % p for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def _derived_variables(pat: PatternMatrix):
    """Variables fixed by a constraint w*u - 1, mapped to u (a polynomial)."""
    out = {}
    for c in pat.constraints:
        sup = c.support_vars()
        if sup == ["r"] or "v" in sup:
            continue
        for w in reversed(pat.gens):
            if w not in sup or w in out:
                continue
            i = pat.gens.index(w)
            if all(e[i] <= 1 for e in c.terms):
                parts = c.coefficients_in((w,))
                if set(parts) == {(0,), (1,)} and parts[(0,)] == -1:
                    out[w] = parts[(1,)].embed_in(pat.gens)
                    break
    return out


def _side_grid(pat: PatternMatrix, M, derived, p):
    """All parameter points for the variables in symbolic matrix M.

    Returns (names, values array (n, k)) including derived variables.
    """
    used = set()
    for a in M:
        used.update(a.support_vars())
    for w in list(used):
        if w in derived:
            used.update(derived[w].support_vars())
    free = [g for g in pat.gens if g in used and g not in derived and g not in ("r", "v")]
    need = [w for w in pat.gens if w in used and w in derived]
    grids = np.array(list(itertools.product(range(p), repeat=len(free))), dtype=np.int64) \
        if free else np.zeros((1, 0), dtype=np.int64)
    cols = {g: grids[:, i] for i, g in enumerate(free)}
    ok = np.ones(grids.shape[0], dtype=bool)
    inv_table = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    for w in need:
        u = _eval_np(derived[w], cols, p, grids.shape[0])
        ok &= u != 0
        cols[w] = inv_table[u]
    names = free + need
    vals = np.stack([cols[g][ok] for g in names], axis=1) if names else np.zeros((int(ok.sum()), 0), dtype=np.int64)
    return names, vals


def _eval_np(f: MultiPoly, cols, p, n):
    acc = np.zeros(n, dtype=np.int64)
    for e, c in f.terms.items():
        t = np.full(n, c, dtype=np.int64)
        for g, k in zip(f.gens, e):
            if k:
                t = t * np.power(cols[g], k) % p
        acc = (acc + t) % p
    return acc


def _instantiate_np(M, names, vals, p):
    cols = {g: vals[:, i] for i, g in enumerate(names)}
    n = vals.shape[0]
    out = np.zeros((n, 4, 4), dtype=np.int64)
    for i in range(4):
        for j in range(4):
            a = M[4 * i + j]
            if a:
                out[:, i, j] = _eval_np(a, cols, p, n)
    return out


def solve_pattern_brute(Q, P, pat: PatternMatrix, keyer=None, chunk=50_000):
    """All F_q-rational parameter points of a pattern (r = 1), as canonical matrices."""
    t0 = time.monotonic()
    F = Q.field
    p = F.p
    keyer = keyer or _CubicKeyer(Q, P)
    derived = _derived_variables(pat)
    A_sym, Bi_sym = pat.left(), pat.right_inverse()
    a_names, a_vals = _side_grid(pat, A_sym, derived, p)
    b_names, b_vals = _side_grid(pat, Bi_sym, derived, p)
    if set(a_names) & set(b_names):
        raise AssertionError(f"{pat.id}: split sides share parameters")
    b_mats = _instantiate_np(Bi_sym, b_names, b_vals, p)
    b_keys = keyer.keys(b_mats)
    order = np.argsort(b_keys, kind="stable")
    b_sorted = b_keys[order]
    mats = []
    for start in range(0, a_vals.shape[0], chunk):
        av = a_vals[start:start + chunk]
        a_mats = _instantiate_np(A_sym, a_names, av, p)
        a_keys = keyer.keys(a_mats)
        pos = np.searchsorted(b_sorted, a_keys)
        pos[pos >= len(b_sorted)] = len(b_sorted) - 1 if len(b_sorted) else 0
        hit = np.nonzero(b_sorted[pos] == a_keys)[0] if len(b_sorted) else []
        for h in hit:
            lo = pos[h]
            while lo < len(b_sorted) and b_sorted[lo] == a_keys[h]:
                bi = order[lo]
                point = dict(zip(a_names, (int(v) for v in av[h])))
                point.update(zip(b_names, (int(v) for v in b_vals[bi])))
                for g in pat.gens:
                    point.setdefault(g, 1 if g in ("r", "v") else 0)
                g = pat.instantiate(point)
                mats.append(projective_canonical(F, g))
                lo += 1
    stats = {"seconds": time.monotonic() - t0, "solutions": len(mats),
             "search_a": int(a_vals.shape[0]), "search_b": int(b_vals.shape[0])}
    return F, mats, stats


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------

def automorphism_group(Q: QuadraticForm, P: MultiPoly, q=11, q_prime=11, engine="groebner",
                       curve_id="curve", patterns=None, time_budget=None, on_pattern=None):
    """Aut(V(Q, P)) over F_q (q_prime = q) or over the algebraic closure (q_prime = 0).

    In closure mode the scalar r is pinned to 1 (cubing is surjective on the
    algebraic closure), so each projective class appears once per cube root
    of unity; the union is taken after canonicalization.
    """
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}")
    if q != Q.field.q:
        raise ValueError("q must equal the field of Q")
    rational = q_prime == q
    if not rational and q_prime != 0:
        raise ValueError("q_prime must be q (rational points) or 0 (closure)")
    if engine != "groebner" and not rational:
        raise ValueError("the brute engine only covers rational points")
    P = _curve_poly(P, Q.field)
    pats = patterns or bruhat_patterns(Q.kind, "rational", epsilon=Q.epsilon, field=Q.field)
    t0 = time.monotonic()
    results = {}
    timings = {}
    counts = {}
    engines = ["groebner", "brute"] if engine == "both" else [engine]
    for eng in engines:
        found = []
        te = time.monotonic()
        keyer = _CubicKeyer(Q, P) if eng == "brute" else None
        for pat in pats:
            if eng == "groebner":
                F, mats, st = solve_pattern_groebner(Q, P, pat, rational, time_budget)
            else:
                F, mats, st = solve_pattern_brute(Q, P, pat, keyer)
            counts[f"{eng}:{pat.id}"] = len(mats)
            found.append((F, mats))
            if on_pattern:
                on_pattern(eng, pat, st)
        timings[eng] = time.monotonic() - te
        results[eng] = _merge(Q.field, found)
    if engine == "both":
        (Fa, ea), (Fb, eb) = results["groebner"], results["brute"]
        if Fa != Fb or set(ea) != set(eb):
            raise EngineDisagreement(
                f"{curve_id}: groebner found {len(ea)} elements, brute found {len(eb)}")
    F, elems = results[engines[0]]
    timings["total"] = time.monotonic() - t0
    res = AutGroupResult(curve_id, F, sorted(elems), engine,
                         "rational" if rational else "closure", timings, counts)
    res.verify_group()
    res.generators = generating_set(res)
    return res


def _merge(base, found):
    """Union of canonical matrices from several fields, in the smallest common field."""
    L = base
    for F, mats in found:
        if mats:
            L = common_field(L, F)
    allm = set()
    for F, mats in found:
        up = embed(F, L)
        for m in mats:
            allm.add(tuple(up(v) for v in m) if F != L else m)
    S = smallest_field(L, allm)
    if S != L:
        allm = {lower_to(L, S, m) for m in allm}
    return S, allm
