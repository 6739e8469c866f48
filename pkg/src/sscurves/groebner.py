"""Buchberger's algorithm over a prime field, FGLM, and zero-dimensional solving.

Internally a monomial is a single Python int whose value is the sort key for
the active monomial order, chosen so that multiplying monomials is adding
keys:

* grevlex: key = deg * B**n - sum(e_i * B**(i-1))
* lex:     key = sum(e_i * B**(n-i))

with B = 2**16.  The packed exponent vector used for divisibility tests is
recovered from the key with a couple of shifts.  A polynomial is a pair of
parallel lists (keys descending, coefficients), kept monic in a basis.
"""

from __future__ import annotations

import heapq
import logging
import time
from typing import List, Sequence

from .errors import NotZeroDimensional, ResourceBudgetExceeded
from .ff import FiniteField
from .mpoly import GREVLEX, LEX, MonomialOrder, MultiPoly

log = logging.getLogger(__name__)

BITS = 16
BASE = 1 << BITS
FIELD_MASK = BASE - 1
DEFAULT_MAX_PAIRS = 2_000_000


class Ring:
    """Packing helper for ``n`` variables under one monomial order."""

    def __init__(self, n, order: MonomialOrder):
        self.n = n
        self.order = order
        self.grevlex = order.name == "grevlex"
        self.shift = BITS * n
        self.top = 1 << self.shift
        guard = 0
        for i in range(n):
            guard |= 1 << (BITS * i + BITS - 1)
        self.guard = guard

    def pack(self, e):
        n = self.n
        if self.grevlex:
            s = 0
            for i in range(n - 1, -1, -1):
                s = (s << BITS) | e[i]
            return sum(e) * self.top - s
        s = 0
        for v in e:
            s = (s << BITS) | v
        return s

    def expvec(self, k):
        """Packed exponents with a fixed field per variable (for divisibility)."""
        if self.grevlex:
            deg = -((-k) >> self.shift)
            return deg * self.top - k
        return k

    def unpack(self, k):
        r = self.expvec(k)
        out = []
        for _ in range(self.n):
            out.append(r & FIELD_MASK)
            r >>= BITS
        if self.grevlex:
            return tuple(out)
        return tuple(reversed(out))

    def degree(self, k):
        if self.grevlex:
            return -((-k) >> self.shift)
        return sum(self.unpack(k))

    def divides(self, ra, rb):
        """Packed exponent vectors: does a divide b?"""
        return ((rb | self.guard) - ra) & self.guard == self.guard

    def lcm(self, ka, kb):
        ea, eb = self.unpack(ka), self.unpack(kb)
        return self.pack(tuple(max(x, y) for x, y in zip(ea, eb)))

    def coprime(self, ka, kb):
        ea, eb = self.unpack(ka), self.unpack(kb)
        return all(not (x and y) for x, y in zip(ea, eb))


def _from_multipoly(R: Ring, f: MultiPoly):
    items = sorted(((R.pack(e), c) for e, c in f.terms.items()), reverse=True)
    return [k for k, _ in items], [c for _, c in items]


def _to_multipoly(R: Ring, field, gens, poly):
    keys, cs = poly
    return MultiPoly._raw(field, tuple(gens), {R.unpack(k): c for k, c in zip(keys, cs)})


def _make_monic(F, poly):
    keys, cs = poly
    if not keys or cs[0] == 1:
        return poly
    inv = F.inv(cs[0])
    if F.k == 1:
        p = F.p
        return keys, [c * inv % p for c in cs]
    return keys, [F.mul(c, inv) for c in cs]


class _Basis:
    """Leading data for the reducers."""

    def __init__(self, R: Ring):
        self.R = R
        self.polys = []      # (keys, coeffs) monic
        self.lm = []         # leading key
        self.lmr = []        # packed exponents of leading key
        self.sugar = []
        self.active = []     # usable as reducer

    def add(self, poly, sugar):
        self.polys.append(poly)
        self.lm.append(poly[0][0])
        self.lmr.append(self.R.expvec(poly[0][0]))
        self.sugar.append(sugar)
        self.active.append(True)
        return len(self.polys) - 1

    def find_reducer(self, r):
        divides = self.R.divides
        lmr = self.lmr
        for i in self.reducers:
            if divides(lmr[i], r):
                return i
        return -1


def _reduce(F, B: _Basis, poly, full=True, stats=None):
    """Reduce ``poly`` by the active elements of ``B`` (heap + dict accumulator)."""
    keys, cs = poly
    if not keys:
        return poly
    if F.k != 1:
        return _reduce_generic(F, B, poly, full, stats)
    p = F.p
    R = B.R
    expvec = R.expvec
    acc = dict(zip(keys, cs))
    heap = [-k for k in keys]
    heapq.heapify(heap)
    out_k, out_c = [], []
    polys, lm = B.polys, B.lm
    find = B.find_reducer
    pop, push = heapq.heappop, heapq.heappush
    steps = 0
    while heap:
        k = -pop(heap)
        while heap and heap[0] == -k:
            pop(heap)
        c = acc.pop(k, 0)
        if not c:
            continue
        i = find(expvec(k))
        if i < 0:
            out_k.append(k)
            out_c.append(c)
            if not full:
                # keep the remainder unreduced
                rest = sorted(acc.items(), reverse=True)
                for kk, cc in rest:
                    if cc:
                        out_k.append(kk)
                        out_c.append(cc)
                break
            continue
        steps += 1
        q = k - lm[i]
        gk, gc = polys[i]
        for j in range(1, len(gk)):
            kk = gk[j] + q
            v = acc.get(kk)
            if v is None:
                acc[kk] = (-c * gc[j]) % p
                push(heap, -kk)
            else:
                acc[kk] = (v - c * gc[j]) % p
    if stats is not None:
        stats["reductions"] = stats.get("reductions", 0) + steps
    return out_k, out_c


def _reduce_generic(F, B, poly, full, stats):
    keys, cs = poly
    R = B.R
    acc = dict(zip(keys, cs))
    heap = [-k for k in keys]
    heapq.heapify(heap)
    out_k, out_c = [], []
    steps = 0
    while heap:
        k = -heapq.heappop(heap)
        while heap and heap[0] == -k:
            heapq.heappop(heap)
        c = acc.pop(k, 0)
        if not c:
            continue
        i = B.find_reducer(R.expvec(k))
        if i < 0:
            out_k.append(k)
            out_c.append(c)
            if not full:
                for kk, cc in sorted(acc.items(), reverse=True):
                    if cc:
                        out_k.append(kk)
                        out_c.append(cc)
                break
            continue
        steps += 1
        q = k - B.lm[i]
        gk, gc = B.polys[i]
        for j in range(1, len(gk)):
            kk = gk[j] + q
            v = acc.get(kk)
            t = F.mul(c, gc[j])
            if v is None:
                acc[kk] = F.neg(t)
                heapq.heappush(heap, -kk)
            else:
                acc[kk] = F.sub(v, t)
    if stats is not None:
        stats["reductions"] = stats.get("reductions", 0) + steps
    return out_k, out_c


def _spoly(F, R, B: _Basis, i, j, lcm):
    fk, fc = B.polys[i]
    gk, gc = B.polys[j]
    qf = lcm - fk[0]
    qg = lcm - gk[0]
    acc = {}
    for k, c in zip(fk[1:], fc[1:]):
        acc[k + qf] = c
    for k, c in zip(gk[1:], gc[1:]):
        kk = k + qg
        acc[kk] = F.sub(acc.get(kk, 0), c)
    items = sorted(((k, c) for k, c in acc.items() if c), reverse=True)
    return [k for k, _ in items], [c for _, c in items]


class GroebnerResult:
    def __init__(self, basis, order, gens, field, stats):
        self.basis: List[MultiPoly] = basis
        self.order = order
        self.gens = tuple(gens)
        self.field = field
        self.stats = stats

    @property
    def is_unit(self):
        return len(self.basis) == 1 and self.basis[0].is_constant() and not self.basis[0].is_zero()

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


def groebner(polys: Sequence[MultiPoly], order: MonomialOrder = GREVLEX,
             max_pairs=DEFAULT_MAX_PAIRS, time_budget=None):
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Any finite field works; prime fields take a faster path.  Raises :class:`ResourceBudgetExceeded` if
    more than ``max_pairs`` S-pairs are processed or ``time_budget`` seconds
    pass.  An empty input, or all-zero input, gives the empty basis.
    """
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return GroebnerResult([], order, (), None, {"pairs": 0})
    field: FiniteField = polys[0].field
    gens = polys[0].gens
    R = Ring(len(gens), order)
    t0 = time.monotonic()
    stats = {"pairs": 0, "zero_reductions": 0, "reductions": 0}
    B = _Basis(R)
    B.reducers = []
    pairs = []          # heap of (sugar, lcm, i, j)

    def unit():
        one = MultiPoly.constant(field, gens, 1)
        stats["seconds"] = time.monotonic() - t0
        return GroebnerResult([one], order, gens, field, stats)

    def insert(h, sugar):
        """Gebauer-Moller update with new element h."""
        hk = h[0][0]
        hr = R.expvec(hk)
        new = B.add(h, sugar)
        # candidate pairs (new, g)
        cand = []
        for g in range(new):
            if not B.active[g]:
                continue
            l = R.lcm(hk, B.lm[g])
            cand.append((l, g, R.coprime(hk, B.lm[g])))
        # chain criterion among the new pairs
        keep = []
        lcms_r = [R.expvec(l) for l, _, _ in cand]
        n = len(cand)
        for a in range(n):
            la, ga, cop = cand[a]
            ra = lcms_r[a]
            drop = False
            if not cop:
                for b in range(n):
                    if b == a:
                        continue
                    rb = lcms_r[b]
                    if R.divides(rb, ra) and (rb != ra or (cand[b][2] or b < a)):
                        drop = True
                        break
            if not drop:
                keep.append(cand[a])
        # filter old pairs
        old = []
        for item in pairs:
            s, l, i, j = item
            if R.divides(hr, R.expvec(l)) and R.lcm(B.lm[i], hk) != l and R.lcm(B.lm[j], hk) != l:
                continue
            old.append(item)
        for l, g, cop in keep:
            if cop:
                continue
            sg = max(sugar + R.degree(l) - R.degree(hk),
                     B.sugar[g] + R.degree(l) - R.degree(B.lm[g]))
            old.append((sg, l, g, new))
        pairs[:] = old
        heapq.heapify(pairs)
        # retire basis elements whose leading term h divides
        for g in range(new):
            if B.active[g] and R.divides(hr, B.lmr[g]):
                B.active[g] = False
        B.reducers = [g for g in range(len(B.polys)) if B.active[g]]

    inputs = []
    for f in polys:
        poly = _make_monic(field, _from_multipoly(R, f))
        inputs.append((R.degree(poly[0][0]), poly))
    inputs.sort(key=lambda t: (t[0], t[1][0][0]))
    for sugar, poly in inputs:
        h = _reduce(field, B, poly)
        if not h[0]:
            continue
        h = _make_monic(field, h)
        if R.degree(h[0][0]) == 0:
            return unit()
        insert(h, max(sugar, R.degree(h[0][0])))

    while pairs:
        sugar, l, i, j = heapq.heappop(pairs)
        stats["pairs"] += 1
        if stats["pairs"] > max_pairs:
            raise ResourceBudgetExceeded(f"more than {max_pairs} S-pairs")
        if time_budget is not None and stats["pairs"] % 16 == 0 and \
                time.monotonic() - t0 > time_budget:
            raise ResourceBudgetExceeded(f"Groebner basis exceeded {time_budget}s")
        s = _spoly(field, R, B, i, j, l)
        h = _reduce(field, B, s, stats=stats)
        if not h[0]:
            stats["zero_reductions"] += 1
            continue
        h = _make_monic(field, h)
        if R.degree(h[0][0]) == 0:
            return unit()
        insert(h, sugar)

    # reduced basis: minimal leading terms, then tail-reduce
    idx = [g for g in range(len(B.polys)) if B.active[g]]
    final = []
    for g in sorted(idx, key=lambda g: B.lm[g]):
        B.reducers = [x for x in idx if x != g]
        keys, cs = B.polys[g]
        tail = _reduce(field, B, (keys[1:], cs[1:]))
        final.append(([keys[0]] + tail[0], [cs[0]] + tail[1]))
    stats["seconds"] = time.monotonic() - t0
    basis = [_to_multipoly(R, field, gens, f) for f in final]
    log.debug("groebner: %d elements, %s", len(basis), stats)
    return GroebnerResult(basis, order, gens, field, stats)


# ---------------------------------------------------------------------------
# Zero-dimensional ideals: standard monomials, FGLM, solving
# ---------------------------------------------------------------------------

def is_zero_dimensional(G: GroebnerResult):
    """Every variable has a pure power among the leading monomials."""
    if G.is_unit:
        return True
    n = len(G.gens)
    seen = [False] * n
    for g in G.basis:
        e = g.leading_monomial(G.order)
        support = [i for i, v in enumerate(e) if v]
        if len(support) == 1:
            seen[support[0]] = True
    return all(seen)


class _NormalFormer:
    """Normal forms w.r.t. a fixed reduced Groebner basis, packed keys."""

    def __init__(self, G: GroebnerResult):
        self.R = Ring(len(G.gens), G.order)
        self.F = G.field
        self.B = _Basis(self.R)
        for g in G.basis:
            self.B.add(_make_monic(self.F, _from_multipoly(self.R, g)), 0)
        self.B.reducers = list(range(len(self.B.polys)))

    def nf(self, poly):
        return _reduce(self.F, self.B, poly)

    def reducible(self, k):
        return self.B.find_reducer(self.R.expvec(k)) >= 0


def standard_monomials(G: GroebnerResult, limit=100_000):
    """Exponent tuples of the monomials outside the leading-term ideal."""
    if not is_zero_dimensional(G):
        raise NotZeroDimensional("ideal is not zero-dimensional")
    if G.is_unit:
        return []
    NF = _NormalFormer(G)
    R = NF.R
    n = len(G.gens)
    start = (0,) * n
    seen = {start}
    out = []
    stack = [start]
    while stack:
        e = stack.pop()
        if NF.reducible(R.pack(e)):
            continue
        out.append(e)
        if len(out) > limit:
            raise ResourceBudgetExceeded("too many standard monomials")
        for i in range(n):
            e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
            if e2 not in seen:
                seen.add(e2)
                stack.append(e2)
    out.sort(key=G.order.key)
    return out


def _axpy(F, target, src, c):
    """target -= c * src for sparse dict vectors."""
    for k, v in src.items():
        nv = F.sub(target.get(k, 0), F.mul(c, v))
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def fglm(G: GroebnerResult, target: MonomialOrder = LEX, time_budget=None):
    """Convert a zero-dimensional reduced basis to ``target`` order."""
    if not is_zero_dimensional(G):
        raise NotZeroDimensional("FGLM needs a zero-dimensional ideal")
    field, gens = G.field, G.gens
    if G.is_unit:
        return GroebnerResult([MultiPoly.constant(field, gens, 1)], target, gens, field, {})
    t0 = time.monotonic()
    n = len(gens)
    NF = _NormalFormer(G)
    Rs = NF.R
    Rt = Ring(n, target)
    # linear algebra state: echelon rows over standard-monomial coordinates
    pivots = {}            # pivot key -> (row dict, combo dict)
    staircase = []         # target-order exponents that are standard in the new basis
    result = []            # new basis polynomials as exponent->coeff dicts
    lead_r = []            # packed (target ring) leading monomials of result
    nf_cache = {}

    def vec_of(e):
        if e in nf_cache:
            return nf_cache[e]
        keys, cs = NF.nf(([Rs.pack(e)], [1]))
        v = dict(zip(keys, cs))
        nf_cache[e] = v
        return v

    # worklist in increasing target order
    work = [(Rt.pack((0,) * n), (0,) * n)]
    queued = {(0,) * n}
    while work:
        if time_budget is not None and time.monotonic() - t0 > time_budget:
            raise ResourceBudgetExceeded("FGLM exceeded its time budget")
        k, e = heapq.heappop(work)
        kr = Rt.expvec(k)
        if any(Rt.divides(lr, kr) for lr in lead_r):
            continue
        v = dict(vec_of(e))
        combo = {e: 1}
        # rows are kept fully reduced, so one pass over the pivots suffices
        for key in [kk for kk in v if kk in pivots]:
            c = v.get(key)
            if c:
                row, rcombo = pivots[key]
                _axpy(field, v, row, c)
                _axpy(field, combo, rcombo, c)
        if not v:
            # linear dependency: new basis element with leading monomial e
            result.append(combo)
            lead_r.append(kr)
            continue
        piv = max(v)
        inv = field.inv(v[piv])
        row = {kk: field.mul(cc, inv) for kk, cc in v.items()}
        rcombo = {ee: field.mul(cc, inv) for ee, cc in combo.items()}
        for prow, pcombo in pivots.values():
            c = prow.get(piv)
            if c:
                _axpy(field, prow, row, c)
                _axpy(field, pcombo, rcombo, c)
        pivots[piv] = (row, rcombo)
        staircase.append(e)
        for i in range(n):
            e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
            if e2 not in queued:
                queued.add(e2)
                heapq.heappush(work, (Rt.pack(e2), e2))
    basis = [MultiPoly._raw(field, gens, dict(c)) for c in result]
    basis = [b.monic(target) for b in basis]
    basis.sort(key=lambda b: target.key(b.leading_monomial(target)))
    stats = {"seconds": time.monotonic() - t0, "dimension": len(staircase)}
    return GroebnerResult(basis, target, gens, field, stats)


def lex_basis(polys, time_budget=None, max_pairs=DEFAULT_MAX_PAIRS):
    """Lex basis through grevlex + FGLM (zero-dimensional input)."""
    G = groebner(polys, GREVLEX, max_pairs=max_pairs, time_budget=time_budget)
    if G.is_unit:
        return GroebnerResult(G.basis, LEX, G.gens, G.field, G.stats)
    if not G.basis:
        raise NotZeroDimensional("zero ideal")
    return fglm(G, LEX, time_budget=time_budget)


# Alternative names
GroebnerBasis = GroebnerResult


def reduced_groebner_basis(polys, order: MonomialOrder = GREVLEX, **kw):
    polys = list(polys)
    if not polys or all(f.is_zero() for f in polys):
        raise ValueError("need at least one nonzero generator")
    return groebner(polys, order, **kw)


def eliminate(G: GroebnerResult, i):
    """Generators of G involving only the variables after the first ``i``."""
    out = []
    for g in G.basis:
        if all(not any(e[:i]) for e in g.terms):
            out.append(g)
    return out


class VarietySolution:
    """Points of V(I) with coordinates in ``field`` (raw values)."""

    def __init__(self, points, field, gens, check=None):
        self.field = field
        self.gens = tuple(gens)
        pts = []
        seen = set()
        for p in points:
            t = tuple(p)
            if t not in seen:
                seen.add(t)
                pts.append(t)
        self.raw_points = sorted(pts)
        if check is not None:
            for f in check:
                for p in self.raw_points:
                    if evaluate_in(f, field, p) != 0:
                        raise AssertionError(f"solution {p} does not satisfy {f}")

    @property
    def points(self):
        from .ff import FieldElem
        return [tuple(FieldElem(self.field, v) for v in p) for p in self.raw_points]

    def as_dicts(self):
        return [dict(zip(self.gens, p)) for p in self.raw_points]

    def __len__(self):
        return len(self.raw_points)


def evaluate_in(f: MultiPoly, L, values):
    """Evaluate ``f`` (coefficients in a subfield of L) at raw values in L."""
    from .ff import embed
    lift = embed(f.field, L)
    acc = 0
    for e, c in f.terms.items():
        t = lift(c)
        for v, k in zip(values, e):
            if k:
                t = L.mul(t, L.pow(v, k))
        acc = L.add(acc, t)
    return acc


def _specialize(g_terms, i, L, point_tail, lift):
    """Univariate polynomial in variable i after fixing variables i+1.. ."""
    coeffs = {}
    for e, c in g_terms:
        t = lift(c)
        for j, v in enumerate(point_tail):
            k = e[i + 1 + j]
            if k:
                t = L.mul(t, L.pow(v, k))
                if not t:
                    break
        if t:
            coeffs[e[i]] = L.add(coeffs.get(e[i], 0), t)
    if not coeffs:
        return []
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    from .ff import poly_trim
    return poly_trim(out)


def solve_zero_dimensional(polys, base=None, rational_only=True, lex=None,
                           time_budget=None, cap=None):
    """All points of V(polys) by back-substitution through a lex basis.

    With ``rational_only`` the points lie in ``base``; otherwise the working
    field grows to a splitting field whenever a univariate GCD does not split,
    and all earlier partial points are re-embedded.  ``lex`` may pass in a
    precomputed lex basis.
    """
    from .ff import (DEGREE_CAP, build_extension, embed, poly_gcd, _roots_raw,
                     splitting_degree)
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        raise NotZeroDimensional("zero ideal")
    gens = polys[0].gens
    F = polys[0].field
    base = base or F
    cap = DEGREE_CAP if cap is None else cap
    G = lex if lex is not None else lex_basis(polys, time_budget=time_budget)
    if G.is_unit:
        return VarietySolution([], base, gens)
    if not is_zero_dimensional(G):
        raise NotZeroDimensional("pure-power criterion fails")
    n = len(gens)
    # generators grouped by their first variable
    levels = [[] for _ in range(n)]
    for g in G.basis:
        first = min(i for e in g.terms for i, v in enumerate(e) if v) \
            if not g.is_constant() else n
        if first < n:
            levels[first].append(list(g.terms.items()))
    L = base
    partial = [()]
    for i in range(n - 1, -1, -1):
        new = []
        pending = []
        lift = embed(F, L)
        for pt in partial:
            univ = [_specialize(t, i, L, pt, lift) for t in levels[i]]
            univ = [u for u in univ if u]
            if not univ:
                raise NotZeroDimensional(f"no constraint on {gens[i]} after specialization")
            h = []
            for u in univ:
                h = poly_gcd(L, h, u)
                if len(h) == 1:
                    break
            if len(h) <= 1:
                continue
            pending.append((pt, h))
        if not rational_only:
            need = 1
            for pt, h in pending:
                need = need * splitting_degree(L, h) // _gcd(need, splitting_degree(L, h))
            if need > 1:
                if L.k * need > cap:
                    from .errors import DegreeCapExceeded
                    raise DegreeCapExceeded(f"needs degree {L.k * need} > {cap}")
                L2 = build_extension(L, need)
                up = embed(L, L2)
                pending = [(tuple(up(v) for v in pt), [up(c) for c in h]) for pt, h in pending]
                L = L2
        for pt, h in pending:
            for root in _roots_raw(L, h):
                new.append((root,) + pt)
        partial = new
        if not partial:
            break
    return VarietySolution(partial, L, gens, check=polys)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
