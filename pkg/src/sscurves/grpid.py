"""Identify small finite groups against cyclic, dihedral, symmetric and
alternating families and their direct products with cyclic groups.

Groups are plain multiplication tables.  Every positive identification is
certified by an explicit isomorphism that is checked on all products.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ClosureViolation

ASSOCIATIVITY_LIMIT = 72


@dataclass
class AbstractGroup:
    """Finite group given by its table; index 0 is the identity."""
    n: int
    table: List[List[int]]
    labels: Optional[list] = None
    _orders: Optional[List[int]] = dc_field(default=None, repr=False)
    _inv: Optional[List[int]] = dc_field(default=None, repr=False)

    def mul(self, a, b):
        return self.table[a][b]

    def inverse(self, a):
        if self._inv is None:
            self._inv = [row.index(0) for row in self.table]
        return self._inv[a]

    def element_order(self, a):
        return self.element_orders()[a]

    def element_orders(self):
        if self._orders is None:
            out = []
            for a in range(self.n):
                k, x = 1, a
                while x != 0:
                    x = self.table[x][a]
                    k += 1
                out.append(k)
            self._orders = out
        return self._orders

    def order_multiset(self):
        return dict(sorted(Counter(self.element_orders()).items()))

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.n) for b in range(a))

    def center(self):
        t = self.table
        return [a for a in range(self.n) if all(t[a][b] == t[b][a] for b in range(self.n))]

    def generated(self, gens):
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def validate(self, check_assoc=None):
        """Latin square, identity at 0, and (for small n) associativity."""
        n, t = self.n, self.table
        if len(t) != n or any(len(r) != n for r in t):
            raise ClosureViolation("table is not n x n")
        full = set(range(n))
        for a in range(n):
            if set(t[a]) != full or {t[b][a] for b in range(n)} != full:
                raise ClosureViolation("table is not a Latin square")
            if t[0][a] != a or t[a][0] != a:
                raise ClosureViolation("index 0 is not the identity")
        if check_assoc is None:
            check_assoc = n <= ASSOCIATIVITY_LIMIT
        if check_assoc:
            for a in range(n):
                ta = t[a]
                for b in range(n):
                    tab = ta[b]
                    tb = t[b]
                    for c in range(n):
                        if t[tab][c] != ta[tb[c]]:
                            raise ClosureViolation("table is not associative")
        return True


def from_table(table, identity, labels=None):
    """Reindex a table so that `identity` becomes index 0."""
    n = len(table)
    perm = [identity] + [i for i in range(n) if i != identity]
    pos = {old: new for new, old in enumerate(perm)}
    new = [[pos[table[perm[i]][perm[j]]] for j in range(n)] for i in range(n)]
    lab = [labels[i] for i in perm] if labels is not None else perm
    return AbstractGroup(n, new, lab)


def multiplication_table(G) -> AbstractGroup:
    """Abstract group of an automorphism-group result; labels are its element indices."""
    if G.order > 10_000:
        raise ValueError("group too large for a table")
    tab = G.multiplication_table()
    return from_table(tab, G.identity_index())


# ---- reference models -------------------------------------------------------

def _perm_group(perms):
    perms = list(perms)
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(a[b[k]] for k in range(len(a)))] for b in perms] for a in perms]
    return AbstractGroup(len(perms), table, perms)


@lru_cache(maxsize=None)
def cyclic(n):
    return AbstractGroup(n, [[(i + j) % n for j in range(n)] for i in range(n)])


@lru_cache(maxsize=None)
def dihedral(k):
    """Symmetries of a k-gon, order 2k; element (s, r) = reflection^s rotation^r."""
    els = [(s, r) for s in (0, 1) for r in range(k)]
    idx = {e: i for i, e in enumerate(els)}

    def m(a, b):
        s1, r1 = a
        s2, r2 = b
        return ((s1 + s2) % 2, ((-r1 if s2 else r1) + r2) % k)
    return AbstractGroup(2 * k, [[idx[m(a, b)] for b in els] for a in els], els)


def _sign(p):
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


@lru_cache(maxsize=None)
def symmetric(k):
    return _perm_group(permutations(range(k)))


@lru_cache(maxsize=None)
def alternating(k):
    return _perm_group(p for p in permutations(range(k)) if _sign(p) == 1)


def direct_product(G: AbstractGroup, H: AbstractGroup):
    m = H.n
    table = [[G.table[a // m][b // m] * m + H.table[a % m][b % m]
              for b in range(G.n * m)] for a in range(G.n * m)]
    return AbstractGroup(G.n * m, table)


# ---- names ------------------------------------------------------------------

FAMILIES = ("C", "D", "S", "A")


@dataclass(frozen=True)
class GroupName:
    """A direct product of named factors; no factors means trivial, or
    unidentified when order > 1."""
    factors: Tuple[Tuple[str, int], ...]
    order: int

    def __str__(self):
        if not self.factors:
            return "1" if self.order == 1 else f"unidentified(order {self.order})"
        return "x".join(f"{f}{k}" for f, k in self.factors)

    @property
    def identified(self):
        return bool(self.factors) or self.order == 1

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in ("1", "trivial"):
            return cls((), 1)
        if text.startswith("unidentified"):
            return cls((), int(text.split()[-1].rstrip(")")))
        facs = []
        for part in text.split("x"):
            fam, k = part[0], int(part[1:])
            if fam not in FAMILIES:
                raise ValueError(f"unknown family in {text!r}")
            facs.append((fam, k))
        name = cls(tuple(facs), 1)
        return cls(name.factors, name.model().n)

    def model(self) -> AbstractGroup:
        if not self.factors:
            if self.order != 1:
                raise ValueError("unidentified groups have no model")
            return cyclic(1)
        out = None
        for fam, k in self.factors:
            g = family_model(fam, k)
            out = g if out is None else direct_product(out, g)
        return out


def family_order(fam, k):
    return {"C": k, "D": 2 * k, "S": factorial(k), "A": factorial(k) // 2}[fam]


def family_model(fam, k):
    return {"C": cyclic, "D": dihedral, "S": symmetric, "A": alternating}[fam](k)


def _families_of_order(n):
    """(family, k) pairs of order n, excluding aliases of smaller families."""
    out = [("C", n)]
    if n % 2 == 0 and n // 2 >= 3:
        out.append(("D", n // 2))
    k = 3
    while factorial(k) <= n:
        if factorial(k) == n:
            out.append(("S", k))
        if factorial(k) // 2 == n and k >= 4:
            out.append(("A", k))
        k += 1
    return out


def candidate_names(n):
    """Names in the order the staged identification tries them."""
    if n == 1:
        return [GroupName((), 1)]
    out = []
    out.append(GroupName((("C", n),), n))
    if n % 2 == 0:
        k = n // 2
        if k == 2:
            out.append(GroupName((("C", 2), ("C", 2)), n))
        elif k >= 3:
            out.append(GroupName((("D", k),), n))
    k = 3
    while factorial(k) <= n:
        if factorial(k) == n:
            out.append(GroupName((("S", k),), n))
        k += 1
    k = 4
    while factorial(k) // 2 <= n:
        if factorial(k) // 2 == n:
            out.append(GroupName((("A", k),), n))
        k += 1
    for n1 in sorted((d for d in range(2, n) if n % d == 0), reverse=True):
        for fam, k in _families_of_order(n1):
            name = GroupName(((fam, k), ("C", n // n1)), n)
            if name not in out:
                out.append(name)
    return out


# ---- isomorphism ------------------------------------------------------------

def _invariants(G: AbstractGroup):
    return (G.n, tuple(sorted(G.order_multiset().items())), G.is_abelian(), len(G.center()))


def small_generating_set(G: AbstractGroup, H: Optional[AbstractGroup] = None):
    """A short generating set, preferring elements with few order-matching
    images in H (cheaper backtracking)."""
    if G.n == 1:
        return []
    orders = G.element_orders()
    hcount = Counter(H.element_orders()) if H is not None else Counter(orders)
    ranked = sorted(range(1, G.n), key=lambda a: (hcount[orders[a]], -orders[a], a))
    for a in ranked:
        if len(G.generated([a])) == G.n:
            return [a]
    best = None
    for i, a in enumerate(ranked):
        for b in ranked[i + 1:]:
            cost = hcount[orders[a]] * hcount[orders[b]]
            if best is not None and cost >= best[0]:
                continue
            if len(G.generated([a, b])) == G.n:
                best = (cost, [a, b])
    if best is not None:
        return best[1]
    gens = []
    span = {0}
    for a in ranked:
        if a not in span:
            gens.append(a)
            span = G.generated(gens)
            if len(span) == G.n:
                break
    return gens


def _extend(G, H, gens, images):
    """Extend generator images to a map G -> H; None if inconsistent."""
    phi = [None] * G.n
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y = G.table[x][g]
                v = H.table[phi[x]][h]
                if phi[y] is None:
                    phi[y] = v
                    nxt.append(y)
                elif phi[y] != v:
                    return None
        frontier = nxt
    return phi


def verify_isomorphism(G, H, phi):
    if G.n != H.n or len(phi) != G.n or len(set(phi)) != G.n:
        return False
    tg, th = G.table, H.table
    return all(phi[tg[a][b]] == th[phi[a]][phi[b]] for a in range(G.n) for b in range(G.n))


def is_isomorphic(G: AbstractGroup, H: AbstractGroup):
    """(True, witness) with a verified isomorphism G -> H, else (False, None)."""
    if _invariants(G) != _invariants(H):
        return False, None
    if G.n == 1:
        return True, [0]
    gens = small_generating_set(G, H)
    go, ho = G.element_orders(), H.element_orders()
    pools = [[h for h in range(H.n) if ho[h] == go[g]] for g in gens]
    for images in product(*pools):
        if len(set(images)) < len(images):
            continue
        phi = _extend(G, H, gens, images)
        if phi is not None and len(set(phi)) == G.n and verify_isomorphism(G, H, phi):
            return True, phi
    return False, None


def identify_group(G: AbstractGroup) -> GroupName:
    """Staged identification: cyclic, dihedral, symmetric, alternating, then
    (family) x (cyclic) products.  Returns the first certified match."""
    for name in candidate_names(G.n):
        ok, _ = is_isomorphic(G, name.model())
        if ok:
            return name
    return GroupName((), G.n)


def identify(aut_result) -> str:
    """Name of an automorphism-group result, stored on it as group_name."""
    name = str(identify_group(multiplication_table(aut_result)))
    aut_result.group_name = name
    return name
