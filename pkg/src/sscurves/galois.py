"""Frobenius twisting on automorphism groups over the algebraic closure.

For C defined over F_p with Aut(C) computed over a finite extension, the
F_p-forms of C correspond to sigma-conjugacy classes of Aut(C), where
a ~ b iff a = g^-1 b sigma(g), and the form attached to a has
F_p-automorphism group the sigma-stabilizer {g : a = g^-1 a sigma(g)}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional

from .errors import ClosureViolation
from .grpid import AbstractGroup, from_table
from .matrices import mat_frobenius, projective_canonical


@dataclass
class SigmaAction:
    group: object                   # AutGroupResult
    sigma: List[int]                # sigma[i] = index of Frob(elements[i])

    @property
    def order(self):
        return len(self.sigma)

    def is_trivial(self):
        return all(i == s for i, s in enumerate(self.sigma))

    def twisted(self, g, a):
        """g^-1 * a * sigma(g) as an index."""
        t = self.group.multiplication_table()
        inv = _inverses(self.group)
        return t[t[inv[g]][a]][self.sigma[g]]


def _inverses(G):
    t = G.multiplication_table()
    e = G.identity_index()
    return [row.index(e) for row in t]


def frobenius_map(G) -> SigmaAction:
    """Entrywise p-th power on canonical representatives, as an index map."""
    F = G.field
    idx = G.index()
    sigma = []
    for a in G.elements:
        b = projective_canonical(F, mat_frobenius(F, a))
        j = idx.get(b)
        if j is None:
            raise ClosureViolation("Frobenius image is not in the group")
        sigma.append(j)
    t = G.multiplication_table()
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise ClosureViolation("Frobenius is not a bijection on the group")
    for a in range(n):
        for b in range(n):
            if sigma[t[a][b]] != t[sigma[a]][sigma[b]]:
                raise ClosureViolation("Frobenius is not a group automorphism")
    return SigmaAction(G, sigma)


def sigma_conjugacy_classes(S: SigmaAction) -> List[List[int]]:
    """Classes as sorted index lists, ordered by smallest member."""
    n = S.order
    seen = [False] * n
    classes = []
    for a in range(n):
        if seen[a]:
            continue
        orbit = sorted({S.twisted(g, a) for g in range(n)})
        for b in orbit:
            seen[b] = True
        classes.append(orbit)
    return classes


def sigma_stabilizer(S: SigmaAction, a: int) -> AbstractGroup:
    """The subgroup {g : g^-1 a sigma(g) = a}; labels are element indices of
    the ambient group."""
    G = S.group
    members = [g for g in range(S.order) if S.twisted(g, a) == a]
    t = G.multiplication_table()
    pos = {g: i for i, g in enumerate(members)}
    sub = []
    for g in members:
        row = []
        for h in members:
            k = pos.get(t[g][h])
            if k is None:
                raise ClosureViolation("sigma-stabilizer is not closed")
            row.append(k)
        sub.append(row)
    return from_table(sub, pos[G.identity_index()], labels=members)


@dataclass
class GaloisReport:
    curve: str
    group_order: int
    class_count: int
    class_sizes: List[int]
    representatives: List[int]
    stabilizer_orders: List[int]        # per class, in class order
    expected_from_tables: Optional[List[int]] = None

    @property
    def orbit_stabilizer_ok(self):
        return all(c * s == self.group_order
                   for c, s in zip(self.class_sizes, self.stabilizer_orders))

    @property
    def match(self):
        if self.expected_from_tables is None:
            return None
        return sorted(self.stabilizer_orders) == sorted(self.expected_from_tables)

    def to_dict(self):
        return {
            "curve": self.curve,
            "group_order": self.group_order,
            "class_count": self.class_count,
            "class_sizes": self.class_sizes,
            "stabilizer_orders": sorted(self.stabilizer_orders),
            "expected_from_tables": (sorted(self.expected_from_tables)
                                     if self.expected_from_tables is not None else None),
            "orbit_stabilizer": self.orbit_stabilizer_ok,
            "match": self.match,
        }


def galois_report(G, expected: Optional[List[int]] = None) -> GaloisReport:
    S = frobenius_map(G)
    classes = sigma_conjugacy_classes(S)
    reps = [c[0] for c in classes]
    stabs = [sigma_stabilizer(S, a).n for a in reps]
    return GaloisReport(G.curve, S.order, len(classes), [len(c) for c in classes],
                        reps, stabs, expected)


def stabilizer_multiset(report: GaloisReport) -> Dict[int, int]:
    return dict(sorted(Counter(report.stabilizer_orders).items()))
