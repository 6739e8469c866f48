"""Quadratic forms of types N1, N2, Dege and the pattern families for their
orthogonal similitude groups.

Every similitude g (with tg.phi.g = mu.phi) lies in exactly one Bruhat cell,
and each cell is parametrized by a product of explicit factor matrices whose
entries are polynomials in a handful of parameters.  A :class:`PatternMatrix`
keeps the factors, so callers can split g = A.B at a chosen point.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Sequence, Tuple

from .ff import GF11, FiniteField
from .matrices import from_rows, mat_mul, mat_transpose
from .mpoly import MultiPoly, parse_poly

KINDS = ("N1", "N2", "Dege")
DEFAULT_EPSILON = 2  # a non-square in F_11

# Parameter precedence for the solver, auxiliaries interleaved as in the
# grevlex orders used for these systems.
_ORDER = {
    "N1": ("a1", "a2", "b1", "b2", "c", "s", "d1", "d2", "e1", "e2"),
    "N2": ("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2", "t"),
    "Dege": ("a1", "a2", "a3", "s", "b", "c", "d", "t", "e1", "e2", "e3"),
}
CORE_PARAMS = {
    "N1": ("a1", "a2", "b1", "b2", "c", "d1", "d2", "e1", "e2"),
    "N2": ("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"),
    "Dege": ("a1", "a2", "a3", "b", "c", "d", "e1", "e2", "e3"),
}


class QuadraticForm:
    """One of the three normal forms of a rank >= 3 quadric in P^3."""

    def __init__(self, kind, epsilon=None, field: FiniteField = GF11):
        if kind not in KINDS:
            raise ValueError(f"unknown quadratic form kind {kind!r}")
        self.kind = kind
        self.field = field
        if kind == "N2":
            eps = DEFAULT_EPSILON if epsilon is None else field.coerce(epsilon)
            if eps == 0 or field.is_square(eps):
                raise ValueError("epsilon must be a non-square")
            self.epsilon = eps
        else:
            if epsilon is not None:
                raise ValueError("epsilon only applies to N2")
            self.epsilon = None
        self.phi = coefficient_matrix(self)
        self.form = self._form()

    def _form(self):
        F = self.field
        if self.kind == "N1":
            return parse_poly("2*x*w + 2*y*z", field=F)
        if self.kind == "N2":
            return parse_poly(f"2*x*w + y^2 - {self.epsilon}*z^2", field=F)
        return parse_poly("2*y*w + z^2", field=F)

    def __eq__(self, other):
        return (isinstance(other, QuadraticForm) and other.kind == self.kind
                and other.epsilon == self.epsilon and other.field == self.field)

    def __hash__(self):
        return hash((self.kind, self.epsilon))

    def __repr__(self):
        if self.kind == "N2":
            return f"QuadraticForm('N2', epsilon={self.epsilon})"
        return f"QuadraticForm({self.kind!r})"

    @property
    def rank(self):
        return 3 if self.kind == "Dege" else 4


def coefficient_matrix(Q: QuadraticForm):
    """phi with Q(v) = (1/2) v phi tv, as a flat 16-tuple."""
    F = Q.field
    if Q.kind == "N1":
        rows = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    elif Q.kind == "N2":
        rows = [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, -Q.epsilon, 0], [1, 0, 0, 0]]
    else:
        rows = [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]
    return from_rows(F, rows)


def similitude_factor(F, g, phi):
    """mu with tg.phi.g = mu.phi and mu != 0, else None."""
    lhs = mat_mul(F, mat_mul(F, mat_transpose(g), phi), g)
    mu = None
    for a, b in zip(lhs, phi):
        if b:
            m = F.div(a, b)
            if mu is None:
                mu = m
            elif m != mu:
                return None
        elif a:
            return None
    if not mu:
        return None
    return mu


# ---------------------------------------------------------------------------
# Symbolic matrices: flat 16-tuples of MultiPoly over a parameter ring
# ---------------------------------------------------------------------------

def smat(ring, rows):
    F, gens = ring
    out = []
    for r in rows:
        for v in r:
            if isinstance(v, MultiPoly):
                out.append(v)
            else:
                out.append(MultiPoly.constant(F, gens, v))
    return tuple(out)


def smat_mul(A, B):
    zero = MultiPoly.zero(A[0].field, A[0].gens)
    out = []
    for i in range(4):
        for j in range(4):
            acc = zero
            for k in range(4):
                a, b = A[4 * i + k], B[4 * k + j]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
    return tuple(out)


def smat_product(mats):
    out = mats[0]
    for M in mats[1:]:
        out = smat_mul(out, M)
    return out


def smat_eval(F, A, point):
    """Instantiate at a name->value dict (missing names must not occur)."""
    return tuple(a.evaluate(point) if a else 0 for a in A)


def smat_eval_raw(A, F, values):
    """Instantiate with raw values ordered as the generators of the entries."""
    return tuple(a.evaluate(values) if a else 0 for a in A)


@dataclass
class Factor:
    """One factor of a pattern: its matrix and a polynomial inverse."""

    name: str
    matrix: tuple
    inverse: tuple


@dataclass
class PatternMatrix:
    id: str
    kind: str
    index: int
    gens: Tuple[str, ...]          # solver ring, parameters then auxiliaries
    params: Tuple[str, ...]        # geometric parameters used
    aux: Tuple[str, ...]
    factors: List[Factor]
    split: int                     # g = (factors[:split]) . (factors[split:])
    constraints: List[MultiPoly]
    field: FiniteField = GF11
    entries: tuple = dc_field(default=())

    def __post_init__(self):
        if not self.entries:
            self.entries = smat_product([f.matrix for f in self.factors])

    def left(self):
        return smat_product([f.matrix for f in self.factors[:self.split]])

    def right(self):
        fs = self.factors[self.split:]
        if not fs:
            return _identity_smat(self.field, self.gens)
        return smat_product([f.matrix for f in fs])

    def right_inverse(self):
        fs = self.factors[self.split:]
        if not fs:
            return _identity_smat(self.field, self.gens)
        return smat_product([f.inverse for f in reversed(fs)])

    def instantiate(self, point):
        """Raw matrix for a name->value assignment of the parameters."""
        return smat_eval(self.field, self.entries, point)

    def constraints_hold(self, point):
        return all(c.evaluate(point) == 0 for c in self.constraints)

    def dump(self):
        rows = []
        for i in range(4):
            rows.append([self.entries[4 * i + j].to_text() for j in range(4)])
        return {"id": self.id, "gens": list(self.gens), "entries": rows,
                "constraints": [c.to_text() for c in self.constraints]}


def _identity_smat(F, gens):
    return smat((F, gens), [[1 if i == j else 0 for j in range(4)] for i in range(4)])


def _ring_for(kind, used, mode):
    order = [g for g in _ORDER[kind] if g in used]
    tail = ["r", "v"] if mode == "closure" else ["r"]
    return tuple(order + tail)


def bruhat_patterns(kind, mode="rational", epsilon=None, field=GF11, pin_r=None):
    """The pattern family for a quadratic form kind.

    ``mode`` is "rational" or "closure".  In closure mode the scalar r of
    g.P = rP is free with an inverse r v - 1, unless ``pin_r`` is true, in
    which case r - 1 is used as in rational mode (valid whenever cubing is
    surjective on the field of definition of the solutions).
    """
    if mode not in ("rational", "closure"):
        raise ValueError("mode must be 'rational' or 'closure'")
    if pin_r is None:
        pin_r = mode == "rational"
    builder = {"N1": _n1_patterns, "N2": _n2_patterns, "Dege": _dege_patterns}[kind]
    eff_mode = "rational" if pin_r else "closure"
    Q = QuadraticForm(kind, epsilon, field) if kind == "N2" else QuadraticForm(kind, field=field)
    return builder(Q, eff_mode)


def _vars(F, gens):
    return {g: MultiPoly.variable(F, gens, g) for g in gens}


def _finish_constraints(F, gens, base):
    V = _vars(F, gens)
    out = list(base)
    if "v" in gens:
        out.append(V["r"] * V["v"] - 1)
    else:
        out.append(V["r"] - 1)
    return out


def _n1_patterns(Q, mode):
    F = Q.field
    out = []
    for idx in range(1, 9):
        cell = (idx - 1) % 4          # 0: U, 1: s1 U1, 2: s2 U2, 3: s1 s2 U
        with_a = idx > 4
        used = {"a1", "a2", "b1", "b2", "c", "s", "d1", "d2"}
        if cell in (1, 3):
            used.add("e1")
        if cell in (2, 3):
            used.add("e2")
        gens = _ring_for("N1", used, mode)
        V = _vars(F, gens)
        ring = (F, gens)

        def U1(t, sign=1):
            tt = t if sign > 0 else -t
            return smat(ring, [[1, tt, 0, 0], [0, 1, 0, 0], [0, 0, 1, -tt], [0, 0, 0, 1]])

        def U2(t, sign=1):
            tt = t if sign > 0 else -t
            return smat(ring, [[1, 0, tt, 0], [0, 1, 0, -tt], [0, 0, 1, 0], [0, 0, 0, 1]])

        s1 = smat(ring, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
        s2 = smat(ring, [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
        MA = smat(ring, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
        z = MultiPoly.zero(F, gens)
        T = smat(ring, [[V["a1"], z, z, z], [z, V["b1"], z, z],
                        [z, z, V["c"] * V["b2"], z], [z, z, z, V["c"] * V["a2"]]])
        factors = []
        if with_a:
            factors.append(Factor("M_A", MA, MA))
        factors.append(Factor("T", T, ()))
        Ud = smat_mul(U1(V["d1"]), U2(V["d2"]))
        Ud_inv = smat_mul(U2(V["d2"], -1), U1(V["d1"], -1))
        factors.append(Factor("U(d1,d2)", Ud, Ud_inv))
        split = len(factors)
        if cell == 1:
            factors += [Factor("s1", s1, s1), Factor("U1(e1)", U1(V["e1"]), U1(V["e1"], -1))]
        elif cell == 2:
            factors += [Factor("s2", s2, s2), Factor("U2(e2)", U2(V["e2"]), U2(V["e2"], -1))]
        elif cell == 3:
            Ue = smat_mul(U1(V["e1"]), U2(V["e2"]))
            Ue_inv = smat_mul(U2(V["e2"], -1), U1(V["e1"], -1))
            factors += [Factor("s1", s1, s1), Factor("s2", s2, s2), Factor("U(e1,e2)", Ue, Ue_inv)]
        cons = _finish_constraints(F, gens, [V["a1"] * V["a2"] - 1, V["b1"] * V["b2"] - 1,
                                             V["c"] * V["s"] - 1])
        params = tuple(g for g in gens if g not in ("s", "r", "v"))
        aux = tuple(g for g in gens if g in ("s", "r", "v"))
        out.append(PatternMatrix(f"N1/Omega{idx}", "N1", idx, gens, params, aux,
                                 factors, split, cons, F))
    return out


def _n2_patterns(Q, mode):
    F = Q.field
    eps = Q.epsilon
    half = F.inv(2)
    inv_eps = F.inv(eps)
    inv_2eps = F.inv(F.mul(2, eps))
    out = []
    for idx in range(1, 5):
        with_w = idx in (2, 4)
        with_a = idx in (3, 4)
        used = {"a1", "a2", "b1", "b2", "c1", "c2", "t"}
        if with_w:
            used |= {"d1", "d2"}
        gens = _ring_for("N2", used, mode)
        V = _vars(F, gens)
        ring = (F, gens)
        z = MultiPoly.zero(F, gens)

        def Ua(t):
            return smat(ring, [[1, t, 0, t * t * (-half)], [0, 1, 0, -t], [0, 0, 1, 0], [0, 0, 0, 1]])

        def Ub(t):
            return smat(ring, [[1, 0, t, t * t * inv_2eps], [0, 1, 0, 0],
                               [0, 0, 1, t * inv_eps], [0, 0, 0, 1]])

        def U(t1, t2):
            return smat_mul(Ua(t1), Ub(t2))

        def U_inv(t1, t2):
            return smat_mul(Ub(-t2), Ua(-t1))

        b1, b2 = V["b1"], V["b2"]
        H = smat(ring, [[V["a1"], z, z, z], [z, 1, z, z], [z, z, 1, z], [z, z, z, V["a2"]]])
        R = smat(ring, [[1, z, z, z], [z, b1, b2 * eps, z], [z, b2, b1, z],
                        [z, z, z, b1 * b1 - b2 * b2 * eps]])
        MA = smat(ring, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]])
        MW = smat(ring, [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]])
        factors = []
        if with_a:
            factors.append(Factor("M_A", MA, MA))
        factors.append(Factor("H", H, ()))
        factors.append(Factor("R", R, ()))
        factors.append(Factor("U(c1,c2)", U(V["c1"], V["c2"]), U_inv(V["c1"], V["c2"])))
        split = len(factors)
        if with_w:
            factors.append(Factor("M_W", MW, MW))
            factors.append(Factor("U(d1,d2)", U(V["d1"], V["d2"]), U_inv(V["d1"], V["d2"])))
        cons = _finish_constraints(F, gens, [V["a1"] * V["a2"] - 1,
                                             (b1 * b1 - b2 * b2 * eps) * V["t"] - 1])
        params = tuple(g for g in gens if g not in ("t", "r", "v"))
        aux = tuple(g for g in gens if g in ("t", "r", "v"))
        out.append(PatternMatrix(f"N2/Omega{idx}", "N2", idx, gens, params, aux,
                                 factors, split, cons, F))
    return out


def _dege_patterns(Q, mode):
    F = Q.field
    half = F.inv(2)
    out = []
    for idx in range(1, 5):
        with_w = idx in (2, 4)
        with_a = idx in (3, 4)
        used = {"a1", "a2", "a3", "s", "b", "d", "t", "e1", "e2", "e3"}
        if with_w:
            used.add("c")
        gens = _ring_for("Dege", used, mode)
        V = _vars(F, gens)
        ring = (F, gens)
        z = MultiPoly.zero(F, gens)

        def U(t):
            return smat(ring, [[1, 0, 0, 0], [0, 1, t, t * t * (-half)], [0, 0, 1, -t], [0, 0, 0, 1]])

        a3 = V["a3"]
        T = smat(ring, [[1, z, z, z], [z, V["a1"] * a3, z, z], [z, z, a3, z],
                        [z, z, z, V["a2"] * a3]])
        MA = smat(ring, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]])
        MW = smat(ring, [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])
        d, tt = V["d"], V["t"]
        e1, e2, e3 = V["e1"], V["e2"], V["e3"]
        Vm = smat(ring, [[d, e1, e2, e3], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        Vinv = smat(ring, [[tt, -e1 * tt, -e2 * tt, -e3 * tt], [0, 1, 0, 0],
                           [0, 0, 1, 0], [0, 0, 0, 1]])
        factors = []
        if with_a:
            factors.append(Factor("M_A", MA, MA))
        factors.append(Factor("T", T, ()))
        factors.append(Factor("U(b)", U(V["b"]), U(-V["b"])))
        split = len(factors)
        if with_w:
            factors.append(Factor("M_W", MW, MW))
            factors.append(Factor("U(c)", U(V["c"]), U(-V["c"])))
        factors.append(Factor("V", Vm, Vinv))
        cons = _finish_constraints(F, gens, [V["a1"] * V["a2"] - 1, a3 * V["s"] - 1,
                                             d * tt - 1])
        params = tuple(g for g in gens if g not in ("s", "t", "r", "v"))
        aux = tuple(g for g in gens if g in ("s", "t", "r", "v"))
        out.append(PatternMatrix(f"Dege/Omega{idx}", "Dege", idx, gens, params, aux,
                                 factors, split, cons, F))
    return out
