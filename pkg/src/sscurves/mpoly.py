"""Sparse multivariate polynomials over a finite field.

A :class:`MultiPoly` stores a dict from exponent tuples to raw field integers
(see :mod:`sscurves.ff`).  Variable names travel with the polynomial; two
polynomials can only be combined when their name tuples match.
"""

from __future__ import annotations

import re
from typing import Dict, Sequence, Tuple

from .errors import ParseError, ZeroPolynomial
from .ff import (FieldElem, FiniteField, common_field, embed, extension_of_degree,
                 format_element, parse_element, prime_field)

Exp = Tuple[int, ...]

CURVE_VARS = ("x", "y", "z", "w")


class MonomialOrder:
    """A named monomial order; ``key`` sorts larger monomials larger."""

    def __init__(self, name):
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name

    def key(self, e: Exp):
        if self.name == "lex":
            return e
        return (sum(e), tuple(-v for v in reversed(e)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    __slots__ = ("field", "gens", "terms")

    def __init__(self, field: FiniteField, gens: Sequence[str], terms=None):
        self.field = field
        self.gens = tuple(gens)
        self.terms: Dict[Exp, int] = {}
        if terms:
            n = len(self.gens)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError("exponent length does not match generators")
                c = field.coerce(c)
                if c:
                    self.terms[tuple(e)] = c

    # -- constructors ------------------------------------------------------
    @classmethod
    def _raw(cls, field, gens, terms):
        p = cls.__new__(cls)
        p.field = field
        p.gens = gens
        p.terms = terms
        return p

    @classmethod
    def zero(cls, field, gens):
        return cls._raw(field, tuple(gens), {})

    @classmethod
    def constant(cls, field, gens, c):
        c = field.coerce(c)
        gens = tuple(gens)
        return cls._raw(field, gens, {(0,) * len(gens): c} if c else {})

    @classmethod
    def variable(cls, field, gens, name):
        gens = tuple(gens)
        i = gens.index(name)
        e = [0] * len(gens)
        e[i] = 1
        return cls._raw(field, gens, {tuple(e): 1})

    @classmethod
    def variables(cls, field, gens):
        return [cls.variable(field, gens, g) for g in gens]

    # -- basic protocol ----------------------------------------------------
    @property
    def nvars(self):
        return len(self.gens)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def copy(self):
        return MultiPoly._raw(self.field, self.gens, dict(self.terms))

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (self.gens == other.gens and self.field == other.field
                    and self.terms == other.terms)
        if isinstance(other, (int, FieldElem)):
            return self == MultiPoly.constant(self.field, self.gens, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def _align(self, other):
        """(self, other) as polynomials over a common field, or None."""
        if isinstance(other, MultiPoly):
            if other.gens != self.gens:
                raise ValueError(f"generator mismatch {self.gens} vs {other.gens}")
            if other.field != self.field:
                L = common_field(self.field, other.field)
                return self.change_field(L), other.change_field(L)
            return self, other
        if isinstance(other, FieldElem) and other.field != self.field:
            L = common_field(self.field, other.field)
            return self.change_field(L), MultiPoly.constant(L, self.gens, other)
        if isinstance(other, (int, FieldElem)):
            return self, MultiPoly.constant(self.field, self.gens, other)
        return None

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        self, o = pair
        F = self.field
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = F.add(t.get(e, 0), c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MultiPoly._raw(F, self.gens, t)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MultiPoly._raw(F, self.gens, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        return pair[0] + (-pair[1])

    def __rsub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        return pair[1] + (-pair[0])

    def __mul__(self, other):
        if isinstance(other, int) or (isinstance(other, FieldElem) and other.field == self.field):
            return self.scale(self.field.coerce(other))
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        self, o = pair
        F = self.field
        t: Dict[Exp, int] = {}
        if F.k == 1:
            p = F.p
            for e1, c1 in self.terms.items():
                for e2, c2 in o.terms.items():
                    e = _mono_mul(e1, e2)
                    t[e] = t.get(e, 0) + c1 * c2
            t = {e: c % p for e, c in t.items() if c % p}
        else:
            for e1, c1 in self.terms.items():
                for e2, c2 in o.terms.items():
                    e = _mono_mul(e1, e2)
                    t[e] = F.add(t.get(e, 0), F.mul(c1, c2))
            t = {e: c for e, c in t.items() if c}
        return MultiPoly._raw(F, self.gens, t)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.field
        if not c:
            return MultiPoly.zero(F, self.gens)
        return MultiPoly._raw(F, self.gens, {e: F.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.field, self.gens, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- inspection ----------------------------------------------------------
    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        i = self.gens.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def support_vars(self):
        n = self.nvars
        return [self.gens[i] for i in range(n) if any(e[i] for e in self.terms)]

    def leading_term(self, order=GREVLEX):
        if not self.terms:
            raise ZeroPolynomial("leading term of the zero polynomial")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order=GREVLEX):
        return self.leading_term(order)[0]

    def sorted_terms(self, order=GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monic(self, order=GREVLEX):
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.field.inv(c))

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def univariate_coeffs(self, name):
        """Coefficient list (lowest first) if the polynomial only involves ``name``."""
        i = self.gens.index(name)
        out = [0] * (self.degree_in(name) + 1 if self.terms else 0)
        for e, c in self.terms.items():
            if any(v for j, v in enumerate(e) if j != i):
                raise ValueError(f"not univariate in {name}")
            out[e[i]] = c
        return out

    # -- evaluation and substitution ----------------------------------------
    def evaluate(self, point):
        """Evaluate at a full point (sequence or name->value dict); raw value."""
        F = self.field
        if isinstance(point, dict):
            vals = [F.coerce(point[g]) for g in self.gens]
        else:
            vals = [F.coerce(v) for v in point]
        acc = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = F.mul(t, F.pow(v, k))
            acc = F.add(acc, t)
        return acc

    def evaluate_partial(self, assignment):
        """Substitute constants for some variables; the generators are kept."""
        F = self.field
        idx = {self.gens.index(g): F.coerce(v) for g, v in assignment.items()}
        t: Dict[Exp, int] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for i, v in idx.items():
                if e2[i]:
                    c = F.mul(c, F.pow(v, e2[i]))
                    e2[i] = 0
            if c:
                k = tuple(e2)
                s = F.add(t.get(k, 0), c)
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        return MultiPoly._raw(F, self.gens, t)

    def substitute(self, images):
        """Replace each generator by a polynomial (all images share a ring)."""
        images = list(images)
        target = images[0]
        F = self.field
        result = MultiPoly.zero(F, target.gens)
        cache = [dict() for _ in images]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = images[i] ** k
            return cache[i][k]

        for e, c in self.terms.items():
            term = MultiPoly.constant(F, target.gens, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def apply_linear_substitution(self, M):
        """P((v) * M^T): variable i becomes sum_j M[i][j] * var_j.

        ``M`` is a square matrix given as rows of raw field values.
        """
        F = self.field
        n = self.nvars
        gens = self.gens
        images = []
        for i in range(n):
            t = {}
            for j in range(n):
                c = F.coerce(M[i][j])
                if c:
                    e = [0] * n
                    e[j] = 1
                    t[tuple(e)] = c
            images.append(MultiPoly._raw(F, gens, t))
        return self.substitute(images)

    def map_coeffs(self, fn, field=None):
        field = field or self.field
        t = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                t[e] = v
        return MultiPoly._raw(field, self.gens, t)

    def change_field(self, field):
        f = embed(self.field, field)
        return self.map_coeffs(f, field)

    def frobenius(self, times=1):
        F = self.field
        return self.map_coeffs(lambda c: F.frobenius(c, times))

    def rename(self, gens):
        if len(gens) != self.nvars:
            raise ValueError("wrong number of generators")
        return MultiPoly._raw(self.field, tuple(gens), dict(self.terms))

    def embed_in(self, gens):
        """Same polynomial viewed in a ring with generators ``gens`` (a superset)."""
        pos = [gens.index(g) for g in self.gens]
        n = len(gens)
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, k in zip(pos, e):
                e2[i] = k
            t[tuple(e2)] = c
        return MultiPoly._raw(self.field, tuple(gens), t)

    def restrict_to(self, gens):
        """Inverse of :meth:`embed_in`; the dropped variables must not occur."""
        pos = [self.gens.index(g) for g in gens]
        keep = set(pos)
        t = {}
        for e, c in self.terms.items():
            if any(k for i, k in enumerate(e) if i not in keep):
                raise ValueError("polynomial involves a dropped variable")
            t[tuple(e[i] for i in pos)] = c
        return MultiPoly._raw(self.field, tuple(gens), t)

    def coefficients_in(self, names):
        """Group by the monomials in ``names``: {exponent: poly in the rest}."""
        idx = [self.gens.index(g) for g in names]
        rest = [i for i in range(self.nvars) if i not in idx]
        rest_gens = tuple(self.gens[i] for i in rest)
        out: Dict[Exp, Dict[Exp, int]] = {}
        for e, c in self.terms.items():
            k = tuple(e[i] for i in idx)
            out.setdefault(k, {})[tuple(e[i] for i in rest)] = c
        return {k: MultiPoly._raw(self.field, rest_gens, t) for k, t in out.items()}

    # -- text ----------------------------------------------------------------
    def to_text(self, order=GREVLEX):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(g if k == 1 else f"{g}^{k}"
                            for g, k in zip(self.gens, e) if k)
            cs = format_element(self.field, c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r}, gens={self.gens})"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<z>z\^\d+)|(?P<var>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>\*\*|[-+*^()]))")


def parse_poly(text, gens=CURVE_VARS, field=None):
    """Parse a polynomial like ``x^2y + 3*y*z^2 - 2 w^3``.

    Products may be written with ``*`` or by juxtaposition; powers with ``^``
    or ``**``.  Runs of single-letter generators may be written together (``xyz``).  The
    token ``z^e`` is read as a power of the variable z unless z is not a
    generator, in which case it is the F_121 constant zeta^e.
    """
    field = field or prime_field(11)
    gens = tuple(gens)
    tokens = []
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", int(m.group("num"))))
        elif m.group("z"):
            if "z" in gens:
                tokens.extend([("var", "z"), ("op", "^"), ("num", int(m.group("z")[2:]))])
            else:
                if field.p == 11 and field.k % 2:
                    field = common_field(field, extension_of_degree(11, 2))
                tokens.append(("const", m.group("z")))
        elif m.group("var"):
            name = m.group("var")
            if name in gens:
                tokens.append(("var", name))
            elif all(ch in gens for ch in name):
                tokens.extend(("var", ch) for ch in name)
            else:
                raise ParseError(f"unknown variable {name!r}")
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op))
    parser = _Parser(tokens, field, gens)
    result = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input near token {parser.i}")
    return result


class _Parser:
    def __init__(self, tokens, field, gens):
        self.t = tokens
        self.i = 0
        self.field = field
        self.gens = gens

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.i += 1
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.i += 1
                term = self.term()
                acc = acc + term if val == "+" else acc - term
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.i += 1
                acc = acc * self.factor()
            elif kind in ("num", "var", "const") or (kind == "op" and val == "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.i += 1
            kind, val = self.peek()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            self.i += 1
            return base ** val
        return base

    def atom(self):
        kind, val = self.peek()
        F, gens = self.field, self.gens
        if kind == "num":
            self.i += 1
            return MultiPoly.constant(F, gens, val % F.p)
        if kind == "const":
            self.i += 1
            return MultiPoly.constant(F, gens, FieldElem(F, parse_element(F, val)))
        if kind == "var":
            self.i += 1
            return MultiPoly.variable(F, gens, val)
        if kind == "op" and val == "(":
            self.i += 1
            inner = self.expr()
            if self.peek() != ("op", ")"):
                raise ParseError("unbalanced parenthesis")
            self.i += 1
            return inner
        raise ParseError(f"unexpected token {val!r}")


def normal_form(f: MultiPoly, G: Sequence[MultiPoly], order=GREVLEX):
    """Remainder of f on division by G (fully reduced, any G)."""
    F = f.field
    lts = []
    for g in G:
        e, c = g.leading_term(order)
        lts.append((e, F.inv(c), g))
    rem: Dict[Exp, int] = {}
    work = dict(f.terms)
    key = order.key
    while work:
        e = max(work, key=key)
        c = work[e]
        for le, linv, g in lts:
            if all(a >= b for a, b in zip(e, le)):
                q = tuple(a - b for a, b in zip(e, le))
                m = F.mul(c, linv)
                for ge, gc in g.terms.items():
                    k = _mono_mul(ge, q)
                    v = F.sub(work.get(k, 0), F.mul(m, gc))
                    if v:
                        work[k] = v
                    else:
                        work.pop(k, None)
                break
        else:
            rem[e] = c
            del work[e]
    return MultiPoly._raw(F, f.gens, rem)


def reduce_mod_quadric(f: MultiPoly, Q: MultiPoly, order=GREVLEX):
    """Normal form modulo the principal ideal (Q); Q must be nonzero.

    Writes Q = lc*m + rest and replaces every m^k dividing a term by
    (-rest/lc)^k in one step, repeating while reducible terms remain.
    """
    F = f.field
    m, lc = Q.leading_term(order)
    rest = (Q - MultiPoly._raw(F, Q.gens, {m: lc})).scale(F.neg(F.inv(lc)))
    powers = {0: MultiPoly.constant(F, f.gens, 1)}
    support = [i for i, v in enumerate(m) if v]

    def power(k):
        if k not in powers:
            powers[k] = power(k - 1) * rest
        return powers[k]

    cur = f
    while True:
        out: Dict[Exp, int] = {}
        again = False
        for e, c in cur.terms.items():
            k = min(e[i] // m[i] for i in support)
            if k == 0:
                v = F.add(out.get(e, 0), c)
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
                continue
            again = True
            q = tuple(a - k * b for a, b in zip(e, m))
            for e2, c2 in power(k).terms.items():
                key = _mono_mul(q, e2)
                v = F.add(out.get(key, 0), F.mul(c, c2))
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        cur = MultiPoly._raw(F, f.gens, out)
        if not again:
            return cur
        if all(min(e[i] // m[i] for i in support) == 0 for e in cur.terms):
            return cur
