"""Finite fields F_p and F_{p^k}, univariate polynomials over them, root finding.

Every field is a simple extension of its prime field (no nested towers).  An
element of F_{p^k} = F_p[X]/(m(X)) is stored as the integer sum(c_i * p**i)
built from its coefficient vector, so the elements of the prime field keep
their usual integer values inside every extension.  Polynomials over a field
are plain lists of such integers, lowest degree first.
"""

from __future__ import annotations

import random
from functools import reduce
from math import gcd

from .errors import DegreeCapExceeded, ZeroInversion, ZeroPolynomial

DEGREE_CAP = 12
EXHAUSTIVE_ROOT_LIMIT = 11 ** 4
_TABLE_LIMIT = 11 ** 4
_ADD_TABLE_LIMIT = 11 ** 3

# Modulus pins: (p, k) -> monic coefficients low-to-high.  X^2 + 7X + 2 over
# F_11 gives the element zeta used in the printed closure generators.
PINNED_MODULI = {(11, 2): (2, 7, 1)}


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _lcm(a, b):
    return a * b // gcd(a, b)


class FiniteField:
    """Field descriptor for F_{p^k}.

    Two descriptors are equal iff ``(p, k, modulus)`` agree.  Use
    :func:`prime_field` and :func:`build_extension` rather than calling this
    directly; they cache instances so that equal descriptors are usually the
    same object.
    """

    def __init__(self, p, k=1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if k == 1:
            modulus = None
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self._exp = self._log = None
        self._add = None
        self._embeddings = {}
        self._primitive = None
        if k > 1 and self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- identity -------------------------------------------------------
    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={self.modulus})"

    @property
    def is_prime(self):
        return self.k == 1

    @property
    def order(self):
        return self.q

    def to_dict(self):
        return {"p": self.p, "k": self.k,
                "modulus": list(self.modulus) if self.modulus else None}

    # -- coefficient vectors --------------------------------------------
    def to_coeffs(self, v):
        p = self.p
        out = []
        for _ in range(self.k):
            v, c = divmod(v, p)
            out.append(c)
        return out

    def from_coeffs(self, cs):
        p = self.p
        v = 0
        for c in reversed(cs):
            v = v * p + c % p
        return v

    # -- arithmetic on raw integers -------------------------------------
    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return self._digitwise(a, b, 1)

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self._digitwise(a, b, -1)

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        return self._digitwise(0, a, -1)

    def _digitwise(self, a, b, sign):
        p = self.p
        v, place = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            v += ((da + sign * db) % p) * place
            place *= p
        return v

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._polymul(a, b)

    def _polymul(self, a, b):
        p, k, m = self.p, self.k, self.modulus
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for j in range(k):
                    prod[d - k + j] -= c * m[j]
        return self.from_coeffs([c % p for c in prod[:k]])

    def inv(self, a):
        if a == 0:
            raise ZeroInversion(f"inverse of zero in {self!r}")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if self.k == 1:
            if e < 0:
                return pow(self.inv(a), -e, self.p)
            return pow(a, e, self.p)
        if e < 0:
            a, e = self.inv(a), -e
        if self._log is not None:
            if a == 0:
                return 1 if e == 0 else 0
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a, times=1):
        return self.pow(a, self.p ** times)

    def is_square(self, a):
        if a == 0:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def in_prime_field(self, a):
        return a < self.p

    def multiplicative_order(self, a):
        if a == 0:
            raise ZeroInversion("zero has no multiplicative order")
        n = self.q - 1
        for ell in _prime_factors(self.q - 1):
            while n % ell == 0 and self.pow(a, n // ell) == 1:
                n //= ell
        return n

    def primitive_element(self):
        if self._primitive is None:
            n = self.q - 1
            fac = _prime_factors(n)
            for v in range(1, self.q):
                if all(self.pow(v, n // ell) != 1 for ell in fac):
                    self._primitive = v
                    break
        return self._primitive

    def _build_tables(self):
        n = self.q - 1
        fac = _prime_factors(n)
        gen = None
        for v in range(2, self.q):
            if all(self._slowpow(v, n // ell) != 1 for ell in fac):
                gen = v
                break
        exp = [0] * n
        log = [0] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._polymul(x, gen)
        self._exp, self._log, self._primitive = exp, log, gen
        if self.q <= _ADD_TABLE_LIMIT:
            self._add = [[self._digitwise(a, b, 1) for b in range(self.q)]
                         for a in range(self.q)]

    def _slowpow(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._polymul(result, a)
            a = self._polymul(a, a)
            e >>= 1
        return result

    # -- element construction -------------------------------------------
    def __call__(self, value):
        if isinstance(value, FieldElem):
            if value.field == self:
                return value
            return FieldElem(self, embed(value.field, self)(value.value))
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.from_coeffs(value))
        return FieldElem(self, int(value) % self.p)

    def coerce(self, value):
        """Raw integer representative of ``value`` (int, FieldElem)."""
        if isinstance(value, FieldElem):
            if value.field == self:
                return value.value
            return embed(value.field, self)(value.value)
        return int(value) % self.p

    def elements(self):
        return [FieldElem(self, v) for v in range(self.q)]

    @property
    def gen(self):
        """The class of X in F_p[X]/(modulus)."""
        if self.k == 1:
            return FieldElem(self, 1)
        return FieldElem(self, self.p)


class FieldElem:
    """An immutable element of a :class:`FiniteField`."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field == self.field:
                return self.field, self.value, other.value
            big = common_field(self.field, other.field)
            return (big, embed(self.field, big)(self.value),
                    embed(other.field, big)(other.value))
        if isinstance(other, int):
            return self.field, self.value, other % self.field.p
        return None

    def __add__(self, other):
        t = self._other(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElem(F, F.add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        t = self._other(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElem(F, F.sub(a, b))

    def __rsub__(self, other):
        t = self._other(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElem(F, F.sub(b, a))

    def __mul__(self, other):
        t = self._other(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElem(F, F.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        t = self._other(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElem(F, F.div(a, b))

    def __rtruediv__(self, other):
        t = self._other(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElem(F, F.div(b, a))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def frobenius(self, times=1):
        return FieldElem(self.field, self.field.frobenius(self.value, times))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            if other.field == self.field:
                return self.value == other.value
            big = common_field(self.field, other.field)
            return (embed(self.field, big)(self.value)
                    == embed(other.field, big)(other.value))
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        if self.value < self.field.p:
            return hash(self.value)
        return hash((self.field, self.value))

    def __int__(self):
        if self.value >= self.field.p:
            raise ValueError(f"{self} is not in the prime field")
        return self.value

    def __repr__(self):
        return format_element(self.field, self.value)

    def coeffs(self):
        return self.field.to_coeffs(self.value)


# ---------------------------------------------------------------------------
# Field construction
# ---------------------------------------------------------------------------

_FIELD_CACHE = {}


def prime_field(p):
    key = (p, 1)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FiniteField(p)
    return _FIELD_CACHE[key]


GF11 = None  # set below


def is_irreducible(coeffs, p):
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    F = prime_field(p)
    f = poly_trim(list(coeffs))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # X^{p^k} == X mod f
    h = x
    powers = {}
    for i in range(1, k + 1):
        h = poly_powmod(F, h, p, f)
        powers[i] = h
    if poly_trim(poly_sub(F, powers[k], x)) != []:
        return False
    for ell in _prime_factors(k):
        g = poly_gcd(F, poly_sub(F, powers[k // ell], x), f)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p, k):
    """Deterministic monic irreducible of degree k over F_p.

    Candidates X^k + sum c_i X^i are scanned in increasing order of
    sum c_i p^i, except for pinned (p, k) pairs.
    """
    if (p, k) in PINNED_MODULI:
        return PINNED_MODULI[(p, k)]
    for v in range(p, p ** k):
        cs = []
        t = v
        for _ in range(k):
            t, c = divmod(t, p)
            cs.append(c)
        cand = tuple(cs) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def extension_of_degree(p, k):
    """The canonical F_{p^k} (cached)."""
    key = (p, k)
    if key not in _FIELD_CACHE:
        if k == 1:
            return prime_field(p)
        _FIELD_CACHE[key] = FiniteField(p, k, smallest_irreducible(p, k))
    return _FIELD_CACHE[key]


def build_extension(base, k):
    """Field of degree ``k`` over ``base``, as a simple extension of F_p.

    The embedding of ``base`` into the result is ``embed(base, result)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return extension_of_degree(base.p, base.k * k)


def common_field(F, G):
    if F == G:
        return F
    if F.p != G.p:
        raise ValueError("fields of different characteristic")
    if F.k % G.k == 0:
        return F
    if G.k % F.k == 0:
        return G
    return extension_of_degree(F.p, _lcm(F.k, G.k))


def embed(src, dst):
    """Return a function mapping raw elements of ``src`` into ``dst``.

    The generator of ``src`` goes to the smallest root (by raw value) of its
    modulus in ``dst``; deterministic for fixed inputs.
    """
    if src == dst:
        return _identity
    if src.p != dst.p or dst.k % src.k:
        raise ValueError(f"{src!r} does not embed in {dst!r}")
    if src.k == 1:
        return _identity
    fn = dst._embeddings.get(src)
    if fn is None:
        rho = _roots_raw(dst, list(src.modulus))[0]
        powers = [1]
        for _ in range(src.k - 1):
            powers.append(dst.mul(powers[-1], rho))
        table = {}

        def fn(v, _src=src, _dst=dst, _powers=powers, _table=table):
            r = _table.get(v)
            if r is None:
                r = 0
                for c, pw in zip(_src.to_coeffs(v), _powers):
                    if c:
                        r = _dst.add(r, _dst.mul(c, pw))
                _table[v] = r
            return r

        dst._embeddings[src] = fn
    return fn


def _identity(v):
    return v


def restrict(field, v):
    """Smallest canonical subfield containing raw element ``v`` of ``field``.

    Returns ``(subfield, raw value in subfield)``.
    """
    if field.k == 1 or v < field.p:
        return prime_field(field.p), v % field.p if v < field.p else v
    for d in sorted(d for d in range(1, field.k) if field.k % d == 0):
        if field.pow(v, field.p ** d) == v:
            sub = extension_of_degree(field.p, d)
            if d == 1:
                return sub, v
            f = embed(sub, field)
            for u in range(sub.q):
                if f(u) == v:
                    return sub, u
    return field, v


def zeta():
    """The distinguished primitive element of F_121 (root of a^2 + 7a + 2)."""
    return extension_of_degree(11, 2).gen


def zeta_log(field, v):
    """Exponent e in [0, 120) with v = zeta^e, for v in F_121 (v != 0)."""
    F121 = extension_of_degree(11, 2)
    if field != F121:
        sub, u = restrict(field, v)
        if sub.k == 2:
            pass
        elif sub.k == 1:
            u = embed(sub, F121)(u)
        else:
            raise ValueError("element does not lie in F_121")
        if sub.k == 2 and sub != F121:
            u = embed(sub, F121)(u)
        v = u
    if v == 0:
        raise ZeroInversion("log of zero")
    z = F121.p  # raw value of zeta
    x = 1
    for e in range(120):
        if x == v:
            return e
        x = F121.mul(x, z)
    raise AssertionError("zeta is not primitive")  # pragma: no cover


def format_element(field, v):
    """Integers for prime-field values, ``z^e`` for F_121, digit lists beyond."""
    if v < field.p:
        return str(v)
    if field.p == 11 and field.k == 2 and field.modulus == PINNED_MODULI[(11, 2)]:
        return f"z^{zeta_log(field, v)}"
    sub, u = restrict(field, v)
    if sub.p == 11 and sub.k == 2:
        return f"z^{zeta_log(sub, u)}"
    return "[" + ",".join(str(c) for c in field.to_coeffs(v)) + "]"


def parse_element(field, text):
    """Inverse of :func:`format_element` for integers and ``z^e`` tokens."""
    text = text.strip()
    if text.startswith("z^"):
        F121 = extension_of_degree(11, 2)
        raw = F121.pow(F121.p, int(text[2:]))
        return embed(F121, field)(raw)
    if text.startswith("["):
        return field.from_coeffs([int(t) for t in text[1:-1].split(",")])
    return int(text) % field.p


# ---------------------------------------------------------------------------
# Univariate polynomials: lists of raw field elements, lowest degree first.
# ---------------------------------------------------------------------------

def poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_add(F, f, g):
    n = max(len(f), len(g))
    out = [F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0)
           for i in range(n)]
    return poly_trim(out)


def poly_sub(F, f, g):
    n = max(len(f), len(g))
    out = [F.sub(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0)
           for i in range(n)]
    return poly_trim(out)


def poly_mul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(out)


def poly_divmod(F, f, g):
    g = poly_trim(list(g))
    if not g:
        raise ZeroPolynomial("division by the zero polynomial")
    r = poly_trim(list(f))
    if len(r) < len(g):
        return [], r
    inv_lc = F.inv(g[-1])
    dg = len(g) - 1
    quo = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = F.mul(c, inv_lc)
        quo[i - dg] = c
        for j in range(dg + 1):
            if g[j]:
                r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, g[j]))
    return poly_trim(quo), poly_trim(r[:dg])


def poly_rem(F, f, g):
    return poly_divmod(F, f, g)[1]


def poly_monic(F, f):
    f = poly_trim(list(f))
    if not f:
        return f
    inv = F.inv(f[-1])
    return [F.mul(c, inv) for c in f]


def poly_gcd(F, f, g):
    """Monic gcd; gcd(0, 0) = 0 (the empty list)."""
    a, b = poly_trim(list(f)), poly_trim(list(g))
    while b:
        a, b = b, poly_rem(F, a, b)
    return poly_monic(F, a)


def poly_gcd_many(F, polys):
    out = []
    for f in polys:
        out = poly_gcd(F, out, f)
        if len(out) == 1:
            break
    return out


def poly_powmod(F, f, e, m):
    result = [1]
    base = poly_rem(F, f, m)
    while e:
        if e & 1:
            result = poly_rem(F, poly_mul(F, result, base), m)
        base = poly_rem(F, poly_mul(F, base, base), m)
        e >>= 1
    return result


def poly_eval(F, f, x):
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_from_roots(F, roots):
    out = [1]
    for r in roots:
        out = poly_mul(F, out, [F.neg(r), 1])
    return out


def _coerce_poly(f, field):
    """Accept a coefficient list of ints/FieldElems and return (field, raw list)."""
    if field is None:
        fields = [c.field for c in f if isinstance(c, FieldElem)]
        if not fields:
            raise ValueError("cannot infer the field; pass field=")
        field = reduce(common_field, fields)
    return field, poly_trim([field.coerce(c) for c in f])


def field_inverse(a):
    """Multiplicative inverse of a nonzero :class:`FieldElem`."""
    return a.inverse()


def _roots_raw(F, f):
    """Distinct roots of f in F (raw values, ascending)."""
    f = poly_trim(list(f))
    if not f:
        raise ZeroPolynomial("roots of the zero polynomial")
    if len(f) == 1:
        return []
    if F.q <= EXHAUSTIVE_ROOT_LIMIT:
        return [x for x in range(F.q) if poly_eval(F, f, x) == 0]
    f = poly_monic(F, f)
    # split off the part of f with all its roots in F
    xq = poly_powmod(F, [0, 1], F.q, f)
    g = poly_gcd(F, f, poly_sub(F, xq, [0, 1]))
    roots = []
    rng = random.Random(F.q * 7919 + len(f))
    _edf_linear(F, g, roots, rng)
    return sorted(roots)


def _edf_linear(F, g, roots, rng):
    if len(g) <= 1:
        return
    if len(g) == 2:
        roots.append(F.neg(g[0]))
        return
    e = (F.q - 1) // 2
    while True:
        delta = rng.randrange(F.q)
        h = poly_powmod(F, [delta, 1], e, g)
        d = poly_gcd(F, poly_sub(F, h, [1]), g)
        if 1 < len(d) < len(g):
            break
    _edf_linear(F, d, roots, rng)
    _edf_linear(F, poly_divmod(F, g, d)[0], roots, rng)


def univariate_roots(f, field=None):
    """Distinct roots lying in ``field`` of the univariate polynomial ``f``.

    ``f`` is a coefficient list (lowest degree first) of ints or FieldElems.
    Returns FieldElems sorted by raw value.
    """
    F, raw = _coerce_poly(f, field)
    if not raw:
        raise ZeroPolynomial("roots of the zero polynomial")
    return [FieldElem(F, v) for v in _roots_raw(F, raw)]


def factor_degrees(F, f):
    """Set of degrees of the distinct irreducible factors of f over F."""
    f = poly_monic(F, f)
    degrees = set()
    x = [0, 1]
    d = 0
    h = x
    while len(f) > 1:
        d += 1
        h = poly_powmod(F, h, F.q, f) if len(f) > 1 else h
        g = poly_gcd(F, f, poly_sub(F, h, x))
        if len(g) > 1:
            degrees.add(d)
            # strip every power of the degree-d factors
            while len(g) > 1:
                f = poly_divmod(F, f, g)[0]
                g = poly_gcd(F, f, g)
            if len(f) > 1:
                h = poly_rem(F, h, f)
    return degrees


def splitting_degree(F, f):
    """Degree over F of the splitting field of f."""
    degs = factor_degrees(F, f)
    return reduce(_lcm, degs, 1)


def splitting_field(f, field=None, cap=DEGREE_CAP):
    """Smallest extension of ``field`` containing every root of ``f``.

    Returns ``(L, roots)`` with roots as FieldElems of L.  Raises
    :class:`DegreeCapExceeded` if L would have degree > ``cap`` over F_p.
    """
    F, raw = _coerce_poly(f, field)
    if not raw:
        raise ZeroPolynomial("splitting field of the zero polynomial")
    if len(raw) == 1:
        raise ValueError("constant polynomial has no roots")
    L, roots = splitting_field_raw(F, raw, cap)
    return L, [FieldElem(L, v) for v in roots]


def splitting_field_raw(F, f, cap=DEGREE_CAP):
    m = splitting_degree(F, f)
    if F.k * m > cap:
        raise DegreeCapExceeded(
            f"splitting field needs degree {F.k * m} over F_{F.p} (cap {cap})")
    L = build_extension(F, m)
    lift = embed(F, L)
    g = [lift(c) for c in f]
    return L, _roots_raw(L, g)


GF11 = prime_field(11)
