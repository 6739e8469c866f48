"""Small square matrices over a finite field, stored as flat tuples of raw ints.

A 4x4 matrix is a 16-tuple in row-major order.  Projective classes are
represented by the canonical scaling whose first nonzero entry is 1.
"""

from __future__ import annotations

from .errors import SingularMatrix
from .ff import FieldElem, format_element, parse_element

N = 4
IDENTITY = tuple(1 if i == j else 0 for i in range(N) for j in range(N))


def from_rows(field, rows):
    n = len(rows)
    out = []
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix must be square")
        out.extend(field.coerce(v) for v in r)
    return tuple(out)


def to_rows(A, n=N):
    return [list(A[i * n:(i + 1) * n]) for i in range(n)]


def identity(n=N):
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def mat_mul(F, A, B, n=N):
    if F.k == 1:
        p = F.p
        return tuple(sum(A[i * n + k] * B[k * n + j] for k in range(n)) % p
                     for i in range(n) for j in range(n))
    add, mul = F.add, F.mul
    out = []
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                a = A[i * n + k]
                if a:
                    b = B[k * n + j]
                    if b:
                        acc = add(acc, mul(a, b))
            out.append(acc)
    return tuple(out)


def mat_scale(F, A, c):
    return tuple(F.mul(a, c) for a in A)


def _gauss(F, A, n, rhs=None):
    """Row reduction; returns (det, inverse or None)."""
    M = [list(A[i * n:(i + 1) * n]) for i in range(n)]
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if rhs else None
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return 0, None
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            if inv:
                inv[col], inv[piv] = inv[piv], inv[col]
            det = F.neg(det)
        pv = M[col][col]
        det = F.mul(det, pv)
        pinv = F.inv(pv)
        M[col] = [F.mul(v, pinv) for v in M[col]]
        if inv:
            inv[col] = [F.mul(v, pinv) for v in inv[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[r], M[col])]
                if inv:
                    inv[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(inv[r], inv[col])]
    return det, inv


def mat_det(F, A, n=N):
    return _gauss(F, A, n)[0]


def mat_inv(F, A, n=N):
    det, inv = _gauss(F, A, n, rhs=True)
    if not det:
        raise SingularMatrix("matrix is not invertible")
    return tuple(v for row in inv for v in row)


def mat_transpose(A, n=N):
    return tuple(A[j * n + i] for i in range(n) for j in range(n))


def mat_pow(F, A, e, n=N):
    if e < 0:
        A, e = mat_inv(F, A, n), -e
    result = identity(n)
    while e:
        if e & 1:
            result = mat_mul(F, result, A, n)
        A = mat_mul(F, A, A, n)
        e >>= 1
    return result


def projective_canonical(F, A):
    """Scale so the first nonzero entry (row-major) is 1."""
    for v in A:
        if v:
            if v == 1:
                return tuple(A)
            inv = F.inv(v)
            return tuple(F.mul(a, inv) for a in A)
    raise SingularMatrix("zero matrix has no projective class")


def is_scalar(A, n=N):
    d = A[0]
    return all(A[i * n + j] == (d if i == j else 0) for i in range(n) for j in range(n))


def projective_order(F, A, n=N, limit=10_000):
    """Order of the class of A in PGL_n."""
    B = A
    for k in range(1, limit + 1):
        if is_scalar(B, n):
            return k
        B = mat_mul(F, B, A, n)
    raise ValueError("order exceeds limit")


def mat_frobenius(F, A, times=1):
    return tuple(F.frobenius(a, times) for a in A)


def mat_map(fn, A):
    return tuple(fn(a) for a in A)


def format_matrix(F, A, n=N):
    """Rows separated by ';', entries by ','.  F_121 entries print as z^e."""
    return ";".join(",".join(format_element(F, v) for v in A[i * n:(i + 1) * n])
                    for i in range(n))


def parse_matrix(F, text, n=N):
    rows = [r for r in text.strip().split(";")]
    if len(rows) != n:
        raise ValueError(f"expected {n} rows")
    out = []
    for r in rows:
        cells = r.split(",")
        if len(cells) != n:
            raise ValueError(f"expected {n} entries per row")
        out.extend(parse_element(F, c) for c in cells)
    return tuple(out)


def elem_matrix(F, A):
    """Rows of FieldElem, for display or interop."""
    return [[FieldElem(F, v) for v in row] for row in to_rows(A)]
