"""Exact dense linear algebra over :class:`~pseudolie.scalars.Scalar`.

Matrices are lists of rows; vectors are tuples.  Any nonzero scalar is used
as a pivot, so for parametric entries the results hold for generic parameter
values (those avoiding the zeros of the pivots).
"""

from __future__ import annotations

from typing import Sequence

from .scalars import ONE, ZERO, Scalar

Vector = tuple
Matrix = list


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, k: int) -> Vector:
    return tuple(ONE if i == k else ZERO for i in range(n))


def identity(n: int) -> Matrix:
    return [list(unit(n, k)) for k in range(n)]


def vadd(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u) -> Vector:
    if not c:
        return (ZERO,) * len(u)
    return tuple(c * a for a in u)


def is_zero_vector(v) -> bool:
    return not any(v)


def lincomb(coeffs, vectors, n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] = out[k] + c * a
    return tuple(out)


def matvec(M: Sequence[Sequence[Scalar]], v) -> Vector:
    out = []
    for row in M:
        acc = ZERO
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return tuple(out)


def matmul(A, B) -> Matrix:
    cols = list(zip(*B)) if B else []
    return [[_dot(row, col) for col in cols] for row in A]


def _dot(u, v):
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def transpose(M) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def rref(rows: Sequence[Sequence[Scalar]], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` with only the nonzero rows kept.
    """
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if M[i][c]:
                p = i
                break
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        if not piv.is_one():
            inv = piv.inverse()
            M[r] = [x * inv if x else x for x in M[r]]
        prow = M[r]
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    row = M[i]
                    M[i] = [a - f * b if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in M[:r]], pivots


def rank(rows, ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int) -> list[Vector]:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    R, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(R, pivots):
            if row[f]:
                x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(A, b, ncols: int | None = None):
    """One solution of ``A x = b`` (free variables zero), or ``None``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return tuple(x)


def det(M) -> Scalar:
    n = len(M)
    A = [list(r) for r in M]
    result = ONE
    for c in range(n):
        p = None
        for i in range(c, n):
            if A[i][c]:
                p = i
                break
        if p is None:
            return ZERO
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        piv = A[c][c]
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            f = A[i][c]
            if f:
                f = f * inv
                A[i] = [a - f * b if b else a for a, b in zip(A[i], A[c])]
    return result


def inverse(M) -> Matrix:
    n = len(M)
    aug = [list(row) + list(unit(n, i)) for i, row in enumerate(M)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [list(row[n:]) for row in R[:n]]


def trace(M) -> Scalar:
    acc = ZERO
    for i in range(len(M)):
        if M[i][i]:
            acc = acc + M[i][i]
    return acc


def independent_subset(vectors, n: int) -> list[int]:
    """Indices of a maximal linearly independent prefix-greedy subset."""
    chosen = []
    rows: list = []
    pivots: list = []
    for idx, v in enumerate(vectors):
        w = reduce_vector(v, rows, pivots)
        if not is_zero_vector(w):
            rows, pivots = rref(rows + [w], n)
            chosen.append(idx)
    return chosen


def reduce_vector(v, rows, pivots) -> Vector:
    """Reduce ``v`` modulo the RREF ``rows`` (zero at every pivot column)."""
    v = list(v)
    for row, p in zip(rows, pivots):
        f = v[p]
        if f:
            v = [a - f * b if b else a for a, b in zip(v, row)]
    return tuple(v)
