"""Structural computations: centers, series, predicates, quotients, sums."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

from .. import linalg as la
from ..outcome import Unknown
from ..scalars import ONE, ZERO, Scalar
from .algebra import AlgebraError, LieAlgebra, Subspace, memoized


def full(L: LieAlgebra) -> Subspace:
    return Subspace.full(L.dim)


def centralizer(L: LieAlgebra, S: Subspace) -> Subspace:
    """``{x : [x, s] = 0 for all s in S}``."""
    n = L.dim
    table = L._table
    eqs = []
    for s in S.rows:
        # [x, s] = sum_i x_i sum_j s_j [e_i, e_j]
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            ti = table[i]
            for j, sj in enumerate(s):
                if sj and ti[j]:
                    for k, c in ti[j].items():
                        rows[k][i] = rows[k][i] + sj * c
        eqs.extend(tuple(r) for r in rows if any(r))
    return Subspace.span(la.nullspace(eqs, n), n)


@memoized
def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, full(L))


def product_ideal(L: LieAlgebra, I: Subspace, J: Subspace) -> Subspace:
    """Span of ``[a, b]`` over basis vectors of ``I`` and ``J``."""
    vecs = [L.bracket(a, b) for a in I.rows for b in J.rows]
    return Subspace.span([v for v in vecs if not la.is_zero_vector(v)], L.dim)


@memoized
def derived_algebra(L: LieAlgebra) -> Subspace:
    F = full(L)
    return product_ideal(L, F, F)


def _descending(L: LieAlgebra, step) -> list[Subspace]:
    series = [full(L)]
    while series[-1].dim > 0:
        nxt = step(series[-1])
        series.append(nxt)
        if nxt.dim == series[-2].dim:
            break
    return series


@memoized
def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """``L = g1 > g2 > ...``; ends at 0 or repeats the stable term once."""
    F = full(L)
    return _descending(L, lambda S: product_ideal(L, F, S))


@memoized
def derived_series(L: LieAlgebra) -> list[Subspace]:
    return _descending(L, lambda S: product_ideal(L, S, S))


def preimage_center(L: LieAlgebra, Z: Subspace) -> Subspace:
    """``{x : [x, L] in Z}``."""
    n = L.dim
    ann = Z.annihilator()
    eqs = []
    for j in range(n):
        cols = [L.basis_bracket(i, j) for i in range(n)]
        for a in ann:
            eqs.append(tuple(_dot(a, cols[i]) for i in range(n)))
    return Subspace.span(la.nullspace(eqs, n), n)


def _dot(a, v):
    acc = ZERO
    for p, q in zip(a, v):
        if p and q:
            acc = acc + p * q
    return acc


@memoized
def upper_central_series(L: LieAlgebra) -> list[Subspace]:
    """``0 = Z0 < Z1 < ...``; ends at L or repeats the stable term once."""
    series = [Subspace.zero(L.dim)]
    while series[-1].dim < L.dim:
        nxt = preimage_center(L, series[-1])
        series.append(nxt)
        if nxt.dim == series[-2].dim:
            break
    return series


def _length_to_zero(series: list[Subspace]):
    return len(series) - 1 if series[-1].dim == 0 else None


def is_ideal(L: LieAlgebra, I: Subspace) -> bool:
    n = L.dim
    return all(I.contains(L.bracket(la.unit(n, j), v)) for j in range(n) for v in I.rows)


# -- derived invariants -----------------------------------------------------


@memoized
def killing_form(L: LieAlgebra) -> la.Matrix:
    """``K[i][j] = tr(ad e_i ad e_j)``.

    Entries are exact; with parameters they are rational functions.
    """
    n = L.dim
    ads = [L.ad_basis(i) for i in range(n)]
    K = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            # trace of product without forming it
            acc = ZERO
            A, B = ads[i], ads[j]
            for r in range(n):
                for s in range(n):
                    if A[r][s] and B[s][r]:
                        acc = acc + A[r][s] * B[s][r]
            K[i][j] = K[j][i] = acc
    return K


def is_semisimple(L: LieAlgebra) -> bool:
    if L.is_parametric:
        raise AlgebraError("semisimplicity test needs a parameter-free algebra")
    if L.dim == 0:
        return True
    return bool(la.det(killing_form(L)))


def derivations(L: LieAlgebra) -> list[la.Matrix]:
    """Basis of ``Der(L)`` as matrices (column j is the image of ``e_j``)."""
    n = L.dim
    # unknown D[k][l] at index k*n + l
    eqs = []
    for a in range(n):
        for b in range(a + 1, n):
            ab = L.basis_bracket(a, b)
            for k in range(n):
                row = [ZERO] * (n * n)
                # D[e_a, e_b]_k = sum_l D[k][l] c_ab^l
                for l, c in enumerate(ab):
                    if c:
                        row[k * n + l] = row[k * n + l] + c
                # [D e_a, e_b]_k = sum_l D[l][a] c_lb^k
                for l in range(n):
                    c = L.basis_bracket(l, b)[k]
                    if c:
                        row[l * n + a] = row[l * n + a] - c
                    c = L.basis_bracket(a, l)[k]
                    if c:
                        row[l * n + b] = row[l * n + b] - c
                if any(row):
                    eqs.append(tuple(row))
    sols = la.nullspace(eqs, n * n)
    return [[list(v[k * n:(k + 1) * n]) for k in range(n)] for v in sols]


def nilradical(L: LieAlgebra):
    """Largest nilpotent ideal for solvable ``L``; ``Unknown`` otherwise.

    In a solvable algebra it is the set of ad-nilpotent elements.  That set
    is the common kernel of ``x -> tr(ad x . M)`` over a spanning set of the
    unital associative algebra generated by ``ad L``.
    """
    ds = derived_series(L)
    if ds[-1].dim != 0:
        return Unknown("nilradical is only computed for solvable algebras")
    n = L.dim
    if n == 0:
        return Subspace.zero(0)
    # x is ad-nilpotent iff tr(ad x . M) = 0 for every M in the associative
    # algebra generated by ad L; by Lie's theorem that algebra is triangular.
    ads = [L.ad_basis(i) for i in range(n)]
    gens = list(ads)
    generic = [[ZERO] * n for _ in range(n)]
    for i, A in enumerate(ads):
        c = Scalar.of(i + 2)
        generic = [[g + c * a for g, a in zip(gr, ar)] for gr, ar in zip(generic, A)]
    gens.append(generic)
    words = [la.identity(n)]
    frontier = [la.identity(n)]
    seen = Subspace.span([tuple(c for row in words[0] for c in row)], n * n)
    while frontier:
        new = []
        for W in frontier:
            for G in gens:
                P = la.matmul(W, G)
                flat = tuple(c for row in P for c in row)
                if not seen.contains(flat):
                    seen = seen + Subspace.span([flat], n * n)
                    new.append(P)
        words.extend(new)
        frontier = new
    eqs = []
    for M in words:
        eqs.append(tuple(_trace_prod(ads[i], M) for i in range(n)))
    N = Subspace.span(la.nullspace(eqs, n), n)
    if not (is_ideal(L, N) and _is_nilpotent_subalgebra(L, N)):
        return Unknown("ad-nilpotent candidate failed verification")
    return N


def _trace_prod(A, B):
    acc = ZERO
    n = len(A)
    for r in range(n):
        for s in range(n):
            if A[r][s] and B[s][r]:
                acc = acc + A[r][s] * B[s][r]
    return acc


def _is_nilpotent_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    cur = S
    for _ in range(S.dim + 1):
        if cur.dim == 0:
            return True
        cur = product_ideal(L, S, cur)
    return cur.dim == 0


# -- report -----------------------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    dim: int
    lower_central: tuple
    upper_central: tuple
    derived: tuple
    center_dim: int
    nilpotency_class: int | None
    derived_length: int | None
    nilpotent: bool
    solvable: bool
    abelian: bool
    metabelian: bool
    perfect: bool
    centerless: bool
    semisimple: bool | None

    def to_json(self) -> dict:
        out = asdict(self)
        for k in ("lower_central", "upper_central", "derived"):
            out[k] = list(out[k])
        out["nilpotency_class"] = self.nilpotency_class if self.nilpotent else "not nilpotent"
        out["derived_length"] = self.derived_length if self.solvable else "not solvable"
        return out


def classify_structure(L: LieAlgebra) -> StructureReport:
    lower = lower_central_series(L)
    upper = upper_central_series(L)
    der = derived_series(L)
    cls = _length_to_zero(lower)
    dl = _length_to_zero(der)
    nilpotent = cls is not None
    solvable = dl is not None
    # upper series must reach everything exactly when the lower one reaches 0
    assert nilpotent == (upper[-1].dim == L.dim), "series duality violated"
    zdim = upper[1].dim if len(upper) > 1 else 0
    if solvable and L.dim > 0:
        semisimple = False
    elif L.dim == 0:
        semisimple = True
    elif L.is_parametric:
        semisimple = None
    else:
        semisimple = is_semisimple(L)
    perfect = der[1].dim == L.dim if len(der) > 1 else True
    return StructureReport(
        dim=L.dim,
        lower_central=tuple(s.dim for s in lower),
        upper_central=tuple(s.dim for s in upper),
        derived=tuple(s.dim for s in der),
        center_dim=zdim,
        nilpotency_class=cls,
        derived_length=dl,
        nilpotent=nilpotent,
        solvable=solvable,
        abelian=(der[1].dim == 0) if len(der) > 1 else True,
        metabelian=solvable and dl <= 2,
        perfect=perfect,
        centerless=zdim == 0,
        semisimple=semisimple,
    )


# -- constructions ----------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    algebra: LieAlgebra
    projection: la.Matrix  # q x n
    complement: tuple  # indices of the standard basis vectors kept


def quotient(L: LieAlgebra, I: Subspace, name: str | None = None) -> Quotient:
    """``L / I`` on the standard basis vectors off the pivots of ``I``."""
    if not is_ideal(L, I):
        raise AlgebraError("subspace is not an ideal")
    keep = I.complement_indices()
    q = len(keep)
    n = L.dim

    def project(v):
        w = I.reduce(v)
        return tuple(w[k] for k in keep)

    structure = {}
    for a in range(q):
        for b in range(a + 1, q):
            img = project(L.basis_bracket(keep[a], keep[b]))
            row = {k: c for k, c in enumerate(img) if c}
            if row:
                structure[(a, b)] = row
    proj = la.transpose([project(la.unit(n, j)) for j in range(n)]) if q else []
    Q = LieAlgebra(
        q,
        structure,
        [L.labels[k] for k in keep],
        name if name is not None else f"{L.name}/I",
        L.params,
        L.real,
        L.constraints,
    )
    return Quotient(Q, proj, tuple(keep))


def direct_sum(*algebras: LieAlgebra, name: str | None = None) -> LieAlgebra:
    structure = {}
    labels = []
    params: list = []
    real: list = []
    constraints: list = []
    offset = 0
    for L in algebras:
        for (i, j), row in L.structure.items():
            structure[(i + offset, j + offset)] = {k + offset: c for k, c in row.items()}
        labels.extend(L.labels)
        params.extend(p for p in L.params if p not in params)
        real.extend(p for p in L.real if p not in real)
        constraints.extend(L.constraints)
        offset += L.dim
    if len(set(labels)) != len(labels):
        labels = [f"x{k + 1}" for k in range(offset)]
    if name is None:
        name = " + ".join(L.name or "?" for L in algebras)
    return LieAlgebra(offset, structure, labels, name, params, real, constraints)


def change_basis(L: LieAlgebra, P: la.Matrix, name: str | None = None, labels=None) -> LieAlgebra:
    """Same algebra in the basis given by the columns of invertible ``P``."""
    n = L.dim
    Pinv = la.inverse(P)
    cols = [tuple(P[r][j] for r in range(n)) for j in range(n)]
    structure = {}
    for a in range(n):
        for b in range(a + 1, n):
            img = la.matvec(Pinv, L.bracket(cols[a], cols[b]))
            row = {k: c for k, c in enumerate(img) if c}
            if row:
                structure[(a, b)] = row
    return LieAlgebra(
        n,
        structure,
        labels,
        name if name is not None else L.name,
        L.params,
        L.real,
        L.constraints,
    )


def restrict(L: LieAlgebra, vectors: Sequence, name: str = "") -> LieAlgebra:
    """Subalgebra spanned by independent ``vectors`` (closed under bracket)."""
    m = len(vectors)
    S = Subspace.span(vectors, L.dim)
    if S.dim != m:
        raise AlgebraError("vectors are not independent")
    # coordinates in the given (non-echelon) basis
    M = la.transpose([list(v) for v in vectors])
    structure = {}
    for a in range(m):
        for b in range(a + 1, m):
            br = L.bracket(vectors[a], vectors[b])
            x = la.solve(M, br, m)
            if x is None:
                raise AlgebraError("span is not closed under the bracket")
            row = {k: c for k, c in enumerate(x) if c}
            if row:
                structure[(a, b)] = row
    return LieAlgebra(m, structure, name=name, params=L.params, real=L.real)


@memoized
def split_abelian_factor(L: LieAlgebra):
    """Write ``L = U (+) W`` with ``W`` central and ``W`` meeting ``[L,L]`` in 0.

    Returns ``(U, w, P)``: the algebra ``U`` on its own basis, ``w = dim W``
    and the change-of-basis matrix ``P`` whose columns are the
    basis of ``U`` followed by that of ``W``.
    """
    n = L.dim
    Z = center(L)
    DL = derived_algebra(L)
    W = Z.intersect(DL).extend_to(Z)
    DZ = DL + Z
    comp = [la.unit(n, k) for k in DZ.complement_indices()]
    U = list(DL.rows) + comp
    P = la.transpose([list(v) for v in U + W]) if n else []
    return restrict(L, U, name=f"{L.name}_core"), len(W), P


def is_simple(L: LieAlgebra):
    """``True``/``False`` or ``Unknown``.  ``False`` comes with a witness ideal
    available via :func:`proper_ideal`."""
    if L.is_parametric:
        raise AlgebraError("simplicity test needs a parameter-free algebra")
    if L.dim <= 3:
        return L.dim == 3 and derived_algebra(L).dim == 3
    return False if proper_ideal(L) is not None else Unknown("no proper ideal found by the targeted search")


def ideal_generated(L: LieAlgebra, vectors) -> Subspace:
    n = L.dim
    S = Subspace.span(vectors, n)
    while True:
        new = S + Subspace.span([L.bracket(la.unit(n, j), v) for j in range(n) for v in S.rows], n)
        if new.dim == S.dim:
            return S
        S = new


def proper_ideal(L: LieAlgebra) -> Subspace | None:
    """Search characteristic subspaces and principal ideals for a proper one."""
    n = L.dim
    cands = [center(L)]
    cands += lower_central_series(L) + derived_series(L) + upper_central_series(L)
    if not L.is_parametric:
        K = killing_form(L)
        cands.append(Subspace.span(la.nullspace(K, n), n))
    for k in range(n):
        cands.append(ideal_generated(L, [la.unit(n, k)]))
    for S in cands:
        if 0 < S.dim < n and is_ideal(L, S):
            return S
    return None
