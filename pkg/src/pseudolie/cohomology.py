"""Second cohomology with trivial coefficients and central extensions.

A cocycle ``theta`` with values in ``V = Q(i)^d`` is stored as components
``theta(x_i, x_j) = sum_s c[i, j, s] u_s`` for ``i < j``.  Coordinates of a
scalar-valued bilinear form are indexed by the pairs ``i < j`` in
lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg as la
from .lie.algebra import AlgebraError, LieAlgebra, Subspace
from .lie.structure import center
from .scalars import ONE, ZERO, Scalar, format_scalar, parse_scalar


class CocycleError(ValueError):
    pass


def pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


@lru_cache(maxsize=None)
def _pair_index(n: int) -> dict:
    return {p: k for k, p in enumerate(pairs(n))}


def _form_entry(vec, n, i, j):
    """``phi(e_i, e_j)`` from coordinates over pairs."""
    if i == j:
        return ZERO
    idx = _pair_index(n)
    if i < j:
        return vec[idx[(i, j)]]
    return -vec[idx[(j, i)]]


@dataclass(frozen=True)
class Cocycle:
    base: LieAlgebra
    center_dim: int
    components: Mapping  # (i, j, s) -> Scalar, i < j, 0-based

    @classmethod
    def from_forms(cls, base: LieAlgebra, forms: Sequence[Sequence[Scalar]]) -> "Cocycle":
        """One scalar form (coordinates over pairs) per component ``u_s``."""
        comps = {}
        for s, vec in enumerate(forms):
            for (i, j), c in zip(pairs(base.dim), vec):
                if c:
                    comps[(i, j, s)] = c
        return cls(base, len(forms), comps)

    def form(self, s: int) -> la.Vector:
        return tuple(self.components.get((i, j, s), ZERO) for i, j in pairs(self.base.dim))

    def forms(self) -> list:
        return [self.form(s) for s in range(self.center_dim)]

    def value(self, x, y) -> la.Vector:
        """``theta(x, y)`` in ``V`` coordinates."""
        n = self.base.dim
        out = []
        for s in range(self.center_dim):
            f = self.form(s)
            acc = ZERO
            for i, xi in enumerate(x):
                if not xi:
                    continue
                for j, yj in enumerate(y):
                    if yj and i != j:
                        c = _form_entry(f, n, i, j)
                        if c:
                            acc = acc + xi * yj * c
            out.append(acc)
        return tuple(out)

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle.from_forms(self.base, [la.vadd(a, b) for a, b in zip(self.forms(), other.forms())])

    def violations(self) -> list[tuple[int, int, int]]:
        n = self.base.dim
        bad = []
        for s in range(self.center_dim):
            row_of = _cocycle_rows(self.base)
            f = self.form(s)
            for triple, row in row_of:
                if _dot(row, f):
                    bad.append(triple)
        return sorted(set(bad))

    def is_cocycle(self) -> bool:
        return not self.violations()

    def to_json(self) -> dict:
        out = {}
        for (i, j, s), c in sorted(self.components.items()):
            out.setdefault(f"{i + 1},{j + 1}", {})[str(s + 1)] = format_scalar(c)
        return {"center_dim": self.center_dim, "components": out}

    @classmethod
    def from_json(cls, base: LieAlgebra, data: Mapping) -> "Cocycle":
        d = int(data["center_dim"])
        comps = {}
        for key, row in data.get("components", {}).items():
            i, j = (int(t) for t in key.split(","))
            if not (1 <= i < j <= base.dim):
                raise CocycleError(f"bad cocycle key {key!r}")
            for s, text in row.items():
                comps[(i - 1, j - 1, int(s) - 1)] = parse_scalar(text, base.params)
        return cls(base, d, comps)


def _dot(u, v):
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def _cocycle_rows(L: LieAlgebra):
    """One linear functional per basis triple: the cyclic cocycle sum."""
    n = L.dim
    idx = _pair_index(n)
    npairs = len(idx)
    rows = []
    for a, b, c in combinations(range(n), 3):
        row = [ZERO] * npairs
        # phi([a,b], c) + phi([b,c], a) + phi([c,a], b)
        for (x, y), z in (((a, b), c), ((b, c), a), ((c, a), b)):
            for k, coef in enumerate(L.basis_bracket(x, y)):
                if not coef or k == z:
                    continue
                if k < z:
                    row[idx[(k, z)]] = row[idx[(k, z)]] + coef
                else:
                    row[idx[(z, k)]] = row[idx[(z, k)]] - coef
        rows.append(((a, b, c), tuple(row)))
    return rows


def scalar_cocycles(L: LieAlgebra) -> list[la.Vector]:
    """Basis of scalar 2-cocycles, coordinates over pairs."""
    npairs = len(pairs(L.dim))
    return la.nullspace([r for _, r in _cocycle_rows(L)], npairs)


def scalar_coboundaries(L: LieAlgebra) -> list[la.Vector]:
    """RREF basis of ``{(x, y) -> nu([x, y])}``."""
    n = L.dim
    P = pairs(n)
    vecs = [tuple(L.basis_bracket(i, j)[k] for i, j in P) for k in range(n)]
    return list(la.rref(vecs, len(P))[0]) if P else []


def scalar_cohomology_dims(L: LieAlgebra) -> tuple[int, int]:
    return len(scalar_cocycles(L)), len(scalar_coboundaries(L))


def _lift(L, forms_basis, d) -> list[Cocycle]:
    npairs = len(pairs(L.dim))
    out = []
    for s in range(d):
        for f in forms_basis:
            forms = [f if t == s else la.zeros(npairs) for t in range(d)]
            out.append(Cocycle.from_forms(L, forms))
    return out


def cocycle_space(L: LieAlgebra, center_dim: int = 1) -> list[Cocycle]:
    if L.is_parametric:
        raise AlgebraError("cohomology needs a parameter-free algebra")
    return _lift(L, scalar_cocycles(L), center_dim)


def coboundary_space(L: LieAlgebra, center_dim: int = 1) -> list[Cocycle]:
    if L.is_parametric:
        raise AlgebraError("cohomology needs a parameter-free algebra")
    return _lift(L, scalar_coboundaries(L), center_dim)


@dataclass(frozen=True)
class Multiplier:
    z2: int
    b2: int
    representatives: tuple  # scalar forms completing B2 to Z2

    @property
    def dim(self) -> int:
        return self.z2 - self.b2

    def to_json(self):
        return {
            "dim_Z2": self.z2,
            "dim_B2": self.b2,
            "dim_M": self.dim,
            "representatives": [[format_scalar(c) for c in f] for f in self.representatives],
        }


def schur_multiplier(L: LieAlgebra) -> Multiplier:
    if L.is_parametric:
        raise AlgebraError("cohomology needs a parameter-free algebra")
    Z = scalar_cocycles(L)
    B = scalar_coboundaries(L)
    npairs = len(pairs(L.dim))
    Bsub = Subspace.span(B, npairs)
    Zsub = Subspace.span(Z, npairs)
    reps = Bsub.extend_to(Zsub)
    return Multiplier(len(Z), len(B), tuple(reps))


def independent_mod_coboundaries(theta: Cocycle) -> bool:
    L = theta.base
    B = scalar_coboundaries(L)
    npairs = len(pairs(L.dim))
    return la.rank(B + theta.forms(), npairs) == len(B) + theta.center_dim


def cocycle_radical(theta: Cocycle) -> Subspace:
    """``{x : theta(x, y) = 0 for all y}``."""
    L = theta.base
    n = L.dim
    rows = []
    for s in range(theta.center_dim):
        f = theta.form(s)
        for j in range(n):
            rows.append(tuple(_form_entry(f, n, i, j) for i in range(n)))
    return Subspace.span(la.nullspace(rows, n), n)


@dataclass(frozen=True)
class ExtensionResult:
    algebra: LieAlgebra
    embedding: la.Matrix  # (n + d) x d
    projection: la.Matrix  # n x (n + d)
    theta: Cocycle
    exact: bool
    center_is_v: bool

    def to_json(self):
        return {
            "algebra": self.algebra.to_json(),
            "theta": self.theta.to_json(),
            "exact": self.exact,
            "center_equals_V": self.center_is_v,
        }


def central_extension(L: LieAlgebra, theta: Cocycle, name: str | None = None) -> ExtensionResult:
    """``l_theta`` on ``x_1..x_n, u_1..u_d`` with ``[x, y] = [x, y]_l + theta(x, y)``."""
    if theta.base is not L and theta.base != L:
        raise CocycleError("cocycle belongs to a different algebra")
    bad = theta.violations()
    if bad:
        a, b, c = bad[0]
        raise CocycleError(f"cocycle identity fails on basis triple ({a + 1},{b + 1},{c + 1})")
    n, d = L.dim, theta.center_dim
    structure = {}
    for (i, j), row in L.structure.items():
        structure[(i, j)] = dict(row)
    for (i, j, s), c in theta.components.items():
        structure.setdefault((i, j), {})[n + s] = c
    labels = list(L.labels)
    taken = set(labels)
    for s in range(d):
        lab = f"u{s + 1}"
        while lab in taken:
            lab = "_" + lab
        labels.append(lab)
        taken.add(lab)
    E = LieAlgebra(
        n + d,
        structure,
        labels,
        name if name is not None else f"{L.name}_theta",
        L.params,
        L.real,
        L.constraints,
    )
    emb = [[ONE if r == n + s else ZERO for s in range(d)] for r in range(n + d)]
    proj = [[ONE if c == r else ZERO for c in range(n + d)] for r in range(n)]
    # exactness: mu injective, epsilon surjective, ker epsilon = im mu
    comp = la.matmul(proj, emb) if n and d else []
    kernel = la.nullspace(proj, n + d) if n else [la.unit(n + d, k) for k in range(n + d)]
    rank_emb = la.rank(la.transpose(emb), n + d) if d else 0
    exact = (
        rank_emb == d
        and (la.rank(proj, n + d) if n else 0) == n
        and all(not c for row in comp for c in row)
        and len(kernel) == d
    )
    Z = center(E)
    V = Subspace.span([la.unit(n + d, n + s) for s in range(d)], n + d)
    if not Z.contains_subspace(V):
        raise AssertionError("V is not central in the extension")
    return ExtensionResult(E, emb, proj, theta, exact, Z.dim == V.dim)
