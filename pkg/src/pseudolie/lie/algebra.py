"""Lie algebras given by structure constants, and subspaces of them.

Internally indices are 0-based and only pairs ``i < j`` are stored, so
antisymmetry holds by construction.  The JSON format is 1-based::

    {"name": "h1", "dim": 3, "parameters": [], "constraints": [],
     "basis": ["v1", "v2", "v"], "brackets": {"1,2": {"3": "1"}}}
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .. import linalg as la
from ..scalars import ONE, ZERO, Scalar, declared_params, format_scalar, parse_scalar

Structure = Mapping[tuple[int, int], Mapping[int, Scalar]]


class AlgebraError(ValueError):
    pass


def memoized(fn):
    """Cache a function of a single algebra on the algebra object itself.

    List results are copied on the way out so callers may extend them.
    """
    key = fn.__qualname__

    @functools.wraps(fn)
    def wrapper(L):
        memo = L.__dict__.setdefault("_memo", {})
        if key not in memo:
            memo[key] = fn(L)
        out = memo[key]
        return list(out) if isinstance(out, list) else out

    return wrapper


def _clean(structure, dim: int) -> dict:
    out = {}
    for (i, j), row in structure.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise AlgebraError(f"bracket index ({i + 1},{j + 1}) out of range for dim {dim}")
        sign = ONE
        if i == j:
            if any(Scalar.of(c) for c in row.values()):
                raise AlgebraError(f"nonzero self-bracket at index {i + 1}")
            continue
        if i > j:
            i, j = j, i
            sign = -ONE
        for k, c in row.items():
            if not 0 <= k < dim:
                raise AlgebraError(f"bracket target {k + 1} out of range for dim {dim}")
            c = Scalar.of(c) * sign
            if c:
                acc = out.setdefault((i, j), {})
                acc[k] = acc.get(k, ZERO) + c
                if not acc[k]:
                    del acc[k]
    return {key: dict(sorted(row.items())) for key, row in sorted(out.items()) if row}


class LieAlgebra:
    """Finite-dimensional Lie algebra ``[x_i, x_j] = sum_k c_ij^k x_k``.

    ``structure`` maps ``(i, j)`` with ``i < j`` to ``{k: c}``.  Pairs with
    ``i > j`` are accepted by the constructor and folded in with a sign.
    """

    def __init__(
        self,
        dim: int,
        structure: Structure | None = None,
        labels: Sequence[str] | None = None,
        name: str = "",
        params: Iterable[str] = (),
        real: Iterable[str] = (),
        constraints: Iterable[Scalar] = (),
    ):
        if dim < 0:
            raise AlgebraError("dimension must be nonnegative")
        self.dim = dim
        self.structure = _clean(structure or {}, dim)
        self.labels = tuple(labels) if labels is not None else tuple(f"x{k + 1}" for k in range(dim))
        if len(self.labels) != dim or len(set(self.labels)) != dim:
            raise AlgebraError("basis labels must be distinct and match the dimension")
        self.name = name
        self.params = tuple(params)
        self.real = tuple(real)
        self.constraints = tuple(constraints)

    # -- identity ---------------------------------------------------------

    @cached_property
    def _key(self):
        return (
            self.dim,
            tuple((ij, tuple(row.items())) for ij, row in self.structure.items()),
        )

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"LieAlgebra({self.name or '?'}, dim={self.dim}, {len(self.structure)} brackets)"

    @property
    def is_parametric(self) -> bool:
        return any(not c.is_constant for row in self.structure.values() for c in row.values())

    def relabel(self, name: str | None = None, labels: Sequence[str] | None = None) -> "LieAlgebra":
        return LieAlgebra(
            self.dim,
            self.structure,
            labels if labels is not None else self.labels,
            name if name is not None else self.name,
            self.params,
            self.real,
            self.constraints,
        )

    # -- brackets -----------------------------------------------------------

    @cached_property
    def _table(self):
        # full table of basis brackets as sparse dicts, both orders
        table = [[None] * self.dim for _ in range(self.dim)]
        for (i, j), row in self.structure.items():
            table[i][j] = row
            table[j][i] = {k: -c for k, c in row.items()}
        return table

    def basis_bracket(self, i: int, j: int) -> la.Vector:
        out = [ZERO] * self.dim
        row = self._table[i][j]
        if row:
            for k, c in row.items():
                out[k] = c
        return tuple(out)

    def bracket(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> la.Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise AlgebraError(f"vectors must have length {self.dim}")
        out = [ZERO] * self.dim
        table = self._table
        for i, xi in enumerate(x):
            if not xi:
                continue
            ti = table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                row = ti[j]
                if row:
                    f = xi * yj
                    for k, c in row.items():
                        out[k] = out[k] + f * c
        return tuple(out)

    def ad(self, x: Sequence[Scalar]) -> la.Matrix:
        """Matrix of ``ad x`` (column ``j`` is ``[x, e_j]``)."""
        cols = [self.bracket(x, la.unit(self.dim, j)) for j in range(self.dim)]
        return la.transpose(cols) if cols else []

    def ad_basis(self, i: int) -> la.Matrix:
        n = self.dim
        M = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            row = self._table[i][j]
            if row:
                for k, c in row.items():
                    M[k][j] = c
        return M

    def basis_vector(self, k: int) -> la.Vector:
        return la.unit(self.dim, k)

    # -- validation ---------------------------------------------------------

    def jacobi_violations(self) -> list[tuple[tuple[int, int, int], la.Vector]]:
        """Basis triples (0-based) whose cyclic Jacobi sum is nonzero."""
        out = []
        n = self.dim
        e = [la.unit(n, k) for k in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                ab = self.basis_bracket(a, b)
                for c in range(b + 1, n):
                    s = la.vadd(
                        la.vadd(self.bracket(ab, e[c]), self.bracket(self.basis_bracket(b, c), e[a])),
                        self.bracket(self.basis_bracket(c, a), e[b]),
                    )
                    if not la.is_zero_vector(s):
                        out.append(((a, b, c), s))
        return out

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        brackets = {}
        for (i, j), row in self.structure.items():
            brackets[f"{i + 1},{j + 1}"] = {str(k + 1): format_scalar(c) for k, c in row.items()}
        out = {
            "name": self.name,
            "dim": self.dim,
            "parameters": list(self.params),
            "constraints": [f"{format_scalar(c)} != 0" for c in self.constraints],
            "basis": list(self.labels),
            "brackets": brackets,
        }
        if self.real:
            out["real"] = list(self.real)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, data: Mapping) -> "LieAlgebra":
        try:
            dim = int(data["dim"])
        except (KeyError, TypeError, ValueError):
            raise AlgebraError("algebra file needs an integer 'dim'") from None
        params = list(data.get("parameters", []))
        real = list(data.get("real", []))
        names = declared_params(params, real)
        structure: dict = {}
        for key, row in dict(data.get("brackets", {})).items():
            try:
                i, j = (int(t) for t in str(key).split(","))
            except ValueError:
                raise AlgebraError(f"bad bracket key {key!r}; expected 'i,j'") from None
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise AlgebraError(f"bracket index ({i},{j}) out of range for dim {dim}")
            if i >= j:
                raise AlgebraError(f"bracket key {key!r} must have i < j")
            for k, text in dict(row).items():
                k = int(k)
                if not 1 <= k <= dim:
                    raise AlgebraError(f"bracket target {k} out of range for dim {dim}")
                structure.setdefault((i - 1, j - 1), {})[k - 1] = parse_scalar(str(text), names)
        constraints = []
        for text in data.get("constraints", []):
            lhs, sep, rhs = str(text).partition("!=")
            if not sep:
                raise AlgebraError(f"constraint {text!r} must have the form '<scalar> != 0'")
            constraints.append(parse_scalar(lhs, names) - parse_scalar(rhs, names))
        labels = data.get("basis")
        return cls(dim, structure, labels, str(data.get("name", "")), params, real, constraints)

    @classmethod
    def loads(cls, text: str) -> "LieAlgebra":
        return cls.from_json(json.loads(text))


def validate(L: LieAlgebra) -> list[str]:
    """Human-readable Jacobi violations; empty for a valid algebra."""
    out = []
    for (a, b, c), s in L.jacobi_violations():
        terms = ", ".join(f"{L.labels[k]}: {format_scalar(v)}" for k, v in enumerate(s) if v)
        out.append(f"Jacobi fails on ({a + 1},{b + 1},{c + 1}): {terms}")
    return out


def abelian(n: int, name: str | None = None) -> LieAlgebra:
    return LieAlgebra(n, {}, name=name if name is not None else f"abelian_{n}")


def heisenberg(m: int) -> LieAlgebra:
    """``h(m)`` with ``[x_{2i-1}, x_{2i}] = z``."""
    n = 2 * m + 1
    structure = {(2 * i, 2 * i + 1): {n - 1: ONE} for i in range(m)}
    labels = [f"v{k + 1}" for k in range(2 * m)] + ["v"]
    return LieAlgebra(n, structure, labels, name=f"h{m}")


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``Q(i)^n`` held as canonical RREF rows."""

    ambient_dim: int
    rows: tuple = ()
    pivots: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], n: int) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            return cls(n)
        rows, piv = la.rref(vectors, n)
        return cls(n, tuple(rows), tuple(piv))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(la.unit(n, k) for k in range(n)), tuple(range(n)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> list:
        return list(self.rows)

    def __len__(self):
        return len(self.rows)

    def contains(self, v) -> bool:
        return la.is_zero_vector(la.reduce_vector(v, self.rows, self.pivots))

    def reduce(self, v) -> la.Vector:
        return la.reduce_vector(v, self.rows, self.pivots)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.rows) + list(other.rows), self.ambient_dim)

    def annihilator(self) -> list:
        """Basis of linear functionals vanishing on the subspace."""
        return la.nullspace(self.rows, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        eqs = self.annihilator() + other.annihilator()
        return Subspace.span(la.nullspace(eqs, self.ambient_dim), self.ambient_dim)

    def complement_indices(self) -> list[int]:
        """Standard basis indices spanning a complement."""
        piv = set(self.pivots)
        return [k for k in range(self.ambient_dim) if k not in piv]

    def extend_to(self, bigger: "Subspace") -> list:
        """Vectors from ``bigger``'s basis completing this subspace to it."""
        out = []
        rows, piv = list(self.rows), list(self.pivots)
        for v in bigger.rows:
            w = la.reduce_vector(v, rows, piv)
            if not la.is_zero_vector(w):
                out.append(v)
                rows, piv = la.rref(rows + [w], self.ambient_dim)
        return out

    def coordinates(self, v) -> la.Vector:
        """Coordinates of ``v`` in the RREF basis (``v`` must lie in the span)."""
        return tuple(v[p] for p in self.pivots)

    def to_json(self, labels: Sequence[str] | None = None):
        out = {"dim": self.dim, "basis": [[format_scalar(c) for c in row] for row in self.rows]}
        if labels is not None:
            out["span"] = [_combo(row, labels) for row in self.rows]
        return out


def _combo(row, labels) -> str:
    parts = []
    for c, lab in zip(row, labels):
        if not c:
            continue
        t = format_scalar(c)
        if t == "1":
            parts.append(lab)
        elif t == "-1":
            parts.append("-" + lab)
        else:
            parts.append(f"({t})*{lab}")
    s = " + ".join(parts).replace("+ -", "- ")
    return s or "0"
