"""Isomorphism testing for parameter-free Lie algebras.

The test runs in stages:

1. compare a fingerprint of invariants (cheap ones first);
2. split off the central abelian factor on both sides;
3. Heisenberg cores are matched with symplectic bases and three-dimensional
   simple cores with sl2-triples;
4. otherwise solve ``T[x, y] = [Tx, Ty]`` by depth-first search over the
   entries of ``T``, eliminating linear equations and solving univariate
   quadratics exactly whenever possible.

A ``Yes`` answer is always verified exactly.  ``Unknown`` means the search
ran out of budget or of candidate values.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import is_square, isqrt, mpz

from .. import linalg as la
from ..outcome import Unknown
from ..scalars import ONE, ZERO, I, Scalar, format_scalar
from .algebra import AlgebraError, LieAlgebra, Subspace
from .structure import (
    center,
    centralizer,
    change_basis,
    derivations,
    derived_algebra,
    derived_series,
    killing_form,
    lower_central_series,
    split_abelian_factor,
    upper_central_series,
)

DEFAULT_BUDGET = int(os.environ.get("PSEUDOLIE_BUDGET", "20000"))

BRANCH_VALUES = (
    ZERO,
    ONE,
    -ONE,
    I,
    -I,
    Scalar(2),
    Scalar(-2),
    ONE / 2,
    -ONE / 2,
)


@dataclass(frozen=True)
class Yes:
    matrix: tuple  # rows; column j is the image of e_j
    method: str = ""

    def to_json(self):
        return {
            "isomorphic": True,
            "method": self.method,
            "matrix": [[format_scalar(c) for c in row] for row in self.matrix],
        }


@dataclass(frozen=True)
class No:
    invariant: str
    left: object
    right: object

    def to_json(self):
        return {"isomorphic": False, "invariant": self.invariant, "left_value": self.left, "right_value": self.right}


# -- invariants -------------------------------------------------------------


def _killing_rank(L: LieAlgebra) -> int:
    return la.rank(killing_form(L), L.dim) if L.dim else 0


def _cheap_invariants(L: LieAlgebra):
    lower = lower_central_series(L)
    Z = center(L)
    DL = lower[1] if len(lower) > 1 else Subspace.zero(L.dim)
    yield "dim", L.dim
    yield "derived series dims", [s.dim for s in derived_series(L)]
    yield "lower central series dims", [s.dim for s in lower]
    yield "upper central series dims", [s.dim for s in upper_central_series(L)]
    yield "center dim", Z.dim
    yield "dim of center meet derived algebra", Z.intersect(DL).dim
    yield "centralizer dims of lower central terms", [centralizer(L, s).dim for s in lower]
    yield "Killing form rank", _killing_rank(L)


def _costly_invariants(L: LieAlgebra):
    from ..cohomology import scalar_cohomology_dims

    yield "derivation algebra dim", len(derivations(L))
    z2, b2 = scalar_cohomology_dims(L)
    yield "dim Z2", z2
    yield "dim B2", b2


@lru_cache(maxsize=4096)
def fingerprint(L: LieAlgebra) -> tuple:
    """Tuple of ``(name, value)`` pairs; equal for isomorphic algebras."""
    items = list(_cheap_invariants(L)) + list(_costly_invariants(L))
    return tuple((k, tuple(v) if isinstance(v, list) else v) for k, v in items)


@lru_cache(maxsize=4096)
def cheap_fingerprint(L: LieAlgebra) -> tuple:
    return tuple((k, tuple(v) if isinstance(v, list) else v) for k, v in _cheap_invariants(L))


def first_difference(L1: LieAlgebra, L2: LieAlgebra, costly: bool = True):
    for f in (cheap_fingerprint, fingerprint) if costly else (cheap_fingerprint,):
        for (name, v1), (_, v2) in zip(f(L1), f(L2)):
            if v1 != v2:
                return name, v1, v2
    return None


def characteristic_subspaces(L: LieAlgebra) -> list[Subspace]:
    """Subspaces every isomorphism must respect, in a fixed order."""
    lower = lower_central_series(L)
    out = [center(L)]
    out += lower[1:] + derived_series(L)[1:] + upper_central_series(L)[1:]
    out += [centralizer(L, s) for s in lower[1:]]
    DL = derived_algebra(L)
    out.append(center(L).intersect(DL))
    return out


# -- exact square roots in Q(i) ---------------------------------------------


def _gauss_int_sqrt(a: mpz, b: mpz):
    norm2 = a * a + b * b
    if not is_square(norm2):
        return None
    N = isqrt(norm2)
    if (a + N) % 2 or (N - a) % 2:
        return None
    x2, y2 = (a + N) // 2, (N - a) // 2
    if not (is_square(x2) and is_square(y2)):
        return None
    x, y = isqrt(x2), isqrt(y2)
    if b < 0:
        y = -y
    if x * x - y * y != a or 2 * x * y != b:
        return None
    return x, y


def gauss_sqrt(s: Scalar):
    """A square root of a constant scalar in Q(i), or ``None``."""
    if not s:
        return ZERO
    re, im = s.real, s.imag
    d = mpz(re.denominator) * mpz(im.denominator)
    A = re * d * d
    B = im * d * d
    root = _gauss_int_sqrt(mpz(A.numerator), mpz(B.numerator))
    if root is None:
        return None
    x, y = root
    return Scalar.gauss(x, y) / Scalar(int(d))


# -- polynomial system ------------------------------------------------------
# A polynomial is a dict {(): c, (v,): c, (v, w): c} with v <= w.


def _add(out, key, c):
    if not c:
        return
    cur = out.get(key)
    if cur is None:
        out[key] = c
    else:
        s = cur + c
        if s:
            out[key] = s
        else:
            del out[key]


def _subst(poly, v, p):
    hit = False
    for key in poly:
        if v in key:
            hit = True
            break
    if not hit:
        return poly
    out: dict = {}
    for key, c in poly.items():
        if v not in key:
            _add(out, key, c)
        elif len(key) == 1:
            for k2, c2 in p.items():
                _add(out, k2, c * c2)
        elif key[0] == key[1]:
            items = list(p.items())
            for k1, c1 in items:
                for k2, c2 in items:
                    _add(out, _mulkey(k1, k2), c * c1 * c2)
        else:
            other = key[1] if key[0] == v else key[0]
            for k2, c2 in p.items():
                _add(out, _mulkey((other,), k2), c * c2)
    return out


def _mulkey(k1, k2):
    k = k1 + k2
    if len(k) == 2 and k[0] > k[1]:
        return (k[1], k[0])
    return k


def _vars(poly):
    vs = set()
    for key in poly:
        vs.update(key)
    return vs


@dataclass
class _State:
    eqs: list
    defs: dict = field(default_factory=dict)


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, L1: LieAlgebra, L2: LieAlgebra, budget: int, seed: int = 0):
        self.L1, self.L2 = L1, L2
        self.n = n = L1.dim
        self.budget = budget
        self.nodes = 0
        self.rng = random.Random(seed)
        DL = derived_algebra(L1)
        gen_cols = DL.complement_indices() or list(range(n))
        self.gen_vars = {k * n + j for j in gen_cols for k in range(n)}

    def var(self, k, j):
        return k * self.n + j

    def equations(self) -> list:
        L1, L2, n = self.L1, self.L2, self.n
        eqs = []
        # bracket preservation
        for a in range(n):
            for b in range(a + 1, n):
                ab = L1.basis_bracket(a, b)
                for k in range(n):
                    poly: dict = {}
                    for l, c in enumerate(ab):
                        _add(poly, (self.var(k, l),), c)
                    for (p, q), row in L2.structure.items():
                        c = row.get(k)
                        if not c:
                            continue
                        # [T e_a, T e_b] gets t_pa t_qb c_pq - t_qa t_pb c_pq
                        _add(poly, _mulkey((self.var(p, a),), (self.var(q, b),)), -c)
                        _add(poly, _mulkey((self.var(q, a),), (self.var(p, b),)), c)
                    if poly:
                        eqs.append(poly)
        # characteristic subspaces map to their counterparts
        for S1, S2 in zip(characteristic_subspaces(L1), characteristic_subspaces(L2)):
            ann = S2.annihilator()
            for s in S1.rows:
                for alpha in ann:
                    poly = {}
                    for k, ak in enumerate(alpha):
                        if not ak:
                            continue
                        for j, sj in enumerate(s):
                            if sj:
                                _add(poly, (self.var(k, j),), ak * sj)
                    if poly:
                        eqs.append(poly)
        # Killing form preservation
        K1, K2 = killing_form(L1), killing_form(L2)
        if any(c for row in K1 for c in row):
            for a in range(n):
                for b in range(a, n):
                    poly = {}
                    _add(poly, (), -K1[a][b])
                    for p in range(n):
                        for q in range(n):
                            c = K2[p][q]
                            if c:
                                _add(poly, _mulkey((self.var(p, a),), (self.var(q, b),)), c)
                    if poly:
                        eqs.append(poly)
        return eqs

    # -- propagation --

    def _assign(self, state: _State, v, p):
        state.eqs = [e2 for e2 in (_subst(e, v, p) for e in state.eqs) if e2]
        for w in list(state.defs):
            state.defs[w] = _subst(state.defs[w], v, p)
        state.defs[v] = dict(p)

    def propagate(self, state: _State):
        """Returns ``None`` on contradiction, else a branching request or ``"leaf"``."""
        while True:
            lin = None
            for e in state.eqs:
                if all(len(k) <= 1 for k in e):
                    if list(e) == [()]:
                        return None
                    if lin is None:
                        lin = e
            if lin is not None:
                vs = sorted(k[0] for k in lin if k)
                non_gen = [v for v in vs if v not in self.gen_vars]
                v = (non_gen or vs)[-1]
                inv = lin[(v,)].inverse()
                p = {k: -c * inv for k, c in lin.items() if k != (v,)}
                self._assign(state, v, p)
                if not self._columns_ok(state):
                    return None
                continue
            break
        if not state.eqs:
            return "leaf"
        # univariate quadratic
        for e in state.eqs:
            vs = _vars(e)
            if len(vs) == 1:
                (v,) = vs
                a = e.get((v, v), ZERO)
                b = e.get((v,), ZERO)
                c = e.get((), ZERO)
                disc = b * b - 4 * a * c
                r = gauss_sqrt(disc)
                if r is None:
                    return None
                roots = [(-b + r) / (2 * a)]
                if r:
                    roots.append((-b - r) / (2 * a))
                return v, roots
        counts: dict = {}
        for e in state.eqs:
            for v in _vars(e):
                counts[v] = counts.get(v, 0) + 1
        pool = [v for v in counts if v in self.gen_vars] or list(counts)
        v = min(pool, key=lambda u: (-counts[u], u))
        return v, list(BRANCH_VALUES)

    def _columns_ok(self, state: _State) -> bool:
        n = self.n
        const_cols = []
        for j in range(n):
            col = []
            for k in range(n):
                d = state.defs.get(self.var(k, j))
                if d is None or any(key for key in d):
                    break
                col.append(d.get((), ZERO))
            else:
                if la.is_zero_vector(col):
                    return False
                const_cols.append(tuple(col))
        if len(const_cols) > 1 and la.rank(const_cols, n) < len(const_cols):
            return False
        return True

    def _leaf(self, state: _State):
        n = self.n
        free = [v for v in range(n * n) if v not in state.defs]
        # T is affine in the free entries; det(T) is a polynomial in them, so a
        # few random integer points decide whether it vanishes identically
        for attempt in range(8):
            if attempt == 0:
                vals = {v: ZERO for v in free}
            else:
                vals = {v: Scalar(self.rng.randint(-9, 9)) for v in free}
            T = [[ZERO] * n for _ in range(n)]
            for v in range(n * n):
                if v in vals:
                    x = vals[v]
                else:
                    x = ZERO
                    for key, c in state.defs[v].items():
                        term = c
                        for w in key:
                            term = term * vals[w]
                        x = x + term
                T[v // n][v % n] = x
            if la.det(T) and check_homomorphism(self.L1, self.L2, T):
                return T
            if not free:
                break
        return None

    def run(self):
        state = _State(self.equations())
        return self._dfs(state)

    def _dfs(self, state: _State):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Budget
        req = self.propagate(state)
        if req is None:
            return None
        if req == "leaf":
            return self._leaf(state)
        v, values = req
        for val in values:
            child = _State(list(state.eqs), dict(state.defs))
            self._assign(child, v, {(): val} if val else {})
            if not self._columns_ok(child):
                continue
            found = self._dfs(child)
            if found is not None:
                return found
        return None


def check_homomorphism(L1: LieAlgebra, L2: LieAlgebra, T) -> bool:
    """``T [e_a, e_b] == [T e_a, T e_b]`` for all basis pairs."""
    n = L1.dim
    cols = [tuple(T[k][j] for k in range(L2.dim)) for j in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if la.matvec(T, L1.basis_bracket(a, b)) != L2.bracket(cols[a], cols[b]):
                return False
    return True


# -- Heisenberg cores -------------------------------------------------------


def _is_heisenberg(L: LieAlgebra) -> bool:
    DL = derived_algebra(L)
    return L.dim >= 3 and DL.dim == 1 and center(L).dim == 1 and center(L).contains_subspace(DL)


def _symplectic_basis(L: LieAlgebra):
    """Columns ``p1, q1, ..., pm, qm, z`` with ``[p_i, q_i] = z``."""
    n = L.dim
    Z = center(L)
    z = Z.rows[0]
    piv = Z.pivots[0]

    def omega(x, y):
        return L.bracket(x, y)[piv] / z[piv]

    pool = [la.unit(n, k) for k in Z.complement_indices()]
    out = []
    while pool:
        p = pool.pop(0)
        idx = next(i for i, q in enumerate(pool) if omega(p, q))
        q = pool.pop(idx)
        q = la.vscale(omega(p, q).inverse(), q)
        pool = [
            la.vadd(la.vsub(r, la.vscale(omega(r, q), p)), la.vscale(omega(r, p), q)) for r in pool
        ]
        out += [p, q]
    out.append(z)
    return la.transpose([list(v) for v in out])


# -- three-dimensional simple cores ------------------------------------------

SL2_SEARCH_RADIUS = 2


def _small_vectors(n: int, radius: int):
    """Gaussian-integer vectors ordered by max-norm of their coordinates."""
    vals = {r: [Scalar.gauss(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)
                if max(abs(a), abs(b)) == r] for r in range(radius + 1)}
    for h in range(1, radius + 1):
        pools = [[v for r in range(h + 1) for v in vals[r]] for _ in range(n)]
        for v in itertools.product(*pools):
            if any(max(abs(int(c.real)), abs(int(c.imag))) == h for c in v):
                yield v


def _sl2_basis(L: LieAlgebra):
    """Columns ``h, e, f`` with ``[h,e]=2e, [h,f]=-2f, [e,f]=h``, or ``None``.

    Looks for a small ``x`` whose ``ad x`` has eigenvalues ``0, +-lam`` with
    ``lam`` in Q(i), then rescales and reads off the eigenvectors.
    """
    n = L.dim
    if n != 3 or derived_algebra(L).dim != 3:
        return None
    for x in _small_vectors(3, SL2_SEARCH_RADIUS):
        A = L.ad(x)
        c2 = A[0][0] * A[1][1] - A[0][1] * A[1][0] + A[0][0] * A[2][2] - A[0][2] * A[2][0] \
            + A[1][1] * A[2][2] - A[1][2] * A[2][1]
        lam = gauss_sqrt(-c2)
        if not lam:
            continue
        h = la.vscale(Scalar(2) / lam, x)
        H = L.ad(h)
        shift = [[H[r][c] - (Scalar(2) if r == c else ZERO) for c in range(n)] for r in range(n)]
        e = la.nullspace(shift, n)
        shift = [[H[r][c] + (Scalar(2) if r == c else ZERO) for c in range(n)] for r in range(n)]
        f = la.nullspace(shift, n)
        if len(e) != 1 or len(f) != 1:
            continue
        e, f = e[0], f[0]
        ef = L.bracket(e, f)
        k = next(i for i, c in enumerate(h) if c)
        scale = ef[k] / h[k]
        if not scale:
            continue
        f = la.vscale(scale.inverse(), f)
        return la.transpose([list(h), list(e), list(f)])
    return None


# -- driver -----------------------------------------------------------------


def _core_iso(U1: LieAlgebra, U2: LieAlgebra, budget: int):
    if U1.dim == 0:
        return [], "trivial"
    if U1 == U2:
        return la.identity(U1.dim), "identity"
    if _is_heisenberg(U1) and _is_heisenberg(U2):
        B1, B2 = _symplectic_basis(U1), _symplectic_basis(U2)
        return la.matmul(B2, la.inverse(B1)), "symplectic basis"
    B1 = _sl2_basis(U1)
    B2 = _sl2_basis(U2) if B1 is not None else None
    if B2 is not None:
        return la.matmul(B2, la.inverse(B1)), "sl2 triple"
    search = _Search(U1, U2, budget)
    T = search.run()
    if T is None:
        return None, f"search exhausted after {search.nodes} nodes"
    return T, f"search ({search.nodes} nodes)"


def isomorphic(L1: LieAlgebra, L2: LieAlgebra, budget: int | None = None):
    """``Yes(T)``, ``No(invariant, left, right)`` or ``Unknown(reason)``."""
    if L1.is_parametric or L2.is_parametric:
        raise AlgebraError("isomorphism test needs parameter-free algebras")
    budget = DEFAULT_BUDGET if budget is None else budget
    if L1.dim != L2.dim:
        return No("dim", L1.dim, L2.dim)
    n = L1.dim
    if L1 == L2:
        return Yes(tuple(tuple(r) for r in la.identity(n)), "identity")
    diff = first_difference(L1, L2, costly=False)
    if diff is not None:
        return No(*diff)
    U1, w1, P1 = split_abelian_factor(L1)
    U2, w2, P2 = split_abelian_factor(L2)
    if not (U1 == U2 or (_is_heisenberg(U1) and _is_heisenberg(U2))):
        diff = first_difference(L1, L2)
        if diff is not None:
            return No(*diff)
    try:
        Tc, how = _core_iso(U1, U2, budget)
    except _Budget:
        return Unknown(f"node budget {budget} exhausted")
    if Tc is None:
        return Unknown(how)
    u = U1.dim
    block = [[ZERO] * n for _ in range(n)]
    for r in range(u):
        for c in range(u):
            block[r][c] = Tc[r][c]
    for k in range(u, n):
        block[k][k] = ONE
    T = la.matmul(la.matmul(P2, block), la.inverse(P1))
    if not (la.det(T) and check_homomorphism(L1, L2, T)):
        raise AssertionError("constructed isomorphism failed verification")
    if w1:
        how = f"split abelian factor of dim {w1}; core by {how}"
    return Yes(tuple(tuple(r) for r in T), how)


def in_basis(L: LieAlgebra, T) -> LieAlgebra:
    """``L`` rewritten in the basis given by the columns of ``T``."""
    return change_basis(L, T)
