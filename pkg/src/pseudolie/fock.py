"""Numerical checks of pseudo-bosonic relations on truncated Fock spaces.

The annihilation symbol becomes the ``N x N`` matrix with ``sqrt(1..N-1)``
on the superdiagonal and the creation symbol its transpose.  Near the
truncation edge the Weyl relation fails, so residuals are measured only on
the components with index ``< N - max(degree, K)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt
from typing import Mapping

import numpy as np

from .scalars import conj_name
from .weyl import WeylElement

DEFAULT_TOL_ORDINARY = 1e-10
DEFAULT_TOL_SHIFTED = 1e-8


class FockError(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedOperator:
    matrix: np.ndarray
    trunc_dim: int
    source_degree: int

    def __matmul__(self, v):
        return self.matrix @ v


def annihilation(N: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, N, dtype=float)), 1).astype(complex)


def creation(N: int) -> np.ndarray:
    return annihilation(N).T.copy()


def parameter_values(assign: Mapping[str, object], real=()) -> dict:
    """Numeric values for parameters; ``conj_p`` defaults to the conjugate of ``p``."""
    vals = {}
    for k, v in assign.items():
        if isinstance(v, str):
            v = complex(v.replace(" ", "").replace("*", "").replace("i", "j"))
        vals[k] = complex(v)
    for k in list(vals):
        partner = conj_name(k, real)
        if partner != k and partner not in vals:
            vals[partner] = vals[k].conjugate()
    return vals


def truncate(w: WeylElement, N: int, values: Mapping[str, complex] | None = None) -> TruncatedOperator:
    if N < 1:
        raise FockError("truncation dimension must be positive")
    deg = w.degree
    if N <= deg:
        raise FockError(f"truncation {N} too small for degree {deg}")
    values = dict(values or {})
    missing = sorted({n for c in w.terms.values() for n in c.names} - set(values))
    if missing:
        raise FockError(f"unassigned parameter(s): {', '.join(missing)}")
    A = annihilation(N)
    Ad = creation(N)
    Apow = [np.eye(N, dtype=complex)]
    Dpow = [np.eye(N, dtype=complex)]
    for _ in range(deg):
        Apow.append(Apow[-1] @ A)
        Dpow.append(Dpow[-1] @ Ad)
    M = np.zeros((N, N), dtype=complex)
    for (m, n), c in w.terms.items():
        M += c.evaluate(values) * (Dpow[m] @ Apow[n])
    return TruncatedOperator(M, N, deg)


@dataclass
class PBFamily:
    phi: list
    psi: list
    normalization: complex


@dataclass
class Vacua:
    phi0: np.ndarray
    psi0: np.ndarray
    residual_a: float
    residual_bdag: float
    sigma_a: float
    sigma_bdag: float
    overlap: complex


def _kernel_vector(op: TruncatedOperator):
    """Smallest right singular vector, polished by a pivoted solve.

    The SVD vector carries rounding noise of order 1e-16 in every component,
    and raising operators amplify noise at index k by about sqrt(k!), so the
    vector is recomputed from the rows away from the truncation edge with its
    largest component held fixed.  The polished vector is kept only if its
    residual is no worse.
    """
    M = op.matrix
    N = M.shape[0]
    _, s, vh = np.linalg.svd(M)
    v = vh[-1].conj()
    v = v / np.linalg.norm(v)
    p = int(np.argmax(np.abs(v)))
    rows = N - max(op.source_degree, 1)
    cols = [k for k in range(N) if k != p]
    sub = M[:rows][:, cols]
    rhs = -M[:rows, p]
    try:
        if sub.shape[0] == sub.shape[1]:
            x = np.linalg.solve(sub, rhs)
        else:
            x = np.linalg.lstsq(sub, rhs, rcond=None)[0]
        w = np.empty(N, dtype=complex)
        w[p] = 1.0
        w[cols] = x
        w = w / np.linalg.norm(w)
        if np.all(np.isfinite(w)) and np.linalg.norm(M @ w) <= max(np.linalg.norm(M @ v), 1e-300):
            v = w
    except np.linalg.LinAlgError:
        pass
    return v, float(s[-1])


def find_vacua(a: TruncatedOperator, bdag: TruncatedOperator, tol: float = 1e-8) -> Vacua:
    """Numerical kernels of ``a`` and ``b^dagger``, scaled so ``<phi0, psi0> = 1``."""
    if a.trunc_dim != bdag.trunc_dim:
        raise FockError("operators have different truncations")
    phi0, sa = _kernel_vector(a)
    psi0, sb = _kernel_vector(bdag)
    if sa > tol:
        raise FockError(f"no vacuum for a at this truncation (smallest singular value {sa:.3e})")
    if sb > tol:
        raise FockError(f"no vacuum for b^dagger at this truncation (smallest singular value {sb:.3e})")
    # fix the phase of phi0 so its first nonzero component is real positive
    k = int(np.argmax(np.abs(phi0) > 1e-12))
    phi0 = phi0 * (abs(phi0[k]) / phi0[k])
    overlap = np.vdot(phi0, psi0)
    if abs(overlap) < 1e-12:
        raise FockError("<phi0, psi0> vanishes; normalization impossible")
    psi0 = psi0 / overlap
    return Vacua(
        phi0,
        psi0,
        float(np.linalg.norm(a.matrix @ phi0)),
        float(np.linalg.norm(bdag.matrix @ psi0)),
        sa,
        sb,
        complex(np.vdot(phi0, psi0)),
    )


def build_family(a, b, adag, bdag, phi0, psi0, K: int) -> PBFamily:
    """``phi_n = b^n phi0 / sqrt(n!)`` and ``psi_n = adag^n psi0 / sqrt(n!)``."""
    N = b.trunc_dim
    if not K < N / 2:
        raise FockError(f"need K < N/2 (K={K}, N={N})")
    phi = [phi0]
    psi = [psi0]
    for n in range(1, K + 1):
        phi.append(b.matrix @ phi[-1] / sqrt(n))
        psi.append(adag.matrix @ psi[-1] / sqrt(n))
    return PBFamily(phi, psi, complex(np.vdot(phi0, psi0)))


@dataclass
class FockReport:
    N: int
    K: int
    tol: float
    residuals: dict
    cutoff: int
    ok: bool
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "N": self.N,
            "K": self.K,
            "tol": self.tol,
            "cutoff": self.cutoff,
            "residuals": self.residuals,
            "pass": self.ok,
            "notes": self.notes,
        }


def check_relations(fam: PBFamily, ops: Mapping[str, TruncatedOperator], tol: float) -> FockReport:
    """Max residuals of the ladder, biorthogonality and eigenvalue relations."""
    a, b, adag, bdag = (ops[k] for k in ("a", "b", "adag", "bdag"))
    N = a.trunc_dim
    K = len(fam.phi) - 1
    deg = max(op.source_degree for op in (a, b, adag, bdag))
    cut = N - max(deg, K)

    def res(v):
        return float(np.linalg.norm(v[:cut]))

    Nop = b.matrix @ a.matrix
    Ndag = adag.matrix @ bdag.matrix
    phi, psi = fam.phi, fam.psi
    r = {
        "b phi_n - sqrt(n+1) phi_n+1": max((res(b @ phi[n] - sqrt(n + 1) * phi[n + 1]) for n in range(K)), default=0.0),
        "a phi_n - sqrt(n) phi_n-1": max(
            [res(a @ phi[0])] + [res(a @ phi[n] - sqrt(n) * phi[n - 1]) for n in range(1, K + 1)]
        ),
        "adag psi_n - sqrt(n+1) psi_n+1": max(
            (res(adag @ psi[n] - sqrt(n + 1) * psi[n + 1]) for n in range(K)), default=0.0
        ),
        "bdag psi_n - sqrt(n) psi_n-1": max(
            [res(bdag @ psi[0])] + [res(bdag @ psi[n] - sqrt(n) * psi[n - 1]) for n in range(1, K + 1)]
        ),
        "biorthogonality": float(
            np.max(np.abs(np.array([[np.vdot(p, q) for q in psi] for p in phi]) - np.eye(K + 1)))
        ),
        "N phi_n - n phi_n": max(res(Nop @ phi[n] - n * phi[n]) for n in range(K + 1)),
        "Ndag psi_n - n psi_n": max(res(Ndag @ psi[n] - n * psi[n]) for n in range(K + 1)),
    }
    ok = all(v <= tol for v in r.values())
    return FockReport(N, K, tol, r, cut, ok)


def gram_matrix(fam: PBFamily) -> np.ndarray:
    return np.array([[np.vdot(p, q) for q in fam.psi] for p in fam.phi])


def operators_from_roles(realization, N: int, values: Mapping[str, complex]) -> dict:
    ops = {}
    for role in ("a", "b", "adag", "bdag"):
        ops[role] = truncate(realization.role(role), N, values)
    return ops


def fock_check(realization, assign: Mapping[str, object], N: int, K: int, tol: float | None = None) -> FockReport:
    """Vacua, families and relation residuals for a realization's ``a, b`` roles."""
    values = parameter_values(assign, realization.real)
    if tol is None:
        tol = DEFAULT_TOL_ORDINARY if not any(values.values()) else DEFAULT_TOL_SHIFTED
    ops = operators_from_roles(realization, N, values)
    vac = find_vacua(ops["a"], ops["bdag"], tol=max(tol, 1e-8))
    fam = build_family(ops["a"], ops["b"], ops["adag"], ops["bdag"], vac.phi0, vac.psi0, K)
    rep = check_relations(fam, ops, tol)
    rep.residuals["vacuum a"] = vac.residual_a
    rep.residuals["vacuum bdag"] = vac.residual_bdag
    rep.ok = rep.ok and vac.residual_a <= tol and vac.residual_bdag <= tol
    return rep


def truncated_identity_defect(x: WeylElement, y: WeylElement, lhs: WeylElement, N: int, margin: int,
                              values: Mapping[str, complex] | None = None) -> float:
    """Max deviation between ``lhs`` and ``[x, y]`` computed with matrices, on the leading block."""
    X = truncate(x, N, values).matrix
    Y = truncate(y, N, values).matrix
    Lm = truncate(lhs, N, values).matrix
    k = N - margin
    return float(np.max(np.abs((X @ Y - Y @ X - Lm)[:k, :k]))) if k > 0 else 0.0


__all__ = [
    "TruncatedOperator",
    "PBFamily",
    "FockReport",
    "annihilation",
    "creation",
    "truncate",
    "find_vacua",
    "build_family",
    "check_relations",
    "fock_check",
    "gram_matrix",
    "operators_from_roles",
    "parameter_values",
    "truncated_identity_defect",
]
