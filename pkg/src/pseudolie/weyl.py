"""One-mode Weyl algebra and operator realizations of Lie algebras.

Elements are normally ordered polynomials ``sum s_mn D^m C^n`` where ``C`` is
the annihilation symbol, ``D`` the creation symbol and ``[C, D] = I``.
Products are reordered with

    C^b D^c = sum_k k! binom(b, k) binom(c, k) D^(c-k) C^(b-k).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb, factorial
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from ._parse import ParseError, parse_expression
from .lie.algebra import LieAlgebra, Subspace
from .lie.structure import restrict
from .scalars import ONE, ZERO, Scalar, declared_params, format_scalar, parse_scalar

DEFAULT_DEGREE_CAP = 64


class DegreeExceeded(ArithmeticError):
    pass


class DimensionExceeded(RuntimeError):
    def __init__(self, dim: int, max_dim: int):
        self.dim = dim
        self.max_dim = max_dim
        super().__init__(f"closure reached dimension {dim} > {max_dim}")


def _mono_key(mn):
    m, n = mn
    return (m + n, m, n)


class WeylElement:
    """Immutable normally ordered element.  ``terms`` maps ``(m, n)`` to ``D^m C^n``."""

    __slots__ = ("terms", "_hash")

    degree_cap = DEFAULT_DEGREE_CAP

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | None = None):
        clean = {}
        for mn, c in (terms or {}).items():
            c = Scalar.of(c)
            if c:
                clean[mn] = c
        self.terms = dict(sorted(clean.items(), key=lambda kv: _mono_key(kv[0])))
        if self.terms and self.degree > self.degree_cap:
            raise DegreeExceeded(f"total degree {self.degree} exceeds cap {self.degree_cap}")
        self._hash = None

    @classmethod
    def scalar(cls, c) -> "WeylElement":
        return cls({(0, 0): c})

    @property
    def degree(self) -> int:
        return max((m + n for m, n in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = WeylElement.scalar(other)
        return isinstance(other, WeylElement) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mn, c in other.terms.items():
            out[mn] = out.get(mn, ZERO) + c
        return WeylElement(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({mn: -c for mn, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            c = Scalar.of(other)
            return WeylElement({mn: c * a for mn, a in self.terms.items()})
        if not isinstance(other, WeylElement):
            return NotImplemented
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("Weyl powers need a nonnegative integer exponent")
        out = ONE_W
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def coefficient(self, m: int, n: int) -> Scalar:
        return self.terms.get((m, n), ZERO)

    def conjugate_coefficients(self, real: Iterable[str] = ()) -> "WeylElement":
        return WeylElement({mn: c.conjugate(real) for mn, c in self.terms.items()})

    def __str__(self):
        return format_weyl(self)

    def __repr__(self):
        return f"WeylElement({format_weyl(self)!r})"


def _coerce(x):
    if isinstance(x, WeylElement):
        return x
    if isinstance(x, (int, Scalar)):
        return WeylElement.scalar(x)
    return NotImplemented


ZERO_W = WeylElement()
ONE_W = WeylElement({(0, 0): ONE})
C = WeylElement({(0, 1): ONE})
D = WeylElement({(1, 0): ONE})


def _reorder_coeffs(b: int, c: int):
    """``C^b D^c`` as ``[(k, coefficient)]`` for ``D^(c-k) C^(b-k)``."""
    return [(k, factorial(k) * comb(b, k) * comb(c, k)) for k in range(min(b, c) + 1)]


def weyl_mul(x: WeylElement, y: WeylElement) -> WeylElement:
    """Exact product in normal order."""
    out: dict = {}
    for (a, b), s in x.terms.items():
        for (c, d), t in y.terms.items():
            st = s * t
            for k, w in _reorder_coeffs(b, c):
                key = (a + c - k, b + d - k)
                out[key] = out.get(key, ZERO) + st * w
    return WeylElement(out)


def commutator(x: WeylElement, y: WeylElement) -> WeylElement:
    return weyl_mul(x, y) - weyl_mul(y, x)


def formal_adjoint(x: WeylElement, real: Iterable[str] = ()) -> WeylElement:
    """Anti-involution with ``C <-> D`` and conjugated coefficients.

    ``(D^m C^n)^dagger = D^n C^m``, already in normal order.
    """
    return WeylElement({(n, m): c.conjugate(real) for (m, n), c in x.terms.items()})


def is_pb_pair(a: WeylElement, b: WeylElement) -> bool:
    """``[a, b] = I``."""
    return commutator(a, b) == ONE_W


# -- formatting and parsing ---------------------------------------------------


def _fmt_mono(m: int, n: int) -> str:
    parts = []
    if m:
        parts.append("D" if m == 1 else f"D^{m}")
    if n:
        parts.append("C" if n == 1 else f"C^{n}")
    return "*".join(parts) if parts else "I"


def format_weyl(x: WeylElement) -> str:
    if not x.terms:
        return "0"
    out = []
    for (m, n), c in x.terms.items():
        mono = _fmt_mono(m, n)
        text = format_scalar(c)
        if text == "1":
            term = mono
        elif text == "-1":
            term = "-" + mono
        else:
            needs = any(op in text[1:] for op in "+-") or "/(" in text
            term = f"({text})*{mono}" if needs else f"{text}*{mono}"
        out.append(term)
    s = out[0]
    for t in out[1:]:
        s += " - " + t[1:] if t.startswith("-") else " + " + t
    return s


class _WeylBuilder:
    def __init__(self, params: Iterable[str], real: Iterable[str]):
        self.params = set(params)
        self.real = tuple(real)

    def integer(self, value: int):
        return WeylElement.scalar(value)

    def symbol(self, name: str, pos: int):
        if name == "C":
            return C
        if name == "D":
            return D
        if name == "I":
            return ONE_W
        if name == "i":
            return WeylElement.scalar(Scalar.gauss(0, 1))
        if name not in self.params:
            raise ParseError(f"undeclared parameter {name!r}", pos)
        return WeylElement.scalar(Scalar.param(name))

    def call(self, name: str, arg, pos: int):
        if name == "adj":
            return formal_adjoint(arg, self.real)
        raise ParseError(f"unknown function {name!r}", pos)

    def div(self, a, b, pos: int):
        if set(b.terms) - {(0, 0)}:
            raise ParseError("can only divide by scalars", pos)
        c = b.coefficient(0, 0)
        if not c:
            raise ParseError("division by zero", pos)
        return a * c.inverse()


def parse_weyl(text: str, params: Iterable[str] = (), real: Iterable[str] = ()) -> WeylElement:
    """Parse a Weyl expression; ``conj_p`` names are available for each parameter ``p``."""
    builder = _WeylBuilder(declared_params(params, real), real)
    try:
        return parse_expression(text, builder)
    except ParseError as exc:
        if not exc.text:
            raise ParseError(exc.message, exc.position, text) from None
        raise


# -- linear algebra over monomials ------------------------------------------


class _Echelon:
    """Incremental echelon basis of Weyl elements, tracking combinations."""

    def __init__(self):
        self.rows: list[tuple[tuple, WeylElement, dict]] = []  # (pivot, row, combo)
        self.count = 0

    def reduce(self, x: WeylElement):
        combo: dict = {}
        for piv, row, rc in self.rows:
            c = x.terms.get(piv)
            if c:
                x = x - row * c
                for k, v in rc.items():
                    combo[k] = combo.get(k, ZERO) + c * v
        return x, combo

    def add(self, x: WeylElement) -> bool:
        """Add ``x`` as basis element ``count`` if independent."""
        r, combo = self.reduce(x)
        if not r:
            return False
        piv = max(r.terms, key=_mono_key)
        inv = r.terms[piv].inverse()
        r = r * inv
        # r = (x - sum combo_k b_k) * inv
        rc = {k: -v * inv for k, v in combo.items() if v}
        rc[self.count] = rc.get(self.count, ZERO) + inv
        new_rows = []
        for p, row, c0 in self.rows:
            f = row.terms.get(piv)
            if f:
                row = row - r * f
                c0 = dict(c0)
                for k, v in rc.items():
                    c0[k] = c0.get(k, ZERO) - f * v
            new_rows.append((p, row, c0))
        new_rows.append((piv, r, rc))
        self.rows = new_rows
        self.count += 1
        return True

    def coordinates(self, x: WeylElement):
        """Coordinates of ``x`` in the added basis, or ``None`` if outside the span."""
        r, combo = self.reduce(x)
        if r:
            return None
        return tuple(combo.get(k, ZERO) for k in range(self.count))


def linear_relations(elements: Sequence[WeylElement]) -> list[la.Vector]:
    """Basis of ``{c : sum c_k x_k = 0}``."""
    monos = sorted({mn for x in elements for mn in x.terms}, key=_mono_key)
    rows = [tuple(x.coefficient(*mn) for x in elements) for mn in monos]
    return la.nullspace(rows, len(elements))


@dataclass
class Closure:
    algebra: LieAlgebra
    basis: list  # WeylElements
    labels: list

    def brackets(self) -> dict:
        out = {}
        for (i, j), row in self.algebra.structure.items():
            out[f"[{self.labels[i]},{self.labels[j]}]"] = _fmt_combo(row, self.labels)
        return out


def _fmt_combo(row: Mapping[int, Scalar], labels) -> str:
    parts = []
    for k, c in sorted(row.items()):
        text = format_scalar(c)
        if text == "1":
            parts.append(labels[k])
        elif text == "-1":
            parts.append("-" + labels[k])
        else:
            needs = any(op in text[1:] for op in "+-") or "/(" in text
            parts.append(f"({text})*{labels[k]}" if needs else f"{text}*{labels[k]}")
    if not parts:
        return "0"
    s = parts[0]
    for t in parts[1:]:
        s += " - " + t[1:] if t.startswith("-") else " + " + t
    return s


def lie_closure(
    gens: Sequence[WeylElement],
    max_dim: int = 16,
    labels: Sequence[str] | None = None,
    params: Iterable[str] = (),
) -> Closure:
    """Smallest bracket-closed span containing ``gens``."""
    if not gens:
        raise ValueError("need at least one generator")
    ech = _Echelon()
    basis: list[WeylElement] = []
    names: list[str] = []
    labels = list(labels) if labels is not None else [f"g{k + 1}" for k in range(len(gens))]
    for g, lab in zip(gens, labels):
        if ech.add(g):
            basis.append(g)
            names.append(lab)
    if len(basis) > max_dim:
        raise DimensionExceeded(len(basis), max_dim)
    # bracket every pair once, in order of discovery
    pending = [(a, b) for a in range(len(basis)) for b in range(a + 1, len(basis))]
    while pending:
        a, b = pending.pop(0)
        w = commutator(basis[a], basis[b])
        if ech.add(w):
            basis.append(w)
            names.append(f"[{names[a]},{names[b]}]")
            if len(basis) > max_dim:
                raise DimensionExceeded(len(basis), max_dim)
            new = len(basis) - 1
            pending.extend((k, new) for k in range(new))
    n = len(basis)
    structure = {}
    for a in range(n):
        for b in range(a + 1, n):
            coords = ech.coordinates(commutator(basis[a], basis[b]))
            row = {k: c for k, c in enumerate(coords) if c}
            if row:
                structure[(a, b)] = row
    L = LieAlgebra(n, structure, names, name="closure", params=tuple(params))
    return Closure(L, basis, names)


# -- realizations -------------------------------------------------------------


class RealizationError(ValueError):
    pass


@dataclass
class Realization:
    name: str
    params: tuple
    generators: dict  # label -> WeylElement
    target: LieAlgebra | None = None
    mode: str = "homomorphism"
    real: tuple = ()
    roles: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    compare_to: LieAlgebra | None = None
    assign: dict = field(default_factory=dict)
    source: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, data: Mapping, resolve=None) -> "Realization":
        """``resolve(ref)`` turns an algebra reference into a :class:`LieAlgebra`."""
        params = tuple(data.get("parameters", []))
        real = tuple(data.get("real", []))
        gens = {}
        raw = data.get("generators")
        if not isinstance(raw, Mapping) or not raw:
            raise RealizationError("realization needs a nonempty 'generators' map")
        for label, text in raw.items():
            gens[str(label)] = parse_weyl(str(text), params, real)
        target = resolve(data["target"]) if data.get("target") and resolve else None
        compare = resolve(data["compare_to"]) if data.get("compare_to") and resolve else None
        mode = data.get("mode", "homomorphism")
        if mode not in ("homomorphism", "faithful"):
            raise RealizationError(f"unknown mode {mode!r}")
        return cls(
            name=str(data.get("name", "")),
            params=params,
            generators=gens,
            target=target,
            mode=mode,
            real=real,
            roles=dict(data.get("roles", {})),
            notes=list(data.get("notes", [])),
            compare_to=compare,
            assign={str(k): str(v) for k, v in data.get("assign", {}).items()},
            source=dict(data),
        )

    def role(self, name: str) -> WeylElement:
        """Operator playing ``a``, ``b``, ``adag`` or ``bdag``.

        ``adag`` and ``bdag`` default to the formal adjoints of ``a`` and ``b``.
        """
        if name in self.roles:
            return self.generators[self.roles[name]]
        if name in ("adag", "bdag"):
            return formal_adjoint(self.role(name[0]), self.real)
        if name in self.generators:
            return self.generators[name]
        raise RealizationError(f"realization has no operator for role {name!r}")


@dataclass
class RelationCheck:
    relation: str
    expected: str
    computed: str
    ok: bool


@dataclass
class RealizationReport:
    name: str
    mode: str
    relations: list
    homomorphism_ok: bool
    independent: bool | None
    kernel: list
    ok: bool

    def to_json(self):
        return {
            "name": self.name,
            "mode": self.mode,
            "homomorphism": self.homomorphism_ok,
            "independent": self.independent,
            "kernel_dim": len(self.kernel),
            "kernel": self.kernel,
            "relations": [r.__dict__ for r in self.relations],
            "ok": self.ok,
        }


def verify_realization(r: Realization, mode: str | None = None) -> RealizationReport:
    """Check that ``v_i -> w_i`` respects every bracket of the target."""
    mode = mode or r.mode
    L = r.target
    if L is None:
        raise RealizationError("realization has no target algebra")
    missing = [lab for lab in L.labels if lab not in r.generators]
    if missing:
        raise RealizationError(f"no generator for basis label(s) {', '.join(missing)}")
    extra_params = set(L.params) - set(r.params)
    if extra_params:
        raise RealizationError(f"target uses parameters {sorted(extra_params)} not declared by the realization")
    w = [r.generators[lab] for lab in L.labels]
    n = L.dim
    checks = []
    for a in range(n):
        for b in range(a + 1, n):
            row = L.structure.get((a, b), {})
            lhs = commutator(w[a], w[b])
            rhs = ZERO_W
            for k, c in row.items():
                rhs = rhs + w[k] * c
            checks.append(
                RelationCheck(
                    f"[{L.labels[a]},{L.labels[b]}]",
                    _fmt_combo(row, L.labels),
                    format_weyl(lhs),
                    lhs == rhs,
                )
            )
    hom = all(c.ok for c in checks)
    kernel = []
    independent = None
    if mode == "faithful":
        rel = linear_relations(w)
        independent = not rel
        kernel = [_fmt_combo({k: c for k, c in enumerate(v) if c}, L.labels) for v in rel]
    ok = hom and (independent is not False)
    return RealizationReport(r.name, mode, checks, hom, independent, kernel, ok)


@dataclass
class Hamiltonian:
    H: WeylElement
    adjoint: WeylElement
    self_adjoint: bool


def hamiltonian_build(omega, lam, mu, r: Realization) -> Hamiltonian:
    """``H = omega a1 + lam a2 + mu a3`` over a realization with labels a1..a3."""
    for lab in ("a1", "a2", "a3"):
        if lab not in r.generators:
            raise RealizationError(f"realization lacks generator {lab!r}")
    g = r.generators
    H = g["a1"] * Scalar.of(omega) + g["a2"] * Scalar.of(lam) + g["a3"] * Scalar.of(mu)
    Hd = formal_adjoint(H, r.real)
    return Hamiltonian(H, Hd, H == Hd)
