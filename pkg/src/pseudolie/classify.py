"""Nilpotent Lie algebras of small dimension by iterated central extension.

Every nilpotent algebra of dimension ``n`` is either ``g' (+) i`` for some
``g'`` of dimension ``n - 1``, or a central extension ``l_theta`` of a
smaller nilpotent ``g`` with

* the components of ``theta`` independent modulo coboundaries,
* ``rad(theta)`` meeting ``Z(g)`` trivially,

in which case ``Z(l_theta) = V``.  Cocycles are drawn from echelon patterns
over representatives of ``M(g)`` with entries in ``{0, +-1, +-i}``, and the
candidates are deduplicated by isomorphism testing rather than by computing
automorphism orbits.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field

from . import linalg as la
from .cohomology import Cocycle, central_extension, cocycle_radical, schur_multiplier
from .lie.algebra import LieAlgebra, abelian
from .lie.isomorphism import DEFAULT_BUDGET, No, Yes, cheap_fingerprint, fingerprint, isomorphic
from .lie.structure import center, direct_sum
from .outcome import Unknown
from .scalars import ONE, ZERO, I

log = logging.getLogger(__name__)

PATTERN_ENTRIES = (ZERO, ONE, -ONE, I, -I)
AUTHORITATIVE_MAX = 4
DEFAULT_MAX_DIM = 5


@dataclass
class Entry:
    algebra: LieAlgebra
    provenance: dict

    def to_json(self):
        out = self.algebra.to_json()
        out["provenance"] = self.provenance
        return out


@dataclass
class Classification:
    dim: int
    entries: list
    authoritative: bool
    notes: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def algebras(self) -> list[LieAlgebra]:
        return [e.algebra for e in self.entries]

    def to_json(self):
        return {
            "dim": self.dim,
            "count": len(self.entries),
            "authoritative": self.authoritative,
            "notes": self.notes,
            "stats": self.stats,
            "algebras": [e.to_json() for e in self.entries],
        }


class BudgetExceeded(RuntimeError):
    pass


def echelon_patterns(d: int, p: int, entries=PATTERN_ENTRIES):
    """All ``d x p`` reduced echelon matrices of rank ``d`` over ``entries``."""
    for pivots in itertools.combinations(range(p), d):
        pivset = set(pivots)
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, p) if c not in pivset]
        for values in itertools.product(entries, repeat=len(free)):
            M = [[ZERO] * p for _ in range(d)]
            for r, pc in enumerate(pivots):
                M[r][pc] = ONE
            for (r, c), v in zip(free, values):
                M[r][c] = v
            yield M


def _serialized(L: LieAlgebra) -> str:
    return json.dumps(L.to_json()["brackets"], sort_keys=True)


class _Driver:
    def __init__(self, budget: int):
        self.budget = budget
        self.memo: dict[int, list[Entry]] = {}
        self.candidates = 0
        self.unknown_comparisons = 0
        self.truncated = False

    def classes(self, n: int) -> list[Entry]:
        if n in self.memo:
            return self.memo[n]
        if n == 1:
            out = [Entry(abelian(1, name="L1_1"), {"construction": "seed", "base": None})]
            self.memo[1] = out
            return out
        found: list[Entry] = []
        seen: set = set()
        for e in self.classes(n - 1):
            L = direct_sum(e.algebra, abelian(1), name="")
            self._offer(found, seen, L, {"construction": "direct_sum", "base": e.algebra.name, "summand": "abelian_1"})
        for m in range(1, n):
            d = n - m
            for e in self.classes(m):
                self._extensions(found, seen, e.algebra, d)
        order = sorted(range(len(found)), key=lambda k: (fingerprint(found[k].algebra), _serialized(found[k].algebra)))
        names = {k: f"L{n}_{rank}" for rank, k in enumerate(order, 1)}
        out = []
        for k in order:
            e = found[k]
            prov = dict(e.provenance)
            # only comparisons against surviving classes are recorded; cheap
            # fingerprint mismatches are implicit
            prov["dedup"] = [dict(c, against=names[c["against"]]) for c in prov.get("dedup", [])]
            out.append(Entry(e.algebra.relabel(name=names[k]), prov))
        self.memo[n] = out
        return out

    def _extensions(self, found, seen, g: LieAlgebra, d: int):
        M = schur_multiplier(g)
        p = M.dim
        if p < d:
            return
        Zg = center(g)
        npairs = len(M.representatives[0])
        for pattern in echelon_patterns(d, p):
            self.candidates += 1
            if self.candidates > self.budget:
                self.truncated = True
                raise BudgetExceeded
            forms = [
                la.lincomb(row, M.representatives, npairs) for row in pattern
            ]
            theta = Cocycle.from_forms(g, forms)
            if cocycle_radical(theta).intersect(Zg).dim:
                continue
            ext = central_extension(g, theta, name="")
            if not ext.center_is_v:
                continue
            prov = {
                "construction": "central_extension",
                "base": g.name,
                "center_dim": d,
                "theta": theta.to_json()["components"],
            }
            self._offer(found, seen, ext.algebra, prov)

    def _offer(self, found, seen, L: LieAlgebra, prov: dict):
        if L in seen:
            return
        seen.add(L)
        fp = cheap_fingerprint(L)
        comparisons = []
        for k, other in enumerate(found):
            if cheap_fingerprint(other.algebra) != fp:
                continue
            r = isomorphic(L, other.algebra, self.budget)
            if isinstance(r, Yes):
                return
            if isinstance(r, Unknown):
                self.unknown_comparisons += 1
                comparisons.append({"against": k, "result": "unknown", "reason": r.reason})
            elif isinstance(r, No):
                comparisons.append({"against": k, "result": "no", "invariant": r.invariant})
        prov = dict(prov)
        prov["dedup"] = comparisons
        found.append(Entry(L, prov))


def classify_nilpotent(n: int, budget: int | None = None, max_dim: int = DEFAULT_MAX_DIM) -> Classification:
    if not 1 <= n <= max_dim:
        raise ValueError(f"dimension must be in 1..{max_dim}")
    budget = DEFAULT_BUDGET if budget is None else budget
    drv = _Driver(budget)
    notes = []
    try:
        entries = drv.classes(n)
    except BudgetExceeded:
        entries = []
        notes.append(f"candidate budget {budget} exceeded; classification incomplete")
    authoritative = n <= AUTHORITATIVE_MAX and not drv.truncated and drv.unknown_comparisons == 0
    if n > AUTHORITATIVE_MAX:
        notes.append(f"non-authoritative: counts above dimension {AUTHORITATIVE_MAX} are reported, not asserted")
    if drv.unknown_comparisons:
        notes.append(f"{drv.unknown_comparisons} isomorphism comparisons were undecided")
    stats = {
        "candidates": drv.candidates,
        "budget": budget,
        "truncated": drv.truncated,
        "unknown_comparisons": drv.unknown_comparisons,
    }
    return Classification(n, entries, authoritative, notes, stats)
