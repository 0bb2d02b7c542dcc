"""Verify every bundled realization and report the Lie closure of its generators."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from pseudolie.corpus import bundled_realizations, load_realization
from pseudolie.lie.isomorphism import Yes, isomorphic
from pseudolie.lie.structure import classify_structure
from pseudolie.weyl import format_weyl, lie_closure, verify_realization


@dataclass
class RealizationConfig:
    max_dim: int = 16
    faithful: bool = False


def report(name: str, cfg: RealizationConfig):
    r = load_realization(name)
    rep = verify_realization(r, "faithful" if cfg.faithful else None)
    print(f"== {name}: homomorphism {'ok' if rep.homomorphism_ok else 'FAILS'}", end="")
    if rep.independent is not None:
        print(f", {'faithful' if rep.independent else 'kernel ' + '; '.join(rep.kernel)}", end="")
    print()
    for c in rep.relations:
        print(f"   {c.relation} = {c.computed}   (target {c.expected})")
    if r.params:
        return  # parametric closures are not compared
    labels = list(r.generators)
    cl = lie_closure([r.generators[k] for k in labels], cfg.max_dim, labels)
    s = classify_structure(cl.algebra)
    print(f"   closure dim {cl.algebra.dim}, nilpotent {s.nilpotent}, solvable {s.solvable}, perfect {s.perfect}")
    for lab, w in zip(cl.labels, cl.basis):
        print(f"     {lab} = {format_weyl(w)}")
    for k, v in cl.brackets().items():
        print(f"     {k} = {v}")
    for other in (r.target, r.compare_to):
        if other is not None:
            print(f"   closure ~ {other.name}: {isinstance(isomorphic(cl.algebra, other), Yes)}")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-dim", type=int, default=RealizationConfig.max_dim)
    p.add_argument("--faithful", action="store_true")
    cfg = RealizationConfig(**vars(p.parse_args(argv)))
    for name in bundled_realizations():
        report(name, cfg)


if __name__ == "__main__":
    main()
