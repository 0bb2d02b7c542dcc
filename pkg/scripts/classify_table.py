"""Print the nilpotent classification table for dimensions 1..max_dim.

    python3 scripts/classify_table.py --max-dim 5 --json table.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from pseudolie.classify import classify_nilpotent
from pseudolie.lie.isomorphism import DEFAULT_BUDGET
from pseudolie.lie.structure import center, classify_structure, derived_algebra


@dataclass
class TableConfig:
    max_dim: int = 4
    budget: int = DEFAULT_BUDGET
    json_out: str | None = None


def build_table(cfg: TableConfig) -> list[dict]:
    rows = []
    for n in range(1, cfg.max_dim + 1):
        t = time.perf_counter()
        c = classify_nilpotent(n, budget=cfg.budget)
        dt = time.perf_counter() - t
        for e in c.entries:
            L = e.algebra
            r = classify_structure(L)
            rows.append(
                {
                    "dim": n,
                    "name": L.name,
                    "class": r.nilpotency_class,
                    "center": center(L).dim,
                    "derived": derived_algebra(L).dim,
                    "construction": e.provenance["construction"],
                    "base": e.provenance["base"],
                    "authoritative": c.authoritative,
                }
            )
        print(f"# dim {n}: {len(c.entries)} classes in {dt:.2f} s, {c.stats['candidates']} candidates")
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-dim", type=int, default=TableConfig.max_dim)
    p.add_argument("--budget", type=int, default=TableConfig.budget)
    p.add_argument("--json", dest="json_out", default=None)
    cfg = TableConfig(**vars(p.parse_args(argv)))
    rows = build_table(cfg)
    print(f"{'name':<8}{'class':>6}{'center':>8}{'derived':>9}  from")
    for r in rows:
        print(f"{r['name']:<8}{r['class']:>6}{r['center']:>8}{r['derived']:>9}  {r['construction']}({r['base']})")
    if cfg.json_out:
        with open(cfg.json_out, "w") as f:
            json.dump({"config": asdict(cfg), "rows": rows}, f, indent=2)


if __name__ == "__main__":
    main()
