"""Residuals of the shifted pseudo-boson pair as the truncation grows.

    python3 scripts/fock_convergence.py --alpha 0.2 --beta 0.1 --sizes 32 64 128 256
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from pseudolie.corpus import load_realization
from pseudolie.fock import FockError, fock_check


@dataclass
class ConvergenceConfig:
    realization: str = "ash_real"
    alpha: str = "0.2"
    beta: str = "0.1"
    levels: int = 12
    sizes: list = field(default_factory=lambda: [32, 64, 128, 256])
    tol: float = 1e-8


def sweep(cfg: ConvergenceConfig):
    r = load_realization(cfg.realization)
    assign = {"alpha": cfg.alpha, "beta": cfg.beta}
    out = []
    for N in cfg.sizes:
        K = min(cfg.levels, (N - 1) // 2)
        try:
            rep = fock_check(r, assign, N, K, cfg.tol)
        except FockError as e:
            out.append((N, K, None, str(e)))
            continue
        worst = max(rep.residuals, key=rep.residuals.get)
        out.append((N, K, rep.residuals[worst], worst))
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--realization", default=ConvergenceConfig.realization)
    p.add_argument("--alpha", default=ConvergenceConfig.alpha)
    p.add_argument("--beta", default=ConvergenceConfig.beta)
    p.add_argument("--levels", type=int, default=ConvergenceConfig.levels)
    p.add_argument("--sizes", type=int, nargs="+", default=None)
    p.add_argument("--tol", type=float, default=ConvergenceConfig.tol)
    args = vars(p.parse_args(argv))
    if args["sizes"] is None:
        del args["sizes"]
    cfg = ConvergenceConfig(**args)
    print(f"{'N':>5}{'K':>4}  {'max residual':>13}  worst relation")
    for N, K, val, what in sweep(cfg):
        shown = "error" if val is None else f"{val:.3e}"
        print(f"{N:>5}{K:>4}  {shown:>13}  {what}")


if __name__ == "__main__":
    main()
