"""Compute the dimension of the variety of n x n idempotents for n = 1, 2, ...

    python scripts/dimension_sequence.py --max-n 4 --slices

Each value comes from a reduced Groebner basis in graded lex order, its
leading-term ideal, and a minimum hitting set over the monomial supports.
``--slices`` also reports every trace slice trace(X) = r.
"""

import argparse
import time
from dataclasses import dataclass

from idemmat.errors import BudgetExceeded
from idemmat.groebner import DEFAULT_PAIR_BUDGET, dimension_report


@dataclass
class DimensionSweep:
    max_n: int = 3
    budget: int = DEFAULT_PAIR_BUDGET
    slices: bool = False


def _one(n, budget, slice=None):
    t0 = time.perf_counter()
    try:
        rep = dimension_report(n, budget=budget, slice=slice)
    except BudgetExceeded:
        return None, time.perf_counter() - t0, None
    return rep.dimension, time.perf_counter() - t0, rep


def run(cfg: DimensionSweep) -> dict:
    out = {}
    for n in range(1, cfg.max_n + 1):
        dim, dt, rep = _one(n, cfg.budget)
        if dim is None:
            print(f"n={n}: budget of {cfg.budget} reductions exceeded after {dt:.1f}s")
            break
        bounds = "" if n < 2 else f"  bounds {n - 1} <= {dim} <= {n * n - 2}: {n - 1 <= dim <= n * n - 2}"
        print(f"n={n}: dim={dim}  basis={len(rep.basis.elements)} reductions={rep.basis.pairs_reduced} "
              f"({dt:.2f}s){bounds}")
        out[n] = dim
        if cfg.slices:
            for r in range(n + 1):
                d, dt, _ = _one(n, cfg.budget, slice=r)
                shown = "budget exceeded" if d is None else str(d)
                print(f"    trace={r}: dim={shown} ({dt:.2f}s)")
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=DimensionSweep.max_n)
    ap.add_argument("--budget", type=int, default=DEFAULT_PAIR_BUDGET)
    ap.add_argument("--slices", action="store_true")
    a = ap.parse_args()
    run(DimensionSweep(a.max_n, a.budget, a.slices))


if __name__ == "__main__":
    main()
