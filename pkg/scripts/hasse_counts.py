"""Tabulate Hasse diagrams of idempotents over small prime fields.

    python scripts/hasse_counts.py --max-n 3 --primes 2 3 --dot-dir out/

Prints node count, edge count and layer sizes for each (n, p); with
``--dot-dir`` the DOT text of every diagram is written there as well.
"""

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from idemmat.poset import EnumerationConfig, build_hasse
from idemmat.rings import idempotent_count


@dataclass
class HasseSweep:
    max_n: int = 3
    primes: list = field(default_factory=lambda: [2, 3])
    max_nodes: int = 20_000
    threads: int = 1
    dot_dir: Path | None = None


def run(cfg: HasseSweep) -> list[dict]:
    rows = []
    for p in cfg.primes:
        for n in range(1, cfg.max_n + 1):
            expected = sum(idempotent_count(n, r, p) for r in range(n + 1))
            if expected > cfg.max_nodes:
                print(f"n={n} p={p}: {expected} nodes exceeds --max-nodes, skipped")
                continue
            t0 = time.perf_counter()
            H = build_hasse(n, p, EnumerationConfig(threads=cfg.threads))
            dt = time.perf_counter() - t0
            layers = [len(H.layers[r]) for r in sorted(H.layers)]
            rows.append(dict(n=n, p=p, nodes=H.node_count, edges=H.edge_count, layers=layers, seconds=dt))
            print(f"n={n} p={p}: nodes={H.node_count} edges={H.edge_count} layers={layers} ({dt:.2f}s)")
            if cfg.dot_dir is not None:
                cfg.dot_dir.mkdir(parents=True, exist_ok=True)
                (cfg.dot_dir / f"hasse_n{n}_p{p}.dot").write_text(H.to_dot())
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=HasseSweep.max_n)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--max-nodes", type=int, default=HasseSweep.max_nodes)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--dot-dir", type=Path)
    a = ap.parse_args()
    run(HasseSweep(a.max_n, a.primes, a.max_nodes, a.threads, a.dot_dir))


if __name__ == "__main__":
    main()
