"""How fast t(K_r, H_{alpha,n}) approaches h_r(alpha), and how local search compares."""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from cliquedensity import graphs, oracle, scallop


@dataclass
class Config:
    alphas: tuple[Fraction, ...] = (Fraction(1, 2), Fraction(3, 5), Fraction(2, 3), Fraction(7, 10), Fraction(4, 5))
    sizes: tuple[int, ...] = (12, 24, 36, 48, 60)
    r: int = 3
    search_n: int = 16
    seed: int = 0


def run(cfg: Config) -> None:
    print("alpha     n   t(K_r,H)-h_r(alpha)   n*gap")
    for alpha in cfg.alphas:
        target = scallop.h_r(cfg.r, alpha)
        for n in cfg.sizes:
            g = graphs.construct_H_alpha_n(alpha, n).graph
            gap = graphs.hom_density(g, cfg.r) - target
            print(f"{str(alpha):>6} {n:>4}   {float(gap):+.6e}         {float(n * gap):+.4f}")
    n = cfg.search_n
    print(f"\nlocal search vs family optimum, n={n}, r={cfg.r}")
    for m in range(graphs.turan_edges(2, n), n * (n - 1) // 2 + 1, 8):
        family, _ = graphs.family_minimum_H(n, m, cfg.r)
        found = oracle.local_search_upper(n, m, cfg.r, seed=cfg.seed).g_min
        flag = "  below family" if found < family else ""
        print(f"m={m:>4}  family={family:>5}  search={found:>5}{flag}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=int, default=Config.r)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(Config.sizes))
    ap.add_argument("--search-n", type=int, default=Config.search_n)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    run(Config(r=a.r, sizes=tuple(a.sizes), search_n=a.search_n, seed=a.seed))
