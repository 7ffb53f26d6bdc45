"""Write h_r and h_r' along an alpha grid, one CSV per r."""

import argparse
import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from cliquedensity import scallop
from cliquedensity.surd import format_decimal, format_exact


@dataclass
class Config:
    orders: tuple[int, ...] = (3, 4, 5, 6)
    step: Fraction = Fraction(1, 240)
    stop: Fraction = Fraction(239, 240)
    out_dir: Path = Path("results/scallops")


def run(cfg: Config) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    alphas = scallop.grid(0, cfg.stop, cfg.step)
    for r in cfg.orders:
        path = cfg.out_dir / f"h{r}.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\r\n")
            writer.writerow(["alpha", "k", "cusp", "h", "h_prime_left", "h_prime_right", "h_exact"])
            for alpha in alphas:
                pt = scallop.scallop_point(alpha, (r,))
                left = format_decimal(pt.h_prime_left[r]) if alpha > 0 else ""
                right = format_decimal(pt.h_prime[r]) if alpha > 0 else ""
                h = pt.h[r]
                writer.writerow([str(alpha), pt.k, int(scallop.is_cusp(alpha)), format_decimal(h), left, right, format_exact(h)])
        print(f"r={r}: {len(alphas)} points -> {path}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=list(Config.orders))
    ap.add_argument("--step", type=Fraction, default=Config.step)
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    a = ap.parse_args()
    run(Config(tuple(a.orders), a.step, 1 - a.step, a.out_dir))
