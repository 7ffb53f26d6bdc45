"""Certify extremal graphons along a grid, then their perturbations and random graphons."""

import argparse
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from cliquedensity import diagnostics, scallop, stepgraphon


@dataclass
class Config:
    orders: tuple[int, ...] = (3, 4, 5)
    step: Fraction = Fraction(1, 60)
    delta: Fraction = Fraction(1, 100)
    random_instances: int = 200


def run(cfg: Config) -> None:
    for r in cfg.orders:
        passed = perturbed_failed = perturbed = 0
        for alpha in scallop.grid(cfg.step, 1 - cfg.step, cfg.step):
            if scallop.is_cusp(alpha):
                continue
            ext = stepgraphon.construct_extremal(r, alpha)
            passed += diagnostics.certify(ext.base, r).passed
            moved = stepgraphon.move_measure(ext.base, 0, 1, cfg.delta)
            if scallop.h_r(r, alpha) > 0 and not scallop.is_cusp(stepgraphon.edge_density(moved)):
                perturbed += 1
                perturbed_failed += not diagnostics.certify(moved, r).passed
        print(f"r={r}: extremal pass {passed}, perturbed fail {perturbed_failed}/{perturbed}")
        reasons = Counter()
        for seed in range(cfg.random_instances):
            w = stepgraphon.random_step_graphon(seed)
            if scallop.is_cusp(stepgraphon.edge_density(w)):
                continue
            cert = diagnostics.certify(w, r)
            reasons.update(cert.failed_conditions() or ["pass"])
        print(f"      random graphons: {dict(sorted(reasons.items()))}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=list(Config.orders))
    ap.add_argument("--random", type=int, default=Config.random_instances)
    a = ap.parse_args()
    run(Config(orders=tuple(a.orders), random_instances=a.random))
