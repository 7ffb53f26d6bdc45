"""Necessary conditions for K_r-extremality of a step graphon, decided exactly.

With alpha the edge density, k = k(alpha) and c = c(alpha), every part x of
an extremal graphon at a non-cusp density satisfies

* f_r(x) = 0, where f_t = q_t - t_x(K_t, W);
* no pair with W > 0 has t_{x,y}(K_r^-, W) above (k-1)^{(r-2)} c^{r-2};
* d_W(x) <= k c;
* the neighbourhood graphon of a K_3-heavy part (f_3 < 0) obeys the lower
  bound t(K_{r-1}, N) >= h_{r-1}(t(K_2, N)).

The conditions are necessary only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .scallop import c_of_alpha, falling, h_r, is_cusp, k_of_alpha, p_rt
from .stepgraphon import (
    RootedDensityRequest,
    StepGraphon,
    clique_density,
    degree,
    edge_density,
    neighbourhood,
    rooted_density,
)
from .surd import Number, format_decimal, format_exact, sign


def _shadow(x: Number) -> dict:
    return {"exact": format_exact(x), "decimal": format_decimal(x)}


def _params(w: StepGraphon) -> tuple[Number, int, Number]:
    alpha = edge_density(w)
    if alpha == 1:
        raise ValueError("edge density 1 has no scallop parameters")
    return alpha, k_of_alpha(alpha), c_of_alpha(alpha)


def q_value(t: int, d: Number, k: int, c: Number) -> Number:
    return (t - 1) * (d - (k - 1) * c) * falling(k - 1, t - 2) * c ** (t - 2) + falling(k - 1, t - 1) * c ** (t - 1)


def q_f_values(w: StepGraphon, r: int, t: int) -> list[tuple[Number, Number]]:
    """Per part (q_t, f_t) with k and c taken from w's own edge density."""
    if t < 2:
        raise ValueError("t must be at least 2")
    _, k, c = _params(w)
    out = []
    for part in range(w.parts):
        q = q_value(t, degree(w, part), k, c)
        out.append((q, q - rooted_density(w, RootedDensityRequest(t, (part,)))))
    return out


def f_integral(w: StepGraphon, t: int) -> Number:
    """Sum of f_t times measure; equals h_t(alpha) - t(K_t, W)."""
    return sum((f * mu for (_, f), mu in zip(q_f_values(w, t, t), w.measures)), Fraction(0))


@dataclass(frozen=True)
class NeighbourhoodReport:
    part: int
    degree: Number
    tau: Number
    rho: Number
    rho_bound_ok: bool
    edge_density: Number  # t(K_2, N_W(x))
    clique_density: Number  # t(K_{r-1}, N_W(x))
    lower_bound: Number  # h_{r-1} of the neighbourhood edge density
    p_rho: Number  # p_{r-1,k-1}(rho)
    contradiction: bool

    def as_dict(self) -> dict:
        out = {"part": self.part, "rho_bound_ok": self.rho_bound_ok, "contradiction": self.contradiction}
        for name in ("degree", "tau", "rho", "edge_density", "clique_density", "lower_bound", "p_rho"):
            out[name] = _shadow(getattr(self, name))
        return out


def neighbourhood_report(w: StepGraphon, r: int, part: int) -> NeighbourhoodReport:
    """tau = c/d, rho = 2(k-1)tau - k(k-1)tau^2 and the densities of N_W(x).

    ``contradiction`` marks the pattern f_3 < 0, f_r = 0, t(K_2, N) > rho and
    t(K_{r-1}, N) = p_{r-1,k-1}(rho), which an extremal graphon cannot show.
    """
    if r < 3:
        raise ValueError("r must be at least 3")
    _, k, c = _params(w)
    d = degree(w, part)
    if d == 0:
        raise ValueError(f"part {part} has zero degree")
    tau = c / d
    rho = 2 * (k - 1) * tau - k * (k - 1) * tau**2
    nbhd = neighbourhood(w, part)
    t2 = edge_density(nbhd)
    tr = clique_density(nbhd, r - 1)
    p_rho = p_rt(r - 1, k - 1, rho) if k > 1 else Fraction(0)
    f3 = q_value(3, d, k, c) - rooted_density(w, RootedDensityRequest(3, (part,)))
    fr = q_value(r, d, k, c) - rooted_density(w, RootedDensityRequest(r, (part,)))
    flagged = f3 < 0 and fr == 0 and t2 > rho and tr == p_rho
    return NeighbourhoodReport(part, d, tau, rho, rho <= 1 - Fraction(1, k), t2, tr, h_r(r - 1, t2), p_rho, flagged)


@dataclass(frozen=True)
class PartRecord:
    part: int
    measure: Number
    degree: Number
    f_r: Number
    f_3: Number
    degree_excess: Number

    def as_dict(self) -> dict:
        out = {"part": self.part}
        for name in ("measure", "degree", "f_r", "f_3", "degree_excess"):
            out[name] = _shadow(getattr(self, name))
        return out


@dataclass(frozen=True)
class Violation:
    condition: str  # "f_r", "heavy_pair", "degree_cap", "neighbourhood"
    where: tuple[int, ...]
    margin: Number  # positive amount by which the condition fails

    def as_dict(self) -> dict:
        return {"condition": self.condition, "where": list(self.where), "margin": _shadow(self.margin)}


@dataclass(frozen=True)
class Certificate:
    r: int
    alpha: Number
    k: int
    c: Number
    per_part: tuple[PartRecord, ...]
    heavy_pairs: tuple[tuple[int, int, Number], ...]
    neighbourhood_checks: tuple[NeighbourhoodReport, ...]
    violations: tuple[Violation, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def failed_conditions(self) -> list[str]:
        return sorted({v.condition for v in self.violations})

    def to_json(self) -> str:
        data = {
            "r": self.r,
            "alpha": _shadow(self.alpha),
            "k": self.k,
            "c": _shadow(self.c),
            "verdict": self.verdict,
            "failed_conditions": self.failed_conditions(),
            "per_part": [p.as_dict() for p in self.per_part],
            "heavy_pairs": [{"pair": [a, b], "margin": _shadow(m)} for a, b, m in self.heavy_pairs],
            "neighbourhood_checks": [n.as_dict() for n in self.neighbourhood_checks],
            "violations": [v.as_dict() for v in self.violations],
        }
        return json.dumps(data, indent=2)


def certify(w: StepGraphon, r: int) -> Certificate:
    if r < 3:
        raise ValueError("r must be at least 3")
    alpha, k, c = _params(w)
    if is_cusp(alpha):
        raise ValueError(f"edge density {alpha} is a cusp 1 - 1/{k}; use is_turan_graphon")
    violations: list[Violation] = []
    parts = []
    for part in range(w.parts):
        d = degree(w, part)
        f_r = q_value(r, d, k, c) - rooted_density(w, RootedDensityRequest(r, (part,)))
        f_3 = q_value(3, d, k, c) - rooted_density(w, RootedDensityRequest(3, (part,)))
        excess = d - k * c
        parts.append(PartRecord(part, w.measures[part], d, f_r, f_3, excess))
        if f_r != 0:
            violations.append(Violation("f_r", (part,), abs(f_r)))
        if excess > 0:
            violations.append(Violation("degree_cap", (part,), excess))

    threshold = falling(k - 1, r - 2) * c ** (r - 2)
    heavy = []
    for a in range(w.parts):
        for b in range(a, w.parts):
            if w.values[a][b] == 0:
                continue
            margin = rooted_density(w, RootedDensityRequest(r, (a, b), minus=True)) - threshold
            if sign(margin) > 0:
                heavy.append((a, b, margin))
                violations.append(Violation("heavy_pair", (a, b), margin))

    checks = []
    for rec in parts:
        if rec.f_3 < 0 and rec.degree > 0:
            report = neighbourhood_report(w, r, rec.part)
            checks.append(report)
            gap = report.lower_bound - report.clique_density
            if gap > 0:
                violations.append(Violation("neighbourhood", (rec.part,), gap))
    return Certificate(r, alpha, k, c, tuple(parts), tuple(heavy), tuple(checks), tuple(violations))


def is_turan_graphon(w: StepGraphon) -> int | None:
    """t if w is weakly isomorphic to the complete balanced t-partite graphon.

    Parts with identical value rows are merged first; the result must then
    have t classes of measure 1/t, zero inside each class and one across.
    """
    classes: dict[tuple, list[int]] = {}
    for i, row in enumerate(w.values):
        classes.setdefault(row, []).append(i)
    groups = list(classes.values())
    t = len(groups)
    for gi, group in enumerate(groups):
        if sum((w.measures[i] for i in group), Fraction(0)) != Fraction(1, t):
            return None
        for gj, other in enumerate(groups):
            want = 0 if gi == gj else 1
            if w.values[group[0]][other[0]] != want:
                return None
    return t
