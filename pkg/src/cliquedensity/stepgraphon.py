"""Step graphons with exact part measures.

A step graphon has finitely many parts with positive measures summing to 1 and
a symmetric matrix of rational values in [0, 1].  Measures may be surds so the
extremal constructions hold with exact equality.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import Graph, elementary_symmetric
from .scallop import c_of_alpha, k_of_alpha
from .surd import Number, as_number, format_exact, parse_number, parse_rational

TERM_BUDGET = 10**7


@dataclass(frozen=True)
class StepGraphon:
    measures: tuple
    values: tuple

    def __post_init__(self):
        measures = tuple(as_number(mu) for mu in self.measures)
        values = tuple(tuple(Fraction(x) for x in row) for row in self.values)
        object.__setattr__(self, "measures", measures)
        object.__setattr__(self, "values", values)
        p = len(measures)
        if p == 0:
            raise ValueError("a step graphon needs at least one part")
        if any(mu <= 0 for mu in measures):
            raise ValueError("part measures must be positive")
        if sum(measures, Fraction(0)) != 1:
            raise ValueError("part measures must sum to 1")
        if len(values) != p or any(len(row) != p for row in values):
            raise ValueError("value matrix must be square with one row per part")
        for i in range(p):
            for j in range(p):
                if values[i][j] != values[j][i]:
                    raise ValueError("value matrix must be symmetric")
                if not 0 <= values[i][j] <= 1:
                    raise ValueError("values must lie in [0, 1]")

    @property
    def parts(self) -> int:
        return len(self.measures)

    def to_json(self) -> str:
        return json.dumps(
            {
                "parts": [{"measure": format_exact(mu)} for mu in self.measures],
                "values": [[str(x) for x in row] for row in self.values],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "StepGraphon":
        data = json.loads(text)
        measures = [parse_number(part["measure"]) for part in data["parts"]]
        values = [[parse_rational(x) for x in row] for row in data["values"]]
        return cls(tuple(measures), tuple(map(tuple, values)))


@dataclass(frozen=True)
class RootedDensityRequest:
    """t_x(K_order, W) for one root, t_{x,y}(K_order, W) for two.

    With ``minus=True`` and two roots the root edge is removed, giving K_r^-.
    """

    order: int
    roots: tuple[int, ...]
    minus: bool = False

    def __post_init__(self):
        if len(self.roots) not in (1, 2):
            raise ValueError("one or two roots are supported")
        if self.order < len(self.roots):
            raise ValueError("the clique must contain its roots")
        if self.minus and len(self.roots) != 2:
            raise ValueError("K_r^- is rooted at two vertices")


@dataclass(frozen=True)
class ExtremalGraphon:
    base: StepGraphon
    r: int
    alpha: Number
    k: int
    c: Number
    inner_split: tuple  # measures of the two sub-parts of the last block
    block: tuple[int, ...]  # part indices forming the last block

    @property
    def scaffold(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.base.parts) if i not in self.block)


def from_graph(g: Graph) -> StepGraphon:
    if g.n == 0:
        raise ValueError("the null graph has no graphon")
    mu = Fraction(1, g.n)
    values = tuple(tuple(Fraction(int(g.adjacent(u, v))) for v in range(g.n)) for u in range(g.n))
    return StepGraphon((mu,) * g.n, values)


def constant(p) -> StepGraphon:
    return StepGraphon((Fraction(1),), ((Fraction(p),),))


def complete_partite(measures: Sequence) -> StepGraphon:
    p = len(measures)
    values = tuple(tuple(Fraction(int(i != j)) for j in range(p)) for i in range(p))
    return StepGraphon(tuple(measures), values)


def _is_complete_partite(values: tuple) -> bool:
    return all(x == (i != j) for i, row in enumerate(values) for j, x in enumerate(row))


def _weighted_cliques(values: tuple, weights: Sequence, order: int) -> Number:
    """Sum over order-tuples of parts of prod(values over pairs) * prod(weights).

    Complete partite 0/1 matrices reduce to an elementary symmetric
    polynomial of the weights.  Otherwise tuples are enumerated as multisets
    with multinomial multiplicities, and any partial product that vanishes
    prunes its whole subtree.  Parts with equal value rows are merged first:
    equal rows force a constant block between them, so one part carrying the
    summed weight gives the same sum.
    """
    if order == 0:
        return Fraction(1)
    if _is_complete_partite(values):
        # every surviving tuple uses order distinct parts
        return math.factorial(order) * elementary_symmetric(weights, order)
    merged: dict[tuple, int] = {}
    pooled = list(weights)
    for i, w in enumerate(weights):
        if w == 0:
            continue
        rep = merged.setdefault(values[i], i)
        if rep != i:
            pooled[rep] = pooled[rep] + w
            pooled[i] = Fraction(0)
    weights = pooled
    live = [i for i, w in enumerate(weights) if w != 0]
    if math.comb(len(live) + order - 1, order) > TERM_BUDGET:
        raise ValueError("term budget exceeded for the clique sum")
    total = [Fraction(0)]
    fact = math.factorial(order)

    def rec(start: int, chosen: list, prod: Number, counts: list) -> None:
        if len(chosen) == order:
            mult = fact
            for c in counts:
                mult //= math.factorial(c)
            total[0] = total[0] + mult * prod
            return
        for pos in range(start, len(live)):
            i = live[pos]
            factor = weights[i]
            for j in chosen:
                factor = factor * values[i][j]
                if factor == 0:
                    break
            if factor == 0:
                continue
            if chosen and chosen[-1] == i:
                counts[-1] += 1
                rec(pos, chosen + [i], prod * factor, counts)
                counts[-1] -= 1
            else:
                counts.append(1)
                rec(pos, chosen + [i], prod * factor, counts)
                counts.pop()

    rec(0, [], Fraction(1), [])
    return total[0]


def clique_density(w: StepGraphon, r: int) -> Number:
    """t(K_r, W)."""
    if r < 1:
        raise ValueError("r must be positive")
    return _weighted_cliques(w.values, w.measures, r)


def edge_density(w: StepGraphon) -> Number:
    return clique_density(w, 2)


def _check_part(w: StepGraphon, part: int) -> None:
    if not 0 <= part < w.parts:
        raise IndexError(f"part {part} out of range")


def degree(w: StepGraphon, part: int) -> Number:
    _check_part(w, part)
    return sum((w.values[part][j] * mu for j, mu in enumerate(w.measures)), Fraction(0))


def rooted_density(w: StepGraphon, req: RootedDensityRequest) -> Number:
    for root in req.roots:
        _check_part(w, root)
    weights = list(w.measures)
    for root in req.roots:
        weights = [wt * w.values[root][j] for j, wt in enumerate(weights)]
    free = _weighted_cliques(w.values, weights, req.order - len(req.roots))
    if len(req.roots) == 2 and not req.minus:
        a, b = req.roots
        free = w.values[a][b] * free
    return free


def neighbourhood(w: StepGraphon, part: int) -> StepGraphon:
    """Measure reweighted by W(x, .)/d_W(x); zero-measure parts are dropped."""
    d = degree(w, part)
    if d == 0:
        raise ValueError(f"part {part} has zero degree")
    keep = [j for j in range(w.parts) if w.values[part][j] != 0]
    measures = tuple(w.values[part][j] * w.measures[j] / d for j in keep)
    values = tuple(tuple(w.values[i][j] for j in keep) for i in keep)
    return StepGraphon(measures, values)


def induced(w: StepGraphon, parts: Sequence[int]) -> StepGraphon:
    parts = sorted(set(parts))
    if not parts:
        raise ValueError("empty selection")
    for p in parts:
        _check_part(w, p)
    total = sum((w.measures[p] for p in parts), Fraction(0))
    measures = tuple(w.measures[p] / total for p in parts)
    values = tuple(tuple(w.values[i][j] for j in parts) for i in parts)
    return StepGraphon(measures, values)


def construct_extremal(r: int, alpha) -> ExtremalGraphon:
    """Complete partite graphon with k - 1 parts of measure c and a last block
    of measure b = 1 - (k-1)c split completely into c and b - c."""
    if r < 3:
        raise ValueError("r must be at least 3")
    alpha = as_number(alpha)
    if alpha == 1:
        return ExtremalGraphon(constant(1), r, alpha, 1, Fraction(1), (Fraction(1),), (0,))
    k = k_of_alpha(alpha)
    c = c_of_alpha(alpha)
    rest = 1 - k * c
    split = (c, rest) if rest != 0 else (c,)
    base = complete_partite((c,) * (k - 1) + split)
    block = tuple(range(k - 1, base.parts))
    return ExtremalGraphon(base, r, alpha, k, c, split, block)


def move_measure(w: StepGraphon, source: int, target: int, delta) -> StepGraphon:
    """Shift delta of measure from one part to another, keeping the values."""
    delta = as_number(delta)
    measures = list(w.measures)
    measures[source] -= delta
    measures[target] += delta
    return StepGraphon(tuple(measures), w.values)


def random_step_graphon(seed: int, max_parts: int = 6, denominator: int = 12) -> StepGraphon:
    """Seeded random rational step graphon with at most max_parts parts."""
    rng = random.Random(seed)
    p = rng.randint(1, max_parts)
    raw = [rng.randint(1, denominator) for _ in range(p)]
    measures = tuple(Fraction(x, sum(raw)) for x in raw)
    while True:  # edge density 1 has no scallop, so the all-ones matrix is redrawn
        values = [[Fraction(0)] * p for _ in range(p)]
        for i in range(p):
            for j in range(i, p):
                values[i][j] = values[j][i] = Fraction(rng.randint(0, denominator), denominator)
        if any(x != 1 for row in values for x in row):
            break
    return StepGraphon(measures, tuple(map(tuple, values)))
