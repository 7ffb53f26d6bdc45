"""Brute-force minimum clique counts G_r(n, m) and their comparison with the
family optimum H_r(n, m) and the limit bound h_r.

Exact values come from exhaustive search over isomorphism classes (or over
labelled edge sets as a cross-check); beyond the exhaustive range a seeded
edge-move descent gives upper bounds.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .enumeration import canonical_form, labeled_graphs, nonisomorphic_graphs
from .graphs import Graph, count_cliques, count_cliques_within, family_minimum_H, to_graph6, turan_edges
from .scallop import h_r
from .surd import Number, format_decimal

CACHE_ENV = "CLIQUEDENSITY_CACHE_DIR"
CACHE_NAME = "oracle-cache.jsonl"
EXACT_LIMIT = 8
METHODS = ("canonical", "labeled-exhaustive", "local-search-upper-bound")


@dataclass(frozen=True)
class OracleRecord:
    n: int
    m: int
    r: int
    g_min: int
    h_min: int | None
    witness_g: str
    witness_h: str | None
    method: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OracleRecord":
        return cls(**json.loads(text))


@lru_cache(maxsize=None)
def _class_counts(n: int, r: int) -> dict[int, tuple[int, str]]:
    """For each m, the minimum K_r count over classes and the least optimal graph6."""
    best: dict[int, tuple[int, str]] = {}
    for g in nonisomorphic_graphs(n):
        count = count_cliques(g, r)
        code = to_graph6(g)
        cur = best.get(g.m)
        if cur is None or (count, code) < cur:
            best[g.m] = (count, code)
    return best


def _labeled_min(n: int, m: int, r: int) -> tuple[int, str]:
    best = None
    optimal = []
    for g in labeled_graphs(n, m):
        count = count_cliques_within(g.rows, (1 << n) - 1, r)
        if best is None or count < best:
            best, optimal = count, [g]
        elif count == best:
            optimal.append(g)
    codes = {to_graph6(canonical_form(g)) for g in optimal}
    return best, min(codes)


def _family(n: int, m: int, r: int) -> tuple[int | None, str | None]:
    if n > 40:
        return None, None
    count, member = family_minimum_H(n, m, r)
    return count, to_graph6(member.graph)


def exact_min(n: int, m: int, r: int, method: str = "canonical") -> OracleRecord:
    """Exact G_r(n, m) with the lexicographically least optimal graph6 witness.

    Witnesses are canonical forms, so both methods report the same witness.
    """
    if not 0 <= n <= EXACT_LIMIT:
        raise ValueError(f"exact search is limited to n <= {EXACT_LIMIT}")
    if not 0 <= m <= math.comb(n, 2):
        raise ValueError("need 0 <= m <= C(n, 2)")
    if method == "canonical":
        g_min, witness = _class_counts(n, r)[m]
    elif method == "labeled-exhaustive":
        if n > 7:
            raise ValueError("labelled search is limited to n <= 7")
        g_min, witness = _labeled_min(n, m, r)
    else:
        raise ValueError(f"unknown exact method {method!r}")
    h_min, witness_h = _family(n, m, r)
    return OracleRecord(n, m, r, g_min, h_min, witness, witness_h, method)


def asymptotic_gap(n: int, m: int, r: int, g_min: int | None = None) -> Number:
    """r! g / n^r - h_r(2m / n^2), exact."""
    if g_min is None:
        g_min = exact_min(n, m, r).g_min
    return Fraction(math.factorial(r) * g_min, n**r) - h_r(r, Fraction(2 * m, n * n))


def erdos_bound_check(n: int, r: int = 3) -> bool:
    """G_3(n, t_2(n) + q) >= q floor(n/2) for 1 <= q < floor(n/2)."""
    if r != 3:
        raise ValueError("the bound concerns triangles only")
    half = n // 2
    for q in range(1, half):
        m = turan_edges(2, n) + q
        if m > math.comb(n, 2):
            break
        if exact_min(n, m, 3).g_min < q * half:
            return False
    return True


def local_search_upper(
    n: int,
    m: int,
    r: int,
    seed: int = 0,
    restarts: int = 4,
    patience: int = 2000,
    start: Graph | None = None,
) -> OracleRecord:
    """Seeded descent moving one edge at a time while the K_r count drops.

    The first restart begins from ``start`` when given, the others from random
    m-edge graphs.  Only strictly improving moves are taken, so the result
    never exceeds the starting count.
    """
    if n > 64:
        raise ValueError("local search is limited to n <= 64")
    if not 0 <= m <= math.comb(n, 2):
        raise ValueError("need 0 <= m <= C(n, 2)")
    if start is not None and (start.n != n or start.m != m):
        raise ValueError("start graph must have n vertices and m edges")
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    best = None
    for attempt in range(restarts):
        if attempt == 0 and start is not None:
            rows = list(start.rows)
        else:
            rows = [0] * n
            for u, v in rng.sample(pairs, m):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        count = count_cliques_within(rows, (1 << n) - 1, r)
        edges = [(u, v) for u, v in pairs if rows[u] >> v & 1]
        non_edges = [(u, v) for u, v in pairs if not rows[u] >> v & 1]
        stale = 0
        while count and edges and non_edges and stale < patience:
            i = rng.randrange(len(edges))
            j = rng.randrange(len(non_edges))
            (a, b), (x, y) = edges[i], non_edges[j]
            lost = count_cliques_within(rows, rows[a] & rows[b], r - 2)
            rows[a] ^= 1 << b
            rows[b] ^= 1 << a
            gained = count_cliques_within(rows, rows[x] & rows[y], r - 2)
            if gained < lost:
                rows[x] |= 1 << y
                rows[y] |= 1 << x
                edges[i], non_edges[j] = (x, y), (a, b)
                count += gained - lost
                stale = 0
            else:
                rows[a] ^= 1 << b
                rows[b] ^= 1 << a
                stale += 1
        g = Graph(n, tuple(rows))
        key = (count, to_graph6(g))
        if best is None or key < best:
            best = key
    h_min, witness_h = _family(n, m, r)
    return OracleRecord(n, m, r, best[0], h_min, best[1], witness_h, "local-search-upper-bound")


# -- tables and cache -----------------------------------------------------------


def cache_path(path: str | os.PathLike | None = None) -> Path:
    if path is not None:
        return Path(path)
    return Path(os.environ.get(CACHE_ENV, ".")) / CACHE_NAME


def load_cache(path: str | os.PathLike | None = None) -> dict[tuple, OracleRecord]:
    p = cache_path(path)
    records = {}
    if p.exists():
        for line in p.read_text().splitlines():
            if line.strip():
                rec = OracleRecord.from_json(line)
                records[(rec.n, rec.m, rec.r, rec.method)] = rec
    return records


def append_cache(records, path: str | os.PathLike | None = None) -> None:
    p = cache_path(path)
    known = load_cache(p)
    fresh = [rec for rec in records if (rec.n, rec.m, rec.r, rec.method) not in known]
    if fresh:
        p.parent.mkdir(parents=True, exist_ok=True)
        with p.open("a") as fh:
            for rec in fresh:
                fh.write(rec.to_json() + "\n")


def _row(args: tuple[int, int, int]) -> OracleRecord:
    return exact_min(*args)


def table(n: int, r: int, jobs: int = 1, cache: str | os.PathLike | None = None, use_cache: bool = False) -> list[OracleRecord]:
    """Exact records for every m; sharded by m over ``jobs`` processes."""
    known = load_cache(cache) if use_cache else {}
    missing = [m for m in range(math.comb(n, 2) + 1) if (n, m, r, "canonical") not in known]
    if jobs > 1 and len(missing) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            fresh = list(pool.map(_row, [(n, m, r) for m in missing]))
    else:
        fresh = [exact_min(n, m, r) for m in missing]
    if use_cache:
        append_cache(fresh, cache)
    merged = {rec.m: rec for rec in fresh}
    for m in range(math.comb(n, 2) + 1):
        if m not in merged:
            merged[m] = known[(n, m, r, "canonical")]
    return [merged[m] for m in sorted(merged)]


def table_csv(records) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\r\n")
    writer.writerow(["n", "m", "r", "g_min", "h_min", "gap_decimal", "witness_g6"])
    for rec in records:
        gap = asymptotic_gap(rec.n, rec.m, rec.r, rec.g_min)
        writer.writerow([rec.n, rec.m, rec.r, rec.g_min, rec.h_min, format_decimal(gap), rec.witness_g])
    return out.getvalue()


def conjecture_mismatches(records) -> list[OracleRecord]:
    """Records where the family optimum is not attained (g_min < h_min)."""
    return [rec for rec in records if rec.h_min is not None and rec.g_min < rec.h_min]
