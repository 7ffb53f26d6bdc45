"""Isomorphism classes of small graphs.

Canonical labelling uses colour refinement with individualisation, taking the
lexicographically largest adjacency code over the leaves of the search tree.
Twin vertices in a cell are explored once, which keeps highly symmetric
graphs (empty, complete, complete partite) cheap.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

from .graphs import Graph, _bits


def _refine(rows: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple((rows[v] & m).bit_count() for m in masks) for v in cell}
            for key in sorted(set(sig.values())):
                out.append([v for v in cell if sig[v] == key])
        if len(out) == len(cells):
            return out
        cells = out


def _twin(rows: tuple[int, ...], u: int, v: int) -> bool:
    return rows[u] & ~(1 << v) == rows[v] & ~(1 << u)


def _code(rows: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    label = {v: i for i, v in enumerate(order)}
    return tuple(sum(1 << label[u] for u in _bits(rows[v])) for v in order)


def canonical_form(g: Graph) -> Graph:
    """A relabelling of g that is identical for isomorphic inputs."""
    rows = g.rows
    if g.n == 0:
        return g
    best: list = [None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(rows, cells)
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            code = _code(rows, [cell[0] for cell in cells])
            if best[0] is None or code > best[0]:
                best[0] = code
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if any(_twin(rows, u, v) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    search([list(range(g.n))])
    return Graph(g.n, best[0])


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and sorted(g.degrees()) == sorted(h.degrees()) and canonical_form(g) == canonical_form(h)


@lru_cache(maxsize=None)
def nonisomorphic_graphs(n: int) -> tuple[Graph, ...]:
    """One canonical representative per isomorphism class on n vertices.

    Each graph arises from a graph on n - 1 vertices by adding a vertex of
    minimum degree, so extensions are restricted to that case and then
    deduplicated by canonical form.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return (Graph(0, ()),)
    if n > 9:
        raise ValueError("exhaustive generation is limited to n <= 9")
    seen = set()
    for base in nonisomorphic_graphs(n - 1):
        degs = base.degrees()
        for size in range(n):
            for nbrs in itertools.combinations(range(n - 1), size):
                chosen = set(nbrs)
                if any(degs[v] + (v in chosen) < size for v in range(n - 1)):
                    continue
                mask = sum(1 << v for v in nbrs)
                rows = tuple(row | (1 << (n - 1) if v in chosen else 0) for v, row in enumerate(base.rows))
                seen.add(canonical_form(Graph(n, rows + (mask,))))
    return tuple(sorted(seen, key=lambda g: (g.m, g.rows)))


def graphs_with_edges(n: int, m: int) -> list[Graph]:
    return [g for g in nonisomorphic_graphs(n) if g.m == m]


def labeled_graphs(n: int, m: int) -> Iterator[Graph]:
    """All labelled m-edge graphs on n vertices that contain the edge {0, 1}.

    Every graph with at least one edge is isomorphic to one of these, which
    removes the first edge orbit from the search.
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if m == 0:
        yield Graph(n, (0,) * n)
        return
    if n < 2 or m > len(pairs):
        return
    rest = pairs[1:]
    for chosen in itertools.combinations(rest, m - 1):
        rows = [2, 1] + [0] * (n - 2)
        for u, v in chosen:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        yield Graph(n, tuple(rows))
