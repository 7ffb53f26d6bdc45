"""Finite graphs on at most 64 vertices stored as adjacency bitsets.

Clique counting, Turan quantities, the extremal families H_{alpha,n} and the
complete-partite-plus-triangle-free class, W-random sampling, and the edit and
cut distances used to compare graphs with family members.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .scallop import c_of_alpha, k_of_alpha
from .surd import as_number, floor

MAX_VERTICES = 64


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"graphs are limited to {MAX_VERTICES} vertices")
        if len(self.rows) != self.n:
            raise ValueError("one adjacency row per vertex required")
        for v, row in enumerate(self.rows):
            if row >> self.n or row >> v & 1:
                raise ValueError(f"row {v} has loops or out-of-range bits")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.rows)))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which vertex v becomes perm[v]."""
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabelling must be a permutation of the vertices")
        rows = [0] * self.n
        for v, row in enumerate(self.rows):
            rows[perm[v]] = sum(1 << perm[u] for u in _bits(row))
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            [(index[u], index[v]) for u, v in self.edges() if u in index and v in index],
        )

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# -- standard graphs ------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    n = sum(sizes)
    full = (1 << n) - 1
    rows = []
    start = 0
    for size in sizes:
        block = ((1 << size) - 1) << start
        rows.extend([full & ~block] * size)
        start += size
    return Graph(n, tuple(rows))


def balanced_parts(r: int, n: int) -> list[int]:
    q, rem = divmod(n, r)
    return [q + 1] * rem + [q] * (r - rem)


def turan_graph(r: int, n: int) -> Graph:
    return complete_multipartite([s for s in balanced_parts(r, n) if s])


def turan_edges(r: int, n: int) -> int:
    """Edges of the balanced complete r-partite graph on n vertices."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    sizes = balanced_parts(r, n)
    return (n * n - sum(s * s for s in sizes)) // 2


# -- counting ------------------------------------------------------------------


def count_cliques(g: Graph, r: int) -> int:
    """Exact number of r-vertex cliques."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 2:
        return g.m
    return count_cliques_within(g.rows, (1 << g.n) - 1, r)


def count_cliques_within(rows: Sequence[int], mask: int, r: int) -> int:
    """Number of r-cliques inside the vertex set ``mask``."""
    if r == 0:
        return 1
    if r == 1:
        return mask.bit_count()
    alive = mask
    changed = True
    while changed:  # a K_r vertex has at least r-1 neighbours among survivors
        changed = False
        for v in _bits(alive):
            if (rows[v] & alive).bit_count() < r - 1:
                alive &= ~(1 << v)
                changed = True

    def rec(cand: int, depth: int) -> int:
        if depth == 1:
            return cand.bit_count()
        if cand.bit_count() < depth:
            return 0
        total = 0
        while cand:
            low = cand & -cand
            cand ^= low
            total += rec(cand & rows[low.bit_length() - 1], depth - 1)
        return total

    return rec(alive, r)


def hom_density(g: Graph, r: int) -> Fraction:
    """t(K_r, W_G) = r! * (number of K_r) / n^r."""
    if g.n == 0:
        raise ValueError("density of the null graph is undefined")
    return Fraction(math.factorial(r) * count_cliques(g, r), g.n**r)


def elementary_symmetric(values: Sequence, r: int):
    if r < 0:
        return 0
    coeffs = [1] + [0] * r
    for x in values:
        for j in range(r, 0, -1):
            coeffs[j] += coeffs[j - 1] * x
    return coeffs[r]


# -- the family of complete partite graphs with a triangle-free block ----------


@dataclass(frozen=True)
class FamilyGraph:
    """A graph with its decomposition V_1, ..., V_{k-1}, U.

    ``part_sizes`` lists |V_1|, ..., |V_{k-1}| followed by |U|.  The scaffold
    parts are independent and complete to everything else; U induces a
    triangle-free graph with ``inner_edges`` edges.  ``kind`` is ``"kr-free"``
    for the K_r-free members, which carry no decomposition.
    """

    graph: Graph
    k: int
    part_sizes: tuple[int, ...]
    inner_edges: int
    kind: str = "partite"

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.graph.n,
                "k": self.k,
                "part_sizes": list(self.part_sizes),
                "inner_edges": self.inner_edges,
                "graph6": to_graph6(self.graph),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "FamilyGraph":
        data = json.loads(text)
        g = from_graph6(data["graph6"])
        if g.n != data["n"]:
            raise ValueError("vertex count does not match graph6 payload")
        return cls(g, data["k"], tuple(data["part_sizes"]), data["inner_edges"])


def bipartite_block_edges(u: int, s: int) -> list[tuple[int, int]]:
    """First s edges, in lexicographic order, of the balanced K_{ceil(u/2), floor(u/2)}."""
    half = (u + 1) // 2
    edges = [(a, b) for a in range(half) for b in range(half, u)]
    if s > len(edges):
        raise ValueError(f"a triangle-free graph on {u} vertices has at most {len(edges)} edges")
    return edges[:s]


def construct_family_member(n: int, m: int, k: int, part_sizes: Sequence[int]) -> FamilyGraph:
    """Complete partite scaffold on part_sizes plus a bipartite block in U giving m edges."""
    part_sizes = tuple(part_sizes)
    if len(part_sizes) != k or k < 1:
        raise ValueError("part_sizes must list V_1, ..., V_{k-1} and U")
    if sum(part_sizes) != n or any(s < 0 for s in part_sizes):
        raise ValueError("part sizes must be nonnegative and sum to n")
    u = part_sizes[-1]
    crossing = elementary_symmetric(part_sizes, 2)
    s = m - crossing
    if not 0 <= s <= turan_edges(2, u):
        raise ValueError(f"m = {m} is not achievable on parts {part_sizes}")
    scaffold = complete_multipartite(part_sizes)
    offset = n - u
    inner = [(offset + a, offset + b) for a, b in bipartite_block_edges(u, s)]
    g = Graph.from_edges(n, scaffold.edges() + inner)
    return FamilyGraph(g, k, part_sizes, s)


def construct_H_alpha_n(alpha, n: int) -> FamilyGraph:
    """The graph H_{alpha,n}: k parts of size floor(c n) and one remainder part."""
    alpha = as_number(alpha)
    if alpha == 1:
        return FamilyGraph(complete_graph(n), n, (1,) * n, 0)
    k = k_of_alpha(alpha)
    if n < k + 1:
        raise ValueError(f"n = {n} is too small for {k + 1} parts")
    size = floor(c_of_alpha(alpha) * n)
    if size < 1:
        raise ValueError(f"n = {n} leaves the main parts empty")
    last = n - k * size
    g = complete_multipartite([size] * k + ([last] if last else []))
    return FamilyGraph(g, k, (size,) * (k - 1) + (size + last,), size * last)


def family_count(part_sizes: Sequence[int], s: int, r: int) -> int:
    """K_r count of a scaffold with part_sizes (U last) and s edges in U."""
    return elementary_symmetric(part_sizes, r) + s * elementary_symmetric(part_sizes[:-1], r - 2)


def _partitions(total: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def family_structures(n: int, m: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """All (part_sizes, s) with non-increasing scaffold parts realising m edges."""
    for u in range(n + 1):
        t2 = turan_edges(2, u)
        for scaffold in _partitions(n - u, n - u):
            sizes = scaffold + (u,)
            s = m - elementary_symmetric(sizes, 2)
            if 0 <= s <= t2:
                yield sizes, s


def family_minimum_H(n: int, m: int, r: int) -> tuple[int, FamilyGraph]:
    """Minimum K_r count over the family, with the first optimal structure found."""
    if not 0 <= m <= math.comb(n, 2):
        raise ValueError("need 0 <= m <= C(n, 2)")
    if n > 40:
        raise ValueError("exhaustive family search is limited to n <= 40")
    best = None
    for sizes, s in family_structures(n, m):
        count = family_count(sizes, s, r)
        if best is None or count < best[0]:
            best = (count, sizes, s)
    count, sizes, _ = best
    return count, construct_family_member(n, m, len(sizes), sizes)


def family_decomposition(g: Graph) -> FamilyGraph | None:
    """Decompose g as complete partite plus a triangle-free block, if possible.

    Scaffold parts are the complement components that are cliques there; every
    other complement component has to sit in U, which must stay triangle-free.
    """
    comp = g.complement()
    seen = 0
    scaffold, block = [], []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        members, frontier = 1 << v, 1 << v
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= comp.rows[u]
            frontier = nxt & ~members
            members |= nxt
        seen |= members
        verts = list(_bits(members))
        is_clique = all((comp.rows[x] | 1 << x) == members for x in verts)
        (scaffold if is_clique else block).append(verts)
    u_vertices = sorted(x for part in block for x in part)
    inner = g.induced(u_vertices)
    if count_cliques(inner, 3):
        return None
    scaffold.sort(key=lambda part: (-len(part), part))
    order = [x for part in scaffold for x in part] + u_vertices
    perm = [0] * g.n
    for new, old in enumerate(order):
        perm[old] = new
    sizes = tuple(len(p) for p in scaffold) + (len(u_vertices),)
    return FamilyGraph(g.relabel(perm), len(sizes), sizes, inner.m)


# -- sampling ------------------------------------------------------------------


def sample_w_random(w, n: int, seed: int) -> Graph:
    """n-vertex W-random graph: parts drawn by measure, edges by W value."""
    if n > MAX_VERTICES:
        raise ValueError(f"samples are limited to {MAX_VERTICES} vertices")
    rng = np.random.default_rng(seed)
    probs = np.array([float(mu) for mu in w.measures])
    probs /= probs.sum()
    parts = rng.choice(len(probs), size=n, p=probs)
    values = [[float(x) for x in row] for row in w.values]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < values[parts[i]][parts[j]]:
                edges.append((i, j))
    return Graph.from_edges(n, edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), deterministic for a given seed."""
    rng = np.random.default_rng(seed)
    draws = rng.random(n * (n - 1) // 2)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph.from_edges(n, [e for e, x in zip(pairs, draws) if x < p])


# -- distances -----------------------------------------------------------------

CUT_EXACT_LIMIT = 24
EDIT_EXACT_LIMIT = 9


def cut_discrepancy(g: Graph, h: Graph, exact: bool = True, samples: int = 4096, seed: int = 0) -> Fraction:
    """max over S, T of |e_g(S,T) - e_h(S,T)| / n^2 with ordered pairs.

    For a fixed S the best T collects every vertex whose column sum over S has
    the favourable sign, so only S is enumerated.  With ``exact=False`` S is
    sampled and the value is a lower bound.
    """
    if g.n != h.n:
        raise ValueError("graphs must have the same vertex count")
    n = g.n
    if n == 0:
        return Fraction(0)
    diff = g.adjacency_matrix() - h.adjacency_matrix()
    best = 0
    if exact:
        if n > CUT_EXACT_LIMIT:
            raise ValueError(f"exact cut discrepancy is limited to n <= {CUT_EXACT_LIMIT}")
        shifts = np.arange(n, dtype=np.int64)
        chunk = 1 << min(n, 16)
        for start in range(0, 1 << n, chunk):
            subsets = np.arange(start, start + chunk, dtype=np.int64)
            best = max(best, _best_t(((subsets[:, None] >> shifts) & 1) @ diff))
    else:
        rng = np.random.default_rng(seed)
        best = _best_t(rng.integers(0, 2, size=(samples, n)) @ diff)
    return Fraction(int(best), n * n)


def _best_t(cols: np.ndarray) -> int:
    pos = np.clip(cols, 0, None).sum(axis=1).max()
    neg = np.clip(-cols, 0, None).sum(axis=1).max()
    return int(max(pos, neg))


def _mapping_cost(g: Graph, h: Graph, phi: Sequence[int]) -> int:
    cost = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            cost += g.adjacent(u, v) != h.adjacent(phi[u], phi[v])
    return cost


def _heuristic_mapping(g: Graph, h: Graph) -> tuple[int, list[int]]:
    n = g.n
    gd, hd = g.degrees(), h.degrees()
    g_order = sorted(range(n), key=lambda v: (-gd[v], v))
    h_order = sorted(range(n), key=lambda v: (-hd[v], v))
    phi = [0] * n
    for a, b in zip(g_order, h_order):
        phi[a] = b
    cost = _mapping_cost(g, h, phi)

    def local(u: int, others: Iterable[int]) -> int:
        return sum(g.adjacent(u, v) != h.adjacent(phi[u], phi[v]) for v in others if v != u)

    improved = True
    while improved:
        improved = False
        for u in range(n):
            for v in range(u + 1, n):
                rest = [x for x in range(n) if x != u and x != v]
                before = local(u, rest) + local(v, rest)
                phi[u], phi[v] = phi[v], phi[u]
                after = local(u, rest) + local(v, rest)
                if after < before:
                    cost += after - before
                    improved = True
                else:
                    phi[u], phi[v] = phi[v], phi[u]
    return cost, phi


def _exact_edit(g: Graph, h: Graph, upper: int) -> int:
    """Branch and bound over bijections; returns min(true distance, upper)."""
    n = g.n
    gd = g.degrees()
    order = sorted(range(n), key=lambda v: (-gd[v], v))
    pos_adj = []  # bits p < i where order[i] ~ order[p] in g
    g_inside = [0]  # edges of g among the first i positions
    for i, v in enumerate(order):
        bits = sum(1 << p for p in range(i) if g.adjacent(v, order[p]))
        pos_adj.append(bits)
        g_inside.append(g_inside[-1] + bits.bit_count())
    m_g, m_h = g.m, h.m
    h_rows = h.rows
    hbits = [0] * n  # bits p where h-vertex x ~ image of position p
    hd = h.degrees()
    best = upper
    used = 0

    def search(i: int, cost: int, h_inside: int) -> None:
        nonlocal best, used
        if i == n:
            best = min(best, cost)
            return
        target = gd[order[i]]
        cands = sorted((x for x in range(n) if not used >> x & 1), key=lambda x: (abs(hd[x] - target), x))
        for x in cands:
            c = cost + (pos_adj[i] ^ hbits[x]).bit_count()
            inside = h_inside + hbits[x].bit_count()
            bound = c + abs((m_g - g_inside[i + 1]) - (m_h - inside))
            if bound >= best:
                continue
            used |= 1 << x
            nbrs = list(_bits(h_rows[x]))
            for y in nbrs:
                hbits[y] |= 1 << i
            search(i + 1, c, inside)
            for y in nbrs:
                hbits[y] &= ~(1 << i)
            used &= ~(1 << x)
            if best == abs(m_g - m_h):
                return

    search(0, 0, 0)
    return best


def edit_distance(g: Graph, h: Graph, mode: str = "exact", upper: int | None = None) -> int:
    """Minimum over bijections of |E(g) symmetric-difference E(phi(h))|.

    ``mode="heuristic"`` returns the degree-aligned, swap-improved upper bound.
    In exact mode ``upper`` caps the search; the result is then min(d, upper).
    """
    if g.n != h.n:
        raise ValueError("graphs must have the same vertex count")
    if mode not in ("exact", "heuristic"):
        raise ValueError("mode must be 'exact' or 'heuristic'")
    cost, _ = _heuristic_mapping(g, h)
    if mode == "heuristic":
        return cost
    if g.n > EDIT_EXACT_LIMIT:
        raise ValueError(f"exact edit distance is limited to n <= {EDIT_EXACT_LIMIT}")
    if upper is not None:
        cost = min(cost, upper)
    if cost == abs(g.m - h.m):
        return cost
    return _exact_edit(g, h, cost)


def distance_to_family(g: Graph, r: int, mode: str = "exact") -> tuple[int, FamilyGraph]:
    """Edit distance from g to the family members with the same edge count.

    Exact mode on n <= 7 scans every isomorphism class with e(g) edges that is
    K_r-free or a complete partite graph plus a triangle-free block.  For
    larger n, and in heuristic mode, the candidates are the scaffold structures
    with their bipartite block, so the value is an upper bound.
    """
    from .enumeration import canonical_form, graphs_with_edges

    n, m = g.n, g.m
    if mode == "exact" and n > EDIT_EXACT_LIMIT:
        raise ValueError(f"exact mode is limited to n <= {EDIT_EXACT_LIMIT}")
    candidates: list[FamilyGraph] = []
    if mode == "exact" and n <= 7:
        for cand in graphs_with_edges(n, m):
            member = family_decomposition(cand)
            if member is not None:
                candidates.append(member)
            elif count_cliques(cand, r) == 0:
                candidates.append(FamilyGraph(cand, 0, (n,), m, kind="kr-free"))
    else:
        for sizes, s in family_structures(n, m):
            candidates.append(construct_family_member(n, m, len(sizes), sizes))
    if not candidates:
        raise ValueError("no family member has this edge count")
    g_canon = canonical_form(g) if n <= 10 else None
    scored = []
    for cand in candidates:
        if g_canon is not None and canonical_form(cand.graph) == g_canon:
            return 0, cand
        scored.append((edit_distance(g, cand.graph, "heuristic"), cand))
    scored.sort(key=lambda item: item[0])
    best, witness = scored[0]
    if mode == "exact":
        for bound, cand in scored:
            if best == 0:
                break
            d = edit_distance(g, cand.graph, "exact", upper=best)
            if d < best:
                best, witness = d, cand
    return best, witness


# -- text formats --------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = chr(63 + n)
    else:
        head = "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    bits = [g.rows[j] >> i & 1 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[i : i + 6])), 2)) for i in range(0, len(bits), 6))
    return head + body


def from_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[10:]
    data = [ord(ch) - 63 for ch in text]
    if not data or any(not 0 <= x < 64 for x in data):
        raise ValueError("invalid graph6 string")
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise ValueError("graph6 strings with n >= 258048 are not supported")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    need = n * (n - 1) // 2
    if len(data) != -(-need // 6):
        raise ValueError("graph6 payload length does not match n")
    bits = [x >> s & 1 for x in data for s in range(5, -1, -1)]
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"# n = {g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    """Whitespace 'u v' lines, 0-based; '# n = N' fixes the vertex count."""
    n = None
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].replace(" ", "")
            if body.startswith("n="):
                n = int(body[2:])
            continue
        u, v = map(int, line.split())
        edges.append((u, v))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges)


def read_graph(text: str) -> Graph:
    """Parse either a graph6 string or an edge list."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    first = lines[0]
    if first.startswith("#") or len(first.split()) == 2:
        return from_edge_list(text)
    return from_graph6(first)
