import itertools
import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquedensity import oracle
from cliquedensity.graphs import count_cliques, family_minimum_H, from_graph6, turan_edges, turan_graph
from cliquedensity.oracle import OracleRecord


def nx_cliques(n: int, edges, r: int) -> int:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return sum(1 for c in nx.enumerate_all_cliques(g) if len(c) == r)


def brute_min(n: int, m: int, r: int) -> int:
    """Minimum over every labelled m-edge graph, counted with networkx."""
    pairs = list(itertools.combinations(range(n), 2))
    return min(nx_cliques(n, chosen, r) for chosen in itertools.combinations(pairs, m))


def test_examples():
    assert oracle.exact_min(5, 7, 3).g_min == 2
    assert oracle.exact_min(6, 15, 3).g_min == math.comb(6, 3)
    for n in range(2, 9):
        assert oracle.exact_min(n, turan_edges(2, n), 3).g_min == 0
    assert oracle.asymptotic_gap(6, 12, 3) == 0
    assert from_graph6(oracle.exact_min(6, 12, 3).witness_g).m == 12
    for n in range(2, 9):
        assert oracle.asymptotic_gap(n, turan_edges(2, n), 3) == 0


def test_turan_point_witness():
    rec = oracle.exact_min(6, 12, 3)
    assert rec.g_min == count_cliques(turan_graph(3, 6), 3) == 8
    assert oracle.asymptotic_gap(6, 12, 3, rec.g_min) == Fraction(math.factorial(3) * 8, 6**3) - Fraction(2, 9) == 0


def test_erdos_bound_examples():
    for n in range(4, 9):
        assert oracle.erdos_bound_check(n)
    assert oracle.exact_min(4, 5, 3).g_min == 2
    with pytest.raises(ValueError):
        oracle.erdos_bound_check(5, 4)


def test_matches_networkx_brute_force():
    for n in range(1, 6):
        for r in (3, 4):
            for m in range(math.comb(n, 2) + 1):
                assert oracle.exact_min(n, m, r).g_min == brute_min(n, m, r)


def test_labelled_and_canonical_agree():
    for n in range(1, 7):
        for r in (3, 4):
            for m in range(math.comb(n, 2) + 1):
                a = oracle.exact_min(n, m, r, "canonical")
                b = oracle.exact_min(n, m, r, "labeled-exhaustive")
                assert (a.g_min, a.witness_g) == (b.g_min, b.witness_g)


def test_range_errors():
    with pytest.raises(ValueError):
        oracle.exact_min(9, 10, 3)
    with pytest.raises(ValueError):
        oracle.exact_min(5, 11, 3)
    with pytest.raises(ValueError):
        oracle.exact_min(8, 10, 3, "labeled-exhaustive")
    with pytest.raises(ValueError):
        oracle.exact_min(5, 5, 3, "guess")
    with pytest.raises(ValueError):
        oracle.local_search_upper(65, 10, 3)


def test_table_invariants():
    for n in range(2, 8):
        for r in (3, 4, 5):
            records = oracle.table(n, r)
            mins = [rec.g_min for rec in records]
            assert mins == sorted(mins)
            for rec in records:
                assert rec.g_min <= rec.h_min
                assert count_cliques(from_graph6(rec.witness_g), r) == rec.g_min
                assert count_cliques(from_graph6(rec.witness_h), r) == rec.h_min
                assert oracle.asymptotic_gap(n, rec.m, r, rec.g_min) >= 0


def test_conjecture_spot_check_is_descriptive():
    records = [rec for n in range(2, 8) for rec in oracle.table(n, 3)]
    mismatches = oracle.conjecture_mismatches(records)
    assert all(rec.g_min < rec.h_min for rec in mismatches)
    assert len(mismatches) < len(records)


@settings(max_examples=25)
@given(st.integers(3, 7), st.data(), st.integers(0, 1000))
def test_local_search_bounds(n, data, seed):
    m = data.draw(st.integers(0, math.comb(n, 2)))
    r = data.draw(st.integers(3, 4))
    upper = oracle.local_search_upper(n, m, r, seed=seed, restarts=2, patience=200)
    assert upper.method == "local-search-upper-bound"
    assert upper.g_min >= oracle.exact_min(n, m, r).g_min
    assert count_cliques(from_graph6(upper.witness_g), r) == upper.g_min
    assert upper == oracle.local_search_upper(n, m, r, seed=seed, restarts=2, patience=200)


def test_local_search_never_worse_than_family_start():
    for n, m, r in ((8, 20, 3), (10, 30, 3), (12, 50, 4), (20, 120, 3)):
        count, member = family_minimum_H(n, m, r)
        upper = oracle.local_search_upper(n, m, r, seed=1, restarts=1, patience=300, start=member.graph)
        assert upper.g_min <= count


def test_record_json_round_trip():
    rec = oracle.exact_min(5, 7, 3)
    assert OracleRecord.from_json(rec.to_json()) == rec


def test_cache_is_idempotent(tmp_path):
    path = tmp_path / "oracle-cache.jsonl"
    first = oracle.table(5, 3, cache=path, use_cache=True)
    lines = path.read_text().splitlines()
    assert len(lines) == math.comb(5, 2) + 1
    again = oracle.table(5, 3, cache=path, use_cache=True)
    assert again == first
    oracle.append_cache(first, path)
    assert path.read_text().splitlines() == lines
    assert oracle.cache_path(None).name == "oracle-cache.jsonl"


def test_cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv("CLIQUEDENSITY_CACHE_DIR", str(tmp_path))
    oracle.append_cache([oracle.exact_min(4, 3, 3)])
    assert len(oracle.load_cache()) == 1


def test_csv_format_and_parallel_determinism():
    serial = oracle.table_csv(oracle.table(6, 3, jobs=1))
    parallel = oracle.table_csv(oracle.table(6, 3, jobs=3))
    assert serial == parallel
    rows = serial.split("\r\n")
    assert rows[0] == "n,m,r,g_min,h_min,gap_decimal,witness_g6"
    assert len([row for row in rows if row]) == math.comb(6, 2) + 2
    assert rows[13].startswith("6,12,3,8,8,0,")
