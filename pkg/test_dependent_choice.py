#!/usr/bin/env python3
"""
Test dependent random choice rich sets and paired Ramsey refinement.
"""

import os
import sys
from itertools import combinations

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from dependent_choice import BiRamseyResult, RichSet, bi_ramsey_holds, bi_ramsey_refine, drc_rich_set, verify_rich_set
from errors import PreconditionError
from graphs import EdgeColouring, Graph
from unavoidable import ColourMatrix


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    return Graph(n, frozenset(e for e in combinations(range(n), 2) if rng.random() < p))


def random_host(n, r, seed):
    rng = np.random.default_rng(seed)
    c = EdgeColouring(r, {e: int(rng.integers(0, r)) for e in combinations(range(n), 2)})
    return ColourMatrix.from_colouring(c, n, r)


def independent_check(G, rich, exclude=()):
    """Contract of a rich set, spelled out directly."""
    assert len(set(rich.S)) == len(rich.S)
    assert not set(rich.S) & set(exclude)
    assert set(rich.neighbourhoods) == set(combinations(sorted(rich.S), rich.t))
    blocks = list(rich.neighbourhoods.items())
    for X, block in blocks:
        assert len(block) >= rich.size
        assert all(G.has_edge(x, w) for x in X for w in block)
        assert not set(block) & set(rich.S)
        assert not set(block) & set(exclude)
    for (_, a), (_, b) in combinations(blocks, 2):
        assert not set(a) & set(b)


def test_rich_set_in_complete_graph():
    G = Graph.complete(16)
    rich = drc_rich_set(G, 3, 2, seed=0)
    assert rich is not None
    assert len(rich.S) == 3 and rich.size == 3
    assert verify_rich_set(G, rich)
    independent_check(G, rich)
    assert len(rich.claimed()) == 3 + 3 * 3


def test_rich_set_respects_exclusions():
    G = Graph.complete(20)
    exclude = {0, 1, 2, 3}
    rich = drc_rich_set(G, 3, 2, seed=5, exclude=exclude, neighbourhood_size=2)
    assert rich is not None and rich.size == 2
    assert verify_rich_set(G, rich, exclude)
    independent_check(G, rich, exclude)
    assert not verify_rich_set(G, rich, exclude=rich.S[:1])


def test_rich_set_in_edgeless_graph():
    assert drc_rich_set(Graph(30), 3, 2, seed=0, trials=20) is None
    assert drc_rich_set(Graph.complete(3), 3, 2, seed=0, trials=20) is None


def test_rich_set_preconditions():
    with pytest.raises(PreconditionError):
        drc_rich_set(Graph.complete(10), 1, 2, seed=0)
    with pytest.raises(PreconditionError):
        drc_rich_set(Graph.complete(10), 2, 0, seed=0)


def test_rich_sets_in_dense_random_graphs():
    n, found = 200, 0
    for seed in range(50):
        G = random_graph(n, 0.5, seed)
        assert len(G.edges) >= 3 * n ** 1.5
        rich = drc_rich_set(G, 4, 2, seed=seed, trials=30)
        if rich is not None:
            found += 1
            independent_check(G, rich)
    assert found >= 45
    print(f"  ✅ Rich sets found for {found}/50 random graphs")


def test_rich_set_is_reproducible():
    G = random_graph(120, 0.5, 3)
    assert drc_rich_set(G, 3, 2, seed=9, trials=30) == drc_rich_set(G, 3, 2, seed=9, trials=30)


def test_broken_rich_set_is_reported():
    G = Graph.complete(8)
    rich = RichSet((0, 1), 2, 2, {(0, 1): (2,)})
    assert not verify_rich_set(G, rich)
    overlapping = RichSet((0, 1, 2), 2, 1, {(0, 1): (3,), (0, 2): (3,), (1, 2): (4,)})
    assert not verify_rich_set(G, overlapping)


def test_bi_ramsey_single_colour():
    c = EdgeColouring(2, {e: 0 for e in combinations(range(10), 2)})
    host = ColourMatrix.from_colouring(c, 10, 2)
    res = bi_ramsey_refine(host, range(5), range(5, 10), 2, 3)
    assert res == BiRamseyResult((0, 1), (5, 6, 7), (0, 0, 0))
    assert bi_ramsey_holds(host, res)

    single = bi_ramsey_refine(host, [4, 2], [9, 7], 1, 1)
    assert single == BiRamseyResult((2,), (7,), (None, None, 0))


def test_bi_ramsey_edge_cases():
    host = random_host(12, 2, 0)
    assert bi_ramsey_refine(host, [0], range(6, 12), 2, 2) is None
    assert bi_ramsey_refine(host, range(0, 6), range(4, 10), 2, 2) is None
    with pytest.raises(PreconditionError):
        bi_ramsey_refine(host, range(6), range(6, 12), 3, 2)
    with pytest.raises(PreconditionError):
        bi_ramsey_refine(host, range(6), range(6, 12), 0, 2)


def test_bi_ramsey_always_succeeds_on_large_sides():
    for seed in range(100):
        host = random_host(36, 2, seed)
        res = bi_ramsey_refine(host, range(18), range(18, 36), 2, 2)
        assert res is not None, f"seed {seed}"
        assert len(res.A) == 2 and len(res.B) == 2
        assert bi_ramsey_holds(host, res)


def main():
    from suite_runner import run_suite

    return run_suite("DEPENDENT RANDOM CHOICE TEST SUMMARY", [
        test_rich_set_in_complete_graph,
        test_rich_set_respects_exclusions,
        test_rich_set_in_edgeless_graph,
        test_rich_set_preconditions,
        test_rich_sets_in_dense_random_graphs,
        test_rich_set_is_reproducible,
        test_broken_rich_set_is_reported,
        test_bi_ramsey_single_colour,
        test_bi_ramsey_edge_cases,
        test_bi_ramsey_always_succeeds_on_large_sides,
    ])


if __name__ == "__main__":
    sys.exit(main())
