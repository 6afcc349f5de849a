#!/usr/bin/env python3
"""
Test graph core: blowups, lifted colourings, copy enumeration, canonical
copies and the text formats.
Run with pytest, or directly for a banner summary.
"""

import os
import sys
from collections import Counter
from itertools import combinations, permutations, product

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from errors import GraphFormatError, InvalidSpecError
from graph_io import (format_colouring, format_graph, format_graph6, parse_blowup_spec, parse_colouring,
                      parse_edge, parse_f_table, parse_graph)
from graphs import (BlowupSpec, EdgeColouring, Graph, PartialColouring, blowup, blown_edge_orbits,
                    enumerate_copies, find_mono_canonical, is_isomorphic, isomorphism_key, iter_mono_canonical,
                    largest_cyclic_automorphism, lift_colouring, norm_edge)


def random_graph(n, p, rng):
    return Graph(n, frozenset(e for e in combinations(range(n), 2) if rng.random() < p))


def random_colouring(G, r, rng):
    return EdgeColouring(r, {e: int(rng.integers(0, r)) for e in G.sorted_edges})


def naive_copy_keys(H, G):
    keys = set()
    for image in permutations(range(G.n), H.n):
        if all(G.has_edge(image[a], image[b]) for a, b in H.edges):
            keys.add(tuple(sorted(norm_edge(image[a], image[b]) for a, b in H.edges)))
    return sorted(keys)


def test_blowup_counts():
    blown = blowup(Graph.complete(3), BlowupSpec.uniform(3, 2))
    assert blown.graph.n == 6
    assert len(blown.graph.edges) == 12
    for x in range(3):
        for a, b in combinations(blown.part(x), 2):
            assert not blown.graph.has_edge(a, b)
    assert blown.origin[blown.vertex(2, 1)] == (2, 1)

    k33 = blowup(Graph.complete(2), {0: 3, 1: 3})
    assert len(k33.graph.edges) == 9

    rng = np.random.default_rng(7)
    for _ in range(10):
        G = random_graph(5, 0.6, rng)
        m = {x: int(rng.integers(1, 4)) for x in range(G.n)}
        blown = blowup(G, m)
        assert blown.graph.n == sum(m.values())
        assert len(blown.graph.edges) == sum(m[u] * m[v] for u, v in G.edges)
    print("  ✅ Vertex and edge counts match the multiplicities")


def test_blowup_by_one_is_isomorphic():
    for G in (Graph.cycle(5), Graph.friendship(2), Graph.path(4)):
        blown = blowup(G, BlowupSpec.uniform(G.n, 1))
        assert isomorphism_key(blown.graph) == isomorphism_key(G)
        assert is_isomorphic(blown.graph, G)


def test_isomorphism_key_needs_confirming():
    two_triangles = Graph(6, frozenset({(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)}))
    assert isomorphism_key(two_triangles) == isomorphism_key(Graph.cycle(6))
    assert not is_isomorphic(two_triangles, Graph.cycle(6))
    relabelled = Graph(5, frozenset({(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)}))
    assert is_isomorphic(relabelled, Graph.cycle(5))


def test_cyclic_automorphism_and_edge_orbits():
    C5 = Graph.cycle(5)
    perm = largest_cyclic_automorphism(C5)
    assert all(C5.has_edge(perm[u], perm[v]) for u, v in C5.edges)
    orbit, x = {0}, perm[0]
    while x != 0:
        orbit.add(x)
        x = perm[x]
    assert orbit == set(range(5))
    assert largest_cyclic_automorphism(Graph.path(3)) == (2, 1, 0)

    K3 = Graph.complete(3)
    orbits = blown_edge_orbits(blowup(K3, BlowupSpec.uniform(3, 2)), largest_cyclic_automorphism(K3))
    assert len(orbits) == 12
    assert sorted(Counter(orbits.values()).values()) == [3, 3, 3, 3]
    assert orbits[(0, 2)] == 0

    with pytest.raises(InvalidSpecError):
        blown_edge_orbits(blowup(Graph.path(3), {0: 1, 1: 2, 2: 2}), (2, 1, 0))


def test_blowup_spec_errors():
    with pytest.raises(InvalidSpecError):
        BlowupSpec((1, 0, 2))
    with pytest.raises(InvalidSpecError):
        blowup(Graph.complete(3), {0: 1, 1: 2})
    with pytest.raises(InvalidSpecError):
        blowup(Graph.complete(3), BlowupSpec.uniform(4, 2))


def test_lift_colouring():
    G = Graph.complete(3)
    red = EdgeColouring(2, {e: 0 for e in G.edges})
    lifted = lift_colouring(G, red, BlowupSpec.uniform(3, 2))
    assert len(lifted) == 12
    assert lifted.colour_counts() == [12, 0]

    with pytest.raises(InvalidSpecError):
        lift_colouring(G, PartialColouring(2, {(0, 1): 0}), BlowupSpec.uniform(3, 2))
    with pytest.raises(InvalidSpecError):
        lift_colouring(G, EdgeColouring(2, {(0, 1): 0}), BlowupSpec.uniform(3, 2))


def test_enumerate_copies_known_counts():
    assert len(enumerate_copies(Graph.complete(3), Graph.complete(4))) == 4
    assert len(enumerate_copies(Graph.complete(3), Graph.cycle(5))) == 0
    assert len(enumerate_copies(Graph.path(3), Graph.complete(3))) == 3
    assert len(enumerate_copies(Graph.cycle(4), Graph.complete(4))) == 3
    assert enumerate_copies(Graph.complete(4), Graph.complete(3)) == []


def test_enumerate_copies_matches_brute_force():
    rng = np.random.default_rng(11)
    patterns = (Graph.complete(3), Graph.path(3), Graph.cycle(4))
    for _ in range(20):
        G = random_graph(int(rng.integers(4, 8)), 0.5, rng)
        for H in patterns:
            copies = enumerate_copies(H, G)
            assert [cp.key for cp in copies] == naive_copy_keys(H, G)
            for cp in copies:
                image = {norm_edge(cp.vertex_map[a], cp.vertex_map[b]) for a, b in H.edges}
                assert image == cp.edge_set
    print("  ✅ Copies agree with permutation enumeration")


def test_mono_canonical_in_lift():
    G = Graph.complete(3)
    red = EdgeColouring(2, {e: 0 for e in G.edges})
    blown = blowup(G, BlowupSpec.uniform(3, 2))
    hit = find_mono_canonical(blown, lift_colouring(G, red, blown.spec), G, 2)
    assert hit is not None
    colour, copy, chosen = hit
    assert colour == 0
    assert [x for x, _ in chosen] == [0, 1, 2]
    assert all(len(selection) == 2 for _, selection in chosen)

    with pytest.raises(InvalidSpecError):
        find_mono_canonical(blown, lift_colouring(G, red, blown.spec), G, 3)


def test_lift_preserves_monochromatic_copies():
    rng = np.random.default_rng(3)
    for _ in range(25):
        G = random_graph(5, 0.7, rng)
        c = random_colouring(G, 2, rng)
        blown = blowup(G, BlowupSpec.uniform(G.n, 2))
        lifted = lift_colouring(G, c, blown.spec)
        for H in (Graph.complete(3), Graph.path(3)):
            base_mono = any(len({c[e] for e in cp.edge_set}) == 1 for cp in enumerate_copies(H, G))
            for t in (1, 2):
                assert (find_mono_canonical(blown, lifted, H, t) is not None) == base_mono


def test_every_yielded_copy_is_monochromatic():
    rng = np.random.default_rng(5)
    G = Graph.complete(4)
    blown = blowup(G, BlowupSpec.uniform(4, 3))
    c = random_colouring(blown.graph, 2, rng)
    for colour, copy, chosen in iter_mono_canonical(blown, c, Graph.complete(3), 2):
        selected = dict(chosen)
        for x, y in copy.key:
            for a, b in product(selected[x], selected[y]):
                assert c[(a, b)] == colour


def test_parse_graph_errors_name_lines():
    cases = [
        ("3 2\n0 1\n1 5\n", 3),
        ("3 2\n0 1\n0 1\n", 3),
        ("3 1\n1 1\n", 2),
        ("3 1\n0 x\n", 2),
        ("# comment\n3 2\n0 1\n0 2\n1 2\n", 5),
    ]
    for text, line in cases:
        with pytest.raises(GraphFormatError) as info:
            parse_graph(text, "case.txt")
        assert info.value.line == line
        assert "case.txt" in str(info.value)
    with pytest.raises(GraphFormatError):
        parse_graph("")


def test_graph_text_and_graph6():
    G = Graph.cycle(5)
    assert parse_graph(format_graph(G)) == G
    assert parse_graph(format_graph6(Graph.complete(4))) == Graph.complete(4)
    assert parse_graph(">>graph6<<" + format_graph6(G)) == G
    assert parse_edge("3,1") == (1, 3)
    with pytest.raises(GraphFormatError):
        parse_edge("1 2 3")


def test_parse_colouring():
    G = Graph.complete(3)
    c = parse_colouring("0 1 0\n0 2 1\n1 2 0\n", G)
    assert isinstance(c, EdgeColouring)
    assert c.r == 2 and c[(2, 0)] == 1
    assert parse_colouring(format_colouring(c), G, 2) == c

    partial = parse_colouring("0 1 1\n", G, partial=True)
    assert isinstance(partial, PartialColouring) and (1, 2) not in partial

    with pytest.raises(GraphFormatError) as info:
        parse_colouring("0 1 0\n", G)
    assert "uncoloured" in str(info.value)
    with pytest.raises(GraphFormatError) as info:
        parse_colouring("0 1 0\n0 2 2\n1 2 0\n", G, 2)
    assert info.value.line == 2
    with pytest.raises(GraphFormatError):
        parse_colouring("0 1 0\n0 3 0\n", Graph.complete(4).without_edge(0, 3), partial=True)


def test_parse_spec_and_f_table():
    G = Graph.path(3)
    spec = parse_blowup_spec("0 2\n1 3\n2 1\n", G)
    assert spec.m == (2, 3, 1)
    with pytest.raises(GraphFormatError):
        parse_blowup_spec("0 2\n1 3\n", G)
    with pytest.raises(GraphFormatError) as info:
        parse_blowup_spec("0 2\n0 3\n2 1\n", G)
    assert info.value.line == 2
    assert parse_f_table("1 1\n2 1\n3 2\n") == {1: 1, 2: 1, 3: 2}


def main():
    from suite_runner import run_suite

    return run_suite("GRAPH CORE TEST SUMMARY", [
        test_blowup_counts,
        test_blowup_by_one_is_isomorphic,
        test_isomorphism_key_needs_confirming,
        test_cyclic_automorphism_and_edge_orbits,
        test_blowup_spec_errors,
        test_lift_colouring,
        test_enumerate_copies_known_counts,
        test_enumerate_copies_matches_brute_force,
        test_mono_canonical_in_lift,
        test_lift_preserves_monochromatic_copies,
        test_every_yielded_copy_is_monochromatic,
        test_parse_graph_errors_name_lines,
        test_graph_text_and_graph6,
        test_parse_colouring,
        test_parse_spec_and_f_table,
    ])


if __name__ == "__main__":
    sys.exit(main())
