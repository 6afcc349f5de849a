#!/usr/bin/env python3
"""
Test r-minimal enumeration, the unavoidable family and detection.
"""

import os
import sys
from itertools import combinations, product

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from errors import InvalidSpecError, PreconditionError
from graph_io import format_coloured_clique, parse_coloured_clique
from graphs import EdgeColouring
from unavoidable import (ColouredClique, ColourMatrix, UnavoidableFamily, canonical_clique, coloured_blowup,
                         detect_unavoidable, embedding_holds, enumerate_r_minimal, is_r_minimal,
                         unavoidable_family)


def key(P):
    return P.k, P.vcol, P.ecol


def brute_force_minimal(r, max_k):
    found = set()
    for k in range(1, max_k + 1):
        for vcol in product(range(r), repeat=k):
            for ecol in product(range(r), repeat=k * (k - 1) // 2):
                P = ColouredClique(k, r, vcol, ecol)
                if is_r_minimal(P, r):
                    found.add(key(canonical_clique(P)[0]))
    return found


def two_cliques(t):
    colours = {(u, v): 0 if (u < t) == (v < t) else 1 for u, v in combinations(range(2 * t), 2)}
    return EdgeColouring(2, colours)


def test_is_r_minimal_examples():
    assert is_r_minimal(ColouredClique(1, 1, (0,), ()), 1)
    assert is_r_minimal(ColouredClique(2, 2, (0, 0), (1,)), 2)
    assert not is_r_minimal(ColouredClique(2, 2, (0, 0), (0,)), 2)
    assert not is_r_minimal(ColouredClique(3, 2, (0, 0, 0), (1, 0, 0)), 2)


def test_enumerate_small_r():
    assert [key(P) for P in enumerate_r_minimal(1)] == [(1, (0,), ())]
    assert [key(P) for P in enumerate_r_minimal(2)] == [
        (2, (0, 0), (1,)),
        (2, (0, 1), (0,)),
        (2, (0, 1), (1,)),
        (2, (1, 1), (0,)),
    ]
    with pytest.raises(InvalidSpecError):
        enumerate_r_minimal(0)


def test_enumeration_matches_brute_force():
    for r in (1, 2):
        assert {key(P) for P in enumerate_r_minimal(r)} == brute_force_minimal(r, 2 * r)
    patterns = enumerate_r_minimal(3)
    assert all(P.k <= 4 for P in patterns)
    assert {key(P) for P in patterns} == brute_force_minimal(3, 4)
    print(f"  ✅ {len(patterns)} 3-minimal patterns, all found by brute force")


def test_enumerated_patterns_are_minimal_and_small():
    for r in (1, 2, 3):
        patterns = enumerate_r_minimal(r)
        assert len({key(P) for P in patterns}) == len(patterns)
        for P in patterns:
            assert P.k <= 2 * r
            assert is_r_minimal(P, r)


def test_quotient_by_colour_renaming():
    classes = {key(canonical_clique(P, quotient_colours=True)[0]) for P in enumerate_r_minimal(2)}
    assert len(classes) == 2


def test_coloured_blowup():
    P = ColouredClique(2, 2, (0, 0), (1,))
    assert coloured_blowup(P, 1) == P
    B = coloured_blowup(P, 3)
    assert B.k == 6
    assert B.colour(0, 2) == 0 and B.colour(3, 5) == 0
    assert all(B.colour(u, v) == 1 for u in range(3) for v in range(3, 6))

    red = coloured_blowup(ColouredClique(1, 2, (0,), ()), 4)
    assert red.k == 4 and set(red.ecol) == {0}


def test_family_sizes_and_members():
    family = unavoidable_family(2, 2)
    assert len(family.members) == 4
    assert key(family.sources[0]) == (2, (0, 0), (1,))

    single = unavoidable_family(1, 3)
    assert len(single.members) == 1
    assert single.members[0].k == 3 and set(single.members[0].ecol) == {0}

    for r in (1, 2, 3):
        for t in (2, 3):
            family = unavoidable_family(r, t)
            for member, source in zip(family.members, family.sources):
                assert member == coloured_blowup(source, t)
                assert member.k <= 2 * r * t
                assert set(member.ecol) == set(range(r))

    with pytest.raises(PreconditionError):
        unavoidable_family(2, 1)


def test_detection_finds_each_blowup():
    for r in (1, 2, 3):
        for t in (2, 3):
            family = unavoidable_family(r, t)
            for P in enumerate_r_minimal(r):
                member = coloured_blowup(P, t)
                host_colouring = member.edge_colouring()
                host = ColourMatrix.from_colouring(host_colouring, member.k, r)

                hit = detect_unavoidable(host_colouring, r, t, member.k, family=family)
                assert hit is not None
                assert embedding_holds(hit.member, host, hit.embedding)

                own = UnavoidableFamily(r, t, (member,), (P,))
                mine = detect_unavoidable(host_colouring, r, t, member.k, family=own)
                assert mine is not None and mine.member_index == 0
                assert embedding_holds(member, host, mine.embedding)


def test_monochromatic_clique_has_no_pattern():
    n = 20
    mono = EdgeColouring(2, {e: 0 for e in combinations(range(n), 2)})
    assert detect_unavoidable(mono, 2, 2, n) is None


def test_two_cliques_detected():
    hit = detect_unavoidable(two_cliques(2), 2, 2, 4)
    assert hit is not None
    assert hit.member_index == 0
    assert key(hit.member) == key(coloured_blowup(ColouredClique(2, 2, (0, 0), (1,)), 2))
    assert sorted(hit.embedding) == [0, 1, 2, 3]


def test_detection_same_for_any_worker_count():
    rng = np.random.default_rng(17)
    n = 16
    c = EdgeColouring(2, {e: int(rng.integers(0, 2)) for e in combinations(range(n), 2)})
    assert detect_unavoidable(c, 2, 2, n, workers=1) == detect_unavoidable(c, 2, 2, n, workers=4)


def test_colour_matrix():
    c = two_cliques(3)
    host = ColourMatrix.from_colouring(c)
    assert host.n == 6
    assert host.edge_count(0) == 6 and host.edge_count(1) == 9
    assert host.is_monochromatic_clique([0, 1, 2]) == 0
    assert host.is_monochromatic_clique([0, 1, 3]) is None
    assert host.bipartite_colour([0, 1], [3, 4]) == 1
    assert len(host.colour_graph(1).edges) == 9
    with pytest.raises(InvalidSpecError):
        ColourMatrix.from_colouring(EdgeColouring(2, {(0, 1): 0, (1, 2): 0}))


def test_clique_file_format():
    P = enumerate_r_minimal(3)[-1]
    assert parse_coloured_clique(format_coloured_clique(P)) == P


def main():
    from suite_runner import run_suite

    return run_suite("UNAVOIDABLE PATTERNS TEST SUMMARY", [
        test_is_r_minimal_examples,
        test_enumerate_small_r,
        test_enumeration_matches_brute_force,
        test_enumerated_patterns_are_minimal_and_small,
        test_quotient_by_colour_renaming,
        test_coloured_blowup,
        test_family_sizes_and_members,
        test_detection_finds_each_blowup,
        test_monochromatic_clique_has_no_pattern,
        test_two_cliques_detected,
        test_detection_same_for_any_worker_count,
        test_colour_matrix,
        test_clique_file_format,
    ])


if __name__ == "__main__":
    sys.exit(main())
