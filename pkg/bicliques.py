"""
Exact complete-bipartite subgraph search.
Used for the K_{t,t} pruning of canonical copies and for f-coherence checks.
"""
from typing import AbstractSet, Mapping, Optional, Sequence, Tuple


def _peel(left, right, adj, radj, a, b):
    """Drop vertices whose degree cannot reach the opposite target, until stable."""
    left = set(left)
    right = set(right)
    changed = True
    while changed:
        changed = False
        for u in list(left):
            if len(adj[u] & right) < b:
                left.discard(u)
                changed = True
        for w in list(right):
            if len(radj[w] & left) < a:
                right.discard(w)
                changed = True
    return left, right


def _search(order, adj, k, other_size, chosen, common, start):
    if len(chosen) == k:
        return tuple(chosen), common
    for pos in range(start, len(order)):
        if len(order) - pos < k - len(chosen):
            return None
        u = order[pos]
        narrowed = common & adj[u]
        if len(narrowed) < other_size:
            continue
        chosen.append(u)
        found = _search(order, adj, k, other_size, chosen, narrowed, pos + 1)
        if found:
            return found
        chosen.pop()
    return None


def find_biclique(left: Sequence[int], right: Sequence[int],
                  adjacent: Mapping[int, AbstractSet[int]],
                  a: int, b: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    Find a K_{a,b} with `a` vertices in `left` and `b` vertices in `right`.

    Branch-and-bound on the smaller side after degree peeling. The result is
    deterministic: the lexicographically first subset of the branching side,
    completed with the smallest vertices of its common neighbourhood.

    Args:
        left: Left vertex set
        right: Right vertex set
        adjacent: left vertex -> its neighbours (only members of `right` matter)
        a: Required size on the left
        b: Required size on the right

    Returns:
        (A, B) sorted tuples, or None when no such subgraph exists
    """
    if a < 0 or b < 0:
        raise ValueError(f"biclique sizes must be non-negative, got {a}x{b}")
    if a > len(left) or b > len(right):
        return None
    if a == 0 or b == 0:
        return tuple(sorted(left)[:a]), tuple(sorted(right)[:b])

    right_set = set(right)
    adj = {u: set(adjacent.get(u, ())) & right_set for u in left}
    radj = {w: set() for w in right}
    for u, nbrs in adj.items():
        for w in nbrs:
            radj[w].add(u)

    lset, rset = _peel(left, right, adj, radj, a, b)
    if len(lset) < a or len(rset) < b:
        return None

    if len(lset) <= len(rset):
        found = _search(sorted(lset), adj, a, b, [], rset, 0)
        if not found:
            return None
        chosen, common = found
        return chosen, tuple(sorted(common)[:b])

    found = _search(sorted(rset), radj, b, a, [], lset, 0)
    if not found:
        return None
    chosen, common = found
    return tuple(sorted(common)[:a]), chosen
