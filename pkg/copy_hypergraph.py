"""
Copy hypergraph H(G): its vertices are the edges of G, its hyperedges the
edge sets of copies of H. Girth follows Berge's convention: a cycle of length
k >= 3 runs through distinct hyperedges joined by pairwise distinct link
vertices, and two hyperedges sharing two or more vertices form a 2-cycle.
"""
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple

import networkx as nx

from errors import InvalidSpecError
from graphs import Graph, enumerate_copies


@dataclass(frozen=True)
class CopyHypergraph:
    vertices: Tuple[Hashable, ...]
    hyperedges: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        sizes = {len(e) for e in self.hyperedges}
        if len(sizes) > 1:
            raise InvalidSpecError(f"hypergraph is not uniform: hyperedge sizes {sorted(sizes)}")
        if len(set(self.hyperedges)) != len(self.hyperedges):
            raise InvalidSpecError("hypergraph has repeated hyperedges")
        for e in self.hyperedges:
            if any(not 0 <= x < len(self.vertices) for x in e):
                raise InvalidSpecError(f"hyperedge {sorted(e)} names a vertex outside the vertex list")

    @classmethod
    def from_sets(cls, sets: Sequence[Sequence[Hashable]]) -> "CopyHypergraph":
        """Hypergraph over arbitrary sortable labels; vertex i is the i-th smallest label."""
        labels = sorted({x for s in sets for x in s})
        index = {x: i for i, x in enumerate(labels)}
        return cls(tuple(labels), tuple(frozenset(index[x] for x in s) for s in sets))

    @property
    def uniformity(self) -> int:
        return len(self.hyperedges[0]) if self.hyperedges else 0


@dataclass(frozen=True)
class Girth:
    """Girth with a witness cycle: hyperedges e_1..e_k and links x_i in e_i and e_{i+1}."""
    value: Optional[int]
    cycle: Tuple[int, ...] = ()
    links: Tuple[int, ...] = ()

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def exceeds(self, bound: int) -> bool:
        return self.value is None or self.value > bound

    def __str__(self):
        return "inf" if self.value is None else str(self.value)


def build_copy_hypergraph(H: Graph, G: Graph) -> CopyHypergraph:
    if not H.edges:
        raise InvalidSpecError("copy hypergraph of an edgeless pattern is undefined")
    vertices = G.sorted_edges
    index = {e: i for i, e in enumerate(vertices)}
    hyperedges = tuple(frozenset(index[e] for e in cp.edge_set) for cp in enumerate_copies(H, G))
    return CopyHypergraph(vertices, hyperedges)


def is_linear(hg: CopyHypergraph) -> bool:
    return all(len(a & b) < 2 for a, b in combinations(hg.hyperedges, 2))


def _incidence(hg: CopyHypergraph) -> Dict[Tuple[str, int], List[Tuple[str, int]]]:
    adj: Dict[Tuple[str, int], List[Tuple[str, int]]] = {}
    for i, e in enumerate(hg.hyperedges):
        adj[("e", i)] = [("v", x) for x in sorted(e)]
        for x in e:
            adj.setdefault(("v", x), []).append(("e", i))
    for node in adj:
        adj[node].sort()
    return adj


def _path_to_root(parent, node):
    path = [node]
    while parent[node] is not None:
        node = parent[node]
        path.append(node)
    return path


def girth(hg: CopyHypergraph) -> Girth:
    """
    Length of a shortest cycle of hg, with a witness.

    Returns Girth(2, pair, shared links) for non-linear hypergraphs; otherwise
    half the girth of the vertex/hyperedge incidence graph (a Berge k-cycle
    is exactly a 2k-cycle there), found by breadth-first search from every
    node; Girth(None) when hg has no cycle.
    """
    for i, j in combinations(range(len(hg.hyperedges)), 2):
        shared = sorted(hg.hyperedges[i] & hg.hyperedges[j])
        if len(shared) >= 2:
            return Girth(2, (i, j), (shared[0], shared[1]))

    adj = _incidence(hg)
    best_length = None
    best_cycle = None
    for root in sorted(adj):
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            node = queue.popleft()
            if best_length is not None and 2 * dist[node] >= best_length:
                break
            for nxt in adj[node]:
                if nxt not in dist:
                    dist[nxt] = dist[node] + 1
                    parent[nxt] = node
                    queue.append(nxt)
                elif parent[node] != nxt:
                    length = dist[node] + dist[nxt] + 1
                    if best_length is None or length < best_length:
                        best_length = length
                        left = _path_to_root(parent, node)
                        right = _path_to_root(parent, nxt)
                        best_cycle = list(reversed(left)) + right[:-1]

    if best_length is None:
        return Girth(None)

    start = next(i for i, node in enumerate(best_cycle) if node[0] == "e")
    cycle = best_cycle[start:] + best_cycle[:start]
    edges = tuple(node[1] for node in cycle[0::2])
    links = tuple(node[1] for node in cycle[1::2])
    return Girth(len(edges), edges, links)


def find_3cc_violation(H: Graph) -> Optional[Tuple[int, ...]]:
    """
    First vertex set V (by size, then lexicographically) with H[V] bipartite
    and H - V disconnected; None if there is none. The empty graph and a
    single vertex count as connected.
    """
    g = H.to_networkx()
    for size in range(H.n + 1):
        for removed in combinations(range(H.n), size):
            if not nx.is_bipartite(g.subgraph(removed)):
                continue
            rest = g.subgraph(set(range(H.n)) - set(removed))
            if rest.number_of_nodes() <= 1:
                continue
            if not nx.is_connected(rest):
                return removed
    return None


def is_3_chromatically_connected(H: Graph) -> bool:
    """At least 3 vertices, and deleting any bipartite-inducing vertex set leaves H connected."""
    return H.n >= 3 and find_3cc_violation(H) is None


@dataclass
class PreconditionReport:
    s: int
    girth: Girth
    girth_ok: bool
    min_degree_ok: bool
    low_degree_vertex: Optional[int]
    ramsey_minimality_checked: bool = False

    @property
    def passed(self) -> bool:
        return self.girth_ok and self.min_degree_ok


def verify_recolouring_preconditions(G: Graph, H: Graph, s: int) -> PreconditionReport:
    """
    Check g(H(G)) > 2s+2 and min degree of H >= 2. Ramsey-minimality of G is
    left to the arrowing module.
    """
    g = girth(build_copy_hypergraph(H, G))
    low = next((x for x in range(H.n) if H.degree(x) < 2), None)
    return PreconditionReport(
        s=s,
        girth=g,
        girth_ok=g.exceeds(2 * s + 2),
        min_degree_ok=low is None,
        low_degree_vertex=low,
    )
