"""
Graph core: simple graphs, blowups, edge colourings and copy enumeration.
Every other module builds on these types. All values are immutable after
construction and safe to share across threads.
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, islice, product
from math import lcm
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from bicliques import find_biclique
from errors import InvalidSpecError

Edge = Tuple[int, int]

RED = 0
BLUE = 1


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""
    n: int
    edges: FrozenSet[Edge] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise InvalidSpecError(f"vertex count must be non-negative, got {self.n}")
        raw = list(self.edges)
        normed = []
        for edge in raw:
            u, v = edge
            if u == v:
                raise InvalidSpecError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidSpecError(f"edge {edge} has an endpoint outside 0..{self.n - 1}")
            normed.append(norm_edge(u, v))
        if len(set(normed)) != len(normed):
            raise InvalidSpecError("duplicate edge in edge list")
        object.__setattr__(self, "edges", frozenset(normed))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset(combinations(range(n), 2)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, frozenset(norm_edge(i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        """Path on n vertices (n-1 edges); path(3) is P_3."""
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def friendship(cls, k: int) -> "Graph":
        """k triangles sharing the single vertex 0."""
        edges = set()
        for i in range(k):
            a, b = 2 * i + 1, 2 * i + 2
            edges.update({(0, a), (0, b), (a, b)})
        return cls(2 * k + 1, frozenset(edges))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        labels = {node: i for i, node in enumerate(sorted(g.nodes()))}
        return cls(len(labels), frozenset(norm_edge(labels[u], labels[v]) for u, v in g.edges()))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.sorted_edges)
        return g

    @cached_property
    def sorted_edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def min_degree(self) -> int:
        return min((len(s) for s in self.adjacency), default=0)

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edges | {norm_edge(u, v)})

    def without_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edges - {norm_edge(u, v)})

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph relabelled to 0..len(vertices)-1 in the given order."""
        index = {x: i for i, x in enumerate(vertices)}
        return Graph(len(vertices), frozenset(
            norm_edge(index[u], index[v]) for u, v in self.edges if u in index and v in index
        ))

    def triangles(self) -> List[Tuple[int, int, int]]:
        found = []
        for u, v in self.sorted_edges:
            for w in sorted(self.adjacency[u] & self.adjacency[v]):
                if w > v:
                    found.append((u, v, w))
        return found


@dataclass(frozen=True)
class BlowupSpec:
    """Multiplicity m(x) >= 1 for every base vertex x (index = vertex)."""
    m: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))
        for x, mult in enumerate(self.m):
            if not isinstance(mult, int) or mult < 1:
                raise InvalidSpecError(f"multiplicity of vertex {x} must be a positive integer, got {mult!r}")

    @classmethod
    def uniform(cls, n: int, t: int) -> "BlowupSpec":
        return cls(tuple([t] * n))

    @classmethod
    def from_mapping(cls, G: Graph, mapping: Mapping[int, int]) -> "BlowupSpec":
        missing = [x for x in range(G.n) if x not in mapping]
        if missing:
            raise InvalidSpecError(f"blowup spec misses vertices {missing}")
        extra = [x for x in mapping if not (isinstance(x, int) and 0 <= x < G.n)]
        if extra:
            raise InvalidSpecError(f"blowup spec names vertices outside the graph: {extra}")
        return cls(tuple(mapping[x] for x in range(G.n)))

    def offsets(self) -> Tuple[int, ...]:
        out, total = [], 0
        for mult in self.m:
            out.append(total)
            total += mult
        return tuple(out)

    def check_domain(self, G: Graph):
        if len(self.m) != G.n:
            raise InvalidSpecError(f"blowup spec covers {len(self.m)} vertices, graph has {G.n}")


SpecLike = Union[BlowupSpec, Mapping[int, int]]


def _coerce_spec(G: Graph, spec: SpecLike) -> BlowupSpec:
    if isinstance(spec, BlowupSpec):
        spec.check_domain(G)
        return spec
    return BlowupSpec.from_mapping(G, spec)


@dataclass(frozen=True)
class BlownGraph:
    """G[{m(x)}] with origin[v] = (base vertex, 1-based index)."""
    base: Graph
    spec: BlowupSpec
    graph: Graph
    origin: Tuple[Tuple[int, int], ...]

    @cached_property
    def _offsets(self) -> Tuple[int, ...]:
        return self.spec.offsets()

    def vertex(self, x: int, i: int) -> int:
        """Blown vertex x_i (i is 1-based)."""
        return self._offsets[x] + i - 1

    def part(self, x: int) -> Tuple[int, ...]:
        start = self._offsets[x]
        return tuple(range(start, start + self.spec.m[x]))


@dataclass(frozen=True)
class _Colouring:
    r: int
    assignment: Mapping[Edge, int] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.r < 1:
            raise InvalidSpecError(f"colour count must be at least 1, got {self.r}")
        normed: Dict[Edge, int] = {}
        for (u, v), colour in self.assignment.items():
            edge = norm_edge(u, v)
            if edge in normed:
                raise InvalidSpecError(f"edge {edge} coloured twice")
            if not (0 <= colour < self.r):
                raise InvalidSpecError(f"colour {colour} on edge {edge} is outside 0..{self.r - 1}")
            normed[edge] = colour
        object.__setattr__(self, "assignment", normed)

    def __getitem__(self, edge: Edge) -> int:
        return self.assignment[norm_edge(*edge)]

    def get(self, edge: Edge, default=None):
        return self.assignment.get(norm_edge(*edge), default)

    def __contains__(self, edge: Edge) -> bool:
        return norm_edge(*edge) in self.assignment

    def __len__(self) -> int:
        return len(self.assignment)

    def items(self) -> List[Tuple[Edge, int]]:
        return sorted(self.assignment.items())

    def colour_counts(self) -> List[int]:
        counts = [0] * self.r
        for colour in self.assignment.values():
            counts[colour] += 1
        return counts


@dataclass(frozen=True)
class EdgeColouring(_Colouring):
    """Total colouring of a host graph's edges with colours 0..r-1 (0 = red, 1 = blue)."""

    def check_total(self, G: Graph):
        keys = set(self.assignment)
        if keys != G.edges:
            missing = sorted(G.edges - keys)
            extra = sorted(keys - G.edges)
            raise InvalidSpecError(
                f"colouring is not total on the host graph (missing {missing[:5]}, foreign {extra[:5]})"
            )

    def recoloured(self, updates: Mapping[Edge, int]) -> "EdgeColouring":
        merged = dict(self.assignment)
        for edge, colour in updates.items():
            merged[norm_edge(*edge)] = colour
        return EdgeColouring(self.r, merged)


@dataclass(frozen=True)
class PartialColouring(_Colouring):
    """Colouring of a subset of the host edges; absent edges are uncoloured."""

    def check_within(self, G: Graph):
        foreign = sorted(set(self.assignment) - G.edges)
        if foreign:
            raise InvalidSpecError(f"partial colouring names non-edges {foreign[:5]}")

    def restricted(self, edges: Iterable[Edge]) -> "PartialColouring":
        keep = {norm_edge(*e) for e in edges}
        return PartialColouring(self.r, {e: c for e, c in self.assignment.items() if e in keep})


@dataclass(frozen=True)
class CopyEmbedding:
    """A copy of H in G: its host edge set plus one representative vertex map."""
    edge_set: FrozenSet[Edge]
    vertex_map: Tuple[int, ...]

    @property
    def key(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edge_set))

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(self.vertex_map)


def blowup(G: Graph, spec: SpecLike) -> BlownGraph:
    """
    Build G[{m(x)}] with its origin map.

    Blown vertices are ordered by base vertex, then by index, so x_i gets
    id offset(x) + i - 1.
    """
    spec = _coerce_spec(G, spec)
    offsets = spec.offsets()
    origin = tuple((x, i) for x in range(G.n) for i in range(1, spec.m[x] + 1))
    edges = []
    for u, v in G.sorted_edges:
        for a in range(spec.m[u]):
            for b in range(spec.m[v]):
                edges.append((offsets[u] + a, offsets[v] + b))
    return BlownGraph(G, spec, Graph(len(origin), frozenset(edges)), origin)


def lift_colouring(G: Graph, c: EdgeColouring, spec: SpecLike) -> EdgeColouring:
    """Give every blown edge the colour of its base edge."""
    if not isinstance(c, EdgeColouring):
        raise InvalidSpecError("lift_colouring needs a total colouring, got a partial one")
    c.check_total(G)
    spec = _coerce_spec(G, spec)
    offsets = spec.offsets()
    lifted = {}
    for (u, v), colour in c.items():
        for a in range(spec.m[u]):
            for b in range(spec.m[v]):
                lifted[(offsets[u] + a, offsets[v] + b)] = colour
    return EdgeColouring(c.r, lifted)


def enumerate_copies(H: Graph, G: Graph) -> List[CopyEmbedding]:
    """
    All copies of H in G, one per distinct edge set.

    Returns:
        Embeddings sorted lexicographically by edge set; each keeps the
        smallest vertex map among those producing its edge set.
    """
    if H.n > G.n:
        return []
    best: Dict[Tuple[Edge, ...], Tuple[int, ...]] = {}
    matcher = GraphMatcher(G.to_networkx(), H.to_networkx())
    for mapping in matcher.subgraph_monomorphisms_iter():
        inverse = [0] * H.n
        for g_vertex, h_vertex in mapping.items():
            inverse[h_vertex] = g_vertex
        vmap = tuple(inverse)
        key = tuple(sorted(norm_edge(vmap[a], vmap[b]) for a, b in H.edges))
        if key not in best or vmap < best[key]:
            best[key] = vmap
    return [CopyEmbedding(frozenset(key), best[key]) for key in sorted(best)]


def colour_neighbourhoods(graph: Graph, c: EdgeColouring) -> List[List[set]]:
    """nbrs[colour][v] = neighbours of v joined to it in that colour."""
    nbrs = [[set() for _ in range(graph.n)] for _ in range(c.r)]
    for (u, v), colour in c.items():
        nbrs[colour][u].add(v)
        nbrs[colour][v].add(u)
    return nbrs


def _extend_selection(order, copy_adj, parts, nbrs, t, chosen) -> Iterator[Dict[int, Tuple[int, ...]]]:
    depth = len(chosen)
    if depth == len(order):
        yield dict(chosen)
        return
    x = order[depth]
    candidates = [
        w for w in parts[x]
        if all(set(chosen[y]) <= nbrs[w] for y in copy_adj[x] if y in chosen)
    ]
    for subset in combinations(candidates, t):
        chosen[x] = subset
        yield from _extend_selection(order, copy_adj, parts, nbrs, t, chosen)
        del chosen[x]


def iter_mono_canonical(blown: BlownGraph, c: EdgeColouring, H: Graph, t: int,
                        copies: Optional[Sequence[CopyEmbedding]] = None
                        ) -> Iterator[Tuple[int, CopyEmbedding, Tuple[Tuple[int, Tuple[int, ...]], ...]]]:
    """
    Yield every monochromatic canonical H[t] in blown.graph under c.

    Order: base copies lexicographically, colours ascending, then t-subsets
    per part in lexicographic order. Each base edge's colour class must
    contain a K_{t,t} before any subset is tried.

    Args:
        blown: The blown-up host
        c: Total colouring of blown.graph
        H: Pattern graph
        t: Blowup size of the pattern
        copies: Restrict to these base copies (default: every copy of H)

    Yields:
        (colour, base copy, ((base vertex, selected blown vertices), ...))
    """
    if t < 1:
        raise InvalidSpecError(f"t must be positive, got {t}")
    if blown.spec.m and t > min(blown.spec.m):
        raise InvalidSpecError(f"t={t} exceeds the smallest multiplicity {min(blown.spec.m)}")
    c.check_total(blown.graph)

    nbrs = colour_neighbourhoods(blown.graph, c)
    if copies is None:
        copies = enumerate_copies(H, blown.base)

    for copy in copies:
        base_edges = copy.key
        involved = sorted({x for e in base_edges for x in e})
        parts = {x: blown.part(x) for x in involved}
        copy_adj = {x: set() for x in involved}
        for x, y in base_edges:
            copy_adj[x].add(y)
            copy_adj[y].add(x)
        for colour in range(c.r):
            cn = nbrs[colour]
            feasible = all(
                find_biclique(parts[x], parts[y], {u: cn[u] for u in parts[x]}, t, t) is not None
                for x, y in base_edges
            )
            if not feasible:
                continue
            for chosen in _extend_selection(involved, copy_adj, parts, cn, t, {}):
                yield colour, copy, tuple((x, chosen[x]) for x in involved)


def find_mono_canonical(blown: BlownGraph, c: EdgeColouring, H: Graph, t: int,
                        copies: Optional[Sequence[CopyEmbedding]] = None):
    """First monochromatic canonical H[t] in the order of iter_mono_canonical, or None."""
    return next(iter_mono_canonical(blown, c, H, t, copies), None)


def canonical_copy_constraints(blown: BlownGraph, H: Graph, t: int) -> List[FrozenSet[Edge]]:
    """Edge sets of every canonical H[t] in blown.graph."""
    constraints = []
    for copy in enumerate_copies(H, blown.base):
        base_edges = copy.key
        involved = sorted({x for e in base_edges for x in e})
        options = [list(combinations(blown.part(x), t)) for x in involved]
        for selection in product(*options):
            chosen = dict(zip(involved, selection))
            constraints.append(frozenset(
                norm_edge(a, b) for x, y in base_edges for a in chosen[x] for b in chosen[y]
            ))
    return constraints


def isomorphism_key(G: Graph) -> Tuple[int, int, str]:
    """Vertex count, edge count and Weisfeiler-Lehman hash; isomorphic graphs share it."""
    return G.n, len(G.edges), nx.weisfeiler_lehman_graph_hash(G.to_networkx())


def is_isomorphic(G1: Graph, G2: Graph) -> bool:
    if isomorphism_key(G1) != isomorphism_key(G2):
        return False
    return nx.is_isomorphic(G1.to_networkx(), G2.to_networkx())


def _permutation_order(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        if length:
            order = lcm(order, length)
    return order


def largest_cyclic_automorphism(G: Graph, limit: int = 5040) -> Tuple[int, ...]:
    """
    Automorphism of G of largest order among the first `limit` that networkx yields.

    Returns the identity when G has no other automorphism.
    """
    g = G.to_networkx()
    best, best_order = tuple(range(G.n)), 1
    for mapping in islice(GraphMatcher(g, g).isomorphisms_iter(), limit):
        perm = tuple(mapping[x] for x in range(G.n))
        order = _permutation_order(perm)
        if order > best_order:
            best, best_order = perm, order
    return best


def blown_edge_orbits(blown: BlownGraph, perm: Sequence[int]) -> Dict[Edge, int]:
    """
    Orbit index of every edge of blown.graph under x_i -> perm(x)_i.

    Orbits are numbered in the order of their smallest edge.
    """
    m = blown.spec.m
    if any(m[x] != m[perm[x]] for x in range(blown.base.n)):
        raise InvalidSpecError("automorphism moves a part onto one of a different size")
    image = [blown.vertex(perm[x], i) for x, i in blown.origin]
    orbit_of: Dict[Edge, int] = {}
    count = 0
    for edge in blown.graph.sorted_edges:
        if edge in orbit_of:
            continue
        e = edge
        while e not in orbit_of:
            orbit_of[e] = count
            e = norm_edge(image[e[0]], image[e[1]])
        count += 1
    return orbit_of
