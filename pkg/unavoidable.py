"""
Unavoidable colour patterns in edge-coloured cliques.

An r-minimal graph is a vertex- and edge-coloured clique spanning all r
colours in which no proper induced subgraph does. The (r,t)-unavoidable
family consists of the t-blowups of all r-minimal graphs; detection looks
for an edge-colour-preserving embedding of a family member into a colouring
of K_n.
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from errors import InvalidSpecError, PreconditionError
from graphs import Edge, EdgeColouring, Graph, norm_edge
from workers import parallel_map


@dataclass(frozen=True)
class ColouredClique:
    """Complete graph on 0..k-1 with vertex colours and pair colours (pairs in combinations order)."""
    k: int
    r: int
    vcol: Tuple[int, ...]
    ecol: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vcol", tuple(self.vcol))
        object.__setattr__(self, "ecol", tuple(self.ecol))
        if len(self.vcol) != self.k:
            raise InvalidSpecError(f"expected {self.k} vertex colours, got {len(self.vcol)}")
        if len(self.ecol) != self.k * (self.k - 1) // 2:
            raise InvalidSpecError(f"expected {self.k * (self.k - 1) // 2} pair colours, got {len(self.ecol)}")
        for colour in self.vcol + self.ecol:
            if not 0 <= colour < self.r:
                raise InvalidSpecError(f"colour {colour} outside 0..{self.r - 1}")

    @classmethod
    def from_pairs(cls, k: int, r: int, vcol: Sequence[int], pairs: Mapping[Edge, int]) -> "ColouredClique":
        try:
            ecol = tuple(pairs[(u, v)] for u, v in combinations(range(k), 2))
        except KeyError as e:
            raise InvalidSpecError(f"pair {e.args[0]} has no colour")
        return cls(k, r, tuple(vcol), ecol)

    @cached_property
    def _pair_index(self) -> Dict[Edge, int]:
        return {pair: i for i, pair in enumerate(combinations(range(self.k), 2))}

    def colour(self, u: int, v: int) -> int:
        return self.ecol[self._pair_index[norm_edge(u, v)]]

    def colours_spanned(self, vertices: Optional[Sequence[int]] = None) -> Set[int]:
        vertices = range(self.k) if vertices is None else vertices
        spanned = {self.vcol[x] for x in vertices}
        spanned.update(self.colour(u, v) for u, v in combinations(sorted(vertices), 2))
        return spanned

    def induced(self, vertices: Sequence[int]) -> "ColouredClique":
        return ColouredClique(
            len(vertices), self.r,
            tuple(self.vcol[x] for x in vertices),
            tuple(self.colour(vertices[a], vertices[b]) for a, b in combinations(range(len(vertices)), 2)),
        )

    def edge_colouring(self) -> EdgeColouring:
        return EdgeColouring(self.r, dict(zip(combinations(range(self.k), 2), self.ecol)))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for x, colour in enumerate(self.vcol):
            g.add_node(x, colour=colour)
        for (u, v), colour in zip(combinations(range(self.k), 2), self.ecol):
            g.add_edge(u, v, colour=colour)
        return g


def canonical_clique(P: ColouredClique, quotient_colours: bool = False) -> Tuple[ColouredClique, Tuple[int, ...]]:
    """
    Canonical representative under vertex relabelling (and colour renaming
    when quotient_colours is set).

    Returns:
        (representative, order) where representative vertex i is P's vertex order[i]
    """
    renamings = list(permutations(range(P.r))) if quotient_colours else [tuple(range(P.r))]
    best_key = None
    best = None
    for order in permutations(range(P.k)):
        for rename in renamings:
            vcol = tuple(rename[P.vcol[x]] for x in order)
            ecol = tuple(rename[P.colour(order[a], order[b])] for a, b in combinations(range(P.k), 2))
            key = (vcol, ecol)
            if best_key is None or key < best_key:
                best_key, best = key, order
    return ColouredClique(P.k, P.r, best_key[0], best_key[1]), best


def is_r_minimal(P: ColouredClique, r: int) -> bool:
    """
    P spans exactly the colours 0..r-1 and no proper induced subgraph spans
    all r. Spanning is monotone, so only the (k-1)-vertex subgraphs are checked.
    """
    spanned = P.colours_spanned()
    if spanned != set(range(r)):
        return False
    return all(
        len(P.colours_spanned(rest)) < r for rest in combinations(range(P.k), P.k - 1)
    ) if P.k > 1 else True


def _owner_functions(k: int, r: int):
    """Non-decreasing maps vertex -> owned colour using each colour at most twice."""
    def extend(prefix, low):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for colour in range(low, r):
            if prefix.count(colour) < 2:
                prefix.append(colour)
                yield from extend(prefix, colour)
                prefix.pop()
    yield from extend([], 0)


def enumerate_r_minimal(r: int) -> List[ColouredClique]:
    """
    All r-minimal graphs up to colour-preserving isomorphism, sorted by
    (k, canonical colours).

    Deleting any vertex x of an r-minimal graph loses some colour, which is
    therefore seen only at x or on edges at x; call it owned by x. A colour
    owned by two vertices sits only on their joining edge, so no colour has
    three owners and k <= 2r. Generation runs over owner maps (vertices
    sorted by owned colour) and, for each, over the colourings those
    ownerships permit.
    """
    if r < 1:
        raise InvalidSpecError(f"r must be at least 1, got {r}")
    found: Dict[Tuple, ColouredClique] = {}
    for k in range(1, 2 * r + 1):
        pairs = list(combinations(range(k), 2))
        for owner in _owner_functions(k, r):
            owners = {colour: {x for x in range(k) if owner[x] == colour} for colour in range(r)}
            vertex_options = [
                [col for col in range(r) if owners[col] <= {x}] for x in range(k)
            ]
            pair_options = [
                [col for col in range(r) if owners[col] <= {u, v}] for u, v in pairs
            ]
            if any(not opts for opts in vertex_options + pair_options):
                continue
            for vcol in product(*vertex_options):
                for ecol in product(*pair_options):
                    P = ColouredClique(k, r, vcol, ecol)
                    if not is_r_minimal(P, r):
                        continue
                    canon, _ = canonical_clique(P)
                    found.setdefault((canon.k, canon.vcol, canon.ecol), canon)
    return [found[key] for key in sorted(found)]


def coloured_blowup(P: ColouredClique, t: int) -> ColouredClique:
    """Vertex x becomes a t-clique in its own colour; pair xy becomes K_{t,t} in colour(x, y)."""
    if t < 1:
        raise InvalidSpecError(f"t must be at least 1, got {t}")
    k = P.k * t
    vcol = tuple(P.vcol[v // t] for v in range(k))
    ecol = tuple(
        P.vcol[u // t] if u // t == v // t else P.colour(u // t, v // t)
        for u, v in combinations(range(k), 2)
    )
    return ColouredClique(k, P.r, vcol, ecol)


@dataclass(frozen=True)
class UnavoidableFamily:
    r: int
    t: int
    members: Tuple[ColouredClique, ...]
    sources: Tuple[ColouredClique, ...]


def _degree_signature(P: ColouredClique) -> List[Tuple[int, ...]]:
    counts = [[0] * P.r for _ in range(P.k)]
    for (u, v), colour in zip(combinations(range(P.k), 2), P.ecol):
        counts[u][colour] += 1
        counts[v][colour] += 1
    return sorted(tuple(row) for row in counts)


def _same_edge_colouring(a: ColouredClique, b: ColouredClique) -> bool:
    if a.k != b.k or _degree_signature(a) != _degree_signature(b):
        return False
    return nx.is_isomorphic(
        a.to_networkx(), b.to_networkx(),
        edge_match=lambda x, y: x["colour"] == y["colour"],
    )


def unavoidable_family(r: int, t: int) -> UnavoidableFamily:
    """F^r_t: t-blowups of every r-minimal graph, deduplicated by edge-coloured isomorphism."""
    if t < 2:
        raise PreconditionError(f"(r,t)-unavoidable patterns need t >= 2, got t={t}")
    members: List[ColouredClique] = []
    sources: List[ColouredClique] = []
    for P in enumerate_r_minimal(r):
        blown = coloured_blowup(P, t)
        if any(_same_edge_colouring(blown, other) for other in members):
            continue
        members.append(blown)
        sources.append(P)
    return UnavoidableFamily(r, t, tuple(members), tuple(sources))


class ColourMatrix:
    """Colouring of K_n as a matrix plus one neighbourhood bitset per colour and vertex."""

    def __init__(self, n: int, r: int, rows: List[List[int]]):
        self.n = n
        self.r = r
        self.rows = rows
        self.nbr = [[0] * n for _ in range(r)]
        for u in range(n):
            for v in range(n):
                if u != v:
                    self.nbr[rows[u][v]][u] |= 1 << v

    @classmethod
    def from_colouring(cls, c: EdgeColouring, n: Optional[int] = None, r: Optional[int] = None) -> "ColourMatrix":
        if n is None:
            n = 1 + max((max(e) for e, _ in c.items()), default=-1)
        c.check_total(Graph.complete(n))
        r = c.r if r is None else r
        if c.r > r:
            raise InvalidSpecError(f"colouring uses {c.r} colours but r={r}")
        rows = [[-1] * n for _ in range(n)]
        for (u, v), colour in c.items():
            rows[u][v] = rows[v][u] = colour
        return cls(n, r, rows)

    def colour(self, u: int, v: int) -> int:
        return self.rows[u][v]

    def edge_count(self, colour: int) -> int:
        return sum(bin(mask).count("1") for mask in self.nbr[colour]) // 2

    def colour_graph(self, colour: int) -> Graph:
        return Graph(self.n, frozenset(
            (u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.rows[u][v] == colour
        ))

    def is_monochromatic_clique(self, vertices: Sequence[int]) -> Optional[int]:
        """Colour of the clique on these vertices, or None if it is not monochromatic (or too small)."""
        colours = {self.rows[u][v] for u, v in combinations(vertices, 2)}
        return colours.pop() if len(colours) == 1 else None

    def bipartite_colour(self, left: Sequence[int], right: Sequence[int]) -> Optional[int]:
        colours = {self.rows[u][v] for u in left for v in right}
        return colours.pop() if len(colours) == 1 else None


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _embed(member: ColouredClique, host: ColourMatrix, t: int) -> Optional[Tuple[int, ...]]:
    k = member.k
    if k > host.n:
        return None
    needs = [[0] * host.r for _ in range(k)]
    for a, b in combinations(range(k), 2):
        colour = member.colour(a, b)
        if colour >= host.r:
            return None
        needs[a][colour] += 1
        needs[b][colour] += 1

    everyone = (1 << host.n) - 1
    start = []
    for a in range(k):
        mask = 0
        for h in range(host.n):
            if all(_popcount(host.nbr[col][h]) >= needs[a][col] for col in range(host.r)):
                mask |= 1 << h
        if not mask:
            return None
        start.append(mask)

    image = [0] * k

    def place(a: int, used: int) -> bool:
        if a == k:
            return True
        mask = start[a] & ~used & everyone
        for b in range(a):
            mask &= host.nbr[member.colour(a, b)][image[b]]
        if a > 0 and a // t == (a - 1) // t:
            mask &= ~((1 << (image[a - 1] + 1)) - 1)
        for h in _bits(mask):
            image[a] = h
            if place(a + 1, used | (1 << h)):
                return True
        return False

    return tuple(image) if place(0, 0) else None


@dataclass(frozen=True)
class Detection:
    member: ColouredClique
    member_index: int
    embedding: Tuple[int, ...]


def detect_unavoidable(c: EdgeColouring, r: int, t: int, n: Optional[int] = None,
                       workers: int = 1, family: Optional[UnavoidableFamily] = None) -> Optional[Detection]:
    """
    Find an edge-colour-preserving embedding of some member of F^r_t into c.

    Members are searched in family order (in parallel when workers > 1); the
    first member that embeds wins. Vertex colours are not matched: with
    t >= 2 they are already visible on the edges inside each blown vertex.

    Returns:
        Detection with embedding[i] = host vertex of member vertex i, or None
    """
    if t < 2:
        raise PreconditionError(f"detection needs t >= 2, got t={t}")
    host = ColourMatrix.from_colouring(c, n, r)
    family = family or unavoidable_family(r, t)
    images = parallel_map(lambda member: _embed(member, host, t), family.members, workers)
    for index, (member, image) in enumerate(zip(family.members, images)):
        if image is not None:
            return Detection(member, index, image)
    return None


def embedding_holds(member: ColouredClique, host: ColourMatrix, embedding: Sequence[int]) -> bool:
    if len(set(embedding)) != member.k:
        return False
    return all(
        host.colour(embedding[a], embedding[b]) == member.colour(a, b)
        for a, b in combinations(range(member.k), 2)
    )
