"""
Two-stage recolouring that removes monochromatic canonical K_3[2] from G[s].

Stage one repeatedly recolours, inside G, one pivot edge of every
monochromatic triangle. Stage two replays those recolourings in G[s], each
step touching fewer blown copies of the pivot than the step before.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

import numpy as np

from errors import DisjointnessViolation, InvalidSpecError, PreconditionError
from graphs import (BLUE, RED, BlowupSpec, CopyEmbedding, Edge, EdgeColouring, Graph,
                    blowup, iter_mono_canonical, lift_colouring, norm_edge)

Triangle = Tuple[int, int, int]

K3 = Graph.complete(3)


def triangle_edges(tri: Triangle) -> Set[Edge]:
    a, b, c = tri
    return {norm_edge(a, b), norm_edge(a, c), norm_edge(b, c)}


@dataclass(frozen=True)
class Overlap:
    first: Triangle
    second: Triangle
    shared: Tuple[Edge, ...]
    reason: str


@dataclass(frozen=True)
class DisjointnessCertificate:
    ok: bool
    violation: Optional[Overlap] = None


@dataclass
class StageOneTrace:
    G: Graph
    e: Edge
    v: int
    s: int
    colourings: List[EdgeColouring]
    recoloured: List[FrozenSet[Edge]]
    triangles: List[List[Triangle]]
    certificate: DisjointnessCertificate = field(default_factory=lambda: DisjointnessCertificate(True))

    @property
    def r(self) -> int:
        return self.colourings[0].r

    def triangle_colours(self) -> List[Set[int]]:
        """Colours of the monochromatic triangles at each step."""
        return [
            {c[norm_edge(tri[0], tri[1])] for tri in tris}
            for c, tris in zip(self.colourings, self.triangles)
        ]

    def is_flat(self) -> bool:
        return all(not tris for tris in self.triangles)


@dataclass
class RecolouringInstance:
    G: Graph
    e: Edge
    v: int
    c0: EdgeColouring
    s: int


def _mono_triangles(triangles: List[Triangle], c: EdgeColouring) -> List[Triangle]:
    return [tri for tri in triangles if len({c[edge] for edge in triangle_edges(tri)}) == 1]


def _overlap_problem(i: int, j: int, shared: Set[Edge], recoloured_i: FrozenSet[Edge], e: Edge) -> Optional[str]:
    """Why triangles from T_i and T_j (j <= i) may not share these edges, or None."""
    if not shared:
        return None
    if i == 0:
        return None if shared == {e} else "triangles through e share more than e"
    if i - j <= 1:
        if len(shared) == 1 and shared <= recoloured_i:
            return None
        return f"steps {j} and {i} may only share one edge recoloured at step {i}"
    return f"steps {j} and {i} are too far apart to share an edge"


def _fail(first, second, shared, reason):
    overlap = Overlap(first, second, tuple(sorted(shared)), reason)
    raise DisjointnessViolation(DisjointnessCertificate(False, overlap))


def _check_step(i, current, recoloured_i, v, generators, history, e):
    for tri in current:
        in_step = triangle_edges(tri) & recoloured_i
        if i > 0 and (v not in tri or len(in_step) != 1):
            source = generators.get(min(in_step)) if in_step else tri
            _fail(tri, source, in_step, f"a step-{i} triangle must contain the pivot and exactly one recoloured edge")

    for pos, tri in enumerate(current):
        mine = triangle_edges(tri)
        earlier = history + [(i, other) for other in current[:pos]]
        for j, other in earlier:
            shared = mine & triangle_edges(other)
            problem = _overlap_problem(i, j, shared, recoloured_i, e)
            if problem:
                _fail(tri, other, shared, problem)


def stage_one(G: Graph, e: Edge, v: int, c0: EdgeColouring, s: int) -> StageOneTrace:
    """
    Run s recolouring steps in G starting from c0.

    Step i recolours, for each triangle of T_{i-1}, its edge at the pivot v
    that was not recoloured at step i-1; the edge takes the cyclically next
    colour. T_i is recomputed from scratch after every step and checked
    against the overlap pattern allowed between T_0..T_i.

    Raises:
        PreconditionError: e not an edge, v not on e, s < 1, c0 not total,
            or c0 has a monochromatic triangle avoiding e
        DisjointnessViolation: two triangles overlap beyond the allowed pattern
    """
    e = norm_edge(*e)
    if e not in G.edges:
        raise PreconditionError(f"{e} is not an edge of G")
    if v not in e:
        raise PreconditionError(f"pivot {v} is not incident to e={e}")
    if s < 1:
        raise PreconditionError(f"step count must be at least 1, got {s}")
    try:
        c0.check_total(G)
    except InvalidSpecError as err:
        raise PreconditionError(f"invalid starting colouring: {err}")
    if c0.r < 2:
        raise PreconditionError("recolouring needs at least two colours")

    all_triangles = G.triangles()
    t0 = _mono_triangles(all_triangles, c0)
    stray = [tri for tri in t0 if e not in triangle_edges(tri)]
    if stray:
        raise PreconditionError(f"c0 has monochromatic triangle {stray[0]} avoiding e={e}")

    trace = StageOneTrace(G, e, v, s, [c0], [frozenset({e})], [t0])
    history: List[Tuple[int, Triangle]] = []
    _check_step(0, t0, trace.recoloured[0], v, {}, history, e)
    history += [(0, tri) for tri in t0]

    for i in range(1, s + 1):
        previous = trace.colourings[-1]
        last_recoloured = trace.recoloured[-1]
        generators: Dict[Edge, Triangle] = {}
        for tri in trace.triangles[-1]:
            target = [edge for edge in sorted(triangle_edges(tri)) if v in edge and edge not in last_recoloured]
            generators.setdefault(target[0], tri)

        updates = {edge: (previous[edge] + 1) % previous.r for edge in generators}
        current_colouring = previous.recoloured(updates)
        recoloured_i = frozenset(generators)
        current = _mono_triangles(all_triangles, current_colouring)

        _check_step(i, current, recoloured_i, v, generators, history, e)
        history += [(i, tri) for tri in current]
        trace.colourings.append(current_colouring)
        trace.recoloured.append(recoloured_i)
        trace.triangles.append(current)
    return trace


def stage_two_steps(trace: StageOneTrace) -> Iterator[EdgeColouring]:
    """
    Yield c'_0, ..., c'_s on G[s].

    c'_0 lifts c_0; step i gives the edges from the pivot copies
    v_{i+1}..v_s to the blowup of u the colour c_i(uv), for each uv in E_i.
    """
    spec = BlowupSpec.uniform(trace.G.n, trace.s)
    offsets = spec.offsets()
    current = lift_colouring(trace.G, trace.colourings[0], spec)
    yield current

    s, v = trace.s, trace.v
    for i in range(1, s + 1):
        colouring = trace.colourings[i]
        updates = {}
        for edge in sorted(trace.recoloured[i]):
            u = edge[0] if edge[1] == v else edge[1]
            for row in range(i + 1, s + 1):
                pivot_copy = offsets[v] + row - 1
                for b in range(s):
                    updates[norm_edge(pivot_copy, offsets[u] + b)] = colouring[edge]
        if updates:
            current = current.recoloured(updates)
        yield current


def stage_two(trace: StageOneTrace) -> EdgeColouring:
    final = None
    for final in stage_two_steps(trace):
        pass
    return final


@dataclass
class RecolouringReport:
    passed: bool
    copies: List[dict]


def _describe(colour, copy, selection) -> dict:
    return {
        "colour": colour,
        "triangle": list(sorted(copy.vertex_map)),
        "selection": {str(x): list(chosen) for x, chosen in selection},
    }


def verify_recolouring(G: Graph, s: int, c: EdgeColouring) -> RecolouringReport:
    """List every monochromatic canonical K_3[2] of G[s] under c; empty means pass."""
    blown = blowup(G, BlowupSpec.uniform(G.n, s))
    c.check_total(blown.graph)
    if s < 2:
        return RecolouringReport(True, [])
    found = [_describe(*hit) for hit in iter_mono_canonical(blown, c, K3, 2)]
    return RecolouringReport(not found, found)


@dataclass
class StepCheck:
    step: int
    passed: bool
    offending: List[dict]


@dataclass
class ClaimReport:
    steps: List[StepCheck]

    @property
    def passed(self) -> bool:
        return all(step.passed for step in self.steps)


def _triangle_copy(tri: Triangle) -> CopyEmbedding:
    return CopyEmbedding(frozenset(triangle_edges(tri)), tuple(tri))


def verify_claim_per_step(trace: StageOneTrace) -> ClaimReport:
    """For each step i, no T in T_{i-1} keeps a monochromatic canonical K_3[2] in T[s] under c'_i."""
    blown = blowup(trace.G, BlowupSpec.uniform(trace.G.n, trace.s))
    colourings = list(stage_two_steps(trace))
    steps = []
    for i in range(1, trace.s + 1):
        offending = []
        targets = trace.triangles[i - 1]
        if trace.s >= 2 and targets:
            copies = [_triangle_copy(tri) for tri in targets]
            offending = [_describe(*hit) for hit in iter_mono_canonical(blown, colourings[i], K3, 2, copies)]
        steps.append(StepCheck(i, not offending, offending))
    return ClaimReport(steps)


def hub_path_instance(s: int = 4) -> RecolouringInstance:
    """
    Pivot v joined to every vertex of the path x-y-u-w, with e = vx.

    Vertices: v=0, x=1, y=2, u=3, w=4. The recolouring walks vy, vu, vw
    at steps 1, 2, 3 and stops.
    """
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]
    colours = {
        (0, 1): RED, (0, 2): RED, (1, 2): RED,
        (0, 3): BLUE, (2, 3): BLUE,
        (3, 4): RED, (0, 4): RED,
    }
    return RecolouringInstance(Graph(5, frozenset(edges)), (0, 1), 0, EdgeColouring(2, colours), s)


def triangle_tree_instance(tree_size: int, seed: int, s: int) -> RecolouringInstance:
    """
    Cone over a random tree: hub 0 joined to every vertex of a tree on 1..tree_size.

    Every triangle is the hub plus a tree edge, so the triangle copy
    hypergraph has no cycles. The pivot is the hub and e = (0, 1). The
    colouring makes triangle (0, 1, 2) red and leaves every triangle that
    avoids e non-monochromatic.
    """
    if tree_size < 2:
        raise InvalidSpecError(f"tree needs at least 2 vertices, got {tree_size}")
    rng = np.random.default_rng(seed)
    parent = {k: int(rng.integers(1, k)) for k in range(2, tree_size + 1)}

    edges = [(0, k) for k in range(1, tree_size + 1)] + [(p, k) for k, p in parent.items()]
    colours = {(0, 1): RED, (0, 2): RED, (1, 2): RED}
    for k in range(3, tree_size + 1):
        p = parent[k]
        while True:
            spoke, rim = (int(x) for x in rng.integers(0, 2, size=2))
            if p == 1 or len({colours[(0, p)], spoke, rim}) > 1:
                break
        colours[(0, k)] = spoke
        colours[norm_edge(p, k)] = rim
    G = Graph(tree_size + 1, frozenset(edges))
    return RecolouringInstance(G, (0, 1), 0, EdgeColouring(2, colours), s)
