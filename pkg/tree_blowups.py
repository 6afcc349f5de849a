"""
Tree blowups: possible monochromatic copies under partial colourings,
f-coherence of blowup colourings, the extension-swapping witness search for
copies of a subtree sharing a root, and blowup Ramsey tables for trees over
several ground graphs.
"""
import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import pandas as pd

from arrowing import BlowupRamseyQuery, arrows, blowup_ramsey_search
from bicliques import find_biclique
from errors import InconclusiveError, InvalidSpecError, PreconditionError
from graphs import (BlowupSpec, CopyEmbedding, Edge, EdgeColouring, Graph, PartialColouring, blowup,
                    colour_neighbourhoods, enumerate_copies, norm_edge)
from workers import parallel_map

TABLE_COLUMNS = ["graph", "vertices", "edges", "arrows", "value", "status"]


def _require_tree(T: Graph):
    if T.n == 0 or not nx.is_tree(T.to_networkx()):
        raise InvalidSpecError(f"pattern on {T.n} vertices with {len(T.edges)} edges is not a tree")


def _possible(c: PartialColouring, edges, colour: int) -> bool:
    return all(c.get(e, colour) == colour for e in edges)


def possible_monochromatic_copies(T: Graph, G: Graph, c: PartialColouring, colour: int) -> List[CopyEmbedding]:
    """Copies of the tree T in G whose coloured edges all carry `colour`."""
    _require_tree(T)
    c.check_within(G)
    return [cp for cp in enumerate_copies(T, G) if _possible(c, cp.edge_set, colour)]


@dataclass
class CoherenceSpec:
    c: PartialColouring
    spec: BlowupSpec
    f: Dict[int, int]

    def __post_init__(self):
        keys = sorted(self.f)
        for m in set(self.spec.m):
            if m not in self.f:
                raise InvalidSpecError(f"f has no value for multiplicity {m}")
        for m in keys:
            if not 1 <= self.f[m] <= m:
                raise InvalidSpecError(f"f({m}) = {self.f[m]} must lie in 1..{m}")
        for low, high in zip(keys, keys[1:]):
            if self.f[low] > self.f[high]:
                raise InvalidSpecError(f"f is not non-decreasing: f({low})={self.f[low]} > f({high})={self.f[high]}")


def is_f_coherent(G: Graph, cprime: EdgeColouring, cs: CoherenceSpec) -> Tuple[bool, Optional[dict]]:
    """
    Check that no coloured base edge xy hides an opposite-colour
    K_{f(m(x)),f(m(y))} between the blown parts of x and y.

    Returns:
        (True, None), or (False, witness) for the first offending edge in
        lexicographic order
    """
    if cs.c.r != 2 or cprime.r != 2:
        raise PreconditionError("f-coherence is defined for 2-colourings")
    cs.c.check_within(G)
    blown = blowup(G, cs.spec)
    cprime.check_total(blown.graph)
    nbrs = colour_neighbourhoods(blown.graph, cprime)

    for x, y in G.sorted_edges:
        colour = cs.c.get((x, y))
        if colour is None:
            continue
        opposite = 1 - colour
        a, b = cs.f[cs.spec.m[x]], cs.f[cs.spec.m[y]]
        left, right = blown.part(x), blown.part(y)
        found = find_biclique(left, right, {u: nbrs[opposite][u] for u in left}, a, b)
        if found is not None:
            return False, {"edge": [x, y], "colour": opposite,
                           "left": list(found[0]), "right": list(found[1])}
    return True, None


@dataclass
class Tree2Instance:
    """
    Copies T_1..T_k of a tree T in G, each extending a copy T'_i of the
    subtree on `sub` vertices, all sending the attachment root x to z.

    copies[i][a] is the G-vertex of T-vertex a in T_i; T'_i is its
    restriction to `sub`.
    """
    T: Graph
    sub: Tuple[int, ...]
    attach: Edge
    G: Graph
    c: PartialColouring
    z: int
    copies: Tuple[Tuple[int, ...], ...] = field(default_factory=tuple)

    def sub_edges(self) -> List[Edge]:
        inside = set(self.sub)
        return [e for e in self.T.sorted_edges if e[0] in inside and e[1] in inside]


def _image(T: Graph, vmap: Sequence[int], edges=None) -> frozenset:
    edges = T.sorted_edges if edges is None else edges
    return frozenset(norm_edge(vmap[a], vmap[b]) for a, b in edges)


def _maps_to_copy(T: Graph, G: Graph, vmap: Sequence[int]) -> bool:
    return (len(set(vmap)) == T.n and all(0 <= w < G.n for w in vmap)
            and all(G.has_edge(vmap[a], vmap[b]) for a, b in T.edges))


def _possible_colours(c: PartialColouring, edges) -> set:
    return {colour for colour in range(c.r) if _possible(c, edges, colour)}


def validate_tree2_instance(inst: Tree2Instance):
    _require_tree(inst.T)
    sub = set(inst.sub)
    if not sub or any(not 0 <= a < inst.T.n for a in sub):
        raise InvalidSpecError(f"subtree vertices {sorted(sub)} are not vertices of T")
    if not nx.is_connected(inst.T.to_networkx().subgraph(sub)):
        raise InvalidSpecError("subtree vertices do not span a connected subtree")
    x, y = inst.attach
    if not inst.T.has_edge(x, y) or x not in sub or y in sub:
        raise InvalidSpecError(f"attachment {inst.attach} must be a T-edge leaving the subtree at x={x}")
    inst.c.check_within(inst.G)

    seen = set()
    sub_edges = inst.sub_edges()
    for i, vmap in enumerate(inst.copies, start=1):
        if len(vmap) != inst.T.n or not _maps_to_copy(inst.T, inst.G, vmap):
            raise InvalidSpecError(f"T_{i} is not a copy of T in G")
        if vmap[x] != inst.z:
            raise InvalidSpecError(f"T'_{i} sends x={x} to {vmap[x]}, not z={inst.z}")
        key = _image(inst.T, vmap, sub_edges) if sub_edges else tuple(vmap[a] for a in inst.sub)
        if key in seen:
            raise InvalidSpecError(f"T'_{i} repeats an earlier copy")
        seen.add(key)
        if not _possible_colours(inst.c, _image(inst.T, vmap)):
            raise InvalidSpecError(f"T_{i} is not a possible monochromatic copy")


def swapped_copy(inst: Tree2Instance, i: int, j: int) -> Tuple[int, ...]:
    """T'_i united with T_j minus T'_j, as a vertex map of T (0-based i, j)."""
    sub = set(inst.sub)
    return tuple(inst.copies[i][a] if a in sub else inst.copies[j][a] for a in range(inst.T.n))


def lemma_tree2_witness(inst: Tree2Instance) -> Optional[Tuple[int, int]]:
    """
    First pair i < j (1-based, lexicographic) such that T'_i with the
    extension of T_j is a copy of T, and it, T_i and T_j are possible
    monochromatic copies of one common colour.
    """
    validate_tree2_instance(inst)
    k = len(inst.copies)
    allowed = [_possible_colours(inst.c, _image(inst.T, vmap)) for vmap in inst.copies]
    for i, j in combinations(range(k), 2):
        shared = allowed[i] & allowed[j]
        if not shared:
            continue
        joined = swapped_copy(inst, i, j)
        if not _maps_to_copy(inst.T, inst.G, joined):
            continue
        if shared & _possible_colours(inst.c, _image(inst.T, joined)):
            return i + 1, j + 1
    return None


def tree_blowup_ramsey_table(Gs: Sequence[Graph], T: Graph, r: int, t: int, n_max: int,
                             workers: int = 1, names: Optional[Sequence[str]] = None,
                             node_budget: Optional[int] = None) -> pd.DataFrame:
    """
    B(G -> T; t) for every ground graph G, one row each in input order.

    A ground graph that does not arrow T is marked "not applicable"; an
    exhausted node budget is marked "inconclusive".
    """
    _require_tree(T)
    names = list(names) if names is not None else [f"G{i + 1}" for i in range(len(Gs))]
    if len(names) != len(Gs):
        raise InvalidSpecError(f"got {len(names)} names for {len(Gs)} graphs")

    def row(item):
        name, G = item
        out = {"graph": name, "vertices": G.n, "edges": len(G.edges), "arrows": None, "value": None}
        try:
            if not arrows(G, T, r, node_budget).arrows:
                out.update(arrows=False, status="not applicable")
                return out
            out["arrows"] = True
            value = blowup_ramsey_search(BlowupRamseyQuery(G, T, r, t, n_max), node_budget).value
            out.update(value=value, status="ok" if value is not None else "none")
        except InconclusiveError as err:
            print(f"⚠️  {name}: {err}", file=sys.stderr)
            out["status"] = "inconclusive"
        return out

    rows = parallel_map(row, list(zip(names, Gs)), workers)
    frame = pd.DataFrame(rows, columns=TABLE_COLUMNS)
    for column in ("arrows", "value"):
        frame[column] = pd.Series([entry[column] for entry in rows], dtype="object")
    return frame
