"""
Arrowing decisions: G ->r H, Ramsey-minimality, and blowup Ramsey numbers.
"""
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from colouring_search import ColouringSearch
from config import load_config
from errors import InconclusiveError, InvalidSpecError, PreconditionError, RamseyLabError
from graphs import (BlowupSpec, EdgeColouring, Graph, blowup, blown_edge_orbits, canonical_copy_constraints,
                    enumerate_copies, find_mono_canonical, largest_cyclic_automorphism)
from workers import parallel_map


@dataclass
class ArrowingResult:
    arrows: bool
    witness: Optional[EdgeColouring]
    nodes_explored: int


@dataclass(frozen=True)
class BlowupRamseyQuery:
    G: Graph
    H: Graph
    r: int
    t: int
    n_max: int

    def __post_init__(self):
        for name in ("r", "t", "n_max"):
            if getattr(self, name) < 1:
                raise InvalidSpecError(f"{name} must be at least 1, got {getattr(self, name)}")


@dataclass
class BlowupRamseyResult:
    value: Optional[int]
    witnesses: Dict[int, EdgeColouring] = field(default_factory=dict)
    nodes_explored: int = 0


def _budget(node_budget: Optional[int]) -> int:
    return node_budget if node_budget is not None else load_config()["node_budget"]


def _solve(edges, constraints, r, node_budget) -> Tuple[Optional[EdgeColouring], int]:
    index = {e: i for i, e in enumerate(edges)}
    search = ColouringSearch(edges, [[index[e] for e in con] for con in constraints], r, node_budget)
    solution = search.solve()
    if solution is None:
        return None, search.nodes
    return EdgeColouring(r, dict(zip(edges, solution))), search.nodes


def arrows(G: Graph, H: Graph, r: int, node_budget: Optional[int] = None) -> ArrowingResult:
    """
    Decide whether every r-colouring of E(G) has a monochromatic copy of H.

    Returns:
        ArrowingResult; when arrows is False the witness is a colouring with
        no monochromatic H, re-checked before returning
    """
    if not H.edges:
        raise InvalidSpecError("arrowing an edgeless pattern is degenerate")
    copies = enumerate_copies(H, G)
    witness, nodes = _solve(G.sorted_edges, [cp.edge_set for cp in copies], r, _budget(node_budget))
    if witness is None:
        return ArrowingResult(True, None, nodes)

    for cp in copies:
        if len({witness[e] for e in cp.edge_set}) == 1:
            raise RamseyLabError(f"internal error: witness leaves copy {cp.key} monochromatic")
    return ArrowingResult(False, witness, nodes)


def ramsey_minimality(G: Graph, H: Graph, r: int, node_budget: Optional[int] = None,
                      workers: int = 1) -> Tuple[bool, int, List[Tuple[int, int]]]:
    """
    Ramsey-minimality with diagnostics.

    Returns:
        (minimal, nodes explored, edges whose deletion still arrows)
    """
    top = arrows(G, H, r, node_budget)
    if not top.arrows:
        return False, top.nodes_explored, []

    def check(edge):
        return arrows(G.without_edge(*edge), H, r, node_budget)

    results = parallel_map(check, G.sorted_edges, workers)
    nodes = top.nodes_explored + sum(res.nodes_explored for res in results)
    still_arrowing = [e for e, res in zip(G.sorted_edges, results) if res.arrows]
    return not still_arrowing, nodes, still_arrowing


def is_ramsey_minimal(G: Graph, H: Graph, r: int, node_budget: Optional[int] = None,
                      workers: int = 1) -> bool:
    """True iff G arrows H and no single-edge deletion of G does."""
    return ramsey_minimality(G, H, r, node_budget, workers)[0]


def _symmetric_witness(blown, constraints, r, node_budget) -> Tuple[Optional[EdgeColouring], int]:
    """
    Look for an avoiding colouring that is constant on the edge orbits of a
    cyclic automorphism of the base graph.

    Returns (witness or None, nodes used). None also covers an exhausted
    budget, since only the unrestricted search can prove forcing.
    """
    perm = largest_cyclic_automorphism(blown.base)
    if perm == tuple(range(blown.base.n)):
        return None, 0
    orbit_of = blown_edge_orbits(blown, perm)
    representatives: Dict[int, Tuple[int, int]] = {}
    for edge, k in orbit_of.items():
        representatives.setdefault(k, edge)
    quotient = [[orbit_of[e] for e in con] for con in constraints]
    search = ColouringSearch([representatives[k] for k in range(len(representatives))], quotient, r, node_budget)
    try:
        solution = search.solve()
    except InconclusiveError as exc:
        return None, exc.nodes
    if solution is None:
        return None, search.nodes
    return EdgeColouring(r, {e: solution[k] for e, k in orbit_of.items()}), search.nodes


def decide_blowup_forcing(G: Graph, H: Graph, r: int, t: int, n: int,
                          node_budget: Optional[int] = None) -> Tuple[bool, Optional[EdgeColouring], int]:
    """
    Decide whether every r-colouring of G[n] has a monochromatic canonical H[t].

    Symmetric colourings are tried first on half the node budget; the
    unrestricted search then gets whatever is left.

    Returns:
        (forced, avoiding colouring or None, nodes explored)
    """
    if n < t:
        return False, None, 0
    budget = _budget(node_budget)
    blown = blowup(G, BlowupSpec.uniform(G.n, n))
    constraints = canonical_copy_constraints(blown, H, t)
    witness, nodes = _symmetric_witness(blown, constraints, r, budget // 2)
    if witness is None:
        if nodes >= budget:
            raise InconclusiveError(f"search budget of {budget} nodes exhausted on G[{n}]", nodes=nodes)
        try:
            witness, more = _solve(blown.graph.sorted_edges, constraints, r, budget - nodes)
        except InconclusiveError as exc:
            raise InconclusiveError(f"search budget of {budget} nodes exhausted on G[{n}]",
                                    nodes=nodes + exc.nodes) from exc
        nodes += more
        if witness is None:
            return True, None, nodes
    if find_mono_canonical(blown, witness, H, t) is not None:
        raise RamseyLabError(f"internal error: avoiding colouring of G[{n}] has a canonical H[{t}]")
    return False, witness, nodes


def blowup_ramsey_search(q: BlowupRamseyQuery, node_budget: Optional[int] = None) -> BlowupRamseyResult:
    """Smallest forcing n <= n_max together with the avoiding colourings found below it."""
    pre = arrows(q.G, q.H, q.r, node_budget)
    if not pre.arrows:
        raise PreconditionError("G does not arrow H, so no blowup of G can force a canonical copy")

    result = BlowupRamseyResult(None, {}, pre.nodes_explored)
    for n in range(q.t, q.n_max + 1):
        print(f"🔍 Checking G[{n}] for canonical H[{q.t}]...", file=sys.stderr)
        forced, witness, nodes = decide_blowup_forcing(q.G, q.H, q.r, q.t, n, node_budget)
        result.nodes_explored += nodes
        if forced:
            print(f"✅ G[{n}] forces a monochromatic canonical copy", file=sys.stderr)
            result.value = n
            return result
        result.witnesses[n] = witness
    print(f"ℹ️  No forcing n up to {q.n_max}", file=sys.stderr)
    return result


def blowup_ramsey_number(q: BlowupRamseyQuery, node_budget: Optional[int] = None) -> Optional[int]:
    """B(G -> H; t) when it is at most q.n_max, else None."""
    return blowup_ramsey_search(q, node_budget).value
