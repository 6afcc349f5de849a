"""
Backtracking search for edge colourings that leave every constraint non-monochromatic.

A constraint is a set of edges (a copy of H, or a canonical copy of H[t])
that must not end up in a single colour. The search assigns edges in a fixed
order with forward checking and colour-introduction symmetry breaking, and
stops with InconclusiveError when its node budget runs out.

Per-constraint counters live in numpy arrays so one assignment updates every
constraint through the edge in a single vectorised step.
"""
from collections import Counter
from typing import Iterable, List, Optional, Sequence

import numpy as np

from errors import InconclusiveError, InvalidSpecError
from graphs import Edge

UNASSIGNED = -1


class ColouringSearch:
    def __init__(self, edges: Sequence[Edge], constraints: Iterable[Iterable[int]], r: int, node_budget: int):
        """
        Initialize the search

        Args:
            edges: Host edges; constraints refer to them by index
            constraints: Collections of edge indices that must not be monochromatic
            r: Number of colours
            node_budget: Maximum number of search nodes before giving up
        """
        if r < 1:
            raise InvalidSpecError(f"colour count must be at least 1, got {r}")
        self.edges = list(edges)
        self.r = r
        self.node_budget = node_budget
        self.nodes = 0

        unique = sorted({tuple(sorted(set(con))) for con in constraints})
        self.constraints = unique
        self.trivially_forced = any(len(con) <= 1 for con in unique)

        members: List[List[int]] = [[] for _ in self.edges]
        for k, con in enumerate(unique):
            for idx in con:
                members[idx].append(k)
        self.edge_constraints = [np.array(ks, dtype=np.int64) for ks in members]

        load = Counter({idx: len(ks) for idx, ks in enumerate(members)})
        constrained = [idx for idx in range(len(self.edges)) if load[idx]]
        self.order = sorted(constrained, key=lambda idx: (-load[idx], self.edges[idx]))

        # The one unassigned edge of a constraint is its index total minus the assigned total.
        self.size = np.array([len(con) for con in unique], dtype=np.int64)
        self.index_total = np.array([sum(con) for con in unique], dtype=np.int64)
        self.assigned_count = np.zeros(len(unique), dtype=np.int64)
        self.assigned_total = np.zeros(len(unique), dtype=np.int64)
        self.colour_count = np.zeros((r, len(unique)), dtype=np.int64)

        self.colour = [UNASSIGNED] * len(self.edges)
        self.domain = [(1 << r) - 1] * len(self.edges)
        self.max_used = -1
        self.trail = []

    def solve(self) -> Optional[List[int]]:
        """
        Run the search.

        Returns:
            One colour per edge (in input order) with no monochromatic
            constraint, or None when no such colouring exists. Edges outside
            every constraint get colour 0. The first colouring in the fixed
            edge order with ascending colours is returned.
        """
        if self.trivially_forced:
            return None
        if not self._search(0):
            return None
        return [c if c != UNASSIGNED else 0 for c in self.colour]

    def _search(self, pos: int) -> bool:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise InconclusiveError(
                f"search budget of {self.node_budget} nodes exhausted", nodes=self.nodes
            )
        while pos < len(self.order) and self.colour[self.order[pos]] != UNASSIGNED:
            pos += 1
        if pos == len(self.order):
            return True

        idx = self.order[pos]
        allowed = self.domain[idx]
        ceiling = min(self.r - 1, self.max_used + 1)
        for colour in range(ceiling + 1):
            if not (allowed >> colour) & 1:
                continue
            mark = len(self.trail)
            if self._assign_and_propagate(idx, colour) and self._search(pos + 1):
                return True
            self._undo(mark)
        return False

    def _assign_and_propagate(self, idx: int, colour: int) -> bool:
        queue = [(idx, colour)]
        while queue:
            e, col = queue.pop()
            if self.colour[e] != UNASSIGNED:
                if self.colour[e] != col:
                    return False
                continue
            self.colour[e] = col
            self.trail.append(("assign", e, self.max_used))
            if col > self.max_used:
                self.max_used = col
            ks = self.edge_constraints[e]
            if not len(ks):
                continue
            self.assigned_count[ks] += 1
            self.assigned_total[ks] += e
            self.colour_count[col, ks] += 1

            same = self.colour_count[col, ks]
            size = self.size[ks]
            if (same == size).any():
                return False
            one_left = ks[(same == size - 1) & (self.assigned_count[ks] == size - 1)]
            for k in one_left.tolist():
                last = int(self.index_total[k] - self.assigned_total[k])
                old = self.domain[last]
                new = old & ~(1 << col)
                if new != old:
                    self.trail.append(("domain", last, old))
                    self.domain[last] = new
                if new == 0:
                    return False
                if new & (new - 1) == 0:
                    queue.append((last, new.bit_length() - 1))
        return True

    def _undo(self, mark: int):
        while len(self.trail) > mark:
            entry = self.trail.pop()
            if entry[0] == "assign":
                _, e, previous_max = entry
                col = self.colour[e]
                ks = self.edge_constraints[e]
                if len(ks):
                    self.assigned_count[ks] -= 1
                    self.assigned_total[ks] -= e
                    self.colour_count[col, ks] -= 1
                self.colour[e] = UNASSIGNED
                self.max_used = previous_max
            else:
                _, e, old = entry
                self.domain[e] = old
