"""
Constructive search for an unavoidable pattern in a dense colouring of K_n.

Runs the dependent-random-choice pipeline at desk scale:

    1. per colour, a rich set A_i with neighbourhoods C_i(T) in that colour
    2. refine every pair (A_i, A_j)
    3. refine A_j against every C_i(T) with i < j
    4. fix D_j and F_j = C_j(D_j) for j descending, refining (A_i, F_j)
    5. refine every pair (F_i, F_j)

The groups D_1, F_1, ..., D_r, F_r then span a t-blowup of a coloured
clique on 2r vertices, which is shrunk to an r-minimal pattern.
"""
import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from config import load_config
from dependent_choice import bi_ramsey_refine, drc_rich_set
from errors import PipelineError, PreconditionError
from graphs import EdgeColouring
from unavoidable import (ColouredClique, ColourMatrix, Detection, canonical_clique, coloured_blowup,
                         detect_unavoidable, embedding_holds, is_r_minimal)
from workers import spawn_seeds

Group = Tuple[int, ...]


class _Stopped(Exception):
    """A refinement came back empty; the run ends with a reason, not an error."""


@dataclass
class PipelineState:
    """Sets per processing position p; colours[p] is the colour handled at p."""
    colours: List[int]
    A: List[Group] = field(default_factory=list)
    C: List[Dict[Group, Group]] = field(default_factory=list)
    D: Dict[int, Group] = field(default_factory=dict)
    F: Dict[int, Group] = field(default_factory=dict)

    def groups(self) -> List[Group]:
        """J's vertex groups in the order D_0, F_0, D_1, F_1, ..."""
        out = []
        for p in range(len(self.colours)):
            out += [self.D[p], self.F[p]]
        return out

    def to_dict(self) -> dict:
        return {
            "colours": list(self.colours),
            "A": [list(a) for a in self.A],
            "D": [list(self.D[p]) for p in sorted(self.D)],
            "F": [list(self.F[p]) for p in sorted(self.F)],
        }


@dataclass
class PipelineResult:
    member: Optional[ColouredClique]
    embedding: Optional[Tuple[int, ...]]
    reason: str
    state: Optional[PipelineState] = None
    detection: Optional[Detection] = None

    @property
    def found(self) -> bool:
        return self.member is not None


def cascade_sizes(r: int, t: int) -> Tuple[List[int], int]:
    """Set sizes m_i = 4t(r-i+1) and neighbourhood size 4t, the proof-shaped defaults."""
    return [4 * t * (r - i + 1) for i in range(1, r + 1)], 4 * t


def _refine(host: ColourMatrix, X: Group, Y: Group, floor: int) -> Optional[Tuple[Group, Group]]:
    """
    Largest monochromatic refinement of (X, Y), keeping X as large as possible first.

    Both sides stay at least `floor`; each side becomes a monochromatic
    clique and the pair a monochromatic complete bipartite graph.
    """
    for a in range(len(X), floor - 1, -1):
        for b in range(len(Y), floor - 1, -1):
            if a <= b:
                found = bi_ramsey_refine(host, X, Y, a, b)
                if found is not None:
                    return found.A, found.B
            else:
                found = bi_ramsey_refine(host, Y, X, b, a)
                if found is not None:
                    return found.B, found.A
    return None


def _mono(host: ColourMatrix, group: Group) -> bool:
    return len(group) < 2 or host.is_monochromatic_clique(group) is not None


def _pair(host: ColourMatrix, X: Group, Y: Group) -> Optional[int]:
    return host.bipartite_colour(X, Y)


def _subsets(A: Group, t: int):
    return combinations(sorted(A), t)


def _check(host: ColourMatrix, state: PipelineState, t: int, stage: str):
    """Raise PipelineError naming the first property that fails at this stage."""
    r = len(state.colours)
    problems: List[str] = []

    if stage in ("drc", "refined", "fixed", "final"):
        seen = set()
        for p, A in enumerate(state.A):
            if len(A) < t:
                problems.append(f"|A_{p + 1}| = {len(A)} < t")
            if seen & set(A):
                problems.append(f"A_{p + 1} meets an earlier A")
            seen |= set(A)
        carved = set()
        for p, A in enumerate(state.A):
            for T in _subsets(A, t):
                block = state.C[p][T]
                if _pair(host, T, block) != state.colours[p]:
                    problems.append(f"(T, C_{p + 1}(T)) is not in colour {state.colours[p]} for T={T}")
                if set(block) & seen or set(block) & carved:
                    problems.append(f"C_{p + 1}({T}) overlaps another set")
                carved |= set(block)

    if stage in ("refined", "fixed", "final"):
        for p, q in combinations(range(r), 2):
            if _pair(host, state.A[p], state.A[q]) is None:
                problems.append(f"(A_{p + 1}, A_{q + 1}) is not monochromatic")
            for T in _subsets(state.A[p], t):
                if _pair(host, state.A[q], state.C[p][T]) is None:
                    problems.append(f"(A_{q + 1}, C_{p + 1}({T})) is not monochromatic")

    if stage in ("fixed", "final"):
        for j in range(r):
            D, F = state.D[j], state.F[j]
            if len(D) != t or not set(D) <= set(state.A[j]) or not _mono(host, D):
                problems.append(f"D_{j + 1} is not a monochromatic t-subset of A_{j + 1}")
            if _pair(host, D, F) != state.colours[j]:
                problems.append(f"(D_{j + 1}, F_{j + 1}) is not in colour {state.colours[j]}")
            for i in range(r):
                if i != j and _pair(host, D, state.F[i]) is None:
                    problems.append(f"(D_{j + 1}, F_{i + 1}) is not monochromatic")

    if stage == "final":
        for i in range(r):
            if len(state.F[i]) < t or not _mono(host, state.F[i]):
                problems.append(f"F_{i + 1} is not a monochromatic set of size >= t")
        for i, j in combinations(range(r), 2):
            if _pair(host, state.F[i], state.F[j]) is None:
                problems.append(f"(F_{i + 1}, F_{j + 1}) is not monochromatic")

    if problems:
        raise PipelineError(f"property check after {stage} failed: {problems[0]}")


def _assemble(host: ColourMatrix, state: PipelineState, r: int, t: int) -> Tuple[ColouredClique, List[Group]]:
    groups = [tuple(sorted(g))[:t] for g in state.groups()]
    vcol = []
    for g in groups:
        colour = host.is_monochromatic_clique(g)
        if colour is None:
            raise PipelineError(f"group {g} of the assembled clique is not monochromatic")
        vcol.append(colour)
    ecol = []
    for a, b in combinations(range(len(groups)), 2):
        colour = host.bipartite_colour(groups[a], groups[b])
        if colour is None:
            raise PipelineError(f"groups {groups[a]} and {groups[b]} are not joined in one colour")
        ecol.append(colour)
    return ColouredClique(len(groups), r, tuple(vcol), tuple(ecol)), groups


def _minimise(J: ColouredClique, r: int) -> List[int]:
    """Delete vertices of J, first index first, while all r colours stay spanned."""
    kept = list(range(J.k))
    target = set(range(r))
    shrinking = True
    while shrinking:
        shrinking = False
        for x in kept:
            rest = [y for y in kept if y != x]
            if rest and J.colours_spanned(rest) == target:
                kept = rest
                shrinking = True
                break
    return kept


def constructive_find(c: EdgeColouring, r: int, t: int, seed: int, n: Optional[int] = None,
                      set_size: Optional[int] = None, neighbourhood_size: Optional[int] = None,
                      trials: Optional[int] = None, set_sizes: Optional[Sequence[int]] = None,
                      workers: int = 1, cross_check: bool = True) -> PipelineResult:
    """
    Run the pipeline on c and return the unavoidable member it builds.

    Args:
        c: Colouring of K_n
        r: Number of colours
        t: Blowup size (>= 2)
        seed: Seed for the dependent random choice streams
        set_size: |A_i| for every colour (default pipeline_size_factor * t)
        neighbourhood_size: |C_i(T)| (default pipeline_size_factor * t)
        set_sizes: Per-position |A_i|, overriding set_size
        cross_check: Confirm a found member with detect_unavoidable

    Returns:
        PipelineResult; member None means no pattern was built, with the reason
    """
    if t < 2:
        raise PreconditionError(f"the pipeline needs t >= 2, got t={t}")
    cfg = load_config()
    factor = cfg["pipeline_size_factor"]
    host = ColourMatrix.from_colouring(c, n, r)
    ell = neighbourhood_size if neighbourhood_size is not None else factor * t
    if set_sizes is None:
        set_sizes = [set_size if set_size is not None else factor * t] * r
    if len(set_sizes) != r:
        raise PreconditionError(f"expected {r} set sizes, got {len(set_sizes)}")

    colours = sorted(range(r), key=lambda colour: (host.edge_count(colour), colour))
    state = PipelineState(colours)
    seeds = spawn_seeds(seed, r)
    claimed: set = set()

    print(f"🔍 Dependent random choice on {r} colour classes of K_{host.n}...", file=sys.stderr)
    for p, colour in enumerate(colours):
        rich = drc_rich_set(host.colour_graph(colour), set_sizes[p], t, seeds[p],
                            exclude=claimed, neighbourhood_size=ell, trials=trials)
        if rich is None:
            print(f"⚠️  Colour {colour} is too sparse for a rich set", file=sys.stderr)
            return PipelineResult(None, None, f"insufficient density for colour {colour}", state)
        claimed |= rich.claimed()
        state.A.append(rich.S)
        state.C.append(dict(rich.neighbourhoods))
    _check(host, state, t, "drc")

    def refine_or_stop(X, Y, label):
        pair = _refine(host, X, Y, t)
        if pair is None:
            raise _Stopped(f"refinement of {label} failed")
        return pair

    try:
        for p, q in combinations(range(r), 2):
            state.A[p], state.A[q] = refine_or_stop(state.A[p], state.A[q], f"(A_{p + 1}, A_{q + 1}) in the pairwise step")

        for q in range(1, r):
            for p in range(q):
                for T in _subsets(state.A[p], t):
                    state.A[q], state.C[p][T] = refine_or_stop(
                        state.A[q], state.C[p][T], f"(A_{q + 1}, C_{p + 1}{T}) against the neighbourhoods")
        _check(host, state, t, "refined")

        for j in reversed(range(r)):
            state.D[j] = tuple(sorted(state.A[j])[:t])
            state.F[j] = state.C[j][state.D[j]]
            for i in range(j):
                state.A[i], state.F[j] = refine_or_stop(state.A[i], state.F[j], f"(A_{i + 1}, F_{j + 1}) while fixing D")
        _check(host, state, t, "fixed")

        for i, j in combinations(range(r), 2):
            state.F[i], state.F[j] = refine_or_stop(state.F[i], state.F[j], f"(F_{i + 1}, F_{j + 1}) in the final step")
    except _Stopped as stop:
        print(f"⚠️  {stop}", file=sys.stderr)
        return PipelineResult(None, None, str(stop), state)
    _check(host, state, t, "final")

    J, groups = _assemble(host, state, r, t)
    kept = _minimise(J, r)
    pattern = J.induced(kept)
    if not is_r_minimal(pattern, r):
        raise PipelineError(f"minimised pattern on groups {kept} is not {r}-minimal")
    canon, order = canonical_clique(pattern)
    member = coloured_blowup(canon, t)
    embedding = tuple(groups[kept[order[a // t]]][a % t] for a in range(member.k))
    if not embedding_holds(member, host, embedding):
        raise PipelineError("assembled embedding does not preserve edge colours")
    print(f"✅ Built a {member.k}-vertex unavoidable pattern", file=sys.stderr)

    detection = None
    if cross_check:
        detection = detect_unavoidable(c, r, t, host.n, workers)
        if detection is None:
            raise PipelineError("constructive search found a pattern that detection misses")
    return PipelineResult(member, embedding, "found", state, detection)
