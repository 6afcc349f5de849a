"""
Dependent random choice and paired Ramsey refinement.

drc_rich_set looks for K vertices whose t-subsets all have large common
neighbourhoods, and carves pairwise disjoint neighbourhoods for them.
bi_ramsey_refine finds monochromatic cliques on both sides of a pair of
vertex sets with a monochromatic complete bipartite graph between them.
"""
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from config import load_config
from errors import PreconditionError, RamseyLabError
from graphs import Graph
from unavoidable import ColourMatrix
from workers import trial_rng

# Candidate pools larger than this are subsampled before the rich-subset scan.
POOL_LIMIT = 48


@dataclass(frozen=True)
class RichSet:
    S: Tuple[int, ...]
    t: int
    size: int
    neighbourhoods: Dict[Tuple[int, ...], Tuple[int, ...]]

    def claimed(self) -> set:
        used = set(self.S)
        for block in self.neighbourhoods.values():
            used.update(block)
        return used


def _masks(G: Graph) -> List[int]:
    masks = [0] * G.n
    for u, v in G.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _common(masks: List[int], vertices: Iterable[int], allowed: int) -> int:
    mask = allowed
    for x in vertices:
        mask &= masks[x]
    return mask


def _members(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def rich_set_problems(G: Graph, rich: RichSet, exclude: Iterable[int] = ()) -> List[str]:
    """Every way `rich` fails its contract, checked exhaustively."""
    problems = []
    S = set(rich.S)
    if len(S) != len(rich.S):
        problems.append("S has repeated vertices")
    excluded = set(exclude)
    if S & excluded:
        problems.append(f"S uses excluded vertices {sorted(S & excluded)}")

    expected = set(combinations(sorted(rich.S), rich.t))
    if set(rich.neighbourhoods) != expected:
        problems.append("neighbourhoods are not indexed by exactly the t-subsets of S")

    seen = set()
    for X, block in sorted(rich.neighbourhoods.items()):
        block_set = set(block)
        if len(block_set) < rich.size:
            problems.append(f"C{X} has {len(block_set)} < {rich.size} vertices")
        for x in X:
            outside = block_set - G.adjacency[x]
            if outside:
                problems.append(f"C{X} contains non-neighbours {sorted(outside)[:3]} of {x}")
        if block_set & S:
            problems.append(f"C{X} meets S")
        if block_set & seen:
            problems.append(f"C{X} overlaps an earlier neighbourhood")
        if block_set & excluded:
            problems.append(f"C{X} uses excluded vertices")
        seen |= block_set
    return problems


def verify_rich_set(G: Graph, rich: RichSet, exclude: Iterable[int] = ()) -> bool:
    return not rich_set_problems(G, rich, exclude)


def _find_clique(pool: List[int], K: int, t: int, is_rich) -> Optional[Tuple[int, ...]]:
    """Lexicographically first K-subset of pool whose t-subsets are all rich."""
    chosen: List[int] = []

    def extend(start: int) -> bool:
        if len(chosen) == K:
            return True
        for pos in range(start, len(pool)):
            if len(pool) - pos < K - len(chosen):
                return False
            u = pool[pos]
            if all(is_rich(X + (u,)) for X in combinations(chosen, t - 1)):
                chosen.append(u)
                if extend(pos + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if extend(0) else None


def drc_rich_set(G: Graph, K: int, t: int, seed: int, exclude: Iterable[int] = (),
                 neighbourhood_size: Optional[int] = None, trials: Optional[int] = None) -> Optional[RichSet]:
    """
    Search for a rich set by dependent random choice.

    Each trial samples t vertices with replacement, restricts to their common
    neighbourhood U, drops vertices of U lying in too few rich t-subsets, and
    looks for K vertices of U whose t-subsets are all rich: at least
    size*C(K,t) + K common neighbours outside `exclude`, enough to carve
    pairwise disjoint neighbourhoods greedily. Results are verified before
    they are returned.

    Args:
        G: Host graph
        K: Size of S
        t: Subset size
        seed: Seed of the trial stream
        exclude: Vertices that may appear neither in S nor in any neighbourhood
        neighbourhood_size: Size of each carved neighbourhood (default K)
        trials: Trial budget (default from config)

    Returns:
        A verified RichSet, or None when the budget runs out
    """
    if K < t:
        raise PreconditionError(f"rich sets need K >= t, got K={K}, t={t}")
    if t < 1:
        raise PreconditionError(f"t must be at least 1, got {t}")
    size = K if neighbourhood_size is None else neighbourhood_size
    trials = load_config()["drc_trials"] if trials is None else trials

    excluded = set(exclude)
    available = [x for x in range(G.n) if x not in excluded]
    if len(available) < K:
        return None
    allowed = 0
    for x in available:
        allowed |= 1 << x
    masks = _masks(G)
    subsets = comb(K, t)
    threshold = size * subsets + K
    per_vertex = comb(K - 1, t - 1)
    rich_cache: Dict[Tuple[int, ...], bool] = {}

    def is_rich(X: Tuple[int, ...]) -> bool:
        key = tuple(sorted(X))
        if key not in rich_cache:
            rich_cache[key] = bin(_common(masks, key, allowed)).count("1") >= threshold
        return rich_cache[key]

    for trial in range(trials):
        rng = trial_rng(seed, trial)
        sample = [available[int(i)] for i in rng.choice(len(available), size=t, replace=True)]
        pool = _members(_common(masks, set(sample), allowed))
        if len(pool) < K:
            continue
        if len(pool) > POOL_LIMIT:
            pool = sorted(int(x) for x in rng.choice(pool, size=POOL_LIMIT, replace=False))

        changed = True
        while changed and len(pool) >= K:
            counts = {u: 0 for u in pool}
            for X in combinations(pool, t):
                if is_rich(X):
                    for u in X:
                        counts[u] += 1
            kept = [u for u in pool if counts[u] >= per_vertex]
            changed = len(kept) != len(pool)
            pool = kept
        if len(pool) < K:
            continue

        S = _find_clique(pool, K, t, is_rich)
        if S is None:
            continue

        used = set(S)
        neighbourhoods = {}
        for X in combinations(S, t):
            free = _members(_common(masks, X, allowed))
            block = tuple(u for u in free if u not in used)[:size]
            used.update(block)
            neighbourhoods[X] = block
        rich = RichSet(S, t, size, neighbourhoods)
        problems = rich_set_problems(G, rich, excluded)
        if problems:
            raise RamseyLabError(f"internal error: carved rich set fails verification: {problems[0]}")
        return rich
    return None


@dataclass(frozen=True)
class BiRamseyResult:
    A: Tuple[int, ...]
    B: Tuple[int, ...]
    colours: Tuple[Optional[int], Optional[int], int]


def _mono_clique(host: ColourMatrix, candidates: List[int], size: int, colour: Optional[int]) -> Optional[Tuple[int, ...]]:
    if size == 0:
        return ()
    if colour is None:
        return (candidates[0],) if size == 1 and candidates else None
    nbr = host.nbr[colour]
    chosen: List[int] = []

    def extend(start: int) -> bool:
        if len(chosen) == size:
            return True
        for pos in range(start, len(candidates)):
            if len(candidates) - pos < size - len(chosen):
                return False
            u = candidates[pos]
            if all((nbr[u] >> w) & 1 for w in chosen):
                chosen.append(u)
                if extend(pos + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if extend(0) else None


def bi_ramsey_refine(host: ColourMatrix, left: Sequence[int], right: Sequence[int],
                     s: int, t: int) -> Optional[BiRamseyResult]:
    """
    Find A in left (|A|=s) and B in right (|B|=t), each a monochromatic
    clique, with every A-B edge in one colour.

    Colours are tried as (between, left, right) ascending, then A and B in
    lexicographic order. A side of size 1 reports colour None.

    Returns:
        BiRamseyResult with colours (left, right, between), or None
    """
    if s > t:
        raise PreconditionError(f"refinement needs s <= t, got s={s}, t={t}")
    if s < 1 or t < 1:
        raise PreconditionError("refinement sizes must be positive")
    left = sorted(left)
    right = sorted(right)
    if len(left) < s or len(right) < t or set(left) & set(right):
        return None

    left_colours = list(range(host.r)) if s > 1 else [None]
    right_colours = list(range(host.r)) if t > 1 else [None]
    right_mask = 0
    for w in right:
        right_mask |= 1 << w

    for between in range(host.r):
        bnbr = host.nbr[between]
        usable = [u for u in left if bin(bnbr[u] & right_mask).count("1") >= t]
        for lc in left_colours:
            for rc in right_colours:
                chosen: List[int] = []
                found: List[Tuple[int, ...]] = []

                def extend(start: int, common: int) -> bool:
                    if len(chosen) == s:
                        B = _mono_clique(host, _members(common), t, rc)
                        if B is not None:
                            found.append(B)
                            return True
                        return False
                    for pos in range(start, len(usable)):
                        if len(usable) - pos < s - len(chosen):
                            return False
                        u = usable[pos]
                        if lc is not None and not all((host.nbr[lc][u] >> w) & 1 for w in chosen):
                            continue
                        narrowed = common & bnbr[u]
                        if bin(narrowed).count("1") < t:
                            continue
                        chosen.append(u)
                        if extend(pos + 1, narrowed):
                            return True
                        chosen.pop()
                    return False

                if extend(0, right_mask):
                    return BiRamseyResult(tuple(chosen), found[0], (lc, rc, between))
    return None


def bi_ramsey_holds(host: ColourMatrix, result: BiRamseyResult) -> bool:
    """Re-verify the three monochromatic parts a refinement claims."""
    lc, rc, between = result.colours
    if len(result.A) > 1 and host.is_monochromatic_clique(result.A) != lc:
        return False
    if len(result.B) > 1 and host.is_monochromatic_clique(result.B) != rc:
        return False
    return host.bipartite_colour(result.A, result.B) == between
