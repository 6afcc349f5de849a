"""
Text formats for graphs, colourings, coloured cliques, blowup specs and f tables.

Graph:     first line "n m", then m lines "u v"; or a single graph6 line.
Colouring: lines "u v c"; in a partial colouring absent edges are uncoloured.
Clique:    line 1 "k r", line 2 the k vertex colours, then k(k-1)/2 lines "u v c".
Spec:      lines "x m(x)".    f table: lines "m f(m)".
Blank lines and lines starting with '#' are ignored everywhere. Every
error names the 1-based line it was found on.
"""
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

import networkx as nx

from errors import GraphFormatError, InvalidSpecError
from graphs import BlowupSpec, Edge, EdgeColouring, Graph, PartialColouring, norm_edge

GRAPH6_HEADER = ">>graph6<<"


def _lines(text: str) -> Iterator[Tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _ints(line: str, lineno: int, count: Optional[int], source: str) -> List[int]:
    tokens = line.split()
    if count is not None and len(tokens) != count:
        raise GraphFormatError(f"expected {count} integers, got {len(tokens)}", lineno, source)
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise GraphFormatError(f"non-integer token in {line!r}", lineno, source)


def read_text(path: Union[str, Path]) -> str:
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


def parse_graph(text: str, source: str = "<input>") -> Graph:
    lines = list(_lines(text))
    if not lines:
        raise GraphFormatError("empty graph file", None, source)

    lineno, first = lines[0]
    if first.startswith(GRAPH6_HEADER):
        first = first[len(GRAPH6_HEADER):]
    if first and ord(first[0]) >= 63:
        if len(lines) > 1:
            raise GraphFormatError("trailing content after graph6 line", lines[1][0], source)
        try:
            return Graph.from_networkx(nx.from_graph6_bytes(first.encode("ascii")))
        except (nx.NetworkXError, ValueError, UnicodeEncodeError) as e:
            raise GraphFormatError(f"invalid graph6 data: {e}", lineno, source)

    n, m = _ints(first, lineno, 2, source)
    if n < 0 or m < 0:
        raise GraphFormatError("vertex and edge counts must be non-negative", lineno, source)
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else lineno
        raise GraphFormatError(f"header announces {m} edges, found {len(body)}", where, source)

    seen = set()
    for lineno, line in body:
        u, v = _ints(line, lineno, 2, source)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range 0..{n - 1} in {line!r}", lineno, source)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno, source)
        edge = norm_edge(u, v)
        if edge in seen:
            raise GraphFormatError(f"duplicate edge {edge}", lineno, source)
        seen.add(edge)
    return Graph(n, frozenset(seen))


def read_graph(path: Union[str, Path]) -> Graph:
    return parse_graph(read_text(path), str(path))


def format_graph(G: Graph) -> str:
    lines = [f"{G.n} {len(G.edges)}"] + [f"{u} {v}" for u, v in G.sorted_edges]
    return "\n".join(lines) + "\n"


def format_graph6(G: Graph) -> str:
    return nx.to_graph6_bytes(G.to_networkx(), header=False).decode("ascii").strip()


def parse_edge(text: str) -> Edge:
    """Parse an edge argument given as "u v" or "u,v"."""
    tokens = text.replace(",", " ").split()
    if len(tokens) != 2:
        raise GraphFormatError(f"expected an edge 'u v', got {text!r}")
    try:
        return norm_edge(int(tokens[0]), int(tokens[1]))
    except ValueError:
        raise GraphFormatError(f"expected an edge 'u v', got {text!r}")


def parse_colouring(text: str, G: Graph, r: Optional[int] = None, partial: bool = False,
                    source: str = "<input>") -> Union[EdgeColouring, PartialColouring]:
    """
    Parse "u v c" lines against host G.

    Args:
        text: File contents
        G: Host graph; every line must name one of its edges
        r: Colour count; inferred as max colour + 1 (at least 2) when omitted
        partial: Accept colourings that leave edges uncoloured
        source: Name used in error messages

    Returns:
        EdgeColouring, or PartialColouring when partial is set
    """
    assignment: Dict[Edge, int] = {}
    for lineno, line in _lines(text):
        u, v, colour = _ints(line, lineno, 3, source)
        if not (0 <= u < G.n and 0 <= v < G.n):
            raise GraphFormatError(f"vertex index out of range 0..{G.n - 1} in {line!r}", lineno, source)
        edge = norm_edge(u, v)
        if edge not in G.edges:
            raise GraphFormatError(f"{edge} is not an edge of the host graph", lineno, source)
        if edge in assignment:
            raise GraphFormatError(f"edge {edge} coloured twice", lineno, source)
        if colour < 0 or (r is not None and colour >= r):
            raise GraphFormatError(f"colour {colour} outside 0..{(r or 1) - 1}", lineno, source)
        assignment[edge] = colour

    if r is None:
        r = max([1] + [c + 1 for c in assignment.values()])
        r = max(r, 2)
    if partial:
        return PartialColouring(r, assignment)
    missing = sorted(G.edges - set(assignment))
    if missing:
        raise GraphFormatError(f"colouring leaves {len(missing)} edges uncoloured, e.g. {missing[0]}", None, source)
    return EdgeColouring(r, assignment)


def read_colouring(path: Union[str, Path], G: Graph, r: Optional[int] = None, partial: bool = False):
    return parse_colouring(read_text(path), G, r, partial, str(path))


def complete_host_size(text: str, source: str = "<input>") -> int:
    """Number of vertices of the complete graph a "u v c" file colours."""
    top = -1
    for lineno, line in _lines(text):
        u, v, _ = _ints(line, lineno, 3, source)
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative vertex index in {line!r}", lineno, source)
        top = max(top, u, v)
    return top + 1


def format_colouring(c) -> str:
    return "".join(f"{u} {v} {colour}\n" for (u, v), colour in c.items())


def parse_coloured_clique(text: str, source: str = "<input>"):
    from unavoidable import ColouredClique

    lines = list(_lines(text))
    if len(lines) < 2:
        raise GraphFormatError("coloured clique needs a 'k r' line and a vertex colour line", None, source)
    lineno, header = lines[0]
    k, r = _ints(header, lineno, 2, source)
    if k < 1 or r < 1:
        raise GraphFormatError("k and r must be positive", lineno, source)
    lineno, vline = lines[1]
    vcol = _ints(vline, lineno, k, source)
    for colour in vcol:
        if not 0 <= colour < r:
            raise GraphFormatError(f"vertex colour {colour} outside 0..{r - 1}", lineno, source)

    pairs = {}
    for lineno, line in lines[2:]:
        u, v, colour = _ints(line, lineno, 3, source)
        if not (0 <= u < k and 0 <= v < k) or u == v:
            raise GraphFormatError(f"invalid pair in {line!r}", lineno, source)
        if not 0 <= colour < r:
            raise GraphFormatError(f"edge colour {colour} outside 0..{r - 1}", lineno, source)
        edge = norm_edge(u, v)
        if edge in pairs:
            raise GraphFormatError(f"pair {edge} coloured twice", lineno, source)
        pairs[edge] = colour
    if len(pairs) != k * (k - 1) // 2:
        raise GraphFormatError(f"expected {k * (k - 1) // 2} pair lines, found {len(pairs)}", None, source)
    try:
        return ColouredClique.from_pairs(k, r, vcol, pairs)
    except InvalidSpecError as e:
        raise GraphFormatError(str(e), None, source)


def format_coloured_clique(P) -> str:
    lines = [f"{P.k} {P.r}", " ".join(str(c) for c in P.vcol)]
    lines += [f"{u} {v} {P.colour(u, v)}" for u in range(P.k) for v in range(u + 1, P.k)]
    return "\n".join(lines) + "\n"


def read_coloured_clique(path: Union[str, Path]):
    return parse_coloured_clique(read_text(path), str(path))


def write_coloured_cliques(cliques, directory: Union[str, Path], stem: str) -> List[str]:
    """Write each clique to <directory>/<stem>_000.txt, <stem>_001.txt, ...; returns the file names."""
    folder = Path(directory)
    folder.mkdir(parents=True, exist_ok=True)
    names = []
    for i, P in enumerate(cliques):
        name = f"{stem}_{i:03d}.txt"
        (folder / name).write_text(format_coloured_clique(P), encoding="utf-8")
        names.append(name)
    return names


def parse_blowup_spec(text: str, G: Graph, source: str = "<input>") -> BlowupSpec:
    mapping = {}
    for lineno, line in _lines(text):
        x, mult = _ints(line, lineno, 2, source)
        if not 0 <= x < G.n:
            raise GraphFormatError(f"vertex {x} outside 0..{G.n - 1}", lineno, source)
        if x in mapping:
            raise GraphFormatError(f"vertex {x} listed twice", lineno, source)
        if mult < 1:
            raise GraphFormatError(f"multiplicity {mult} must be positive", lineno, source)
        mapping[x] = mult
    try:
        return BlowupSpec.from_mapping(G, mapping)
    except InvalidSpecError as e:
        raise GraphFormatError(str(e), None, source)


def parse_f_table(text: str, source: str = "<input>") -> Dict[int, int]:
    table = {}
    for lineno, line in _lines(text):
        m, fm = _ints(line, lineno, 2, source)
        if m in table:
            raise GraphFormatError(f"multiplicity {m} listed twice", lineno, source)
        table[m] = fm
    return table


def format_hypergraph(hg) -> str:
    """One line per hyperedge: its vertex indices, space-separated."""
    return "".join(" ".join(str(x) for x in sorted(edge)) + "\n" for edge in hg.hyperedges)


def parse_hypergraph(text: str, source: str = "<input>"):
    from copy_hypergraph import CopyHypergraph

    sets = []
    for lineno, line in _lines(text):
        members = _ints(line, lineno, None, source)
        if len(set(members)) != len(members):
            raise GraphFormatError(f"repeated vertex in hyperedge {line!r}", lineno, source)
        sets.append(members)
    try:
        return CopyHypergraph.from_sets(sets)
    except InvalidSpecError as e:
        raise GraphFormatError(str(e), None, source)
