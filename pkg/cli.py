"""
Command-line entry point for ramsey_lab.

Every subcommand writes one report (JSON by default) to --output or stdout
and prints progress lines to stderr. Exit codes: 0 for any answer,
including negative ones; 2 for malformed input, violated preconditions and
usage errors; 3 when a search budget runs out.
"""
import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional

from arrowing import BlowupRamseyQuery, arrows, blowup_ramsey_search, ramsey_minimality
from config import get_worker_count, load_config
from copy_hypergraph import (build_copy_hypergraph, find_3cc_violation, girth, is_linear,
                             verify_recolouring_preconditions)
from dependent_choice import drc_rich_set
from errors import GraphFormatError, InconclusiveError, InvalidSpecError, RamseyLabError
from experiments import DensityConfig, density_experiment, density_threshold
from graph_io import (complete_host_size, format_colouring, format_hypergraph, parse_blowup_spec,
                      parse_colouring, parse_edge, parse_f_table, parse_hypergraph, read_coloured_clique,
                      read_colouring, read_graph, read_text, write_coloured_cliques)
from graphs import BlowupSpec, Graph, PartialColouring, blowup
from pipeline import constructive_find
from recolouring import stage_one, stage_two, verify_claim_per_step, verify_recolouring
from reports import build_report, write_report
from tree_blowups import (CoherenceSpec, Tree2Instance, is_f_coherent, lemma_tree2_witness,
                          possible_monochromatic_copies, tree_blowup_ramsey_table)
from unavoidable import (UnavoidableFamily, canonical_clique, coloured_blowup, detect_unavoidable,
                         enumerate_r_minimal, is_r_minimal, unavoidable_family)

# Flags that change how a run is carried out but never its answer.
UNECHOED = {"output", "format", "workers", "handler", "command", "group", "save_dir"}


@dataclass
class Outcome:
    result: dict
    seeds: List[int] = field(default_factory=list)
    timing: Optional[dict] = None


def _clique_dict(P) -> dict:
    return {"k": P.k, "vertex_colours": list(P.vcol), "pair_colours": list(P.ecol)}


def _complete_colouring(path: str, r: Optional[int] = None):
    text = read_text(path)
    n = complete_host_size(text, path)
    return parse_colouring(text, Graph.complete(n), r, source=path), n


# ----------------------------------------------------------------- arrowing

def cmd_arrows(args, workers) -> Outcome:
    G, H = read_graph(args.graph), read_graph(args.target)
    res = arrows(G, H, args.r, args.node_budget)
    if args.witness and res.witness is not None:
        Path(args.witness).write_text(format_colouring(res.witness), encoding="utf-8")
    return Outcome({"arrows": res.arrows, "witness": res.witness, "nodes": res.nodes_explored})


def cmd_minimal(args, workers) -> Outcome:
    G, H = read_graph(args.graph), read_graph(args.target)
    minimal, nodes, still = ramsey_minimality(G, H, args.r, args.node_budget, workers)
    return Outcome({"minimal": minimal, "nodes": nodes, "still_arrowing_without": still})


def cmd_blowup_ramsey(args, workers) -> Outcome:
    q = BlowupRamseyQuery(read_graph(args.graph), read_graph(args.target), args.r, args.t, args.n_max)
    res = blowup_ramsey_search(q, args.node_budget)
    return Outcome({"value": res.value, "avoided": sorted(res.witnesses), "nodes": res.nodes_explored})


# ---------------------------------------------------------- copy hypergraph

def cmd_girth(args, workers) -> Outcome:
    if args.hypergraph:
        hg = parse_hypergraph(read_text(args.hypergraph), args.hypergraph)
    elif args.graph and args.target:
        hg = build_copy_hypergraph(read_graph(args.target), read_graph(args.graph))
    else:
        raise GraphFormatError("girth needs --hypergraph, or --graph together with --target")
    if args.dump:
        Path(args.dump).write_text(format_hypergraph(hg), encoding="utf-8")
    g = girth(hg)
    result = {
        "girth": str(g),
        "cycle": list(g.cycle),
        "links": [hg.vertices[x] for x in g.links],
        "linear": is_linear(hg),
        "hyperedges": len(hg.hyperedges),
        "vertices": len(hg.vertices),
    }
    if args.s is not None and args.graph and args.target:
        report = verify_recolouring_preconditions(read_graph(args.graph), read_graph(args.target), args.s)
        result["preconditions"] = {
            "passed": report.passed,
            "girth_ok": report.girth_ok,
            "min_degree_ok": report.min_degree_ok,
            "low_degree_vertex": report.low_degree_vertex,
        }
    return Outcome(result)


def cmd_check_3cc(args, workers) -> Outcome:
    H = read_graph(args.target)
    violation = find_3cc_violation(H)
    return Outcome({
        "three_chromatically_connected": H.n >= 3 and violation is None,
        "violation": None if violation is None else list(violation),
    })


# --------------------------------------------------------------- recolouring

def cmd_recolour(args, workers) -> Outcome:
    G = read_graph(args.graph)
    c0 = read_colouring(args.colouring, G, args.r)
    trace = stage_one(G, parse_edge(args.edge), args.pivot, c0, args.s)
    final = stage_two(trace)
    if args.blown_output:
        Path(args.blown_output).write_text(format_colouring(final), encoding="utf-8")
    check = verify_recolouring(G, args.s, final)
    claim = verify_claim_per_step(trace)
    return Outcome({
        "certificate_ok": trace.certificate.ok,
        "recoloured": [sorted(E) for E in trace.recoloured],
        "triangles": trace.triangles,
        "verification": {"passed": check.passed, "copies": check.copies},
        "claim_per_step": [{"step": s.step, "passed": s.passed} for s in claim.steps],
    })


def cmd_verify(args, workers) -> Outcome:
    G = read_graph(args.graph)
    blown = blowup(G, BlowupSpec.uniform(G.n, args.s))
    c = read_colouring(args.colouring, blown.graph, args.r)
    check = verify_recolouring(G, args.s, c)
    return Outcome({"passed": check.passed, "copies": check.copies})


# ---------------------------------------------------------------- unavoidable

def cmd_enumerate(args, workers) -> Outcome:
    patterns = enumerate_r_minimal(args.r)
    if args.quotient_colours:
        classes = {}
        for P in patterns:
            canon, _ = canonical_clique(P, quotient_colours=True)
            classes.setdefault((canon.k, canon.vcol, canon.ecol), canon)
        patterns = [classes[key] for key in sorted(classes)]
    result = {"count": len(patterns), "patterns": [_clique_dict(P) for P in patterns]}
    if args.save_dir:
        result["files"] = write_coloured_cliques(patterns, args.save_dir, "pattern")
    return Outcome(result)


def cmd_family(args, workers) -> Outcome:
    family = unavoidable_family(args.r, args.t)
    result = {
        "count": len(family.members),
        "members": [dict(_clique_dict(m), source=_clique_dict(s)) for m, s in zip(family.members, family.sources)],
    }
    if args.save_dir:
        result["files"] = write_coloured_cliques(family.members, args.save_dir, "member")
    return Outcome(result)


def _pattern_family(paths: List[str], r: int, t: int) -> UnavoidableFamily:
    """t-blowups of the coloured cliques in these files, in the order given."""
    sources = []
    for path in paths:
        P = read_coloured_clique(path)
        if P.r != r:
            raise InvalidSpecError(f"{path} is a {P.r}-colour pattern, expected r={r}")
        if not is_r_minimal(P, r):
            print(f"⚠️  {path} is not {r}-minimal; searching for its blowup anyway", file=sys.stderr)
        sources.append(P)
    return UnavoidableFamily(r, t, tuple(coloured_blowup(P, t) for P in sources), tuple(sources))


def cmd_detect(args, workers) -> Outcome:
    c, n = _complete_colouring(args.colouring, args.r)
    family = _pattern_family(args.pattern, args.r, args.t) if args.pattern else None
    hit = detect_unavoidable(c, args.r, args.t, n, workers, family=family)
    if hit is None:
        return Outcome({"found": False})
    return Outcome({"found": True, "member_index": hit.member_index,
                    "member": _clique_dict(hit.member), "embedding": list(hit.embedding)})


def cmd_drc(args, workers) -> Outcome:
    G = read_graph(args.graph)
    rich = drc_rich_set(G, args.K, args.t, args.seed, neighbourhood_size=args.neighbourhood_size,
                        trials=args.trials)
    if rich is None:
        return Outcome({"found": False}, [args.seed])
    return Outcome({"found": True, "S": list(rich.S),
                    "neighbourhoods": {X: list(block) for X, block in sorted(rich.neighbourhoods.items())}},
                   [args.seed])


def cmd_pipeline(args, workers) -> Outcome:
    c, n = _complete_colouring(args.colouring, args.r)
    res = constructive_find(c, args.r, args.t, args.seed, n, set_size=args.set_size,
                            neighbourhood_size=args.neighbourhood_size, trials=args.trials, workers=workers)
    result = {"found": res.found, "reason": res.reason,
              "state": None if res.state is None else res.state.to_dict()}
    if res.found:
        result.update(member=_clique_dict(res.member), embedding=list(res.embedding),
                      detected_member_index=res.detection.member_index if res.detection else None)
    return Outcome(result, [args.seed])


def cmd_experiment(args, workers) -> Outcome:
    min_edges = args.min_edges if args.min_edges is not None else density_threshold(args.n, args.t)
    cfg = DensityConfig(args.n, args.r, args.t, min_edges, args.trials, args.seed, args.attempts)
    report = density_experiment(cfg, workers)
    return Outcome(report.to_dict(), [args.seed], report.timing)


# --------------------------------------------------------------------- trees

def _partial(path: Optional[str], G: Graph) -> PartialColouring:
    if not path:
        return PartialColouring(2, {})
    return read_colouring(path, G, 2, partial=True)


def cmd_copies(args, workers) -> Outcome:
    T, G = read_graph(args.tree), read_graph(args.graph)
    c = _partial(args.colouring, G)
    copies = possible_monochromatic_copies(T, G, c, args.colour)
    return Outcome({"count": len(copies),
                    "copies": [{"edges": list(cp.key), "vertex_map": list(cp.vertex_map)} for cp in copies]})


def cmd_coherent(args, workers) -> Outcome:
    G = read_graph(args.graph)
    spec = parse_blowup_spec(read_text(args.spec), G, args.spec)
    f = parse_f_table(read_text(args.f_table), args.f_table)
    c = _partial(args.base_colouring, G)
    blown = blowup(G, spec)
    cprime = read_colouring(args.blown_colouring, blown.graph, 2)
    ok, witness = is_f_coherent(G, cprime, CoherenceSpec(c, spec, f))
    return Outcome({"coherent": ok, "witness": witness})


def _instance_graph(data, name: str, source: str) -> Graph:
    try:
        return Graph(int(data[name]["n"]), frozenset(tuple(e) for e in data[name]["edges"]))
    except (KeyError, TypeError, ValueError) as e:
        raise GraphFormatError(f"instance field {name!r} is malformed: {e}", None, source)


def load_tree2_instance(path: str) -> Tree2Instance:
    """Read a JSON instance with keys T, sub, attach, G, c, z, copies."""
    try:
        data = json.loads(read_text(path))
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON: {e.msg}", e.lineno, path)
    T = _instance_graph(data, "T", path)
    G = _instance_graph(data, "G", path)
    try:
        c = PartialColouring(2, {(u, v): colour for u, v, colour in data.get("c", [])})
        return Tree2Instance(T, tuple(data["sub"]), tuple(data["attach"]), G, c, int(data["z"]),
                             tuple(tuple(vmap) for vmap in data["copies"]))
    except (KeyError, TypeError, ValueError) as e:
        raise GraphFormatError(f"malformed lemma instance: {e}", None, path)


def cmd_lemma32(args, workers) -> Outcome:
    pair = lemma_tree2_witness(load_tree2_instance(args.instance))
    return Outcome({"pair": None if pair is None else list(pair)})


def cmd_table(args, workers) -> Outcome:
    Gs = [read_graph(path) for path in args.graphs]
    names = [Path(path).stem for path in args.graphs]
    frame = tree_blowup_ramsey_table(Gs, read_graph(args.tree), args.r, args.t, args.n_max,
                                     workers, names, args.node_budget)
    return Outcome({"table": frame})


# ------------------------------------------------------------------- parser

def _common() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--output", "-o", help="Report file (default: stdout)")
    parent.add_argument("--format", choices=["json", "text"], default="json", help="Report format")
    parent.add_argument("--seed", type=int, default=None, help="Random seed (default from config)")
    parent.add_argument("--workers", type=int, default=None,
                        help="Worker threads (default: RAMSEY_LAB_THREADS or config)")
    return parent


def _add(sub, name: str, handler: Callable, parent, help_text: str) -> argparse.ArgumentParser:
    p = sub.add_parser(name, parents=[parent], help=help_text, description=help_text)
    p.set_defaults(handler=handler)
    return p


def build_parser() -> argparse.ArgumentParser:
    parent = _common()
    parser = argparse.ArgumentParser(prog="ramsey_lab", description="Ramsey arrowing, blowups and unavoidable patterns")
    sub = parser.add_subparsers(dest="command", required=True)

    p = _add(sub, "arrows", cmd_arrows, parent, "Decide whether G arrows H in r colours")
    p.add_argument("--graph", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--witness", help="Write the avoiding colouring here when G does not arrow H")

    p = _add(sub, "minimal", cmd_minimal, parent, "Decide Ramsey-minimality of G for H")
    p.add_argument("--graph", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("--node-budget", type=int, default=None)

    p = _add(sub, "blowup-ramsey", cmd_blowup_ramsey, parent, "Smallest n with G[n] forcing a canonical H[t]")
    p.add_argument("--graph", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("-t", type=int, default=2)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--node-budget", type=int, default=None)

    p = _add(sub, "girth", cmd_girth, parent, "Girth of the copy hypergraph H(G) or of a dumped hypergraph")
    p.add_argument("--graph")
    p.add_argument("--target")
    p.add_argument("--hypergraph", help="Hypergraph dump: one hyperedge per line")
    p.add_argument("--dump", help="Write the copy hypergraph here")
    p.add_argument("-s", type=int, default=None, help="Also check the recolouring preconditions for s")

    p = _add(sub, "check-3cc", cmd_check_3cc, parent, "Test 3-chromatic connectivity")
    p.add_argument("--target", required=True)

    p = _add(sub, "recolour", cmd_recolour, parent, "Run both recolouring stages and verify G[s]")
    p.add_argument("--graph", required=True)
    p.add_argument("--edge", required=True, help="Edge e as 'u v'")
    p.add_argument("--pivot", type=int, required=True)
    p.add_argument("--colouring", required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("-r", type=int, default=None)
    p.add_argument("--blown-output", help="Write the colouring of G[s] here")

    p = _add(sub, "verify", cmd_verify, parent, "List monochromatic canonical K_3[2] in a colouring of G[s]")
    p.add_argument("--graph", required=True)
    p.add_argument("--colouring", required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("-r", type=int, default=None)

    unavoidable = sub.add_parser("unavoidable", help="Unavoidable colour patterns")
    usub = unavoidable.add_subparsers(dest="group", required=True)
    p = _add(usub, "enumerate", cmd_enumerate, parent, "List the r-minimal coloured cliques")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--quotient-colours", action="store_true", help="Also identify patterns up to colour renaming")
    p.add_argument("--save-dir", help="Also write one coloured-clique file per pattern here")
    p = _add(usub, "family", cmd_family, parent, "List the (r,t)-unavoidable family")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-t", type=int, default=2)
    p.add_argument("--save-dir", help="Also write one coloured-clique file per member here")
    p = _add(usub, "detect", cmd_detect, parent, "Find a family member inside a colouring of K_n")
    p.add_argument("--colouring", required=True)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("-t", type=int, default=2)
    p.add_argument("--pattern", nargs="+", help="Coloured-clique files whose t-blowups replace the family")
    p = _add(usub, "drc", cmd_drc, parent, "Dependent random choice rich set")
    p.add_argument("--graph", required=True)
    p.add_argument("-K", type=int, required=True)
    p.add_argument("-t", type=int, default=2)
    p.add_argument("--neighbourhood-size", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p = _add(usub, "pipeline", cmd_pipeline, parent, "Constructive search for an unavoidable pattern")
    p.add_argument("--colouring", required=True)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("-t", type=int, default=2)
    p.add_argument("--set-size", type=int, default=None)
    p.add_argument("--neighbourhood-size", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p = _add(usub, "experiment", cmd_experiment, parent, "Detection rate on random dense colourings")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("-t", type=int, default=2)
    p.add_argument("--min-edges", type=int, default=None, help="Per-colour minimum (default C*n^(2-1/t))")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--attempts", type=int, default=None)

    trees = sub.add_parser("trees", help="Tree blowups")
    tsub = trees.add_subparsers(dest="group", required=True)
    p = _add(tsub, "copies", cmd_copies, parent, "Possible monochromatic copies of a tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--colouring", help="Partial 2-colouring of G")
    p.add_argument("--colour", type=int, default=0)
    p = _add(tsub, "coherent", cmd_coherent, parent, "Check f-coherence of a blowup colouring")
    p.add_argument("--graph", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--f-table", required=True)
    p.add_argument("--base-colouring")
    p.add_argument("--blown-colouring", required=True)
    p = _add(tsub, "lemma32", cmd_lemma32, parent, "Search a swap pair among copies sharing a root")
    p.add_argument("--instance", required=True, help="JSON instance")
    p = _add(tsub, "table", cmd_table, parent, "Blowup Ramsey numbers of a tree over several ground graphs")
    p.add_argument("--graphs", nargs="+", required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("-t", type=int, default=2)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--node-budget", type=int, default=None)
    return parser


def _subcommand(args) -> str:
    group = getattr(args, "group", None)
    return f"{args.command} {group}" if group else args.command


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    name = _subcommand(args)
    try:
        if args.seed is None:
            args.seed = load_config()["seed"]
        workers = get_worker_count(args.workers)
        inputs = {k: v for k, v in sorted(vars(args).items()) if k not in UNECHOED}
        print(f"🔍 {name}...", file=sys.stderr)
        started = time.perf_counter()
        outcome = args.handler(args, workers)
        elapsed = (time.perf_counter() - started) * 1000
        report = build_report(name, inputs, outcome.result, outcome.seeds, elapsed, outcome.timing)
        write_report(report, args.output, args.format)
    except InconclusiveError as e:
        print(f"❌ Inconclusive: {e}", file=sys.stderr)
        return e.exit_code
    except RamseyLabError as e:
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2
    print(f"✅ {name} done in {elapsed:.0f} ms", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
