#!/usr/bin/env python3
"""
Test the command-line surface: reports, exit codes and determinism.
Uses the fixtures in docs/examples.
"""

import json
import os
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli import main
from graph_io import read_coloured_clique, read_colouring
from graphs import Graph
from reports import payload_bytes

EXAMPLES = Path(__file__).resolve().parent / "docs" / "examples"


def fixture(name):
    return str(EXAMPLES / name)


def run(args, tmp, name="report.json"):
    out = Path(tmp) / name
    code = main(args + ["--output", str(out)])
    report = json.loads(out.read_text(encoding="utf-8")) if code == 0 else None
    return code, report


def test_arrows_reports():
    with tempfile.TemporaryDirectory() as tmp:
        code, report = run(["arrows", "--graph", fixture("k6.txt"), "--target", fixture("k3.txt")], tmp)
        assert code == 0
        assert report["subcommand"] == "arrows"
        assert report["result"]["arrows"] is True
        assert report["schema_version"] == 1
        assert report["inputs"]["r"] == 2

        witness = Path(tmp) / "witness.txt"
        code, report = run(["arrows", "--graph", fixture("k5.txt"), "--target", fixture("k3.txt"),
                            "--witness", str(witness)], tmp)
        assert code == 0
        assert report["result"]["arrows"] is False
        c = read_colouring(witness, Graph.complete(5), 2)
        for a, b, d in ((a, b, d) for a in range(5) for b in range(a + 1, 5) for d in range(b + 1, 5)):
            assert len({c[(a, b)], c[(a, d)], c[(b, d)]}) > 1


def test_exit_codes():
    with tempfile.TemporaryDirectory() as tmp:
        bad = Path(tmp) / "bad.txt"
        bad.write_text("3 2\n0 1\n1 7\n", encoding="utf-8")
        assert main(["arrows", "--graph", str(bad), "--target", fixture("k3.txt")]) == 2
        assert main(["arrows", "--graph", str(Path(tmp) / "missing.txt"), "--target", fixture("k3.txt")]) == 2
        assert main(["no-such-command"]) == 2
        assert main(["arrows", "--graph", fixture("k6.txt")]) == 2
        assert main(["--help"]) == 0
        assert main(["blowup-ramsey", "--graph", fixture("k5.txt"), "--target", fixture("k3.txt")]) == 2
        assert main(["arrows", "--graph", fixture("k6.txt"), "--target", fixture("k3.txt"),
                     "--node-budget", "1"]) == 3
        assert main(["unavoidable", "family", "-r", "2", "-t", "1"]) == 2
    print("  ✅ 0 for answers, 2 for bad input, 3 for exhausted budgets")


def test_blowup_ramsey_and_minimal():
    with tempfile.TemporaryDirectory() as tmp:
        code, report = run(["blowup-ramsey", "--graph", fixture("k3.txt"), "--target", fixture("p3.txt"),
                            "-t", "1", "--n-max", "3"], tmp)
        assert code == 0 and report["result"]["value"] == 1

        code, report = run(["minimal", "--graph", fixture("k6.txt"), "--target", fixture("k3.txt")], tmp)
        assert code == 0 and report["result"]["minimal"] is True


def test_girth_and_three_chromatic():
    with tempfile.TemporaryDirectory() as tmp:
        dump = Path(tmp) / "h.txt"
        code, report = run(["girth", "--graph", fixture("k4.g6"), "--target", fixture("k3.txt"),
                            "--dump", str(dump)], tmp)
        assert code == 0
        assert report["result"]["girth"] == "3"
        assert report["result"]["hyperedges"] == 4

        code, report = run(["girth", "--hypergraph", str(dump)], tmp)
        assert code == 0 and report["result"]["girth"] == "3"

        code, report = run(["girth", "--graph", fixture("f2.txt"), "--target", fixture("k3.txt"), "-s", "3"], tmp)
        assert report["result"]["girth"] == "inf"
        assert report["result"]["preconditions"]["passed"] is True

        code, report = run(["check-3cc", "--target", fixture("c5.txt")], tmp)
        assert report["result"]["three_chromatically_connected"] is False
        code, report = run(["check-3cc", "--target", fixture("k4.g6")], tmp)
        assert report["result"]["three_chromatically_connected"] is True

        assert main(["girth", "--graph", fixture("k3.txt")]) == 2


def test_recolour_and_verify():
    with tempfile.TemporaryDirectory() as tmp:
        blown = Path(tmp) / "blown.txt"
        code, report = run(["recolour", "--graph", fixture("hub_path.txt"), "--edge", "0 1", "--pivot", "0",
                            "--colouring", fixture("hub_path_colouring.txt"), "-s", "4",
                            "--blown-output", str(blown)], tmp)
        assert code == 0
        result = report["result"]
        assert result["certificate_ok"] is True
        assert result["recoloured"][1:4] == [[[0, 2]], [[0, 3]], [[0, 4]]]
        assert result["verification"]["passed"] is True
        assert all(step["passed"] for step in result["claim_per_step"])

        code, report = run(["verify", "--graph", fixture("hub_path.txt"), "--colouring", str(blown),
                            "-s", "4"], tmp)
        assert code == 0 and report["result"]["passed"] is True


def test_unavoidable_subcommands():
    with tempfile.TemporaryDirectory() as tmp:
        code, report = run(["unavoidable", "enumerate", "-r", "2"], tmp)
        assert code == 0 and report["result"]["count"] == 4
        code, report = run(["unavoidable", "enumerate", "-r", "2", "--quotient-colours"], tmp)
        assert report["result"]["count"] == 2
        assert report["subcommand"] == "unavoidable enumerate"

        code, report = run(["unavoidable", "family", "-r", "2", "-t", "2"], tmp)
        assert report["result"]["count"] == 4

        code, report = run(["unavoidable", "detect", "--colouring", fixture("two_cliques.txt")], tmp)
        assert code == 0
        assert report["result"]["found"] is True
        assert report["result"]["member_index"] == 0

        code, report = run(["unavoidable", "drc", "--graph", fixture("k6.txt"), "-K", "2", "-t", "2",
                            "--neighbourhood-size", "1", "--seed", "4"], tmp)
        assert code == 0
        assert report["result"]["found"] is True
        assert report["seeds"] == [4]


def test_unavoidable_clique_files():
    with tempfile.TemporaryDirectory() as tmp:
        saved = Path(tmp) / "patterns"
        code, report = run(["unavoidable", "enumerate", "-r", "2", "--save-dir", str(saved)], tmp)
        assert code == 0
        files = report["result"]["files"]
        assert files == [f"pattern_{i:03d}.txt" for i in range(4)]
        assert "save_dir" not in report["inputs"]
        first = read_coloured_clique(saved / files[0])
        assert list(first.vcol) == report["result"]["patterns"][0]["vertex_colours"]
        assert list(first.ecol) == report["result"]["patterns"][0]["pair_colours"]

        family_dir = Path(tmp) / "family"
        code, family = run(["unavoidable", "family", "-r", "2", "-t", "2", "--save-dir", str(family_dir)],
                           tmp, "family.json")
        assert code == 0
        assert family["result"]["files"][0] == "member_000.txt"
        member = read_coloured_clique(family_dir / "member_000.txt")
        assert member.k == family["result"]["members"][0]["k"]
        assert list(member.vcol) == family["result"]["members"][0]["vertex_colours"]

        colouring = fixture("two_cliques.txt")
        code, default = run(["unavoidable", "detect", "--colouring", colouring], tmp, "default.json")
        code, picked = run(["unavoidable", "detect", "--colouring", colouring, "--pattern", str(saved / files[0])],
                           tmp, "picked.json")
        assert code == 0
        assert picked["result"]["member_index"] == 0
        assert picked["result"]["member"] == default["result"]["member"]
        assert picked["result"]["embedding"] == default["result"]["embedding"]

        assert main(["unavoidable", "detect", "--colouring", colouring, "-r", "3",
                     "--pattern", str(saved / files[0])]) == 2
        broken = Path(tmp) / "broken.txt"
        broken.write_text("2 2\n0 1\n", encoding="utf-8")
        assert main(["unavoidable", "detect", "--colouring", colouring, "--pattern", str(broken)]) == 2
    print("  ✅ Pattern files written by enumerate feed detect")


def test_tree_subcommands():
    with tempfile.TemporaryDirectory() as tmp:
        code, report = run(["trees", "lemma32", "--instance", fixture("path_swap.json")], tmp)
        assert code == 0 and report["result"]["pair"] == [1, 2]

        code, report = run(["trees", "copies", "--tree", fixture("p3.txt"), "--graph", fixture("k3.txt")], tmp)
        assert report["result"]["count"] == 3

        code, report = run(["trees", "coherent", "--graph", fixture("k2.txt"), "--spec", fixture("k2_spec.txt"),
                            "--f-table", fixture("f_table.txt"), "--base-colouring", fixture("k2_red.txt"),
                            "--blown-colouring", fixture("k33_planted.txt")], tmp)
        assert code == 0
        assert report["result"]["coherent"] is False
        assert report["result"]["witness"]["left"] == [0, 1]

        code, report = run(["trees", "table", "--graphs", fixture("k3.txt"), fixture("k2.txt"),
                            "--tree", fixture("p3.txt"), "-t", "1", "--n-max", "3"], tmp)
        assert code == 0
        rows = report["result"]["table"]
        assert [row["graph"] for row in rows] == ["k3", "k2"]
        assert [row["status"] for row in rows] == ["ok", "not applicable"]


def test_payload_is_independent_of_workers():
    with tempfile.TemporaryDirectory() as tmp:
        payloads = []
        for workers in ("1", "4"):
            code, report = run(["unavoidable", "experiment", "-n", "40", "--min-edges", "300", "--trials", "8",
                                "--seed", "11", "--workers", workers], tmp, f"run{workers}.json")
            assert code == 0
            payloads.append(payload_bytes(report))
        assert payloads[0] == payloads[1]

        payloads = []
        for workers in ("1", "3"):
            code, report = run(["minimal", "--graph", fixture("k6.txt"), "--target", fixture("k3.txt"),
                                "--workers", workers], tmp, f"min{workers}.json")
            payloads.append(payload_bytes(report))
        assert payloads[0] == payloads[1]


def test_text_format_and_bad_worker_setting():
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "report.txt"
        assert main(["unavoidable", "enumerate", "-r", "1", "--format", "text", "--output", str(out)]) == 0
        text = out.read_text(encoding="utf-8")
        assert text.startswith("unavoidable enumerate (schema 1)")

        previous = os.environ.get("RAMSEY_LAB_THREADS")
        os.environ["RAMSEY_LAB_THREADS"] = "zero"
        try:
            assert main(["unavoidable", "enumerate", "-r", "1"]) == 2
        finally:
            if previous is None:
                del os.environ["RAMSEY_LAB_THREADS"]
            else:
                os.environ["RAMSEY_LAB_THREADS"] = previous


def main_suite():
    from suite_runner import run_suite

    return run_suite("CLI TEST SUMMARY", [
        test_arrows_reports,
        test_exit_codes,
        test_blowup_ramsey_and_minimal,
        test_girth_and_three_chromatic,
        test_recolour_and_verify,
        test_unavoidable_subcommands,
        test_unavoidable_clique_files,
        test_tree_subcommands,
        test_payload_is_independent_of_workers,
        test_text_format_and_bad_worker_setting,
    ])


if __name__ == "__main__":
    sys.exit(main_suite())
