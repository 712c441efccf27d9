"""Acceptance criteria, one test each.

Every test records a one-line verdict; ``conftest.pytest_terminal_summary``
prints them at the end of the run.  Criterion 9 is informational: its verdict
is reported but does not fail the suite.
"""

import json
import math
import os
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from frucht_genus.aut import automorphism_group
from frucht_genus.construct import hypercube
from frucht_genus.genus import euler_girth_lower_bound, exact_genus, heuristic_genus_upper, hypercube_genus
from frucht_genus.graph import (Graph, complete_bipartite_graph, complete_graph, cycle_graph, path_graph,
                                petersen_graph, star_graph)
from frucht_genus.groups import named_group
from frucht_genus.io import format_edge_list
from frucht_genus.trees import certify_family
from frucht_genus.verify import verify_lemma2, verify_theorem1

from conftest import brute_force_aut_count

VERDICTS = {}


@contextmanager
def criterion(key, label):
    start = time.perf_counter()
    detail = []
    try:
        yield detail
    except BaseException:
        VERDICTS[key] = (False, label, detail, time.perf_counter() - start)
        raise
    VERDICTS[key] = (True, label, detail, time.perf_counter() - start)


def test_c1_gadget_certification():
    with criterion(1, "unary family certified for m <= 50 in < 120 s") as detail:
        start = time.perf_counter()
        report = certify_family("unary", 50)
        elapsed = time.perf_counter() - start
        detail.append(f"{len(report.checks)} checks, {elapsed:.1f}s")
        assert report.all_pass, report.failures()[:3]
        assert elapsed < 120


@pytest.mark.parametrize("n, limit", [(2, 10), (3, 30), (4, 600)])
def test_c2_lemma2(n, limit):
    with criterion(f"2 (n={n})", f"lemma2 n={n} passes in < {limit} s") as detail:
        report = verify_lemma2(n)
        detail.append(f"aut order {report.aut_order}, {report.wall_time:.1f}s")
        assert report.passed, report.to_text()
        assert report.aut_order == 1
        assert any(c["name"] == f"topological core isomorphic to Q_{n}" and c["pass"] for c in report.checks)
        assert report.wall_time < limit


def test_c3_genus_formula():
    with criterion(3, "hypercube genus table n=2..10 equals the Euler-girth bound") as detail:
        table = [hypercube_genus(n) for n in range(2, 11)]
        detail.append(str(table))
        assert table == [0, 0, 1, 5, 17, 49, 129, 321, 769]
        assert all(hypercube_genus(n) == euler_girth_lower_bound(hypercube(n)) for n in range(2, 11))


def test_c4_exact_genus_suite():
    with criterion(4, "exact genus: planar cases 0, K5/K33/Petersen 1, < 60 s") as detail:
        start = time.perf_counter()
        planar = [complete_graph(4), hypercube(3).without_colors()]
        planar += [path_graph(n) for n in range(1, 9)] + [star_graph(k) for k in range(1, 7)]
        planar += [cycle_graph(n) for n in range(3, 11)]
        planar.append(Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]))
        toroidal = [complete_graph(5), complete_bipartite_graph(3, 3), petersen_graph()]
        assert all(exact_genus(g).exact == 0 for g in planar)
        assert [exact_genus(g).exact for g in toroidal] == [1, 1, 1]
        elapsed = time.perf_counter() - start
        detail.append(f"{len(planar) + len(toroidal)} graphs, {elapsed:.2f}s")
        assert elapsed < 60


def test_c5_q4_certificate():
    with criterion(5, "Q4: lower 1, annealing witness 1 (seed 42, 1e5 iterations)") as detail:
        q4 = hypercube(4).without_colors()
        report = heuristic_genus_upper(q4, 100_000, 42)
        detail.append(f"lower {report.lower}, upper {report.upper}, {report.stats['iterations']} iterations used")
        assert euler_girth_lower_bound(q4) == 1
        assert report.upper == 1 and report.exact == 1 == hypercube_genus(4)


@pytest.mark.parametrize("spec, bound, limit", [("cyclic:3", 1, 120), ("cyclic:4", 5, 1800),
                                                ("klein4", 5, 1800)])
def test_c6_theorem1(spec, bound, limit):
    with criterion(f"6 ({spec})", f"theorem1 n=2 {spec}: aut = |G|, regular action, bound {bound}") as detail:
        group = named_group(spec)
        report = verify_theorem1(2, group)
        checks = {c["name"]: c for c in report.checks}
        detail.append(f"aut order {report.aut_order}, {report.sizes['vertices']} vertices, {report.wall_time:.1f}s")
        assert report.passed, report.to_text()
        assert report.aut_order == group.order
        assert checks["induced action on group elements equals the right regular action"]["pass"]
        assert checks["genus lower bound"]["observed"] == bound == 2 ** (2 + group.order - 4) * (group.order - 3) + 1
        assert report.wall_time < limit


def test_c7_engine_ground_truth(corpus):
    with criterion(7, "engine order equals brute force on all graphs <= 8 vertices and named graphs") as detail:
        named = [cycle_graph(n) for n in range(3, 11)] + [path_graph(n) for n in range(1, 11)]
        named += [hypercube(3).without_colors(), petersen_graph()]
        mismatches = sum(automorphism_group(g).order != brute_force_aut_count(g) for g in corpus + named)
        detail.append(f"{len(corpus)} corpus graphs + {len(named)} named, {mismatches} mismatches")
        assert len(corpus) == 13598
        assert mismatches == 0
        assert automorphism_group(petersen_graph()).order == 120
        assert automorphism_group(hypercube(3)).order == 48 == 2 ** 3 * math.factorial(3)


def _cli(args, cwd):
    proc = subprocess.run([sys.executable, "-m", "frucht_genus.cli", *args], cwd=cwd,
                          capture_output=True, timeout=600)
    return proc.returncode, proc.stdout


def test_c8_determinism(tmp_path):
    with criterion(8, "byte-identical --format json across repeated CLI runs") as detail:
        (tmp_path / "q3.el").write_text(format_edge_list(hypercube(3).without_colors()))
        (tmp_path / "k5.el").write_text(format_edge_list(complete_graph(5)))
        (tmp_path / "z3.csv").write_text("e,a,b\ne,a,b\na,b,e\nb,e,a\n")
        runs = [
            ["tree", "gen", "--m", "3"],
            ["tree", "gen", "--family", "compact", "--m", "3"],
            ["tree", "certify", "--max-m", "5"],
            ["build", "asym", "--n", "3"],
            ["build", "group", "--group", "cyclic:3", "--n", "2", "--out", "z3.el"],
            ["group", "validate", "--table", "z3.csv"],
            ["aut", "--in", "q3.el"],
            ["genus", "bounds", "--in", "q3.el"],
            ["genus", "exact", "--in", "k5.el"],
            ["genus", "heuristic", "--in", "k5.el", "--iters", "5000", "--seed", "7"],
            ["verify", "lemma2", "--n", "3"],
            ["verify", "theorem1", "--group", "cyclic:3", "--n", "2"],
        ]
        exports = [["export", "--in", "q3.el", "--format", "graph6"], ["export", "--in", "q3.el", "--format", "dot"]]
        for args in runs + exports:
            json_args = args if args[0] == "export" else args + ["--format", "json"]
            first = _cli(json_args, tmp_path)
            side = (tmp_path / "z3.el").read_bytes() if "z3.el" in args else b""
            second = _cli(json_args, tmp_path)
            assert first[0] == 0, args
            assert first == second, args
            if side:
                assert side == (tmp_path / "z3.el").read_bytes()
                assert (tmp_path / "z3.el.provenance.json").exists()
            if args[0] != "export":
                json.loads(first[1])
        detail.append(f"{len(runs) + len(exports)} subcommand invocations, each run twice")


def test_c9_z2_probe():
    with criterion(9, "Z2 probe (informational): aut order 2, flagged outside hypothesis") as detail:
        report = verify_theorem1(2, named_group("cyclic:2"))
        flagged = any("outside" in note for note in report.notes)
        detail.append(f"aut order {report.aut_order}, regular action "
                      f"{next(c['pass'] for c in report.checks if c['name'].startswith('induced'))}, "
                      f"flagged {flagged}")
        assert flagged and "automorphism group order" in report.informational
        if report.aut_order != 2:
            detail.append("INFORMATIONAL FAILURE: order differs from 2")


@pytest.mark.skipif(not os.environ.get("FRUCHT_STRETCH"), reason="stretch goal; set FRUCHT_STRETCH=1 (about 9 min)")
def test_c6_stretch_sym3_compact():
    with criterion("6 (sym:3 stretch)", "theorem1 n=2 sym:3 with the compact family") as detail:
        report = verify_theorem1(2, named_group("sym:3"), family="compact")
        detail.append(f"aut order {report.aut_order}, {report.sizes['vertices']} vertices, {report.wall_time:.1f}s")
        assert report.passed, report.to_text()
        assert report.aut_order == 6
