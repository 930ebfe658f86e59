#!/usr/bin/env python3
"""Builds the kanon_py extension with cargo and exercises its surface.

Usage: python3 python/smoke_test.py [--debug]
"""

import argparse
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_extension(debug: bool) -> Path:
    profile = "debug" if debug else "release"
    cmd = ["cargo", "build", "-p", "kanon-python"]
    if not debug:
        cmd.append("--release")
    subprocess.run(cmd, cwd=ROOT, check=True)
    built = ROOT / "target" / profile / "libkanon_py.so"
    if not built.exists():  # e.g. macOS
        built = ROOT / "target" / profile / "libkanon_py.dylib"
    if not built.exists():
        sys.exit(f"extension library not found under target/{profile}")
    stage = Path(tempfile.mkdtemp(prefix="kanon-py-"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    target = stage / f"kanon_py{suffix}"
    shutil.copy2(built, target)
    return stage


def check(label: str, condition: bool) -> None:
    if not condition:
        sys.exit(f"FAIL: {label}")
    print(f"PASS: {label}")


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--debug", action="store_true", help="build without --release")
    args = parser.parse_args()

    sys.path.insert(0, str(build_extension(args.debug)))
    import kanon_py as kp

    worked_example = kp.Table([
        ["x", "a", "b"],
        ["z", "c", "d"],
        ["y", "a", "b"],
        ["z", "c", "e"],
    ])
    check("table shape", (worked_example.n, worked_example.m) == (4, 3))
    check("csv round trip", kp.Table.from_csv(worked_example.to_csv()).rows() == worked_example.rows())

    exact = kp.solve(worked_example, 2, solver="exact")
    check("exact cost 4", exact.cost == 4)
    check(
        "exact grid matches the reference anonymization",
        exact.anonymized
        == [["*", "a", "b"], ["z", "c", "*"], ["*", "a", "b"], ["z", "c", "*"]],
    )
    check("exact clustering pairs rows 0/2 and 1/3", exact.clustering == [0, 1, 0, 1])
    check("bruteforce agrees", kp.solve(worked_example, 2, solver="bruteforce").cost == 4)
    check("greedy agrees here", kp.solve(worked_example, 2, solver="greedy").cost == 4)
    check("suppress-all costs n*m", kp.solve(worked_example, 2, solver="suppress-all").cost == 12)
    check(
        "verification returns the cost",
        kp.verify_solution(worked_example, exact.anonymized, 2) == 4,
    )

    try:
        kp.solve(worked_example, 5, solver="exact")
        sys.exit("FAIL: k > n must raise")
    except ValueError as err:
        check("k > n raises infeasible", "infeasible" in str(err))

    check("matches ignores stars", kp.matches(["x", "a", "b"], ["*", "a", "b"]))
    check("closure stars disagreements", kp.closure([["x", "a"], ["y", "a"]]) == ["*", "a"])
    check("bad columns of rows 0,2", kp.bad_column_count(worked_example, [0, 2]) == 1)
    check(
        "clustering cost of the optimum",
        kp.clustering_cost(worked_example, [[0, 2], [1, 3]], 2) == 4,
    )
    check(
        "apply_clustering reproduces the grid",
        kp.apply_clustering(worked_example, [[0, 2], [1, 3]], 2) == exact.anonymized,
    )

    g = kp.Graph.named("k4")
    check("k4 shape", (g.vertex_count, g.edge_count) == (4, 6))
    rt = kp.reduce_graph(g)
    check("reduction rows 106", rt.num_rows == 20 * 4 + 2 * 6 + 14)
    check("abc 134", rt.abc == 134 and kp.abc(g) == 134)
    check("special symbols 15r+14", rt.special_symbols == 15 * 4 + 14)
    check("k fixed to 7", rt.k == 7 and kp.REDUCTION_K == 7)

    cover = kp.min_vertex_cover(g)
    check("minimum cover of k4 has size 3", len(cover) == 3)
    report = kp.cover_to_solution(rt, cover)
    check("cover solution costs abc + tau", report.cost == 134 + 3)
    check(
        "constructed solution verifies",
        kp.verify_solution(rt.table(), report.anonymized, 7) == report.cost,
    )
    ledger = kp.extra_cost(rt, report.anonymized)
    check("extra cost equals tau", ledger.total_extra == 3)
    back = kp.solution_to_cover(rt, report.anonymized)
    check("extracted cover within extra cost", len(back) <= ledger.total_extra)

    t1 = kp.generate_table(1, 6, 3, 3)
    t2 = kp.generate_table(1, 6, 3, 3)
    check("generator is deterministic", t1.rows() == t2.rows())

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
