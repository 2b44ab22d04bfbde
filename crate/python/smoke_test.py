#!/usr/bin/env python3
"""Smoke test for the gcnlab extension module.

Build and stage the module first:

    cargo build -p gcnlab-py --features extension-module
    cp target/debug/libgcnlab.so python/gcnlab.so

then run `python3 python/smoke_test.py`.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import gcnlab


def check(label, ok):
    print(f"[{'pass' if ok else 'FAIL'}] {label}")
    if not ok:
        sys.exit(1)


def main():
    # principal lattice of degree 3: a GC_3 set with three maximal lines
    pl3 = gcnlab.NodeSet.principal(3)
    check("principal lattice has 10 nodes", len(pl3) == 10 and pl3.degree() == 3)

    an = gcnlab.Analysis(pl3)
    check("principal lattice is a GC set", an.is_gc_set())
    check("three maximal lines", an.mu() == 3)
    check("classified generalized-principal",
          an.classification() == "generalized-principal")

    # the edge x = 0 is maximal: 4 nodes, used by every node off it
    edge = gcnlab.Line("1", "0", "0")
    check("edge has n+1 nodes", an.line_node_count(edge) == 4)
    check("edge sigma", an.sigma(edge) == 4)
    report = json.loads(an.analyze_line(edge))
    check("edge usage is a binomial", report["usage_size"] == 6)
    check("edge clauses pass", report["pass"])

    # whole-set sweep
    ok, sweep = an.verify()
    check("whole-set clause sweep passes", ok)
    check("sweep covers every node-line",
          len(json.loads(sweep)["lines"]) > 0)

    # a counterexample family: degree-5 set whose 4-node line is unused
    xs = gcnlab.generate("x-star")
    check("x-star has 21 nodes", len(xs) == 21 and xs.degree() == 5)
    xan = gcnlab.Analysis(xs)
    ell = xs.annotated_lines()[0]
    check("distinguished line has 4 nodes", xan.line_node_count(ell) == 4)
    check("distinguished line is unused", xan.used_nodes(ell) == [])

    # round trip through the JSON file format
    again = gcnlab.NodeSet.from_json(xs.to_json())
    check("json round trip", again.to_json() == xs.to_json())

    # rendering
    check("svg render", xs.to_svg().startswith("<svg"))

    # a named suite
    ok, checks = gcnlab.run_suite("prop33")
    check("prop33 suite passes", ok and len(checks) == 3)
    check("suite names listed", "corpus" in gcnlab.suite_names())

    print("smoke test passed")


if __name__ == "__main__":
    main()
