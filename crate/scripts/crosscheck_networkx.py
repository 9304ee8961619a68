#!/usr/bin/env python3
"""Cross-check pcnkit's static metrics against networkx.

Usage: crosscheck_networkx.py <pcnkit-binary> <net.pcn> [...]

For each network file, runs `pcnkit stats` and recomputes clustering,
assortativity, betweenness summary, average path length, diameter and the
harmonic path length with networkx. Exits non-zero on any disagreement
beyond 1e-9 (1e-6 for assortativity, which networkx accumulates in a
different order).
"""
import json
import math
import statistics
import subprocess
import sys

import networkx as nx

TOL = 1e-9


def load_pcn(path):
    g = nx.Graph()
    n = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("#n "):
                n = int(line.split()[1])
            elif line and not line.startswith("#"):
                a, b = map(int, line.split())
                g.add_edge(a, b)
    g.add_nodes_from(range(n))
    return g


def check(name, got, want, tol=TOL):
    if want is None:
        ok = got is None
    else:
        ok = got is not None and abs(got - want) <= tol
    print(f"  {name:<14} pcnkit={got!r:<24} networkx={want!r:<24} {'ok' if ok else 'MISMATCH'}")
    return ok


def main():
    binary, *paths = sys.argv[1:]
    failures = 0
    for path in paths:
        print(f"== {path}")
        g = load_pcn(path)
        n = g.number_of_nodes()
        stats = json.loads(
            subprocess.run([binary, "stats", path], capture_output=True, check=True).stdout
        )

        ok = check("clustering", stats["c"], nx.average_clustering(g))

        try:
            r = nx.degree_assortativity_coefficient(g)
            r = None if math.isnan(r) else r
        except Exception:
            r = None
        ok &= check("assortativity", stats["r"], r, tol=1e-6)

        bt = nx.betweenness_centrality(g, normalized=True)
        values = [bt[v] for v in range(n)]
        ok &= check("bt_mean", stats["bt_mean"], statistics.mean(values))
        ok &= check("bt_max", stats["bt_max"], max(values))

        if nx.is_connected(g):
            ok &= check("apl", stats["apl"], nx.average_shortest_path_length(g))
            ok &= check("diameter", stats["diameter"], float(nx.diameter(g)))

        harmonic_sum = sum(nx.harmonic_centrality(g).values())
        hpl = n * (n - 1) / harmonic_sum if harmonic_sum else None
        ok &= check("hpl", stats["hpl"], hpl)

        if not ok:
            failures += 1
    if failures:
        print(f"FAILED: {failures} network(s) disagree")
        return 1
    print("all networks agree")
    return 0


if __name__ == "__main__":
    sys.exit(main())
