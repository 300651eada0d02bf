"""Hill-climbing search for a K3,n minor in a grid graph.

Splits the host into connected regions and moves one boundary vertex at a
time, scoring a partition by the largest number of regions adjacent to a
common triple of regions.  A hit prints the branch sets (hubs first) as
coordinate lists ready for ``src/gridgenus/fixtures/packings.json``.

    python tools/search_k3n.py 3 2 2 --leaves 12 --regions 15 --seed 0

The K3,8 certificate for G(2,2,2) and the K3,12 certificate for G(3,2,2)
came from this search with seed 0.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time

from gridgenus.graph import SimpleGraph, complete_bipartite, verify_minor_witness, witness_from_branch_sets
from gridgenus.grid import grid_graph, index_to_coord


def connected(host: SimpleGraph, vs: list[int]) -> bool:
    if not vs:
        return False
    inside = set(vs)
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        u = stack.pop()
        for w in host.adjacency[u]:
            if w in inside and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(inside)


def score(host: SimpleGraph, owner: list[int], regions: int):
    nb = [set() for _ in range(regions)]
    for u, v in host.edges:
        a, b = owner[u], owner[v]
        if a != b:
            nb[a].add(b)
            nb[b].add(a)
    best, arg = -1, None
    for hubs in itertools.combinations(range(regions), 3):
        common = (nb[hubs[0]] & nb[hubs[1]] & nb[hubs[2]]) - set(hubs)
        if len(common) > best:
            best, arg = len(common), (hubs, common)
    return best, arg


def random_partition(host: SimpleGraph, regions: int, rng: random.Random) -> list[int]:
    n = host.vertex_count
    owner = [-1] * n
    for i, s in enumerate(rng.sample(range(n), regions)):
        owner[s] = i
    while -1 in owner:
        grow = [(v, w) for v in range(n) if owner[v] >= 0 for w in host.adjacency[v] if owner[w] < 0]
        v, w = rng.choice(grow)
        owner[w] = owner[v]
    return owner


def climb(host: SimpleGraph, regions: int, need: int, rng: random.Random, steps: int):
    owner = random_partition(host, regions, rng)
    cur, arg = score(host, owner, regions)
    for _ in range(steps):
        if cur >= need:
            return owner, arg
        v = rng.randrange(host.vertex_count)
        a = owner[v]
        options = {owner[w] for w in host.adjacency[v]} - {a}
        if not options:
            continue
        b = rng.choice(sorted(options))
        rest = [u for u in range(host.vertex_count) if owner[u] == a and u != v]
        if not connected(host, rest):
            continue
        owner[v] = b
        s, g = score(host, owner, regions)
        # accept sideways moves and, rarely, worse ones
        if s >= cur or rng.random() < 0.05:
            cur, arg = s, g
        else:
            owner[v] = a
    return (owner, arg) if cur >= need else None


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("params", nargs="+", type=int)
    p.add_argument("--leaves", type=int, required=True, help="n in K3,n")
    p.add_argument("--regions", type=int, required=True, help="partition size (>= n + 3)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=3000, help="moves per restart")
    p.add_argument("--seconds", type=float, default=900.0)
    a = p.parse_args(argv)
    host = grid_graph(a.params)
    rng = random.Random(a.seed)
    start = time.monotonic()
    restart = 0
    while time.monotonic() - start < a.seconds:
        hit = climb(host, a.regions, a.leaves, rng, a.steps)
        if hit:
            owner, (hubs, leaves) = hit
            parts = list(hubs) + sorted(leaves)[: a.leaves]
            sets = [[u for u in range(host.vertex_count) if owner[u] == r] for r in parts]
            w = witness_from_branch_sets(host, complete_bipartite(3, a.leaves), dict(enumerate(sets)))
            assert verify_minor_witness(host, w)
            coords = [sorted(list(index_to_coord(a.params, v)) for v in s) for s in sets]
            print(f"found on restart {restart}", file=sys.stderr)
            print(json.dumps(coords))
            return 0
        restart += 1
    print("no witness found within the time limit", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
