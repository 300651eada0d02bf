"""Finite simple undirected graphs.

Vertices are dense integer ids ``0..n-1``.  Everything here is immutable and
deterministic; searches are bounded by a node budget and raise
:class:`BudgetExhausted` instead of guessing.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

DEFAULT_BUDGET = 10**7


class GraphError(ValueError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class BudgetExhausted(RuntimeError):
    """A bounded search ran out of nodes before reaching an answer."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: frozenset[Edge]

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise GraphError("negative vertex count")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at {u}")
            if not (0 <= u < v < n):
                raise GraphError(f"edge {(u, v)} not normalized or out of range")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        es = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at {u}")
            es.add(_norm_edge(u, v))
        return cls(n, frozenset(es))

    @classmethod
    def _trusted(cls, n: int, edges: frozenset[Edge]) -> "SimpleGraph":
        # caller guarantees normalized, in-range, loop-free edges
        g = object.__new__(cls)
        object.__setattr__(g, "vertex_count", n)
        object.__setattr__(g, "edges", edges)
        return g

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def induced(self, vertices: Iterable[int]) -> tuple["SimpleGraph", list[int]]:
        """Induced subgraph, relabelled densely; also returns the new->old map."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return SimpleGraph.from_edges(len(old), es), old

    def disjoint_union(self, other: "SimpleGraph") -> "SimpleGraph":
        k = self.vertex_count
        es = list(self.edges) + [(u + k, v + k) for u, v in other.edges]
        return SimpleGraph.from_edges(k + other.vertex_count, es)

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1

    # -- text format: header ``n m`` then ``u v`` lines, sorted --------------

    def to_text(self) -> str:
        lines = [f"{self.vertex_count} {self.edge_count}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SimpleGraph":
        rows = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 2:
            raise GraphError("missing 'n m' header")
        n, m = int(rows[0][0]), int(rows[0][1])
        body = rows[1:]
        if len(body) != m:
            raise GraphError(f"header says {m} edges, found {len(body)}")
        edges = [(int(a), int(b)) for a, b in body]
        g = cls.from_edges(n, edges)
        if g.edge_count != m:
            raise GraphError("duplicate edges in graph text")
        return g


# ---------------------------------------------------------------------------
# constructors


def path_graph(length: int) -> SimpleGraph:
    if length < 0:
        raise GraphError("path length must be non-negative")
    return SimpleGraph.from_edges(length + 1, ((i, i + 1) for i in range(length)))


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(m: int, n: int) -> SimpleGraph:
    """K_{m,n}; side A is ``0..m-1``, side B is ``m..m+n-1``."""
    return SimpleGraph.from_edges(m + n, ((i, m + j) for i in range(m) for j in range(n)))


def cartesian_product(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """Vertex ``(u, v)`` gets id ``u * |V(h)| + v`` (row-major)."""
    nh = h.vertex_count
    edges = []
    for u in range(g.vertex_count):
        for a, b in h.edges:
            edges.append((u * nh + a, u * nh + b))
    for a, b in g.edges:
        for v in range(nh):
            edges.append((a * nh + v, b * nh + v))
    return SimpleGraph.from_edges(g.vertex_count * nh, edges)


# ---------------------------------------------------------------------------
# structure


def connected_components(g: SimpleGraph) -> list[frozenset[int]]:
    seen = [False] * g.vertex_count
    comps = []
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def girth(g: SimpleGraph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    adj = g.adjacency
    for root in range(g.vertex_count):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]

    def block_graphs(self, host: SimpleGraph) -> list[SimpleGraph]:
        return [host.induced(b)[0] for b in self.blocks]


def block_decomposition(g: SimpleGraph) -> BlockDecomposition:
    """Maximal 2-connected pieces (bridges count as blocks) of a connected graph."""
    if g.vertex_count == 0:
        return BlockDecomposition((), frozenset())
    if not g.is_connected():
        raise DisconnectedGraphError("block decomposition needs a connected graph")
    if g.vertex_count == 1:
        return BlockDecomposition((frozenset([0]),), frozenset())

    adj = g.adjacency
    disc = [-1] * g.vertex_count
    low = [0] * g.vertex_count
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    edge_stack: list[Edge] = []
    timer = 0

    root = 0
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    # iterative DFS: (vertex, parent, neighbour iterator)
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                edge_stack.append((u, w))
                disc[w] = low[w] = timer
                timer += 1
                if u == root:
                    root_children += 1
                stack.append((w, u, iter(adj[w])))
                advanced = True
                break
            if w != parent and disc[w] < disc[u]:
                edge_stack.append((u, w))
                low[u] = min(low[u], disc[w])
        if advanced:
            continue
        stack.pop()
        if not stack:
            break
        p = stack[-1][0]
        low[p] = min(low[p], low[u])
        if low[u] >= disc[p]:
            if p != root:
                cuts.add(p)
            comp = set()
            while True:
                a, b = edge_stack.pop()
                comp.update((a, b))
                if (a, b) == (p, u):
                    break
            blocks.append(frozenset(comp))
    if root_children > 1:
        cuts.add(root)
    blocks.sort(key=lambda b: sorted(b))
    return BlockDecomposition(tuple(blocks), frozenset(cuts))


# ---------------------------------------------------------------------------
# isomorphism: colour refinement + individualisation


def _refine(adj: list[list[int]], colors: list[int]) -> list[int]:
    ncls = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == ncls:
            return new
        colors, ncls = new, len(table)


def is_isomorphic(g: SimpleGraph, h: SimpleGraph, budget: int = DEFAULT_BUDGET) -> bool:
    """Exact isomorphism test; raises :class:`BudgetExhausted` past ``budget`` nodes."""
    return find_isomorphism(g, h, budget) is not None


def find_isomorphism(
    g: SimpleGraph, h: SimpleGraph, budget: int = DEFAULT_BUDGET
) -> dict[int, int] | None:
    n = g.vertex_count
    if n != h.vertex_count or g.edge_count != h.edge_count:
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    adj = [list(a) for a in g.adjacency] + [[w + n for w in a] for a in h.adjacency]
    nodes = 0

    def balanced(colors: list[int]) -> bool:
        left = sorted(colors[:n])
        right = sorted(colors[n:])
        return left == right

    def search(colors: list[int]) -> dict[int, int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(nodes)
        colors = _refine(adj, colors)
        if not balanced(colors):
            return None
        classes: dict[int, list[int]] = {}
        for v in range(n):
            classes.setdefault(colors[v], []).append(v)
        open_cls = [c for c in classes.values() if len(c) > 1]
        if not open_cls:
            where = {colors[n + v]: v for v in range(n)}
            mapping = {v: where[colors[v]] for v in range(n)}
            if all(h.has_edge(mapping[a], mapping[b]) for a, b in g.edges):
                return mapping
            return None
        target = min(open_cls, key=lambda c: (len(c), c[0]))
        v = target[0]
        fresh = max(colors) + 1
        for w in range(n):
            if colors[n + w] != colors[v]:
                continue
            trial = list(colors)
            trial[v] = fresh
            trial[n + w] = fresh
            found = search(trial)
            if found is not None:
                return found
        return None

    return search([0] * (2 * n))


# ---------------------------------------------------------------------------
# minors


@dataclass(frozen=True)
class MinorWitness:
    target: SimpleGraph
    branch_sets: Mapping[int, frozenset[int]]
    edge_map: Mapping[Edge, Edge] = field(default_factory=dict)

    def host_vertices(self) -> frozenset[int]:
        return frozenset().union(*self.branch_sets.values()) if self.branch_sets else frozenset()

    def to_dict(self) -> dict:
        return {
            "target": {"n": self.target.vertex_count, "edges": [list(e) for e in self.target.sorted_edges]},
            "branch_sets": {str(a): sorted(b) for a, b in sorted(self.branch_sets.items())},
            "edge_map": [[a, b, u, v] for (a, b), (u, v) in sorted(self.edge_map.items())],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "MinorWitness":
        target = SimpleGraph.from_edges(d["target"]["n"], d["target"]["edges"])
        branch = {int(a): frozenset(b) for a, b in d["branch_sets"].items()}
        emap = {(a, b): (u, v) for a, b, u, v in d["edge_map"]}
        return cls(target, branch, emap)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _connected_within(host: SimpleGraph, vs: frozenset[int]) -> bool:
    start = next(iter(vs))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in host.adjacency[u]:
            if w in vs and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(vs)


def verify_minor_witness(host: SimpleGraph, w: MinorWitness) -> Verdict:
    t = w.target
    if set(w.branch_sets) != set(range(t.vertex_count)):
        return Verdict(False, "branch sets do not cover the target vertices")
    owner: dict[int, int] = {}
    for a in sorted(w.branch_sets):
        bs = w.branch_sets[a]
        if not bs:
            return Verdict(False, f"empty branch set for {a}")
        for v in bs:
            if not 0 <= v < host.vertex_count:
                return Verdict(False, f"host vertex {v} out of range")
            if v in owner:
                return Verdict(False, f"overlap: host vertex {v} in branch sets {owner[v]} and {a}")
            owner[v] = a
    for a in sorted(w.branch_sets):
        if not _connected_within(host, w.branch_sets[a]):
            return Verdict(False, f"disconnected branch set for {a}")
    for a, b in t.sorted_edges:
        e = w.edge_map.get((a, b))
        if e is None:
            return Verdict(False, f"missing edge: no host edge assigned to {(a, b)}")
        u, v = e
        if not host.has_edge(u, v):
            return Verdict(False, f"missing edge: {(u, v)} is not a host edge")
        if not ((owner.get(u) == a and owner.get(v) == b) or (owner.get(u) == b and owner.get(v) == a)):
            return Verdict(False, f"missing edge: {(u, v)} does not join branch sets {a} and {b}")
    return Verdict(True)


def _edge_map(host: SimpleGraph, target: SimpleGraph, owner: list[int]) -> dict[Edge, Edge]:
    emap: dict[Edge, Edge] = {}
    for u, v in host.sorted_edges:
        a, b = owner[u], owner[v]
        if a < 0 or b < 0 or a == b:
            continue
        key = _norm_edge(a, b)
        if key not in emap and target.has_edge(*key):
            emap[key] = (u, v)
    return emap


def witness_from_branch_sets(
    host: SimpleGraph, target: SimpleGraph, branch_sets: Mapping[int, Iterable[int]]
) -> MinorWitness:
    """Fill in the edge map for given branch sets (verify the result separately)."""
    sets = {int(a): frozenset(b) for a, b in branch_sets.items()}
    owner = [-1] * host.vertex_count
    for a, bs in sets.items():
        for v in bs:
            if 0 <= v < host.vertex_count and owner[v] < 0:
                owner[v] = a
    return MinorWitness(target, sets, _edge_map(host, target, owner))


def find_minor(
    host: SimpleGraph, target: SimpleGraph, budget: int = DEFAULT_BUDGET, size_limit: int | None = None
) -> MinorWitness | None:
    """Search for a minor model of ``target`` inside ``host``.

    Branch sets are grown one frontier vertex at a time to satisfy target
    edges; each branching point splits the solution space by an
    "in / excluded" decision on one host vertex, so the search is complete:
    ``None`` means no model exists.  Target vertices are seeded in decreasing
    degree order.  Raises :class:`BudgetExhausted` after ``budget`` nodes.
    """
    nt, nh = target.vertex_count, host.vertex_count
    if nt == 0:
        return MinorWitness(target, {}, {})
    if nt > nh or target.edge_count > host.edge_count:
        return None

    hadj = host.adjacency
    tadj = target.adjacency
    order = sorted(range(nt), key=lambda a: (-len(tadj[a]), a))
    tedges = sorted(target.edges, key=lambda e: (min(order.index(e[0]), order.index(e[1])), e))

    owner = [-1] * nh
    sets: list[set[int]] = [set() for _ in range(nt)]
    excluded: list[set[int]] = [set() for _ in range(nt)]
    # adjacency counts between branch sets, to test satisfaction in O(1)
    touch = [[0] * nt for _ in range(nt)]
    free = [nh]
    nodes = 0

    def assign(v: int, a: int) -> None:
        owner[v] = a
        sets[a].add(v)
        free[0] -= 1
        for w in hadj[v]:
            b = owner[w]
            if b >= 0 and b != a:
                touch[a][b] += 1
                touch[b][a] += 1

    def unassign(v: int, a: int) -> None:
        for w in hadj[v]:
            b = owner[w]
            if b >= 0 and b != a:
                touch[a][b] -= 1
                touch[b][a] -= 1
        owner[v] = -1
        sets[a].discard(v)
        free[0] += 1

    def frontier(a: int) -> list[int]:
        ex = excluded[a]
        out = set()
        for v in sets[a]:
            for w in hadj[v]:
                if owner[w] < 0 and w not in ex:
                    out.add(w)
        return sorted(out)

    def toward(cands: list[int], goal: set[int]) -> list[int]:
        # grow towards the branch set we must meet; ties broken by id
        if not goal or len(cands) < 2:
            return cands
        dist = {v: 0 for v in goal}
        queue = deque(goal)
        while queue:
            u = queue.popleft()
            for w in hadj[u]:
                if w not in dist and owner[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return sorted(cands, key=lambda v: (dist.get(v, nh), v))

    def search() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(nodes)
        placed = [a for a in range(nt) if sets[a]]
        if free[0] < nt - len(placed):
            return False
        if size_limit is not None and (nh - free[0]) + (nt - len(placed)) > size_limit:
            return False

        best = None
        for a, b in tedges:
            pa, pb = bool(sets[a]), bool(sets[b])
            if not (pa or pb) or (pa and pb and touch[a][b]):
                continue
            if not pa:
                a, b = b, a
            fa = frontier(a)
            if sets[b]:
                fb = frontier(b)
                cost = len(fa) + len(fb)
            else:
                fb = None
                cost = len(fa)
            if cost == 0:
                return False
            if best is None or cost < best[0]:
                best = (cost, a, b, fa, fb)
                if cost == 1:
                    break

        if best is None:
            unplaced = [a for a in order if not sets[a]]
            if not unplaced:
                return True
            a = unplaced[0]
            saved = set(excluded[a])
            for v in range(nh):
                if owner[v] >= 0 or v in excluded[a]:
                    continue
                assign(v, a)
                if search():
                    return True
                unassign(v, a)
                excluded[a].add(v)
            excluded[a] = saved
            return False

        _, a, b, fa, fb = best
        saved_a, saved_b = set(excluded[a]), set(excluded[b])
        try:
            if fb is not None:
                for side, other, cands in ((a, b, fa), (b, a, fb)):
                    for v in toward(cands, sets[other]):
                        if v in excluded[side] or owner[v] >= 0:
                            continue
                        assign(v, side)
                        if search():
                            return True
                        unassign(v, side)
                        excluded[side].add(v)
                return False
            for v in fa:
                if owner[v] >= 0:
                    continue
                if v not in excluded[a]:
                    assign(v, a)
                    if search():
                        return True
                    unassign(v, a)
                    excluded[a].add(v)
                if v not in excluded[b]:
                    assign(v, b)
                    if search():
                        return True
                    unassign(v, b)
                    excluded[b].add(v)
            return False
        finally:
            excluded[a], excluded[b] = saved_a, saved_b

    if not search():
        return None
    branch = {a: frozenset(sets[a]) for a in range(nt)}
    return MinorWitness(target, branch, _edge_map(host, target, owner))
