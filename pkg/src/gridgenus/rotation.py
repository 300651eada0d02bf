"""Rotation systems (orientable combinatorial embeddings) and face tracing.

Convention: the dart following ``(u, v)`` on a face is ``(v, w)`` where ``w``
is the successor of ``u`` in the cyclic rotation at ``v``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .graph import DisconnectedGraphError, GraphError, SimpleGraph, Verdict

Dart = tuple[int, int]


def _canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    i = min(range(len(seq)), key=lambda j: seq[j])
    return tuple(seq[i:]) + tuple(seq[:i])


@dataclass(frozen=True)
class RotationSystem:
    graph: SimpleGraph
    rotation: tuple[tuple[int, ...], ...]

    def __init__(self, graph: SimpleGraph, rotation: Iterable[Sequence[int]]):
        rot = tuple(_canonical_cycle(list(r)) for r in rotation)
        if len(rot) != graph.vertex_count:
            raise GraphError("one rotation per vertex required")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "rotation", rot)

    @classmethod
    def from_rotation(cls, rotation: Sequence[Sequence[int]]) -> "RotationSystem":
        """Build the graph from the rotations themselves."""
        edges = [(v, w) for v, r in enumerate(rotation) for w in r]
        return cls(SimpleGraph.from_edges(len(rotation), edges), rotation)

    @cached_property
    def _succ(self) -> list[dict[int, int]]:
        out = []
        for r in self.rotation:
            n = len(r)
            out.append({r[i]: r[(i + 1) % n] for i in range(n)})
        return out

    def successor(self, v: int, u: int) -> int:
        """Neighbour following ``u`` in the rotation at ``v``."""
        return self._succ[v][u]

    def next_dart(self, d: Dart) -> Dart:
        u, v = d
        return (v, self._succ[v][u])

    def reversed(self) -> "RotationSystem":
        return RotationSystem(self.graph, [tuple(reversed(r)) for r in self.rotation])

    def relabel(self, mapping: Mapping[int, int] | Sequence[int], n: int) -> "RotationSystem":
        """Rename vertex ``v`` to ``mapping[v]`` inside a graph on ``n`` vertices."""
        rot: list[tuple[int, ...]] = [()] * n
        for v, r in enumerate(self.rotation):
            rot[mapping[v]] = tuple(mapping[w] for w in r)
        edges = [(mapping[u], mapping[v]) for u, v in self.graph.edges]
        return RotationSystem(SimpleGraph.from_edges(n, edges), rot)

    # -- text format ---------------------------------------------------------

    def to_text(self) -> str:
        g = self.graph
        lines = ["rotation-system", f"{g.vertex_count} {g.edge_count}"]
        lines += [f"{v}: " + " ".join(map(str, r)) if r else f"{v}:" for v, r in enumerate(self.rotation)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RotationSystem":
        rows = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not rows or rows[0] != "rotation-system":
            raise GraphError("missing 'rotation-system' tag")
        n, m = map(int, rows[1].split())
        rot: list[list[int]] = [[] for _ in range(n)]
        for row in rows[2:]:
            head, _, tail = row.partition(":")
            rot[int(head)] = [int(t) for t in tail.split()]
        rs = cls.from_rotation(rot)
        if rs.graph.edge_count != m or rs.graph.vertex_count != n:
            raise GraphError("header does not match rotations")
        return rs


def validate(e: RotationSystem) -> Verdict:
    g = e.graph
    for v, r in enumerate(e.rotation):
        nb = set(g.adjacency[v])
        if len(set(r)) != len(r):
            return Verdict(False, f"repeated neighbour in rotation at {v}")
        extra = set(r) - nb
        if extra:
            return Verdict(False, f"foreign dart: rotation at {v} lists non-neighbour {min(extra)}")
        if set(r) != nb:
            return Verdict(False, f"incomplete rotation at {v}: missing {min(nb - set(r))}")
    return Verdict(True)


@dataclass(frozen=True)
class FaceTrace:
    faces: tuple[tuple[Dart, ...], ...]
    genus: int
    vertex_count: int
    edge_count: int

    @property
    def face_lengths(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.faces)

    @property
    def face_profile(self) -> Counter:
        return Counter(self.face_lengths)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + len(self.faces)

    def face_of(self, dart: Dart) -> int:
        for i, f in enumerate(self.faces):
            if dart in f:
                return i
        raise KeyError(dart)

    def face_vertices(self, i: int) -> tuple[int, ...]:
        return tuple(u for u, _ in self.faces[i])


def _walks(e: RotationSystem) -> list[tuple[Dart, ...]]:
    """All face walks, each started at its least dart, ordered by that dart."""
    seen: set[Dart] = set()
    faces = []
    for u, r in enumerate(e.rotation):
        for v in sorted(r):
            d = (u, v)
            if d in seen:
                continue
            walk = []
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = e.next_dart(d)
            i = walk.index(min(walk))
            faces.append(tuple(walk[i:] + walk[:i]))
    faces.sort(key=lambda f: f[0])
    return faces


def trace_faces(e: RotationSystem) -> FaceTrace:
    v = validate(e)
    if not v:
        raise GraphError(v.reason)
    g = e.graph
    if not g.is_connected():
        raise DisconnectedGraphError("face tracing needs a connected graph")
    faces = _walks(e)
    nf = len(faces) if g.edge_count else 1
    chi = g.vertex_count - g.edge_count + nf
    if chi % 2:
        raise AssertionError("odd Euler characteristic from a rotation system")
    return FaceTrace(tuple(faces), (2 - chi) // 2, g.vertex_count, g.edge_count)


def is_quadrilateral(t: FaceTrace) -> bool:
    return all(len(f) == 4 and len({u for u, _ in f}) == 4 for f in t.faces)


def random_rotation(g: SimpleGraph, rng: random.Random) -> RotationSystem:
    rot = []
    for v in range(g.vertex_count):
        r = list(g.adjacency[v])
        rng.shuffle(r)
        rot.append(r)
    return RotationSystem(g, rot)


# ---------------------------------------------------------------------------
# handle surgery


class SurgeryError(GraphError):
    pass


def _face_containing(e: RotationSystem, dart: Dart) -> list[Dart]:
    if dart[1] not in e.graph.adjacency[dart[0]]:
        raise SurgeryError(f"{dart} is not a dart")
    walk = [dart]
    d = e.next_dart(dart)
    while d != dart:
        walk.append(d)
        d = e.next_dart(d)
    i = walk.index(min(walk))
    return walk[i:] + walk[:i]


def _corners(walk: list[Dart], vertices: Sequence[int], which: str) -> list[int]:
    pos = []
    at = [u for u, _ in walk]
    for v in vertices:
        if v not in at:
            raise SurgeryError(f"pairing vertex {v} is not on {which}")
        pos.append(at.index(v))
    return pos


def _cyclically_increasing(pos: list[int], n: int) -> bool:
    if len(set(pos)) != len(pos):
        return False
    shifted = [(p - pos[0]) % n for p in pos]
    return shifted == sorted(shifted)


def attach_handle(
    a: RotationSystem,
    face_a: Dart,
    b: RotationSystem | None,
    face_b: Dart,
    pairing: Sequence[tuple[int, int]],
) -> RotationSystem:
    """Cut out two faces and join them by a tube carrying the pairing edges.

    ``face_a``/``face_b`` name faces by any dart on them.  With ``b`` given the
    result is on the disjoint union, ``b``'s vertex ``v`` renamed ``v + |V(a)|``
    (pairing entries use each system's own ids).  With ``b=None`` the handle is
    attached inside ``a``.  The ``a``-ends of the pairing must run along
    ``face_a`` and the ``b``-ends against ``face_b``; each new edge enters both
    rotations right after the boundary dart arriving at its endpoint.
    """
    if not 1 <= len(pairing) <= 4:
        raise SurgeryError("a handle carries between 1 and 4 edges")
    if b is None:
        base, off = a, 0
        walk_b = _face_containing(a, face_b)
    else:
        off = a.graph.vertex_count
        walk_b = _face_containing(b, face_b)
        walk_b = [(u + off, v + off) for u, v in walk_b]
        edges = list(a.graph.edges) + [(u + off, v + off) for u, v in b.graph.edges]
        rot = list(a.rotation) + [tuple(w + off for w in r) for r in b.rotation]
        base = RotationSystem(SimpleGraph.from_edges(off + b.graph.vertex_count, edges), rot)
    walk_a = _face_containing(a, face_a)
    if b is None and set(walk_a) == set(walk_b):
        raise SurgeryError("a handle needs two distinct faces")

    ps = [p for p, _ in pairing]
    qs = [q + off for _, q in pairing]
    pa = _corners(walk_a, ps, "face_a")
    pb = _corners(walk_b, qs, "face_b")
    if not _cyclically_increasing(pa, len(walk_a)):
        raise SurgeryError("pairing not monotone along face_a")
    if not _cyclically_increasing([-p for p in pb], len(walk_b)):
        raise SurgeryError("pairing not monotone against face_b")

    rot = [list(r) for r in base.rotation]
    new_edges = []
    for (p, q), i, j in zip(zip(ps, qs), pa, pb):
        if base.graph.has_edge(p, q) or p == q:
            raise SurgeryError(f"pairing edge {(p, q)} already present")
        prev_p = walk_a[i - 1][0]
        prev_q = walk_b[j - 1][0]
        rp = rot[p]
        rp.insert(rp.index(prev_p) + 1, q)
        rq = rot[q]
        rq.insert(rq.index(prev_q) + 1, p)
        new_edges.append((p, q))
    graph = SimpleGraph.from_edges(base.graph.vertex_count, list(base.graph.edges) + new_edges)
    return RotationSystem(graph, rot)
