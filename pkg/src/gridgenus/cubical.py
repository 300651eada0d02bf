"""Unions of unit cubes with a parity rule, their boundary surfaces and skeletons.

A cube at ``(n1, n2, n3)`` occupies ``[n1, n1+1] x [n2, n2+1] x [n3, n3+1]``.
The boundary is taken to be every unit square with exactly one incident cube
in the set; squares are oriented outward from the solid.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

from .graph import SimpleGraph
from .grid import coord_to_index, grid_graph
from .rotation import RotationSystem

Point = tuple[int, int, int]


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class CubeSet:
    alphas: tuple[int, int, int]
    triples: frozenset[Point]

    def __len__(self) -> int:
        return len(self.triples)

    def sorted(self) -> list[Point]:
        return sorted(self.triples)


def cube_set(a1: int, a2: int, a3: int) -> CubeSet:
    alphas = (a1, a2, a3)
    if min(alphas) < 1:
        raise ValueError("cube sets need positive parameters")
    cubes = frozenset(
        t
        for t in itertools.product(range(a1), range(a2), range(a3))
        if sum(1 for n in t if n % 2 == 0) >= 2
    )
    return CubeSet(alphas, cubes)


def _unit(axis: int) -> Point:
    return tuple(int(i == axis) for i in range(3))  # type: ignore[return-value]


def _add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2])


@dataclass(frozen=True)
class Square:
    anchor: Point
    axis: int
    sign: int

    def corners(self) -> tuple[Point, Point, Point, Point]:
        """Corners counter-clockwise as seen from the side the normal points to."""
        j, k = (self.axis + 1) % 3, (self.axis + 2) % 3
        ej, ek = _unit(j), _unit(k)
        p0 = self.anchor
        loop = (p0, _add(p0, ej), _add(_add(p0, ej), ek), _add(p0, ek))
        if self.sign > 0:
            return loop
        return (loop[0], loop[3], loop[2], loop[1])

    def center(self) -> tuple[float, float, float]:
        c = [x + 0.5 for x in self.anchor]
        c[self.axis] = self.anchor[self.axis]
        return tuple(c)  # type: ignore[return-value]


@dataclass(frozen=True)
class BoundarySurface:
    cubes: CubeSet
    squares: tuple[Square, ...]

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(sorted({p for s in self.squares for p in s.corners()}))

    @cached_property
    def edges(self) -> tuple[tuple[Point, Point], ...]:
        es = set()
        for s in self.squares:
            c = s.corners()
            for i in range(4):
                es.add(tuple(sorted((c[i], c[(i + 1) % 4]))))
        return tuple(sorted(es))  # type: ignore[arg-type]

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.squares)

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic
        if chi % 2:
            raise SurfaceError("odd Euler characteristic")
        return (2 - chi) // 2

    def oriented_faces(self) -> list[tuple[Point, Point, Point, Point]]:
        return [s.corners() for s in self.squares]

    def rotation_maps(self) -> dict[Point, dict[Point, Point]]:
        """At each vertex v, map u -> w whenever ..., u, v, w, ... bounds a square."""
        succ: dict[Point, dict[Point, Point]] = {}
        for c in self.oriented_faces():
            for i in range(4):
                u, v, w = c[i - 1], c[i], c[(i + 1) % 4]
                slot = succ.setdefault(v, {})
                if u in slot:
                    raise SurfaceError(f"dart {u}->{v} used twice: inconsistent orientation")
                slot[u] = w
        return succ


def boundary_surface(c: CubeSet) -> BoundarySurface:
    if not c.triples:
        raise SurfaceError("empty cube set")
    squares = []
    for cube in c.sorted():
        for axis in range(3):
            e = _unit(axis)
            up = _add(cube, e)
            down = (cube[0] - e[0], cube[1] - e[1], cube[2] - e[2])
            if down not in c.triples:
                squares.append(Square(cube, axis, -1))
            if up not in c.triples:
                squares.append(Square(up, axis, +1))
    squares.sort(key=lambda s: (s.anchor, s.axis, s.sign))
    surface = BoundarySurface(c, tuple(squares))
    check_manifold(surface)
    return surface


def check_manifold(s: BoundarySurface) -> None:
    """Raise :class:`SurfaceError` unless ``s`` is a connected, oriented closed surface."""
    per_edge = Counter()
    for f in s.oriented_faces():
        for i in range(4):
            per_edge[tuple(sorted((f[i], f[(i + 1) % 4])))] += 1
    bad = [e for e, k in per_edge.items() if k != 2]
    if bad:
        raise SurfaceError(f"edge {bad[0]} bounds {per_edge[bad[0]]} squares")
    _check_orientation_by_triangles(s)
    succ = s.rotation_maps()
    for v, m in succ.items():
        start = next(iter(m))
        seen, u = 1, m[start]
        while u != start:
            seen, u = seen + 1, m[u]
        if seen != len(m):
            raise SurfaceError(f"square fan at {v} is not a single cycle")
    adj: dict[Point, set[Point]] = {}
    for a, b in s.edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    root = s.vertices[0]
    seen_v = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen_v:
                seen_v.add(w)
                queue.append(w)
    if len(seen_v) != len(s.vertices):
        raise SurfaceError("boundary surface is disconnected")


def _check_orientation_by_triangles(s: BoundarySurface) -> None:
    directed = Counter()
    for p0, p1, p2, p3 in s.oriented_faces():
        for tri in ((p0, p1, p2), (p0, p2, p3)):
            for i in range(3):
                directed[(tri[i], tri[(i + 1) % 3])] += 1
    for (a, b), k in directed.items():
        if k != 1 or directed.get((b, a)) != 1:
            raise SurfaceError(f"orientation is not consistent along {a}-{b}")


def skeleton_graph(c: CubeSet) -> SimpleGraph:
    """Boundary edges as a graph on the coordinates of G(a1, a2, a3)."""
    s = boundary_surface(c)
    n = grid_graph(c.alphas).vertex_count
    return SimpleGraph.from_edges(
        n, ((coord_to_index(c.alphas, a), coord_to_index(c.alphas, b)) for a, b in s.edges)
    )


def surface_rotation(s: BoundarySurface) -> RotationSystem:
    """Rotation system on G(a1,a2,a3)'s vertex ids induced by the oriented squares.

    Vertices of the grid that miss the surface get an empty rotation.
    """
    alphas = s.cubes.alphas
    n = grid_graph(alphas).vertex_count
    rot: list[list[int]] = [[] for _ in range(n)]
    for v, m in s.rotation_maps().items():
        start = min(m)
        cyc, u = [start], m[start]
        while u != start:
            cyc.append(u)
            u = m[u]
        rot[coord_to_index(alphas, v)] = [coord_to_index(alphas, w) for w in cyc]
    return RotationSystem.from_rotation(rot)


def skeleton_rotation(a1: int, a2: int, a3: int) -> RotationSystem:
    """Quadrilateral embedding of G(a1,a2,a3), all parameters odd, as a rotation system."""
    alphas = (a1, a2, a3)
    if any(a % 2 == 0 for a in alphas):
        raise ValueError(
            f"skeleton of S{alphas} is a proper subgraph of the grid when a parameter is even"
        )
    rs = surface_rotation(boundary_surface(cube_set(*alphas)))
    if rs.graph != grid_graph(alphas):
        raise SurfaceError("cubical skeleton differs from the grid graph")
    return rs


# -- mesh export -------------------------------------------------------------


def export_mesh(s: BoundarySurface, format: Literal["off", "obj"] = "off") -> bytes:
    index = {p: i for i, p in enumerate(s.vertices)}
    faces = [[index[p] for p in f] for f in s.oriented_faces()]
    fmt = format.lower()
    if fmt == "off":
        lines = ["OFF", f"{len(s.vertices)} {len(faces)} {len(s.edges)}"]
        lines += [f"{x} {y} {z}" for x, y, z in s.vertices]
        lines += ["4 " + " ".join(map(str, f)) for f in faces]
    elif fmt == "obj":
        lines = [f"# quad mesh: {len(s.vertices)} vertices, {len(faces)} faces"]
        lines += [f"v {x} {y} {z}" for x, y, z in s.vertices]
        lines += ["f " + " ".join(str(i + 1) for i in f) for f in faces]
    else:
        raise ValueError(f"unknown mesh format {format!r}")
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_mesh(data: bytes) -> tuple[list[Point], list[tuple[int, ...]]]:
    """Read back OFF or OBJ written by :func:`export_mesh` (0-based faces)."""
    rows = [ln.split() for ln in data.decode("ascii").splitlines() if ln.strip()]
    if rows[0] == ["OFF"]:
        nv, nf, _ = map(int, rows[1])
        verts = [tuple(map(int, r)) for r in rows[2 : 2 + nv]]
        faces = [tuple(map(int, r[1:])) for r in rows[2 + nv : 2 + nv + nf]]
        return verts, faces  # type: ignore[return-value]
    verts, faces = [], []
    for r in rows:
        if r[0] == "v":
            verts.append(tuple(map(int, r[1:])))
        elif r[0] == "f":
            faces.append(tuple(int(t) - 1 for t in r[1:]))
    return verts, faces  # type: ignore[return-value]
