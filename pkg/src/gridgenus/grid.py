"""Grid graphs G(a1, ..., ak): products of paths, coordinates and counts."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import SimpleGraph


@dataclass(frozen=True)
class GridSpec:
    """Ordered grid parameters.  A zero parameter is a one-vertex factor."""

    params: tuple[int, ...]

    def __init__(self, params: Iterable[int]):
        ps = tuple(int(a) for a in params)
        if not ps:
            raise ValueError("a grid needs at least one parameter")
        if any(a < 0 for a in ps):
            raise ValueError(f"grid parameters must be non-negative, got {ps}")
        object.__setattr__(self, "params", ps)

    @classmethod
    def of(cls, *params: int) -> "GridSpec":
        return cls(params)

    @property
    def k(self) -> int:
        return len(self.params)

    def normalized(self) -> tuple[int, ...]:
        """Zeros dropped, sorted non-increasing (possibly empty: one vertex)."""
        return tuple(sorted((a for a in self.params if a > 0), reverse=True))

    @property
    def dimension(self) -> int:
        return len(self.normalized())

    def __iter__(self):
        return iter(self.params)

    def __str__(self) -> str:
        return "G(" + ",".join(map(str, self.params)) + ")"


def as_spec(spec: GridSpec | Sequence[int]) -> GridSpec:
    return spec if isinstance(spec, GridSpec) else GridSpec(spec)


# -- coordinates (mixed radix, row-major, first parameter most significant) --


def coord_to_index(spec: GridSpec | Sequence[int], coords: Sequence[int]) -> int:
    spec = as_spec(spec)
    if len(coords) != spec.k:
        raise ValueError("coordinate dimension mismatch")
    idx = 0
    for a, b in zip(spec.params, coords):
        if not 0 <= b <= a:
            raise ValueError(f"coordinate {tuple(coords)} outside {spec}")
        idx = idx * (a + 1) + b
    return idx


def index_to_coord(spec: GridSpec | Sequence[int], index: int) -> tuple[int, ...]:
    spec = as_spec(spec)
    out = []
    for a in reversed(spec.params):
        index, b = divmod(index, a + 1)
        out.append(b)
    if index:
        raise ValueError("index out of range")
    return tuple(reversed(out))


def coordinates(spec: GridSpec | Sequence[int]) -> list[tuple[int, ...]]:
    spec = as_spec(spec)
    return list(itertools.product(*(range(a + 1) for a in spec.params)))


def grid_graph(spec: GridSpec | Sequence[int]) -> SimpleGraph:
    """Same labelling as the iterated cartesian product of paths, built axis by axis."""
    spec = as_spec(spec)
    nv = math.prod(a + 1 for a in spec.params)
    edges: list[tuple[int, int]] = []
    stride = 1
    for a in reversed(spec.params):
        block = stride * (a + 1)
        # within each block, the last `stride` ids already have digit a on this axis
        for base in range(0, nv, block):
            edges += [(v, v + stride) for v in range(base, base + block - stride)]
        stride = block
    return SimpleGraph._trusted(nv, frozenset(edges))


def counts(spec: GridSpec | Sequence[int]) -> tuple[int, int]:
    """(|V|, |E|) from the product formulas, in exact arithmetic."""
    spec = as_spec(spec)
    nv = math.prod(a + 1 for a in spec.params)
    ne = nv * sum(Fraction(a, a + 1) for a in spec.params)
    assert ne.denominator == 1
    return nv, int(ne)


def betti(spec: GridSpec | Sequence[int]) -> int:
    nv, ne = counts(spec)
    return ne - nv + 1


def parity_profile(spec: GridSpec | Sequence[int]) -> tuple[int, int]:
    norm = as_spec(spec).normalized()
    odd = sum(a % 2 for a in norm)
    return odd, len(norm) - odd


def specs_up_to(max_vertices: int, max_dim: int | None = None) -> list[GridSpec]:
    """All normalized specs (non-increasing, positive) with at most ``max_vertices`` vertices."""
    out: list[GridSpec] = []

    def rec(prefix: list[int], nv: int, cap: int) -> None:
        if prefix:
            out.append(GridSpec(prefix))
        if max_dim is not None and len(prefix) >= max_dim:
            return
        a = 1
        while a <= cap and nv * (a + 1) <= max_vertices:
            rec(prefix + [a], nv * (a + 1), a)
            a += 1

    rec([], 1, max_vertices)
    out.sort(key=lambda s: (len(s.params), s.params))
    return out
