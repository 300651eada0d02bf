"""Closed-form genus results for grid graphs: bounds, exact values, maximum
genus, genus range, and the planar / toroidal classifications."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .constructions import construction_bound, recursive_upper_bound
from .graph import Verdict
from .grid import GridSpec, as_spec, betti, counts


class InconsistencyError(RuntimeError):
    """Two results that must agree did not."""


def euler_value(spec: GridSpec | Sequence[int]) -> Fraction:
    """1 + |E|/4 - |V|/2 as an exact rational (may be negative)."""
    nv, ne = counts(spec)
    return 1 + Fraction(ne, 4) - Fraction(nv, 2)


def euler_lower_bound(spec: GridSpec | Sequence[int]) -> int:
    spec = as_spec(spec)
    if spec.dimension <= 1:
        return 0  # paths have no cycles, the girth-4 bound says nothing
    return math.ceil(max(Fraction(0), euler_value(spec)))


def white_genus(spec: GridSpec | Sequence[int]) -> int | None:
    """Quadrilateral genus when at least three parameters are odd, else ``None``."""
    norm = as_spec(spec).normalized()
    if len(norm) < 3 or sum(a % 2 for a in norm) < 3:
        return None
    val = euler_value(norm)
    if val.denominator != 1:
        raise InconsistencyError(f"non-integral quadrilateral genus for {norm}")
    return int(val)


@dataclass(frozen=True)
class ExactGenus:
    value: int
    family: str


def _families(norm: tuple[int, ...]) -> list[ExactGenus]:
    hits: list[ExactGenus] = []
    k = len(norm)
    if k <= 2:
        hits.append(ExactGenus(0, "planar-2d"))
    if k == 3 and norm[1] == 1 and norm[2] == 1:
        hits.append(ExactGenus(0, "prism"))
    w = white_genus(norm)
    if w is not None:
        hits.append(ExactGenus(w, "quadrilateral"))
    if k == 3 and norm[2] == 1:
        hits.append(ExactGenus((norm[0] // 2) * (norm[1] // 2), "two-layer"))
    if k == 3 and norm[1] == 2 and norm[2] == 2:
        hits.append(ExactGenus(norm[0], "double-two"))
    elif k == 3 and norm[0] == 2 and norm[1] == 2 and norm[2] < 2:
        # (2,2,1) read as G(1,2,2)
        hits.append(ExactGenus(norm[2], "double-two"))
    return hits


def exact_genus(spec: GridSpec | Sequence[int]) -> ExactGenus | None:
    """First matching known family, after checking every matching family agrees."""
    hits = _families(as_spec(spec).normalized())
    if not hits:
        return None
    values = {h.value for h in hits}
    if len(values) > 1:
        raise InconsistencyError(f"families disagree on {spec}: {hits}")
    return hits[0]


def quadrilateral_distance(spec: GridSpec | Sequence[int], genus: int) -> Fraction:
    d = genus - euler_value(spec)
    if d < 0:
        raise InconsistencyError(f"genus {genus} below the Euler bound for {spec}")
    return d


def max_genus(spec: GridSpec | Sequence[int]) -> int:
    """Every grid graph is upper-embeddable, so this is floor(betti / 2)."""
    return betti(spec) // 2


def max_genus_closed_form(spec: GridSpec | Sequence[int]) -> int:
    spec = as_spec(spec)
    nv, _ = counts(spec)
    s = sum((Fraction(a, a + 1) for a in spec.params), Fraction(0))
    return math.floor(Fraction(nv) * (s - 1) / 2 + Fraction(1, 2))


@dataclass(frozen=True)
class SweepResult:
    max_vertices: int
    checked: int
    mismatches: int

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


def max_genus_sweep(max_vertices: int) -> SweepResult:
    """Compare floor(betti/2) with the closed form on every normalized spec up to ``max_vertices``.

    Integer recurrences in a compiled loop; the first call in a fresh cache
    pays a few seconds of JIT compilation.
    """
    from ._sweep import sweep_kernel

    if max_vertices < 2:
        return SweepResult(max_vertices, 0, 0)
    checked, bad = sweep_kernel(max_vertices)
    return SweepResult(max_vertices, int(checked), int(bad))


@dataclass(frozen=True)
class GenusRange:
    low: int
    high: int
    partial: bool

    def values(self) -> range:
        return range(self.low, self.high + 1)


def genus_range(spec: GridSpec | Sequence[int], lower: int | None = None) -> GenusRange:
    """[genus, max genus]; with unknown genus, the best lower bound and ``partial``."""
    ex = exact_genus(spec)
    if ex is not None:
        return GenusRange(ex.value, max_genus(spec), False)
    low = max(euler_lower_bound(spec), lower or 0)
    return GenusRange(low, max_genus(spec), True)


# -- classifications ---------------------------------------------------------


def classify_planar(spec: GridSpec | Sequence[int]) -> Verdict:
    norm = as_spec(spec).normalized()
    if len(norm) <= 2:
        return Verdict(True, "at most two non-trivial dimensions")
    if len(norm) == 3 and norm[1] == 1:
        return Verdict(True, "three dimensions, only one parameter above 1")
    if len(norm) == 3:
        return Verdict(False, "three dimensions with two parameters above 1")
    return Verdict(False, "four or more dimensions contain G(1,1,1,1)")


_TORUS_TRIPLES = {(2, 2, 1), (3, 2, 1), (3, 3, 1)}


def classify_toroidal(spec: GridSpec | Sequence[int]) -> Verdict:
    """Whether the grid has a 2-cell embedding on the torus."""
    norm = as_spec(spec).normalized()
    k = len(norm)
    if k == 2 and norm[0] + norm[1] >= 3:
        return Verdict(True, "case 1: two dimensions with a1 + a2 >= 3")
    if k == 3 and norm[1] == 1:
        return Verdict(True, "case 2: three dimensions, one parameter above 1")
    if k == 3 and norm in _TORUS_TRIPLES:
        return Verdict(True, f"case 3: {norm} is one of (2,2,1), (3,2,1), (3,3,1)")
    if norm == (1, 1, 1, 1):
        return Verdict(True, "case 4: the 4-cube")
    if k <= 1 or norm == (1, 1):
        return Verdict(False, "too few cycles for a 2-cell torus embedding")
    return Verdict(False, "outside the four torus cases")


def embeds_on_torus(spec: GridSpec | Sequence[int]) -> Verdict:
    """Genus at most one: 2-cell torus embeddings plus the trivial planar ones."""
    t = classify_toroidal(spec)
    if t:
        return t
    p = classify_planar(spec)
    if p:
        return Verdict(True, "planar: " + p.reason)
    return Verdict(False, t.reason)


@dataclass(frozen=True)
class Classification:
    planar: bool
    toroidal_2cell: bool
    embeds_on_torus: bool
    reasons: tuple[str, ...] = field(default_factory=tuple)


def classify(spec: GridSpec | Sequence[int]) -> Classification:
    p, t, e = classify_planar(spec), classify_toroidal(spec), embeds_on_torus(spec)
    return Classification(p.ok, t.ok, e.ok, (p.reason, t.reason))


def bipartite_genus(m: int, n: int) -> int:
    if m < 2 or n < 2:
        raise ValueError("complete bipartite genus formula needs m, n >= 2")
    return -((-(m - 2) * (n - 2)) // 4)


# -- aggregate ---------------------------------------------------------------


@dataclass(frozen=True)
class GenusBounds:
    lower: int
    upper: int
    lower_source: str
    upper_source: str

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise InconsistencyError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def gap(self) -> int:
        return self.upper - self.lower


def best_bounds(spec: GridSpec | Sequence[int], packing_bound: int | None = None) -> GenusBounds:
    """Tightest lower and upper bounds known for ``spec``.

    ``packing_bound`` is a certified minor-packing lower bound, if one exists.
    """
    spec = as_spec(spec)
    norm = spec.normalized()
    ex = exact_genus(spec)

    lows = [(euler_lower_bound(spec), "euler")]
    if packing_bound is not None:
        lows.append((packing_bound, "minor-packing"))
    if ex is not None:
        lows.append((ex.value, "exact-theorem"))

    ups: list[tuple[int, str]] = []
    if ex is not None:
        ups.append((ex.value, "exact-theorem"))
    w = white_genus(spec)
    if w is not None:
        ups.append((w, "white"))
    if len(norm) <= 3:
        ups.append((construction_bound(spec), "case-construction"))
    else:
        ups.append((recursive_upper_bound(spec), "recursive"))

    lo = max(v for v, _ in lows)
    hi = min(v for v, _ in ups)
    lo_src = next(s for v, s in lows if v == lo)
    hi_src = next(s for v, s in ups if v == hi)
    return GenusBounds(lo, hi, lo_src, hi_src)
