"""Independent checks: exhaustive rotation-system enumeration, genus by blocks,
minor-packing lower bounds, and the batch cross-validation suite."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Iterable, Sequence

import numpy as np

from .graph import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    DisconnectedGraphError,
    MinorWitness,
    SimpleGraph,
    block_decomposition,
    complete_bipartite,
    connected_components,
    find_minor,
    verify_minor_witness,
    witness_from_branch_sets,
)
from .grid import GridSpec, as_spec, coord_to_index, counts, grid_graph
from .rotation import RotationSystem, is_quadrilateral, trace_faces

# ---------------------------------------------------------------------------
# exhaustive enumeration


@dataclass(frozen=True)
class OracleResult:
    min_genus: int
    max_genus: int
    spectrum: frozenset[int]
    enumerated: int
    exhausted: bool
    total: int
    min_embedding: RotationSystem | None = field(default=None, compare=False)
    max_embedding: RotationSystem | None = field(default=None, compare=False)

    @property
    def contiguous(self) -> bool:
        return self.spectrum == frozenset(range(self.min_genus, self.max_genus + 1))


class _Enumerator:
    """Mixed-radix enumeration of rotation systems, vertex 0 most significant.

    Darts are indexed so that the darts leaving ``v`` are contiguous; each
    choice at ``v`` is a cyclic order with the least neighbour first.
    """

    def __init__(self, g: SimpleGraph, quotient_vertex: int | None):
        self.g = g
        adj = g.adjacency
        self.dart_of: dict[tuple[int, int], int] = {}
        self.start: list[int] = []
        d = 0
        for v in range(g.vertex_count):
            self.start.append(d)
            for w in adj[v]:
                self.dart_of[(v, w)] = d
                d += 1
        self.ndarts = d
        self.rev = np.array(
            [self.dart_of[(w, v)] for v in range(g.vertex_count) for w in adj[v]], dtype=np.int64
        )
        self.options: list[np.ndarray] = []
        self.orders: list[list[tuple[int, ...]]] = []
        for v in range(g.vertex_count):
            nb = adj[v]
            if len(nb) <= 1:
                orders = [tuple(nb)]
            else:
                orders = [(nb[0],) + p for p in itertools.permutations(nb[1:])]
                if v == quotient_vertex and len(nb) >= 3:
                    # keep one of each (order, reversed order) pair
                    orders = [o for o in orders if o[1] < o[-1]]
            self.orders.append(orders)
            succ = np.empty((len(orders), len(nb)), dtype=np.int32)
            for i, o in enumerate(orders):
                for j, u in enumerate(o):
                    w = o[(j + 1) % len(o)]
                    # sigma: dart v->u  maps to  dart v->w
                    succ[i, nb.index(u)] = self.dart_of[(v, w)]
            self.options.append(succ)
        self.radix = [len(o) for o in self.orders]
        self.total = math.prod(self.radix)

    def digits(self, lo: int, hi: int) -> np.ndarray:
        idx = np.arange(lo, hi, dtype=np.int64)
        out = np.empty((hi - lo, len(self.radix)), dtype=np.int64)
        for v in range(len(self.radix) - 1, -1, -1):
            idx, out[:, v] = np.divmod(idx, self.radix[v])
        return out

    def face_counts(self, lo: int, hi: int) -> np.ndarray:
        dig = self.digits(lo, hi)
        sigma = np.empty((hi - lo, self.ndarts), dtype=np.int32)
        for v, opt in enumerate(self.options):
            k = opt.shape[1]
            if k:
                sigma[:, self.start[v] : self.start[v] + k] = opt[dig[:, v]]
        phi = sigma.take(self.rev, axis=1)  # next dart after (u,v) is sigma at v of (v,u)
        return _cycle_counts(phi)

    def system(self, index: int) -> RotationSystem:
        dig = self.digits(index, index + 1)[0]
        return RotationSystem(self.g, [self.orders[v][dig[v]] for v in range(self.g.vertex_count)])


def _cycle_counts(perm: np.ndarray) -> np.ndarray:
    """Number of cycles of each row permutation, by pointer jumping on min labels."""
    b, n = perm.shape
    # work on one flat array: row r's entries live at r*n .. r*n+n-1
    offset = (np.arange(b, dtype=np.int32) * n)[:, None]
    p = (perm + offset).ravel()
    label = np.arange(b * n, dtype=np.int32)
    for _ in range(max(1, int(n).bit_length())):
        np.minimum(label, label.take(p), out=label)
        p = p.take(p)
    return (label == np.arange(b * n, dtype=np.int32)).reshape(b, n).sum(axis=1)


def enumeration_size(g: SimpleGraph, quotient: bool = True) -> int:
    """Number of rotation systems :func:`exhaustive_genus` would trace."""
    total = math.prod(math.factorial(max(d - 1, 0)) for d in g.degrees())
    if quotient and g.vertex_count and max(g.degrees()) >= 3:
        total //= 2
    return total


def exhaustive_genus(
    g: SimpleGraph, budget: int = DEFAULT_BUDGET, quotient: bool = True, chunk: int = 2048
) -> OracleResult:
    """Minimum, maximum and achieved genera over all rotation systems of ``g``.

    With ``quotient`` the rotation at one maximum-degree vertex is taken up to
    reversal: reversing every rotation maps each embedding to its mirror image,
    which has the same faces walked backwards, so no genus value is lost.
    Over budget, the first ``budget`` systems are traced and ``exhausted`` is false.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("exhaustive genus needs a connected graph")
    nv, ne = g.vertex_count, g.edge_count
    if ne == 0:
        single = RotationSystem(g, [()] * nv)
        return OracleResult(0, 0, frozenset([0]), 1, True, 1, single, single)
    qv = None
    if quotient:
        degs = g.degrees()
        qv = max(range(nv), key=lambda v: (degs[v], -v))
    en = _Enumerator(g, qv)
    limit = min(en.total, budget)
    most = fewest = None  # face counts; most faces means least genus
    min_at = max_at = 0
    seen_faces: set[int] = set()
    for start in range(0, limit, chunk):
        f = en.face_counts(start, min(limit, start + chunk))
        seen_faces.update(int(x) for x in np.unique(f))
        amax, amin = int(f.argmax()), int(f.argmin())
        if most is None or f[amax] > most:
            most, min_at = int(f[amax]), start + amax
        if fewest is None or f[amin] < fewest:
            fewest, max_at = int(f[amin]), start + amin
    spectrum = frozenset((2 - nv + ne - fc) // 2 for fc in seen_faces)
    return OracleResult(
        min(spectrum), max(spectrum), spectrum, limit, limit == en.total, en.total,
        en.system(min_at), en.system(max_at),
    )


# ---------------------------------------------------------------------------
# genus through blocks


def _complete_bipartite_sides(g: SimpleGraph) -> tuple[int, int] | None:
    n = g.vertex_count
    if n < 2 or not g.is_connected():
        return None
    side = [-1] * n
    side[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for w in g.adjacency[u]:
            if side[w] < 0:
                side[w] = 1 - side[u]
                stack.append(w)
            elif side[w] == side[u]:
                return None
    m = side.count(0)
    if g.edge_count != m * (n - m):
        return None
    return m, n - m


def exhaustive_block_oracle(budget: int = DEFAULT_BUDGET) -> Callable[[SimpleGraph], int]:
    def oracle(block: SimpleGraph) -> int:
        res = exhaustive_genus(block, budget)
        if not res.exhausted:
            raise BudgetExhausted(res.enumerated)
        return res.min_genus

    return oracle


def formula_or_exhaustive_oracle(budget: int = DEFAULT_BUDGET) -> Callable[[SimpleGraph], int]:
    """Complete bipartite blocks by the closed formula, anything else by enumeration."""
    from .formulas import bipartite_genus

    fallback = exhaustive_block_oracle(budget)

    def oracle(block: SimpleGraph) -> int:
        sides = _complete_bipartite_sides(block)
        if sides and min(sides) >= 2:
            return bipartite_genus(*sides)
        return fallback(block)

    return oracle


def genus_by_blocks(g: SimpleGraph, per_block_oracle: Callable[[SimpleGraph], int] | None = None) -> int:
    """Sum of block genera over all components."""
    oracle = per_block_oracle or exhaustive_block_oracle()
    total = 0
    for comp in connected_components(g):
        sub, _ = g.induced(sorted(comp))
        for block in block_decomposition(sub).block_graphs(sub):
            if block.edge_count <= 1:
                continue
            total += oracle(block)
    return total


def build_Tn(n: int) -> SimpleGraph:
    """``n`` copies of K3,3 in a chain; copy i+1 reuses the last vertex of copy i."""
    if n < 1:
        raise ValueError("T_n needs n >= 1")
    edges = []
    for c in range(n):
        ids = [5 * c + i for i in range(6)]
        edges += [(a, b) for a in ids[:3] for b in ids[3:]]
    return SimpleGraph.from_edges(5 * n + 1, edges)


def named_graph(name: str) -> SimpleGraph:
    """``K3,3``-style complete bipartite graphs and ``T2``-style chains."""
    if name.startswith("K") and "," in name:
        m, n = name[1:].split(",")
        return complete_bipartite(int(m), int(n))
    if name.startswith("T"):
        return build_Tn(int(name[1:]))
    raise ValueError(f"unknown graph name {name!r}")


# ---------------------------------------------------------------------------
# packings of disjoint minors


@dataclass(frozen=True)
class PackingCertificate:
    disjoint_witnesses: tuple[MinorWitness, ...]
    target_genera: tuple[int, ...]
    target_names: tuple[str, ...] = ()

    @property
    def implied_lower_bound(self) -> int:
        return sum(self.target_genera)


def verify_packing(host: SimpleGraph, cert: PackingCertificate) -> bool:
    used: set[int] = set()
    for w in cert.disjoint_witnesses:
        if not verify_minor_witness(host, w):
            return False
        hv = w.host_vertices()
        if used & hv:
            return False
        used |= hv
    return len(cert.target_genera) == len(cert.disjoint_witnesses)


def _split_union_witness(w: MinorWitness, targets: Sequence[SimpleGraph], host: SimpleGraph) -> list[MinorWitness]:
    out = []
    off = 0
    for t in targets:
        sets = {a: w.branch_sets[a + off] for a in range(t.vertex_count)}
        out.append(witness_from_branch_sets(host, t, sets))
        off += t.vertex_count
    return out


def packing_lower_bound(
    host: SimpleGraph,
    targets: Sequence[SimpleGraph],
    budget: int = DEFAULT_BUDGET,
    genera: Sequence[int] | None = None,
) -> PackingCertificate | None:
    """Search for vertex-disjoint minors of all ``targets`` in ``host``.

    The search runs on the disjoint union of the targets, so ``None`` is a
    proof that no packing exists; :class:`BudgetExhausted` means undecided.
    """
    if genera is None:
        oracle = formula_or_exhaustive_oracle()
        genera = [genus_by_blocks(t, oracle) for t in targets]
    union = targets[0]
    for t in targets[1:]:
        union = union.disjoint_union(t)
    w = find_minor(host, union, budget=budget)
    if w is None:
        return None
    cert = PackingCertificate(tuple(_split_union_witness(w, targets, host)), tuple(genera))
    assert verify_packing(host, cert)
    return cert


# -- cached grid certificates -------------------------------------------------


@dataclass(frozen=True)
class GridCertificate:
    fixture_host: tuple[int, ...]
    certificate: PackingCertificate


def _load_fixtures() -> list[dict]:
    text = resources.files("gridgenus").joinpath("fixtures/packings.json").read_text()
    return json.loads(text)["certificates"]


def _normal_order(spec: GridSpec) -> list[int]:
    """Original positions of the normalized parameters, in normalized order."""
    return sorted((i for i, a in enumerate(spec.params) if a > 0), key=lambda i: (-spec.params[i], i))


def grid_packing_certificates(spec: GridSpec | Sequence[int]) -> list[GridCertificate]:
    """Stored packings that fit inside ``spec``, re-verified against its grid graph.

    A fixture on ``G(b1,...,bk)`` applies to any normalized spec of the same
    dimension with every parameter at least as large (a subgraph).
    """
    spec = as_spec(spec)
    norm = spec.normalized()
    order = _normal_order(spec)
    host = grid_graph(spec)
    out = []
    for fx in _load_fixtures():
        small = tuple(fx["host"])
        if len(small) != len(norm) or any(b > a for a, b in zip(norm, small)):
            continue
        witnesses, genera, names = [], [], []
        for item in fx["witnesses"]:
            target = named_graph(item["target"])
            sets = {}
            for a, coords in enumerate(item["branch_sets"]):
                ids = []
                for c in coords:
                    full = [0] * spec.k
                    for j, i in enumerate(order):
                        full[i] = c[j]
                    ids.append(coord_to_index(spec, full))
                sets[a] = ids
            witnesses.append(witness_from_branch_sets(host, target, sets))
            genera.append(int(item["genus"]))
            names.append(item["target"])
        cert = PackingCertificate(tuple(witnesses), tuple(genera), tuple(names))
        if not verify_packing(host, cert):
            raise AssertionError(f"stored certificate for {small} does not verify on {spec}")
        oracle = formula_or_exhaustive_oracle()
        for w, g in zip(witnesses, genera):
            if genus_by_blocks(w.target, oracle) != g:
                raise AssertionError(f"stored target genus {g} is wrong for {small}")
        out.append(GridCertificate(small, cert))
    return out


def certified_packing_bound(spec: GridSpec | Sequence[int]) -> GridCertificate | None:
    certs = grid_packing_certificates(spec)
    if not certs:
        return None
    return max(certs, key=lambda c: (c.certificate.implied_lower_bound, c.fixture_host))


# ---------------------------------------------------------------------------
# cross-validation suite


@dataclass(frozen=True)
class Check:
    spec: tuple[int, ...]
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class SuiteReport:
    max_vertices: int
    budget: int
    checks: tuple[Check, ...]

    @property
    def discrepancies(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def _checks_for(spec: GridSpec, budget: int) -> Iterable[Check]:
    from . import constructions as C
    from . import formulas as F

    p = spec.params
    g = grid_graph(spec)
    nv, ne = counts(spec)
    yield Check(p, "counts", (nv, ne) == (g.vertex_count, g.edge_count), f"V={nv} E={ne}")

    ex = F.exact_genus(spec)
    cert = certified_packing_bound(spec)
    bounds = F.best_bounds(spec, cert.certificate.implied_lower_bound if cert else None)
    yield Check(p, "bounds-ordered", bounds.lower <= bounds.upper, f"[{bounds.lower}, {bounds.upper}]")
    if ex is not None:
        yield Check(
            p, "exact-within-bounds", bounds.lower == ex.value == bounds.upper,
            f"exact {ex.value} ({ex.family}); bounds [{bounds.lower}, {bounds.upper}]",
        )
        cls = F.classify(spec)
        yield Check(p, "planar-vs-genus", cls.planar == (ex.value == 0), f"planar={cls.planar}")
        yield Check(p, "torus-vs-genus", cls.embeds_on_torus == (ex.value <= 1), f"torus={cls.embeds_on_torus}")
    mg, mc = F.max_genus(spec), F.max_genus_closed_form(spec)
    yield Check(p, "max-genus-closed-form", mg == mc, f"{mg} vs {mc}")

    if spec.dimension == 3:
        rep = C.construct(spec)
        ok = rep.traced_genus == rep.claimed_bound
        detail = f"{rep.construction_case}: traced {rep.traced_genus}, claimed {rep.claimed_bound}"
        if rep.construction_case in ("one-even", "two-even", "three-even"):
            per = C.perimeter(spec)
            prof = dict(rep.face_profile)
            ok = ok and prof.pop(per, 0) == 1 and set(prof) == {4}
            ok = ok and rep.claimed_bound == C.perimeter_formula(spec)
            detail += f", faces {dict(rep.face_profile)}, P={per}"
        elif rep.construction_case == "all-odd":
            ok = ok and is_quadrilateral(trace_faces(rep.embedding))
        yield Check(p, "construction", ok, detail)
        if ex is not None:
            yield Check(p, "construction-vs-exact", rep.traced_genus >= ex.value, f"{rep.traced_genus} >= {ex.value}")

    if enumeration_size(g) <= budget:
        res = exhaustive_genus(g, budget)
        ok = res.exhausted and res.contiguous and res.max_genus == mg and res.min_genus >= bounds.lower
        ok = ok and res.min_genus <= bounds.upper
        if ex is not None:
            ok = ok and res.min_genus == ex.value
        spectrum = ",".join(map(str, sorted(res.spectrum)))
        yield Check(p, "exhaustive", ok, f"{res.enumerated} systems, genus {{{spectrum}}}")


def verify_construction_suite(max_vertices: int, budget: int = 10**6) -> SuiteReport:
    checks: list[Check] = []
    for spec in _suite_specs(max_vertices):
        checks.extend(_checks_for(spec, budget))
    return SuiteReport(max_vertices, budget, tuple(checks))


def _suite_specs(max_vertices: int) -> list[GridSpec]:
    from .grid import specs_up_to

    return [s for s in specs_up_to(max_vertices) if s.dimension >= 1] if max_vertices >= 2 else []
