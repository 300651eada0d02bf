"""Structured reports and their text / JSON renderings.

Documents are plain nested dicts with insertion order fixed by the code, so
both renderings are byte-for-byte deterministic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import yaml

from . import constructions as C
from . import formulas as F
from .grid import GridSpec, betti, counts, grid_graph
from .oracle import SuiteReport, certified_packing_bound, exhaustive_genus
from .rotation import RotationSystem, trace_faces


def rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def spec_report(spec: GridSpec, construct: bool = False, oracle_budget: int | None = None) -> dict[str, Any]:
    """Everything known about ``spec``; contradictions are listed under ``problems``."""
    nv, ne = counts(spec)
    ex = F.exact_genus(spec)
    cert = certified_packing_bound(spec)
    bounds = F.best_bounds(spec, cert.certificate.implied_lower_bound if cert else None)
    cls = F.classify(spec)
    gr = F.genus_range(spec, bounds.lower)
    doc: dict[str, Any] = {
        "spec": {"params": list(spec.params), "normalized": list(spec.normalized())},
        "counts": {"vertices": nv, "edges": ne, "betti": betti(spec)},
        "euler": {"value": rational(F.euler_value(spec)), "lower_bound": F.euler_lower_bound(spec)},
        "bounds": {
            "lower": bounds.lower,
            "lower_source": bounds.lower_source,
            "upper": bounds.upper,
            "upper_source": bounds.upper_source,
            "exact": bounds.exact,
            "gap": bounds.gap,
        },
        "exact_genus": {"value": ex.value, "family": ex.family} if ex else None,
        "classification": {
            "planar": cls.planar,
            "planar_reason": cls.reasons[0],
            "toroidal_2cell": cls.toroidal_2cell,
            "toroidal_reason": cls.reasons[1],
            "embeds_on_torus": cls.embeds_on_torus,
        },
        "max_genus": {"value": F.max_genus(spec), "source": "upper-embeddable: floor(betti/2)"},
        "genus_range": {"low": gr.low, "high": gr.high, "partial": gr.partial},
    }
    if bounds.exact:
        doc["quadrilateral_distance"] = rational(F.quadrilateral_distance(spec, bounds.lower))
    w = F.white_genus(spec)
    if w is not None:
        doc["white_genus"] = w
    if spec.dimension >= 4:
        doc["recursive_upper_bound"] = C.recursive_upper_bound(spec)
    if cert is not None:
        c = cert.certificate
        doc["packing_certificate"] = {
            "fixture_host": list(cert.fixture_host),
            "targets": list(c.target_names),
            "target_genera": list(c.target_genera),
            "implied_lower_bound": c.implied_lower_bound,
            "verified": True,
        }

    problems = []
    if F.max_genus(spec) != F.max_genus_closed_form(spec):
        problems.append("maximum genus closed form disagrees with betti/2")
    if ex is not None and cls.planar != (ex.value == 0):
        problems.append("planarity classification disagrees with the exact genus")

    if construct:
        if spec.dimension == 3:
            rep = C.construct(spec)
            doc["construction"] = {**rep.to_dict(), "verified": rep.verified}
            if not rep.verified:
                problems.append("traced genus differs from the construction's claim")
            if rep.traced_genus < bounds.lower:
                problems.append("construction beats a certified lower bound")
        else:
            doc["construction"] = {"available": False, "reason": "explicit embeddings exist for 3 dimensions only"}

    if oracle_budget is not None:
        res = exhaustive_genus(grid_graph(spec), oracle_budget)
        doc["oracle"] = {
            "enumerated": res.enumerated,
            "total": res.total,
            "exhausted": res.exhausted,
            "min_genus": res.min_genus,
            "max_genus": res.max_genus,
            "spectrum": sorted(res.spectrum),
            "contiguous": res.contiguous,
        }
        if res.exhausted:
            if not bounds.lower <= res.min_genus <= bounds.upper:
                problems.append("exhaustive minimum genus outside the bounds")
            if res.max_genus != F.max_genus(spec):
                problems.append("exhaustive maximum genus differs from betti/2")
    doc["consistent"] = not problems
    if problems:
        doc["problems"] = problems
    return doc


def suite_document(rep: SuiteReport) -> dict[str, Any]:
    return {
        "max_vertices": rep.max_vertices,
        "budget": rep.budget,
        "checks": len(rep.checks),
        "discrepancies": len(rep.discrepancies),
        "pass": rep.ok,
        "results": [
            {"spec": list(c.spec), "check": c.name, "pass": c.ok, "detail": c.detail} for c in rep.checks
        ],
    }


def embedding_document(rep: C.ConstructionReport) -> dict[str, Any]:
    return {"construction": rep.to_dict(), "rotation_system": rep.embedding.to_text()}


def load_embedding(text: str) -> tuple[RotationSystem, dict[str, Any]]:
    """Parse an ``embed`` output file and check the stored genus by re-tracing."""
    doc = json.loads(text)
    rs = RotationSystem.from_text(doc["rotation_system"])
    traced = trace_faces(rs).genus
    if traced != doc["construction"]["traced_genus"]:
        raise ValueError(f"stored genus {doc['construction']['traced_genus']} but file traces to {traced}")
    return rs, doc["construction"]


def render(doc: Any, as_json: bool = False) -> str:
    if as_json:
        return json.dumps(doc, indent=2) + "\n"
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=False, width=100)
