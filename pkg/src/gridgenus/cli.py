"""Command-line driver: ``gridgenus {report,embed,mesh,verify,oracle}``.

Exit codes: 0 ok, 1 usage error, 2 internal inconsistency, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions as C
from .cubical import boundary_surface, cube_set, export_mesh
from .formulas import InconsistencyError
from .graph import DEFAULT_BUDGET
from .grid import GridSpec, grid_graph
from .oracle import exhaustive_genus, verify_construction_suite
from .report import embedding_document, render, spec_report, suite_document

OK, USAGE, INCONSISTENT, EXHAUSTED = 0, 1, 2, 3
VERIFY_BUDGET = 10**6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE)


def _env_budget(default: int) -> int:
    raw = os.environ.get("GRIDGENUS_BUDGET")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"GRIDGENUS_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("GRIDGENUS_BUDGET must be positive")
    return value


def _spec(params: list[int]) -> GridSpec:
    if not params or all(a == 0 for a in params):
        raise UsageError("give at least one positive grid parameter")
    try:
        return GridSpec(params)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_report(a: argparse.Namespace) -> int:
    spec = _spec(a.params)
    budget = a.oracle
    doc = spec_report(spec, construct=a.construct, oracle_budget=budget)
    sys.stdout.write(render(doc, a.json))
    if not doc["consistent"]:
        return INCONSISTENT
    if budget is not None and not doc["oracle"]["exhausted"]:
        return EXHAUSTED
    return OK


def cmd_embed(a: argparse.Namespace) -> int:
    spec = _spec(a.params)
    if spec.dimension != 3:
        extra = ""
        if spec.dimension >= 4:
            extra = f"; only the recursive upper bound {C.recursive_upper_bound(spec)} is available"
        raise UsageError(f"explicit embeddings exist for 3-dimensional grids only{extra}")
    rep = C.construct(spec)
    if not rep.verified:
        print(f"traced genus {rep.traced_genus} differs from claim {rep.claimed_bound}", file=sys.stderr)
        return INCONSISTENT
    text = json.dumps(embedding_document(rep), indent=1) + "\n"
    _emit(text, a.out)
    if a.out:
        print(f"{spec}: {rep.construction_case}, traced genus {rep.traced_genus}, written to {a.out}")
    return OK


def cmd_mesh(a: argparse.Namespace) -> int:
    spec = _spec(a.params)
    pos = [p for p in spec.params if p > 0]
    if len(pos) != 3:
        raise UsageError("meshes are defined for three positive parameters")
    even = [p for p in pos if p % 2 == 0]
    if even and not a.allow_subgraph:
        raise UsageError(
            "with an even parameter the cubical surface skeleton is a proper subgraph of the grid; "
            "pass --allow-subgraph to export it anyway"
        )
    surface = boundary_surface(cube_set(*pos))
    data = export_mesh(surface, a.format)
    if a.out:
        Path(a.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    msg = f"euler characteristic {surface.euler_characteristic}, genus {surface.genus}"
    if even:
        msg += f" (skeleton has {len(surface.edges)} of {grid_graph(pos).edge_count} grid edges)"
    print(msg, file=sys.stderr if not a.out else sys.stdout)
    return OK


def cmd_verify(a: argparse.Namespace) -> int:
    budget = a.budget if a.budget is not None else _env_budget(VERIFY_BUDGET)
    rep = verify_construction_suite(a.max_vertices, budget)
    _emit(render(suite_document(rep), a.json), a.out)
    return OK if rep.ok else INCONSISTENT


def cmd_oracle(a: argparse.Namespace) -> int:
    spec = _spec(a.params)
    budget = a.budget if a.budget is not None else _env_budget(DEFAULT_BUDGET)
    res = exhaustive_genus(grid_graph(spec), budget)
    doc = {
        "spec": list(spec.params),
        "enumerated": res.enumerated,
        "total": res.total,
        "exhausted": res.exhausted,
        "min_genus": res.min_genus,
        "max_genus": res.max_genus,
        "spectrum": sorted(res.spectrum),
        "contiguous": res.contiguous,
    }
    sys.stdout.write(render(doc, a.json))
    return OK if res.exhausted else EXHAUSTED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gridgenus", description="Genus bounds, embeddings and checks for grid graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def params(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("params", nargs="+", type=int, metavar="A", help="grid parameters")

    r = sub.add_parser("report", help="bounds, exact genus and classifications")
    params(r)
    r.add_argument("--construct", action="store_true", help="build and trace the explicit embedding")
    r.add_argument("--oracle", type=int, metavar="BUDGET", help="exhaustive check with this many systems")
    r.add_argument("--json", action="store_true", help="JSON instead of YAML")
    r.set_defaults(func=cmd_report)

    e = sub.add_parser("embed", help="write a rotation system for a 3-dimensional grid")
    params(e)
    e.add_argument("--out", help="output path (default: stdout)")
    e.set_defaults(func=cmd_embed)

    m = sub.add_parser("mesh", help="export the cubical surface as OFF or OBJ")
    params(m)
    m.add_argument("--format", choices=("off", "obj"), default="off")
    m.add_argument("--out", help="output path (default: stdout)")
    m.add_argument(
        "--allow-subgraph", action="store_true", help="export even when the skeleton misses grid edges"
    )
    m.set_defaults(func=cmd_mesh)

    v = sub.add_parser("verify", help="cross-validate formulas, constructions and enumeration")
    v.add_argument("--max-vertices", type=int, default=30, help="largest grid to check (default 30)")
    v.add_argument("--budget", type=int, help=f"rotation systems per graph (default {VERIFY_BUDGET})")
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--json", action="store_true", help="JSON instead of YAML")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exhaustive genus spectrum of a grid graph")
    params(o)
    o.add_argument("--budget", type=int, help="rotation systems to trace (default: GRIDGENUS_BUDGET or 10^7)")
    o.add_argument("--json", action="store_true", help="JSON instead of YAML")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("report",) and args.oracle is not None and args.oracle < 1:
        print("gridgenus: error: --oracle budget must be positive", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"gridgenus: error: {e}", file=sys.stderr)
        return USAGE
    except InconsistencyError as e:
        print(f"gridgenus: inconsistency: {e}", file=sys.stderr)
        return INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
