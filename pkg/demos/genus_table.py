"""
Genus bounds across small grids
===============================

Print a table of bounds for every normalized grid with at most 100
vertices. Exact rows are where a certified lower bound meets an upper bound.
The rest show the remaining gap.
"""

# %%
# Collect bounds. ``certified_packing_bound`` contributes a minor-packing
# lower bound when a stored certificate fits the grid.
from gridgenus.formulas import best_bounds, exact_genus, max_genus
from gridgenus.grid import counts, specs_up_to
from gridgenus.oracle import certified_packing_bound

rows = []
for spec in specs_up_to(100):
    cert = certified_packing_bound(spec)
    packed = cert.certificate.implied_lower_bound if cert else None
    b = best_bounds(spec, packing_bound=packed)
    ex = exact_genus(spec)
    rows.append((spec.params, *counts(spec), b.lower, b.upper, ex.family if ex else "-", max_genus(spec)))

# %%
# Render. Dimension one and two are planar, so most rows start at three.
print(f"{'spec':<20}{'|V|':>5}{'|E|':>6}{'low':>5}{'high':>6}  {'family':<14}{'max':>5}")
for params, nv, ne, lo, hi, fam, mx in rows:
    if len(params) < 3:
        continue
    mark = "" if lo == hi else "  gap"
    print(f"{str(params):<20}{nv:>5}{ne:>6}{lo:>5}{hi:>6}  {fam:<14}{mx:>5}{mark}")

open_specs = [r[0] for r in rows if r[3] != r[4]]
print(f"\n{len(rows)} grids, {len(open_specs)} with an open gap: {open_specs}")
