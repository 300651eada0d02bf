"""
Building and tracing an embedding
=================================

Construct rotation systems for a few three-dimensional grids, then trace
their faces. The face profile shows how far each one is from a
quadrilateral embedding. The all-odd grid (3,3,3) is also written out as
an OFF mesh of its cubical boundary surface.
"""

# %%
import sys
import tempfile
from pathlib import Path

from gridgenus.constructions import construct, perimeter
from gridgenus.cubical import boundary_surface, cube_set, export_mesh
from gridgenus.formulas import euler_value
from gridgenus.rotation import trace_faces

for params in [(3, 3, 3), (2, 2, 1), (3, 2, 2), (4, 4, 2)]:
    rep = construct(params)
    faces = trace_faces(rep.embedding)
    print(f"{params}: case {rep.construction_case}, traced genus {faces.genus}")
    print(f"    faces by length {dict(sorted(faces.face_profile.items()))}, perimeter {perimeter(params)}")
    print(f"    Euler value {euler_value(params)}")

# %%
# The boundary of the cube solid carries the same quadrilateral structure.
surface = boundary_surface(cube_set(3, 3, 3))
out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.gettempdir()) / "grid333.off"
out.write_bytes(export_mesh(surface, "off"))
print(f"\nwrote {out}: {len(surface.squares)} squares, genus {surface.genus}")
