"""Compiled enumeration of normalized grid specs for the maximum-genus sweep.

Specs are walked depth first as non-increasing parameter lists.  Each stack
frame carries the vertex count N, the edge count E and the residue
R = sum over axes of N/(a+1), all updated by recurrences on appending a
parameter ``a``:

    N' = N(a+1)      E' = E(a+1) + N a      R' = R(a+1) + N

E is the count side (betti = E - N + 1).  R feeds the closed form, since
N * sum a/(a+1) = kN - R for k axes.  The two sides share only N.
"""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def sweep_kernel(max_vertices):
    stack = np.empty((max_vertices + 64, 5), np.int64)
    stack[0, 0] = 1
    stack[0, 1] = max_vertices
    stack[0, 2] = 0
    stack[0, 3] = 0
    stack[0, 4] = 0
    top = 1
    checked = 0
    mismatches = 0
    while top:
        top -= 1
        n = stack[top, 0]
        cap = stack[top, 1]
        e = stack[top, 2]
        r = stack[top, 3]
        k = stack[top, 4]
        for a in range(1, min(cap, max_vertices // n - 1) + 1):
            n2 = n * (a + 1)
            e2 = e * (a + 1) + n * a
            r2 = r * (a + 1) + n
            k2 = k + 1
            checked += 1
            if (e2 - n2 + 1) // 2 != ((k2 - 1) * n2 - r2 + 1) // 2:
                mismatches += 1
            if 2 * n2 <= max_vertices:
                stack[top, 0] = n2
                stack[top, 1] = a
                stack[top, 2] = e2
                stack[top, 3] = r2
                stack[top, 4] = k2
                top += 1
    return checked, mismatches
