"""The 24-triangle complex of an inscribed tetrahedron.

Builds the Voronoi cells of the four vertices, decomposes each cell into six
signed right triangles (vertex, edge midpoint direction, cell corner), and
verifies the Girard-style bookkeeping: signed angle sums of 2 pi at each
vertex, 8 pi total, and the exact mean-width identity
    w = (1 / 4 pi) sum_T sigma(T) a_T sin(b_T).
"""

import numpy as np

from mwkit import (mean_width_exact3d, mean_width_mc, random_simplex,
                   regular_simplex, right_triangle_complex)

for label, S in [("regular tetrahedron", regular_simplex(3)),
                 ("random feasible tetrahedron",
                  random_simplex(3, np.random.default_rng(7), feasible=True))]:
    print(f"== {label} ==")
    triangles, audit = right_triangle_complex(S)
    print(f"  triangles: {len(triangles)}, signs: "
          f"{sum(t.sign == 1 for t in triangles)} positive / "
          f"{sum(t.sign == -1 for t in triangles)} negative")
    print(f"  signed angle sums at the four vertices (target 2 pi):")
    print("   ", np.array2string(audit.vertex_angle_sums / np.pi,
                                 precision=12), "* pi")
    print(f"  total vertex angle sum: {audit.total_vertex_angle_sum / np.pi:.12f} * pi")
    print(f"  hemisphere cover holds: {audit.cover_holds}, "
          f"max angle: {audit.max_angle:.6f} (pi/2 = {np.pi / 2:.6f})")
    print(f"  audit all_ok: {audit.all_ok}")

    w = mean_width_exact3d(S)
    mc = mean_width_mc(S, 500_000, seed=1)
    print(f"  exact mean width: {w.value:.10f}")
    print(f"  MC mean width:    {mc.value:.10f} +- {mc.std_error:.1e}\n")

print("negative signs appear whenever an altitude of the construction")
print("overshoots its facet; the signed bookkeeping still closes exactly.")
