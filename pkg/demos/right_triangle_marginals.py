"""Marginal means over right spherical triangles, three ways.

Compares the closed form a sin(b) / (8 pi) against (i) direct Monte Carlo of
int_T X . A dmu and (ii) the reduced one-dimensional integral over the
opposite side, for a few triangles including the octant.
"""

import numpy as np

from mwkit import (HalfspaceCell, cell_marginal_mean_MAT,
                   right_triangle_marginal_mean, solve_right_triangle)

rng = np.random.default_rng(0)


def direct_mc(T, n=400_000):
    N = np.linalg.inv(np.column_stack([T.A, T.B, T.C]))
    u = rng.standard_normal((n, 3))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    g = np.where(np.all(u @ N.T >= 0.0, axis=1), u @ T.A, 0.0)
    return g.mean(), g.std(ddof=1) / np.sqrt(n)


def reduced(T, n=400_000):
    N = np.linalg.inv(np.column_stack([T.A, T.B, T.C]))
    N /= np.linalg.norm(N, axis=1, keepdims=True)
    return cell_marginal_mean_MAT(HalfspaceCell(N), n, seed=1)


print("legs (a, b)        closed form   direct MC            reduced integral")
for a, b in [(np.pi / 2, np.pi / 2), (np.pi / 3, np.pi / 3),
             (1.2, 0.4), (0.8, 1.5)]:
    T = solve_right_triangle(a, b)
    exact = right_triangle_marginal_mean(a, b).value
    mc, se = direct_mc(T)
    red = reduced(T)
    print(f"({a:5.3f}, {b:5.3f})   {exact:.8f}   {mc:.6f} +- {se:.1e}  "
          f"{red.value:.6f} +- {red.std_error:.1e}")

print("\nthe octant row is exactly 1/16 = 0.0625; the other rows agree with")
print("both samplers to within a few standard errors.")
