"""Negative definiteness of f(A, B) = a sin b over the region R.

R is the set of angle pairs {|A|, |B| < pi/2, cos^2 A + cos^2 B < 1} where a
right spherical triangle with non-right angles A, B exists.  The scan shows
f_AA < 0 and det Hess > 0 everywhere -- so -f is convex on R, which is what
pins the symmetric (regular) configuration as the unique maximizer of the
related width functional.
"""

import numpy as np

from mwkit import hessian_analytic, reduced_det_positive, region_scan

rep = region_scan(120)
print(f"grid points inside R:          {rep.n_points}")
print(f"min  -f_AA over the grid:      {rep.min_neg_f_AA:.6f}  (> 0)")
print(f"min  det Hess over the grid:   {rep.min_det_hess:.6f}  (> 0)")
print(f"max  |analytic - FD| entry:    {rep.max_fd_gap:.2e}")
print(f"violations:                    {rep.violations_f_AA} (f_AA), "
      f"{rep.violations_det} (det)\n")

p = hessian_analytic(np.pi / 3, np.pi / 3)
print("sample point A = B = pi/3:")
print(f"  f = {p.f:.6f}, grad = ({p.f_A:.6f}, {p.f_B:.6f})")
print(f"  Hess = [[{p.f_AA:.6f}, {p.f_AB:.6f}], [{p.f_AB:.6f}, {p.f_BB:.6f}]]")
print(f"  negative definite: {p.negative_definite}\n")

print("the determinant reduces to the one-variable expression")
print("a^2 tan^2 a - (1 - a cot a)^2, positive on (0, pi/2):")
for a in (0.2, np.pi / 4, 1.2, np.pi / 2 - 1e-3):
    r = reduced_det_positive(a)
    print(f"  a = {a:6.4f}: value {r.value:10.4f}, chain factors "
          f"({r.factor_sin:+.4f}) * ({r.factor_tan:+.4f}) < 0  -> {r.positive}")
