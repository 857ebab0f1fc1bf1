"""Wallis integrals and spherical cap measures.

Walks through the W^d recursion, the product identity d W^d W^{d-1} = 2 pi,
the sqrt(2 pi / d) squeeze, and cap measures / cap marginal means on S^{d-1}.
"""

import numpy as np

from mwkit import cap_marginal_mean, cap_measure, wallis_complete, wallis_table

print("Wallis integrals W^d = int_0^pi sin^d t dt")
print("d     W^d        d*W^d*W^(d-1)   sqrt(2pi/(d+1))  sqrt(2pi/d)")
W = wallis_table(12)
for d in range(1, 13):
    lo, hi = np.sqrt(2 * np.pi / (d + 1)), np.sqrt(2 * np.pi / d)
    print(f"{d:2d}  {W[d]:9.6f}   {d * W[d] * W[d - 1]:12.10f}   "
          f"{lo:9.6f}       {hi:9.6f}")
print(f"\nthe product column is 2*pi = {2 * np.pi:.10f} in every row, and")
print("W^d is squeezed between the two bounds, so W^d ~ sqrt(2pi/d).\n")

print("cap measures mu(cap(r)) on S^2 (fraction of the sphere in a cap):")
for r in (np.pi / 6, np.pi / 3, np.pi / 2, 2 * np.pi / 3, np.pi):
    print(f"  r = {r:6.4f}: mu = {cap_measure(3, r):.6f}")
print("hemisphere is exactly 1/2 and the full sphere exactly 1, in any d:")
print("  d=2..8 at r=pi/2:",
      [round(cap_measure(d, np.pi / 2), 12) for d in range(2, 9)])

print("\ncap marginal means (average of X . axis over the cap mass):")
print(f"  S^2 hemisphere: {cap_marginal_mean(3, np.pi / 2).value:.6f}  (= 1/4)")
print(f"  S^3 hemisphere: {cap_marginal_mean(4, np.pi / 2).value:.6f}  (= 2/(3 pi))")
print(f"  S^2 full sphere: {cap_marginal_mean(3, np.pi).value:.6f}  (symmetry)")
