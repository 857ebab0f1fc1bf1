"""Orthoscheme (path-simplex) decompositions and the d=4 angle-sum law.

Every Voronoi cell of an inscribed d-simplex splits into d! orthoschemes:
path simplices whose facet-normal Gram matrices are tridiagonal.  When the
full complex of (d+1)! orthoschemes is a genuine triangulation (all signs
+1), the dihedral angles between consecutive facets close up in cycles of 6
around every codimension-2 face, so each of the d-1 levels sums to
2 pi (d+1)!/6 -- for d = 4 that is 40 pi.
"""

import math

import numpy as np

from mwkit import (adjacent_dihedral_angles, gram_matrix, maximal_chains,
                   path_simplex_from_chain, regular_simplex)

d = 4
S = regular_simplex(d)
chains = maximal_chains(d)
print(f"d = {d}: {len(chains)} maximal chains = (d+1)! = {math.factorial(d + 1)}")

pieces = [path_simplex_from_chain(S, c) for c in chains]
print(f"signs: {sum(p.sign == 1 for p in pieces)} positive, "
      f"{sum(p.sign == -1 for p in pieces)} negative")

worst_off = 0.0
for p in pieces:
    G = gram_matrix(p)
    off = G - np.tril(np.triu(G, -1), 1)
    worst_off = max(worst_off, float(np.max(np.abs(off))))
print(f"worst off-tridiagonal Gram entry: {worst_off:.2e}")

thetas = np.array([adjacent_dihedral_angles(p) for p in pieces])
sums = thetas.sum(axis=0)
print("per-level dihedral angle sums (in units of pi):")
for i, s in enumerate(sums):
    print(f"  level {i}: {s / np.pi:.12f}  (target 40)")
print("each level is exactly 40 pi because the regular simplex decomposes")
print("into a true triangulation: six orthoschemes around every ridge.")
