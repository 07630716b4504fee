#!/usr/bin/env python3
"""Read off the distinct-columns condition from Pluecker coordinates and
compare it with a direct look at the columns."""

from itertools import product

from matroid_euler.gf import (
    GFMatrix,
    columns_distinct_nonzero,
    distinct_columns_via_plucker,
    plucker,
    rank,
)

A = GFMatrix([[1, 0, 1], [0, 1, 1]], 2)
P = plucker(A)
print("coordinates of", A.tolist(), "->", P.coords)
print("distinct columns?", distinct_columns_via_plucker(P))

# Only comparing the minors with i and j swapped against each other is not
# enough: the sign of the reordered column matters and every (r-1)-set
# counts, including those that meet {i, j}.
for p in (2, 3):
    agree = total = 0
    for entries in product(range(p), repeat=2 * 4):
        M = GFMatrix([entries[:4], entries[4:]], p)
        if rank(M) < 2:
            continue
        total += 1
        agree += distinct_columns_via_plucker(plucker(M)) == columns_distinct_nonzero(M)
    print(f"p={p}: predicates agree on {agree}/{total} rank-2 2x4 matrices")
