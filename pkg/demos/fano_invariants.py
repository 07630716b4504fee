#!/usr/bin/env python3
"""Invariants of the Fano plane and the rank-4 binary projective space."""

from matroid_euler import chi_closed
from matroid_euler.matroid import (
    aut_order,
    beta_invariant,
    characteristic_polynomial,
    is_alternating,
    pg_matroid,
    stratum_count,
    uniform_matroid,
)

fano = pg_matroid(3)
print("Fano:", fano.num_bases, "bases")
print("  |Aut| =", aut_order(fano))
print("  alternating:", is_alternating(fano))
print("  chi(t) =", characteristic_polynomial(fano))
print("  beta =", beta_invariant(fano))

for r in (1, 2, 3):
    P = pg_matroid(r + 1)
    beta = beta_invariant(P)
    print(f"r={r}: beta(P)={beta}, beta * chi(B(r)) = {beta * chi_closed(2, r)}")

print("|Aut PG(3,2)| =", aut_order(pg_matroid(4), max_n=15))

# over F_3 the three-point line has several realizations, over F_2 just one
U23 = uniform_matroid(2, 3)
print("realizations of U(2,3): F_2 ->", stratum_count(U23, 2), " F_3 ->", stratum_count(U23, 3))
