#!/usr/bin/env python3
"""Over F_3 the class sum and the product formula part ways."""

from matroid_euler import chi_closed, chi_p_partial

for r in (1, 2):
    report = chi_p_partial(3, r, (3 ** r - 1) // 2)
    for t in report.terms:
        print(f"r={r} n={t.n}: aut orders {t.aut_orders}, term {t.term}")
    state = "complete" if report.complete else "partial"
    print(f"r={r}: class sum {report.total} ({state}), product {chi_closed(3, r)}")
