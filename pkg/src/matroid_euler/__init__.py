"""Exact virtual Euler characteristics of simple binary matroids, via
points of Grassmannians over finite fields."""

from .exact import binomial, factorial, falling_product, format_rat, parse_rat, rat
from .gf import (
    GFMatrix,
    PrimeField,
    columns_distinct_nonzero,
    det,
    distinct_columns_via_plucker,
    plucker,
    rref,
)
from .grassmann import (
    conf_count,
    enumerate_grassmannian,
    gaussian_binomial,
    grdc_bruteforce_count,
    grdc_count_recursive,
    grdc_r1_count,
    yk_partition,
)
from .matroid import (
    IsoClass,
    Matroid,
    aut_order,
    beta_invariant,
    canonical_form,
    characteristic_polynomial,
    enumerate_binary_classes,
    glq_order,
    matroid_of_matrix,
    pg_matroid,
    stratum_count,
)
from .euler import (
    ChiReport,
    chi_closed,
    chi_enumerated,
    chi_p_partial,
    chi_via_counts,
    lemma_sum,
    verify_beta_relation,
    verify_prop22,
)

__version__ = "0.1.0"
