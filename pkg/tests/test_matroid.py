import random
from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from matroid_euler.gf import GFMatrix, columns_distinct_nonzero, det, rank, rref
from matroid_euler.grassmann import enumerate_grassmannian, grdc_bruteforce_count, grdc_count_recursive
from matroid_euler.matroid import (
    CharPoly,
    Matroid,
    SizeLimitExceeded,
    aut_order,
    automorphism_generators,
    automorphisms,
    beta_derivative,
    beta_invariant,
    binary_vectors_matroid,
    canonical_form,
    characteristic_polynomial,
    check_basis_exchange,
    enumerate_binary_classes,
    enumerate_p_classes,
    glq_order,
    is_alternating,
    is_automorphism,
    is_isomorphic,
    is_simple,
    matroid_of_matrix,
    pg_matroid,
    rank_of_subset,
    rank_table,
    relabel,
    stratum_count,
    uniform_matroid,
)

U23 = Matroid.from_sets(3, [[1, 2], [1, 3], [2, 3]])
FANO = pg_matroid(3)
# three-point line {1,2,3} plus a point off it
LINE_PLUS_POINT = binary_vectors_matroid([1, 2, 3, 4], 3)


def minors_oracle(A):
    """Bases by brute force over all r x r minors."""
    return {c for c in combinations(range(1, A.n + 1), A.r) if det(A.submatrix(c))}


def brute_aut(Q):
    return [perm for perm in permutations(range(Q.n)) if is_automorphism(Q, perm)]


def test_matroid_of_matrix_examples():
    assert matroid_of_matrix(GFMatrix([[1, 0, 1], [0, 1, 1]], 2)) == U23
    I3 = GFMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 5)
    assert matroid_of_matrix(I3).basis_sets() == [[1, 2, 3]]
    assert FANO.n == 7 and FANO.num_bases == 28


def test_fano_bases_by_minors():
    cols = [[(v >> i) & 1 for i in range(3)] for v in range(1, 8)]
    A = GFMatrix(list(zip(*cols)), 2)
    assert len(minors_oracle(A)) == 28
    assert {tuple(b) for b in matroid_of_matrix(A).basis_sets()} == minors_oracle(A)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_matroid_of_matrix_matches_minors(p):
    rng = random.Random(p)
    for _ in range(100):
        r, n = rng.randint(1, 3), rng.randint(3, 6)
        A = GFMatrix([[rng.randrange(p) for _ in range(n)] for _ in range(r)], p)
        if rank(A) != r:
            continue
        assert {tuple(b) for b in matroid_of_matrix(A).basis_sets()} == minors_oracle(A)


def test_rank_deficient_matrix_rejected():
    with pytest.raises(ValueError):
        matroid_of_matrix(GFMatrix([[1, 1], [1, 1]], 2))


def test_basis_exchange_examples():
    assert check_basis_exchange(U23)
    assert not check_basis_exchange(Matroid.from_sets(4, [[1, 2], [3, 4]]))
    assert check_basis_exchange(Matroid.from_sets(3, [[1, 3]]))


@pytest.mark.parametrize("p", [2, 3])
def test_every_constructed_matroid_satisfies_exchange(p):
    seen = set()
    for r in (1, 2, 3):
        for n in range(r, 7):
            if p == 3 and r == 3 and n == 6:
                continue  # 33880 points, exercised in the acceptance suite
            for A in enumerate_grassmannian(r, n, p):
                seen.add(matroid_of_matrix(A))
    assert all(check_basis_exchange(Q) for Q in seen)


def test_rank_examples():
    assert rank_of_subset(U23, {1}) == 1
    assert rank_of_subset(U23, {1, 2, 3}) == 2
    assert rank_of_subset(FANO, {1, 2, 3}) == 2  # vectors 1, 2, 3 = e1, e2, e1+e2


def test_rank_table_matches_direct_rank():
    Q = binary_vectors_matroid([1, 2, 3, 4, 7, 5], 3)
    ranks, _ = rank_table(Q)
    for mask in range(1 << Q.n):
        assert ranks[mask] == rank_of_subset(Q, mask)


def test_is_simple():
    assert is_simple(U23)
    assert not is_simple(matroid_of_matrix(GFMatrix([[1, 0, 0], [0, 1, 0]], 2)))
    assert not is_simple(matroid_of_matrix(GFMatrix([[1, 1, 0], [0, 0, 1]], 2)))


@pytest.mark.parametrize("p", [2, 3])
def test_simple_iff_columns_pairwise_independent(p):
    for r, n in [(2, 3), (2, 4), (3, 4), (3, 5)]:
        for A in enumerate_grassmannian(r, n, p):
            cols = A.columns()
            pairwise = all(any(c) for c in cols) and all(
                rank(GFMatrix(list(zip(a, b)), p)) == 2 for a, b in combinations(cols, 2))
            assert is_simple(matroid_of_matrix(A)) == pairwise
            if p == 2:
                assert pairwise == columns_distinct_nonzero(A)


@pytest.mark.parametrize("Q, expected", [
    (FANO, 168),
    (uniform_matroid(3, 4), 24),
    (uniform_matroid(1, 1), 1),
    (LINE_PLUS_POINT, 6),
    (U23, 6),
])
def test_aut_order_examples(Q, expected):
    assert aut_order(Q) == expected


def test_aut_order_pg4():
    assert aut_order(pg_matroid(4), max_n=15) == 20160 == glq_order(4, 2)


def test_aut_size_limit():
    with pytest.raises(SizeLimitExceeded):
        aut_order(uniform_matroid(2, 13))


def test_aut_order_against_permutation_brute_force():
    rng = random.Random(3)
    cases = [FANO, LINE_PLUS_POINT, uniform_matroid(2, 5), Matroid.from_sets(4, [[1, 2], [1, 3]])]
    for _ in range(15):
        n = rng.randint(3, 7)
        r = rng.randint(1, 3)
        cases.append(binary_vectors_matroid(rng.sample(range(1, 8), n), 3)
                     if n <= 7 and r == 3 else uniform_matroid(r, n))
    for p in (3, 5):
        for _ in range(10):
            A = GFMatrix([[rng.randrange(p) for _ in range(6)] for _ in range(3)], p)
            if rank(A) == 3:
                cases.append(matroid_of_matrix(A))
    for Q in cases:
        brute = brute_aut(Q)
        assert aut_order(Q) == len(brute)
        assert sorted(map(tuple, automorphisms(Q))) == sorted(brute)
        assert all(is_automorphism(Q, g) for g in automorphism_generators(Q))


def test_is_alternating():
    assert not is_alternating(U23)
    assert is_alternating(uniform_matroid(1, 1))
    assert is_alternating(FANO)
    assert not is_alternating(uniform_matroid(5, 10))


def test_is_alternating_against_enumeration():
    rng = random.Random(5)
    for _ in range(20):
        p = rng.choice([2, 3])
        A = GFMatrix([[rng.randrange(p) for _ in range(6)] for _ in range(3)], p)
        if rank(A) != 3:
            continue
        Q = matroid_of_matrix(A)
        even = all(_parity(g) == 0 for g in automorphisms(Q))
        assert is_alternating(Q) == even


def _parity(perm):
    return sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j]) % 2


def test_canonical_form_examples():
    assert canonical_form(Matroid.from_sets(4, [[2, 4]])).basis_sets() == [[1, 2]]
    assert canonical_form(uniform_matroid(3, 4)) != canonical_form(LINE_PLUS_POINT)
    assert not is_isomorphic(uniform_matroid(3, 4), LINE_PLUS_POINT)


def test_canonical_form_is_least_relabeling():
    # brute force over every permutation for small matroids
    for Q in [U23, LINE_PLUS_POINT, binary_vectors_matroid([1, 2, 4, 3, 5], 3),
              Matroid.from_sets(4, [[1, 2], [1, 3], [2, 3], [1, 4], [2, 4]])]:
        best = min(tuple(relabel(Q, [x + 1 for x in perm]).bases)
                   for perm in permutations(range(Q.n)))
        assert canonical_form(Q).bases == best


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 3]))
def test_canonical_form_orbit_constancy(seed, p):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    A = GFMatrix([[rng.randrange(p) for _ in range(n)] for _ in range(3)], p)
    if rank(A) != 3:
        return
    Q = matroid_of_matrix(A)
    sigma = rng.sample(range(1, n + 1), n)
    assert canonical_form(relabel(Q, sigma)) == canonical_form(Q)


def test_distinct_points_give_distinct_matroids_f2():
    # distinct points of Gr(r, n; F_2) give distinct matroids
    for r, n in [(1, 3), (2, 3), (2, 4), (3, 5), (2, 5)]:
        points = list(enumerate_grassmannian(r, n, 2))
        assert len({matroid_of_matrix(A) for A in points}) == len(points)


def test_matroid_determines_rref_randomized():
    rng = random.Random(21)
    for _ in range(300):
        r, n = rng.randint(2, 4), rng.randint(5, 8)
        A = GFMatrix([[rng.randrange(2) for _ in range(n)] for _ in range(r)], 2)
        B = GFMatrix([[rng.randrange(2) for _ in range(n)] for _ in range(r)], 2)
        if rank(A) != r or rank(B) != r:
            continue
        same = matroid_of_matrix(A) == matroid_of_matrix(B)
        assert same == (rref(A).matrix == rref(B).matrix)


@pytest.mark.parametrize("r, n, auts", [
    (3, 7, [168]),
    (3, 4, [6, 24]),
    (3, 5, [8]),
    (3, 3, [6]),
    (3, 6, [24]),
    (2, 3, [6]),
    (1, 1, [1]),
])
def test_binary_classes(r, n, auts):
    classes = enumerate_binary_classes(r, n)
    assert sorted(c.aut_order for c in classes) == sorted(auts)
    for c in classes:
        assert c.labeled_count * c.aut_order == factorial(n)
        assert canonical_form(c.representative) == c.representative
        assert is_simple(c.representative)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_class_labeled_counts_sum_to_grdc(r):
    for n in range(r, 2 ** r):
        classes = enumerate_binary_classes(r, n, canonical=False)
        total = sum(c.labeled_count for c in classes)
        if r <= 3:
            assert total == grdc_bruteforce_count(r, n, 2)
        assert total == grdc_count_recursive(r, n, 2)


@pytest.mark.parametrize("r", [2, 3])
def test_class_auts_match_generic(r):
    for n in range(r, 2 ** r):
        for c in enumerate_binary_classes(r, n):
            assert aut_order(c.representative) == c.aut_order


def test_class_auts_match_generic_rank4():
    for n in range(4, 13):
        classes = enumerate_binary_classes(4, n)
        assert [aut_order(c.representative) for c in classes] == [c.aut_order for c in classes]
        reps = [c.representative for c in classes]
        assert len(set(reps)) == len(reps)  # distinct canonical forms


def test_p_classes_over_f2_match_binary_classes():
    for r, n in [(3, 4), (3, 5), (3, 6), (2, 3)]:
        a = sorted(c.aut_order for c in enumerate_p_classes(2, r, n))
        b = sorted(c.aut_order for c in enumerate_binary_classes(r, n))
        assert a == b


def test_p_classes_over_f3_rank2():
    assert [[c.aut_order for c in enumerate_p_classes(3, 2, n)] for n in (2, 3, 4)] == [[2], [6], [24]]
    assert enumerate_p_classes(3, 2, 5) == []


@pytest.mark.parametrize("r, q, expected", [(1, 2, 1), (2, 2, 6), (3, 2, 168), (2, 3, 48), (4, 2, 20160)])
def test_glq_order(r, q, expected):
    assert glq_order(r, q) == expected


def test_pg_matroid():
    assert pg_matroid(2) == U23
    assert pg_matroid(3) == FANO
    P4 = pg_matroid(4)
    assert P4.n == 15 and P4.r == 4


def brute_charpoly(Q, A):
    """Rank-sum with ranks from matrix column ranks, not from the bases."""
    coeffs = [0] * (Q.r + 1)
    for mask in range(1 << Q.n):
        cols = [j + 1 for j in range(Q.n) if mask >> j & 1]
        rk = rank(A.submatrix(cols)) if cols else 0
        coeffs[Q.r - rk] += (-1) ** len(cols)
    return tuple(coeffs)


def test_charpoly_examples():
    assert characteristic_polynomial(uniform_matroid(1, 1)).coeffs == (-1, 1)
    assert characteristic_polynomial(U23).coeffs == (2, -3, 1)
    assert characteristic_polynomial(FANO) == CharPoly.from_roots([1, 2, 4])
    assert str(characteristic_polynomial(FANO)) == "t^3 - 7t^2 + 14t - 8"


def test_charpoly_against_matrix_ranks():
    rng = random.Random(9)
    for _ in range(20):
        p = rng.choice([2, 3])
        r, n = rng.randint(1, 3), rng.randint(3, 7)
        A = GFMatrix([[rng.randrange(p) for _ in range(n)] for _ in range(r)], p)
        if rank(A) != r:
            continue
        Q = matroid_of_matrix(A)
        chi = characteristic_polynomial(Q)
        assert chi.coeffs == brute_charpoly(Q, A)
        loopless = all(any(col) for col in A.columns())
        if loopless:
            assert chi.coeffs[-1] == 1
            assert chi(1) == 0


def test_charpoly_pg4_product():
    assert characteristic_polynomial(pg_matroid(4)) == CharPoly.from_roots([1, 2, 4, 8])


def test_beta_examples():
    assert beta_invariant(U23) == 1
    assert beta_invariant(FANO) == 3
    assert beta_invariant(uniform_matroid(1, 1)) == 1
    assert beta_invariant(pg_matroid(4)) == 21
    # raw derivative keeps the (-1)^(r-1) sign
    assert beta_derivative(FANO) == 3
    assert beta_derivative(U23) == -1


def test_stratum_examples():
    assert stratum_count(U23, 3) == 4
    assert stratum_count(uniform_matroid(2, 2), 3) == 1
    for c in enumerate_binary_classes(3, 5) + enumerate_binary_classes(2, 3):
        assert stratum_count(c.representative, 2) == 1


def test_matroid_json():
    data = FANO.to_json()
    assert data["n"] == 7 and data["r"] == 3 and data["bases"][0] == [1, 2, 4]
    assert Matroid.from_json(data) == FANO
    with pytest.raises(ValueError):
        Matroid.from_json({"n": 3, "r": 1, "bases": [[1, 2]]})


def test_matroid_validation():
    with pytest.raises(ValueError):
        Matroid(3, 2, ())
    with pytest.raises(ValueError):
        Matroid(2, 2, (0b111,))
    with pytest.raises(ValueError):
        Matroid(3, 2, (0b1,))
