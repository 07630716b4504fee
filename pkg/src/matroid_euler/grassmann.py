"""Points of Grassmannians over finite fields and of their distinct-column locus.

Two independent routes to ``|Gr^dc(r, n; F_q)|``:

* brute force: walk every RREF matrix of ``Gr(r, n; F_p)`` and test its
  columns (:func:`grdc_bruteforce_count`), p prime;
* the last-pivot recursion (:func:`grdc_count_recursive`), pure integer
  arithmetic valid for any integer q >= 2.

The stratification by the column of the last pivot is exposed both as an
enumeration (:func:`yk_partition`) and as products of smaller counts with
configuration-space counts (:func:`yk_expected`).
"""

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from .gf import GFMatrix, PrimeField, columns_distinct_nonzero

__all__ = [
    "DEFAULT_CAP",
    "CAP_ENV_VAR",
    "EnumerationCapExceeded",
    "default_cap",
    "is_prime_power",
    "gaussian_binomial",
    "pivot_sets",
    "enumerate_grassmannian",
    "last_pivot",
    "grdc_bruteforce_count",
    "grdc_r1_count",
    "grdc_count_recursive",
    "conf_count",
    "grdc_count_conf",
    "yk_partition",
    "yk_expected",
    "CountTable",
    "count_table",
]

DEFAULT_CAP = 10**8
CAP_ENV_VAR = "MATROID_EULER_CAP"


class EnumerationCapExceeded(RuntimeError):
    def __init__(self, size, cap):
        super().__init__(f"enumeration of {size} points exceeds cap {cap}")
        self.size = size
        self.cap = cap


def default_cap():
    value = os.environ.get(CAP_ENV_VAR)
    return int(value) if value else DEFAULT_CAP


def _check_cap(size, cap):
    cap = default_cap() if cap is None else cap
    if size > cap:
        raise EnumerationCapExceeded(size, cap)


def is_prime_power(q):
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            while q % d == 0:
                q //= d
            return q == 1
        d += 1
    return True


def gaussian_binomial(r, n, q):
    """Number of r-dimensional subspaces of F_q^n (0 unless 0 <= r <= n)."""
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def pivot_sets(r, n):
    """Pivot column sets (1-based) in lexicographic order."""
    return list(combinations(range(1, n + 1), r))


def _free_positions(pivots, n):
    pivset = set(pivots)
    return [(i, c) for i, piv in enumerate(pivots)
            for c in range(piv + 1, n + 1) if c not in pivset]


def _iter_pivot_block(r, n, p, pivots):
    free = _free_positions(pivots, n)
    base = [[0] * n for _ in range(r)]
    for i, piv in enumerate(pivots):
        base[i][piv - 1] = 1
    for values in product(range(p), repeat=len(free)):
        rows = [row[:] for row in base]
        for (i, c), v in zip(free, values):
            rows[i][c - 1] = v
        yield GFMatrix(rows, p)


def enumerate_grassmannian(r, n, p, cap=None, pivots=None):
    """Yield every point of ``Gr(r, n; F_p)`` as its RREF matrix, exactly once.

    Pivot sets come in lexicographic order and, inside a pivot set, the free
    entries (row-major) run as an odometer.  ``pivots`` restricts the stream
    to the given pivot sets, which is how the work is split between workers.
    """
    PrimeField(p)
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    _check_cap(gaussian_binomial(r, n, p), cap)
    for piv in (pivot_sets(r, n) if pivots is None else pivots):
        yield from _iter_pivot_block(r, n, p, tuple(piv))


def last_pivot(M):
    """Column (1-based) of the leading entry of the last row of an RREF."""
    row = M.rows[-1]
    return next(j + 1 for j, x in enumerate(row) if x)


def _count_pivot_block(args):
    r, n, p, pivots = args
    # column codes: vector v -> sum v_i p^i; the pivot column of row i is p^i.
    # a non-pivot column after t pivots may use rows < t, i.e. codes < p^t
    pivset = set(pivots)
    ranges = []
    t = 0
    for c in range(1, n + 1):
        if c in pivset:
            t += 1
        else:
            ranges.append(range(p ** t))
    unit = {p ** i for i in range(r)}
    width = len(ranges)
    count = 0
    for cols in product(*ranges):
        if 0 in cols or unit.intersection(cols) or len(set(cols)) != width:
            continue
        count += 1
    return count


def grdc_bruteforce_count(r, n, p, cap=None, jobs=1):
    """Count RREF points of ``Gr(r, n; F_p)`` with distinct nonzero columns.

    Every point of the Grassmannian is visited; nothing is inferred from a
    formula.  Work is split by pivot set; ``jobs > 1`` uses a process pool
    and gives the same total.
    """
    PrimeField(p)
    if n < r or r < 1:
        return 0
    _check_cap(gaussian_binomial(r, n, p), cap)
    tasks = [(r, n, p, piv) for piv in pivot_sets(r, n)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return sum(pool.map(_count_pivot_block, tasks, chunksize=4))
    return sum(map(_count_pivot_block, tasks))


def grdc_r1_count(n, q):
    """``|Gr^dc(1, n; F_q)| = (q-2)(q-3)...(q-n)``: ordered tuples of distinct
    elements of F_q minus {0, 1} of length n - 1."""
    if n < 1 or q < 2:
        raise ValueError(f"need n >= 1 and q >= 2, got n={n}, q={q}")
    if n > q - 1:
        return 0
    out = 1
    for j in range(2, n + 1):
        out *= q - j
    return out


@lru_cache(maxsize=None)
def _grdc_table(r, q):
    """Counts ``|Gr^dc(r, n; F_q)|`` for n = 0 .. q^r - 1 (index = n)."""
    top = q ** r - 1
    if r == 1:
        return (0,) + tuple(grdc_r1_count(n, q) for n in range(1, top + 1))
    prev = _grdc_table(r - 1, q)
    qr = q ** r
    table = [0] * (top + 1)
    for n in range(r, top + 1):
        # sum over k (column of the last pivot) of |Gr^dc(r-1, k-1)| times
        # prod_{j=k+1}^{n} (q^r - j); k - 1 beyond the previous table is 0
        total = 0
        tail = 1
        for k in range(n, r - 1, -1):
            if k - 1 < len(prev):
                total += prev[k - 1] * tail
            tail *= qr - k
            if tail == 0:
                break
        table[n] = total
    return tuple(table)


def grdc_count_recursive(r, n, q):
    """``|Gr^dc(r, n; F_q)|`` from the last-pivot recursion.

    q is any integer >= 2; primality is not checked.
    """
    if r < 1 or q < 2:
        raise ValueError(f"need r >= 1 and q >= 2, got r={r}, q={q}")
    if n < r or n > q ** r - 1:
        return 0
    return _grdc_table(r, q)[n]


def conf_count(m, ambient, excluded):
    """Ordered m-tuples of distinct points in a set of ``ambient - excluded``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    avail = ambient - excluded
    if m > avail:
        return 0
    out = 1
    for i in range(m):
        out *= avail - i
    return out


def grdc_count_conf(r_plus_1, n, q):
    """``|Gr^dc(r+1, n)|`` as a sum over the last-pivot strata, each stratum
    counted as ``|Gr^dc(r, k-1)| * |Conf_{n-k}(A^{r+1} minus k+1 points)|``."""
    r = r_plus_1 - 1
    ambient = q ** r_plus_1
    total = 0
    for k in range(r + 1, n + 1):
        total += grdc_count_recursive(r, k - 1, q) * conf_count(n - k, ambient, k + 1)
    return total


def yk_partition(r_plus_1, n, p, cap=None):
    """Tally distinct-column points of ``Gr(r+1, n; F_p)`` by last pivot column.

    Keys run over k = r+1 .. n, including empty strata.
    """
    if r_plus_1 < 2:
        raise ValueError("the stratification needs rank >= 2")
    strata = {k: 0 for k in range(r_plus_1, n + 1)}
    for M in enumerate_grassmannian(r_plus_1, n, p, cap=cap):
        if columns_distinct_nonzero(M):
            strata[last_pivot(M)] += 1
    return strata


def yk_expected(r_plus_1, n, p, cap=None):
    """Product counts ``|Gr^dc(r, k-1)| * conf_count(n-k, p^{r+1}, k+1)``,
    with the smaller Grassmannian counted by brute force."""
    r = r_plus_1 - 1
    ambient = p ** r_plus_1
    return {k: grdc_bruteforce_count(r, k - 1, p, cap=cap) * conf_count(n - k, ambient, k + 1)
            for k in range(r_plus_1, n + 1)}


@dataclass
class CountTable:
    q: int
    r: int
    entries: dict = field(default_factory=dict)
    method: str = "recursive"

    def rows(self):
        return [(self.q, self.r, n, self.entries[n]) for n in sorted(self.entries)]

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["q", "r", "n", "count"])
        for q, r, n, count in self.rows():
            writer.writerow([q, r, n, str(count)])
        return buf.getvalue()

    def to_json(self):
        return json.dumps({
            "q": self.q,
            "r": self.r,
            "method": self.method,
            "entries": [{"n": n, "count": str(c)} for _, _, n, c in self.rows()],
        }, indent=2)


def count_table(q, r, method="recursive", n_max=None, cap=None, jobs=1):
    """``|Gr^dc(r, n; F_q)|`` for r <= n <= min(q^r - 1, n_max)."""
    top = q ** r - 1
    if n_max is not None:
        top = min(top, n_max)
    table = CountTable(q, r, method=method)
    for n in range(r, top + 1):
        if method == "recursive":
            table.entries[n] = grdc_count_recursive(r, n, q)
        elif method == "brute":
            table.entries[n] = grdc_bruteforce_count(r, n, q, cap=cap, jobs=jobs)
        else:
            raise ValueError(f"unknown method {method!r}")
    return table
