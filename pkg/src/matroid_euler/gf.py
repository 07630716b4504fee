"""Linear algebra over small prime fields.

Matrices are immutable row tuples of residues.  Column indices in the public
API are 1-based (``pivots``, Plücker index sets, :meth:`GFMatrix.column`).
Over F_2 the row reduction runs on bit-packed rows (bit ``j`` holds column
``j + 1``) using word-wise XOR.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

__all__ = [
    "PrimeField",
    "GFMatrix",
    "RREF",
    "PluckerVector",
    "RankDeficientError",
    "rref",
    "rank",
    "det",
    "matmul",
    "plucker",
    "distinct_columns_via_plucker",
    "columns_distinct_nonzero",
    "random_invertible",
]

MAX_PRIME = 31


class RankDeficientError(ValueError):
    """The operation needs a full-row-rank matrix."""


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p > MAX_PRIME:
            raise ValueError(f"only primes p <= {MAX_PRIME} are supported, got {self.p}")

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return range(self.p)


@dataclass(frozen=True)
class GFMatrix:
    """An r x n matrix over F_p."""

    rows: tuple
    field: PrimeField = field(compare=True)

    def __init__(self, rows, p):
        fld = p if isinstance(p, PrimeField) else PrimeField(int(p))
        rows = tuple(tuple(int(x) % fld.p for x in row) for row in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "field", fld)

    @property
    def p(self):
        return self.field.p

    @property
    def r(self):
        return len(self.rows)

    @property
    def n(self):
        return len(self.rows[0])

    @property
    def shape(self):
        return self.r, self.n

    def column(self, j):
        """Column ``j`` (1-based) as a tuple."""
        return tuple(row[j - 1] for row in self.rows)

    def columns(self):
        return [tuple(col) for col in zip(*self.rows)]

    def submatrix(self, cols):
        """Columns ``cols`` (1-based, order preserved)."""
        return GFMatrix([[row[j - 1] for j in cols] for row in self.rows], self.field)

    def bit_rows(self):
        """Bit-packed rows for p = 2: bit j of row i is entry (i, j+1)."""
        if self.p != 2:
            raise ValueError("bit packing is only defined over F_2")
        return [sum(1 << j for j, x in enumerate(row) if x) for row in self.rows]

    @classmethod
    def from_bit_rows(cls, bits, n):
        return cls([[(b >> j) & 1 for j in range(n)] for b in bits], 2)

    def tolist(self):
        return [list(row) for row in self.rows]

    def to_json(self):
        return {"p": self.p, "rows": self.tolist()}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["rows"], obj["p"])

    def __repr__(self):
        return f"GFMatrix({self.tolist()}, p={self.p})"


class RREF(NamedTuple):
    matrix: GFMatrix
    rank: int
    pivots: list


def _rref_generic(rows, p):
    rows = [list(row) for row in rows]
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    lead = 0
    for col in range(ncols):
        if lead == nrows:
            break
        src = next((i for i in range(lead, nrows) if rows[i][col]), None)
        if src is None:
            continue
        rows[lead], rows[src] = rows[src], rows[lead]
        inv = pow(rows[lead][col], p - 2, p)
        rows[lead] = [(x * inv) % p for x in rows[lead]]
        for i in range(nrows):
            c = rows[i][col]
            if i != lead and c:
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[lead])]
        pivots.append(col + 1)
        lead += 1
    return rows, pivots


def _rref_gf2(bits, ncols):
    bits = list(bits)
    nrows = len(bits)
    pivots = []
    lead = 0
    for col in range(ncols):
        if lead == nrows:
            break
        mask = 1 << col
        src = next((i for i in range(lead, nrows) if bits[i] & mask), None)
        if src is None:
            continue
        bits[lead], bits[src] = bits[src], bits[lead]
        for i in range(nrows):
            if i != lead and bits[i] & mask:
                bits[i] ^= bits[lead]
        pivots.append(col + 1)
        lead += 1
    return bits, pivots


def rref(A, packed=None):
    """Row-reduced echelon form of ``A``.

    Returns ``(matrix, rank, pivots)`` with 1-based strictly increasing
    pivot columns.  Zero rows of a rank-deficient input stay at the bottom.
    ``packed`` forces (True) or disables (False) the F_2 bit-packed path.
    """
    if packed is None:
        packed = A.p == 2
    if packed:
        bits, pivots = _rref_gf2(A.bit_rows(), A.n)
        out = GFMatrix.from_bit_rows(bits, A.n)
    else:
        rows, pivots = _rref_generic(A.rows, A.p)
        out = GFMatrix(rows, A.field)
    return RREF(out, len(pivots), pivots)


def rank(A):
    return rref(A).rank


def det(A):
    """Determinant of a square matrix, as a residue in ``[0, p)``."""
    if A.r != A.n:
        raise ValueError(f"det needs a square matrix, got {A.r}x{A.n}")
    return _det_rows(A.rows, A.p)


def _det_rows(rows, p):
    rows = [list(row) for row in rows]
    size = len(rows)
    out = 1
    for col in range(size):
        src = next((i for i in range(col, size) if rows[i][col]), None)
        if src is None:
            return 0
        if src != col:
            rows[col], rows[src] = rows[src], rows[col]
            out = -out
        piv = rows[col][col]
        out = out * piv % p
        inv = pow(piv, p - 2, p)
        for i in range(col + 1, size):
            c = rows[i][col] * inv % p
            if c:
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[col])]
    return out % p


def matmul(T, A):
    """``T @ A`` over the common field."""
    if T.p != A.p:
        raise ValueError("matrices over different fields")
    if T.n != A.r:
        raise ValueError(f"shape mismatch {T.shape} @ {A.shape}")
    cols = A.columns()
    return GFMatrix([[sum(a * b for a, b in zip(row, col)) for col in cols]
                     for row in T.rows], A.field)


def random_invertible(r, p, rng):
    """Uniform random element of GL_r(F_p) by rejection sampling."""
    while True:
        T = GFMatrix([[rng.randrange(p) for _ in range(r)] for _ in range(r)], p)
        if det(T):
            return T


@dataclass(frozen=True)
class PluckerVector:
    """Maximal minors ``p_I = det A_I`` indexed by sorted 1-based tuples."""

    r: int
    n: int
    p: int
    coords: dict

    def __getitem__(self, index):
        # a repeated column makes the minor vanish
        index = tuple(index)
        if len(set(index)) < len(index):
            return 0
        return self.coords[tuple(sorted(index))]

    def signed(self, rest, j):
        """``det [A_rest | A_j]`` with column ``j`` appended last.

        ``rest`` is a sorted (r-1)-tuple.  Moving column ``j`` from the last
        slot to its sorted position costs one sign per element of ``rest``
        exceeding ``j``.
        """
        if j in rest:
            return 0
        val = self.coords[tuple(sorted(rest + (j,)))]
        if sum(1 for i in rest if i > j) % 2:
            val = -val
        return val % self.p

    def is_zero(self):
        return not any(self.coords.values())


def plucker(A):
    """All maximal minors of a full-rank matrix."""
    if rank(A) != A.r:
        raise RankDeficientError(f"Plücker coordinates need rank {A.r}")
    cols = A.columns()
    coords = {}
    for idx in combinations(range(1, A.n + 1), A.r):
        sub = [[cols[j - 1][i] for j in idx] for i in range(A.r)]
        coords[idx] = _det_rows(sub, A.p)
    return PluckerVector(A.r, A.n, A.p, coords)


def distinct_columns_via_plucker(P):
    """Decide membership in the distinct-column locus from Plücker data alone.

    Column i is zero iff every ``p_{I+i}`` with ``i`` not in ``I`` vanishes.
    Columns i and j agree iff ``det[A_I | A_i] == det[A_I | A_j]`` for every
    (r-1)-set ``I``; the sets meeting ``{i, j}`` must be included, otherwise
    e.g. ``[[1,0,1],[0,1,1]]`` over F_2 would look like it repeats a column.
    """
    r, n = P.r, P.n
    ground = range(1, n + 1)
    rests = list(combinations(ground, r - 1))
    for i in ground:
        if all(P[rest + (i,)] == 0 for rest in rests if i not in rest):
            return False
    for i, j in combinations(ground, 2):
        if all(P.signed(rest, i) == P.signed(rest, j) for rest in rests):
            return False
    return True


def columns_distinct_nonzero(A):
    cols = A.columns()
    zero = (0,) * A.r
    return zero not in cols and len(set(cols)) == len(cols)
