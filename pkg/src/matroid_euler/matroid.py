"""Matroids stored as sets of bases.

A basis is a bitmask over the ground set: bit ``i`` stands for element
``i + 1``.  Everything user-facing (JSON, ``basis_sets``, permutations passed
to :func:`relabel`) is 1-based.

Automorphism groups are handled through a stabilizer chain: the orbit of
each point under the pointwise stabilizer of the earlier points is found by
backtracking for single automorphisms, so the group order is the product of
orbit lengths and the transversal elements generate the group.
"""

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import factorial

import numpy as np

from .gf import GFMatrix, RankDeficientError, rank as gf_rank

__all__ = [
    "SizeLimitExceeded",
    "Matroid",
    "IsoClass",
    "CharPoly",
    "matroid_of_matrix",
    "uniform_matroid",
    "relabel",
    "check_basis_exchange",
    "rank_of_subset",
    "rank_table",
    "is_simple",
    "aut_order",
    "automorphism_generators",
    "automorphisms",
    "is_automorphism",
    "is_alternating",
    "canonical_form",
    "is_isomorphic",
    "glq_order",
    "pg_matroid",
    "binary_vectors_matroid",
    "enumerate_binary_classes",
    "enumerate_p_classes",
    "characteristic_polynomial",
    "beta_invariant",
    "beta_derivative",
    "stratum_count",
]

AUT_MAX_N = 12
CHARPOLY_MAX_N = 20


class SizeLimitExceeded(ValueError):
    pass


def _popcount(x):
    return bin(x).count("1")


def _bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class Matroid:
    """Rank-r matroid on {1..n} given by its bases (sorted bitmasks)."""

    n: int
    r: int
    bases: tuple

    def __post_init__(self):
        bases = tuple(sorted(set(int(b) for b in self.bases)))
        if not bases:
            raise ValueError("a matroid needs at least one basis")
        full = (1 << self.n) - 1
        for b in bases:
            if b & ~full:
                raise ValueError(f"basis {b:b} outside ground set of size {self.n}")
            if _popcount(b) != self.r:
                raise ValueError(f"basis {_bits(b)} does not have {self.r} elements")
        object.__setattr__(self, "bases", bases)

    @classmethod
    def from_sets(cls, n, sets):
        """Build from 1-based basis sets, e.g. ``Matroid.from_sets(3, [[1,2],[1,3]])``."""
        sets = [tuple(s) for s in sets]
        if not sets:
            raise ValueError("a matroid needs at least one basis")
        masks = [sum(1 << (e - 1) for e in s) for s in sets]
        return cls(n, len(sets[0]), tuple(masks))

    @cached_property
    def basis_set(self):
        return frozenset(self.bases)

    @cached_property
    def independent_sets(self):
        """All subsets of bases, as bitmasks."""
        out = set()
        for b in self.bases:
            elems = _bits(b)
            for k in range(len(elems) + 1):
                for sub in combinations(elems, k):
                    out.add(sum(1 << e for e in sub))
        return frozenset(out)

    def is_basis(self, mask):
        return mask in self.basis_set

    def basis_sets(self):
        return [[e + 1 for e in _bits(b)] for b in self.bases]

    @property
    def num_bases(self):
        return len(self.bases)

    def to_json(self):
        return {"n": self.n, "r": self.r, "bases": self.basis_sets()}

    def dumps(self):
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        m = cls.from_sets(obj["n"], obj["bases"])
        if m.r != obj.get("r", m.r):
            raise ValueError("declared rank does not match the bases")
        return m

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, bases={self.basis_sets()})"


@dataclass(frozen=True)
class IsoClass:
    representative: Matroid
    aut_order: int
    labeled_count: int

    @property
    def n(self):
        return self.representative.n

    @property
    def r(self):
        return self.representative.r

    @property
    def num_bases(self):
        return self.representative.num_bases


def uniform_matroid(r, n):
    return Matroid(n, r, tuple(sum(1 << e for e in c) for c in combinations(range(n), r)))


def _vectors_matroid(vectors, r, n, p):
    """Bases of the column matroid; ``vectors`` are ints (p = 2, bit i = row i)
    or tuples.  Independent sets are grown by DFS keeping a reduced echelon
    basis, so dependent sets are never extended."""
    bases = []
    if p == 2:
        def insert(basis, v):
            for piv, w in basis:
                if v >> piv & 1:
                    v ^= w
            if v == 0:
                return None
            return basis + [(v.bit_length() - 1, v)]
    else:
        def insert(basis, v):
            v = list(v)
            for piv, w in basis:
                c = v[piv]
                if c:
                    v = [(x - c * y) % p for x, y in zip(v, w)]
            piv = next((i for i, x in enumerate(v) if x), None)
            if piv is None:
                return None
            inv = pow(v[piv], p - 2, p)
            return basis + [(piv, [(x * inv) % p for x in v])]

    def grow(start, basis, mask, size):
        if size == r:
            bases.append(mask)
            return
        for j in range(start, n - (r - size) + 1):
            nxt = insert(basis, vectors[j])
            if nxt is not None:
                grow(j + 1, nxt, mask | (1 << j), size + 1)

    grow(0, [], 0, 0)
    return Matroid(n, r, tuple(bases))


def matroid_of_matrix(A):
    """``Q(A) = {I : det A_I != 0}`` for a full-rank matrix ``A``."""
    if gf_rank(A) != A.r:
        raise RankDeficientError(f"matrix does not have full rank {A.r}")
    cols = A.columns()
    if A.p == 2:
        vectors = [sum(x << i for i, x in enumerate(col)) for col in cols]
    else:
        vectors = cols
    return _vectors_matroid(vectors, A.r, A.n, A.p)


def binary_vectors_matroid(vectors, r):
    """Matroid of the columns ``vectors`` (ints, bit i = coordinate i) over F_2."""
    return _vectors_matroid(list(vectors), r, len(vectors), 2)


def _permute_mask(mask, perm):
    out = 0
    for e in _bits(mask):
        out |= 1 << perm[e]
    return out


def relabel(Q, sigma):
    """Image of ``Q`` under the permutation ``i -> sigma[i-1]`` (1-based)."""
    perm = [s - 1 for s in sigma]
    if sorted(perm) != list(range(Q.n)):
        raise ValueError("sigma is not a permutation of the ground set")
    return Matroid(Q.n, Q.r, tuple(_permute_mask(b, perm) for b in Q.bases))


def check_basis_exchange(Q):
    basis_set = Q.basis_set
    for b1 in Q.bases:
        for b2 in Q.bases:
            if b1 == b2:
                continue
            only2 = _bits(b2 & ~b1)
            for x in _bits(b1 & ~b2):
                rest = b1 & ~(1 << x)
                if not any(rest | (1 << y) in basis_set for y in only2):
                    return False
    return True


def _as_mask(S):
    if isinstance(S, int):
        return S
    return sum(1 << (e - 1) for e in set(S))


def rank_of_subset(Q, S):
    """Largest size of an independent subset of ``S`` (1-based elements or a mask)."""
    mask = _as_mask(S)
    return max(_popcount(b & mask) for b in Q.bases)


def _subset_views(arr, n, e):
    view = arr.reshape(1 << (n - e - 1), 2, 1 << e)
    return view[:, 0, :], view[:, 1, :]


def rank_table(Q):
    """Rank of every subset of the ground set, indexed by bitmask."""
    n = Q.n
    if n > CHARPOLY_MAX_N:
        raise SizeLimitExceeded(f"rank table needs n <= {CHARPOLY_MAX_N}")
    size = 1 << n
    indep = np.zeros(size, dtype=bool)
    indep[list(Q.bases)] = True
    popc = np.zeros(size, dtype=np.int8)
    for e in range(n):
        lo, hi = _subset_views(indep, n, e)
        lo |= hi
        _, phi = _subset_views(popc, n, e)
        phi += 1
    ranks = np.where(indep, popc, 0).astype(np.int8)
    for e in range(n):
        lo, hi = _subset_views(ranks, n, e)
        np.maximum(hi, lo, out=hi)
    return ranks, popc


def is_simple(Q):
    for e in range(Q.n):
        if rank_of_subset(Q, 1 << e) != 1:
            return False
    for e, f in combinations(range(Q.n), 2):
        if rank_of_subset(Q, (1 << e) | (1 << f)) != 2:
            return False
    return True


class _AutSearch:
    """Backtracking search for basis-preserving permutations.

    A partial map is kept only if it preserves basis degrees, pairwise basis
    co-occurrence counts and independence of every subset of its domain.
    """

    def __init__(self, Q):
        self.Q = Q
        n = Q.n
        self.n = n
        self.indep = Q.independent_sets
        deg = [0] * n
        pair = [[0] * n for _ in range(n)]
        for b in Q.bases:
            elems = _bits(b)
            for e in elems:
                deg[e] += 1
            for e, f in combinations(elems, 2):
                pair[e][f] += 1
                pair[f][e] += 1
        self.deg = deg
        self.pair = pair

    def _consistent(self, dom, img, x, y):
        if self.deg[x] != self.deg[y]:
            return False
        pair = self.pair
        for a, b in zip(dom, img):
            if pair[x][a] != pair[y][b]:
                return False
        indep = self.indep
        # grow independent subsets of the domain; once S is dependent so is
        # every superset, on both sides, so those branches can be skipped
        bx, by = 1 << x, 1 << y
        if (bx in indep) != (by in indep):
            return False
        stack = [(0, bx, by)]
        limit = len(dom)
        while stack:
            start, sx, sy = stack.pop()
            for i in range(start, limit):
                tx = sx | (1 << dom[i])
                ty = sy | (1 << img[i])
                ix = tx in indep
                if ix != (ty in indep):
                    return False
                if ix:
                    stack.append((i + 1, tx, ty))
        return True

    def extend(self, fixed):
        """Complete the partial map ``fixed`` (list of (x, y)) or return None."""
        n = self.n
        dom = [x for x, _ in fixed]
        img = [y for _, y in fixed]
        for k in range(len(dom)):
            if not self._consistent(dom[:k], img[:k], dom[k], img[k]):
                return None
        todo = [x for x in range(n) if x not in set(dom)]
        used = set(img)

        def dfs(i):
            if i == len(todo):
                return True
            x = todo[i]
            for y in range(n):
                if y in used or not self._consistent(dom, img, x, y):
                    continue
                dom.append(x)
                img.append(y)
                used.add(y)
                if dfs(i + 1):
                    return True
                dom.pop()
                img.pop()
                used.discard(y)
            return False

        if not dfs(0):
            return None
        perm = [0] * n
        for x, y in zip(dom, img):
            perm[x] = y
        return perm

    def all_extensions(self, fixed=()):
        n = self.n
        dom = [x for x, _ in fixed]
        img = [y for _, y in fixed]
        todo = [x for x in range(n) if x not in set(dom)]
        used = set(img)

        def dfs(i):
            if i == len(todo):
                perm = [0] * n
                for x, y in zip(dom, img):
                    perm[x] = y
                yield perm
                return
            x = todo[i]
            for y in range(n):
                if y in used or not self._consistent(dom, img, x, y):
                    continue
                dom.append(x)
                img.append(y)
                used.add(y)
                yield from dfs(i + 1)
                dom.pop()
                img.pop()
                used.discard(y)

        return dfs(0)

    def stabilizer_orbits(self, base, points):
        """Orbits of the pointwise stabilizer of ``base`` on ``points``,
        each with a transversal: ``{rep: {point: perm mapping rep there}}``."""
        fixed = [(b, b) for b in base]
        orbits = {}
        seen = set()
        for x in points:
            if x in seen:
                continue
            ident = list(range(self.n))
            trans = {x: ident}
            found = []
            for y in points:
                if y in trans or self.deg[y] != self.deg[x]:
                    continue
                perm = self.extend(fixed + [(x, y)])
                if perm is None:
                    continue
                found.append(perm)
                # close the partial orbit under everything found so far
                frontier = list(trans.items())
                while frontier:
                    z, tz = frontier.pop()
                    for g in found:
                        w = g[z]
                        if w not in trans:
                            trans[w] = [g[t] for t in tz]
                            frontier.append((w, trans[w]))
            orbits[x] = trans
            seen.update(trans)
        return orbits


def _check_size(Q, max_n):
    limit = AUT_MAX_N if max_n is None else max_n
    if Q.n > limit:
        raise SizeLimitExceeded(f"ground set of size {Q.n} exceeds limit {limit}")


def _stabilizer_chain(Q):
    search = _AutSearch(Q)
    base = []
    order = 1
    gens = []
    for x in range(Q.n):
        rest = [y for y in range(Q.n) if y not in base]
        trans = search.stabilizer_orbits(base, rest)[x]
        order *= len(trans)
        gens.extend(perm for y, perm in trans.items() if y != x)
        base.append(x)
    return order, gens


def aut_order(Q, max_n=None):
    """``|Aut(Q)|``, the number of permutations of [n] preserving the bases."""
    _check_size(Q, max_n)
    return _stabilizer_chain(Q)[0]


def automorphism_generators(Q, max_n=None):
    """Generators of ``Aut(Q)`` as 0-based image lists."""
    _check_size(Q, max_n)
    return _stabilizer_chain(Q)[1]


def automorphisms(Q, max_n=None):
    """Every automorphism, by exhaustive backtracking (0-based image lists)."""
    _check_size(Q, max_n)
    return list(_AutSearch(Q).all_extensions())


def is_automorphism(Q, perm):
    return all(_permute_mask(b, perm) in Q.basis_set for b in Q.bases)


def _is_even(perm):
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity == 0


def is_alternating(Q, max_n=10):
    """True iff ``Aut(Q)`` has no odd permutations.

    A group lies in the alternating group iff a generating set does, so only
    the stabilizer-chain transversals are inspected.
    """
    _check_size(Q, max_n)
    return all(_is_even(g) for g in _stabilizer_chain(Q)[1])


def canonical_form(Q, max_n=None):
    """Lexicographically least relabeling of ``Q``.

    Relabelings are compared through their ascending basis-mask lists.  The
    search assigns new labels 0, 1, 2, ... one at a time: after k labels the
    bases inside the labeled part are exactly the masks below 2^k, so the
    partial lists already order the branches (a partial list that is a
    proper prefix of another is the larger one).  Only branches tied with
    the best survive, and children of a node that differ by an automorphism
    fixing the node's labeled elements are explored once.
    """
    _check_size(Q, max_n)
    n = Q.n
    search = _AutSearch(Q)
    sentinel = 1 << n
    by_elem = [[b for b in Q.bases if b >> e & 1] for e in range(n)]
    orbit_cache = {}

    def reps(prefix):
        key = frozenset(prefix)
        if key not in orbit_cache:
            rest = [y for y in range(n) if y not in key]
            orbit_cache[key] = list(search.stabilizer_orbits(list(prefix), rest))
        return orbit_cache[key]

    # node: (prefix tuple, label map, sorted partial masks)
    frontier = [((), {}, ())]
    for level in range(n):
        children = []
        best = None
        for prefix, labels, masks in frontier:
            seen_mask = sum(1 << x for x in prefix)
            for e in reps(prefix):
                new_labels = dict(labels)
                new_labels[e] = level
                inside = seen_mask | (1 << e)
                fresh = sorted(_permute_mask(b, new_labels) for b in by_elem[e]
                               if b & ~inside == 0)
                child_masks = masks + tuple(fresh)
                key = child_masks + (sentinel,)
                if best is None or key < best:
                    best = key
                    children = []
                if key == best:
                    children.append((prefix + (e,), new_labels, child_masks))
        frontier = children
    _, labels, masks = frontier[0]
    return Matroid(n, Q.r, masks)


def is_isomorphic(Q1, Q2, max_n=None):
    if (Q1.n, Q1.r, Q1.num_bases) != (Q2.n, Q2.r, Q2.num_bases):
        return False
    return canonical_form(Q1, max_n) == canonical_form(Q2, max_n)


def glq_order(r, q):
    """``|GL_r(F_q)| = prod_{i<r} (q^r - q^i)``."""
    out = 1
    for i in range(r):
        out *= q ** r - q ** i
    return out


def pg_matroid(rank):
    """Matroid of all nonzero vectors of F_2^rank (columns in increasing
    integer order, bit i = coordinate i)."""
    if rank < 1:
        raise ValueError("rank must be positive")
    if rank > 5:
        raise SizeLimitExceeded("pg_matroid supports rank <= 5")
    return binary_vectors_matroid(range(1, 1 << rank), rank)


def _gl2_generators(r):
    # transvections v -> v + v_j e_i generate GL_r(F_2)
    gens = []
    for i in range(r):
        for j in range(r):
            if i != j:
                gens.append([((v + 1) ^ (((v + 1) >> j & 1) << i)) - 1
                             for v in range((1 << r) - 1)])
    return gens


def _mask_tables(perm, width):
    """Byte-chunk lookup tables so a subset mask maps in a few lookups."""
    tables = []
    for shift in range(0, width, 8):
        tab = []
        for byte in range(256):
            out = 0
            for b in range(8):
                if byte >> b & 1 and shift + b < width:
                    out |= 1 << perm[shift + b]
            tab.append(out)
        tables.append(tab)
    return tables


def _apply_tables(tables, mask):
    out = 0
    for i, tab in enumerate(tables):
        out |= tab[(mask >> (8 * i)) & 0xFF]
    return out


def _spans(vectors, r):
    lead = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in lead:
                lead[top] = v
                break
            v ^= lead[top]
    return len(lead) == r


def enumerate_binary_classes(r, n, canonical=True, max_r=4):
    """Isomorphism classes of simple binary matroids of rank r on n elements.

    Such matroids are spanning n-subsets of the nonzero vectors of F_2^r up
    to GL_r(F_2).  Orbits are traced with transvection generators; the
    automorphism group is the set stabilizer, of order |GL_r(F_2)| / |orbit|.
    Classes come in order of their least subset mask.  With ``canonical``
    the representative is passed through :func:`canonical_form` when n is
    within its size limit.
    """
    if r < 1:
        raise ValueError("rank must be positive")
    if r > max_r:
        raise SizeLimitExceeded(f"subset-orbit enumeration limited to r <= {max_r}")
    width = (1 << r) - 1
    if not r <= n <= width:
        return []
    tables = [_mask_tables(g, width) for g in _gl2_generators(r)]
    group = glq_order(r, 2)
    masks = sorted(sum(1 << i for i in c) for c in combinations(range(width), n))
    seen = set()
    classes = []
    for start in masks:
        if start in seen:
            continue
        vecs = [i + 1 for i in _bits(start)]
        if not _spans(vecs, r):
            continue
        seen.add(start)
        stack = [start]
        size = 1
        while stack:
            m = stack.pop()
            for tab in tables:
                img = _apply_tables(tab, m)
                if img not in seen:
                    seen.add(img)
                    stack.append(img)
                    size += 1
        aut = group // size
        rep = binary_vectors_matroid(vecs, r)
        if canonical and n <= AUT_MAX_N:
            rep = canonical_form(rep)
        classes.append(IsoClass(rep, aut, factorial(n) // aut))
    return classes


def _projective_points(r, p):
    """Nonzero vectors of F_p^r whose first nonzero entry is 1."""
    pts = []
    for code in range(1, p ** r):
        v = [(code // p ** i) % p for i in range(r)]
        if next(x for x in v if x) == 1:
            pts.append(tuple(v))
    return pts


def enumerate_p_classes(p, r, n, max_n=None):
    """Isomorphism classes of simple rank-r matroids on n elements realizable
    over F_p, from n-subsets of the projective points of F_p^r."""
    pts = _projective_points(r, p)
    if not r <= n <= len(pts):
        return []
    found = {}
    for subset in combinations(pts, n):
        A = GFMatrix(list(zip(*subset)), p)
        if gf_rank(A) != r:
            continue
        canon = canonical_form(matroid_of_matrix(A), max_n)
        if canon not in found:
            found[canon] = None
    out = []
    for rep in sorted(found, key=lambda m: m.bases):
        aut = aut_order(rep, max_n)
        out.append(IsoClass(rep, aut, factorial(n) // aut))
    return out


@dataclass(frozen=True)
class CharPoly:
    """Integer polynomial; ``coeffs[d]`` is the coefficient of t^d."""

    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, t):
        out = 0
        for c in reversed(self.coeffs):
            out = out * t + c
        return out

    def derivative(self):
        return CharPoly(tuple(d * c for d, c in enumerate(self.coeffs))[1:] or (0,))

    @classmethod
    def from_roots(cls, roots):
        coeffs = [1]
        for a in roots:
            # multiply by (t - a)
            coeffs = [(coeffs[i - 1] if i > 0 else 0) - a * (coeffs[i] if i < len(coeffs) else 0)
                      for i in range(len(coeffs) + 1)]
        return cls(tuple(coeffs))

    def __str__(self):
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in terms[1:]])


def characteristic_polynomial(Q):
    """``sum_{A subset E} (-1)^|A| t^(r(E) - r(A))`` over all 2^n subsets."""
    ranks, popc = rank_table(Q)
    exps = (Q.r - ranks).astype(np.int64)
    even = np.bincount(exps[popc % 2 == 0], minlength=Q.r + 1)
    odd = np.bincount(exps[popc % 2 == 1], minlength=Q.r + 1)
    coeffs = tuple(int(a) - int(b) for a, b in zip(even, odd))
    return CharPoly(coeffs)


def beta_derivative(Q):
    """``chi_Q'(1)`` with no sign normalization."""
    return characteristic_polynomial(Q).derivative()(1)


def beta_invariant(Q):
    """``(-1)^(r-1) chi_Q'(1)``, nonnegative for connected matroids."""
    return (-1) ** (Q.r - 1) * beta_derivative(Q)


def stratum_count(Q, p, cap=None):
    """Number of points of ``Gr(r, n; F_p)`` whose matroid is exactly ``Q``."""
    from .grassmann import enumerate_grassmannian

    return sum(1 for L in enumerate_grassmannian(Q.r, Q.n, p, cap=cap)
               if matroid_of_matrix(L) == Q)
