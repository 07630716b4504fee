"""Virtual Euler characteristics of rank-r simple binary matroids.

Three routes that share no counting code:

``chi_enumerated``
    sum of (-1)^n / |Aut(Q)| over isomorphism classes from
    :func:`~matroid_euler.matroid.enumerate_binary_classes`;
``chi_via_counts``
    sum of (-1)^n |Gr^dc(r, n; F_q)| / n! with the counts from the last-pivot
    recursion;
``chi_closed``
    the product of 1 / (1 - q^i) for i = 1..r.

The ``verify_*`` helpers return :class:`Verdict` objects holding both sides
of an identity, and :func:`run_suite` groups them the way the command line
exposes them.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import factorial, format_rat, rat
from .grassmann import (
    grdc_bruteforce_count,
    grdc_count_conf,
    grdc_count_recursive,
    yk_expected,
    yk_partition,
)
from .matroid import (
    CharPoly,
    aut_order,
    beta_derivative,
    beta_invariant,
    characteristic_polynomial,
    enumerate_binary_classes,
    enumerate_p_classes,
    pg_matroid,
)

__all__ = [
    "ChiTerm",
    "ChiReport",
    "Verdict",
    "chi_closed",
    "chi_closed_report",
    "chi_enumerated",
    "chi_via_counts",
    "chi_p_partial",
    "lemma_sum",
    "verify_prop22",
    "verify_thm31",
    "verify_telescoping",
    "verify_lemma",
    "verify_eq5",
    "verify_groth",
    "verify_yk",
    "verify_beta_relation",
    "verify_fano_charpoly",
    "verify_class_auts",
    "SUITES",
    "run_suite",
]


def _json_value(x):
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    return x


@dataclass
class ChiTerm:
    n: int
    count: object  # int (labeled count) or Fraction (sum of 1/|Aut|)
    term: Fraction
    aut_orders: list = None

    def to_json(self):
        out = {"n": self.n, "count": _json_value(self.count), "term": format_rat(self.term)}
        if self.aut_orders is not None:
            out["aut_orders"] = list(self.aut_orders)
        return out


@dataclass
class ChiReport:
    q: int
    r: int
    method: str
    terms: list = field(default_factory=list)
    total: Fraction = Fraction(0)
    complete: bool = True

    def add(self, term):
        self.terms.append(term)
        self.total += term.term

    def to_json(self):
        return {
            "q": self.q,
            "r": self.r,
            "method": self.method,
            "complete": self.complete,
            "terms": [t.to_json() for t in self.terms],
            "total": format_rat(self.total),
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)


@dataclass
class Verdict:
    name: str
    ok: bool
    lhs: object
    rhs: object
    params: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "params": self.params,
            "lhs": _json_value(self.lhs),
            "rhs": _json_value(self.rhs),
            "details": _json_value(self.details),
        }

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        lhs, rhs = _json_value(self.lhs), _json_value(self.rhs)
        text = f"{status} {self.name} {params}".rstrip()
        if self.ok:
            return f"{text}: {lhs}"
        return f"{text}: lhs={lhs} rhs={rhs}"


def _verdict(name, lhs, rhs, **params):
    return Verdict(name, lhs == rhs, lhs, rhs, params)


def chi_closed(q, r):
    """``prod_{i=1}^{r} 1 / (1 - q^i)``."""
    if q < 2 or r < 1:
        raise ValueError(f"need q >= 2 and r >= 1, got q={q}, r={r}")
    out = Fraction(1)
    for i in range(1, r + 1):
        out *= rat(1, 1 - q ** i)
    return out


def chi_enumerated(r, max_r=4):
    """Sum over isomorphism classes of simple binary rank-r matroids."""
    report = ChiReport(2, r, "enumerated")
    for n in range(r, 2 ** r):
        auts = [c.aut_order for c in enumerate_binary_classes(r, n, canonical=False, max_r=max_r)]
        weight = sum((Fraction(1, a) for a in auts), Fraction(0))
        report.add(ChiTerm(n, weight, (-1) ** n * weight, auts))
    return report


def chi_via_counts(q, r):
    """Sum of ``(-1)^n |Gr^dc(r, n; F_q)| / n!`` for r <= n <= q^r - 1."""
    report = ChiReport(q, r, "via_counts")
    for n in range(r, q ** r):
        count = grdc_count_recursive(r, n, q)
        report.add(ChiTerm(n, count, rat((-1) ** n * count, factorial(n))))
    return report


def chi_closed_report(q, r):
    report = ChiReport(q, r, "closed")
    report.total = chi_closed(q, r)
    return report


def chi_p_partial(p, r, n_max):
    """Virtual Euler characteristic over simple F_p-realizable classes with
    at most ``n_max`` elements.

    The report is marked complete once ``n_max`` reaches the number of points
    of the projective space, (p^r - 1)/(p - 1), since no simple rank-r
    F_p-matroid is larger.
    """
    bound = (p ** r - 1) // (p - 1)
    report = ChiReport(p, r, "p_enumerated", complete=n_max >= bound)
    for n in range(r, min(n_max, bound) + 1):
        auts = [c.aut_order for c in enumerate_p_classes(p, r, n)]
        weight = sum((Fraction(1, a) for a in auts), Fraction(0))
        report.add(ChiTerm(n, weight, (-1) ** n * weight, auts))
    return report


def lemma_sum(q, r, k):
    """Both sides of the alternating-sum lemma behind the recursion step.

    lhs = sum_{n=k}^{Q-1} (-1)^n / n! * prod_{j=k+1}^{n} (Q - j)
    rhs = (-1)^k / ((Q - 1) (k - 1)!)        with Q = q^(r+1).
    """
    big = q ** (r + 1)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > big - 1:
        raise ValueError(f"k must be at most q^(r+1) - 1 = {big - 1}")
    lhs = Fraction(0)
    prod = 1
    for n in range(k, big):
        if n > k:
            prod *= big - n
        lhs += rat((-1) ** n * prod, factorial(n))
    rhs = rat((-1) ** k, (big - 1) * factorial(k - 1))
    return lhs, rhs


def verify_prop22(r, n, cap=None, jobs=1):
    """Class-weight sum against the brute-force distinct-column count over F_2."""
    classes = enumerate_binary_classes(r, n, canonical=False)
    lhs = sum((Fraction(1, c.aut_order) for c in classes), Fraction(0))
    count = grdc_bruteforce_count(r, n, 2, cap=cap, jobs=jobs)
    v = _verdict("prop22", lhs, rat(count, factorial(n)), r=r, n=n)
    v.details = {"classes": len(classes), "aut_orders": [c.aut_order for c in classes],
                 "grdc_count": count, "labeled_total": sum(c.labeled_count for c in classes)}
    v.ok = v.ok and v.details["labeled_total"] == count
    return v


def verify_thm31(q, r):
    v = _verdict("thm31", chi_via_counts(q, r).total, chi_closed(q, r), q=q, r=r)
    return v


def verify_telescoping(q, r):
    lhs = chi_via_counts(q, r + 1).total
    rhs = rat(-1, q ** (r + 1) - 1) * chi_via_counts(q, r).total
    return _verdict("telescoping", lhs, rhs, q=q, r=r)


def verify_lemma(q, r, k):
    lhs, rhs = lemma_sum(q, r, k)
    return _verdict("lemma32", lhs, rhs, q=q, r=r, k=k)


def verify_eq5(r, n, p, cap=None, jobs=1):
    brute = grdc_bruteforce_count(r, n, p, cap=cap, jobs=jobs)
    return _verdict("eq5", brute, grdc_count_recursive(r, n, p), r=r, n=n, p=p)


def verify_groth(r_plus_1, n, q):
    """Stratum-product count against the recursion (pure arithmetic)."""
    return _verdict("groth", grdc_count_conf(r_plus_1, n, q),
                    grdc_count_recursive(r_plus_1, n, q), r_plus_1=r_plus_1, n=n, q=q)


def verify_yk(r_plus_1, n, p, cap=None):
    observed = yk_partition(r_plus_1, n, p, cap=cap)
    expected = yk_expected(r_plus_1, n, p, cap=cap)
    v = _verdict("yk", observed, expected, r_plus_1=r_plus_1, n=n, p=p)
    total = grdc_bruteforce_count(r_plus_1, n, p, cap=cap)
    v.details = {"sum": sum(observed.values()), "grdc_count": total}
    v.ok = v.ok and sum(observed.values()) == total
    return v


def verify_beta_relation(r):
    """``beta(P^r) * chi(B(r)) == (-1)^r`` with P^r on the 2^(r+1) - 1 nonzero
    vectors of F_2^(r+1)."""
    P = pg_matroid(r + 1)
    beta = beta_invariant(P)
    chi = chi_closed(2, r)
    v = _verdict("beta", beta * chi, Fraction((-1) ** r), r=r)
    v.details = {"beta": beta, "raw_derivative_at_1": beta_derivative(P), "chi": chi}
    return v


def verify_fano_charpoly():
    got = characteristic_polynomial(pg_matroid(3))
    want = CharPoly.from_roots([1, 2, 4])
    v = _verdict("fano_charpoly", got.coeffs, want.coeffs)
    v.details = {"polynomial": str(got)}
    return v


def verify_class_auts(r, n):
    """Orbit-stabilizer automorphism orders against the generic search."""
    classes = enumerate_binary_classes(r, n)
    lhs = [c.aut_order for c in classes]
    rhs = [aut_order(c.representative) for c in classes]
    return _verdict("class_auts", lhs, rhs, r=r, n=n)


def _suite_prop22(r=None, n=None, cap=None, jobs=1, **_):
    ranks = [r] if r is not None else [1, 2, 3]
    out = []
    for rr in ranks:
        sizes = [n] if n is not None else range(rr, min(2 ** rr - 1, 7) + 1)
        for nn in sizes:
            out.append(verify_prop22(rr, nn, cap=cap, jobs=jobs))
            if rr <= 3:
                out.append(verify_class_auts(rr, nn))
    return out


def _suite_thm31(q=None, r=None, **_):
    qs = [q] if q is not None else [2, 3, 4, 5, 7, 8, 9]
    ranks = [r] if r is not None else [1, 2, 3]
    out = [verify_thm31(qq, rr) for qq in qs for rr in ranks]
    tele_q = [q] if q is not None else [2, 3]
    tele_r = [r] if r is not None else [1, 2]
    out += [verify_telescoping(qq, rr) for qq in tele_q for rr in tele_r]
    return out


def _suite_lemma32(q=None, r=None, **_):
    qs = [q] if q is not None else [2, 3]
    ranks = [r] if r is not None else [0, 1, 2]
    return [verify_lemma(qq, rr, k) for qq in qs for rr in ranks
            for k in range(1, qq ** (rr + 1))]


def _suite_eq5(p=None, r=None, n=None, cap=None, jobs=1, **_):
    ps = [p] if p is not None else [2, 3]
    ranks = [r] if r is not None else [2, 3]
    out = []
    for pp in ps:
        for rr in ranks:
            sizes = [n] if n is not None else range(rr, 9)
            out += [verify_eq5(rr, nn, pp, cap=cap, jobs=jobs) for nn in sizes]
    return out


def _suite_groth(q=None, r=None, n=None, **_):
    qs = [q] if q is not None else [2, 3, 4, 5]
    ranks = [r] if r is not None else [2, 3]
    out = []
    for qq in qs:
        for rr in ranks:
            sizes = [n] if n is not None else range(rr, min(qq ** rr, 40))
            out += [verify_groth(rr, nn, qq) for nn in sizes]
    return out


def _suite_yk(p=None, r=None, n=None, cap=None, **_):
    if p is not None and r is not None and n is not None:
        cases = [(r, n, p)]
    else:
        cases = [(2, 3, 2), (2, 4, 3), (3, 5, 2)]
    return [verify_yk(rr, nn, pp, cap=cap) for rr, nn, pp in cases]


def _suite_beta(r=None, **_):
    ranks = [r] if r is not None else [1, 2, 3]
    return [verify_beta_relation(rr) for rr in ranks] + [verify_fano_charpoly()]


SUITES = {
    "prop22": _suite_prop22,
    "thm31": _suite_thm31,
    "lemma32": _suite_lemma32,
    "eq5": _suite_eq5,
    "groth": _suite_groth,
    "yk": _suite_yk,
    "beta": _suite_beta,
}


def run_suite(name, **params):
    """Run one named suite (or ``"all"``) and return its verdicts."""
    if name == "all":
        out = []
        for suite in SUITES.values():
            out += suite(**params)
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](**params)
