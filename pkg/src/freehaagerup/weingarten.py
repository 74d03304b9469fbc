"""
Exact Weingarten calculus for the hyperoctahedral quantum group ``H_n^+``.

The Gram matrix is indexed by the even non-crossing partitions of ``[2k]``
(in enumeration order) with entries ``n ** |p v q|``, the join taken in the
full partition lattice. Its inverse is computed exactly by rational Gauss-Jordan
elimination.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from operator import mul

from .errors import GramSingularError, SizeGuardError
from .partitions import NC_EVEN, Partition, _leq, enumerate_partitions, join_full, kernel
from .scalars import format_rational

__all__ = [
    "WEINGARTEN_CAP",
    "GramMatrix",
    "WeingartenMatrix",
    "gram",
    "weingarten",
    "exact_inverse",
    "haar_moment",
    "ScanReport",
    "invariance_scan",
    "family_oracle",
]

WEINGARTEN_CAP = 10


@dataclass(frozen=True)
class GramMatrix:
    n: int
    k: int
    basis: tuple
    entries: tuple

    def to_json(self):
        return {"basis": [p.to_json() for p in self.basis],
                "G": [[format_rational(x) for x in row] for row in self.entries]}


@dataclass(frozen=True)
class WeingartenMatrix:
    n: int
    k: int
    basis: tuple
    entries: tuple

    def entry(self, p, q):
        return self.entries[self.basis.index(p)][self.basis.index(q)]

    def to_json(self):
        return {"basis": [p.to_json() for p in self.basis],
                "W": [[format_rational(x) for x in row] for row in self.entries]}


def gram(n, k, cap=WEINGARTEN_CAP):
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    if 2 * k > cap:
        raise SizeGuardError("2k", 2 * k, cap)
    basis = tuple(enumerate_partitions(2 * k, NC_EVEN, cap=max(cap, 2 * k)))
    entries = tuple(tuple(n ** len(join_full(p, q)) for q in basis) for p in basis)
    return GramMatrix(n, k, basis, entries)


def exact_inverse(matrix):
    """
    Exact inverse of a square rational matrix by Gauss-Jordan elimination.

    The pivot in each column is the first non-zero entry at or below the
    diagonal, so the result is reproducible bit for bit. Returns ``None``
    when the matrix is singular.
    """
    n = len(matrix)
    a = []
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise ValueError("matrix must be square")
        a.append([Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)])
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        pivot_row = [x / p for x in a[col]]
        a[col] = pivot_row
        nz = [j for j in range(col, 2 * n) if pivot_row[j] != 0]
        for r in range(n):
            f = a[r][col]
            if r == col or f == 0:
                continue
            row = a[r]
            for j in nz:
                row[j] -= f * pivot_row[j]
    return [row[n:] for row in a]


def _int_matmul(x, y):
    cols = list(zip(*y))
    return [[sum(map(mul, row, col)) for col in cols] for row in x]


def _check_inverse(inv, g):
    # Scale to integers so the identity check avoids Fraction arithmetic.
    d = 1
    for row in inv:
        for x in row:
            d = lcm(d, x.denominator)
    num = [[int(x * d) for x in row] for row in inv]
    size = len(g)
    scaled_ident = [[d if i == j else 0 for j in range(size)] for i in range(size)]
    return _int_matmul(num, g) == scaled_ident and _int_matmul(g, num) == scaled_ident


@lru_cache(maxsize=64)
def _weingarten_cached(n, k, cap):
    g = gram(n, k, cap)
    inv = exact_inverse(g.entries)
    if inv is None:
        raise GramSingularError(n, k)
    if not _check_inverse(inv, g.entries):
        raise ArithmeticError(f"exact inverse check failed for ({n},{k})")
    return WeingartenMatrix(n, k, g.basis, tuple(tuple(r) for r in inv))


def weingarten(n, k, cap=WEINGARTEN_CAP):
    """Exact inverse of ``gram(n, k)``; raises :class:`GramSingularError` when singular."""
    if 2 * k > cap:
        raise SizeGuardError("2k", 2 * k, cap)
    return _weingarten_cached(n, k, cap)


def haar_moment(n, i, j, cap=WEINGARTEN_CAP):
    """Haar state of ``u_{i(1)j(1)} ... u_{i(k)j(k)}`` on ``H_n^+``."""
    i, j = tuple(i), tuple(j)
    if len(i) != len(j):
        raise ValueError("i and j must have equal length")
    if not i:
        return Fraction(1)
    if any(not (1 <= v <= n) for v in i + j):
        raise ValueError(f"indices must lie in 1..{n}")
    if len(i) % 2:
        return Fraction(0)
    w = weingarten(n, len(i) // 2, cap)
    ki, kj = kernel(i), kernel(j)
    rows = [a for a, p in enumerate(w.basis) if _leq(p, ki)]
    cols = [b for b, q in enumerate(w.basis) if _leq(q, kj)]
    return sum((w.entries[a][b] for a in rows for b in cols), Fraction(0))


@dataclass
class ScanReport:
    passed: bool
    checked: int
    violation: object = None
    reason: str = ""

    def to_json(self):
        return {"passed": self.passed, "checked": self.checked,
                "violation": None if self.violation is None else repr(self.violation),
                "reason": self.reason}


def _has_even_nc_below(index):
    k = len(index)
    if k % 2:
        return False
    ker = kernel(index)
    return any(_leq(p, ker) for p in enumerate_partitions(k, NC_EVEN))


def invariance_scan(oracle, k, n, mode="tuple"):
    """
    Check the vanishing conditions forced by ``H_n^+`` invariance on every
    word of length <= ``k``.

    ``oracle(word)`` returns the moment of a word given as a tuple of
    ``(index, exp)`` pairs; in ``"array"`` mode the index is a pair ``(r, s)``.
    Also checks the second-order identity
    ``phi(x_a x_b^*) = delta_ab / n * sum_l phi(x_l x_l^*)``.
    """
    if mode not in ("tuple", "array"):
        raise ValueError("mode must be 'tuple' or 'array'")
    if mode == "tuple":
        alphabet = list(range(1, n + 1))
    else:
        alphabet = [(r, s) for r in range(1, n + 1) for s in range(1, n + 1)]
    checked = 0
    for length in range(1, k + 1):
        for idx in product(alphabet, repeat=length):
            if mode == "tuple":
                allowed = _has_even_nc_below(idx)
            else:
                allowed = (_has_even_nc_below([a for a, _ in idx])
                           and _has_even_nc_below([b for _, b in idx]))
            if allowed:
                continue
            for eps in product("1*", repeat=length):
                word = tuple(zip(idx, eps))
                checked += 1
                if oracle(word) != 0:
                    return ScanReport(False, checked, word, "moment must vanish")
    if k >= 2:
        res = _second_order_check(oracle, n, mode)
        checked += res[0]
        if res[1] is not None:
            return ScanReport(False, checked, res[1], res[2])
    return ScanReport(True, checked)


def _second_order_check(oracle, n, mode):
    checked = 0

    def m2(a, b):
        return oracle(((a, "1"), (b, "*")))

    idx = range(1, n + 1)
    if mode == "tuple":
        avg = sum((m2(l, l) for l in idx), Fraction(0)) / n
        for a in idx:
            for b in idx:
                checked += 1
                if m2(a, b) != (avg if a == b else 0):
                    return checked, (a, b), "second-order identity fails (orthogonal, identically distributed)"
        return checked, None, ""
    for a1 in idx:
        for a2 in idx:
            for b1 in idx:
                for b2 in idx:
                    checked += 1
                    lhs = m2((a1, b1), (a2, b2))
                    left = sum((m2((l, b1), (l, b2)) for l in idx), Fraction(0)) / n
                    right = sum((m2((a1, l), (a2, l)) for l in idx), Fraction(0)) / n
                    if lhs != (left if a1 == a2 else 0) or lhs != (right if b1 == b2 else 0):
                        return checked, ((a1, b1), (a2, b2)), "second-order identity fails (array)"
    return checked, None, ""


def family_oracle(fam, labels):
    """
    Oracle for :func:`invariance_scan` backed by the moment engine: index
    ``r`` (or ``(r, s)``) is mapped to ``labels[r]`` of the *-free family.
    """
    from .cumulants import Letter, moment

    def oracle(word):
        return moment(fam, tuple(Letter(labels[a], e) for a, e in word))

    return oracle
