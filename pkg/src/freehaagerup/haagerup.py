"""
L^2 and L^{2m} norms of homogeneous polynomials in R-diagonal *-free
families, certification of the strong Haagerup inequality, the (A)/(B)/(C)
estimate pipeline, Chebyshev-II characters, and coefficient-level
semigroup and radial multiplier actions.

A homogeneous polynomial of degree ``d`` is a map ``i -> a_i`` from
``d``-tuples of labels to exact scalars, standing for ``sum a_i X_i`` with
``X_i = x_{i(1)} ... x_{i(d)}``. Norm powers ``phi((T T^*)^m)`` are always
exact; only the constants ``e`` and ``sqrt(e)`` are enclosed in intervals.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .cumulants import CIRCULAR, Letter, FreeFamily, SpecKind, is_r_diagonal, moment
from .errors import InconsistencyError, PreconditionError, SizeGuardError, UndecidedError
from .partitions import (
    NC_EPS,
    Partition,
    count_chains,
    enumerate_partitions,
    epsilon_d,
)
from .scalars import (
    GaussianRational,
    RationalInterval,
    abs2,
    abs_interval,
    as_exact,
    conj,
    e_interval,
    format_rational,
    real_value,
    scalar_from_json,
    scalar_to_json,
)

__all__ = [
    "HomPolynomial",
    "ArrayPolynomial",
    "GradedPolynomial",
    "ChebyshevPoly",
    "RadialMultiplier",
    "NormLimits",
    "DEFAULT_LIMITS",
    "array_family",
    "l2_norm_sq",
    "lp_norm_2m_pow",
    "direct_norm_2m_pow",
    "restricted_norm_2m_pow",
    "Certificate",
    "shi_certify",
    "abc_estimates",
    "check_reversal",
    "coefficient_partial_sum",
    "chebyshev_u",
    "character_norm_check",
    "ou_apply",
    "multiplier_apply",
    "random_hom_polynomial",
]

PRECISION_LADDER = (20, 40, 80, 160, 320)


def _key(index):
    return tuple(index)


class HomPolynomial:
    """
    Homogeneous polynomial ``sum_i a_i X_i`` of a fixed degree.

    ``coeffs`` maps ``d``-tuples of labels to exact scalars; zero
    coefficients are dropped.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree, coeffs):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean = {}
        for index, a in dict(coeffs).items():
            index = _key(index)
            if len(index) != degree:
                raise ValueError(f"index {index!r} does not have length {degree}")
            a = as_exact(a)
            if a != 0:
                clean[index] = a
        self.degree = degree
        self.coeffs = dict(sorted(clean.items(), key=lambda kv: repr(kv[0])))

    @classmethod
    def monomial(cls, index, coeff=1):
        index = _key(index)
        return cls(len(index), {index: coeff})

    @property
    def support(self):
        return tuple(self.coeffs)

    @property
    def labels(self):
        return tuple(sorted({x for idx in self.coeffs for x in idx}, key=repr))

    def coeff_sq_sum(self):
        """``sum_i |a_i|^2``."""
        return sum((abs2(a) for a in self.coeffs.values()), Fraction(0))

    def scale(self, lam):
        lam = as_exact(lam)
        return HomPolynomial(self.degree, {i: lam * a for i, a in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, HomPolynomial):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __repr__(self):
        return f"HomPolynomial({self.degree}, {self.coeffs!r})"

    def to_json(self):
        return {"degree": self.degree,
                "terms": [{"index": list(i), "coeff": scalar_to_json(a)}
                          for i, a in self.coeffs.items()]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["degree"]),
                   {tuple(t["index"]): scalar_from_json(t["coeff"]) for t in data["terms"]})


class ArrayPolynomial:
    """
    Homogeneous polynomial ``sum a_{k,l} x_{k(1)l(1)} ... x_{k(d)l(d)}`` in
    an ``n x n`` array of variables. Keys are pairs ``(k, l)`` of
    ``d``-tuples over ``1..n``.
    """

    __slots__ = ("degree", "n", "coeffs")

    def __init__(self, degree, n, coeffs):
        clean = {}
        for (k, l), a in dict(coeffs).items():
            k, l = tuple(k), tuple(l)
            if len(k) != degree or len(l) != degree:
                raise ValueError("row and column indices must have length d")
            if any(not (1 <= v <= n) for v in k + l):
                raise ValueError(f"indices must lie in 1..{n}")
            a = as_exact(a)
            if a != 0:
                clean[(k, l)] = a
        self.degree = degree
        self.n = n
        self.coeffs = dict(sorted(clean.items()))

    def to_hom(self):
        """The same polynomial over the label set ``[n] x [n]``."""
        return HomPolynomial(self.degree, {tuple(zip(k, l)): a for (k, l), a in self.coeffs.items()})

    def coeff_sq_sum(self):
        return sum((abs2(a) for a in self.coeffs.values()), Fraction(0))

    def to_json(self):
        return {"degree": self.degree, "n": self.n,
                "terms": [{"k": list(k), "l": list(l), "coeff": scalar_to_json(a)}
                          for (k, l), a in self.coeffs.items()]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["degree"]), int(data["n"]),
                   {(tuple(t["k"]), tuple(t["l"])): scalar_from_json(t["coeff"])
                    for t in data["terms"]})


def array_family(n, spec=CIRCULAR):
    """Identically distributed *-free family indexed by ``[n] x [n]``."""
    return FreeFamily.iid([(r, s) for r in range(1, n + 1) for s in range(1, n + 1)], spec)


class GradedPolynomial:
    """Finite sum of homogeneous components, keyed by degree."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = {}
        for d, t in dict(components).items():
            if t.degree != d:
                raise ValueError(f"component stored under degree {d} has degree {t.degree}")
            if t.coeffs:
                comps[d] = t
        self.components = dict(sorted(comps.items()))

    @classmethod
    def of(cls, *parts):
        return cls({t.degree: t for t in parts})

    @property
    def degrees(self):
        return tuple(self.components)

    def terms(self):
        for t in self.components.values():
            yield from t.coeffs.items()

    def __eq__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.components == other.components

    def __repr__(self):
        return f"GradedPolynomial({self.components!r})"


@dataclass(frozen=True)
class ChebyshevPoly:
    """Integer polynomial given by its coefficient list, constant term first."""

    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self):
        return list(self.coeffs)


@dataclass(frozen=True)
class RadialMultiplier:
    """Function of word length, ``d -> psi_d``; degrees not listed map to 0."""

    values: tuple = field(default=())

    def __init__(self, values):
        object.__setattr__(self, "values",
                           tuple(sorted((int(d), as_exact(v)) for d, v in dict(values).items())))

    @classmethod
    def geometric(cls, q, N):
        """``psi_d = q^d`` for ``d <= N``, zero beyond."""
        q = as_exact(q)
        return cls({d: q ** d for d in range(N + 1)})

    @classmethod
    def indicator(cls, d):
        return cls({d: 1})

    def __call__(self, d):
        for k, v in self.values:
            if k == d:
                return v
        return Fraction(0)

    def k_sq(self, degrees):
        """``K(psi)^2 = max_d (d+1)^3 |psi_d|^2`` over the given degrees."""
        return max((Fraction((d + 1) ** 3) * abs2(self(d)) for d in degrees), default=Fraction(0))


@dataclass(frozen=True)
class NormLimits:
    """Size guards for norm expansions; ``unsafe`` disables all of them."""

    length_cap: int = 12
    support_cap: int = 6
    m_cap: int = 3
    budget: int = 10 ** 7
    unsafe: bool = False

    def check(self, d, m, support):
        if self.unsafe:
            return
        if 2 * d * m > self.length_cap:
            raise SizeGuardError("2dm", 2 * d * m, self.length_cap)
        if support > self.support_cap:
            raise SizeGuardError("support size", support, self.support_cap)
        if m > self.m_cap:
            raise SizeGuardError("m", m, self.m_cap)
        if support ** (2 * m) > self.budget:
            raise SizeGuardError("expansion terms", support ** (2 * m), self.budget)


DEFAULT_LIMITS = NormLimits()
UNSAFE = NormLimits(unsafe=True)


def _as_hom(T):
    if isinstance(T, ArrayPolynomial):
        return T.to_hom(), "array"
    return T, "tuple"


def _require_r_diagonal(fam, order):
    order = max(2, order + order % 2)
    for lab, spec in fam.specs:
        o = order
        if spec.kind is SpecKind.CUSTOM:
            o = min(order, spec.max_order - spec.max_order % 2)
            if o < 2:
                raise PreconditionError(f"spec of {lab!r} is truncated below order 2")
        if not is_r_diagonal(spec, o):
            raise PreconditionError(f"label {lab!r} is not R-diagonal; the cumulant expansion needs an R-diagonal family")


def _require_identical(fam):
    if not fam.identically_distributed:
        raise PreconditionError("family must be identically distributed")


def _require_labels(T, fam):
    alphabet = set(fam.alphabet)
    missing = [x for x in T.labels if x not in alphabet]
    if missing:
        raise KeyError(f"labels {missing!r} not in family")


def _reference(fam):
    return fam.alphabet[0]


def _x_moments(fam, m):
    """``(||x||_2^2, ||x||_{2m}^{2m})`` for the reference variable."""
    x = _reference(fam)
    pair = (Letter(x, "1"), Letter(x, "*"))
    return moment(fam, pair), moment(fam, pair * m, cap=max(12, 2 * m))


def l2_norm_sq(T, fam):
    """
    ``||T||_2^2 = ||x||_2^{2d} sum_i |a_i|^2`` for an identically
    distributed R-diagonal family.
    """
    T, _ = _as_hom(T)
    _require_identical(fam)
    _require_r_diagonal(fam, 2)
    _require_labels(T, fam)
    s2, _ = _x_moments(fam, 1)
    return s2 ** T.degree * T.coeff_sq_sum()


def _group_word(key, star):
    if star:
        return tuple(Letter(x, "*") for x in reversed(key))
    return tuple(Letter(x, "1") for x in key)


def _finish(total):
    if isinstance(total, GaussianRational):
        if total.im != 0:
            raise InconsistencyError(f"norm power has non-zero imaginary part: {total}")
        return total.re
    return Fraction(total)


def direct_norm_2m_pow(terms, fam, m, cap=12):
    """
    ``phi((T T^*)^m)`` by expanding over ``2m``-tuples of monomials and
    evaluating each moment. ``terms`` is an iterable of ``(index, coeff)``;
    indices may have different lengths.
    """
    terms = list(terms)
    total = Fraction(0)
    for combo in product(terms, repeat=2 * m):
        weight = Fraction(1)
        word = ()
        for g, (key, a) in enumerate(combo):
            star = g % 2 == 1
            weight = weight * (conj(a) if star else a)
            word += _group_word(key, star)
        if weight == 0:
            continue
        value = moment(fam, word, cap=max(cap, len(word))) if word else Fraction(1)
        if value:
            total = total + weight * value
    return _finish(total)


def check_reversal(d, m):
    """
    Position involution of ``[2dm]`` reversing every even-numbered group of
    ``d`` positions. Returned as a tuple ``r`` with ``r[j-1]`` the image of
    ``j``.
    """
    out = []
    for g in range(2 * m):
        base = g * d
        if g % 2:
            out.extend(base + d - j for j in range(d))
        else:
            out.extend(base + 1 + j for j in range(d))
    return tuple(out)


def _assignments(blocks_of_pos, d, m, support, key_of_group):
    """
    Yield every tuple of ``2m`` support keys whose induced labelling of
    ``[2dm]`` is constant on each block. ``key_of_group(g, key)`` gives the
    labels written into group ``g``.
    """
    nblocks = max(blocks_of_pos) + 1
    label = [None] * nblocks
    chosen = []

    def rec(g):
        if g == 2 * m:
            yield tuple(chosen), tuple(label)
            return
        for key in support:
            labels = key_of_group(g, key)
            touched = []
            ok = True
            for j, lab in enumerate(labels):
                b = blocks_of_pos[g * d + j]
                if label[b] is None:
                    label[b] = lab
                    touched.append(b)
                elif label[b] != lab:
                    ok = False
                    break
            if ok:
                chosen.append(key)
                yield from rec(g + 1)
                chosen.pop()
            for b in touched:
                label[b] = None

    yield from rec(0)


def _block_index(p):
    idx = [0] * p.k
    for b, block in enumerate(p.blocks):
        for x in block:
            idx[x - 1] = b
    return idx


def restricted_norm_2m_pow(T, fam, m):
    """
    ``phi((T T^*)^m)`` as the sum over ``pi`` in ``NC^{eps_d}(2dm)`` of
    ``a_{i_1} conj(a_{check i_2}) ... kappa_pi[I]``. Valid for R-diagonal
    families only.
    """
    d = T.degree
    eps = epsilon_d(d, m)
    specs = fam.spec_map()
    support = T.support
    coeffs = T.coeffs
    total = Fraction(0)

    def key_of_group(g, key):
        return tuple(reversed(key)) if g % 2 else key

    for p in enumerate_partitions(2 * d * m, NC_EPS(eps), cap=max(14, 2 * d * m)):
        pos = _block_index(p)
        patterns = ["".join(eps[x - 1] for x in block) for block in p.blocks]
        for keys, block_labels in _assignments(pos, d, m, support, key_of_group):
            kappa = Fraction(1)
            for lab, pat in zip(block_labels, patterns):
                kappa *= specs[lab].cumulant(pat)
                if kappa == 0:
                    break
            if kappa == 0:
                continue
            weight = Fraction(1)
            for g, key in enumerate(keys):
                weight = weight * (conj(coeffs[key]) if g % 2 else coeffs[key])
            total = total + weight * kappa
    return _finish(total)


def lp_norm_2m_pow(T, fam, m, limits=DEFAULT_LIMITS):
    """
    ``||T||_{2m}^{2m} = phi((T T^*)^m)``, computed by direct moment
    expansion and by the restricted cumulant sum. Raises
    :class:`InconsistencyError` if the two disagree.
    """
    T, _ = _as_hom(T)
    if m < 1:
        raise ValueError("m must be positive")
    _require_labels(T, fam)
    limits.check(T.degree, m, len(T.coeffs))
    _require_r_diagonal(fam, 2 * T.degree * m)
    if not T.coeffs:
        return Fraction(0)
    if T.degree == 0:
        return abs2(T.coeffs[()]) ** m
    a = direct_norm_2m_pow(T.coeffs.items(), fam, m, cap=limits.length_cap)
    b = restricted_norm_2m_pow(T, fam, m)
    if a != b:
        raise InconsistencyError(f"direct expansion {a} != restricted cumulant sum {b}")
    return a


@dataclass
class Certificate:
    lhs_pow: Fraction
    rhs_interval: RationalInterval
    verdict: str
    d: int
    m: int
    mode: str
    terms: int = 0

    @property
    def ratio(self):
        if self.rhs_interval.lo <= 0:
            return None
        return self.lhs_pow / self.rhs_interval.lo

    def to_json(self):
        r = self.ratio
        return {"lhs_pow": format_rational(self.lhs_pow),
                "rhs_interval": self.rhs_interval.to_json(),
                "verdict": self.verdict, "d": self.d, "m": self.m, "mode": self.mode,
                "ratio_upper": None if r is None else format_rational(r)}


def _constant_pow(m, mode, e):
    """Enclosure of ``C^{2m}`` for the tuple or array constant."""
    if mode == "tuple":
        return RationalInterval(Fraction(4 ** (10 * m) * 3 ** (4 * m))) * e ** (5 * m)
    return RationalInterval(Fraction(4 ** (10 * m) * 3 ** (6 * m))) * e ** (7 * m)


def _decide(lhs, rhs_of_e, report):
    """Run the precision ladder; ``rhs_of_e(e)`` builds the right side."""
    for terms in PRECISION_LADDER:
        rhs = rhs_of_e(e_interval(terms))
        # Trim endpoint sizes; the grid is fine relative to the value.
        magnitude = rhs.lo.numerator.bit_length() - rhs.lo.denominator.bit_length()
        rhs = rhs.outward(max(64, 4 * terms - magnitude))
        if lhs <= rhs.lo:
            return report(rhs, "pass", terms)
        if lhs > rhs.hi:
            return report(rhs, "fail", terms)
    cert = report(rhs, "undecided", terms)
    raise UndecidedError("interval enclosure too wide at maximum precision", cert)


def shi_certify(T, fam, m, mode=None, limits=DEFAULT_LIMITS):
    """
    Certify ``||T||_{2m} <= C (||x||_{2m}^2 / ||x||_2^2) sqrt(d+1) ||T||_2``
    on ``2m``-th powers. ``C = 4^5 (3e)^2 sqrt(e)`` for tuples and
    ``4^5 (3e)^3 sqrt(e)`` for arrays; an :class:`ArrayPolynomial` selects
    array mode automatically.
    """
    H, detected = _as_hom(T)
    mode = mode or detected
    if mode not in ("tuple", "array"):
        raise ValueError("mode must be 'tuple' or 'array'")
    _require_identical(fam)
    _require_r_diagonal(fam, 2 * H.degree * m)
    d = H.degree
    lhs = lp_norm_2m_pow(H, fam, m, limits)
    s2, big = _x_moments(fam, m)
    l2 = s2 ** d * H.coeff_sq_sum()
    rest = big * big / s2 ** (2 * m) * Fraction(d + 1) ** m * l2 ** m

    def report(rhs, verdict, terms):
        return Certificate(lhs, rhs, verdict, d, m, mode, terms)

    return _decide(lhs, lambda e: _constant_pow(m, mode, e) * rest, report)


def coefficient_partial_sum(pi, T, m, bits=64):
    """
    Enclosure of ``sum_{ker I >= pi} |a_{i_1} a_{i_2} ... a_{i_{2m}}|`` over
    ``I = (i_1, ..., i_{2m})`` with no index reversal. Exact (a point
    interval) whenever every ``|a_i|`` is rational.
    """
    T, _ = _as_hom(T)
    d = T.degree
    if pi.k != 2 * d * m:
        raise ValueError("partition ground size must be 2dm")
    if not T.coeffs:
        return RationalInterval(0)
    mods = {i: abs_interval(a, bits) for i, a in T.coeffs.items()}
    total = RationalInterval(0)
    for keys, _ in _assignments(_block_index(pi), d, m, T.support, lambda g, key: key):
        term = RationalInterval(1)
        for key in keys:
            term = term * mods[key]
        total = total + term
    return total


def _checked_partial_sum(rho, T, m, bits=64):
    # Same sum with conj-reversed even groups, enumerated directly.
    d = T.degree
    mods = {i: abs_interval(a, bits) for i, a in T.coeffs.items()}
    total = RationalInterval(0)
    key_of_group = lambda g, key: tuple(reversed(key)) if g % 2 else key
    for keys, _ in _assignments(_block_index(rho), d, m, T.support, key_of_group):
        term = RationalInterval(1)
        for key in keys:
            term = term * mods[key]
        total = total + term
    return total


def _reindex(p, perm):
    return Partition([[perm[x - 1] for x in block] for block in p.blocks], p.k)


@dataclass
class ABCReport:
    d: int
    m: int
    mode: str
    A: int
    A_bound: RationalInterval
    B: Fraction
    B_bound: Fraction
    C: RationalInterval
    C_bound: RationalInterval
    coeff_sum_max: RationalInterval
    coeff_sum_bound: Fraction
    lhs_pow: Fraction
    product: RationalInterval
    checks: dict

    @property
    def passed(self):
        return all(self.checks.values())

    def to_json(self):
        return {
            "d": self.d, "m": self.m, "mode": self.mode,
            "A": self.A, "A_bound": self.A_bound.to_json(),
            "B": format_rational(self.B), "B_bound": format_rational(self.B_bound),
            "C": self.C.to_json(), "C_bound": self.C_bound.to_json(),
            "coeff_sum_max": self.coeff_sum_max.to_json(), "coeff_sum_bound": format_rational(self.coeff_sum_bound),
            "lhs_pow": format_rational(self.lhs_pow), "product": self.product.to_json(),
            "checks": dict(self.checks), "passed": self.passed,
        }


def abc_estimates(d, m, T, fam, limits=DEFAULT_LIMITS, terms=40):
    """
    Exact values of the three factors in the Holder bound
    ``||T||_{2m}^{2m} <= (A)(B)(C)`` together with their closed-form bounds.

    (A) is ``|NC^{eps_d}(2dm)|``; (B) the largest ``|kappa_pi[I]|``; (C)
    the largest over ``pi`` of the sum of ``|a_{i_1} a_{check i_2} ...|``
    over ``I`` with ``kappa_pi[I] != 0``. The coefficient-sum bound is
    checked on every ``pi`` through the reversal-reindexed partition.
    """
    H, mode = _as_hom(T)
    if H.degree != d:
        raise ValueError(f"polynomial has degree {H.degree}, expected {d}")
    if not limits.unsafe and 2 * d * m > limits.length_cap:
        raise SizeGuardError("2dm", 2 * d * m, limits.length_cap)
    _require_identical(fam)
    _require_r_diagonal(fam, 2 * d * m)
    eps = epsilon_d(d, m)
    parts = enumerate_partitions(2 * d * m, NC_EPS(eps), cap=max(14, 2 * d * m))
    specs = [s for _, s in fam.specs]
    e = e_interval(terms)

    A = len(parts)
    A_bound = (RationalInterval(Fraction(4 ** (2 * m) * (d + 1) ** m)) * e ** m).outward(128)

    B = Fraction(0)
    for p in parts:
        value = Fraction(1)
        for block in p.blocks:
            pat = "".join(eps[x - 1] for x in block)
            value *= max(abs(real_value(s.cumulant(pat))) for s in specs)
        B = max(B, value)
    s2, big = _x_moments(fam, m)
    B_bound = s2 ** (d * m) * Fraction(16) ** (4 * m) * big * big / s2 ** (2 * m)

    sq = H.coeff_sq_sum()
    C = RationalInterval(0)
    if H.coeffs:
        for p in parts:
            s = _kappa_support_sum(p, H, m, fam, eps)
            if s.hi > C.hi:
                C = RationalInterval(max(C.lo, s.lo), s.hi)
            elif s.lo > C.lo:
                C = RationalInterval(s.lo, C.hi)
    power = 6 * m if mode == "array" else 4 * m
    C_bound = ((RationalInterval(3) * e) ** power * sq ** m).outward(128)

    perm = check_reversal(d, m)
    coeff_sum_max = RationalInterval(0)
    reversal_ok = True
    for p in parts:
        direct = _checked_partial_sum(p, H, m)
        via = coefficient_partial_sum(_reindex(p, perm), H, m)
        if direct.lo != via.lo or direct.hi != via.hi:
            reversal_ok = False
        if direct.hi > coeff_sum_max.hi:
            coeff_sum_max = direct
    coeff_sum_bound = sq ** m

    lhs = lp_norm_2m_pow(H, fam, m, limits) if H.coeffs else Fraction(0)
    prod = RationalInterval(A) * B * C
    checks = {
        "A": RationalInterval(A).certainly_le(A_bound),
        "B": B <= B_bound,
        "C": C.certainly_le(C_bound),
        "coeff_sum": coeff_sum_max.hi <= coeff_sum_bound,
        "reversal": reversal_ok,
        "holder": lhs <= prod.lo,
    }
    return ABCReport(d, m, mode, A, A_bound, B, B_bound, C, C_bound,
                     coeff_sum_max, coeff_sum_bound, lhs, prod, checks)


def _kappa_support_sum(p, T, m, fam, eps):
    d = T.degree
    specs = fam.spec_map()
    patterns = ["".join(eps[x - 1] for x in block) for block in p.blocks]
    mods = {i: abs_interval(a) for i, a in T.coeffs.items()}
    total = RationalInterval(0)
    key_of_group = lambda g, key: tuple(reversed(key)) if g % 2 else key
    for keys, labels in _assignments(_block_index(p), d, m, T.support, key_of_group):
        if any(specs[lab].cumulant(pat) == 0 for lab, pat in zip(labels, patterns)):
            continue
        term = RationalInterval(1)
        for key in keys:
            term = term * mods[key]
        total = total + term
    return total


def chebyshev_u(d):
    """Chebyshev-II polynomial ``T_d`` from ``x T_d = T_{d+1} + T_{d-1}``."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    prev, cur = (1,), (0, 1)
    if d == 0:
        return ChebyshevPoly(prev)
    for _ in range(d - 1):
        shifted = (0,) + cur
        padded = prev + (0,) * (len(shifted) - len(prev))
        prev, cur = cur, tuple(a - b for a, b in zip(shifted, padded))
    return ChebyshevPoly(cur)


def character_norm_check(d, m_max, cap=12):
    """
    Ladder ``||c^d||_{2m}^{2m}`` for a circular ``c`` and ``m <= m_max``.

    Each value must equal the Fuss-Catalan number ``count_chains(m, d)``,
    the norms must be non-decreasing in ``m``, and each must respect
    ``||c^d||_{2m} <= (1 + 1/d)^{d/2} sqrt(d+1)``; raised to the ``2m``-th
    power that bound is the rational ``((1 + 1/d)^d (d+1))^m``.
    """
    if d < 1 or m_max < 1:
        raise ValueError("d and m_max must be positive")
    if 2 * d * m_max > cap:
        raise SizeGuardError("2 d m_max", 2 * d * m_max, cap)
    fam = FreeFamily({"c": CIRCULAR})
    T = HomPolynomial.monomial(("c",) * d)
    values, bounds = [], []
    base = (1 + Fraction(1, d)) ** d * (d + 1)
    for m in range(1, m_max + 1):
        values.append(lp_norm_2m_pow(T, fam, m, NormLimits(length_cap=cap, support_cap=1, m_cap=m_max)))
        bounds.append(base ** m)
    chains = [count_chains(m, d) for m in range(1, m_max + 1)]
    monotone = all(values[k] ** (k + 2) <= values[k + 1] ** (k + 1) for k in range(len(values) - 1))
    bound_ok = all(v <= b for v, b in zip(values, bounds))
    report = {
        "d": d,
        "values": [format_rational(v) for v in values],
        "fuss_catalan": chains,
        "bound_pow": [format_rational(b) for b in bounds],
        "chains_match": [int(v) for v in values] == chains and all(v.denominator == 1 for v in values),
        "monotone": monotone,
        "bound_holds": bound_ok,
    }
    report["passed"] = report["chains_match"] and monotone and bound_ok
    return report


def ou_apply(graded, q):
    """Scale the degree ``d`` component by ``q^d``; ``q`` plays ``e^{-t}``."""
    q = as_exact(q)
    if isinstance(q, GaussianRational) or not (0 < q <= 1):
        raise ValueError("q must be a rational in (0, 1]")
    if isinstance(graded, HomPolynomial):
        return graded.scale(q ** graded.degree)
    return GradedPolynomial({d: t.scale(q ** d) for d, t in graded.components.items()})


def _graded_l2_sq(graded, s2):
    return sum((s2 ** d * t.coeff_sq_sum() for d, t in graded.components.items()), Fraction(0))


def graded_norm_2m_pow(graded, fam, m, cap=12):
    """``phi((S S^*)^m)`` for a sum of homogeneous parts, by direct expansion."""
    if not graded.components:
        return Fraction(0)
    top = max(graded.degrees)
    if 2 * top * m > cap:
        raise SizeGuardError("2 d_max m", 2 * top * m, cap)
    return direct_norm_2m_pow(graded.terms(), fam, m, cap)


def multiplier_apply(graded, psi, fam, m, mode="tuple", cap=12):
    """
    Apply the radial multiplier ``psi`` and certify
    ``||M_psi T||_{2m} <= C K(psi) ||T||_2`` where
    ``K(psi) = max_d (d+1)^{3/2} |psi_d|`` over the degrees of ``T`` and
    ``C = c_x sum_d (d+1)^{-1}``, ``c_x sqrt(d+1)`` being the strong
    Haagerup constant in degree ``d``.
    """
    if isinstance(graded, HomPolynomial):
        graded = GradedPolynomial.of(graded)
    _require_identical(fam)
    top = max(graded.degrees, default=0)
    _require_r_diagonal(fam, max(2, 2 * top * m))
    image = GradedPolynomial({d: t.scale(psi(d)) for d, t in graded.components.items()})
    lhs = graded_norm_2m_pow(image, fam, m, cap)
    s2, big = _x_moments(fam, m)
    k_sq = psi.k_sq(graded.degrees)
    harmonic = sum((Fraction(1, d + 1) for d in graded.degrees), Fraction(0))
    l2 = _graded_l2_sq(graded, s2)
    rest = big * big / s2 ** (2 * m) * harmonic ** (2 * m) * k_sq ** m * l2 ** m

    def report(rhs, verdict, terms):
        cert = Certificate(lhs, rhs, verdict, top, m, mode, terms)
        return MultiplierReport(image, k_sq, cert)

    return _decide(lhs, lambda e: _constant_pow(m, mode, e) * rest, report)


@dataclass
class MultiplierReport:
    image: GradedPolynomial
    k_sq: Fraction
    certificate: Certificate

    @property
    def verdict(self):
        return self.certificate.verdict

    def to_json(self):
        out = self.certificate.to_json()
        out["K_sq"] = format_rational(self.k_sq)
        return out


def _phase(rng):
    # Unit complex number with rational parts, from a Pythagorean triple.
    p, q = rng.randint(1, 4), rng.randint(0, 4)
    n = p * p + q * q
    sign_re = rng.choice((1, -1))
    sign_im = rng.choice((1, -1))
    return GaussianRational(Fraction(sign_re * (p * p - q * q), n), Fraction(sign_im * 2 * p * q, n))


def random_hom_polynomial(rng, labels, d, support_size, complex_coeffs=False, max_num=5, max_den=4):
    """
    Random degree-``d`` polynomial on ``support_size`` distinct monomials.

    Real coefficients are non-zero rationals with bounded numerator and
    denominator. Complex coefficients are such a rational times a unit
    complex number with rational parts, so every ``|a_i|`` stays rational.
    """
    pool = sorted(product(labels, repeat=d), key=repr)
    keys = rng.sample(pool, min(support_size, len(pool)))
    coeffs = {}
    for k in keys:
        a = Fraction(rng.choice([v for v in range(-max_num, max_num + 1) if v]), rng.randint(1, max_den))
        coeffs[k] = a * _phase(rng) if complex_coeffs else a
    return HomPolynomial(d, coeffs)
