"""
Free groups: reduced words, convolution traces ``tau((f f^*)^m)``, the
classical and strong Haagerup inequalities, and the free-group oracle for
moments of *-free Haar unitaries.

A word is a tuple of non-zero integers: ``g`` stands for the generator
``g_g`` and ``-g`` for its inverse. Words are kept fully reduced.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import PreconditionError, SizeGuardError
from .scalars import (
    RationalInterval,
    abs2,
    as_exact,
    conj,
    e_interval,
    format_rational,
    scalar_from_json,
    scalar_to_json,
)

__all__ = [
    "TRACE_BUDGET",
    "reduce",
    "inverse",
    "length",
    "words_of_length",
    "GroupFunction",
    "trace_norm_2m_pow",
    "l2_norm_sq",
    "HaagerupReport",
    "haagerup_check",
    "haar_oracle_check",
    "star_word_to_group",
]

TRACE_BUDGET = 10 ** 7


def reduce(*words):
    """Concatenate and freely reduce."""
    out = []
    for w in words:
        for g in w:
            if g == 0:
                raise ValueError("0 is not a generator")
            if out and out[-1] == -g:
                out.pop()
            else:
                out.append(g)
    return tuple(out)


def inverse(w):
    return tuple(-g for g in reversed(w))


def length(w):
    return len(reduce(w))


def words_of_length(d, n_gens, semigroup=False):
    """All reduced words of length ``d`` in ``F_n`` (or in the positive semigroup)."""
    letters = list(range(1, n_gens + 1))
    if not semigroup:
        letters += [-g for g in letters]
    out = []

    def rec(prefix):
        if len(prefix) == d:
            out.append(tuple(prefix))
            return
        for g in letters:
            if prefix and prefix[-1] == -g:
                continue
            prefix.append(g)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


class GroupFunction:
    """Finitely supported function on the free group with exact values."""

    __slots__ = ("values",)

    def __init__(self, values):
        clean = {}
        for w, a in dict(values).items():
            w = reduce(w)
            a = as_exact(a)
            clean[w] = clean.get(w, Fraction(0)) + a
        self.values = {w: a for w, a in sorted(clean.items(), key=lambda kv: (len(kv[0]), kv[0])) if a != 0}

    @classmethod
    def delta(cls, w, coeff=1):
        return cls({tuple(w): coeff})

    @property
    def support(self):
        return tuple(self.values)

    def star(self):
        """``f^*(g) = conj(f(g^{-1}))``."""
        return GroupFunction({inverse(w): conj(a) for w, a in self.values.items()})

    def convolve(self, other):
        out = {}
        for u, a in self.values.items():
            for v, b in other.values.items():
                w = reduce(u, v)
                out[w] = out.get(w, Fraction(0)) + a * b
        return GroupFunction(out)

    def __call__(self, w):
        return self.values.get(reduce(w), Fraction(0))

    def to_json(self):
        return [{"word": list(w), "coeff": scalar_to_json(a)} for w, a in self.values.items()]

    @classmethod
    def from_json(cls, data):
        return cls({tuple(item["word"]): scalar_from_json(item["coeff"]) for item in data})

    def __repr__(self):
        return f"GroupFunction({self.values!r})"


def l2_norm_sq(f):
    return sum((abs2(a) for a in f.values.values()), Fraction(0))


def trace_norm_2m_pow(f, m, budget=TRACE_BUDGET):
    """
    ``tau((f f^*)^m)``: the sum over ``2m``-tuples in the support with
    ``g_1 g_2^{-1} ... g_{2m-1} g_{2m}^{-1} = e`` of
    ``f(g_1) conj(f(g_2)) ...``. Evaluated by repeated convolution of
    ``h = f * f^*``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    size = len(f.values) ** (2 * m)
    if size > budget:
        raise SizeGuardError("support^(2m)", size, budget)
    if not f.values:
        return Fraction(0)
    h = f.convolve(f.star())
    acc = h
    for _ in range(m - 2):
        acc = acc.convolve(h)
    if m == 1:
        value = h(())
    else:
        # (acc * h)(e) = sum_g acc(g) h(g^{-1})
        value = sum((a * h(inverse(w)) for w, a in acc.values.items()), Fraction(0))
    value = as_exact(value)
    if getattr(value, "im", 0) != 0:
        raise ArithmeticError(f"trace of a positive element has imaginary part: {value}")
    return Fraction(getattr(value, "re", value))


@dataclass
class HaagerupReport:
    d: int
    m: int
    semigroup: bool
    lhs_pow: Fraction
    l2_sq: Fraction
    classical_bound: Fraction
    strong_bound: RationalInterval
    classical_pass: bool
    strong_pass: bool

    @property
    def passed(self):
        return self.classical_pass and (self.strong_pass or not self.semigroup)

    def to_json(self):
        return {"d": self.d, "m": self.m, "semigroup": self.semigroup,
                "lhs_pow": format_rational(self.lhs_pow),
                "l2_sq": format_rational(self.l2_sq),
                "classical_bound": format_rational(self.classical_bound),
                "strong_bound": self.strong_bound.to_json(),
                "classical_pass": self.classical_pass,
                "strong_pass": self.strong_pass if self.semigroup else None,
                "passed": self.passed}


def haagerup_check(f, d, m, semigroup=False, terms=30):
    """
    Check ``||f||_{2m} <= (d+1) ||f||_2`` for ``f`` supported on words of
    length ``d``, and additionally ``||f||_{2m} <= sqrt(e) sqrt(d+1) ||f||_2``
    when ``semigroup`` is set (support on positive words only). Both are
    compared on ``2m``-th powers.
    """
    for w in f.values:
        if len(w) != d:
            raise PreconditionError(f"word {list(w)} does not have length {d}")
        if semigroup and any(g < 0 for g in w):
            raise PreconditionError(f"word {list(w)} uses an inverse generator")
    lhs = trace_norm_2m_pow(f, m)
    l2 = l2_norm_sq(f)
    classical = Fraction(d + 1) ** (2 * m) * l2 ** m
    strong = (e_interval(terms) * Fraction(d + 1) * l2) ** m
    strong_pass = lhs <= strong.lo
    if semigroup and not strong_pass and lhs <= strong.hi:
        strong = (e_interval(4 * terms) * Fraction(d + 1) * l2) ** m
        strong_pass = lhs <= strong.lo
    return HaagerupReport(d, m, semigroup, lhs, l2, classical, strong.outward(64),
                          lhs <= classical, strong_pass)


def star_word_to_group(word, generator_of):
    """Map a *-word to a free-group word: ``x`` to ``g``, ``x^*`` to ``g^{-1}``."""
    out = []
    for lab, exp in word:
        g = generator_of[lab]
        out.append(-g if exp == "*" else g)
    return reduce(out)


def haar_oracle_check(cap=8, limit=8):
    """
    Compare the cumulant engine against free-group reduction for every
    *-word of length ``1..cap`` in two *-free Haar unitaries. Returns
    ``{"checked", "mismatches", "first_mismatch"}``. ``cap`` may not exceed
    ``limit``; the word count grows like ``4^cap``.
    """
    from .cumulants import HAAR_UNITARY, FreeFamily, Letter, moment, word_to_json

    if cap > limit:
        raise SizeGuardError("word length cap", cap, limit)
    fam = FreeFamily({"z1": HAAR_UNITARY, "z2": HAAR_UNITARY})
    gens = {"z1": 1, "z2": 2}
    letters = [Letter(lab, e) for lab in ("z1", "z2") for e in ("1", "*")]
    checked = mismatches = 0
    first = None
    for n in range(1, cap + 1):
        for w in product(letters, repeat=n):
            checked += 1
            expected = 1 if star_word_to_group(w, gens) == () else 0
            got = moment(fam, w, cap=max(12, cap))
            if got != expected:
                mismatches += 1
                if first is None:
                    first = {"word": word_to_json(w), "moment": format_rational(got),
                             "group": expected}
    return {"checked": checked, "mismatches": mismatches, "first_mismatch": first}
