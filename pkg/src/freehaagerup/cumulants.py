"""
Moment-cumulant calculus for *-free families with prescribed single-variable
free cumulants.

A family is a map ``label -> CumulantSpec``; distinct labels are *-free.
Words are tuples of :class:`Letter` ``(label, exp)`` with ``exp`` in
``{"1", "*"}``. The state is tracial throughout.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Any, NamedTuple

from .errors import PreconditionError, SizeGuardError, TruncationError
from .partitions import (
    NC_EPS,
    NONCROSSING,
    Partition,
    belongs,
    catalan,
    check_epsilon,
    enumerate_partitions,
    generate,
    is_noncrossing,
    moebius_nc,
)
from .scalars import as_exact, scalar_from_json, scalar_to_json

__all__ = [
    "SpecKind",
    "CumulantSpec",
    "HAAR_UNITARY",
    "CIRCULAR",
    "SEMICIRCULAR",
    "custom_spec",
    "Letter",
    "letter",
    "parse_word",
    "word_adjoint",
    "word_to_json",
    "word_from_json",
    "FreeFamily",
    "MOMENT_CAP",
    "kappa_pi",
    "moment",
    "cumulant_from_moments",
    "is_r_diagonal",
    "is_alternating",
    "complexified_moment",
    "epsilon_support_check",
]

MOMENT_CAP = 12


class SpecKind(Enum):
    HAAR_UNITARY = "haar"
    CIRCULAR = "circular"
    SEMICIRCULAR = "semicircular"
    CUSTOM = "custom"


def is_alternating(eps):
    return len(eps) % 2 == 0 and all(eps[i] != eps[i + 1] for i in range(len(eps) - 1))


@dataclass(frozen=True)
class CumulantSpec:
    """
    Free cumulants of one variable, as a function of the exponent pattern.

    For ``CUSTOM`` specs ``table`` holds ``(pattern, value)`` pairs; patterns
    of length at most ``max_order`` that are absent from the table are zero,
    longer patterns raise :class:`TruncationError`.
    """

    kind: SpecKind
    table: tuple = ()
    max_order: int = None

    def cumulant(self, eps):
        n = len(eps)
        if self.kind is SpecKind.HAAR_UNITARY:
            if n % 2 == 0 and is_alternating(eps):
                k = n // 2
                return Fraction((-1) ** (k - 1) * catalan(k - 1))
            return Fraction(0)
        if self.kind is SpecKind.CIRCULAR:
            return Fraction(1) if eps in ("1*", "*1") else Fraction(0)
        if self.kind is SpecKind.SEMICIRCULAR:
            return Fraction(1) if n == 2 else Fraction(0)
        if n > self.max_order:
            raise TruncationError(f"cumulant of order {n} requested from a table truncated at {self.max_order}")
        return self._lookup.get(eps, Fraction(0))

    @property
    def _lookup(self):
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = dict(self.table)
            object.__setattr__(self, "_lookup_cache", cache)
        return cache

    @property
    def even(self):
        """Whether all odd cumulants are known to vanish."""
        if self.kind is SpecKind.CUSTOM:
            return all(len(p) % 2 == 0 for p, v in self.table if v != 0)
        return True

    def to_json(self):
        if self.kind is not SpecKind.CUSTOM:
            return self.kind.value
        return {"kind": "custom", "max_order": self.max_order,
                "table": {p: scalar_to_json(v) for p, v in self.table}}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            return {"haar": HAAR_UNITARY, "circular": CIRCULAR,
                    "semicircular": SEMICIRCULAR}[data.lower()]
        return custom_spec({p: scalar_from_json(v) for p, v in data["table"].items()},
                           data["max_order"])


HAAR_UNITARY = CumulantSpec(SpecKind.HAAR_UNITARY)
CIRCULAR = CumulantSpec(SpecKind.CIRCULAR)
SEMICIRCULAR = CumulantSpec(SpecKind.SEMICIRCULAR)


def custom_spec(table, max_order):
    """Build a truncated cumulant table from a ``{pattern: value}`` mapping."""
    if max_order < 1:
        raise ValueError("max_order must be positive")
    items = []
    for pat, val in table.items():
        check_epsilon(pat)
        if len(pat) > max_order:
            raise ValueError(f"pattern {pat} longer than max_order {max_order}")
        val = as_exact(val)
        if val != 0:
            items.append((pat, val))
    return CumulantSpec(SpecKind.CUSTOM, tuple(sorted(items)), max_order)


class Letter(NamedTuple):
    label: Any
    exp: str = "1"

    @property
    def star(self):
        return self.exp == "*"

    def adjoint(self):
        return Letter(self.label, "1" if self.exp == "*" else "*")


def letter(label, star=False):
    return Letter(label, "*" if star else "1")


def parse_word(text):
    """``"z1 z2* z1*"`` -> tuple of letters with string labels."""
    out = []
    for tok in text.split():
        if tok.endswith("*"):
            out.append(Letter(tok[:-1], "*"))
        else:
            out.append(Letter(tok, "1"))
    return tuple(out)


def word_adjoint(w):
    return tuple(x.adjoint() for x in reversed(w))


def word_to_json(w):
    return [{"label": x.label, "exp": x.exp} for x in w]


def word_from_json(data):
    w = []
    for item in data:
        exp = str(item.get("exp", "1"))
        if exp not in ("1", "*"):
            raise ValueError(f"bad exponent {exp!r}")
        w.append(Letter(item["label"], exp))
    return tuple(w)


@dataclass(frozen=True)
class FreeFamily:
    """A *-free family: labels with their single-variable cumulant specs."""

    specs: tuple = field(default=())

    def __init__(self, specs):
        if isinstance(specs, dict):
            specs = tuple(specs.items())
        object.__setattr__(self, "specs", tuple(specs))
        if len({lab for lab, _ in self.specs}) != len(self.specs):
            raise ValueError("duplicate labels in family")

    @classmethod
    def iid(cls, labels, spec):
        return cls(tuple((lab, spec) for lab in labels))

    @property
    def alphabet(self):
        return tuple(lab for lab, _ in self.specs)

    def spec(self, label):
        for lab, s in self.specs:
            if lab == label:
                return s
        raise KeyError(f"label {label!r} not in family")

    def spec_map(self):
        return dict(self.specs)

    def extend(self, label, spec):
        if label in self.alphabet:
            raise ValueError(f"label {label!r} already present")
        return FreeFamily(self.specs + ((label, spec),))

    @property
    def identically_distributed(self):
        return len({s for _, s in self.specs}) <= 1


def _check_word(fam, w):
    if len(w) == 0:
        raise ValueError("words must be non-empty")
    specs = fam.spec_map()
    for x in w:
        if x.label not in specs:
            raise KeyError(f"label {x.label!r} not in family")
        if x.exp not in ("1", "*"):
            raise ValueError(f"bad exponent {x.exp!r}")
    return specs


def kappa_pi(fam, p, w):
    """
    Multiplicative free cumulant ``kappa_pi[w]``: the product over blocks of
    single-variable cumulants, zero when a block mixes labels.
    """
    specs = _check_word(fam, w)
    if p.k != len(w):
        raise ValueError("partition ground size must equal word length")
    if not is_noncrossing(p):
        raise ValueError("kappa_pi requires a non-crossing partition")
    return _kappa_blocks(specs, p.blocks, w)


def _kappa_blocks(specs, blocks, w):
    result = Fraction(1)
    for b in blocks:
        lab = w[b[0] - 1].label
        if any(w[x - 1].label != lab for x in b):
            return Fraction(0)
        c = specs[lab].cumulant("".join(w[x - 1].exp for x in b))
        if c == 0:
            return Fraction(0)
        result = result * c
    return result


def moment(fam, w, cap=MOMENT_CAP, method="recursive"):
    """
    Trace of the word ``w`` in the free product of the family.

    ``method="partitions"`` sums ``kappa_pi`` over the non-crossing partitions
    of ``[|w|]`` whose blocks are monochromatic. ``method="recursive"`` (the
    default) evaluates the same sum factored by the block containing the
    first letter, memoized on subwords.
    """
    w = tuple(Letter(*x) for x in w)
    specs = _check_word(fam, w)
    if len(w) > cap:
        raise SizeGuardError("word length", len(w), cap)
    if method == "recursive":
        return _moment_rec(fam, w)
    if method == "partitions":
        labels = [x.label for x in w]
        total = Fraction(0)
        for r in generate(len(w), noncrossing=True, labels=labels):
            total += _kappa_blocks(specs, Partition.from_rgs(r).blocks, w)
        return total
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=1 << 18)
def _moment_rec(fam, w):
    if not w:
        return Fraction(1)
    specs = fam.spec_map()
    spec = specs[w[0].label]
    lab = w[0].label
    k = len(w)
    even_family = all(s.even for s in specs.values())
    total = Fraction(0)
    # choose the block V = {0 = v0 < v1 < ... < vs} containing the first letter;
    # the gaps between consecutive elements and after vs are independent words
    stack = [(0, (0,), Fraction(1))]
    while stack:
        last, block, gaps = stack.pop()
        tail = w[last + 1:]
        if not (even_family and len(tail) % 2):
            c = spec.cumulant("".join(w[i].exp for i in block))
            if c != 0:
                rest = _moment_rec(fam, tail)
                if rest != 0:
                    total += c * gaps * rest
        for nxt in range(last + 1, k):
            if w[nxt].label != lab:
                continue
            gap_len = nxt - last - 1
            if even_family and gap_len % 2:
                continue
            g = _moment_rec(fam, w[last + 1:nxt]) if gap_len else Fraction(1)
            if g == 0:
                continue
            stack.append((nxt, block + (nxt,), gaps * g))
    return total


def cumulant_from_moments(oracle, w, cap=MOMENT_CAP):
    """
    Free cumulant ``kappa_n[w]`` by Moebius inversion over ``NC(n)``.

    ``oracle`` maps a word (tuple of letters) to its moment.
    """
    w = tuple(Letter(*x) for x in w)
    k = len(w)
    if k == 0:
        raise ValueError("words must be non-empty")
    if k > cap:
        raise SizeGuardError("word length", k, cap)
    top = Partition.one(k)
    memo = {}

    def phi(sub):
        if sub not in memo:
            memo[sub] = oracle(sub)
        return memo[sub]

    total = Fraction(0)
    for sigma in enumerate_partitions(k, NONCROSSING, cap=max(cap, k)):
        mu = moebius_nc(sigma, top)
        term = Fraction(mu)
        for b in sigma.blocks:
            term = term * phi(tuple(w[x - 1] for x in b))
            if term == 0:
                break
        total = total + term
    return total


def is_r_diagonal(spec, order):
    """True iff all cumulants of length <= ``order`` vanish off alternating even patterns."""
    if order < 1:
        raise ValueError("order must be positive")
    if spec.kind is SpecKind.CUSTOM and order > spec.max_order:
        raise TruncationError(f"order {order} exceeds table order {spec.max_order}")
    for n in range(1, order + 1):
        for pat in product("1*", repeat=n):
            eps = "".join(pat)
            if not is_alternating(eps) and spec.cumulant(eps) != 0:
                return False
    return True


class _FreshUnitary:
    """Label for the Haar unitary adjoined by free complexification."""

    __slots__ = ("depth",)

    def __init__(self, depth):
        self.depth = depth

    def __eq__(self, other):
        return isinstance(other, _FreshUnitary) and other.depth == self.depth

    def __hash__(self):
        return hash(("fresh-unitary", self.depth))

    def __repr__(self):
        return f"z{self.depth}" if self.depth else "z"


def complexified_moment(fam, w, cap=MOMENT_CAP):
    """
    Moment of ``w`` after replacing each variable ``x_r`` by ``z x_r`` for a
    fresh Haar unitary ``z`` *-free from the family.
    """
    w = tuple(Letter(*x) for x in w)
    _check_word(fam, w)
    if 2 * len(w) > cap:
        raise SizeGuardError("complexified word length", 2 * len(w), cap)
    depth = 0
    while _FreshUnitary(depth) in fam.alphabet:
        depth += 1
    z = _FreshUnitary(depth)
    ext = fam.extend(z, HAAR_UNITARY)
    out = []
    for x in w:
        if x.exp == "1":
            out.extend((Letter(z, "1"), x))
        else:
            out.extend((x, Letter(z, "*")))
    return moment(ext, tuple(out), cap=cap)


def epsilon_support_check(fam, w, p):
    """
    True iff ``kappa_pi[w]`` vanishes or ``p`` lies in ``NC^eps`` for the
    exponent pattern of ``w``; requires every spec to be R-diagonal.
    """
    w = tuple(Letter(*x) for x in w)
    specs = _check_word(fam, w)
    for lab in {x.label for x in w}:
        spec = specs[lab]
        order = spec.max_order if spec.kind is SpecKind.CUSTOM else max(len(w), 2)
        if not is_r_diagonal(spec, order):
            raise PreconditionError(f"spec of {lab!r} is not R-diagonal")
    val = kappa_pi(fam, p, w)
    if val == 0:
        return True
    eps = "".join(x.exp for x in w)
    return belongs(p, NC_EPS(eps))
