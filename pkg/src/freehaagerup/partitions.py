"""
Set partitions and non-crossing partitions of ``[k] = {1, ..., k}``.

Partitions are immutable and kept in canonical form: elements ascending
inside each block, blocks ordered by their minimum. Enumeration runs over
restricted growth strings in lexicographic order, with incremental pruning
for the crossing, parity and alternation constraints so that the even and
epsilon classes are generated directly rather than filtered out of ``P(k)``.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb

from .errors import SizeGuardError

__all__ = [
    "Partition",
    "Kind",
    "PartitionClass",
    "ALL",
    "NONCROSSING",
    "PAIRING",
    "NC_PAIRING",
    "EVEN",
    "NC_EVEN",
    "EPS",
    "NC_EPS",
    "ENUMERATION_CAP",
    "enumerate_partitions",
    "generate",
    "belongs",
    "is_noncrossing",
    "kernel",
    "leq",
    "join_full",
    "join_nc",
    "meet",
    "moebius_nc",
    "epsilon_d",
    "check_epsilon",
    "catalan",
    "count_chains",
    "pair_to_chain_count_check",
]

ENUMERATION_CAP = 14


class Partition:
    """
    A partition of ``[k]`` in canonical form.

    Parameters
    ----------
    blocks : iterable of iterables of int
        Disjoint non-empty subsets covering ``{1, ..., k}``, in any order.
    k : int, optional
        Ground size; inferred from the largest element when omitted.
    """

    __slots__ = ("k", "blocks", "_rgs", "_masks")

    def __init__(self, blocks, k=None):
        bl = [tuple(sorted(int(x) for x in b)) for b in blocks]
        if any(len(b) == 0 for b in bl):
            raise ValueError("partition blocks must be non-empty")
        bl.sort()
        elems = [x for b in bl for x in b]
        if k is None:
            k = max(elems) if elems else 0
        if k < 1:
            raise ValueError("ground size must be positive")
        if sorted(elems) != list(range(1, k + 1)):
            raise ValueError(f"blocks {bl} do not partition [1..{k}]")
        self.k = k
        self.blocks = tuple(bl)
        rgs = [0] * k
        for label, b in enumerate(self.blocks):
            for x in b:
                rgs[x - 1] = label
        self._rgs = tuple(rgs)
        self._masks = None

    @classmethod
    def from_rgs(cls, rgs):
        """Build from a restricted growth string (0-based block labels)."""
        groups = {}
        for pos, label in enumerate(rgs, start=1):
            groups.setdefault(label, []).append(pos)
        return cls(groups.values(), k=len(rgs))

    @classmethod
    def zero(cls, k):
        return cls([[i] for i in range(1, k + 1)], k)

    @classmethod
    def one(cls, k):
        return cls([range(1, k + 1)], k)

    @property
    def rgs(self):
        return self._rgs

    @property
    def masks(self):
        # block bitmasks, bit (x-1) for element x
        if self._masks is None:
            self._masks = tuple(sum(1 << (x - 1) for x in b) for b in self.blocks)
        return self._masks

    def block_of(self, x):
        return self.blocks[self._rgs[x - 1]]

    def block_sizes(self):
        return [len(b) for b in self.blocks]

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.k == other.k and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.k, self.blocks))

    def __lt__(self, other):
        return (self.k, self._rgs) < (other.k, other._rgs)

    def __repr__(self):
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return "{" + inner + "}"

    def to_json(self):
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json(cls, data, k=None):
        return cls(data, k)


class Kind(Enum):
    ALL = "all"
    NONCROSSING = "nc"
    PAIRING = "pairing"
    NC_PAIRING = "nc-pairing"
    EVEN = "even"
    NC_EVEN = "nc-even"
    EPS = "eps"
    NC_EPS = "nc-eps"


@dataclass(frozen=True)
class PartitionClass:
    kind: Kind
    eps: str = None

    def __post_init__(self):
        needs_eps = self.kind in (Kind.EPS, Kind.NC_EPS)
        if needs_eps:
            check_epsilon(self.eps)
        elif self.eps is not None:
            raise ValueError(f"{self.kind.value} takes no epsilon pattern")

    @property
    def noncrossing(self):
        return self.kind in (Kind.NONCROSSING, Kind.NC_PAIRING, Kind.NC_EVEN, Kind.NC_EPS)


ALL = PartitionClass(Kind.ALL)
NONCROSSING = PartitionClass(Kind.NONCROSSING)
PAIRING = PartitionClass(Kind.PAIRING)
NC_PAIRING = PartitionClass(Kind.NC_PAIRING)
EVEN = PartitionClass(Kind.EVEN)
NC_EVEN = PartitionClass(Kind.NC_EVEN)


def EPS(eps):
    return PartitionClass(Kind.EPS, "".join(eps))


def NC_EPS(eps):
    return PartitionClass(Kind.NC_EPS, "".join(eps))


def check_epsilon(eps):
    """Validate an epsilon pattern: a non-empty string over ``{"1", "*"}``."""
    if not isinstance(eps, str) or len(eps) == 0 or set(eps) - {"1", "*"}:
        raise ValueError(f"invalid epsilon pattern {eps!r}")
    return eps


def generate(k, *, noncrossing=False, even=False, pairing=False, eps=None, labels=None):
    """
    Yield restricted growth strings of partitions of ``[k]`` satisfying the
    given constraints, in lexicographic order.

    ``labels`` (a length-``k`` sequence) forces every block to be
    monochromatic; ``eps`` forces alternation of the pattern along each block
    and even block sizes.
    """
    if eps is not None:
        check_epsilon(eps)
        if len(eps) != k:
            raise ValueError("epsilon pattern length must equal k")
        even = True
    if labels is not None and len(labels) != k:
        raise ValueError("labels length must equal k")
    if (even or pairing) and k % 2:
        return

    blocks = []  # per block: [first, last, size]
    rgs = [0] * k

    def dead(bi):
        # a block can no longer grow without creating a crossing
        last = blocks[bi][1]
        for cj, c in enumerate(blocks):
            if cj != bi and c[0] < last < c[1]:
                return True
        return False

    def deficient(b):
        if pairing:
            return b[2] < 2
        return b[2] % 2 == 1

    def viable(t):
        remaining = k - t - 1
        if not (even or pairing):
            return True
        need = 0
        for bi, b in enumerate(blocks):
            if deficient(b):
                if noncrossing and dead(bi):
                    return False
                need += 1
        return need <= remaining

    def rec(t):
        if t == k:
            yield tuple(rgs)
            return
        for bi, b in enumerate(blocks):
            first, last, size = b
            if pairing and size >= 2:
                continue
            if labels is not None and labels[first] != labels[t]:
                continue
            if eps is not None and eps[last] == eps[t]:
                continue
            if noncrossing and any(cj != bi and c[0] < last < c[1] for cj, c in enumerate(blocks)):
                continue
            b[1] = t
            b[2] += 1
            rgs[t] = bi
            if viable(t):
                yield from rec(t + 1)
            b[1] = last
            b[2] = size
        blocks.append([t, t, 1])
        rgs[t] = len(blocks) - 1
        if viable(t):
            yield from rec(t + 1)
        blocks.pop()

    yield from rec(0)


def _generator_flags(cls):
    kind = cls.kind
    return dict(
        noncrossing=cls.noncrossing,
        even=kind in (Kind.EVEN, Kind.NC_EVEN),
        pairing=kind in (Kind.PAIRING, Kind.NC_PAIRING),
        eps=cls.eps,
    )


@lru_cache(maxsize=256)
def _enumerate_cached(k, cls):
    return tuple(Partition.from_rgs(r) for r in generate(k, **_generator_flags(cls)))


def enumerate_partitions(k, cls=NONCROSSING, cap=ENUMERATION_CAP):
    """
    All partitions of ``[k]`` in class ``cls``, canonical and in lexicographic
    order of their restricted growth strings.

    Raises :class:`SizeGuardError` when ``k`` exceeds ``cap``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > cap:
        raise SizeGuardError("k", k, cap)
    if cls.eps is not None and len(cls.eps) != k:
        raise ValueError("epsilon pattern length must equal k")
    return list(_enumerate_cached(k, cls))


def is_noncrossing(p):
    bl = p.blocks
    for a in range(len(bl)):
        for b in range(len(bl)):
            if a == b:
                continue
            V, W = bl[a], bl[b]
            # s1 < t1 < s2 < t2 with s in V, t in W
            for i in range(len(V)):
                for j in range(i + 1, len(V)):
                    s1, s2 = V[i], V[j]
                    inner = any(s1 < t < s2 for t in W)
                    outer = any(t > s2 for t in W)
                    if inner and outer:
                        return False
    return True


def belongs(p, cls):
    """Membership test for a partition class."""
    kind = cls.kind
    if cls.noncrossing and not is_noncrossing(p):
        return False
    sizes = p.block_sizes()
    if kind in (Kind.PAIRING, Kind.NC_PAIRING):
        return all(s == 2 for s in sizes)
    if kind in (Kind.EVEN, Kind.NC_EVEN):
        return all(s % 2 == 0 for s in sizes)
    if kind in (Kind.EPS, Kind.NC_EPS):
        if len(cls.eps) != p.k:
            return False
        for b in p.blocks:
            if len(b) % 2:
                return False
            pat = [cls.eps[x - 1] for x in b]
            if any(pat[i] == pat[i + 1] for i in range(len(pat) - 1)):
                return False
        return True
    return True


def kernel(index):
    """Partition whose blocks are the level sets of the multi-index."""
    index = list(index)
    if not index:
        raise ValueError("multi-index must be non-empty")
    seen = {}
    rgs = []
    for v in index:
        rgs.append(seen.setdefault(v, len(seen)))
    return Partition.from_rgs(rgs)


def _same_ground(p, q):
    if p.k != q.k:
        raise ValueError(f"ground sizes differ: {p.k} != {q.k}")


def leq(p, q):
    """True iff every block of ``p`` lies inside a block of ``q``."""
    _same_ground(p, q)
    return _leq(p, q)


def _leq(p, q):
    qr = q.rgs
    for b in p.blocks:
        label = qr[b[0] - 1]
        for x in b[1:]:
            if qr[x - 1] != label:
                return False
    return True


def join_full(p, q):
    """Least upper bound in the full partition lattice (union-find)."""
    _same_ground(p, q)
    parent = list(range(p.k + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (p, q):
        for b in part.blocks:
            root = find(b[0])
            for x in b[1:]:
                r = find(x)
                if r != root:
                    parent[r] = root
    groups = {}
    for x in range(1, p.k + 1):
        groups.setdefault(find(x), []).append(x)
    return Partition(groups.values(), p.k)


def _crossing(V, W):
    for i in range(len(V)):
        for j in range(i + 1, len(V)):
            s1, s2 = V[i], V[j]
            if any(s1 < t < s2 for t in W) and any(t < s1 or t > s2 for t in W):
                return True
    return False


def join_nc(p, q):
    """Least upper bound in ``NC(k)``: full join, then merge crossing blocks to a fixpoint."""
    _same_ground(p, q)
    if not (is_noncrossing(p) and is_noncrossing(q)):
        raise ValueError("join_nc requires non-crossing arguments")
    blocks = [list(b) for b in join_full(p, q).blocks]
    merged = True
    while merged:
        merged = False
        for a in range(len(blocks)):
            for b in range(a + 1, len(blocks)):
                if _crossing(blocks[a], blocks[b]):
                    blocks[a] = sorted(blocks[a] + blocks[b])
                    del blocks[b]
                    merged = True
                    break
            if merged:
                break
    return Partition(blocks, p.k)


def meet(p, q):
    """Common refinement: non-empty pairwise block intersections."""
    _same_ground(p, q)
    groups = {}
    for x in range(1, p.k + 1):
        groups.setdefault((p.rgs[x - 1], q.rgs[x - 1]), []).append(x)
    return Partition(groups.values(), p.k)


@lru_cache(maxsize=4096)
def _moebius_column(p):
    """Map ``t -> mu(t, p)`` for all non-crossing ``t <= p``."""
    below = [t for t in enumerate_partitions(p.k, NONCROSSING, cap=max(p.k, ENUMERATION_CAP))
             if _leq(t, p)]
    below.sort(key=len)  # coarse first; p itself has the fewest blocks
    mu = {}
    done = []
    for t in below:
        if t == p:
            mu[t] = 1
        else:
            mu[t] = -sum(mu[u] for u in done if len(u) < len(t) and _leq(t, u))
        done.append(t)
    return mu


def moebius_nc(s, p):
    """Moebius function of the lattice ``NC(k)`` on the interval ``[s, p]``."""
    _same_ground(s, p)
    if not (is_noncrossing(s) and is_noncrossing(p)):
        raise ValueError("moebius_nc requires non-crossing partitions")
    if not _leq(s, p):
        raise ValueError(f"{s} is not below {p}")
    return _moebius_column(p)[s]


def epsilon_d(d, m):
    """Pattern of ``2m`` alternating groups: ``d`` ones then ``d`` stars, repeated ``m`` times."""
    if d < 1 or m < 1:
        raise ValueError("d and m must be positive")
    return ("1" * d + "*" * d) * m


def catalan(k):
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return 1
    return comb(2 * k, k - 1) // k


def count_chains(m, d):
    """Number of ``d``-chains ``s_1 >= ... >= s_d`` in ``NC(m)``: the Fuss-Catalan number."""
    if m < 1 or d < 1:
        raise ValueError("m and d must be positive")
    n = comb(m * (d + 1), m - 1)
    assert n % m == 0
    return n // m


def pair_to_chain_count_check(d, m, cap=ENUMERATION_CAP):
    """Compare the number of epsilon_d-pairings of ``[2dm]`` with the chain count."""
    k = 2 * d * m
    if k > cap:
        raise SizeGuardError("2dm", k, cap)
    pairs = [p for p in enumerate_partitions(k, NC_EPS(epsilon_d(d, m)), cap)
             if all(s == 2 for s in p.block_sizes())]
    return len(pairs) == count_chains(m, d)
