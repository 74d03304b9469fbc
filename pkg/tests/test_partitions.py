from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from freehaagerup.errors import SizeGuardError
from freehaagerup.partitions import (
    ALL,
    EPS,
    EVEN,
    NC_EPS,
    NC_EVEN,
    NC_PAIRING,
    NONCROSSING,
    PAIRING,
    Partition,
    belongs,
    catalan,
    count_chains,
    enumerate_partitions,
    epsilon_d,
    is_noncrossing,
    join_full,
    join_nc,
    kernel,
    leq,
    meet,
    moebius_nc,
    pair_to_chain_count_check,
)


def all_set_partitions(k):
    # Independent oracle: insert element x into an existing block or a new one.
    def rec(x, blocks):
        if x > k:
            yield Partition([list(b) for b in blocks], k)
            return
        for b in blocks:
            b.append(x)
            yield from rec(x + 1, blocks)
            b.pop()
        blocks.append([x])
        yield from rec(x + 1, blocks)
        blocks.pop()

    return list(rec(1, []))


def crosses(p):
    lab = p.rgs
    for a, b, c, d in combinations(range(p.k), 4):
        if lab[a] == lab[c] and lab[b] == lab[d] and lab[a] != lab[b]:
            return True
    return False


def alternates(p, eps):
    for b in p.blocks:
        if len(b) % 2:
            return False
        if any(eps[b[i] - 1] == eps[b[i + 1] - 1] for i in range(len(b) - 1)):
            return False
    return True


BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


@pytest.mark.parametrize("k", range(1, 9))
def test_all_partitions_match_bell_and_oracle(k):
    got = enumerate_partitions(k, ALL)
    assert len(got) == BELL[k]
    assert set(got) == set(all_set_partitions(k))
    assert [p.rgs for p in got] == sorted(p.rgs for p in got)


@pytest.mark.parametrize("k", range(1, 9))
def test_classes_match_filtered_oracle(k):
    oracle = all_set_partitions(k)
    nc = {p for p in oracle if not crosses(p)}
    assert set(enumerate_partitions(k, NONCROSSING)) == nc
    pair = {p for p in oracle if all(s == 2 for s in p.block_sizes())}
    even = {p for p in oracle if all(s % 2 == 0 for s in p.block_sizes())}
    assert set(enumerate_partitions(k, PAIRING)) == pair
    assert set(enumerate_partitions(k, NC_PAIRING)) == pair & nc
    assert set(enumerate_partitions(k, EVEN)) == even
    assert set(enumerate_partitions(k, NC_EVEN)) == even & nc


@pytest.mark.parametrize("eps", ["1*", "11**", "1*1*", "1**1", "111***", "1*1*1*", "11**11**", "1*1**1*1"])
def test_epsilon_classes(eps):
    k = len(eps)
    oracle = all_set_partitions(k)
    want = {p for p in oracle if alternates(p, eps)}
    assert set(enumerate_partitions(k, EPS(eps))) == want
    assert set(enumerate_partitions(k, NC_EPS(eps))) == {p for p in want if not crosses(p)}
    for p in want:
        assert belongs(p, EPS(eps))


def test_is_noncrossing_matches_definition():
    for k in range(1, 8):
        for p in all_set_partitions(k):
            assert is_noncrossing(p) == (not crosses(p))


def test_catalan_and_chains():
    assert [catalan(k) for k in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    for m in range(1, 7):
        assert count_chains(m, 1) == catalan(m)
        for d in range(1, 5):
            assert count_chains(m, d) * m == comb(m * (d + 1), m - 1)


def test_chains_count_nc_chains_directly():
    # d-chains s_1 >= ... >= s_d in NC(m), counted by brute force.
    for m in range(1, 5):
        nc = enumerate_partitions(m, NONCROSSING)
        for d in range(1, 4):
            chains = [[p] for p in nc]
            for _ in range(d - 1):
                chains = [c + [q] for c in chains for q in nc if leq(q, c[-1])]
            assert len(chains) == count_chains(m, d)


@pytest.mark.parametrize("d,m", [(1, 1), (1, 3), (2, 2), (3, 1), (2, 3), (3, 2), (6, 1)])
def test_pair_to_chain(d, m):
    assert pair_to_chain_count_check(d, m)


def test_epsilon_d_pattern():
    assert epsilon_d(2, 2) == "11**11**"
    assert epsilon_d(1, 3) == "1*1*1*"
    with pytest.raises(ValueError):
        epsilon_d(0, 1)


def test_kernel():
    assert kernel("abab") == Partition([[1, 3], [2, 4]])
    assert kernel([5, 5, 5]) == Partition.one(3)
    assert kernel((1, 2, 3)) == Partition.zero(3)


def test_json_roundtrip():
    p = Partition([[1, 4], [2, 3], [5]])
    assert p.to_json() == [[1, 4], [2, 3], [5]]
    assert Partition.from_json(p.to_json()) == p
    assert Partition.from_json([[2], [1]], k=2) == Partition.zero(2)


def test_invalid_partitions():
    with pytest.raises(ValueError):
        Partition([[1, 2], [2, 3]])
    with pytest.raises(ValueError):
        Partition([[1], [3]])
    with pytest.raises(ValueError):
        Partition([[1], []])
    with pytest.raises(ValueError):
        leq(Partition.zero(2), Partition.zero(3))
    with pytest.raises(ValueError):
        EPS("1x")


def test_size_guard():
    with pytest.raises(SizeGuardError):
        enumerate_partitions(15, NONCROSSING)
    with pytest.raises(ValueError):
        enumerate_partitions(4, NC_EPS("1*"))


def test_join_nc_differs_from_full_join():
    p = Partition([[1, 3], [2], [4]])
    q = Partition([[1], [2, 4], [3]])
    assert join_full(p, q) == Partition([[1, 3], [2, 4]])
    assert join_nc(p, q) == Partition.one(4)
    with pytest.raises(ValueError):
        join_nc(Partition([[1, 3], [2, 4]]), p)


def test_moebius_small_values():
    for k in range(1, 9):
        assert moebius_nc(Partition.zero(k), Partition.one(k)) == (-1) ** (k - 1) * catalan(k - 1)
    with pytest.raises(ValueError):
        moebius_nc(Partition.one(3), Partition.zero(3))


def test_moebius_factorizes_over_blocks():
    # mu(0, p) is the product of mu(0_|V|, 1_|V|) over the blocks V of p.
    for k in range(1, 8):
        for p in enumerate_partitions(k, NONCROSSING):
            want = 1
            for b in p.blocks:
                n = len(b)
                want *= (-1) ** (n - 1) * catalan(n - 1)
            assert moebius_nc(Partition.zero(k), p) == want


partitions_st = st.integers(1, 7).flatmap(
    lambda k: st.lists(st.integers(0, k - 1), min_size=k, max_size=k).map(kernel))


@st.composite
def nc_pair(draw):
    k = draw(st.integers(1, 7))
    nc = enumerate_partitions(k, NONCROSSING)
    return draw(st.sampled_from(nc)), draw(st.sampled_from(nc)), draw(st.sampled_from(nc))


@given(st.data())
@settings(max_examples=200)
def test_lattice_axioms_full(data):
    k = data.draw(st.integers(1, 7))
    idx = st.lists(st.integers(0, k - 1), min_size=k, max_size=k).map(kernel)
    p, q, r = data.draw(idx), data.draw(idx), data.draw(idx)
    j, mt = join_full(p, q), meet(p, q)
    assert leq(p, j) and leq(q, j) and leq(mt, p) and leq(mt, q)
    assert join_full(p, q) == join_full(q, p) and meet(p, q) == meet(q, p)
    assert join_full(p, meet(p, q)) == p and meet(p, join_full(p, q)) == p
    assert join_full(join_full(p, q), r) == join_full(p, join_full(q, r))
    if leq(p, r) and leq(q, r):
        assert leq(j, r)
    if leq(r, p) and leq(r, q):
        assert leq(r, mt)


@given(nc_pair())
@settings(max_examples=200)
def test_join_nc_is_least_nc_upper_bound(triple):
    p, q, r = triple
    j = join_nc(p, q)
    assert is_noncrossing(j) and leq(p, j) and leq(q, j)
    assert leq(join_full(p, q), j)
    if leq(p, r) and leq(q, r):
        assert leq(j, r)
    assert is_noncrossing(meet(p, q))


@given(nc_pair())
@settings(max_examples=200)
def test_moebius_defining_identity(triple):
    s, _, p = triple
    if not leq(s, p):
        s = meet(s, p)
    nc = enumerate_partitions(s.k, NONCROSSING)
    total = sum(moebius_nc(s, t) for t in nc if leq(s, t) and leq(t, p))
    assert total == (1 if s == p else 0)
    dual = sum(moebius_nc(t, p) for t in nc if leq(s, t) and leq(t, p))
    assert dual == (1 if s == p else 0)


@given(partitions_st)
def test_rgs_roundtrip(p):
    assert Partition.from_rgs(p.rgs) == p
    assert Partition.from_json(p.to_json(), k=p.k) == p
    assert kernel(p.rgs) == p
