"""
Non-crossing partitions
=======================

Counting, the lattice structure and the Moebius function.
"""

from freehaagerup.partitions import (
    NC_EPS,
    NC_EVEN,
    NONCROSSING,
    Partition,
    catalan,
    count_chains,
    enumerate_partitions,
    epsilon_d,
    join_full,
    join_nc,
    moebius_nc,
)

# NC(k) is counted by the Catalan numbers
for k in range(1, 9):
    print(k, len(enumerate_partitions(k, NONCROSSING)), catalan(k))

# even non-crossing partitions of [2k] index the Weingarten basis
print([len(enumerate_partitions(2 * k, NC_EVEN)) for k in range(1, 6)])
print([count_chains(k, 2) for k in range(1, 6)])

# joins: the non-crossing join can be strictly coarser than the usual one
p = Partition([[1, 3], [2], [4]])
q = Partition([[1], [2, 4], [3]])
print("full join:", join_full(p, q), " nc join:", join_nc(p, q))

# mu(0_k, 1_k) alternates through signed Catalan numbers
print([moebius_nc(Partition.zero(k), Partition.one(k)) for k in range(1, 9)])

# partitions compatible with the exponent pattern of (T T^*)^m
d, m = 2, 2
eps = epsilon_d(d, m)
parts = enumerate_partitions(2 * d * m, NC_EPS(eps))
pairings = [p for p in parts if set(p.block_sizes()) == {2}]
print(eps, len(parts), "partitions,", len(pairings), "pairings, chains:", count_chains(m, d))
for p in pairings:
    print("  ", p)
