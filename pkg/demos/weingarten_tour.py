"""
Hyperoctahedral Weingarten calculus
===================================
"""

from freehaagerup.errors import GramSingularError
from freehaagerup.weingarten import gram, haar_moment, weingarten

W = weingarten(4, 2)
for p, row in zip(W.basis, W.entries):
    print(f"{str(p):14s}", [str(x) for x in row])

# second moments: h(u_ij u_kl) = delta_ik delta_jl / n
print(haar_moment(5, (1, 1), (2, 2)), haar_moment(5, (1, 2), (2, 2)))

# fourth moments of a single coordinate for growing n
for n in range(3, 9):
    print(n, haar_moment(n, (1, 1, 1, 1), (1, 1, 1, 1)))

# small n can make the Gram matrix singular
for n, k in [(1, 2), (2, 3), (3, 3)]:
    try:
        weingarten(n, k)
        print(n, k, "invertible, size", len(gram(n, k).basis))
    except GramSingularError as exc:
        print(n, k, exc)
