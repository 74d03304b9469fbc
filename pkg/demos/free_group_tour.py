"""
Haagerup inequalities on the free group
=======================================
"""

import random
from fractions import Fraction

from freehaagerup.freegroup import GroupFunction, haagerup_check, trace_norm_2m_pow, words_of_length

# walks on the line: tau((u + u^*)^(2m)) are central binomial coefficients
f = GroupFunction({(1,): 1, (-1,): 1})
print([str(trace_norm_2m_pow(f, m)) for m in range(1, 6)])

# characteristic function of the sphere of radius d in F_2
for d in (1, 2, 3):
    chi = GroupFunction({w: 1 for w in words_of_length(d, 2)})
    rep = haagerup_check(chi, d, 2)
    print(d, len(chi.values), rep.lhs_pow, rep.classical_bound, rep.classical_pass)

# positive words only: the sqrt(e (d+1)) bound applies
rng = random.Random(2)
for d in (2, 3, 4):
    pool = words_of_length(d, 2, semigroup=True)
    f = GroupFunction({w: Fraction(rng.randint(1, 5), rng.randint(1, 3)) for w in rng.sample(pool, min(6, len(pool)))})
    rep = haagerup_check(f, d, 3, semigroup=True)
    print(d, rep.strong_pass, float(rep.lhs_pow / rep.strong_bound.lo))
