"""
Moments from free cumulants
===========================
"""

from fractions import Fraction

from freehaagerup.cumulants import (
    CIRCULAR,
    HAAR_UNITARY,
    SEMICIRCULAR,
    FreeFamily,
    cumulant_from_moments,
    custom_spec,
    moment,
    parse_word,
)
from freehaagerup.freegroup import haar_oracle_check

fam = FreeFamily({"s": SEMICIRCULAR, "c": CIRCULAR, "u": HAAR_UNITARY, "v": HAAR_UNITARY})

# semicircular: even moments are Catalan numbers
print([moment(fam, parse_word(" ".join(["s"] * n))) for n in range(1, 11)])

# circular: only the alternating pairings survive
for w in ["c c*", "c c* c c*", "c* c c* c", "c c c* c*", "c c* c* c"]:
    print(f"{w:12s}", moment(fam, parse_word(w)))

# two free Haar unitaries: the trace is 1 exactly on words reducing to e
for w in ["u v u* v*", "u v v* u*", "u u* v u v* u*"]:
    print(f"{w:16s}", moment(fam, parse_word(w)))

# a hand-made distribution, and back again by Moebius inversion
x = custom_spec({"1": Fraction(1, 2), "11": 2, "111": -1}, 3)
one = FreeFamily({"x": x})
oracle = lambda w: moment(one, w)
print([str(moment(one, parse_word(" ".join(["x"] * n)))) for n in range(1, 4)])
print([str(cumulant_from_moments(oracle, parse_word(" ".join(["x"] * n)))) for n in range(1, 4)])

# every *-word of length <= 8 in two Haar unitaries, checked against the free group
print(haar_oracle_check(8))
