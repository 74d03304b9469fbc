"""
Strong Haagerup inequality, certified
=====================================

Exact L^{2m} norms of holomorphic polynomials in circular or Haar unitary
variables, compared with the constant-times-sqrt(d+1) bound on 2m-th powers.
"""

import random
from fractions import Fraction

from freehaagerup.cumulants import CIRCULAR, HAAR_UNITARY, FreeFamily
from freehaagerup.haagerup import (
    GradedPolynomial,
    HomPolynomial,
    RadialMultiplier,
    abc_estimates,
    character_norm_check,
    chebyshev_u,
    lp_norm_2m_pow,
    multiplier_apply,
    random_hom_polynomial,
    shi_certify,
)

rng = random.Random(11)
labels = ["x1", "x2", "x3"]

# the norm is computed twice: raw moment expansion and the restricted cumulant sum
T = random_hom_polynomial(rng, labels, 2, 4, complex_coeffs=True)
for name, spec in [("circular", CIRCULAR), ("haar", HAAR_UNITARY)]:
    fam = FreeFamily.iid(labels, spec)
    print(name, [str(lp_norm_2m_pow(T, fam, m)) for m in (1, 2, 3)])

cert = shi_certify(T, FreeFamily.iid(labels, CIRCULAR), 3)
print(cert.verdict, "lhs/rhs <=", float(cert.ratio))

# the three factors of the Holder bound and their closed forms
rep = abc_estimates(2, 2, T, FreeFamily.iid(labels, CIRCULAR))
print("A =", rep.A, " B =", rep.B, " C <=", float(rep.C.hi), " checks:", rep.checks)

# ||c^d||_{2m}^{2m} is a Fuss-Catalan number
for d in (1, 2, 3):
    r = character_norm_check(d, 6 // d)
    print(d, r["values"], r["passed"])

# Chebyshev polynomials of the second kind, T_d(2) = d + 1
print([chebyshev_u(d).coeffs for d in range(5)])

# a radial multiplier applied to a polynomial with two homogeneous parts
fam = FreeFamily.iid(labels, CIRCULAR)
G = GradedPolynomial.of(HomPolynomial(1, {("x1",): 1, ("x2",): -1}),
                        HomPolynomial(2, {("x1", "x3"): 2}))
out = multiplier_apply(G, RadialMultiplier.geometric(Fraction(1, 2), 4), fam, 2)
print(out.verdict, out.to_json()["K_sq"])
