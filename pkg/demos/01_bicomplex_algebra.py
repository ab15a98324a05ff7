"""
Bicomplex numbers in two coordinate systems
===========================================

A bicomplex number is stored as z1 + j z2 with z1, z2 ordinary complex numbers.
The same number has idempotent coordinates (l1, l2) in which products,
inverses and norms act one slot at a time.
"""

import math

import numpy as np

from bcmvn.algebra import E1, E2, K, Bicomplex, bc_mul_cartesian, format_bicomplex, hyp_leq, parse_bicomplex

# Parse a value from text and look at both coordinate systems.
Z = parse_bicomplex("1 + 2i - j + 0.5k")
W = parse_bicomplex("-3 + i + 2j")
print("Z =", format_bicomplex(Z))
print("idempotent parts of Z:", Z.idempotent)

# Products: slotwise in idempotent form, the four-term rule in cartesian form.
print("Z W (idempotent) =", format_bicomplex(Z * W))
print("Z W (cartesian)  =", format_bicomplex(bc_mul_cartesian(Z, W)))

# e1 and e2 split the algebra: e1 e2 = 0, e1 + e2 = 1, and k = e1 - e2.
print("e1 e2 =", format_bicomplex(E1 * E2))
print("e1 - e2 == k:", (E1 - E2).isclose(K))

# Zero divisors: anything on the e1 or e2 axis has no inverse.
try:
    E1.inverse()
except ArithmeticError as exc:
    print("e1 has no inverse:", exc)

# Three conjugations. bar conjugates the coefficients, dagger flips j,
# star does both and leaves the idempotent slots in place.
for name in ("bar", "dagger", "star"):
    print(f"{name:>6}(e1) =", format_bicomplex(getattr(E1, name)()))

# The euclidean norm is submultiplicative only up to sqrt(2); e1 is the extreme case.
print("|e1 e1| / |e1|^2 =", (E1 * E1).norm() / E1.norm() ** 2, "vs sqrt 2 =", math.sqrt(2))

# The hyperbolic norm |l1| e1 + |l2| e2 is multiplicative.
hZ, hW, hZW = Z.d_norm(), W.d_norm(), (Z * W).d_norm()
print("hyperbolic norm of ZW:", (hZW.s, hZW.t), "product of norms:", ((hZ * hW).s, (hZ * hW).t))

# Hyperbolic numbers carry a partial order; e1 and e2 cannot be compared.
a, b = E1.d_norm(), E2.d_norm()
print("e1 <= e2:", bool(hyp_leq(a, b)), " e2 <= e1:", bool(hyp_leq(b, a)))

# Arrays work elementwise.
rng = np.random.default_rng(0)
batch = Bicomplex(rng.normal(size=5) + 1j * rng.normal(size=5), rng.normal(size=5) + 1j * rng.normal(size=5))
print("batched norms:", np.round(batch.norm(), 4))
