# The analysis map, its isometry, and the kernel factorization
# -------------------------------------------------------------
# S_b g = P((1-|b|^2) g) maps the weighted polynomial space isometrically
# onto the bbar range space: the weighted norm of g equals the range-space
# norm of S_b g.  Pointwise, (S_b q)(w) is the weighted pairing of q with
# the Bergman kernel at w; the package verifies that identity through two
# routes that share no intermediate arithmetic.

import numpy as np

from subbergman import (PolynomialVector, apply_sb, defect_bbar, gram_Ab2, kernel_eval,
                        norm_Ab2, parse_symbol, pointwise_identity_check, range_norm,
                        sb_preimage)

b = parse_symbol("poly:0.5,0.5")
rng = np.random.default_rng(42)

# the isometry at work on a random polynomial
g = PolynomialVector(rng.uniform(size=9) + 1j * rng.uniform(size=9))
N = g.degree + 1 + 24
p = apply_sb(b, g, out_degree=N - 1)
lhs = range_norm(defect_bbar(b, N), p).norm
rhs = norm_Ab2(g, gram_Ab2(b, g.degree + 1))
print("||S_b g|| in the range space :", lhs)
print("||g|| in the weighted space  :", rhs)
print("relative gap                 :", abs(lhs - rhs) / rhs)
print()

# the kernel at the origin is constant 1; at w = z = 1/2 it is 16/9
print("kernel at (0, z) =", kernel_eval(0.0, 0.3 + 0.2j), "  at (1/2, 1/2) =",
      kernel_eval(0.5, 0.5))

# pointwise factorization through the kernel, checked by independent quadrature
q = PolynomialVector([0.3, 0.7j, 0.2])
for w in (0.0, 0.4 - 0.2j, 0.6j):
    print(f"pointwise identity gap at w = {w}: {pointwise_identity_check(b, q, w, 12):.3e}")
print()

# the map is invertible in the least-squares sense; for b = z it acts
# diagonally, sending z^k to z^k/(k+2)
bz = parse_symbol("poly:0,1")
f = PolynomialVector.monomial(3, 1 / 5)
g_back = sb_preimage(bz, f, 12)
print("preimage of z^3/5 under S_z (expect the unit coefficient at z^3):")
print(g_back.coeffs.round(12))
