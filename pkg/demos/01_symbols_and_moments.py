# Symbols and weighted disk moments
# ---------------------------------
# A symbol is a contractive analytic function b on the unit disk, entered
# through a small text grammar.  Every computation in the package reduces
# to moments  W[j,k] = ∫ z^k conj(z)^j (1-|b|^2) dA  against normalized
# area measure; this script shows the three symbol variants and the exact
# vs quadrature moment routes agreeing.

import numpy as np

from subbergman import (delta_min, evaluate, parse_symbol, sup_norm_estimate,
                        weighted_moments_exact, weighted_moments_quadrature,
                        weighted_moments)

# the three variants: constant, polynomial, finite Blaschke product
for text in ("const:0.6", "poly:0.5,0.5", "blaschke:0.5;0.3-0.2i|1"):
    b = parse_symbol(text)
    print(f"{text:28s} b(0.2) = {evaluate(b, 0.2):.6f}   sup|b| = {sup_norm_estimate(b):.6f}")

print()

# exact moments for b(z) = z: the weight 1-|z|^2 makes the Gram diagonal
# with entries 1/(k+1) - 1/(k+2)
b = parse_symbol("poly:0,1")
W = weighted_moments_exact(b, 4)
print("weighted moments for b = z (diagonal 1/(k+1) - 1/(k+2)):")
print(np.array_str(W.entries.real, precision=6, suppress_small=True))
print()

# quadrature agrees with the closed form to machine precision
quad = weighted_moments_quadrature(b, 4)
print("max |exact - quadrature| =", np.max(np.abs(W.entries - quad.entries)))
print()

# Blaschke symbols have no polynomial |b|^2; the dispatcher routes them to
# quadrature automatically.  The Gram stays Hermitian positive definite.
bl = parse_symbol("blaschke:0.5")
Wb = weighted_moments(bl, 6)
print("Blaschke Gram: min eigenvalue =", np.linalg.eigvalsh(Wb.entries).min())
print()

# the weight minimum on a closed sub-disk (enters the distance bounds):
# for the single zero 0.5 the minimum over |z| <= 1/2 is 1 - 0.8^2 = 0.36
print("delta_min(blaschke:0.5, r=1/2) =", delta_min(bl, 0.5))
