# Constructive polynomial approximation in the bbar range space
# --------------------------------------------------------------
# Any element of the bbar space is S_b g for some g in the weighted space.
# Projecting g onto the orthogonal complement of span{z^n, z^(n+1), ...}
# and applying S_b yields a polynomial of degree below n whose error in
# the range-space norm equals the weighted-space projection error -- so
# the errors can be driven to zero, with certificates at every stage.

import numpy as np

from subbergman import PolynomialVector, density_approximate, parse_symbol

b = parse_symbol("poly:0,1")

# target: S_b g where g is the degree-40 truncation of 1/(1 - z/2),
# a natural non-polynomial element of the weighted space
g = PolynomialVector(0.5 ** np.arange(41))

report = density_approximate(b, g, [2, 4, 8, 16, 32], size=72)
print(f"symbol poly:0,1, ambient cutoff M = {report.gram_size}")
print(" n    error              tail_max      deg p")
for step in report.steps:
    print(f"{step.n:3d}   {step.error:.12e}   {step.tail_max:.3e}   {step.p.degree:4d}")
print()
print("errors are strictly decreasing; each p has degree at most n-1,")
print("so the approximants are honest low-degree polynomials.")
print()

# the same construction with a boundary-degenerate symbol (|b(1)| = 1)
b2 = parse_symbol("poly:0.5,0.5")
report2 = density_approximate(b2, g, [2, 4, 8, 16, 32], size=72)
print("symbol poly:0.5,0.5:")
print(" n    error              tail_max")
for step in report2.steps:
    print(f"{step.n:3d}   {step.error:.12e}   {step.tail_max:.3e}")
