# Defect operator sections and range-space norms
# -----------------------------------------------
# The two sub-Bergman spaces attached to b are the ranges of the square
# roots of the defect operators I - T_b T_conj(b) and I - T_conj(b) T_b.
# Their finite sections are assembled from exact entry formulas, and the
# induced norms come from pseudo-inverse quadratic forms.  For b(z) = z
# everything is explicitly diagonal, which makes a sharp correctness demo.

import numpy as np

from subbergman import (PolynomialVector, defect_b, defect_bbar, min_eigenvalue,
                        parse_symbol, psd_sqrt, range_norm, toeplitz_analytic)

b = parse_symbol("poly:0,1")          # b(z) = z
N = 8

print("Toeplitz section of multiplication by z (subdiagonal sqrt((k+1)/(k+2))):")
print(np.array_str(toeplitz_analytic(b, 4).entries.real, precision=6, suppress_small=True))
print()

Qb = defect_b(b, N)
Qbb = defect_bbar(b, N)
print("defect_b diagonal   (expect 1/(k+1)):", np.diag(Qb.entries).real.round(6))
print("defect_bbar diagonal (expect 1/(k+2)):", np.diag(Qbb.entries).real.round(6))
print()

# both sections are PSD contractions, and their difference is PSD as well
print("spectra in [0,1]: ",
      min_eigenvalue(Qb) >= -1e-12, np.linalg.eigvalsh(Qb.entries).max() <= 1 + 1e-12)
print("operator inequality, min eig of (defect_b - defect_bbar):",
      min_eigenvalue(Qb.entries - Qbb.entries))
print()

# range-space norms: for b = z the b-space norm is the Hardy norm
# (sum |f_k|^2)^(1/2) and the bbar norm of z^k is sqrt((k+2)/(k+1))
fac_b, fac_bb = psd_sqrt(Qb), psd_sqrt(Qbb)
print(" k   ||z^k||_b   ||z^k||_bbar   sqrt((k+2)/(k+1))")
for k in range(5):
    f = PolynomialVector.monomial(k)
    print(f" {k}   {range_norm(fac_b, f).norm:.8f}  {range_norm(fac_bb, f).norm:.8f}"
          f"    {np.sqrt((k + 2) / (k + 1)):.8f}")
print()

# a constant symbol c just rescales the plain Bergman norm by 1/sqrt(1-|c|^2)
c = parse_symbol("const:0.6")
f = PolynomialVector([1.0, 2.0, 0.5j])
got = range_norm(defect_b(c, 16), f).norm
plain = range_norm(np.eye(16), f).norm
print("constant symbol rescaling: ", got, "=", plain, "/ 0.8 =", plain / 0.8)
