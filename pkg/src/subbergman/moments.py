"""Weighted monomial moments over the unit disk.

Everything downstream (Gram matrices, operator sections, the analysis
map) reduces to integrals

    W[j, k] = integral over the disk of z^k conj(z)^j w(z) dA(z),

with normalized area measure (area of the disk = 1) and weight w equal to
1, |b|^2, or 1 - |b|^2.  For constant and polynomial symbols these moments
are evaluated in closed form; for Blaschke symbols a tensor-product polar
quadrature (spectrally exact here) takes over.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import symbols
from .errors import RuleTooCoarse, UnsupportedVariant
from .symbols import BlaschkeSymbol, ConstantSymbol, PolynomialSymbol, PolynomialVector, Symbol

__all__ = [
    "MomentMatrix",
    "QuadratureRule",
    "bergman_moment",
    "disk_monomial_integral",
    "weighted_moments_exact",
    "weighted_moments_quadrature",
    "weighted_moments",
    "delta_min",
    "bergman_norm",
]

WEIGHT_TAGS = ("plain", "mod_b_squared", "one_minus_mod_b_squared")


@dataclass(frozen=True, eq=False)
class MomentMatrix:
    """Hermitian matrix of weighted disk moments, W[j, k] = <z^k, z^j>_w."""

    weight_tag: str
    size: int
    entries: np.ndarray

    def __post_init__(self):
        if self.weight_tag not in WEIGHT_TAGS:
            raise ValueError(f"unknown weight tag {self.weight_tag!r}")
        arr = np.asarray(self.entries, dtype=complex)
        if arr.shape != (self.size, self.size):
            raise ValueError(f"entries shape {arr.shape} does not match size {self.size}")
        # exact Hermitian symmetry by construction
        arr = 0.5 * (arr + arr.conj().T)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def to_jsonable(self):
        """Row-major nested lists of [re, im] pairs plus metadata."""
        return {
            "weight_tag": self.weight_tag,
            "size": self.size,
            "entries": [[[v.real, v.imag] for v in row] for row in self.entries],
        }


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Tensor-product polar rule: radial nodes/weights on [0,1] (the 2t
    Jacobian of t dt dtheta folded into the weights) and an equispaced
    angular count."""

    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    angular_count: int

    def __post_init__(self):
        t = np.asarray(self.radial_nodes, dtype=float)
        w = np.asarray(self.radial_weights, dtype=float)
        if t.shape != w.shape or t.ndim != 1:
            raise ValueError("radial nodes and weights must be matching 1-D arrays")
        if np.any(w <= 0):
            raise ValueError("radial weights must be positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("radial weights must integrate 2t dt over [0,1] (sum to 1)")
        t.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "radial_nodes", t)
        object.__setattr__(self, "radial_weights", w)

    @classmethod
    def gauss_legendre(cls, n_radial: int, angular_count: int):
        """Gauss-Legendre rule mapped to [0,1] with the 2t Jacobian folded in."""
        x, w = np.polynomial.legendre.leggauss(n_radial)
        t = 0.5 * (x + 1.0)
        return cls(t, 0.5 * w * 2.0 * t, angular_count)

    @classmethod
    def default_for(cls, b: Symbol, size: int):
        """Rule adequate for size x size moments of the given symbol.

        Radial count covers the exact polynomial degree for polynomial
        symbols; Blaschke integrands are analytic past the closed disk, so
        fixed floors give spectral (machine-level) accuracy.
        """
        d = symbols.symbol_degree(b)
        if d is None:
            n_rad = max(96, size + 8)
            n_ang = max(4 * size, 512)
        else:
            n_rad = max(64, size + d + 4)
            n_ang = max(4 * size, 2 * (size + d) + 2)
        return cls.gauss_legendre(n_rad, n_ang)


def bergman_moment(j: int, k: int) -> float:
    """Unweighted moment <z^k, z^j> = delta_jk / (j + 1)."""
    if j < 0 or k < 0:
        raise ValueError("moment indices must be nonnegative")
    return 1.0 / (j + 1) if j == k else 0.0


def disk_monomial_integral(m: int, n: int, r: float) -> float:
    """Integral of z^m conj(z)^n over the disk of radius r (normalized area).

    Equals r^(2m+2) / (m+1) on the diagonal and vanishes otherwise.
    """
    if not 0 < r <= 1:
        raise ValueError("radius must lie in (0, 1]")
    if m < 0 or n < 0:
        raise ValueError("monomial exponents must be nonnegative")
    return r ** (2 * m + 2) / (m + 1) if m == n else 0.0


def _weight_values(b, tag, grid):
    if tag == "plain":
        return np.ones(grid.shape)
    mod2 = np.abs(symbols.evaluate(b, grid)) ** 2
    return mod2 if tag == "mod_b_squared" else 1.0 - mod2


def weighted_moments_exact(b: Symbol, size: int,
                           weight: str = "one_minus_mod_b_squared") -> MomentMatrix:
    """Closed-form moment matrix for a constant or polynomial symbol.

    For weight 1 - |b|^2 the entries are

        W[j, k] = delta_jk/(j+1) - sum_{m,n} h[m,n] * [k+m == j+n] / (k+m+1)

    with h = modulus_squared_coeffs(b); exact up to floating rounding.
    """
    if size < 1:
        raise ValueError("size must be positive")
    if weight not in WEIGHT_TAGS:
        raise ValueError(f"unknown weight tag {weight!r}")
    plain = np.diag(1.0 / np.arange(1, size + 1)).astype(complex)
    if weight == "plain":
        return MomentMatrix("plain", size, plain)
    if isinstance(b, BlaschkeSymbol):
        raise UnsupportedVariant("|b|^2 of a Blaschke product is not polynomial; "
                                 "use weighted_moments_quadrature")
    h = symbols.modulus_squared_coeffs(b)
    d = h.shape[0] - 1
    mod2 = np.zeros((size, size), dtype=complex)
    ks = np.arange(size)
    for m in range(d + 1):
        for n in range(d + 1):
            if h[m, n] == 0:
                continue
            js = ks + m - n
            ok = (js >= 0) & (js < size)
            mod2[js[ok], ks[ok]] += h[m, n] / (ks[ok] + m + 1)
    if weight == "mod_b_squared":
        return MomentMatrix("mod_b_squared", size, mod2)
    return MomentMatrix("one_minus_mod_b_squared", size, plain - mod2)


def weighted_moments_quadrature(b: Symbol, size: int, rule: QuadratureRule = None,
                                weight: str = "one_minus_mod_b_squared") -> MomentMatrix:
    """Moment matrix by tensor-product polar quadrature.

    Equispaced angular samples are exact for trigonometric polynomials up
    to the aliasing bound; the positive radial rule handles t^(j+k) times
    the weight profile.  Works for every symbol variant.
    """
    if size < 1:
        raise ValueError("size must be positive")
    if rule is None:
        rule = QuadratureRule.default_for(b, size)
    n_ang = rule.angular_count
    if n_ang < 2 * size:
        raise RuleTooCoarse(f"angular count {n_ang} < 2*size = {2 * size}")
    if len(rule.radial_nodes) < size:
        raise RuleTooCoarse(f"radial rule has {len(rule.radial_nodes)} < size = {size} nodes")
    theta = 2 * np.pi * np.arange(n_ang) / n_ang
    grid = rule.radial_nodes[:, None] * np.exp(1j * theta)[None, :]
    vals = _weight_values(b, weight, grid)
    # angular transform: fourier[q, f] = (1/K) sum_p vals[q, p] exp(+i f theta_p)
    fourier = np.conj(np.fft.fft(vals, axis=1)) / n_ang
    powers = rule.radial_nodes[None, :] ** (np.arange(2 * size - 1)[:, None] + 0.0)
    radial = powers * rule.radial_weights[None, :]          # (2N-1, Q)
    W = np.empty((size, size), dtype=complex)
    for j in range(size):
        for k in range(size):
            W[j, k] = radial[j + k] @ fourier[:, (k - j) % n_ang]
    return MomentMatrix(weight, size, W)


def weighted_moments(b: Symbol, size: int, weight: str = "one_minus_mod_b_squared",
                     rule: QuadratureRule = None) -> MomentMatrix:
    """Exact moments when the symbol allows it, quadrature otherwise."""
    if isinstance(b, BlaschkeSymbol) or rule is not None:
        return weighted_moments_quadrature(b, size, rule, weight)
    return weighted_moments_exact(b, size, weight)


def delta_min(b: Symbol, r: float, grid: int = 2048) -> float:
    """Minimum of 1 - |b|^2 over the closed disk of radius r < 1.

    By the maximum principle the minimum sits on |z| = r, so sampling
    concentrates on that circle, with sparse interior rings kept as a
    cross-check.
    """
    if not 0 < r < 1:
        raise ValueError("radius must lie in (0, 1)")
    if grid < 16:
        raise ValueError("grid must be at least 16")
    best = np.inf
    for frac, count in ((1.0, grid), (0.9, grid // 4), (0.7, grid // 4),
                        (0.4, grid // 4), (0.1, grid // 4)):
        theta = 2 * np.pi * np.arange(count) / count
        ring = frac * r * np.exp(1j * theta)
        best = min(best, float(np.min(1.0 - np.abs(symbols.evaluate(b, ring)) ** 2)))
    best = min(best, float(1.0 - abs(symbols.evaluate(b, 0.0)) ** 2))
    return best


def bergman_norm(f: PolynomialVector) -> float:
    """Norm of a polynomial against the plain normalized area measure,
    sqrt(sum |f_k|^2 / (k+1))."""
    c = np.asarray(f.coeffs)
    if c.size == 0:
        return 0.0
    return float(np.sqrt(np.sum(np.abs(c) ** 2 / np.arange(1, c.size + 1))))
