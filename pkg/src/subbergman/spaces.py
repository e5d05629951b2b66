"""Weighted polynomial space, analysis map, and constructive approximation.

The weighted space carries the inner product <f, g> = integral of
f conj(g) (1 - |b|^2) dA; its Gram matrix in the monomial basis is the
one_minus_mod_b_squared moment matrix.  The analysis map

    S_b g = P((1 - |b|^2) g)        (P = Bergman projection)

sends that space isometrically onto the range space of defect_bbar^(1/2),
and composing a Gram-orthogonal projection with S_b yields polynomial
approximants of controlled degree.  density_approximate packages that
construction; sb_preimage inverts S_b in the least-squares sense.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg
from numpy.polynomial import polynomial as npoly

from . import moments, operators, symbols
from .errors import DimensionMismatch, IllConditioned, SingularGram
from .moments import MomentMatrix, QuadratureRule
from .operators import PsdFactorization
from .symbols import PolynomialVector, Symbol

__all__ = [
    "WeightedGram",
    "ApproximationStep",
    "ApproximationReport",
    "gram_Ab2",
    "norm_Ab2",
    "sb_matrix",
    "apply_sb",
    "kernel_eval",
    "kernel_coeffs",
    "pointwise_identity_check",
    "project_onto_Mn_perp",
    "density_approximate",
    "sb_preimage",
]

#: Output-degree padding used where a Blaschke symbol makes S_b output
#: formally infinite; the discarded coefficients decay geometrically.
BLASCHKE_DEGREE_PAD = 32


class WeightedGram:
    """Gram matrix G[j, k] = <z^k, z^j> of the weighted space, with a
    cached PSD factorization for repeated solves."""

    def __init__(self, symbol: Symbol, gram: MomentMatrix):
        if gram.weight_tag != "one_minus_mod_b_squared":
            raise ValueError("WeightedGram needs the one_minus_mod_b_squared weight")
        self.symbol = symbol
        self.moments = gram

    @property
    def matrix(self) -> np.ndarray:
        return self.moments.entries

    @property
    def size(self) -> int:
        return self.moments.size

    @cached_property
    def factorization(self) -> PsdFactorization:
        return operators.psd_sqrt(self.matrix)


def gram_Ab2(b: Symbol, size: int, rule: QuadratureRule = None) -> WeightedGram:
    """Weighted Gram of order `size` (exact moments when possible)."""
    return WeightedGram(b, moments.weighted_moments(b, size, rule=rule))


def norm_Ab2(g: PolynomialVector, gram: WeightedGram) -> float:
    """Weighted norm (g* G g)^(1/2) of a polynomial of degree < gram.size."""
    if g.degree >= gram.size:
        raise DimensionMismatch(f"degree {g.degree} exceeds Gram size {gram.size}")
    v = g.padded(gram.size)
    return float(np.sqrt(max(np.real(v.conj() @ gram.matrix @ v), 0.0)))


def _output_pad(b: Symbol) -> int:
    d = symbols.symbol_degree(b)
    return BLASCHKE_DEGREE_PAD if d is None else d


def sb_matrix(b: Symbol, size: int, rows: int = None) -> np.ndarray:
    """Matrix of the analysis map on monomial coefficients.

    S[j, i] = (j+1) * W[j, i] maps coefficients of g (degree < size) to
    Taylor coefficients of S_b g.  Rows default to size + deg b, the exact
    output range for polynomial symbols; for Blaschke symbols the row
    count is a truncation choice.
    """
    if rows is None:
        rows = size + _output_pad(b)
    W = moments.weighted_moments(b, max(rows, size)).entries
    return np.arange(1.0, rows + 1.0)[:, None] * W[:rows, :size]


def apply_sb(b: Symbol, g: PolynomialVector, out_degree: int = None) -> PolynomialVector:
    """Image of a polynomial under the analysis map.

    Coefficient j of the output is (j+1) <(1-|b|^2) g, z^j>.  For constant
    and polynomial symbols the exact output degree is deg g + deg b; for
    Blaschke symbols the expansion is infinite and is truncated at
    `out_degree` (default deg g + 32).
    """
    if g.is_zero():
        return PolynomialVector.zero()
    if out_degree is None:
        out_degree = g.degree + _output_pad(b)
    cols = g.degree + 1
    S = sb_matrix(b, cols, rows=out_degree + 1)
    return PolynomialVector(S @ g.coeffs)


def kernel_eval(w: complex, z: complex):
    """Reproducing kernel of the plain Bergman space, 1 / (1 - conj(w) z)^2."""
    if abs(w) >= 1:
        raise ValueError("kernel point must lie strictly inside the disk")
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1 + 1e-12):
        raise ValueError("evaluation point must lie in the closed disk")
    out = 1.0 / (1.0 - np.conj(w) * z) ** 2
    return out if out.ndim else complex(out)


def kernel_coeffs(w: complex, degree: int) -> np.ndarray:
    """Taylor coefficients (j+1) conj(w)^j, j = 0..degree, of the kernel at w."""
    j = np.arange(degree + 1)
    return (j + 1.0) * np.conj(w) ** j


def pointwise_identity_check(b: Symbol, q: PolynomialVector, w: complex,
                             size: int) -> float:
    """Gap between the two evaluation routes for (S_b q)(w).

    Route one expands S_b q in Taylor coefficients and evaluates at w;
    route two pairs q against the degree-truncated kernel directly by
    polar quadrature of the weighted integral.  The routes share no
    intermediate arithmetic, so the gap bounds the moment machinery's
    consistency (up to the kernel truncation tail, geometric in |w|).
    """
    if abs(w) > 0.9:
        raise ValueError("kernel point must satisfy |w| <= 0.9 for a benign truncation tail")
    if q.degree >= size:
        raise DimensionMismatch(f"degree {q.degree} exceeds the ambient cutoff {size}")
    pad = _output_pad(b)
    trunc = size + pad
    lhs = apply_sb(b, q, out_degree=trunc)(w)

    n_rad = max(64, (trunc + max(q.degree, 0)) // 2 + pad + 8)
    n_ang = 2 * (trunc + max(q.degree, 0) + 2 * pad) + 16
    rule = QuadratureRule.gauss_legendre(n_rad, n_ang)
    theta = 2 * np.pi * np.arange(n_ang) / n_ang
    grid = rule.radial_nodes[:, None] * np.exp(1j * theta)[None, :]
    weight = 1.0 - np.abs(symbols.evaluate(b, grid)) ** 2
    integrand = q(grid) * np.conj(npoly.polyval(grid, kernel_coeffs(w, trunc))) * weight
    rhs = complex(rule.radial_weights @ integrand.mean(axis=1))
    return abs(lhs - rhs)


def project_onto_Mn_perp(g: PolynomialVector, n: int, gram: WeightedGram) -> PolynomialVector:
    """Component of g orthogonal (in the weighted inner product) to the
    span of z^n .. z^(M-1), M = gram.size.

    Solves the trailing Gram subsystem with two steps of iterative
    refinement, so <h, z^k> vanishes to machine level for n <= k < M.
    With n = 0 the span is everything and h = 0.
    """
    M = gram.size
    if g.degree >= M:
        raise DimensionMismatch(f"degree {g.degree} exceeds Gram size {M}")
    if not 0 <= n <= M:
        raise ValueError(f"projection index n={n} outside [0, {M}]")
    if n == 0:
        return PolynomialVector.zero()
    gp = g.padded(M)
    if n == M:
        return PolynomialVector(gp)
    G = gram.matrix
    A = G[n:, n:]
    rhs = G[n:, :] @ gp
    try:
        factor = scipy.linalg.cho_factor(A)
        x = scipy.linalg.cho_solve(factor, rhs)
        for _ in range(2):
            x += scipy.linalg.cho_solve(factor, rhs - A @ x)
    except np.linalg.LinAlgError as exc:
        raise SingularGram(f"trailing Gram block of order {M - n} is not positive "
                           f"definite at working precision: {exc}") from exc
    h = gp.copy()
    h[n:] -= x
    return PolynomialVector(h)


@dataclass(frozen=True)
class ApproximationStep:
    """One stage of the density construction.

    tail_max is the largest magnitude among coefficients of p with index
    in [n, gram size): exactly the coefficients the projection promises to
    kill.  Coefficients at index >= gram size are truncation-boundary
    spill; they decay geometrically as the ambient cutoff grows and are
    reported through p itself.
    """

    n: int
    h: PolynomialVector
    p: PolynomialVector
    error: float
    tail_max: float


@dataclass(frozen=True)
class ApproximationReport:
    symbol: Symbol
    gram_size: int
    steps: tuple


def density_approximate(b: Symbol, g: PolynomialVector, n_values,
                        size: int = None) -> ApproximationReport:
    """Run the projection-then-analysis-map construction for each n.

    For each n the orthogonal complement h of g against span{z^n, ...}
    gives a polynomial p = S_b h of essential degree n-1, and the error
    ||g - h|| in the weighted norm equals the range-space distance of the
    target to p, by the isometry; no defect pseudo-inverse is needed to
    certify approximation quality.  Errors are nonincreasing in n because
    the complements are nested.
    """
    n_values = [int(n) for n in n_values]
    if size is None:
        size = max(max(n_values, default=0) + 32, g.degree + 1)
    if g.degree >= size:
        raise DimensionMismatch(f"degree {g.degree} exceeds ambient cutoff {size}")
    if any(not 0 <= n <= size for n in n_values):
        raise ValueError("every n must satisfy 0 <= n <= size")
    gram = gram_Ab2(b, size)
    steps = []
    for n in n_values:
        h = project_onto_Mn_perp(g, n, gram)
        p = apply_sb(b, h)
        error = norm_Ab2(g - h, gram)
        tail = p.padded(max(size, len(p.coeffs)))[n:size]
        tail_max = float(np.max(np.abs(tail))) if tail.size else 0.0
        steps.append(ApproximationStep(n, h, p, error, tail_max))
    return ApproximationReport(b, size, tuple(steps))


def sb_preimage(b: Symbol, f: PolynomialVector, size: int,
                rank_tol: float = 1e-12, rows: int = None) -> PolynomialVector:
    """Least-squares preimage of f under the analysis map.

    Returns the coefficient vector g (degree < size) minimizing the
    coefficient residual of S_b g = f and, among minimizers, the weighted
    norm of g; computed as a plain least-squares problem in Gram-weighted
    coordinates with a relative rank cutoff.  The weighted norm of the
    result is then the range-space norm of f whenever f is reachable.
    """
    if rows is None:
        rows = size + _output_pad(b)
    if f.degree >= rows:
        raise DimensionMismatch(f"degree {f.degree} target needs more output rows than {rows}")
    W = moments.weighted_moments(b, max(rows, size)).entries
    S = np.arange(1.0, rows + 1.0)[:, None] * W[:rows, :size]
    G = W[:size, :size]
    fac = operators.psd_sqrt(G, rank_tol)
    keep = fac.rank_mask()
    Vk = fac.vectors[:, keep]
    inv_sqrt = Vk * (1.0 / np.sqrt(fac.eigenvalues[keep]))[None, :]
    design = S @ (inv_sqrt @ Vk.conj().T)
    y, _, rank, _ = np.linalg.lstsq(design, f.padded(rows), rcond=rank_tol)
    if rank < f.degree + 1:
        raise IllConditioned(f"effective rank {rank} below target degree {f.degree} + 1")
    return PolynomialVector(inv_sqrt @ (Vk.conj().T @ y))
