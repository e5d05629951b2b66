"""Finite sections of Bergman-space Toeplitz and defect operators.

Sections are expressed in the normalized monomial basis e_k = sqrt(k+1) z^k,
which turns the ambient Gram into the identity.  The two defect sections

    defect_b    ~ I - T_b T_conj(b)
    defect_bbar ~ I - T_conj(b) T_b

are assembled from exact entry formulas (moment sums), never as products of
truncated sections, so each is the exact compression of its infinite
operator.  Their PSD square roots define range-space norms computed here by
eigendecomposition and pseudo-inversion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import moments, symbols
from .errors import (DimensionMismatch, NegativeSpectrum, NotHermitian, NotInRange,
                     UnsupportedVariant)
from .symbols import BlaschkeSymbol, ConstantSymbol, PolynomialSymbol, PolynomialVector, Symbol

__all__ = [
    "OperatorSection",
    "PsdFactorization",
    "RangeNormResult",
    "toeplitz_analytic",
    "toeplitz_coanalytic",
    "defect_b",
    "defect_bbar",
    "psd_sqrt",
    "range_norm",
    "min_eigenvalue",
]

HERMITIAN_TOL = 1e-10
NEGATIVE_SPECTRUM_TOL = 1e-8
DEFAULT_RANK_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class OperatorSection:
    """N x N matrix A[j, k] = <Op e_k, e_j> in the normalized basis."""

    size: int
    entries: np.ndarray
    tag: str = "custom"

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        if arr.shape != (self.size, self.size):
            raise ValueError(f"entries shape {arr.shape} does not match size {self.size}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def to_jsonable(self):
        return {
            "tag": self.tag,
            "size": self.size,
            "entries": [[[v.real, v.imag] for v in row] for row in self.entries],
        }


def _as_matrix(Q):
    return Q.entries if isinstance(Q, OperatorSection) else np.asarray(Q, dtype=complex)


def _require_hermitian(A, what="matrix"):
    gap = float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0
    if gap > HERMITIAN_TOL:
        raise NotHermitian(f"{what} deviates from Hermitian by {gap:.3e}")
    return 0.5 * (A + A.conj().T)


def _poly_coeffs(b: Symbol):
    if isinstance(b, ConstantSymbol):
        return np.array([b.value])
    if isinstance(b, PolynomialSymbol):
        return np.asarray(b.coeffs)
    raise UnsupportedVariant("exact Toeplitz sections need a constant or polynomial symbol; "
                             "Blaschke norms go through the analysis-map route in spaces")


def toeplitz_analytic(b: Symbol, size: int) -> OperatorSection:
    """Section of multiplication by an analytic polynomial symbol.

    Entries A[j, k] = sqrt((k+1)/(j+1)) * b_(j-k) for 0 <= j-k <= deg b;
    these are the exact entries of the infinite matrix.
    """
    if size < 1:
        raise ValueError("size must be positive")
    c = _poly_coeffs(b)
    A = np.zeros((size, size), dtype=complex)
    for off, coeff in enumerate(c):
        if coeff == 0 or off >= size:
            continue
        ks = np.arange(size - off)
        A[ks + off, ks] = np.sqrt((ks + 1.0) / (ks + off + 1.0)) * coeff
    return OperatorSection(size, A, "toeplitz_b")


def toeplitz_coanalytic(b: Symbol, size: int) -> OperatorSection:
    """Section of the adjoint operator: conjugate transpose of toeplitz_analytic."""
    return OperatorSection(size, toeplitz_analytic(b, size).entries.conj().T, "toeplitz_bbar")


def defect_bbar(b: Symbol, size: int) -> OperatorSection:
    """Exact compression of I - T_conj(b) T_b.

    Entries delta_jk - <b e_k, b e_j> come straight from the weighted
    moment matrix with weight 1 - |b|^2, rescaled to the normalized basis;
    available for every symbol variant (quadrature moments for Blaschke).
    """
    W = moments.weighted_moments(b, size).entries
    scale = np.sqrt(np.arange(1.0, size + 1.0))
    return OperatorSection(size, scale[:, None] * W * scale[None, :], "defect_bbar")


def defect_b(b: Symbol, size: int) -> OperatorSection:
    """Exact compression of I - T_b T_conj(b) for constant/polynomial symbols.

    The co-analytic factor strictly lowers degree, so within the first
    `size` basis vectors the product of finite sections is already exact.
    """
    B = toeplitz_analytic(b, size).entries
    return OperatorSection(size, np.eye(size) - B @ B.conj().T, "defect_b")


@dataclass(frozen=True, eq=False)
class PsdFactorization:
    """Clamped eigendecomposition Q = V diag(lam) V* with lam descending."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    rank_tol: float

    def sqrt_matrix(self) -> np.ndarray:
        V, lam = self.vectors, self.eigenvalues
        return (V * np.sqrt(lam)[None, :]) @ V.conj().T

    def reconstruct(self) -> np.ndarray:
        V, lam = self.vectors, self.eigenvalues
        return (V * lam[None, :]) @ V.conj().T

    def rank_mask(self, tol: float = None) -> np.ndarray:
        tol = self.rank_tol if tol is None else tol
        top = self.eigenvalues[0] if self.eigenvalues.size else 0.0
        return self.eigenvalues > tol * top


def psd_sqrt(Q, rank_tol: float = DEFAULT_RANK_TOL) -> PsdFactorization:
    """Eigendecomposition of a PSD section with eigenvalues clamped at 0.

    Raises NotHermitian when Q is not Hermitian within 1e-10 and
    NegativeSpectrum when the smallest eigenvalue is below -1e-8 (which
    signals a construction bug rather than rounding).
    """
    A = _require_hermitian(_as_matrix(Q), "psd_sqrt input")
    lam, V = np.linalg.eigh(A)
    if lam.size and lam[0] < -NEGATIVE_SPECTRUM_TOL:
        raise NegativeSpectrum(f"smallest eigenvalue {lam[0]:.3e} is genuinely negative")
    lam = np.clip(lam, 0.0, None)[::-1].copy()
    V = V[:, ::-1].copy()
    lam.setflags(write=False)
    V.setflags(write=False)
    return PsdFactorization(lam, V, rank_tol)


@dataclass(frozen=True)
class RangeNormResult:
    """Range-space norm of a polynomial with its consistency diagnostics."""

    norm: float
    residual: float
    in_range: bool


def normalized_coordinates(f: PolynomialVector, size: int) -> np.ndarray:
    """Coordinates of f against e_k = sqrt(k+1) z^k, zero padded to `size`."""
    if f.degree >= size:
        raise DimensionMismatch(f"degree {f.degree} polynomial needs a section larger than {size}")
    v = f.padded(size)
    return v / np.sqrt(np.arange(1.0, size + 1.0))


def range_norm(Q, f: PolynomialVector, rank_tol: float = DEFAULT_RANK_TOL,
               strict: bool = True) -> RangeNormResult:
    """Norm of f in the range space of Q^(1/2).

    Computes v = pinv(Q^(1/2)) f in normalized coordinates with a relative
    rank cutoff, realizing ||f||^2 = f* pinv(Q) f.  The residual is the
    distance from f to the numerical range; when it exceeds rank_tol*||f||
    the vector is flagged (and, if strict, NotInRange is raised).
    """
    fac = Q if isinstance(Q, PsdFactorization) else psd_sqrt(Q, rank_tol)
    size = fac.vectors.shape[0]
    v = normalized_coordinates(f, size)
    y = fac.vectors.conj().T @ v
    keep = fac.rank_mask(rank_tol)
    norm = float(np.linalg.norm(y[keep] / np.sqrt(fac.eigenvalues[keep])))
    residual = float(np.linalg.norm(v - fac.vectors[:, keep] @ y[keep]))
    in_range = residual <= rank_tol * max(float(np.linalg.norm(v)), np.finfo(float).tiny)
    if strict and not in_range:
        raise NotInRange(f"residual {residual:.3e} exceeds tolerance; "
                         "input lies outside the numerical range")
    return RangeNormResult(norm, residual, in_range)


def min_eigenvalue(Q) -> float:
    """Smallest eigenvalue of a Hermitian section."""
    A = _require_hermitian(_as_matrix(Q), "min_eigenvalue input")
    return float(np.linalg.eigvalsh(A)[0])
