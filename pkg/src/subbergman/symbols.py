"""Analytic symbols on the unit disk and their text grammar.

A symbol is an analytic function b with sup |b| <= 1 on the disk, given in
one of three forms: a constant, a polynomial, or a finite Blaschke product
kept in factored form.  The module also provides the complex-coefficient
polynomial container used throughout the package.

Text grammar (used by the CLI and config files):

    const:RE+IMi            e.g.  const:0.5+0i
    poly:c0,c1,...          e.g.  poly:0.5,0.5
    blaschke:a1;a2;...[|p]  e.g.  blaschke:0.5;0.3-0.2i|1

Complex literals are written ``x+yi`` with either part optional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import NotContractive, ParseError, UnsupportedVariant

__all__ = [
    "PolynomialVector",
    "ConstantSymbol",
    "PolynomialSymbol",
    "BlaschkeSymbol",
    "Symbol",
    "parse_complex",
    "format_complex",
    "parse_symbol",
    "format_symbol",
    "evaluate",
    "sup_norm_estimate",
    "sup_norm_bound",
    "modulus_squared_coeffs",
    "symbol_degree",
]

#: Slack allowed on every unit-modulus / unit-ball constraint.
CONTRACTIVITY_TOL = 1e-12

#: Default number of boundary samples for sup-norm estimation.
DEFAULT_SUP_GRID = 4096


def _readonly(arr):
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PolynomialVector:
    """Coefficients c_0..c_D of the polynomial sum(c_k z^k).

    Trailing zero coefficients are stripped on construction, so the last
    stored coefficient is nonzero unless the polynomial is zero (empty
    coefficient array, degree -1).
    """

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex).ravel()
        nz = np.nonzero(arr)[0]
        arr = arr[: nz[-1] + 1] if nz.size else arr[:0]
        object.__setattr__(self, "coeffs", _readonly(arr))

    @classmethod
    def zero(cls):
        return cls(np.zeros(0))

    @classmethod
    def monomial(cls, k, scale=1.0):
        c = np.zeros(k + 1, dtype=complex)
        c[k] = scale
        return cls(c)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return len(self.coeffs) == 0

    def padded(self, size):
        """Coefficient array of the given length, zero filled."""
        if len(self.coeffs) > size:
            raise ValueError(f"cannot pad degree-{self.degree} polynomial to length {size}")
        out = np.zeros(size, dtype=complex)
        out[: len(self.coeffs)] = self.coeffs
        return out

    def __call__(self, z):
        if self.is_zero():
            return np.zeros_like(np.asarray(z, dtype=complex)) + 0j if np.ndim(z) else 0j
        return npoly.polyval(z, self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return PolynomialVector(self.padded(n) + other.padded(n))

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return PolynomialVector(self.padded(n) - other.padded(n))

    def __mul__(self, other):
        if isinstance(other, PolynomialVector):
            if self.is_zero() or other.is_zero():
                return PolynomialVector.zero()
            return PolynomialVector(np.convolve(self.coeffs, other.coeffs))
        return PolynomialVector(np.asarray(self.coeffs) * complex(other))

    __rmul__ = __mul__

    def __repr__(self):
        return f"PolynomialVector({list(self.coeffs)!r})"


@dataclass(frozen=True)
class ConstantSymbol:
    """b(z) = value, |value| <= 1."""

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if abs(self.value) > 1 + CONTRACTIVITY_TOL:
            raise NotContractive(f"constant symbol has modulus {abs(self.value)} > 1")


@dataclass(frozen=True, eq=False)
class PolynomialSymbol:
    """b(z) = sum(coeffs[k] z^k) with boundary sup-norm at most 1."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = _readonly(np.atleast_1d(np.asarray(self.coeffs, dtype=complex)))
        object.__setattr__(self, "coeffs", arr)
        est = _poly_boundary_max(arr, DEFAULT_SUP_GRID)
        if est > 1 + CONTRACTIVITY_TOL:
            raise NotContractive(f"polynomial symbol has boundary sup-norm estimate {est} > 1")

    @property
    def degree(self):
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class BlaschkeSymbol:
    """Finite Blaschke product: phase * prod (z - a)/(1 - conj(a) z).

    Kept in factored form so |b| = 1 holds exactly on the unit circle.
    """

    zeros: tuple
    phase: complex = 1.0 + 0j

    def __post_init__(self):
        zeros = tuple(complex(a) for a in self.zeros)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "phase", complex(self.phase))
        if not zeros:
            raise ParseError("Blaschke symbol needs at least one zero (use const: otherwise)")
        for a in zeros:
            if abs(a) >= 1:
                raise NotContractive(f"Blaschke zero {a} must lie strictly inside the disk")
        if abs(abs(self.phase) - 1) > CONTRACTIVITY_TOL:
            raise NotContractive(f"Blaschke front factor {self.phase} must be unimodular")


Symbol = Union[ConstantSymbol, PolynomialSymbol, BlaschkeSymbol]


# ---------------------------------------------------------------------------
# complex literals
# ---------------------------------------------------------------------------

def parse_complex(text: str) -> complex:
    """Parse an ``x+yi`` literal (either part optional) into a complex number."""
    cleaned = text.strip().replace(" ", "")
    if not cleaned:
        raise ParseError("empty complex literal")
    try:
        value = complex(cleaned.replace("i", "j").replace("I", "j"))
    except ValueError as exc:
        raise ParseError(f"bad complex literal {text!r}") from exc
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ParseError(f"non-finite complex literal {text!r}")
    return value


def format_complex(value: complex) -> str:
    """Render a complex number in the ``x+yi`` grammar with 17 significant digits."""
    re, im = float(value.real), float(value.imag)
    if im == 0:
        return format(re, ".17g")
    if re == 0:
        return format(im, ".17g") + "i"
    return format(re, ".17g") + format(im, "+.17g") + "i"


# ---------------------------------------------------------------------------
# symbol grammar
# ---------------------------------------------------------------------------

def parse_symbol(text: str) -> Symbol:
    """Parse symbol text into a validated Symbol.

    Raises ParseError on malformed text and NotContractive when the parsed
    symbol violates the unit-ball constraint.
    """
    head, sep, body = text.strip().partition(":")
    if not sep:
        raise ParseError(f"symbol text {text!r} lacks a 'kind:' prefix")
    kind = head.strip().lower()
    if kind == "const":
        return ConstantSymbol(parse_complex(body))
    if kind == "poly":
        parts = body.split(",")
        if not any(p.strip() for p in parts):
            raise ParseError("poly: needs at least one coefficient")
        return PolynomialSymbol(np.array([parse_complex(p) for p in parts]))
    if kind == "blaschke":
        zeros_part, bar, phase_part = body.partition("|")
        zeros = [parse_complex(p) for p in zeros_part.split(";") if p.strip()]
        phase = parse_complex(phase_part) if bar else 1.0 + 0j
        return BlaschkeSymbol(tuple(zeros), phase)
    raise ParseError(f"unknown symbol kind {head!r}")


def format_symbol(b: Symbol) -> str:
    """Canonical text form of a symbol; inverse of parse_symbol."""
    if isinstance(b, ConstantSymbol):
        return "const:" + format_complex(b.value)
    if isinstance(b, PolynomialSymbol):
        return "poly:" + ",".join(format_complex(c) for c in b.coeffs)
    if isinstance(b, BlaschkeSymbol):
        zeros = ";".join(format_complex(a) for a in b.zeros)
        return f"blaschke:{zeros}|{format_complex(b.phase)}"
    raise TypeError(f"not a symbol: {b!r}")


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def evaluate(b: Symbol, z):
    """Evaluate b at a point or array of points in the closed disk."""
    z = np.asarray(z, dtype=complex)
    if isinstance(b, ConstantSymbol):
        out = np.full(z.shape, b.value, dtype=complex)
    elif isinstance(b, PolynomialSymbol):
        out = npoly.polyval(z, b.coeffs)
    elif isinstance(b, BlaschkeSymbol):
        out = np.full(z.shape, b.phase, dtype=complex)
        for a in b.zeros:
            out = out * (z - a) / (1 - np.conj(a) * z)
    else:
        raise TypeError(f"not a symbol: {b!r}")
    return out if out.ndim else complex(out)


def _poly_boundary_max(coeffs, grid):
    theta = 2 * np.pi * np.arange(grid) / grid
    return float(np.max(np.abs(npoly.polyval(np.exp(1j * theta), coeffs))))


def sup_norm_estimate(b: Symbol, grid: int = DEFAULT_SUP_GRID) -> float:
    """Boundary sup-norm of b.

    Exact for constants (|c|) and Blaschke products (1, inner function);
    for polynomials it is the maximum of |b| over ``grid`` equispaced
    points of the unit circle.
    """
    if grid < 64:
        raise ValueError("grid must be at least 64")
    if isinstance(b, ConstantSymbol):
        return abs(b.value)
    if isinstance(b, BlaschkeSymbol):
        return 1.0
    if isinstance(b, PolynomialSymbol):
        return _poly_boundary_max(b.coeffs, grid)
    raise TypeError(f"not a symbol: {b!r}")


def sup_norm_bound(b: Symbol, grid: int = DEFAULT_SUP_GRID) -> float:
    """Certified upper bound for the boundary sup-norm.

    Adds a Lipschitz safety margin (derivative coefficient bound times half
    the sample spacing) to the sampled estimate.  Note the margin makes the
    bound strictly larger than 1 for polynomials that attain sup-norm 1,
    so admission tests use sup_norm_estimate; this bound quantifies how
    much a sampled estimate could undershoot.
    """
    est = sup_norm_estimate(b, grid)
    if not isinstance(b, PolynomialSymbol):
        return est
    lipschitz = float(np.sum(np.arange(len(b.coeffs)) * np.abs(b.coeffs)))
    return est + lipschitz * math.pi / grid


def modulus_squared_coeffs(b: Symbol) -> np.ndarray:
    """Hermitian grid h[m, n] = b_m * conj(b_n) with |b(z)|^2 = sum h[m,n] z^m conj(z)^n.

    Defined for constant and polynomial symbols only; a Blaschke modulus
    squared is not polynomial in (z, conj z) and is handled by quadrature
    in the moments module.
    """
    if isinstance(b, ConstantSymbol):
        c = np.array([b.value])
    elif isinstance(b, PolynomialSymbol):
        c = np.asarray(b.coeffs)
    else:
        raise UnsupportedVariant("modulus_squared_coeffs needs a constant or polynomial symbol")
    return np.outer(c, np.conj(c))


def symbol_degree(b: Symbol):
    """Polynomial degree of b: 0 for constants, deg for polynomials, None for Blaschke."""
    if isinstance(b, ConstantSymbol):
        return 0
    if isinstance(b, PolynomialSymbol):
        return b.degree
    if isinstance(b, BlaschkeSymbol):
        return None
    raise TypeError(f"not a symbol: {b!r}")
