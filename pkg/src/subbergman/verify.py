"""Named, reproducible checks for the package's operator identities.

Each check measures one verifiable statement (an operator inequality, a
norm identity, an isometry, a distance lower bound, or a special-case
coincidence) on finite sections and reports the measured quantity, the
target it is compared against, and a pass flag.  All randomness is drawn
from a seeded generator recorded in the report, so identical configs give
identical reports.
"""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass

import numpy as np

from . import moments, operators, spaces, symbols
from .errors import UnsupportedVariant
from .symbols import (BlaschkeSymbol, ConstantSymbol, PolynomialSymbol, PolynomialVector,
                      Symbol, format_symbol)

__all__ = [
    "ToleranceConfig",
    "CheckReport",
    "random_polynomials",
    "default_symbol_corpus",
    "check_operator_inequality",
    "check_norm_equivalence",
    "check_norm_identity",
    "check_isometry",
    "check_distance_lower_bound",
    "check_blaschke_hardy",
    "check_constant_symbol",
    "run_all",
]

DEFAULT_SEED = 0xB17

#: (monomial index, radius) grid exercised by the distance checks.
DISTANCE_GRID = tuple((k, r) for k in (0, 1, 3) for r in (0.3, 0.5, 0.8))

#: Monomial degrees probed by the Blaschke Hardy-norm comparison.
BLASCHKE_DEGREES = tuple(range(13))


@dataclass(frozen=True)
class ToleranceConfig:
    eig_tol: float = 1e-10
    norm_rel_tol: float = 1e-6
    exact_tol: float = 1e-10
    section_size: int = 48
    gram_size: int = 64
    seed: int = DEFAULT_SEED
    sample_count: int = 20
    max_degree: int = 12

    def __post_init__(self):
        for name in ("eig_tol", "norm_rel_tol", "exact_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.section_size < 1 or self.gram_size < 1:
            raise ValueError("sizes must be positive")


@dataclass(frozen=True)
class CheckReport:
    check_name: str
    symbol: str
    parameters: dict
    measured: float
    bound_or_target: float
    passed: bool
    runtime_ms: int = 0


def _finish(name, b, params, measured, bound, passed, t0):
    return CheckReport(name, format_symbol(b), dict(params), float(measured),
                       float(bound), bool(passed),
                       runtime_ms=int(round((time.perf_counter() - t0) * 1000)))


def random_polynomials(count: int, max_degree: int, seed: int):
    """Seeded corpus: degree uniform in 0..max_degree, coefficients drawn
    uniformly from the complex unit square [0,1] x [0,1]i."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        deg = int(rng.integers(0, max_degree + 1))
        c = rng.uniform(size=deg + 1) + 1j * rng.uniform(size=deg + 1)
        out.append(PolynomialVector(c))
    return out


def default_symbol_corpus():
    """The stock symbols exercised by the full suite."""
    return [
        PolynomialSymbol([0.0, 1.0]),
        PolynomialSymbol([0.5, 0.5]),
        ConstantSymbol(0.6),
        BlaschkeSymbol((0.5,)),
    ]


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def check_operator_inequality(b: Symbol, size: int,
                              config: ToleranceConfig = ToleranceConfig()) -> CheckReport:
    """defect_b - defect_bbar is PSD on sections (compression of a PSD operator)."""
    t0 = time.perf_counter()
    diff = operators.defect_b(b, size).entries - operators.defect_bbar(b, size).entries
    measured = operators.min_eigenvalue(diff)
    bound = -config.eig_tol
    return _finish("operator_inequality", b, {"N": size}, measured, bound,
                   measured >= bound, t0)


def check_norm_equivalence(b: Symbol, sample_polys, size: int,
                           config: ToleranceConfig = ToleranceConfig()) -> CheckReport:
    """Ratio of the two range-space norms stays within [1, sqrt(1 + sup|b|^2)]."""
    t0 = time.perf_counter()
    d = symbols.symbol_degree(b)
    if d is None:
        raise UnsupportedVariant("norm equivalence uses exact defect sections; "
                                 "Blaschke symbols are covered by check_blaschke_hardy")
    for f in sample_polys:
        if f.degree >= size - d - 8:
            raise ValueError(f"sample degree {f.degree} too close to section size {size}")
    fac_b = operators.psd_sqrt(operators.defect_b(b, size))
    fac_bbar = operators.psd_sqrt(operators.defect_bbar(b, size))
    ratios = [operators.range_norm(fac_bbar, f).norm / operators.range_norm(fac_b, f).norm
              for f in sample_polys]
    upper = float(np.sqrt(1.0 + symbols.sup_norm_estimate(b) ** 2))
    lo, hi = min(ratios), max(ratios)
    passed = lo >= 1.0 - config.norm_rel_tol and hi <= upper + config.norm_rel_tol
    params = {"N": size, "samples": len(ratios), "min_ratio": lo,
              "lower_bound": 1.0 - config.norm_rel_tol}
    return _finish("norm_equivalence", b, params, hi, upper + config.norm_rel_tol, passed, t0)


def check_norm_identity(b: Symbol, f: PolynomialVector, size: int,
                        config: ToleranceConfig = ToleranceConfig()) -> CheckReport:
    """||f||^2 in the bbar space equals ||f||^2 plain plus ||b f||^2 in the b space."""
    t0 = time.perf_counter()
    d = symbols.symbol_degree(b)
    if d is None:
        raise UnsupportedVariant("the norm identity uses exact defect sections")
    if f.degree + d >= size - d - 8:
        raise ValueError(f"product degree {f.degree + d} too close to section size {size}")
    bf = _symbol_times(b, f)
    lhs = operators.range_norm(operators.defect_bbar(b, size), f).norm ** 2
    rhs = moments.bergman_norm(f) ** 2 + \
        operators.range_norm(operators.defect_b(b, size), bf).norm ** 2
    measured = abs(lhs - rhs) / lhs
    return _finish("norm_identity", b, {"N": size, "deg_f": f.degree}, measured,
                   config.norm_rel_tol, measured <= config.norm_rel_tol, t0)


def _symbol_times(b: Symbol, f: PolynomialVector) -> PolynomialVector:
    if isinstance(b, ConstantSymbol):
        return b.value * f
    if isinstance(b, PolynomialSymbol):
        return PolynomialVector(np.convolve(b.coeffs, f.coeffs))
    raise UnsupportedVariant("polynomial product needs a constant or polynomial symbol")


def check_isometry(b: Symbol, g: PolynomialVector, section_size: int, gram_size: int,
                   config: ToleranceConfig = ToleranceConfig()) -> CheckReport:
    """Range-space norm of S_b g agrees with the weighted norm of g."""
    t0 = time.perf_counter()
    if g.degree >= gram_size:
        raise ValueError(f"degree {g.degree} exceeds Gram size {gram_size}")
    p = spaces.apply_sb(b, g, out_degree=section_size - 1)
    lhs = operators.range_norm(operators.defect_bbar(b, section_size), p).norm
    rhs = spaces.norm_Ab2(g, spaces.gram_Ab2(b, gram_size))
    measured = abs(lhs - rhs) / max(rhs, np.finfo(float).tiny)
    return _finish("isometry", b, {"N": section_size, "M": gram_size, "deg_g": g.degree},
                   measured, config.norm_rel_tol, measured <= config.norm_rel_tol, t0)


def check_distance_lower_bound(b: Symbol, k: int, r: float, gram_size: int,
                               config: ToleranceConfig = ToleranceConfig()) -> CheckReport:
    """Squared weighted distance from z^k to higher monomials dominates
    delta * r^(2k+2) / (k+1), delta = min of the weight on the r-disk."""
    t0 = time.perf_counter()
    if not 0 < r < 1:
        raise ValueError("radius must lie in (0, 1)")
    if k + 1 >= gram_size:
        raise ValueError("k + 1 must be below the Gram size")
    G = spaces.gram_Ab2(b, gram_size).matrix
    A = G[k + 1:, k + 1:]
    rhs = G[k + 1:, k]
    x = np.linalg.solve(A, rhs)
    x += np.linalg.solve(A, rhs - A @ x)
    measured = float(np.real(G[k, k] - G[k, k + 1:] @ x))
    bound = moments.delta_min(b, r) * r ** (2 * k + 2) / (k + 1)
    passed = measured >= bound - config.exact_tol
    return _finish("distance_lower_bound", b, {"k": k, "r": r, "M": gram_size},
                   measured, bound, passed, t0)


def check_blaschke_hardy(b: BlaschkeSymbol, degrees, size: int,
                         config: ToleranceConfig = ToleranceConfig()) -> CheckReport:
    """Monomial norms in the bbar space stay within a stable factor of
    their Hardy norms (which are all 1), consistent with the space being
    the Hardy space up to norm equivalence.

    Stability criterion: the max/min ratio spread changes by < 5% when the
    working size doubles.  Norms go through the analysis-map preimage so
    all Blaschke numerics stay on the quadrature-Gram path.
    """
    t0 = time.perf_counter()
    if not isinstance(b, BlaschkeSymbol):
        raise ValueError("check_blaschke_hardy needs a Blaschke symbol")
    degrees = list(degrees)
    if max(degrees) + 2 > size:
        raise ValueError("size too small for the requested degrees")

    def spread(m):
        gram = spaces.gram_Ab2(b, m)
        ratios = [spaces.norm_Ab2(spaces.sb_preimage(b, PolynomialVector.monomial(k), m), gram)
                  for k in degrees]
        return max(ratios) / min(ratios), min(ratios), max(ratios)

    s1, _, _ = spread(size)
    s2, rmin, rmax = spread(2 * size)
    measured = abs(s2 - s1) / s1
    params = {"N": size, "degrees": len(degrees), "spread": s2,
              "min_ratio": rmin, "max_ratio": rmax}
    return _finish("blaschke_hardy", b, params, measured, 0.05, measured < 0.05, t0)


def check_constant_symbol(c: complex, f: PolynomialVector, size: int,
                          config: ToleranceConfig = ToleranceConfig()) -> CheckReport:
    """For |c| < 1 the b-space norm is the plain norm over sqrt(1 - |c|^2)."""
    t0 = time.perf_counter()
    if abs(c) >= 1:
        raise ValueError("constant symbol must have modulus < 1 for the rescaling law")
    b = ConstantSymbol(c)
    target = moments.bergman_norm(f) / np.sqrt(1.0 - abs(c) ** 2)
    got = operators.range_norm(operators.defect_b(b, size), f).norm
    measured = abs(got - target) / target
    return _finish("constant_rescale", b, {"N": size, "deg_f": f.degree}, measured,
                   config.exact_tol, measured <= config.exact_tol, t0)


# ---------------------------------------------------------------------------
# suite driver
# ---------------------------------------------------------------------------

def _worst(reports, name, b, t0, extra=None):
    """Merge per-sample reports of one check into a single worst-case row."""
    worst = max(reports, key=lambda rep: rep.measured)
    params = dict(worst.parameters)
    params["samples"] = len(reports)
    if extra:
        params.update(extra)
    return CheckReport(name, format_symbol(b), params, worst.measured,
                       worst.bound_or_target, all(r.passed for r in reports),
                       runtime_ms=int(round((time.perf_counter() - t0) * 1000)))


def _failed(name, b, exc, t0):
    return CheckReport(name, format_symbol(b), {"error": f"{type(exc).__name__}: {exc}"},
                       float("nan"), float("nan"), False,
                       runtime_ms=int(round((time.perf_counter() - t0) * 1000)))


def _with_params(report: CheckReport, extra: dict) -> CheckReport:
    return dataclasses.replace(report, parameters={**report.parameters, **extra})


def run_all(config: ToleranceConfig, symbol_list) -> list:
    """Run every applicable check over the symbol list, collecting failures
    instead of aborting; a check that cannot even be constructed yields a
    failed report carrying the error message."""
    samples = random_polynomials(config.sample_count, config.max_degree, config.seed)
    N, M = config.section_size, config.gram_size
    reports = []

    def attempt(name, b, thunk):
        t0 = time.perf_counter()
        try:
            reports.append(thunk(t0))
        except Exception as exc:  # noqa: BLE001 - collected into the report
            reports.append(_failed(name, b, exc, t0))

    seed_param = {"seed": config.seed}
    for b in symbol_list:
        exact = isinstance(b, (ConstantSymbol, PolynomialSymbol))
        if exact:
            attempt("operator_inequality", b,
                    lambda t0, b=b: check_operator_inequality(b, N, config))
            attempt("norm_equivalence", b,
                    lambda t0, b=b: _with_params(
                        check_norm_equivalence(b, samples, N, config), seed_param))
            attempt("norm_identity", b,
                    lambda t0, b=b: _worst([check_norm_identity(b, f, N, config)
                                            for f in samples], "norm_identity", b, t0,
                                           extra=seed_param))
        if isinstance(b, ConstantSymbol) and abs(b.value) < 1:
            attempt("constant_rescale", b,
                    lambda t0, b=b: _worst([check_constant_symbol(b.value, f, N, config)
                                            for f in samples], "constant_rescale", b, t0,
                                           extra=seed_param))
        attempt("isometry", b,
                lambda t0, b=b: _worst([check_isometry(b, f, N, M, config)
                                        for f in samples], "isometry", b, t0,
                                       extra=seed_param))
        for k, r in DISTANCE_GRID:
            attempt("distance_lower_bound", b,
                    lambda t0, b=b, k=k, r=r: check_distance_lower_bound(b, k, r, M, config))
        if isinstance(b, BlaschkeSymbol):
            attempt("blaschke_hardy", b,
                    lambda t0, b=b: check_blaschke_hardy(b, BLASCHKE_DEGREES, N, config))
    return reports
