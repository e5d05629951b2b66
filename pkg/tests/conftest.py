"""Shared fixtures and independent oracles for the test suite."""

import numpy as np
import pytest

from subbergman import symbols as sym


def brute_disk_integral(fn, n_radial=3000, n_angular=2048):
    """Midpoint polar integration of fn(z) over the unit disk against
    normalized area measure.  Deliberately naive: used only as an oracle
    independent of the package quadrature (accuracy ~ 1/n_radial^2)."""
    t = (np.arange(n_radial) + 0.5) / n_radial
    theta = 2 * np.pi * np.arange(n_angular) / n_angular
    grid = t[:, None] * np.exp(1j * theta)[None, :]
    vals = fn(grid)
    return complex(np.sum(vals * (2 * t[:, None] / n_radial)) / n_angular)


def brute_weighted_moment(b, j, k, **kw):
    """Oracle for <z^k, z^j> against (1 - |b|^2) dA."""
    def fn(z):
        return z ** k * np.conj(z) ** j * (1 - np.abs(sym.evaluate(b, z)) ** 2)
    return brute_disk_integral(fn, **kw)


@pytest.fixture
def symbol_z():
    return sym.PolynomialSymbol([0.0, 1.0])


@pytest.fixture
def symbol_half():
    return sym.PolynomialSymbol([0.5, 0.5])


@pytest.fixture
def symbol_const():
    return sym.ConstantSymbol(0.6)

@pytest.fixture
def symbol_blaschke():
    return sym.BlaschkeSymbol((0.5,))
