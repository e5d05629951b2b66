import numpy as np
import pytest

from subbergman.errors import NotContractive, ParseError, UnsupportedVariant
from subbergman.symbols import (BlaschkeSymbol, ConstantSymbol, PolynomialSymbol,
                                PolynomialVector, evaluate, format_complex, format_symbol,
                                modulus_squared_coeffs, parse_complex, parse_symbol,
                                sup_norm_bound, sup_norm_estimate, symbol_degree)


class TestPolynomialVector:
    def test_trailing_zeros_stripped(self):
        p = PolynomialVector([1, 2, 0, 0])
        assert p.degree == 1
        assert list(p.coeffs) == [1, 2]

    def test_zero_polynomial(self):
        assert PolynomialVector([0, 0]).degree == -1
        assert PolynomialVector.zero().is_zero()
        assert PolynomialVector.zero()(0.3) == 0

    def test_evaluate(self):
        p = PolynomialVector([1, 0, 2])
        assert p(2.0) == pytest.approx(9.0)

    def test_arithmetic(self):
        p = PolynomialVector([1, 1])
        q = PolynomialVector([0, 1])
        assert list((p - q).coeffs) == [1]
        assert list((p * q).coeffs) == [0, 1, 1]
        assert list((2 * p).coeffs) == [2, 2]


class TestParsing:
    @pytest.mark.parametrize("text,value", [
        ("0.5+0i", 0.5), ("0.5", 0.5), ("1i", 1j), ("-0.3-0.2i", -0.3 - 0.2j), ("0", 0),
    ])
    def test_parse_complex(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("bad", ["", "abc", "1+2", "1++2i", "nan+1i"])
    def test_parse_complex_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_complex(bad)

    def test_parse_const(self):
        b = parse_symbol("const:0.5+0i")
        assert isinstance(b, ConstantSymbol) and b.value == 0.5

    def test_parse_poly_boundary_norm_one(self):
        b = parse_symbol("poly:0.5,0.5")
        assert isinstance(b, PolynomialSymbol)
        assert sup_norm_estimate(b) == pytest.approx(1.0, abs=1e-12)

    def test_parse_poly_not_contractive(self):
        with pytest.raises(NotContractive):
            parse_symbol("poly:1,1")

    def test_parse_blaschke(self):
        b = parse_symbol("blaschke:0.5;0.3-0.2i|1")
        assert isinstance(b, BlaschkeSymbol)
        assert b.zeros == (0.5, 0.3 - 0.2j)

    def test_parse_blaschke_rejects_outside_zero(self):
        with pytest.raises(NotContractive):
            parse_symbol("blaschke:1.5")

    def test_parse_rejects_unknown_kind(self):
        with pytest.raises(ParseError):
            parse_symbol("spline:1,2")
        with pytest.raises(ParseError):
            parse_symbol("no-colon")

    @pytest.mark.parametrize("text", ["const:0.5+0i", "poly:0.5,0.25", "blaschke:0.5|1",
                                      "blaschke:0.3;0.1+0.2i|-1"])
    def test_format_round_trip(self, text):
        b = parse_symbol(text)
        assert format_symbol(parse_symbol(format_symbol(b))) == format_symbol(b)

    def test_format_complex_is_17_digit(self):
        x = 1 / 3
        assert parse_complex(format_complex(x + 1j * x)) == x + 1j * x


class TestEvaluate:
    def test_constant(self):
        assert evaluate(ConstantSymbol(0.5), 0.3j) == 0.5

    def test_identity_polynomial(self):
        assert evaluate(PolynomialSymbol([0, 1]), 0.2 + 0.1j) == 0.2 + 0.1j

    def test_blaschke_single_factor(self):
        # one Moebius factor: (-0.5 - 0.5) / (1 - 0.5*(-0.5)) = -0.8
        b = BlaschkeSymbol((0.5,))
        assert evaluate(b, -0.5) == pytest.approx(-0.8)

    def test_blaschke_contractive_inside(self):
        rng = np.random.default_rng(7)
        b = BlaschkeSymbol((0.5, -0.2 + 0.3j), phase=np.exp(0.7j))
        z = 0.99 * np.sqrt(rng.uniform(size=64)) * np.exp(2j * np.pi * rng.uniform(size=64))
        assert np.all(np.abs(evaluate(b, z)) < 1)

    def test_blaschke_unimodular_on_circle(self):
        b = BlaschkeSymbol((0.5, 0.3j))
        z = np.exp(1j * np.linspace(0, 2 * np.pi, 17))
        assert np.abs(evaluate(b, z)) == pytest.approx(np.ones(17), abs=1e-12)


class TestSupNorm:
    def test_constant(self):
        assert sup_norm_estimate(ConstantSymbol(0.9)) == 0.9

    def test_blaschke_is_exactly_one(self):
        assert sup_norm_estimate(BlaschkeSymbol((0.5,))) == 1.0

    def test_poly_maximum_at_one(self):
        b = PolynomialSymbol([0.5, 0.5])
        assert sup_norm_estimate(b, grid=4096) == pytest.approx(1.0, abs=1e-6)

    def test_bound_dominates_estimate(self):
        b = PolynomialSymbol([0.25, 0.25, 0.25])
        assert sup_norm_bound(b) >= sup_norm_estimate(b)

    def test_grid_precondition(self):
        with pytest.raises(ValueError):
            sup_norm_estimate(PolynomialSymbol([0.5]), grid=32)

    @pytest.mark.parametrize("text", ["const:0.9", "poly:0.5,0.5", "poly:0.1,0.2,0.3",
                                      "blaschke:0.5|1"])
    def test_accepted_symbols_are_contractive(self, text):
        assert sup_norm_estimate(parse_symbol(text)) <= 1 + 1e-12


class TestModulusSquared:
    def test_identity_symbol(self):
        h = modulus_squared_coeffs(PolynomialSymbol([0, 1]))
        assert h[1, 1] == 1 and h[0, 0] == 0 and h[0, 1] == 0

    def test_constant(self):
        h = modulus_squared_coeffs(ConstantSymbol(0.5 + 0.5j))
        assert h.shape == (1, 1) and h[0, 0] == pytest.approx(0.5)

    def test_half_half(self):
        h = modulus_squared_coeffs(PolynomialSymbol([0.5, 0.5]))
        assert np.allclose(h, 0.25 * np.ones((2, 2)))

    def test_reconstructs_modulus_squared(self):
        rng = np.random.default_rng(11)
        b = PolynomialSymbol([0.2, 0.1 - 0.3j, 0.25j])
        h = modulus_squared_coeffs(b)
        z = np.sqrt(rng.uniform(size=100)) * np.exp(2j * np.pi * rng.uniform(size=100))
        m, n = np.meshgrid(np.arange(3), np.arange(3), indexing="ij")
        recon = np.array([np.sum(h * zz ** m * np.conj(zz) ** n) for zz in z])
        assert np.max(np.abs(recon - np.abs(evaluate(b, z)) ** 2)) <= 1e-12

    def test_blaschke_unsupported(self):
        with pytest.raises(UnsupportedVariant):
            modulus_squared_coeffs(BlaschkeSymbol((0.5,)))

    def test_hermitian_grid(self):
        h = modulus_squared_coeffs(PolynomialSymbol([0.2, 0.3j, 0.1]))
        assert np.allclose(h, h.conj().T)
        assert np.all(np.diag(h).real >= 0)


def test_symbol_degree():
    assert symbol_degree(ConstantSymbol(0.5)) == 0
    assert symbol_degree(PolynomialSymbol([0, 0, 1])) == 2
    assert symbol_degree(BlaschkeSymbol((0.5,))) is None
