import numpy as np
import pytest

from subbergman.errors import DimensionMismatch
from subbergman.operators import defect_bbar, psd_sqrt, range_norm
from subbergman.spaces import (apply_sb, density_approximate, gram_Ab2, kernel_coeffs,
                               kernel_eval, norm_Ab2, pointwise_identity_check,
                               project_onto_Mn_perp, sb_matrix, sb_preimage)
from subbergman.symbols import (BlaschkeSymbol, ConstantSymbol, PolynomialSymbol,
                                PolynomialVector, parse_symbol)

CORPUS = ["poly:0,1", "poly:0.5,0.5", "const:0.6"]


class TestGram:
    def test_shift_symbol_diagonal(self, symbol_z):
        G = gram_Ab2(symbol_z, 3).matrix
        assert np.allclose(G, np.diag([1 / 2, 1 / 6, 1 / 12]), atol=1e-15)

    def test_zero_symbol(self):
        G = gram_Ab2(ConstantSymbol(0), 2).matrix
        assert np.allclose(G, np.diag([1, 0.5]), atol=1e-15)

    def test_constant_scaling(self):
        G = gram_Ab2(ConstantSymbol(0.6), 4).matrix
        assert np.allclose(G, 0.64 * np.diag(1 / np.arange(1, 5)), atol=1e-15)

    def test_factorization_cached(self, symbol_half):
        gram = gram_Ab2(symbol_half, 8)
        assert gram.factorization is gram.factorization


class TestApplySb:
    def test_shift_symbol_is_diagonal(self, symbol_z):
        for i in (0, 2, 5):
            p = apply_sb(symbol_z, PolynomialVector.monomial(i))
            expect = PolynomialVector.monomial(i, 1 / (i + 2))
            assert np.allclose(p.padded(i + 2), expect.padded(i + 2), atol=1e-14)

    def test_zero_symbol_identity(self):
        g = PolynomialVector([1, 2j, 3])
        p = apply_sb(ConstantSymbol(0), g)
        assert np.allclose(p.padded(3), g.padded(3), atol=1e-15)

    def test_constant_scaling(self):
        g = PolynomialVector([1, -1j])
        p = apply_sb(ConstantSymbol(0.6), g)
        assert np.allclose(p.padded(2), 0.64 * g.padded(2), atol=1e-15)

    def test_zero_input(self, symbol_half):
        assert apply_sb(symbol_half, PolynomialVector.zero()).is_zero()

    def test_polynomial_output_degree(self, symbol_half):
        p = apply_sb(symbol_half, PolynomialVector.monomial(4))
        assert p.degree <= 5


class TestNormAb2:
    def test_shift_at_one(self, symbol_z):
        assert norm_Ab2(PolynomialVector([1]), gram_Ab2(symbol_z, 4)) == pytest.approx(
            1 / np.sqrt(2), abs=1e-14)

    def test_plain_norm_of_z(self):
        got = norm_Ab2(PolynomialVector([0, 1]), gram_Ab2(ConstantSymbol(0), 4))
        assert got == pytest.approx(1 / np.sqrt(2), abs=1e-14)

    def test_zero(self, symbol_half):
        assert norm_Ab2(PolynomialVector.zero(), gram_Ab2(symbol_half, 4)) == 0.0

    def test_degree_overflow(self, symbol_z):
        with pytest.raises(DimensionMismatch):
            norm_Ab2(PolynomialVector.monomial(5), gram_Ab2(symbol_z, 4))


class TestKernel:
    def test_center_is_one(self):
        assert kernel_eval(0.0, 0.7j) == pytest.approx(1.0)
        assert kernel_eval(0.5, 0.0) == pytest.approx(1.0)

    def test_half_half(self):
        assert kernel_eval(0.5, 0.5) == pytest.approx(16 / 9, abs=1e-14)

    def test_coeffs_match_series(self):
        w = 0.3 + 0.2j
        c = kernel_coeffs(w, 200)
        z = 0.4 - 0.1j
        assert np.polynomial.polynomial.polyval(z, c) == pytest.approx(
            kernel_eval(w, z), abs=1e-12)

    def test_rejects_boundary_point(self):
        with pytest.raises(ValueError):
            kernel_eval(1.0, 0.5)


class TestPointwiseIdentity:
    def test_shift_at_center(self, symbol_z):
        assert pointwise_identity_check(symbol_z, PolynomialVector([1]), 0.0, 8) <= 1e-12

    def test_zero_symbol(self):
        q = PolynomialVector([0, 1])
        assert pointwise_identity_check(ConstantSymbol(0), q, 0.3, 8) <= 1e-12

    def test_constant_symbol(self):
        q = PolynomialVector([0.3, 0.7j, 0.2])
        assert pointwise_identity_check(ConstantSymbol(0.5j), q, 0.4 - 0.2j, 8) <= 1e-10

    @pytest.mark.parametrize("text", CORPUS + ["blaschke:0.5|1"])
    def test_random_points(self, text):
        b = parse_symbol(text)
        rng = np.random.default_rng(3)
        q = PolynomialVector(rng.uniform(size=6) + 1j * rng.uniform(size=6))
        for _ in range(5):
            w = 0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            assert pointwise_identity_check(b, q, w, 12) <= 1e-9


class TestProjection:
    def test_diagonal_gram_splits_coefficients(self, symbol_z):
        gram = gram_Ab2(symbol_z, 8)
        g = PolynomialVector([1, 0, 1])  # 1 + z^2
        h = project_onto_Mn_perp(g, 1, gram)
        assert np.allclose(h.padded(8), PolynomialVector([1]).padded(8), atol=1e-14)

    def test_n_zero_gives_zero(self, symbol_half):
        gram = gram_Ab2(symbol_half, 8)
        assert project_onto_Mn_perp(PolynomialVector([1, 1]), 0, gram).is_zero()

    def test_low_span_unchanged_for_diagonal_gram(self, symbol_z):
        gram = gram_Ab2(symbol_z, 8)
        g = PolynomialVector([1, 2j])
        h = project_onto_Mn_perp(g, 3, gram)
        assert np.allclose(h.padded(8), g.padded(8), atol=1e-14)

    def test_n_equal_size_returns_input(self, symbol_half):
        gram = gram_Ab2(symbol_half, 6)
        g = PolynomialVector([1, 1, 1])
        h = project_onto_Mn_perp(g, 6, gram)
        assert np.allclose(h.padded(6), g.padded(6), atol=1e-15)

    def test_singular_gram_raises(self, symbol_half):
        from subbergman.errors import SingularGram
        from subbergman.moments import MomentMatrix
        from subbergman.spaces import WeightedGram
        broken = WeightedGram(symbol_half, MomentMatrix(
            "one_minus_mod_b_squared", 3, np.zeros((3, 3), dtype=complex)))
        with pytest.raises(SingularGram):
            project_onto_Mn_perp(PolynomialVector([1, 1]), 1, broken)

    @pytest.mark.parametrize("text", CORPUS)
    def test_orthogonality_residual(self, text):
        b = parse_symbol(text)
        gram = gram_Ab2(b, 32)
        rng = np.random.default_rng(5)
        g = PolynomialVector(rng.uniform(size=13) + 1j * rng.uniform(size=13))
        for n in (2, 5, 9):
            h = project_onto_Mn_perp(g, n, gram)
            resid = gram.matrix[n:, :] @ h.padded(32)
            scale = np.linalg.norm(g.padded(32))
            assert np.max(np.abs(resid)) <= 1e-10 * scale


class TestDensity:
    def test_shift_symbol_single_step(self, symbol_z):
        report = density_approximate(symbol_z, PolynomialVector([1]), [1], size=8)
        step = report.steps[0]
        assert np.allclose(step.h.padded(1), [1], atol=1e-14)
        assert np.allclose(step.p.padded(1), [0.5], atol=1e-14)
        assert step.error <= 1e-14
        assert step.p.degree == 0  # degree at most n - 1

    def test_zero_symbol_reproduces_target(self):
        g = PolynomialVector([1, 2, 3])
        report = density_approximate(ConstantSymbol(0), g, [4], size=8)
        step = report.steps[0]
        assert np.allclose(step.p.padded(3), g.padded(3), atol=1e-13)
        assert step.error <= 1e-13

    def test_geometric_target_errors_strictly_decrease(self, symbol_z):
        g = PolynomialVector(0.5 ** np.arange(41))
        report = density_approximate(symbol_z, g, [2, 4, 8, 16], size=72)
        errors = [s.error for s in report.steps]
        assert all(a > b for a, b in zip(errors, errors[1:]))

    @pytest.mark.parametrize("text", CORPUS)
    def test_errors_nonincreasing_and_tails_flat(self, text):
        b = parse_symbol(text)
        rng = np.random.default_rng(9)
        g = PolynomialVector(rng.uniform(size=11) + 1j * rng.uniform(size=11))
        report = density_approximate(b, g, [1, 2, 4, 8], size=48)
        errors = [s.error for s in report.steps]
        assert all(a >= b - 1e-14 for a, b in zip(errors, errors[1:]))
        assert all(s.tail_max <= 1e-10 for s in report.steps)

    def test_brute_force_least_squares_agrees(self, symbol_half):
        # oracle: the error is the weighted norm of the best approximation of
        # g from span{z^n..}; recover it by raw Cholesky least squares
        size = 40
        gram = gram_Ab2(symbol_half, size)
        rng = np.random.default_rng(13)
        g = PolynomialVector(rng.uniform(size=9) + 1j * rng.uniform(size=9))
        report = density_approximate(symbol_half, g, [2, 5], size=size)
        L = np.linalg.cholesky(gram.matrix)
        for step in report.steps:
            target = L.conj().T @ g.padded(size)
            basis = L.conj().T[:, step.n:]
            x, *_ = np.linalg.lstsq(basis, target, rcond=None)
            oracle = float(np.linalg.norm(basis @ x))
            assert step.error == pytest.approx(oracle, abs=1e-9)


class TestSbPreimage:
    def test_shift_symbol_diagonal_inverse(self, symbol_z):
        for i in (0, 3):
            f = PolynomialVector.monomial(i, 1 / (i + 2))
            g = sb_preimage(symbol_z, f, 12)
            assert np.allclose(g.padded(12), PolynomialVector.monomial(i).padded(12), atol=1e-10)

    def test_zero_symbol_identity(self):
        f = PolynomialVector([1, 2j, 3])
        g = sb_preimage(ConstantSymbol(0), f, 8)
        assert np.allclose(g.padded(8), f.padded(8), atol=1e-10)

    def test_constant_rescales(self):
        f = PolynomialVector([1, 1])
        g = sb_preimage(ConstantSymbol(0.6), f, 8)
        assert np.allclose(g.padded(8), f.padded(8) / 0.64, atol=1e-10)

    def test_blaschke_agrees_with_defect_route(self, symbol_blaschke):
        # dual route: pseudo-inverse quadratic form vs analysis-map preimage
        size = 40
        gram = gram_Ab2(symbol_blaschke, size)
        fac = psd_sqrt(defect_bbar(symbol_blaschke, size))
        for k in (0, 1, 4, 9):
            f = PolynomialVector.monomial(k)
            via_preimage = norm_Ab2(sb_preimage(symbol_blaschke, f, size), gram)
            via_defect = range_norm(fac, f).norm
            assert via_preimage == pytest.approx(via_defect, rel=1e-8)

    def test_preimage_residual_small(self, symbol_blaschke):
        f = PolynomialVector.monomial(2)
        g = sb_preimage(symbol_blaschke, f, 32)
        back = apply_sb(symbol_blaschke, g, out_degree=63)
        assert np.max(np.abs(back.padded(64) - f.padded(64))) <= 1e-8

    def test_collapsed_rank_raises(self, symbol_half):
        from subbergman.errors import IllConditioned
        with pytest.raises(IllConditioned):
            sb_preimage(symbol_half, PolynomialVector.monomial(6), 12, rank_tol=0.999)


class TestStructure:
    @pytest.mark.parametrize("text", CORPUS + ["blaschke:0.5|1"])
    def test_sb_matrix_is_defect_bbar_in_normalized_basis(self, text):
        b = parse_symbol(text)
        N = 16
        S = sb_matrix(b, N, rows=N)
        scale = np.sqrt(np.arange(1.0, N + 1.0))
        conjugated = (1 / scale)[:, None] * S * scale[None, :]
        assert np.max(np.abs(conjugated - defect_bbar(b, N).entries)) <= 1e-10

    @pytest.mark.parametrize("text", CORPUS)
    def test_isometry_for_random_polynomials(self, text):
        b = parse_symbol(text)
        d = 1 if text.startswith("poly") else 0
        rng = np.random.default_rng(21)
        for _ in range(5):
            deg = int(rng.integers(0, 13))
            g = PolynomialVector(rng.uniform(size=deg + 1) + 1j * rng.uniform(size=deg + 1))
            N = deg + d + 24
            p = apply_sb(b, g, out_degree=N - 1)
            lhs = range_norm(defect_bbar(b, N), p).norm
            rhs = norm_Ab2(g, gram_Ab2(b, deg + 1))
            assert abs(lhs - rhs) <= 1e-6 * rhs

    def test_degree_bound_with_large_ambient_cutoff(self, symbol_half):
        # orthogonality up to the cutoff forces the mapped coefficients to
        # vanish from index n on; the beyond-cutoff spill decays geometrically
        size = 160
        gram = gram_Ab2(symbol_half, size)
        rng = np.random.default_rng(2)
        g = PolynomialVector(rng.uniform(size=13) + 1j * rng.uniform(size=13))
        for n in (2, 5, 9):
            h = project_onto_Mn_perp(g, n, gram)
            p = apply_sb(symbol_half, h)
            assert np.max(np.abs(p.padded(size + 2)[n:])) <= 1e-10
