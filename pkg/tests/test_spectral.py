"""Transform construction against closed-form bases, plus contract checks."""

import numpy as np
import pytest

from gftdown import (DefectiveMatrix, DegenerateDegree, DegenerateSpectrum,
                     DimensionError, Graph, Spectrum, UnsupportedGraph,
                     bandwidth, forward, generate_dct_path,
                     generate_directed_cycle, generate_random, gft,
                     high_band_size, inverse, low_band_size,
                     make_lowpass_signal)


def dct2_matrix(n):
    k = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    c = np.sqrt(2.0 / n) * np.cos(np.pi * k * (2 * j + 1) / (2 * n))
    c[0] /= np.sqrt(2)
    return c


def suite_graphs():
    """Small zoo shared by the contract checks."""
    rng_graphs = [
        generate_random(8, 0.5, seed=1),
        generate_random(9, 0.4, "gaussian01", seed=2),
        generate_random(7, 0.6, undirected=False, seed=3),
    ]
    return [generate_directed_cycle(6), generate_dct_path(8)] + rng_graphs


class TestAdjacencyVariant:
    def test_cycle_eigenvalues_are_roots_of_unity(self, dft6_basis):
        roots = np.exp(2j * np.pi * np.arange(6) / 6)
        got = np.sort_complex(np.asarray(dft6_basis.eigenvalues, dtype=complex))
        np.testing.assert_allclose(got, np.sort_complex(roots), atol=1e-10)

    def test_cycle_frequency_grouping(self, dft6_basis):
        # |1 - lam| = 2|sin(pi k / 6)| sorts as 0, the two +/-1 pairs, then -1
        lam = np.asarray(dft6_basis.eigenvalues, dtype=complex)
        keys = np.abs(1 - lam / dft6_basis.lambda_max)
        expected = np.sort(2 * np.abs(np.sin(np.pi * np.arange(6) / 6)))
        np.testing.assert_allclose(keys, expected, atol=1e-10)
        assert abs(dft6_basis.lambda_max - 1.0) < 1e-10
        assert (np.diff(keys) >= -1e-12).all()

    def test_dct_path_rows_equal_cosine_basis(self):
        basis = gft(generate_dct_path(8))
        np.testing.assert_allclose(basis.F, dct2_matrix(8), atol=1e-10)
        assert np.isrealobj(basis.eigenvalues)

    def test_symmetric_graph_real_spectrum(self):
        basis = gft(generate_random(10, 0.4, seed=6))
        assert np.max(np.abs(np.imag(np.asarray(basis.eigenvalues, complex)))) < 1e-9

    def test_frequency_keys_nondecreasing(self):
        for graph in suite_graphs():
            basis = gft(graph)
            lam = np.asarray(basis.eigenvalues, dtype=complex)
            keys = np.abs(1 - lam / basis.lambda_max)
            assert (np.diff(keys) >= -1e-12).all()

    def test_bitwise_deterministic(self):
        g = generate_random(12, 0.4, undirected=False, seed=13)
        a, b = gft(g), gft(g)
        assert np.array_equal(a.F, b.F)
        assert np.array_equal(a.F_inv, b.F_inv)
        assert np.array_equal(np.asarray(a.eigenvalues), np.asarray(b.eigenvalues))

    def test_basis_arrays_are_read_only(self, dft6_basis):
        with pytest.raises(ValueError):
            dft6_basis.F[0, 0] = 0.0
        with pytest.raises(ValueError):
            dft6_basis.F_inv[0, 0] = 0.0

    def test_defective_matrix_rejected(self):
        g = Graph(np.array([[1.0, 1.0], [0.0, 1.0]]), directed=True)
        with pytest.raises(DefectiveMatrix):
            gft(g)

    def test_zero_spectrum_rejected(self):
        g = Graph(np.zeros((3, 3)), directed=False)
        with pytest.raises(DegenerateSpectrum):
            gft(g)


class TestLaplacianVariants:
    def test_laplacian_matches_direct_eigendecomposition(self):
        g = generate_random(8, 0.5, seed=4)
        degrees = g.weights.sum(axis=1)
        lap = np.diag(degrees) - g.weights
        expected = np.sort(np.linalg.eigvalsh(lap))
        basis = gft(g, "laplacian")
        np.testing.assert_allclose(np.asarray(basis.eigenvalues), expected, atol=1e-10)
        assert basis.lambda_max is None

    def test_normalized_eigenvalues_in_unit_interval_twice(self):
        for seed in (1, 2, 3):
            g = generate_random(10, 0.6, seed=seed)
            basis = gft(g, "normalized_laplacian")
            lam = np.asarray(basis.eigenvalues)
            assert lam.min() > -1e-9
            assert lam.max() < 2 + 1e-9

    def test_rows_orthogonal(self):
        basis = gft(generate_dct_path(6), "laplacian")
        np.testing.assert_allclose(basis.F @ basis.F.T, np.eye(6), atol=1e-10)

    def test_directed_rejected(self):
        with pytest.raises(UnsupportedGraph):
            gft(generate_directed_cycle(4), "laplacian")

    def test_negative_degree_rejected(self):
        g = Graph(np.array([[0.0, -1.0], [-1.0, 0.0]]), directed=False)
        with pytest.raises(DegenerateDegree):
            gft(g, "laplacian")

    def test_zero_degree_rejected_for_normalized(self):
        w = np.zeros((3, 3))
        w[0, 1] = w[1, 0] = 1.0  # vertex 2 isolated
        with pytest.raises(DegenerateDegree):
            gft(Graph(w, directed=False), "normalized_laplacian")


class TestRoundTrips:
    @pytest.mark.parametrize("variant", ["adjacency", "laplacian", "normalized_laplacian"])
    def test_forward_inverse_round_trip(self, variant):
        g = generate_random(9, 0.6, seed=7)
        basis = gft(g, variant)
        rng = np.random.default_rng(0)
        x = rng.standard_normal(9)
        back = inverse(basis, forward(basis, x))
        np.testing.assert_allclose(back, x, rtol=0, atol=1e-10 * np.linalg.norm(x))

    def test_directed_cycle_round_trip(self, dft6_basis):
        rng = np.random.default_rng(1)
        x = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        back = inverse(dft6_basis, forward(dft6_basis, x))
        assert np.linalg.norm(back - x) < 1e-10 * np.linalg.norm(x)

    def test_basis_vector_maps_to_unit_spectrum(self, dft6_basis):
        x = dft6_basis.F_inv[:, 2]
        spec = forward(dft6_basis, x).coefficients
        expected = np.zeros(6)
        expected[2] = 1.0
        np.testing.assert_allclose(spec, expected, atol=1e-10)

    def test_zero_signal(self, dft6_basis):
        assert np.all(forward(dft6_basis, np.zeros(6)).coefficients == 0)

    def test_parseval_for_orthogonal_variants(self):
        g = generate_random(8, 0.5, seed=10)
        rng = np.random.default_rng(2)
        x = rng.standard_normal(8)
        for variant in ("laplacian", "normalized_laplacian", "adjacency"):
            basis = gft(g, variant)
            assert abs(np.linalg.norm(basis.F @ x) - np.linalg.norm(x)) < 1e-9

    def test_identity_residual_small_everywhere(self):
        for graph in suite_graphs():
            basis = gft(graph)
            n = basis.n
            residual = np.linalg.norm(basis.F @ basis.F_inv - np.eye(n)) / np.sqrt(n)
            assert residual < 1e-9

    def test_dimension_mismatch(self, dft6_basis):
        with pytest.raises(DimensionError):
            forward(dft6_basis, np.zeros(5))
        with pytest.raises(DimensionError):
            inverse(dft6_basis, np.zeros(7))


class TestSpectrumViews:
    def test_band_sizes_even_and_odd(self):
        assert (low_band_size(6), high_band_size(6)) == (3, 3)
        assert (low_band_size(7), high_band_size(7)) == (4, 3)

    def test_views_reassemble(self):
        spec = Spectrum(np.arange(7.0))
        np.testing.assert_array_equal(np.concatenate([spec.low, spec.high]),
                                      spec.coefficients)
        assert spec.low.size == 4 and spec.high.size == 3


class TestBandwidth:
    def test_plain_cutoff(self):
        assert bandwidth(Spectrum(np.array([1.0, 0.5, 0.0, 0.0])), tol=0.0) == 2

    def test_all_zero(self):
        assert bandwidth(Spectrum(np.zeros(4))) == 0

    def test_tolerance_scan_from_top(self):
        spec = Spectrum(np.array([1.0, 1e-13, 1.0, 0.0]))
        assert bandwidth(spec, tol=1e-12) == 3

    def test_negative_tol_rejected(self):
        with pytest.raises(ValueError):
            bandwidth(Spectrum(np.zeros(3)), tol=-1.0)


class TestLowpassSynthesis:
    def test_zero_eps_is_bandlimited(self, dft6_basis):
        x = make_lowpass_signal(dft6_basis, np.array([1.0, 0.5, 0.25]), 0.0, seed=5)
        spec = forward(dft6_basis, x)
        assert bandwidth(spec, tol=1e-12) <= low_band_size(6)

    @pytest.mark.parametrize("eps", [1e-6, 1e-3, 0.5])
    def test_high_band_norm_exactly_eps(self, dft6_basis, eps):
        x = make_lowpass_signal(dft6_basis, np.ones(3), eps, seed=6)
        spec = forward(dft6_basis, x)
        assert abs(np.linalg.norm(spec.high) - eps) < 1e-12

    def test_pure_high_band(self, dft6_basis):
        x = make_lowpass_signal(dft6_basis, np.zeros(3), 1.0, seed=7)
        spec = forward(dft6_basis, x)
        assert np.linalg.norm(spec.low) < 1e-12
        assert abs(np.linalg.norm(spec.high) - 1.0) < 1e-12

    def test_seeded_determinism(self, dft6_basis):
        a = make_lowpass_signal(dft6_basis, np.ones(3), 0.1, seed=8)
        b = make_lowpass_signal(dft6_basis, np.ones(3), 0.1, seed=8)
        assert np.array_equal(a, b)

    def test_profile_length_checked(self, dft6_basis):
        with pytest.raises(DimensionError):
            make_lowpass_signal(dft6_basis, np.ones(4), 0.1, seed=1)
