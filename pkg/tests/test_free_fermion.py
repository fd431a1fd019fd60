import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.exceptions import SizeGuardError
from src.models.free_fermion import (
    RootFamily,
    bdg_spectrum,
    build_A,
    chebyshev_U,
    dispersion_table,
    eigensolve_deviation,
    ground_energy,
    many_body_spectrum,
    occupation_spectrum,
    quadratic_form,
    secular_roots,
)
from src.models.hamiltonians import QFParams, build_qf_fermionic, build_qf_spin
from src.solvers.exact_diag import spectra_match, spectrum_of

SQRT3 = np.sqrt(3.0)


class TestHoppingMatrix:
    def test_single_site_legs(self):
        A = build_A(1, 1.0).matrix
        assert A[0, 1] == 1j and A[1, 2] == 1j and A[2, 0] == 1j
        assert A[1, 0] == -1j and A[2, 1] == -1j and A[0, 2] == -1j
        np.testing.assert_allclose(build_A(1, 1.0).eigenvalues(), [-SQRT3, 0, SQRT3], atol=1e-14)

    def test_renumbering(self):
        A = build_A(2, 0.5).matrix
        assert A[0, 2] == 0.5j and A[2, 4] == 0.5j and A[4, 0] == 0.5j
        for i in (0, 2, 4):
            assert A[i, i + 1] == 1 and A[i + 1, i] == 1
        assert A[1, 2] == 0 and A[3, 4] == 0

    @pytest.mark.parametrize("L, a", [(1, 0.2), (3, 1.0), (7, -0.4)])
    def test_hermitian_traceless(self, L, a):
        A = build_A(L, a).matrix
        np.testing.assert_array_equal(A, A.conj().T)
        assert np.trace(A) == 0
        assert np.all(np.diag(A) == 0)


class TestChebyshev:
    def test_low_orders(self):
        assert chebyshev_U(0, 0.3) == pytest.approx(1.0)
        assert chebyshev_U(1, 0.3) == pytest.approx(0.6)
        assert chebyshev_U(5, 1.0) == pytest.approx(6.0)
        assert chebyshev_U(-1, 0.3) == 0.0

    @given(st.integers(0, 200), st.floats(0.01, np.pi - 0.01))
    def test_trigonometric_identity(self, n, theta):
        assert chebyshev_U(n, np.cos(theta)) * np.sin(theta) == pytest.approx(np.sin((n + 1) * theta), abs=1e-10)


class TestSecularRoots:
    @pytest.mark.parametrize("L", [1, 2, 5, 10])
    def test_decoupled_chains(self, L):
        modes = secular_roots(L, 0.0)
        closed = np.sort(2 * np.cos(np.arange(1, L + 1) * np.pi / (L + 1)))
        for family in RootFamily:
            np.testing.assert_allclose(modes.by_family(family), closed, atol=1e-12)

    def test_single_site_legs(self):
        modes = secular_roots(1, 1.0)
        np.testing.assert_allclose(modes.lambdas, [-SQRT3, 0, SQRT3], atol=1e-13)
        assert modes.by_family("plus")[0] == pytest.approx(-SQRT3)
        assert modes.by_family("minus")[0] == pytest.approx(SQRT3)

    @pytest.mark.parametrize("L", [1, 2, 5, 50, 150])
    @pytest.mark.parametrize("a", [0.0, 0.3, 1.0])
    def test_matches_eigensolve(self, L, a):
        modes = secular_roots(L, a)
        assert len(modes.lambdas) == 3 * L
        for family in RootFamily:
            assert len(modes.by_family(family)) == L
        assert eigensolve_deviation(modes) <= 1e-10
        assert modes.symmetry_deviation() <= 1e-10
        assert abs(modes.lambdas.sum()) <= 1e-9
        assert modes.residuals.max() <= 1e-10

    def test_isolated_roots(self):
        modes = secular_roots(150, 1.0)
        assert len(modes.lambdas) == 450
        assert modes.count_out_of_band(RootFamily.PLUS) == 1
        assert modes.count_out_of_band(RootFamily.MINUS) == 1
        assert modes.count_out_of_band(RootFamily.CHEBYSHEV) == 0
        assert modes.by_family("plus")[0] < -2
        assert modes.by_family("minus")[-1] > 2
        assert modes.superposition_gap() < 0.05

    def test_no_isolated_roots_below_threshold(self):
        # a*sqrt(3) = 1.2 < (L+1)/L for L = 4
        modes = secular_roots(4, 1.2 / SQRT3)
        assert not modes.out_of_band.any()

    def test_threshold_root_sits_on_band_edge(self):
        modes = secular_roots(1, 2 / SQRT3)
        assert modes.by_family("plus")[0] == pytest.approx(-2.0, abs=1e-12)
        assert modes.by_family("minus")[0] == pytest.approx(2.0, abs=1e-12)

    def test_negative_coupling_swaps_sides(self):
        modes = secular_roots(3, -1.0)
        assert modes.by_family("plus")[-1] > 2
        assert modes.by_family("minus")[0] < -2
        assert eigensolve_deviation(modes) <= 1e-10

    def test_rejects_complex_a(self):
        with pytest.raises(ValueError):
            secular_roots(2, 0.5j)


class TestDispersionTable:
    def test_full_dispersion(self):
        table = dispersion_table(150, 1.0)
        assert len(table) == 450
        assert list(table.columns) == ["family", "k", "lambda"]
        assert int((table["lambda"].abs() > 2).sum()) == 2
        for _, rows in table.groupby("family"):
            assert rows["lambda"].is_monotonic_increasing
            assert list(rows["k"]) == list(range(1, 151))

    def test_identical_families_at_zero_coupling(self):
        table = dispersion_table(6, 0.0)
        columns = [table[table["family"] == f.value]["lambda"].to_numpy() for f in RootFamily]
        np.testing.assert_allclose(columns[0], columns[2], atol=1e-12)
        np.testing.assert_allclose(columns[1], columns[2], atol=1e-12)

    def test_three_rows(self):
        table = dispersion_table(1, 1.0)
        np.testing.assert_allclose(np.sort(table["lambda"]), [-SQRT3, 0, SQRT3], atol=1e-13)


class TestManyBody:
    def test_three_modes(self):
        spectrum = many_body_spectrum([0.0, SQRT3, -SQRT3])
        expected = [-SQRT3] * 2 + [0.0] * 4 + [SQRT3] * 2
        np.testing.assert_allclose(spectrum.eigenvalues, expected, atol=1e-14)
        assert spectrum.metadata["occupation_agrees"]

    def test_no_modes(self):
        np.testing.assert_array_equal(many_body_spectrum([]).eigenvalues, [0.0])

    def test_single_mode(self):
        spectrum = many_body_spectrum([1.0])
        np.testing.assert_array_equal(spectrum.eigenvalues, [-0.5, 0.5])
        # sum of lambda is 1, so the occupation form is shifted by 1/2
        assert not spectrum.metadata["occupation_agrees"]
        assert spectrum.metadata["trace_shift"] == 0.5
        np.testing.assert_array_equal(occupation_spectrum([1.0]).eigenvalues, [0.0, 1.0])

    def test_occupation_form_agrees_for_star(self):
        modes = secular_roots(3, 0.7)
        eps_form = many_body_spectrum(modes)
        assert eps_form.metadata["occupation_agrees"]
        np.testing.assert_allclose(eps_form.eigenvalues, occupation_spectrum(modes).eigenvalues, atol=1e-12)

    def test_ground_energy(self):
        assert ground_energy([0.0, SQRT3, -SQRT3]) == pytest.approx(-SQRT3)
        assert ground_energy([0.0, 0.0]) == 0.0
        assert ground_energy(secular_roots(2, 0.0)) == pytest.approx(-3.0)

    def test_guard(self):
        with pytest.raises(SizeGuardError):
            many_body_spectrum(np.ones(13))

    @pytest.mark.parametrize("L", [1, 2, 3])
    def test_matches_spin_model(self, L):
        a = 0.8
        modes = secular_roots(L, a)
        free = many_body_spectrum(modes)
        exact = spectrum_of(build_qf_spin(QFParams.uniform(L, a)))
        result = spectra_match(free, exact, multiplicity=2)
        assert result.match
        assert free.min == pytest.approx(ground_energy(modes), abs=1e-12)

    def test_ground_state_two_site_legs(self):
        exact = spectrum_of(build_qf_spin(QFParams.uniform(2, 0.0)))
        assert exact.min == pytest.approx(-3.0, abs=1e-10)


class TestBdG:
    def test_pairing_block_antisymmetric(self):
        h, delta = quadratic_form(QFParams(2, 0.4, (0.3, 0.1, 0.2), (0.5, 0.2j, -0.1)))
        np.testing.assert_array_equal(h, h.conj().T)
        np.testing.assert_array_equal(delta, -delta.T)

    def test_reduces_to_secular_roots(self):
        bdg = bdg_spectrum(QFParams.uniform(2, 0.6))
        free = many_body_spectrum(secular_roots(2, 0.6))
        assert spectra_match(free, bdg).match

    def test_single_site_legs_against_fermionic_form(self):
        p = QFParams(1, 0.4, (0.3, 0.3, 0.3))
        exact = spectrum_of(build_qf_fermionic(p))
        result = spectra_match(bdg_spectrum(p), exact, multiplicity=2)
        assert result.match and result.max_dev <= 1e-9

    @pytest.mark.parametrize("L", [1, 2])
    def test_random_draws(self, L):
        rng = np.random.default_rng(40 + L)
        for _ in range(3):
            p = QFParams(
                L,
                float(rng.normal()),
                tuple(rng.normal(size=3) + 1j * rng.normal(size=3)),
                tuple(rng.normal(size=3) + 1j * rng.normal(size=3)),
            )
            bdg = bdg_spectrum(p)
            assert spectra_match(bdg, spectrum_of(build_qf_spin(p)), multiplicity=2).match
            assert all(e >= 0 for e in bdg.metadata["quasiparticle_energies"])

    def test_guard(self):
        with pytest.raises(SizeGuardError):
            bdg_spectrum(QFParams(5, 0.1))
