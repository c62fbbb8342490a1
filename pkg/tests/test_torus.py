import math

import numpy as np
import pytest

import oracles
from bornjordan.quantizer import OrderingRule
from bornjordan.torus import (
    GridOperator,
    GridSpec,
    GridState,
    PhaseSpaceGridFunction,
    census_count,
    clock,
    constant_function,
    cos_q,
    displacement,
    fourier_coefficients,
    fourier_quantize,
    gaussian_excited_projector,
    gaussian_state,
    grid_quantum_bracket,
    harper,
    matrix_element_check,
    mixed_component,
    nullspace_census,
    p_split_operator,
    q_split_operator,
    quantize_grid,
    shift,
    sinc,
    sinc_factor,
    wigner_inverse,
)

BJ, WEYL = OrderingRule.BORN_JORDAN, OrderingRule.WEYL
SPEC = GridSpec(64)
SMALL = GridSpec(16)


def band_limited(spec, rng, band=None):
    """Random real function whose Fourier support avoids the Nyquist lines."""
    N = spec.N
    band = band or N // 2 - 1
    C = np.zeros((N, N), dtype=complex)
    for m in range(-band, band + 1):
        for s in range(-band, band + 1):
            if (m, s) <= (-m, -s):
                continue
            c = complex(rng.normal(), rng.normal()) / N
            C[m % N, s % N] += c
            C[-m % N, -s % N] += c.conjugate()
    C[0, 0] = rng.normal()
    return PhaseSpaceGridFunction(spec, np.fft.ifft2(C) * N * N)


class TestGridSpec:
    def test_defaults(self):
        assert SPEC.N == 64 and SPEC.hbar == 1.0
        assert math.isclose(SPEC.L, math.sqrt(2 * math.pi * 64))
        assert math.isclose(SPEC.P, SPEC.L)

    def test_theta(self):
        assert math.isclose(SPEC.theta(3, 5), 2 * math.pi * 15 / 64)
        assert math.isclose(SPEC.hbar * SPEC.wavenumber(3) * SPEC.displacement_param(5), SPEC.theta(3, 5))

    @pytest.mark.parametrize("N", [3, 2, 7, 0])
    def test_rejects_bad_sizes(self, N):
        with pytest.raises(ValueError):
            GridSpec(N)

    def test_reduce(self):
        assert [SMALL.reduce(m) for m in (8, -8, 9, 15, 16, -9)] == [-8, -8, -7, -1, 0, 7]


class TestDisplacement:
    def test_identity(self):
        assert np.array_equal(displacement(SPEC, 0, 0).entries, np.eye(64))

    def test_clock_shift_relation(self):
        for m, s in [(1, 1), (3, -7), (-32, 5), (10, 31)]:
            M, T = clock(SPEC, m), shift(SPEC, s)
            assert np.max(np.abs(M @ T - np.exp(-1j * SPEC.theta(m, s)) * T @ M)) < 1e-12

    @pytest.mark.parametrize("m,s", [(1, 2), (-5, 7), (8, 8), (-32, -32), (13, 0)])
    def test_matches_entrywise_oracle(self, m, s):
        assert np.max(np.abs(displacement(SPEC, m, s).entries - oracles.displacement_matrix(64, m, s))) < 1e-12

    @pytest.mark.parametrize("m,s", [(1, 2), (-5, 7), (20, -31)])
    def test_unitary_and_adjoint(self, m, s):
        E = displacement(SPEC, m, s)
        assert np.max(np.abs(E.dagger().entries @ E.entries - np.eye(64))) < 1e-13
        assert np.max(np.abs(E.dagger().entries - displacement(SPEC, -m, -s).entries)) < 1e-13

    def test_adjoint_pairing_holds_on_nyquist_lines(self):
        for m in SMALL.window:
            for s in SMALL.window:
                E, F = displacement(SMALL, m, s), displacement(SMALL, -m, -s)
                assert np.max(np.abs(F.entries - E.dagger().entries)) < 1e-13

    def test_nyquist_labels(self):
        assert SMALL.label(-8, 3) == (8, 3)
        assert SMALL.label(-8, -3) == (-8, -3)
        assert SMALL.label(5, -8) == (5, 8)
        assert SMALL.label(-8, -8) == (-8, -8)
        assert SMALL.label(-8, 0) == (-8, 0)

    def test_orthogonality(self):
        pairs = [(m, s) for m in range(-8, 8) for s in range(-8, 8)]
        Es = {ms: displacement(SMALL, *ms).entries for ms in pairs}
        rng = np.random.default_rng(0)
        for _ in range(100):
            a, b = (pairs[i] for i in rng.integers(0, len(pairs), 2))
            ip = np.trace(Es[a].conj().T @ Es[b])
            assert abs(ip - (16 if a == b else 0)) < 1e-12


class TestFourierQuantize:
    def test_sinc(self):
        assert sinc(0) == 1.0
        assert math.isclose(sinc(math.pi / 2), 2 / math.pi)

    def test_sinc_factor_is_exactly_zero_on_null_set(self):
        assert sinc_factor(SPEC, 8, 8) == 0.0
        assert sinc_factor(SPEC, 5, 0) == 1.0 and sinc_factor(SPEC, 0, -32) == 1.0

    def test_null_pair_vanishes(self):
        assert fourier_quantize(SPEC, 8, 8, BJ).max_abs() < 1e-12

    @pytest.mark.parametrize("m", [1, -7, 31, -32])
    def test_pure_position_components(self, m):
        M = clock(SPEC, m)
        for rule in (BJ, WEYL):
            assert np.max(np.abs(fourier_quantize(SPEC, m, 0, rule).entries - M)) < 1e-14

    @pytest.mark.parametrize("m,s", [(1, 1), (3, -5), (-11, 17), (2, 31)])
    def test_rules_differ_by_sinc(self, m, s):
        bj, w = fourier_quantize(SPEC, m, s, BJ), fourier_quantize(SPEC, m, s, WEYL)
        factor = math.sin(math.pi * m * s / 64) / (math.pi * m * s / 64)
        assert np.max(np.abs(bj.entries - factor * w.entries)) < 1e-14

    @pytest.mark.parametrize("m,s", [(1, 1), (3, -5), (-11, 17), (6, 10), (-32, 3)])
    def test_splits_agree(self, m, s):
        q_split, p_split = q_split_operator(SPEC, m, s), p_split_operator(SPEC, m, s)
        bj = fourier_quantize(SPEC, m, s, BJ).entries
        assert np.max(np.abs(q_split - p_split)) < 1e-13
        assert np.max(np.abs(q_split - bj)) < 1e-13

    @pytest.mark.parametrize("m,s", [(1, 1), (3, -5), (-11, 17), (6, 10), (5, 0), (0, 7)])
    def test_bracket_of_clock_and_shift(self, m, s):
        M = GridOperator(SPEC, clock(SPEC, m))
        T = GridOperator(SPEC, shift(SPEC, s))
        lhs = grid_quantum_bracket(M, T).entries
        k, l = SPEC.wavenumber(m), SPEC.displacement_param(s)
        # T(s) M(m) = exp(i theta/2) E(m, s); the bracket is -k l times the BJ component
        # once both sides are expressed against the symmetric product
        rhs = -k * l * fourier_quantize(SPEC, m, s, BJ).entries
        direct = (-1j / SPEC.hbar) * (M.entries @ T.entries - T.entries @ M.entries)
        assert np.max(np.abs(lhs - direct)) < 1e-12
        if m * s == 0:
            assert np.max(np.abs(lhs)) < 1e-12
        else:
            assert np.max(np.abs(lhs - rhs)) < 1e-12


class TestCensus:
    def test_small_grid_brute_force(self):
        spec = GridSpec(4)
        census = nullspace_census(spec)
        assert census == sorted(oracles.census_brute_force(4))
        assert census == [(-2, -2)]

    @pytest.mark.parametrize("N", [4, 6, 8, 12, 16, 64])
    def test_counts(self, N):
        census = nullspace_census(GridSpec(N))
        assert sorted(census) == sorted(oracles.census_brute_force(N))
        assert len(census) == census_count(N)

    def test_known_pairs(self):
        census = set(nullspace_census(SPEC))
        assert {(8, 8), (16, 4), (-32, 2)} <= census
        assert len(census) == 129
        assert not any(m == 0 or s == 0 for m, s in census)

    def test_census_operators_vanish(self):
        for m, s in nullspace_census(GridSpec(16)):
            assert fourier_quantize(GridSpec(16), m, s, BJ).max_abs() < 1e-12


class TestMatrixElements:
    @pytest.mark.parametrize("m,s", [(5, 0), (0, 3), (3, 7), (-16, 15), (8, 8)])
    def test_deviation(self, m, s):
        assert matrix_element_check(GridSpec(32), m, s) < 1e-12

    def test_pure_position_component_is_diagonal(self):
        assert matrix_element_check(GridSpec(32), 5, 0) == 0.0


class TestQuantizeGrid:
    def test_fourier_coefficients_match_direct_sums(self):
        coeffs = {(1, 2): 0.5 - 0.25j, (-3, 1): 1.5, (0, -2): 0.3j}
        F = PhaseSpaceGridFunction(SMALL, oracles.dft2_samples(16, coeffs))
        C = fourier_coefficients(F)
        for (m, s), c in coeffs.items():
            assert abs(C[m % 16, s % 16] - c) < 1e-12
        mask = np.ones((16, 16), bool)
        for m, s in coeffs:
            mask[m % 16, s % 16] = False
        assert np.max(np.abs(C[mask])) < 1e-12

    def test_synthesis_matches_component_sum(self):
        coeffs = {(1, 2): 0.5 - 0.25j, (-3, 1): 1.5, (0, -2): 0.3j, (4, 4): 2.0}
        F = PhaseSpaceGridFunction(SMALL, oracles.dft2_samples(16, coeffs))
        for rule in (BJ, WEYL):
            expected = sum(c * fourier_quantize(SMALL, m, s, rule).entries for (m, s), c in coeffs.items())
            assert np.max(np.abs(quantize_grid(F, rule).entries - expected)) < 1e-12

    @pytest.mark.parametrize("m", [1, 3, -5])
    def test_position_functions_are_diagonal(self, m):
        F = cos_q(SPEC, m)
        for rule in (BJ, WEYL):
            assert np.max(np.abs(quantize_grid(F, rule).entries - np.diag(F.samples[:, 0]))) < 1e-12

    def test_constant_is_identity(self):
        for rule in (BJ, WEYL):
            assert np.max(np.abs(quantize_grid(constant_function(SPEC), rule).entries - np.eye(64))) < 1e-12

    def test_null_component_is_lost_by_born_jordan(self):
        F = mixed_component(SPEC, 8, 8)
        assert quantize_grid(F, BJ).max_abs() < 1e-12
        W = quantize_grid(F, WEYL)
        assert abs(W.norm() - 1.0) < 1e-12
        assert np.max(np.abs(F.samples)) > 0.9

    def test_linear(self):
        rng = np.random.default_rng(1)
        F = PhaseSpaceGridFunction(SMALL, rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16)))
        G = PhaseSpaceGridFunction(SMALL, rng.normal(size=(16, 16)))
        a, b = 0.7 - 0.2j, -1.3
        for rule in (BJ, WEYL):
            lhs = quantize_grid(F * a + G * b, rule).entries
            rhs = a * quantize_grid(F, rule).entries + b * quantize_grid(G, rule).entries
            assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_band_limited_real_functions_give_hermitian_operators(self):
        rng = np.random.default_rng(2)
        for _ in range(3):
            F = band_limited(SPEC, rng)
            assert F.is_real(1e-12)
            for rule in (BJ, WEYL):
                assert quantize_grid(F, rule).hermiticity_error() < 1e-12

    def test_real_functions_with_nyquist_content_give_hermitian_operators(self):
        rng = np.random.default_rng(6)
        for _ in range(3):
            F = PhaseSpaceGridFunction(SPEC, rng.normal(size=(64, 64)))
            for rule in (BJ, WEYL):
                assert quantize_grid(F, rule).hermiticity_error() < 1e-12
        j = np.arange(16)
        G = PhaseSpaceGridFunction(SMALL, np.cos(2 * np.pi * (3 * j[:, None] - 8 * j[None, :]) / 16))
        assert quantize_grid(G, WEYL).hermiticity_error() < 1e-13

    def test_deterministic(self):
        F = harper(SPEC) + mixed_component(SPEC, 3, 5)
        a, b = quantize_grid(F, BJ).entries, quantize_grid(F, BJ).entries
        assert a.tobytes() == b.tobytes()


class TestWigner:
    def test_identity(self):
        W = wigner_inverse(GridOperator(SPEC, np.eye(64)))
        assert np.max(np.abs(W.samples - 1)) < 1e-12

    def test_round_trip(self):
        rng = np.random.default_rng(3)
        for _ in range(3):
            F = PhaseSpaceGridFunction(SPEC, rng.normal(size=(64, 64)))
            assert np.max(np.abs(wigner_inverse(quantize_grid(F, WEYL)).samples - F.samples)) < 1e-10

    def test_round_trip_complex(self):
        rng = np.random.default_rng(4)
        F = PhaseSpaceGridFunction(SMALL, rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16)))
        assert np.max(np.abs(wigner_inverse(quantize_grid(F, WEYL)).samples - F.samples)) < 1e-11

    def test_hermitian_operators_have_real_wigner_functions(self):
        rng = np.random.default_rng(5)
        X = rng.normal(size=(64, 64)) + 1j * rng.normal(size=(64, 64))
        W = wigner_inverse(GridOperator(SPEC, X + X.conj().T))
        assert np.max(np.abs(W.samples.imag)) < 1e-10

    def test_excited_state_is_negative_somewhere(self):
        W = wigner_inverse(gaussian_excited_projector(SPEC))
        assert W.samples.real.min() < -1e-3

    def test_coherent_state_normalization(self):
        # Tr(rho) = 1 means the phase-space average of the Wigner samples is 1/N
        psi = gaussian_state(SPEC)
        W = wigner_inverse(psi.projector())
        assert abs(W.samples.mean() - 1 / 64) < 1e-12


class TestValues:
    def test_operator_shape_checked(self):
        with pytest.raises(ValueError):
            GridOperator(SPEC, np.eye(3))

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            GridState(SMALL, np.full(16, np.nan))

    def test_read_only(self):
        A = GridOperator(SMALL, np.eye(16))
        with pytest.raises(ValueError):
            A.entries[0, 0] = 2

    def test_spec_mismatch(self):
        with pytest.raises(ValueError):
            GridOperator(SMALL, np.eye(16)) + GridOperator(GridSpec(8), np.eye(8))

    def test_gaussian_state_normalized(self):
        assert abs(gaussian_state(SPEC, 3.0, 1.0).norm() - 1) < 1e-14
