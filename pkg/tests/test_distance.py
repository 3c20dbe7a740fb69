"""State-dependent operator distance and root-of-unity averages."""

import numpy as np
import pytest

from lcsgames.errors import DimensionMismatchError, ValidationError
from lcsgames.quantum import (
    DensityOperator,
    epr_density,
    partial_trace,
    pure_density,
    random_density,
    random_hermitian,
    random_unitary,
    root_combination_bounds,
    state_distance,
    state_distance_squared,
)

TOL = 1e-8


def ginibre(dim, rng):
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def small_rotation(dim, scale, rng):
    h = random_hermitian(dim, rng)
    values, vectors = np.linalg.eigh(h)
    values = values / np.max(np.abs(values))
    return (vectors * np.exp(1j * scale * values)) @ vectors.conj().T


def random_isometry(dim, bigDim, rng):
    return random_unitary(bigDim, rng)[:, :dim]


class TestDefinition:
    def test_distance_from_itself_is_zero(self):
        rng = np.random.default_rng(0)
        rho = random_density(5, rng)
        z = ginibre(5, rng)
        assert state_distance(rho, z, z) == 0.0

    def test_matches_direct_trace_formula(self):
        rng = np.random.default_rng(1)
        rho = random_density(4, rng)
        x, y = ginibre(4, rng), ginibre(4, rng)
        diff = x - y
        direct = np.trace(rho.entries @ diff.conj().T @ diff).real
        assert abs(state_distance_squared(rho, x, y) - direct) < 1e-12

    def test_dimension_mismatch_is_rejected(self):
        rng = np.random.default_rng(2)
        rho = random_density(3, rng)
        with pytest.raises(DimensionMismatchError):
            state_distance(rho, np.eye(4), np.eye(4))

    def test_maximally_entangled_state_gives_scaled_frobenius_norm(self):
        # On the maximally entangled state, distance between A (x) I and
        # B (x) I is the Frobenius norm of A - B divided by sqrt(dim).
        rng = np.random.default_rng(3)
        dim = 4
        rho = epr_density(dim)
        a, b = random_unitary(dim, rng), random_unitary(dim, rng)
        eye = np.eye(dim)
        got = state_distance(rho, np.kron(a, eye), np.kron(b, eye))
        expected = np.linalg.norm(a - b) / np.sqrt(dim)
        assert abs(got - expected) < TOL


class TestCalculus:
    """Distance calculus on seeded random instances, dimensions up to 16."""

    def test_squared_distance_from_identity_via_real_trace(self):
        rng = np.random.default_rng(10)
        for _ in range(100):
            dim = int(rng.integers(2, 17))
            rho = random_density(dim, rng)
            u = random_unitary(dim, rng)
            expected = 2.0 - 2.0 * np.trace(rho.entries @ u).real
            assert abs(state_distance_squared(rho, u, np.eye(dim)) - expected) < TOL
            z = ginibre(dim, rng)
            general = (
                1.0
                + np.trace(rho.entries @ z.conj().T @ z).real
                - 2.0 * np.trace(rho.entries @ z).real
            )
            assert abs(state_distance_squared(rho, z, np.eye(dim)) - general) < TOL

    def test_left_unitary_factor_moves_to_other_side(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            dim = int(rng.integers(2, 17))
            rho = random_density(dim, rng)
            u = random_unitary(dim, rng)
            z = ginibre(dim, rng)
            eye = np.eye(dim)
            assert (
                abs(state_distance(rho, u @ z, eye) - state_distance(rho, z, u.conj().T))
                < TOL
            )
            assert (
                abs(state_distance(rho, u, eye) - state_distance(rho, u.conj().T, eye))
                < TOL
            )

    def test_triangle_inequality(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            dim = int(rng.integers(2, 17))
            rho = random_density(dim, rng)
            z1, z2, z3 = (ginibre(dim, rng) for _ in range(3))
            assert state_distance(rho, z1, z3) <= (
                state_distance(rho, z1, z2) + state_distance(rho, z2, z3) + TOL
            )

    def test_appending_a_factor_costs_its_distance_from_identity(self):
        # Multiplying a unitary word on the right by a new factor moves
        # it by at most that factor's distance from the identity.
        rng = np.random.default_rng(13)
        for _ in range(100):
            dim = int(rng.integers(2, 17))
            rho = random_density(dim, rng)
            u = random_unitary(dim, rng)
            z = ginibre(dim, rng)
            target = ginibre(dim, rng)
            eye = np.eye(dim)
            assert state_distance(rho, u @ z, target) <= (
                state_distance(rho, z, eye) + state_distance(rho, u, target) + TOL
            )

    def test_commuting_prefix_costs_its_distance_from_identity(self):
        # A left factor commuting with the rest of the word can be
        # bounded against the identity as well.
        rng = np.random.default_rng(14)
        for _ in range(100):
            dim = int(rng.integers(2, 17))
            rho = random_density(dim, rng)
            u = random_unitary(dim, rng)
            c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            z = c[0] * np.eye(dim) + c[1] * u + c[2] * u @ u
            target = random_unitary(dim, rng)
            eye = np.eye(dim)
            assert state_distance(rho, z @ u, target) <= (
                state_distance(rho, z, eye) + state_distance(rho, u, target) + TOL
            )

    def test_chaining_across_tensor_factors(self):
        # Consistency of each pair (A_i on the left leg, B_i on the
        # right leg) chains into consistency of the products, with the
        # right-leg product taken in reverse order.
        rng = np.random.default_rng(15)
        for _ in range(60):
            dimA = int(rng.integers(2, 5))
            dimB = int(rng.integers(2, 5))
            base = epr_density(dimA).entries if dimA == dimB else None
            if base is not None and rng.random() < 0.5:
                mixed = 0.9 * base + 0.1 * random_density(dimA * dimB, rng).entries
                rho = DensityOperator(dimA * dimB, mixed)
            else:
                rho = random_density(dimA * dimB, rng)
            count = int(rng.integers(2, 5))
            lefts = [random_unitary(dimA, rng) for _ in range(count)]
            rights = [random_unitary(dimB, rng) for _ in range(count)]
            eyeA, eyeB = np.eye(dimA), np.eye(dimB)
            productA = np.eye(dimA, dtype=complex)
            for a in lefts:
                productA = productA @ a
            productB = np.eye(dimB, dtype=complex)
            for b in reversed(rights):
                productB = productB @ b
            bound = sum(
                state_distance(rho, np.kron(a, eyeB), np.kron(eyeA, b))
                for a, b in zip(lefts, rights)
            )
            assert (
                state_distance(rho, np.kron(productA, eyeB), np.kron(eyeA, productB))
                <= bound + TOL
            )

    def test_chaining_is_sharp_on_nearly_consistent_pairs(self):
        # Near-consistent instances exercise the inequality where the
        # bound is small, not just where it is slack.
        rng = np.random.default_rng(16)
        for _ in range(40):
            dim = int(rng.integers(2, 5))
            mixed = 0.98 * epr_density(dim).entries + 0.02 * random_density(
                dim * dim, rng
            ).entries
            rho = DensityOperator(dim * dim, mixed)
            count = int(rng.integers(2, 5))
            lefts = [random_unitary(dim, rng) for _ in range(count)]
            rights = [a.T @ small_rotation(dim, 0.1, rng) for a in lefts]
            eye = np.eye(dim)
            productA = np.eye(dim, dtype=complex)
            for a in lefts:
                productA = productA @ a
            productB = np.eye(dim, dtype=complex)
            for b in reversed(rights):
                productB = productB @ b
            bound = sum(
                state_distance(rho, np.kron(a, eye), np.kron(eye, b))
                for a, b in zip(lefts, rights)
            )
            assert bound < 1.0
            assert (
                state_distance(rho, np.kron(productA, eye), np.kron(eye, productB))
                <= bound + TOL
            )

    def test_consistency_swaps_right_leg_factor_order(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            dimA = int(rng.integers(2, 5))
            dimB = int(rng.integers(2, 5))
            rho = random_density(dimA * dimB, rng)
            w = random_unitary(dimB, rng)
            b = random_unitary(dimB, rng)
            a = random_unitary(dimA, rng)
            eyeA = np.eye(dimA)
            eyeAB = np.eye(dimA * dimB)
            nu = state_distance(rho, np.kron(eyeA, w @ b), eyeAB)
            eta = state_distance(rho, np.kron(a, b), eyeAB)
            assert state_distance(rho, np.kron(eyeA, b @ w), eyeAB) <= nu + 2 * eta + TOL

    def test_mixture_of_unitaries_averages_distances(self):
        rng = np.random.default_rng(18)
        for _ in range(100):
            dim = int(rng.integers(2, 17))
            rho = random_density(dim, rng)
            count = int(rng.integers(2, 6))
            unitaries = [random_unitary(dim, rng) for _ in range(count)]
            eye = np.eye(dim)
            mixture = sum(unitaries) / count
            average = sum(state_distance(rho, u, eye) for u in unitaries) / count
            assert state_distance(rho, mixture, eye) <= average + TOL

    def test_tensor_identity_reduces_to_marginal(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            dimA = int(rng.integers(2, 5))
            dimB = int(rng.integers(2, 5))
            rho = random_density(dimA * dimB, rng)
            a = ginibre(dimA, rng)
            marginal = DensityOperator(
                dimA, partial_trace(rho.entries, (dimA, dimB), (0,))
            )
            full = state_distance(
                rho, np.kron(a, np.eye(dimB)), np.eye(dimA * dimB)
            )
            reduced = state_distance(marginal, a, np.eye(dimA))
            assert abs(full - reduced) < TOL

    def test_isometry_invariance(self):
        rng = np.random.default_rng(20)
        for _ in range(100):
            dim = int(rng.integers(2, 6))
            big = dim + int(rng.integers(0, 4))
            rho = random_density(dim, rng)
            z1, z2 = ginibre(dim, rng), ginibre(dim, rng)
            v = random_isometry(dim, big, rng)
            lifted = DensityOperator(big, v @ rho.entries @ v.conj().T)
            assert (
                abs(
                    state_distance(rho, z1, z2)
                    - state_distance(
                        lifted, v @ z1 @ v.conj().T, v @ z2 @ v.conj().T
                    )
                )
                < TOL
            )

    def test_projection_fixing_the_state_is_absorbed(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            dim = int(rng.integers(3, 17))
            rank = int(rng.integers(1, dim))
            basis = random_unitary(dim, rng)[:, :rank]
            projection = basis @ basis.conj().T
            raw = projection @ random_density(dim, rng).entries @ projection
            rho = DensityOperator(dim, raw / np.trace(raw))
            assert np.max(np.abs(rho.entries @ projection - rho.entries)) < 1e-12
            x = ginibre(dim, rng)
            eye = np.eye(dim)
            base = state_distance(rho, x, eye)
            assert abs(state_distance(rho, x @ projection, eye) - base) < TOL
            assert abs(state_distance(rho, x, projection) - base) < TOL

    def test_compression_preserves_distance_when_range_is_respected(self):
        # Conjugating by an isometry leaves the distance unchanged as
        # long as the big-space operator preserves the embedded range.
        rng = np.random.default_rng(22)
        for _ in range(100):
            dim = int(rng.integers(2, 6))
            big = dim + int(rng.integers(1, 4))
            rho = random_density(dim, rng)
            u = random_unitary(dim, rng)
            v = random_isometry(dim, big, rng)
            inner = random_unitary(dim, rng)
            complement = np.eye(big) - v @ v.conj().T
            uBig = v @ inner @ v.conj().T + complement
            lifted = DensityOperator(big, v @ rho.entries @ v.conj().T)
            small = state_distance(rho, u, v.conj().T @ uBig @ v)
            lifted_distance = state_distance(lifted, v @ u @ v.conj().T, uBig)
            assert abs(small - lifted_distance) < TOL

    def test_compression_never_exceeds_embedded_distance(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            dim = int(rng.integers(2, 6))
            big = dim + int(rng.integers(1, 4))
            rho = random_density(dim, rng)
            u = random_unitary(dim, rng)
            uBig = random_unitary(big, rng)
            v = random_isometry(dim, big, rng)
            lifted = DensityOperator(big, v @ rho.entries @ v.conj().T)
            small = state_distance(rho, u, v.conj().T @ uBig @ v)
            assert small <= state_distance(lifted, v @ u @ v.conj().T, uBig) + TOL


class TestRootCombinations:
    def test_needs_a_probability_vector(self):
        with pytest.raises(ValidationError, match="one weight per root"):
            root_combination_bounds([1.0], 3)
        with pytest.raises(ValidationError, match="nonnegative"):
            root_combination_bounds([1.5, -0.5], 2)
        with pytest.raises(ValidationError, match="sum to 1"):
            root_combination_bounds([0.5, 0.1], 2)

    def test_pure_leading_weight_is_exact(self):
        bounds = root_combination_bounds([1.0, 0.0, 0.0], 3)
        assert bounds.alpha == pytest.approx(1.0)
        assert bounds.gap == pytest.approx(0.0)
        assert bounds.defect == pytest.approx(0.0)

    @pytest.mark.parametrize("d", [2, 3, 5, 8, 16])
    def test_bounds_hold_on_random_combinations(self, d):
        rng = np.random.default_rng(d)
        for _ in range(200):
            weights = rng.dirichlet(np.ones(d))
            bounds = root_combination_bounds(weights, d)
            assert bounds.gap <= bounds.gapBound + 1e-12
            assert bounds.defect <= bounds.defectBound + 1e-12

    @pytest.mark.parametrize("d", [2, 3, 4, 7, 12])
    def test_quadratic_cost_is_necessary(self, d):
        # Splitting the non-leading weight between the two roots nearest
        # to 1 keeps the defect within a constant of its bound, so the
        # d-squared factor cannot be improved beyond a constant.
        leading = 0.9
        weights = [0.0] * d
        weights[0] = leading
        weights[1 % d] += (1.0 - leading) / 2.0
        weights[(d - 1) % d] += (1.0 - leading) / 2.0
        bounds = root_combination_bounds(weights, d)
        assert bounds.defect >= bounds.defectBound / np.pi**2 - 1e-12
