"""The cyclic-symmetry class: construction, membership, decomposition,
polyphase factorization, rotation quotients, and the periodic variant."""

import numpy as np
import pytest

from kreinfilt import (
    DeterminantVanishes,
    DimensionMismatch,
    FilterBank,
    LaurentMatrixFunction,
    NotInCN,
    NotPeriodicSymmetric,
    NotSquare,
    PNotJUnitary,
    PowerNotIdentity,
    Realization,
    NoSimilarity,
    check_cyclic_symmetry,
    cyclic_shift_matrix,
    d_at_one,
    d_matrix,
    decompose_components,
    delayed_dft,
    dft_matrix,
    filter_matrix,
    inv_sqrt,
    krein_orthogonality_check,
    periodic_filter_matrix,
    periodic_to_symmetric,
    polyphase_factor,
    product_depends_on,
    rotation_quotient,
    symmetry_similarity,
    unit_roots,
    validate_component_matrix,
)


def delay_bank(n=2):
    """The n-channel bank whose i-th filter is the pure delay z^i."""
    return FilterBank(
        n, tuple(LaurentMatrixFunction.scalar({i: 1.0}) for i in range(n))
    )


def rand_member(rng, n, degree):
    """A random member of the symmetry class, built from a random bank."""
    filters = tuple(
        LaurentMatrixFunction.scalar(
            {
                k: complex(rng.standard_normal(), rng.standard_normal())
                for k in range(degree + 1)
            }
        )
        for _ in range(n)
    )
    return filter_matrix(FilterBank(n, filters))


# ----------------------------------------------------------------------
# constant building blocks


def test_cyclic_shift_matrix_structure():
    p2 = cyclic_shift_matrix(2)
    assert np.array_equal(p2, [[0.0, 1.0], [1.0, 0.0]])
    p3 = cyclic_shift_matrix(3)
    assert np.array_equal(
        p3, [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
    )
    for n in (2, 3, 5):
        p = cyclic_shift_matrix(n)
        assert np.array_equal(np.linalg.matrix_power(p, n), np.eye(n))


def test_dft_matrix_is_unitary():
    for n in (2, 3, 4, 6):
        f = dft_matrix(n)
        assert np.max(np.abs(f @ f.conj().T - np.eye(n))) < 1e-14


def test_delayed_dft_is_a_member():
    # two channels: every phase is +-1, so the check is exact; beyond
    # that, products of table phases pick up one rounding each
    out = check_cyclic_symmetry(delayed_dft(2), 2)
    assert out["is_member"] and out["max_dev"] == 0.0
    for n in (3, 4):
        out = check_cyclic_symmetry(delayed_dft(n), n)
        assert out["is_member"]
        assert out["max_dev"] < 1e-14


# ----------------------------------------------------------------------
# membership and the bank round trip


def test_filter_matrix_of_delay_bank():
    w = filter_matrix(delay_bank(2))
    c = inv_sqrt(2)
    assert np.array_equal(w.coeff(0), np.array([[c, c], [0.0, 0.0]]))
    assert np.array_equal(w.coeff(1), np.array([[0.0, 0.0], [c, -c]]))


def test_integer_bank_round_trip_is_exact():
    # coefficients in {0, +-1, 2} survive the normalize/divide round trip
    # bit for bit at two channels
    bank = FilterBank(
        2,
        (
            LaurentMatrixFunction.scalar({0: 1.0, 1: 2.0}),
            LaurentMatrixFunction.scalar({0: 1.0, 3: -1.0}),
        ),
    )
    w = filter_matrix(bank)
    out = check_cyclic_symmetry(w, 2)
    assert out["is_member"]
    assert out["max_dev"] == 0.0
    assert out["bank"] == bank


def test_membership_and_round_trip_random_banks():
    rng = np.random.default_rng(12)
    for n in (2, 3):
        bank = FilterBank(
            n,
            tuple(
                LaurentMatrixFunction.scalar(
                    {
                        k: complex(rng.standard_normal(), rng.standard_normal())
                        for k in range(5)
                    }
                )
                for _ in range(n)
            ),
        )
        w = filter_matrix(bank)
        out = check_cyclic_symmetry(w, n)
        assert out["is_member"]
        if n == 2:  # +-1 phases keep the symmetry check exact
            assert out["max_dev"] == 0.0
        else:
            assert out["max_dev"] < 1e-14
        for got, want in zip(out["bank"].filters, bank.filters):
            assert got.max_abs_diff(want) < 1e-15


def test_identity_is_not_a_member():
    out = check_cyclic_symmetry(LaurentMatrixFunction.identity(2), 2)
    assert not out["is_member"]
    assert out["max_dev"] == 1.0
    assert "bank" not in out


def test_nonsquare_membership_needs_flag():
    row = LaurentMatrixFunction(
        {1: inv_sqrt(2) * np.array([[1.0, -1.0]])}
    )
    with pytest.raises(NotSquare):
        check_cyclic_symmetry(row, 2)
    out = check_cyclic_symmetry(row, 2, allow_nonsquare=True)
    assert out["is_member"]
    assert out["max_dev"] == 0.0
    assert len(out["filters"]) == 1


def test_membership_checks_column_count():
    with pytest.raises(DimensionMismatch):
        check_cyclic_symmetry(LaurentMatrixFunction.identity(2), 3)


# ----------------------------------------------------------------------
# component decomposition


class TestComponentMatrix:
    def test_identity_is_valid(self):
        validate_component_matrix(np.eye(3), 3)

    def test_power_failure(self):
        with pytest.raises(PowerNotIdentity):
            validate_component_matrix(2.0 * np.eye(2), 2)

    def test_cyclic_shift_itself_is_degenerate_for_two_channels(self):
        with pytest.raises(DeterminantVanishes) as info:
            validate_component_matrix(cyclic_shift_matrix(2), 2)
        assert info.value.ell == (1,)

    def test_sign_matrix_is_degenerate(self):
        with pytest.raises(DeterminantVanishes):
            validate_component_matrix(np.diag([1.0, -1.0]), 2)

    def test_scaled_shift_three_channels_degenerate(self):
        eps = unit_roots(3)[1]
        with pytest.raises(DeterminantVanishes) as info:
            validate_component_matrix(eps * cyclic_shift_matrix(3), 3)
        assert info.value.ell == (1, 2)

    def test_phase_diagonal_three_channels_valid(self):
        eps = unit_roots(3)[1]
        validate_component_matrix(np.diag([1.0, eps]), 3)


class TestDecomposition:
    def test_identity_routing_is_exact(self):
        w = LaurentMatrixFunction(
            {
                0: np.array([[1.0, 0.0], [0.0, 0.0]]),
                1: np.array([[0.0, 1.0], [0.0, 0.0]]),
                2: np.array([[0.0, 0.0], [1.0, 0.0]]),
                3: np.array([[0.0, 0.0], [0.0, 1.0]]),
            }
        )
        comps = decompose_components(w, np.eye(2), 2)
        # component k holds the exponents with k + exponent = 0 mod 2
        assert comps[0].support == (0, 2)
        assert comps[1].support == (1, 3)
        total = comps[0] + comps[1]
        assert total.max_abs_diff(w) == 0.0

    def test_component_symmetry_for_identity(self):
        rng = np.random.default_rng(8)
        w = LaurentMatrixFunction(
            {
                k: rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
                for k in range(-2, 7)
            }
        )
        n = 3
        comps = decompose_components(w, np.eye(3), n)
        assert (comps[0] + comps[1] + comps[2]).max_abs_diff(w) == 0.0
        roots = unit_roots(n)
        for k, comp in enumerate(comps):
            # W_k(e z) = e^{-k} W_k(z): exponent m of part k has
            # m = -k mod n, so the rotation phase is the same table entry
            rotated = comp.rotate(n)
            expected = comp.scale(roots[(-k) % n])
            assert rotated.max_abs_diff(expected) == 0.0

    def test_phase_diagonal_component_matrix(self):
        rng = np.random.default_rng(21)
        n = 3
        eps = unit_roots(n)[1]
        p = np.diag([1.0, eps])
        w = LaurentMatrixFunction(
            {
                k: rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                for k in range(0, 6)
            }
        )
        comps = decompose_components(w, p, n)
        total = comps[0]
        for c in comps[1:]:
            total = total + c
        assert total.max_abs_diff(w) < 1e-14
        # twisted symmetry W_k(e z) = (e P)^{-k} W_k(z)
        factor = np.linalg.inv(eps * p)
        for k, comp in enumerate(comps):
            lhs = comp.rotate(n)
            fk = np.linalg.matrix_power(factor, k)
            rhs = LaurentMatrixFunction(
                {e: fk @ m for e, m in comp.coeffs.items()},
                rows=2,
                cols=2,
            )
            assert lhs.max_abs_diff(rhs) < 1e-13

    def test_row_action_shape_guard(self):
        w = LaurentMatrixFunction({0: np.ones((3, 2))})
        with pytest.raises(DimensionMismatch):
            decompose_components(w, np.eye(2), 2)


class TestKreinOrthogonality:
    def test_disjoint_residues_are_orthogonal_for_any_signature(self):
        rng = np.random.default_rng(13)
        w = LaurentMatrixFunction(
            {
                k: rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                for k in range(0, 7)
            }
        )
        comps = decompose_components(w, np.eye(2), 2)
        for j in (np.eye(2), np.diag([1.0, -1.0])):
            out = krein_orthogonality_check(comps, j, np.eye(2), 2)
            assert out["orthogonal"]
            assert out["max_offdiag"] == 0.0
            assert out["table"].shape == (2, 2)

    def test_non_unitary_p_is_rejected(self):
        comps = [LaurentMatrixFunction.identity(2)] * 2
        p = np.array([[1.0, 1.0], [0.0, 1.0]])
        with pytest.raises(PNotJUnitary):
            krein_orthogonality_check(comps, np.diag([1.0, -1.0]), p, 2)


# ----------------------------------------------------------------------
# rotation quotient


class TestRotationQuotient:
    def test_single_filter_row_gives_inverse_shift(self):
        # W(z) = (1/sqrt 2)(s(z), s(-z)) with s(z) = z
        c = inv_sqrt(2)
        row = LaurentMatrixFunction({1: np.array([[c, -c]])})
        out = rotation_quotient(row, 2)
        assert out["constant"]
        assert out["max_dev"] == 0.0
        # for two channels the inverse shift equals the shift itself
        assert np.array_equal(out["x"], cyclic_shift_matrix(2))
        assert out["kernel_dev"] < 1e-14

    def test_three_channel_row(self):
        n = 3
        c = inv_sqrt(n)
        roots = unit_roots(n)
        row = LaurentMatrixFunction(
            {1: c * np.array([roots[:n]])}
        )  # s(z) = z: entries z, e z, e^2 z
        out = rotation_quotient(row, n)
        assert out["constant"]
        assert out["max_dev"] < 1e-15
        expect = np.linalg.matrix_power(cyclic_shift_matrix(n), n - 1)
        assert np.array_equal(out["x"], expect)

    def test_square_member_samples_constant_quotient(self):
        rng = np.random.default_rng(30)
        w = rand_member(rng, 2, 3)
        out = rotation_quotient(w, 2)
        assert out["constant"]
        # the sampled quotient of a class member is P_N^{-1} = P_N for N=2
        assert np.max(np.abs(out["x"] - cyclic_shift_matrix(2))) < 1e-10

    def test_non_member_quotient_is_not_constant(self):
        w = LaurentMatrixFunction(
            {0: np.eye(2), 1: np.array([[0.0, 1.0], [0.0, 0.0]])}
        )
        out = rotation_quotient(w, 2)
        assert not out["constant"]
        assert out["x"] is None

    def test_wrong_row_shape_rejected(self):
        bad = LaurentMatrixFunction({0: np.ones((2, 3))})
        with pytest.raises(DimensionMismatch):
            rotation_quotient(bad, 3)


# ----------------------------------------------------------------------
# polyphase factorization


class TestPolyphase:
    def test_delay_bank_factor_is_diagonal(self):
        w = filter_matrix(delay_bank(2))
        r, w_hat, report = polyphase_factor(w, 2)
        expect = LaurentMatrixFunction(
            {
                0: np.array([[1.0, 0.0], [0.0, 0.0]]),
                1: np.array([[0.0, 0.0], [0.0, 1.0]]),
            }
        )
        assert r.max_abs_diff(expect) == 0.0
        assert report["max_dev"] == 0.0
        assert w_hat.max_abs_diff(delayed_dft(2)) == 0.0

    def test_random_bank_reconstruction(self):
        rng = np.random.default_rng(17)
        for n in (2, 3):
            w = rand_member(rng, n, 4)
            r, w_hat, report = polyphase_factor(w, n)
            assert report["max_dev"] < 1e-14
            recon = r.compose_power(n) @ w_hat
            assert recon.max_abs_diff(w) < 1e-14

    def test_non_member_rejected(self):
        with pytest.raises(NotInCN):
            polyphase_factor(LaurentMatrixFunction.identity(2), 2)

    def test_degenerate_determinant_rejected(self):
        # a rank-one bank: both filters equal, so det W is identically 0
        f = LaurentMatrixFunction.scalar({0: 1.0, 1: 1.0})
        w = filter_matrix(FilterBank(2, (f, f)))
        with pytest.raises(DeterminantVanishes):
            polyphase_factor(w, 2)


def test_product_of_members_depends_on_the_power():
    rng = np.random.default_rng(19)
    w1 = rand_member(rng, 2, 4)
    w2 = rand_member(rng, 2, 3)
    out = product_depends_on(w1, w2, 2)
    assert out["depends_on_power"]
    assert out["off_lattice"] < 1e-15
    assert all(
        k % 2 == 0
        for k in out["product"].support
        if np.max(np.abs(out["product"].coeff(k))) > 1e-15
    )


def test_product_requires_membership():
    w1 = filter_matrix(delay_bank(2))
    with pytest.raises(NotInCN):
        product_depends_on(w1, LaurentMatrixFunction.identity(2), 2)


# ----------------------------------------------------------------------
# periodic-system variant


def test_d_matrix_two_channels():
    d = d_matrix(2)
    # diag(z^2, -z)
    assert d.support == (1, 2)
    assert np.array_equal(d.coeff(2), np.array([[1.0, 0.0], [0.0, 0.0]]))
    assert np.array_equal(d.coeff(1), np.array([[0.0, 0.0], [0.0, -1.0]]))


def test_d_matrix_rotation_identity_is_exact():
    for n in (2, 3, 4):
        d = d_matrix(n)
        lhs = d.rotate(n)
        d1 = d_at_one(n)
        rhs = LaurentMatrixFunction(
            {k: m @ d1 for k, m in d.coeffs.items()},
            rows=n,
            cols=n,
        )
        assert lhs.max_abs_diff(rhs) == 0.0


def test_periodic_delay_bank_maps_exactly():
    w = periodic_filter_matrix(delay_bank(2))
    mapped, report = periodic_to_symmetric(w, 2)
    assert report["twisted_dev"] == 0.0
    assert report["is_member"]
    assert report["mapped_dev"] == 0.0


def test_periodic_filter_matrix_satisfies_twisted_symmetry():
    rng = np.random.default_rng(23)
    for n in (2, 3):
        bank = FilterBank(
            n,
            tuple(
                LaurentMatrixFunction.scalar(
                    {
                        k: complex(rng.standard_normal(), rng.standard_normal())
                        for k in range(4)
                    }
                )
                for _ in range(n)
            ),
        )
        w = periodic_filter_matrix(bank)
        mapped, report = periodic_to_symmetric(w, n)
        assert report["twisted_dev"] < 1e-13
        assert report["is_member"]
        assert report["mapped_dev"] < 1e-13


def test_plain_member_fails_twisted_symmetry():
    w = filter_matrix(delay_bank(2))
    with pytest.raises(NotPeriodicSymmetric):
        periodic_to_symmetric(w, 2)


# ----------------------------------------------------------------------
# symmetry similarity


def minimal_delay_member_realization():
    """Minimal realization of the two-channel delay-bank member."""
    c = inv_sqrt(2)
    return Realization(
        np.zeros((1, 1)),
        c * np.array([[1.0, -1.0]]),
        np.array([[0.0], [1.0]]),
        c * np.array([[1.0, 1.0], [0.0, 0.0]]),
    )


def test_minimal_realization_matches_the_member():
    real = minimal_delay_member_realization()
    w = filter_matrix(delay_bank(2))
    for z in [0.3, -0.2 + 0.4j, 0.9j]:
        assert np.max(np.abs(real(z) - w(z))) < 1e-14


def test_similarity_for_the_delay_member():
    t, report = symmetry_similarity(minimal_delay_member_realization(), 2)
    assert t.shape == (1, 1)
    assert abs(t[0, 0] + 1.0) < 1e-12  # T = -1
    assert report["residual"] < 1e-12
    assert report["power_ok"]
    assert report["power_dev"] < 1e-12


def test_similarity_rejects_stateless():
    real = Realization(
        np.zeros((0, 0)), np.zeros((0, 2)), np.zeros((2, 0)), np.eye(2)
    )
    with pytest.raises(NoSimilarity):
        symmetry_similarity(real, 2)


def test_similarity_rejects_asymmetric_function():
    # minimal realization of diag(1, z): not in the symmetry class
    real = Realization(
        np.zeros((1, 1)),
        np.array([[0.0, 1.0]]),
        np.array([[0.0], [1.0]]),
        np.diag([1.0, 0.0]),
    )
    with pytest.raises(NoSimilarity):
        symmetry_similarity(real, 2)
