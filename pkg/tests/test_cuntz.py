"""Branch isometries on truncated coefficient spaces and their relations."""

import numpy as np
import pytest

from kreinfilt import (
    LaurentMatrixFunction,
    RankDeficientWarning,
    Realization,
    ShiftRealizationMaps,
    TruncationTooSmall,
    blaschke_factor,
    gleason_decompose,
    h2j_inner,
    iterate_isometries,
    ptheta_inner,
    s_adjoint,
    s_apply,
    split,
    verify_cuntz,
    word_exponent,
)


def rand_poly(rng, p, degree, lo=0):
    return LaurentMatrixFunction(
        {
            k: rng.standard_normal((p, 1)) + 1j * rng.standard_normal((p, 1))
            for k in range(lo, degree + 1)
        },
        rows=p,
        cols=1,
    )


class TestBranchMaps:
    def test_apply_shifts_exponents(self):
        f = LaurentMatrixFunction.scalar({2: 1.0})
        out = s_apply(2, 1, f)  # z * f(z^2)
        assert out.support == (5,)

    def test_apply_branch_range(self):
        f = LaurentMatrixFunction.scalar({0: 1.0})
        with pytest.raises(ValueError):
            s_apply(2, 2, f)
        with pytest.raises(ValueError):
            s_apply(2, -1, f)

    def test_split_residue_rule_with_negative_exponents(self):
        f = LaurentMatrixFunction.scalar({-3: 1.0, 0: 2.0, 5: 3.0})
        parts = split(2, f).parts
        # -3 = 2*(-2) + 1, 0 = 2*0 + 0, 5 = 2*2 + 1
        assert parts[0].support == (0,)
        assert parts[1].support == (-2, 2)
        assert parts[1].coeff(-2)[0, 0] == 1.0
        assert parts[1].coeff(2)[0, 0] == 3.0

    def test_split_assemble_round_trip_is_exact(self):
        rng = np.random.default_rng(0)
        for n in (1, 2, 3, 5):
            f = LaurentMatrixFunction(
                {
                    k: rng.standard_normal((2, 1))
                    + 1j * rng.standard_normal((2, 1))
                    for k in range(-4, 9)
                }
            )
            back = split(n, f).assemble()
            assert back.max_abs_diff(f) == 0.0

    def test_adjoint_inverts_own_branch(self):
        rng = np.random.default_rng(1)
        f = rand_poly(rng, 1, 6)
        for j in (0, 1, 2):
            assert s_adjoint(3, j, s_apply(3, j, f)).max_abs_diff(f) == 0.0

    def test_adjoint_annihilates_other_branches(self):
        rng = np.random.default_rng(2)
        f = rand_poly(rng, 1, 6)
        out = s_adjoint(2, 0, s_apply(2, 1, f))
        assert out.is_zero


class TestRelationCertification:
    def test_compatible_truncation_is_exact(self):
        out = verify_cuntz(2, 7)
        assert out["degree_compatible"]
        assert out["orthogonality_residual"] == 0.0
        assert out["completeness_residual"] == 0.0
        assert out["max_residual"] == 0.0
        assert out["relations_exact"]

    def test_incompatible_truncation_is_reported_not_failed(self):
        out = verify_cuntz(3, 7)  # 8 slots, not a multiple of 3
        assert not out["degree_compatible"]
        assert out["completeness_residual"] is None
        assert out["orthogonality_residual"] == 0.0

    def test_single_branch_is_the_identity(self):
        out = verify_cuntz(1, 5)
        assert out["degree_compatible"]
        assert out["max_residual"] == 0.0

    def test_vector_valued_slots(self):
        out = verify_cuntz(2, 7, dim=3)
        assert out["dim"] == 3
        assert out["max_residual"] == 0.0

    def test_degree_too_small(self):
        with pytest.raises(TruncationTooSmall):
            verify_cuntz(3, 1)


class TestWords:
    def test_word_exponent_base_expansion(self):
        assert word_exponent(2, (1, 0, 1)) == 5
        assert word_exponent(3, (2, 1)) == 5
        assert word_exponent(2, ()) == 0

    def test_iterate_matches_word_exponent(self):
        one = LaurentMatrixFunction.scalar({0: 1.0})
        for word in [(0,), (1, 0), (1, 0, 1), (0, 1, 1)]:
            out = iterate_isometries(2, word, one)
            assert out.support == (word_exponent(2, word),)

    def test_distinct_words_have_disjoint_ranges(self):
        one = LaurentMatrixFunction.scalar({0: 1.0})
        words = [(a, b) for a in range(2) for b in range(2)]
        supports = [iterate_isometries(2, w, one).support for w in words]
        flat = [s[0] for s in supports]
        assert len(set(flat)) == len(flat)


def test_split_inner_product_sums_to_full_inner_product():
    rng = np.random.default_rng(3)
    j = np.diag([1.0, -1.0])
    f = rand_poly(rng, 2, 9)
    g = rand_poly(rng, 2, 9)
    base = lambda u, v: h2j_inner(u, v, j)
    total = ptheta_inner(3, f, g, base)
    assert abs(total - h2j_inner(f, g, j)) < 1e-12


class TestShiftRealizationMaps:
    def test_hardy_model_identities(self):
        stateless = Realization(
            np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)), [[0.0]]
        )
        maps = ShiftRealizationMaps(stateless, [[1.0]], 2, 16)
        out = maps.verify(samples=6, seed=0)
        assert out["model"] == "hardy"
        assert out["split_shift_dev"] == 0.0
        assert out["a_inner_dev"] < 1e-12
        assert out["b_inner_dev"] == 0.0
        assert out["c_dev"] == 0.0

    def test_state_model_identities(self):
        maps = ShiftRealizationMaps(blaschke_factor(0.5), [[1.0]], 2, 16)
        out = maps.verify(samples=6, seed=1)
        assert out["model"] == "state"
        assert out["split_shift_dev"] < 1e-12
        assert out["a_inner_dev"] < 1e-12
        assert out["b_inner_dev"] < 1e-12
        assert out["b_series_dev"] < 1e-12

    def test_embed_of_pure_shift(self):
        # for T(z) = z the embedding sends xi to z^{N-1} xi exactly
        shift = Realization([[0.0]], [[1.0]], [[1.0]], [[0.0]])
        maps = ShiftRealizationMaps(shift, [[1.0]], 3, 16)
        out = maps.embed([1.0])
        assert out.support == (2,)
        assert out.coeff(2)[0, 0] == 1.0

    def test_cyclic_shift_structure(self):
        f = LaurentMatrixFunction.scalar({0: 1.0, 1: 2.0, 2: 3.0, 3: 4.0})
        maps = ShiftRealizationMaps(
            Realization(np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)), [[0.0]]),
            [[1.0]],
            2,
            16,
        )
        parts = maps.split_parts(f)
        shifted = maps.cyclic_shift(parts)
        # part 1 moves to slot 0; old part 0 loses its constant term
        assert shifted[0].max_abs_diff(parts[1]) == 0.0
        assert shifted[1].max_abs_diff(parts[0].backward_shift()) == 0.0

    def test_truncation_guard(self):
        with pytest.raises(TruncationTooSmall):
            ShiftRealizationMaps(blaschke_factor(0.5), [[1.0]], 3, 5)

    def test_stateless_nonzero_constant_rejected(self):
        const = Realization(
            np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)), [[1.0]]
        )
        with pytest.raises(ValueError):
            ShiftRealizationMaps(const, [[1.0]], 2, 16)


class TestGleason:
    def test_monomial_weights_reproduce_split(self):
        rng = np.random.default_rng(4)
        f = rand_poly(rng, 1, 7)
        m_list = [
            LaurentMatrixFunction.scalar({0: 1.0}),
            LaurentMatrixFunction.scalar({1: 1.0}),
        ]
        g_list, report = gleason_decompose(f, m_list, 2)
        assert report["residual"] < 1e-12
        assert not report["rank_deficient"]
        parts = split(2, f).parts
        for g, part in zip(g_list, parts):
            assert g.max_abs_diff(part) < 1e-12

    def test_duplicate_weights_are_rank_deficient(self):
        one = LaurentMatrixFunction.scalar({0: 1.0})
        f = LaurentMatrixFunction({1: [[1.0]]})
        with pytest.warns(RankDeficientWarning):
            g_list, report = gleason_decompose(f, [one, one], 2, g_degree=1)
        assert report["rank_deficient"]
        # both weights reach only even exponents, so the odd term survives
        assert abs(report["residual"] - 1.0) < 1e-12

    def test_matrix_weights(self):
        rng = np.random.default_rng(5)
        f = rand_poly(rng, 2, 5)
        m_list = [
            LaurentMatrixFunction.identity(2),
            LaurentMatrixFunction.monomial(1, np.eye(2)),
        ]
        g_list, report = gleason_decompose(f, m_list, 2)
        assert report["residual"] < 1e-12
        recon = LaurentMatrixFunction.zero(2, 1)
        for m, g in zip(m_list, g_list):
            recon = recon + (m @ g.compose_power(2))
        assert recon.max_abs_diff(f) < 1e-12
