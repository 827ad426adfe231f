import math

import pytest

from wfuse.fusion_model import outcome_distribution
from wfuse.gate import (
    COINCIDENCE_PATTERNS,
    SparseState,
    TOLERANCE,
    check_decomposition,
    fidelity,
    fuse,
    make_w_state,
    verify_probabilities,
)

INV_SQRT2 = 1 / math.sqrt(2)


def product_state(label: str) -> SparseState:
    return SparseState({label: 1.0})


def w_amplitudes(photons: int) -> dict:
    amp = 1 / math.sqrt(photons)
    return {
        "H" * i + "V" + "H" * (photons - 1 - i): amp for i in range(photons)
    }


class TestSparseState:
    def test_bell_pair(self):
        state = make_w_state(2)
        assert state.num_photons == 2
        assert state.amplitude("HV") == pytest.approx(INV_SQRT2)
        assert state.amplitude("VH") == pytest.approx(INV_SQRT2)
        assert state.amplitude("HH") == 0

    def test_three_photons(self):
        state = make_w_state(3)
        assert sorted(state.amplitudes) == ["HHV", "HVH", "VHH"]

    def test_normalization_of_large_state(self):
        state = make_w_state(10)
        assert sum(abs(a) ** 2 for a in state.amplitudes.values()) == pytest.approx(1)

    def test_rejects_single_photon_w(self):
        with pytest.raises(ValueError):
            make_w_state(1)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            SparseState({"HV": 1.0, "VH": 1.0})

    def test_rejects_ragged_labels(self):
        with pytest.raises(ValueError):
            SparseState({"HV": INV_SQRT2, "VHH": INV_SQRT2})

    def test_rejects_bad_symbols(self):
        with pytest.raises(ValueError):
            SparseState({"HX": 1.0})

    def test_prunes_zero_amplitudes(self):
        state = SparseState({"HV": 1.0, "VH": 0.0})
        assert "VH" not in state.amplitudes


class TestFidelity:
    def test_identical_states(self):
        assert fidelity(make_w_state(3), make_w_state(3)) == pytest.approx(1)

    def test_orthogonal_states(self):
        assert fidelity(product_state("HHH"), make_w_state(3)) == 0

    def test_half_overlap(self):
        assert fidelity(make_w_state(2), product_state("HV")) == pytest.approx(0.5)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            fidelity(make_w_state(2), make_w_state(3))


class TestFuseOnWStates:
    def test_six_photon_example(self):
        report = fuse(make_w_state(3), make_w_state(3))
        assert report.p_success == pytest.approx(4 / 9, abs=TOLERANCE)
        assert report.p_failure == pytest.approx(1 / 9, abs=TOLERANCE)
        assert fidelity(report.post_success_state, make_w_state(4)) == pytest.approx(
            1, abs=TOLERANCE
        )
        assert fidelity(report.post_failure_state, product_state("HHHH")) == (
            pytest.approx(1, abs=TOLERANCE)
        )

    def test_bell_pair_fusion_does_not_expand(self):
        for photons in range(2, 8):
            report = fuse(make_w_state(2), make_w_state(photons))
            assert report.p_success == pytest.approx(0.5, abs=TOLERANCE)
            target = make_w_state(photons)
            assert fidelity(report.post_success_state, target) == pytest.approx(
                1, abs=TOLERANCE
            )
            for label, amp in report.post_success_state.amplitudes.items():
                assert amp == pytest.approx(target.amplitude(label), abs=1e-12)

    def test_recycle_posts_are_shrunk_w_states(self):
        report = fuse(make_w_state(4), make_w_state(5))
        assert report.p_recycle == pytest.approx(12 / 20, abs=TOLERANCE)
        left, right = report.post_recycle_states
        assert fidelity(left, make_w_state(3)) == pytest.approx(1, abs=TOLERANCE)
        assert fidelity(right, make_w_state(4)) == pytest.approx(1, abs=TOLERANCE)

    def test_probability_grid_against_closed_forms(self):
        for n in range(2, 9):
            for m in range(2, 9):
                report = fuse(make_w_state(n), make_w_state(m))
                assert report.p_success == pytest.approx(
                    (n + m - 2) / (n * m), abs=TOLERANCE
                )
                assert report.p_recycle == pytest.approx(
                    (n - 1) * (m - 1) / (n * m), abs=TOLERANCE
                )
                assert report.p_failure == pytest.approx(1 / (n * m), abs=TOLERANCE)
                total = sum(report.detector_breakdown.values())
                assert total == pytest.approx(1, abs=TOLERANCE)

    def test_coincidence_patterns_are_equiprobable(self):
        for n in range(2, 9):
            for m in range(2, 9):
                report = fuse(make_w_state(n), make_w_state(m))
                expected = (n + m - 2) / (4 * n * m)
                for pattern in COINCIDENCE_PATTERNS:
                    assert report.detector_breakdown[pattern] == pytest.approx(
                        expected, abs=TOLERANCE
                    )

    def test_post_success_fidelity_on_grid(self):
        for n in range(2, 9):
            for m in range(2, 9):
                report = fuse(make_w_state(n), make_w_state(m))
                target = make_w_state(n + m - 2)
                assert fidelity(report.post_success_state, target) >= 1 - TOLERANCE

    def test_matches_index_shifted_outcome_model(self):
        for n in range(2, 9):
            for m in range(2, 9):
                dist = outcome_distribution(n - 2, m - 2)
                report = fuse(make_w_state(n), make_w_state(m))
                assert report.p_success == pytest.approx(
                    float(dist.p_success), abs=TOLERANCE
                )
                assert report.p_recycle == pytest.approx(
                    float(dist.p_recycle), abs=TOLERANCE
                )
                assert report.p_failure == pytest.approx(
                    float(dist.p_failure), abs=TOLERANCE
                )

    def test_mixed_patterns_carry_the_sign_flip(self):
        n, m = 3, 5
        report = fuse(make_w_state(n), make_w_state(m))
        merged = n + m - 2
        # antisymmetric survivor combination, built from scratch
        expected = {}
        for label, amp in w_amplitudes(n - 1).items():
            expected[label + "H" * (m - 1)] = math.sqrt(n - 1) * amp
        for label, amp in w_amplitudes(m - 1).items():
            expected["H" * (n - 1) + label] = -math.sqrt(m - 1) * amp
        scale = 1 / math.sqrt(merged)
        flipped = SparseState({k: v * scale for k, v in expected.items()})
        raw_mixed = report.pattern_states["d_dbar"]
        assert fidelity(raw_mixed, flipped) == pytest.approx(1, abs=TOLERANCE)
        # before the corrective pi-phase, overlap with the true target is low
        overlap = fidelity(raw_mixed, make_w_state(merged))
        assert overlap == pytest.approx(((n - m) / merged) ** 2, abs=TOLERANCE)

    def test_mixed_pattern_orthogonal_for_equal_sizes(self):
        report = fuse(make_w_state(4), make_w_state(4))
        assert fidelity(
            report.pattern_states["dbar_d"], make_w_state(6)
        ) == pytest.approx(0, abs=TOLERANCE)

    def test_explicit_photon_choice_is_equivalent_for_w_states(self):
        default = fuse(make_w_state(4), make_w_state(3))
        chosen = fuse(make_w_state(4), make_w_state(3), qubit_a=0, qubit_b=1)
        assert default.p_success == pytest.approx(chosen.p_success, abs=TOLERANCE)
        assert fidelity(
            default.post_success_state, chosen.post_success_state
        ) == pytest.approx(1, abs=TOLERANCE)

    def test_fuse_rejects_same_object(self):
        state = make_w_state(3)
        with pytest.raises(ValueError):
            fuse(state, state)

    def test_fuse_rejects_bad_indices(self):
        with pytest.raises(IndexError):
            fuse(make_w_state(3), make_w_state(3), qubit_a=3)
        with pytest.raises(IndexError):
            fuse(make_w_state(3), make_w_state(3), qubit_b=-1)


class TestVerifyProbabilities:
    def test_small_pair(self):
        check = verify_probabilities(2, 2)
        assert check.analytic["success"] == 0.5
        assert check.analytic["recycle"] == 0.25
        assert check.analytic["failure"] == 0.25
        assert check.max_abs_error < TOLERANCE

    @pytest.mark.parametrize("sizes", [(3, 3), (8, 7), (2, 5)])
    def test_deviations_are_tiny(self, sizes):
        check = verify_probabilities(*sizes)
        assert check.max_abs_error < TOLERANCE
        for value in check.fidelities.values():
            assert value == pytest.approx(1, abs=TOLERANCE)

    def test_rejects_tiny_states(self):
        with pytest.raises(ValueError):
            verify_probabilities(1, 4)


class TestDecompositionIdentity:
    @pytest.mark.parametrize("total,split", [(4, 2), (6, 3), (3, 1), (9, 4), (7, 6)])
    def test_identity_holds(self, total, split):
        assert check_decomposition(total, split)

    def test_out_of_range_split(self):
        with pytest.raises(ValueError):
            check_decomposition(4, 0)
        with pytest.raises(ValueError):
            check_decomposition(4, 4)
        with pytest.raises(ValueError):
            check_decomposition(1, 1)
