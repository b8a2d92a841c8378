import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spirallab import (
    AtomicMeasure,
    ChainInequalityViolation,
    ClassSpec,
    DegenerateCosGamma,
    FunctionSeries,
    InvalidIndices,
    OrderTooLow,
    Series,
    TOL_INEQ,
    alexander_inverse,
    bound_rhs,
    gamma_ratio,
    lemma31_check,
    member_from_measure,
    milin_third,
    named,
    one_sided_diff,
    proof_trace,
    psi_max,
    recover_c,
    robertson_gap,
    sample_measure,
    spirallike_from_measure,
    successive_diff,
)


def harmonic(n):
    return sum(1.0 / k for k in range(1, n + 1))


def identity_map(order=8):
    c = np.zeros(order + 1)
    c[1] = 1.0
    return FunctionSeries(Series(c), "named", {"name": "identity"})


# ----------------------------------------------------------------------
# successive differences


def test_successive_diff_koebe_is_one():
    f = named("koebe", 40)
    assert all(successive_diff(f, n) == 1.0 for n in range(1, 40))


def test_successive_diff_c_half_extremal_is_half():
    f = named("c_half_extremal", 30)
    assert all(successive_diff(f, n) == 0.5 for n in range(1, 30))


def test_successive_diff_cube_power_map():
    # a_n = n(n+1)/2, so the difference at n is n+1
    f = named("power_map", 30, beta=3.0)
    for n in range(1, 30):
        assert successive_diff(f, n) == pytest.approx(n + 1, abs=1e-12)


def test_successive_diff_guards():
    f = named("koebe", 10)
    with pytest.raises(OrderTooLow):
        successive_diff(f, 10)
    with pytest.raises(InvalidIndices):
        successive_diff(f, 0)


# ----------------------------------------------------------------------
# bound evaluators


def test_bound_thm_C_at_minus_half_is_n_plus_one():
    for n in range(2, 41):
        assert bound_rhs("thm_C", n, alpha=-0.5) == pytest.approx(n + 1, rel=1e-14)


def test_bound_thm_C_matches_lgamma():
    for alpha in (-0.25, -1.0, -2.0, 0.3):
        for n in (2, 7, 19):
            expect = math.exp(
                math.lgamma(1 - 2 * alpha + n)
                - math.lgamma(1 - 2 * alpha)
                - math.lgamma(n + 1)
            )
            assert gamma_ratio(alpha, n) == pytest.approx(expect, rel=1e-12)
            assert bound_rhs("thm_C", n, alpha=alpha) == pytest.approx(expect, rel=1e-12)


def test_bound_thm_B():
    assert bound_rhs("thm_B", 4) == pytest.approx(0.2)


def test_bound_robertson():
    assert bound_rhs("thm_robertson", 5, 2) == 12.0


def test_bound_constants():
    assert bound_rhs("thm_A", 3) == 1.0
    assert bound_rhs("cor_spiral", 2) == 1.0
    assert bound_rhs("thm_c_half", 9) == 1.0


def test_bound_exponential_forms():
    M, alpha, gamma = 3.0, 0.5, 0.4
    expect = math.exp(-M * alpha * math.cos(gamma))
    assert bound_rhs("thm_main", 5, alpha=alpha, gamma=gamma, M=M) == pytest.approx(expect)
    assert bound_rhs("cor_convex_gamma", 5, alpha=alpha, gamma=gamma, M=M) == pytest.approx(
        expect / 6
    )
    assert bound_rhs("cor_convex_gamma", 5, alpha=0.0) == pytest.approx(1 / 6)


def test_bound_invalid_indices():
    with pytest.raises(InvalidIndices):
        bound_rhs("thm_B", 1)
    with pytest.raises(InvalidIndices):
        bound_rhs("thm_robertson", 3, 3)
    with pytest.raises(InvalidIndices):
        bound_rhs("thm_C", 5)  # alpha missing
    with pytest.raises(InvalidIndices):
        bound_rhs("thm_main", 5, alpha=0.5)  # M and gamma missing


# ----------------------------------------------------------------------
# psi_max


def test_psi_max_koebe_data_is_harmonic_sum():
    for n in (3, 10, 20):
        c = np.full(n, 2.0)
        M, angle = psi_max(c, n, 0.0)
        assert M == pytest.approx(2.0 * harmonic(n), abs=1e-9)
        # angle is value-comparison limited to ~sqrt(eps) near a smooth max
        assert abs(angle) < 1e-6 or abs(angle - 2 * math.pi) < 1e-6


def test_psi_max_zero_sequence():
    M, angle = psi_max(np.zeros(5), 5, 0.3)
    assert M == 0.0
    assert angle == pytest.approx(0.0, abs=1e-2)


def test_psi_max_single_mode_rotates():
    # c_1 only: Re(e^{i gamma} c_1 e^{i theta}) peaks where the phases cancel
    gamma, phase = 0.5, 1.2
    c = np.array([2.0 * np.exp(-1j * phase)])
    M, angle = psi_max(c, 1, gamma)
    assert M == pytest.approx(2.0, abs=1e-12)
    assert angle == pytest.approx((phase - gamma) % (2 * math.pi), abs=1e-6)


def test_psi_max_scaled_koebe_bound():
    # single-atom data at order alpha: M = 2(1-alpha) H_n <= 2(1-alpha)(log n + 1)
    for alpha in (0.25, 0.5):
        for n in (2, 10, 20):
            c = np.full(n, 2.0 * (1 - alpha))
            M, _ = psi_max(c, n, 0.0)
            assert M == pytest.approx(2 * (1 - alpha) * harmonic(n), abs=1e-9)
            assert M <= 2 * (1 - alpha) * (math.log(n) + 1) + 1e-12


def test_psi_max_guards():
    with pytest.raises(InvalidIndices):
        psi_max(np.ones(3), 0, 0.0)
    with pytest.raises(OrderTooLow):
        psi_max(np.ones(3), 5, 0.0)


# ----------------------------------------------------------------------
# weighted lemma


def test_lemma31_zero_sequence():
    report = lemma31_check(np.zeros(4), np.ones(4), 0.0, 0.0, 0.0)
    assert report.lhs == 0.0
    assert report.rhs == 0.0
    assert report.passed


def test_lemma31_koebe_equality():
    n = 12
    c = np.full(n, 2.0)
    lam = 1.0 / np.arange(1, n + 1)
    M, _ = psi_max(c, n, 0.0)
    report = lemma31_check(c, lam, 0.0, 0.0, M)
    assert report.lhs == pytest.approx(4 * harmonic(n), rel=1e-12)
    assert abs(report.rhs - report.lhs) <= 1e-9
    assert report.passed


def test_lemma31_random_measures_pass():
    rng = np.random.default_rng(5)
    for trial in range(100):
        k = int(rng.integers(1, 9))
        measure = sample_measure(900 + trial, k)
        gamma = float(rng.uniform(-1.4, 1.4))
        alpha = float(rng.uniform(0.0, 0.9))
        n = int(rng.integers(1, 21))
        h = np.array(
            2.0
            * np.sum(
                np.array(measure.weights)[:, None]
                * np.exp(-1j * np.outer(measure.angles, np.arange(1, n + 1))),
                axis=0,
            )
        )
        c = (1 - alpha) * h
        lam = 1.0 / np.arange(1, n + 1)
        M, _ = psi_max(c, n, gamma)
        report = lemma31_check(c, lam, gamma, alpha, M)
        assert report.slack >= -TOL_INEQ, (trial, report.slack)


# ----------------------------------------------------------------------
# third exponentiation inequality


def test_milin_third_koebe_log_coefficients_at_one():
    lhs, rhs = milin_third([2.0], 1)
    assert lhs == pytest.approx(4.0)
    assert rhs == pytest.approx(math.exp(3.0))


def test_milin_third_zero_sequence():
    lhs, rhs = milin_third(np.zeros(6), 6)
    assert lhs == 0.0
    assert rhs == pytest.approx(math.exp(-harmonic(6)))


@given(
    st.integers(1, 30).flatmap(
        lambda n: st.lists(
            st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
            min_size=n,
            max_size=n,
        )
    )
)
def test_milin_third_is_universal(alpha_seq):
    n = len(alpha_seq)
    lhs, rhs = milin_third(alpha_seq, n)
    assert lhs <= rhs * (1 + 1e-12) + 1e-300


def test_milin_third_guards():
    with pytest.raises(OrderTooLow):
        milin_third([1.0], 5)


# ----------------------------------------------------------------------
# proof trace


def test_recover_c_round_trips_measure_data():
    measure = sample_measure(17, 5)
    gamma, alpha = 0.4, 0.3
    spec = ClassSpec("spirallike", gamma=gamma, alpha=alpha)
    f = spirallike_from_measure(measure, spec, 64)
    c = recover_c(f, gamma, 20)
    n = np.arange(1, 21)
    h = 2.0 * np.sum(
        np.array(measure.weights)[:, None] * np.exp(-1j * np.outer(measure.angles, n)),
        axis=0,
    )
    assert np.max(np.abs(c - (1 - alpha) * h)) < 1e-10


def test_proof_trace_koebe_full_equality_chain():
    f = named("koebe", 40)
    for n in (2, 10, 25):
        trace = proof_trace(f, 0.0, 0.0, n)
        assert abs(trace.xi0 - 1.0) < 1e-8
        assert trace.M == pytest.approx(2 * harmonic(n), abs=1e-9)
        assert trace.final_bound == 1.0
        assert trace.beta_bound == pytest.approx(1.0, abs=1e-8)
        assert trace.milin_exponent == pytest.approx(0.0, abs=1e-8)
        assert successive_diff(f, n) == 1.0


def test_proof_trace_identity_map():
    trace = proof_trace(identity_map(16), 0.0, 0.0, 1)
    assert trace.M == 0.0
    assert trace.final_bound == 1.0
    assert trace.beta_bound == pytest.approx(1.0, abs=1e-12)
    assert successive_diff(identity_map(16), 1) == 1.0


def test_proof_trace_sampled_members():
    rng = np.random.default_rng(23)
    for trial in range(50):
        k = int(rng.integers(1, 9))
        measure = sample_measure(3000 + trial, k)
        gamma = float(rng.uniform(-1.2, 1.2))
        alpha = float(rng.uniform(0.01, 0.89))
        n = int(rng.integers(2, 21))
        spec = ClassSpec("spirallike", gamma=gamma, alpha=alpha)
        f = spirallike_from_measure(measure, spec, 64)
        trace = proof_trace(f, gamma, alpha, n)
        # chain validated by construction; check the reported slacks again
        lemma_cap = -2 * trace.M * alpha * math.cos(gamma)
        assert trace.milin_exponent <= lemma_cap + TOL_INEQ
        assert trace.beta_bound**2 <= math.exp(trace.milin_exponent) + TOL_INEQ
        assert successive_diff(f, n) <= trace.final_bound + TOL_INEQ
        assert trace.final_bound <= 1.0 + 1e-12


def test_proof_trace_final_bound_is_one_iff_alpha_zero():
    measure = sample_measure(8, 3)
    f0 = spirallike_from_measure(measure, ClassSpec("spirallike", gamma=0.5), 32)
    assert proof_trace(f0, 0.5, 0.0, 6).final_bound == 1.0
    f1 = spirallike_from_measure(
        measure, ClassSpec("spirallike", gamma=0.5, alpha=0.3), 32
    )
    assert proof_trace(f1, 0.5, 0.3, 6).final_bound < 1.0


def test_proof_trace_degenerate_gamma():
    with pytest.raises(DegenerateCosGamma):
        proof_trace(identity_map(8), math.pi / 2 * 0.9999999999, 0.0, 2)


def test_proof_trace_rejects_non_members():
    # coefficient growth far beyond the class forces a chain violation
    c = np.zeros(13)
    c[1] = 1.0
    c[12] = 500.0
    fake = FunctionSeries(Series(c), "named", {"name": "fake"})
    with pytest.raises(ChainInequalityViolation):
        proof_trace(fake, 0.0, 0.5, 11)


def test_proof_trace_serializes():
    trace = proof_trace(named("koebe", 20), 0.0, 0.0, 5)
    doc = trace.to_json()
    assert doc["n"] == 5
    assert len(doc["c"]) == 5
    assert doc["final_bound"] == 1.0


# ----------------------------------------------------------------------
# corollary chains through the Alexander transform


def test_convex_one_sided_bound_via_parent_trace():
    rng = np.random.default_rng(31)
    for trial in range(25):
        k = int(rng.integers(1, 7))
        measure = sample_measure(5000 + trial, k)
        gamma = float(rng.uniform(-1.2, 1.2))
        alpha = float(rng.uniform(0.0, 0.9))
        n = int(rng.integers(2, 16))
        g = spirallike_from_measure(
            measure, ClassSpec("spirallike", gamma=gamma, alpha=alpha), 48
        )
        trace = proof_trace(g, gamma, alpha, n)
        f = alexander_inverse(g)
        bound = trace.final_bound / (n + 1)
        assert one_sided_diff(f, n) <= bound + TOL_INEQ


def test_two_sided_diff_at_most_one_for_spiral_members():
    rng = np.random.default_rng(41)
    for trial in range(50):
        k = int(rng.integers(1, 9))
        measure = sample_measure(8000 + trial, k)
        gamma = float(rng.uniform(-1.4, 1.4))
        f = spirallike_from_measure(
            measure, ClassSpec("spirallike", gamma=gamma, alpha=0.0), 64
        )
        for n in range(2, 31):
            assert successive_diff(f, n) <= 1.0 + TOL_INEQ


def test_two_sided_diff_bounded_for_negative_order_starlike():
    rng = np.random.default_rng(37)
    for alpha in (-0.5, -1.0, -2.0):
        spec = ClassSpec("starlike", alpha=alpha)
        for trial in range(20):
            k = int(rng.integers(1, 7))
            measure = sample_measure(7000 + trial, k)
            f = spirallike_from_measure(measure, spec, 32)
            for n in range(2, 21):
                cap = bound_rhs("thm_C", n, alpha=alpha)
                assert successive_diff(f, n) <= cap + TOL_INEQ


# ----------------------------------------------------------------------
# Robertson-type gaps


def test_robertson_gap_equality_for_c_half_extremal():
    f = named("c_half_extremal", 35)
    for n in range(2, 31):
        for m in range(1, n):
            report = robertson_gap(f, n, m)
            assert abs(report.slack) <= 1e-12
            assert report.passed


def test_robertson_gap_identity_map():
    report = robertson_gap(identity_map(8), 3, 2)
    assert report.lhs == 0.0  # a_2 = a_3 = 0
    assert report.rhs == 3.0
    assert report.passed


def test_robertson_gap_sampled_c_half_members():
    for seed in range(10):
        measure = sample_measure(111 + seed, 5)
        f = member_from_measure(measure, ClassSpec("c_half", alpha=-0.5), 16)
        report = robertson_gap(f, 8, 3)
        assert report.passed


def test_robertson_gap_guards():
    f = named("koebe", 10)
    with pytest.raises(InvalidIndices):
        robertson_gap(f, 3, 3)
    with pytest.raises(OrderTooLow):
        robertson_gap(f, 12, 3)


# ----------------------------------------------------------------------
# report plumbing


def test_bound_report_two_sidedness_follows_theorem():
    two = robertson_gap(named("c_half_extremal", 10), 4, 2)
    assert two.two_sided
    one = lemma31_check(np.ones(3), np.ones(3), 0.0, 0.0, 10.0)
    assert not one.two_sided


def test_bound_report_json():
    report = robertson_gap(named("c_half_extremal", 10), 4, 2)
    doc = report.to_json()
    assert doc["theorem_id"] == "thm_robertson"
    assert doc["pass"] is True
    assert doc["slack"] == pytest.approx(doc["rhs"] - doc["lhs"])
