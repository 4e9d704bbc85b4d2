import numpy as np
import pytest

from demikit import (
    averaged,
    convert_constants,
    estimate_k_dc,
    norm,
    verify_fix_preservation,
    verify_lemma,
)
from demikit.errors import FixUnknownError, KOutOfRangeError, LambdaOutOfRangeError
from demikit.relaxation import RelaxedMapping


# --- construction ---------------------------------------------------------------

def test_averaged_first_step_value(t5):
    assert averaged(t5, 0.25).apply([1.0])[0] == 0.8125


def test_averaged_lands_on_fixed_point(t2):
    assert averaged(t2, 0.5).apply([0.0])[0] == 1.0


def test_averaged_lambda_one_recovers_base(t3, rng):
    relaxed = averaged(t3, 1.0)
    for _ in range(25):
        x = rng.uniform(0.5, 2.0, size=1)
        assert relaxed.apply(x)[0] == t3.apply(x)[0]


def test_averaged_lambda_range(t2):
    for bad in (0.0, -0.1, 1.0001):
        with pytest.raises(LambdaOutOfRangeError) as err:
            averaged(t2, bad)
        assert err.value.code == "lambda-out-of-range"


def test_averaged_inherits_domain_and_fix(t5):
    relaxed = averaged(t5, 0.3)
    assert relaxed.domain is t5.domain
    assert relaxed.fixed_points is t5.fixed_points


def test_reaveraging_flattens_to_original_base(t5):
    once = averaged(t5, 0.5)
    twice = averaged(once, 0.5)
    assert isinstance(twice, RelaxedMapping)
    assert twice.base is t5
    assert twice.lam == 0.25
    assert twice.apply([1.0])[0] == pytest.approx(
        0.75 * 1.0 + 0.25 * 0.25, abs=1e-15)


def test_relaxed_apply_is_convex_combination(t4, rng):
    from demikit import convex_combination
    relaxed = averaged(t4, 0.37)
    for _ in range(20):
        x = rng.uniform(0.0, 2.0, size=1)
        expected = convex_combination(x, t4.apply(x), 0.37)
        assert relaxed.apply(x)[0] == expected[0]


# --- fixed-point preservation ------------------------------------------------------

def test_fix_preservation_t5(t5):
    report = verify_fix_preservation(t5, 0.25, seed=3)
    assert report.passed
    assert report.max_fix_residual == 0.0


def test_fix_preservation_scaling_t3(t3):
    report = verify_fix_preservation(t3, 0.5, seed=3)
    assert report.passed
    moved = norm(averaged(t3, 0.5).apply([2.0]) - np.array([2.0]))
    assert moved == pytest.approx(0.75, abs=1e-15)  # 0.5 * |1/2 - 2|


def test_fix_preservation_reflection(reflection3):
    report = verify_fix_preservation(reflection3, 0.1, seed=3)
    assert report.passed
    assert averaged(reflection3, 0.1).apply([0.0])[0] == 0.0


def test_fix_preservation_nonfixed_points_move(t5, rng):
    relaxed = averaged(t5, 0.25)
    for _ in range(50):
        x = rng.uniform(0.0, 1.0, size=1)
        base_res = norm(t5.apply(x) - x)
        if base_res > 1e-9:
            assert norm(relaxed.apply(x) - x) > 0.0


# --- the embedding check -------------------------------------------------------------

def test_lemma_t5_well_inside_range(t5):
    report = verify_lemma(t5, k=2.0 / 3.0, lam=0.25)
    assert report.in_lemma_range
    assert report.verdict == "pass"
    assert report.max_violation <= 1e-10
    assert report.inner_max_violation <= 1e-10
    assert not report.anomaly
    # the binding sample: |T_0.25(1) - 7/8| = 0.0625 <= |1 - 7/8| = 0.125
    moved = abs(averaged(t5, 0.25).apply([1.0])[0] - 0.875)
    assert moved == 0.0625
    assert moved <= 0.125


def test_lemma_reflection_sharpness(reflection3):
    # lambda beyond 1-k: labeled, executed, and genuinely violated
    report = verify_lemma(reflection3, k=0.5, lam=0.6)
    assert not report.in_lemma_range
    assert report.verdict == "fail"
    assert not report.anomaly
    # |T_0.6 x| = |1 - 0.6*4| |x| = 1.4 |x|: violation 0.4*|witness|
    wx = abs(report.witness_x[0])
    assert report.max_violation == pytest.approx(0.4 * wx, rel=1e-12)
    assert report.max_violation > 0.01


def test_lemma_boundary_lambda_still_passes(reflection3):
    # lambda = 1-k gives |1 - lam(1+alpha)| = 1: equality, not violation
    report = verify_lemma(reflection3, k=0.5, lam=0.5)
    assert not report.in_lemma_range
    assert report.verdict == "pass"


def test_lemma_t2_trivial(t2):
    report = verify_lemma(t2, k=0.0, lam=0.5)
    assert report.verdict == "pass"
    assert report.in_lemma_range


def test_lemma_unknown_fix_raises(t1):
    with pytest.raises(FixUnknownError) as err:
        verify_lemma(t1, k=0.5, lam=0.25)
    assert err.value.code == "fix-unknown"


def test_lemma_k_validation(t5):
    with pytest.raises(KOutOfRangeError):
        verify_lemma(t5, k=1.0, lam=0.1)


def test_lemma_inner_inequality_equality_case(reflection3, rng):
    # the reflection family satisfies the inner-product form with equality
    report = verify_lemma(reflection3, k=0.5, lam=0.25, extra_random=300, seed=9)
    assert report.inner_max_violation <= 1e-12
    assert report.verdict == "pass"


def test_lemma_property_random_lambdas(t5, t3, reflection3, rng):
    cases = [
        (t5, 2.0 / 3.0),
        (t3, estimate_k_dc(t3, 201, 200, 7)),
        (reflection3, 0.5),
    ]
    for mapping, k in cases:
        for _ in range(20):
            lam = (1.0 - k) * rng.random()
            if lam == 0.0:
                continue
            report = verify_lemma(mapping, k=k, lam=lam,
                                  points_per_axis=51, extra_random=100, seed=5)
            assert report.verdict == "pass", (mapping.label, k, lam)
            assert report.max_violation <= 1e-10


def test_step_bound_equivalence():
    # t < 2*lam_A with lam_A = (1-k)/2 is the same constraint as t < 1-k
    for k in (0.0, 0.1, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.9):
        lam_a = convert_constants("k_to_lambda", k)
        assert 2.0 * lam_a == pytest.approx(1.0 - k, rel=0, abs=1e-16)
        for t in (1e-6, 0.1, 0.3, 0.5, 0.7, 0.99):
            assert (t < 2.0 * lam_a) == (t < 1.0 - k)


def test_lemma_report_json_shape(t5):
    d = verify_lemma(t5, k=2.0 / 3.0, lam=0.25).to_json_dict()
    for key in ("lambda", "k", "in_lemma_range", "verdict", "max_violation",
                "witness_x", "witness_y", "samples"):
        assert key in d
    assert d["lambda"] == 0.25
    assert d["verdict"] == "pass"


def test_lemma_property_qne_members_any_lambda(t2, t4, rng):
    # k = 0 members: every admissible step keeps the relaxation QNE
    for mapping in (t2, t4):
        for lam in rng.uniform(0.01, 0.999, size=8):
            report = verify_lemma(mapping, k=0.0, lam=float(lam),
                                  points_per_axis=101, extra_random=200, seed=4)
            assert report.verdict == "pass"
