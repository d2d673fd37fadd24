"""Cover-sum and box-counting estimators against the analytic dimension."""

import math

import mpmath
import pytest

from metallic import (
    CapExceeded,
    FractalSpec,
    MetallicParams,
    box_count,
    box_dimension,
    cover_at_depth,
    cover_summary,
    dimension,
    empirical_dimension,
    hausdorff_sum,
)

GOLDEN = MetallicParams(1, 1)
SILVER = MetallicParams(2, 1)

SPEC_301 = FractalSpec(GOLDEN, 3, 0, 1)
SPEC_411 = FractalSpec(GOLDEN, 4, 1, 1)
SPEC_210 = FractalSpec(SILVER, 2, 1, 0)


def test_hausdorff_sum_depth1_t1():
    hs = hausdorff_sum(cover_at_depth(SPEC_301, 1), 1.0)
    assert abs(hs.value - 2 / GOLDEN.gamma_float**2) < 1e-12
    assert abs(hs.y - hs.value) < 1e-12


def test_hausdorff_sum_t0_counts_intervals():
    for k in (0, 1, 2, 3):
        hs = hausdorff_sum(cover_at_depth(SPEC_411, k), 0.0)
        assert hs.value == 3**k


def test_hausdorff_sum_near_critical_exponent():
    hs = hausdorff_sum(cover_at_depth(SPEC_301, 3), 0.7202)
    assert abs(hs.value - 1.0) < 1e-3


@pytest.mark.parametrize("spec", [SPEC_301, SPEC_411, SPEC_210])
def test_product_structure(spec):
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        base = hausdorff_sum(cover_at_depth(spec, 1), t).value
        for k in (2, 3, 4, 5, 6):
            value = hausdorff_sum(cover_at_depth(spec, k), t).value
            assert math.isclose(value, base**k, rel_tol=1e-9)
            assert math.isclose(value, hausdorff_sum(cover_summary(spec, k), t).value,
                                rel_tol=1e-12)


@pytest.mark.parametrize("spec", [SPEC_301, SPEC_411, SPEC_210])
def test_transition_around_dimension(spec):
    # below the critical exponent the sums blow up with depth, above they die
    d = dimension(spec).dim
    low = [hausdorff_sum(cover_summary(spec, k), d - 0.05).value for k in (2, 4, 6)]
    high = [hausdorff_sum(cover_summary(spec, k), d + 0.05).value for k in (2, 4, 6)]
    assert low[0] < low[1] < low[2]
    assert high[0] > high[1] > high[2]


@pytest.mark.parametrize("spec", [SPEC_301, SPEC_411, SPEC_210])
@pytest.mark.parametrize("k", [2, 4])
def test_empirical_matches_analytic(spec, k):
    assert abs(empirical_dimension(cover_summary(spec, k)) - dimension(spec).dim) <= 1e-9


def test_empirical_no_removal_is_one():
    spec = FractalSpec(GOLDEN, 3, 0, 0)
    for k in (1, 3, 5):
        assert empirical_dimension(cover_summary(spec, k)) == 1.0


def test_empirical_single_survivor_is_zero():
    spec = FractalSpec(GOLDEN, 2, 1, 0)
    assert empirical_dimension(cover_summary(spec, 3)) == 0.0


def test_empirical_requires_depth():
    with pytest.raises(ValueError):
        empirical_dimension(cover_summary(SPEC_301, 0))


def test_box_count_unit_interval():
    cover = cover_at_depth(FractalSpec(GOLDEN, 3, 0, 0), 0)
    assert box_count(cover, 0.25) == 4
    assert box_count(cover, 1 - 1e-12) == 2  # [0,eps) and the sliver at the right
    with pytest.raises(ValueError):
        box_count(cover, 1.5)


def test_box_count_301_depth1_pinned_by_brute_force():
    # survivors [0, 1/phi^2] and [1/phi, 1] at grid width 1/phi^3
    cover = cover_at_depth(SPEC_301, 1)
    with mpmath.workprec(160):
        phi = GOLDEN.gamma_mpf(160)
        eps = 1 / phi**3
        spans = [
            (iv.start.to_mpf(160), iv.start.to_mpf(160) + iv.length.to_mpf(160))
            for iv in cover.intervals
        ]
        brute = 0
        j = 0
        while j * eps < 1:
            lo, hi = j * eps, (j + 1) * eps
            if any(max(a, lo) < min(b, hi) for a, b in spans):
                brute += 1
            j += 1
    assert brute == 5
    assert box_count(cover, eps) == brute


def test_box_count_monotone_in_eps():
    cover = cover_at_depth(SPEC_411, 3)
    counts = [box_count(cover, eps) for eps in (0.001, 0.005, 0.02, 0.1, 0.3, 0.9)]
    assert all(a >= b for a, b in zip(counts, counts[1:]))


def test_box_count_summary_matches_materialized():
    for spec in (SPEC_301, SPEC_210):
        for eps in (0.01, 0.05, 0.2):
            a = box_count(cover_at_depth(spec, 3), eps)
            b = box_count(cover_summary(spec, 3), eps)
            assert a == b


def test_box_dimension_smoke():
    fit = box_dimension(SPEC_301, 5)
    d = dimension(SPEC_301).dim
    assert abs(fit.slope - d) < 0.1
    assert len(fit.box_counts) == 4
    assert fit.residual > 0 and fit.rms_misfit >= 0


def test_box_dimension_validation_and_cap():
    with pytest.raises(ValueError):
        box_dimension(SPEC_301, 3)
    with pytest.raises(CapExceeded):
        box_dimension(SPEC_411, 8, cap=1000)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        hausdorff_sum(cover_at_depth(SPEC_301, 1), -0.5)
