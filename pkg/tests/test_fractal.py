"""Removal fractals: survivors, refinement, covers, gaps."""

from collections import Counter

import pytest

from metallic import (
    CapExceeded,
    EmptyFractal,
    FractalSpec,
    InvalidRemovalCount,
    MetallicParams,
    PolicyIndexMismatch,
    TileKind,
    ValidationError,
    cover_at_depth,
    cover_summary,
    gamma_pow,
    gaps,
    iter_cover_intervals,
    refine,
    survivors,
    tile_counts,
)

GOLDEN = MetallicParams(1, 1)
SILVER = MetallicParams(2, 1)

SPEC_301 = FractalSpec(GOLDEN, 3, 0, 1)
SPEC_411 = FractalSpec(GOLDEN, 4, 1, 1)
SPEC_210 = FractalSpec(SILVER, 2, 1, 0)
# Figure-style silver removal: drop the middle long tile (word position 1)
SPEC_210_FIG = FractalSpec(SILVER, 2, 1, 0, policy="explicit", indices=(1,))

TEST_SPECS = [SPEC_301, SPEC_411, SPEC_210, SPEC_210_FIG,
              FractalSpec(MetallicParams(2, 2), 3, 1, 1)]


def test_survivors_301_keeps_the_two_longs():
    kept = survivors(SPEC_301)
    assert [t.kind for t in kept] == [TileKind.LONG, TileKind.LONG]
    assert kept[0].start.sign() == 0
    expected = gamma_pow(GOLDEN, -2) + gamma_pow(GOLDEN, -3)
    assert (kept[1].start - expected).sign() == 0


def test_survivors_silver_figure_positions():
    kept = survivors(SPEC_210_FIG)
    assert [t.kind for t in kept] == [TileKind.LONG, TileKind.SHORT]
    assert kept[0].start.sign() == 0
    expected = SILVER.one() - gamma_pow(SILVER, -2)
    assert (kept[1].start - expected).sign() == 0


def test_forced_single_short_survivor():
    counts = tile_counts(GOLDEN, 4)
    spec = FractalSpec(GOLDEN, 4, counts.N_a, counts.N_b - 1)
    kept = survivors(spec)
    assert len(kept) == 1 and kept[0].kind is TileKind.SHORT


def test_keep_last_removes_leading_tiles():
    spec = FractalSpec(GOLDEN, 4, 1, 0, policy="keep-last")
    kept = survivors(spec)
    # W_4 = abaab; dropping the first a keeps b a a b
    assert "".join(t.kind.value for t in kept) == "baab"


def test_depth_zero_cover_is_unit_interval():
    cover = cover_at_depth(SPEC_301, 0)
    assert cover.count == 1 and len(cover.intervals) == 1
    iv = cover.intervals[0]
    assert iv.start.sign() == 0 and iv.length_exponent == 0 and iv.kind_path == ""


def test_cover_301_depth1():
    cover = cover_at_depth(SPEC_301, 1)
    assert [iv.length_exponent for iv in cover.intervals] == [2, 2]
    total = cover.total_length()
    assert (total - 2 * gamma_pow(GOLDEN, -2)).sign() == 0


def test_cover_411_depth1_and_2():
    c1 = cover_at_depth(SPEC_411, 1)
    assert sorted(iv.length_exponent for iv in c1.intervals) == [3, 3, 4]
    c2 = refine(c1)
    assert Counter(iv.length_exponent for iv in c2.intervals) == {6: 4, 7: 4, 8: 1}


def test_refine_301_depths():
    cover = cover_at_depth(SPEC_301, 1)
    deeper = refine(cover)
    assert deeper.depth == 2
    assert [iv.length_exponent for iv in deeper.intervals] == [4, 4, 4, 4]


@pytest.mark.parametrize("spec", TEST_SPECS)
def test_cover_disjoint_sorted_inside_unit(spec):
    na, nb = spec.survivor_counts
    for k in (1, 2, 3, 4, 5, 6):
        if (na + nb) ** k > 4096:
            break
        cover = cover_at_depth(spec, k)
        cursor = spec.params.zero()
        for iv in cover.intervals:
            assert (iv.start - cursor).sign() >= 0
            cursor = iv.end
        assert (spec.params.one() - cursor).sign() >= 0


@pytest.mark.parametrize("spec", TEST_SPECS)
def test_interval_count_and_exponent_range(spec):
    na, nb = spec.survivor_counts
    for k in (0, 1, 2, 3):
        cover = cover_at_depth(spec, k)
        assert len(cover.intervals) == (na + nb) ** k == cover.count
        for iv in cover.intervals:
            assert (spec.n - 1) * k <= iv.length_exponent <= spec.n * k
            assert len(iv.kind_path) == k


@pytest.mark.parametrize("spec", TEST_SPECS)
def test_total_cover_length_closed_form(spec):
    na, nb = spec.survivor_counts
    per_level = na * gamma_pow(spec.params, -(spec.n - 1)) + nb * gamma_pow(spec.params, -spec.n)
    for k in (0, 1, 2, 3, 4):
        cover = cover_at_depth(spec, k)
        assert (cover.total_length() - per_level**k).sign() == 0


@pytest.mark.parametrize("spec", TEST_SPECS)
def test_multiset_is_kfold_product(spec):
    # the materialized tally must equal the k-fold product of the depth-1
    # multiset, which is what summary covers use
    for k in (0, 1, 2, 3, 4):
        materialized = cover_at_depth(spec, k).exponent_counts()
        summary = cover_summary(spec, k).exponent_counts()
        assert materialized == summary


def test_policy_independence_of_multiset():
    first = FractalSpec(GOLDEN, 4, 1, 1, policy="keep-first")
    last = FractalSpec(GOLDEN, 4, 1, 1, policy="keep-last")
    for k in (1, 2, 3):
        a = cover_at_depth(first, k)
        b = cover_at_depth(last, k)
        assert a.exponent_counts() == b.exponent_counts()
        assert len(a.intervals) == len(b.intervals)
    # but the geometry differs
    starts_a = [float(iv.start) for iv in cover_at_depth(first, 1).intervals]
    starts_b = [float(iv.start) for iv in cover_at_depth(last, 1).intervals]
    assert starts_a != starts_b


@pytest.mark.parametrize("spec", TEST_SPECS)
def test_streaming_matches_materialized(spec):
    for k in (0, 1, 2, 3):
        streamed = list(iter_cover_intervals(spec, k))
        materialized = cover_at_depth(spec, k).intervals
        assert len(streamed) == len(materialized)
        for s, m in zip(streamed, materialized):
            assert s.kind_path == m.kind_path
            assert s.length_exponent == m.length_exponent
            assert (s.start - m.start).sign() == 0


def test_gaps_301_single_middle_gap():
    cover = cover_at_depth(SPEC_301, 1)
    holes = gaps(cover)
    assert len(holes) == 1
    start, width = holes[0]
    assert (start - gamma_pow(GOLDEN, -2)).sign() == 0
    assert (width - gamma_pow(GOLDEN, -3)).sign() == 0


def test_gaps_silver_figure():
    holes = gaps(cover_at_depth(SPEC_210_FIG, 1))
    assert len(holes) == 1
    _, width = holes[0]
    assert (width - gamma_pow(SILVER, -1)).sign() == 0


def test_no_gaps_at_depth_zero():
    assert gaps(cover_at_depth(SPEC_301, 0)) == ()


@pytest.mark.parametrize("spec", TEST_SPECS)
def test_gap_lengths_complement_cover(spec):
    for k in (1, 2, 3):
        cover = cover_at_depth(spec, k)
        hole_total = spec.params.zero()
        for _, width in gaps(cover):
            hole_total = hole_total + width
        assert (hole_total + cover.total_length() - spec.params.one()).sign() == 0


def test_validation_errors():
    with pytest.raises(InvalidRemovalCount):
        FractalSpec(GOLDEN, 3, 3, 0)  # only 2 long tiles at step 3
    with pytest.raises(InvalidRemovalCount):
        FractalSpec(GOLDEN, 3, 0, 2)
    with pytest.raises(EmptyFractal):
        FractalSpec(GOLDEN, 3, 2, 1)
    with pytest.raises(ValidationError):
        FractalSpec(GOLDEN, 1, 0, 0)
    with pytest.raises(ValidationError):
        FractalSpec(GOLDEN, 3, 0, 1, policy="drop-middle")


def test_explicit_index_validation():
    with pytest.raises(PolicyIndexMismatch):
        FractalSpec(SILVER, 2, 1, 0, policy="explicit", indices=(2,))  # position 2 is b
    with pytest.raises(PolicyIndexMismatch):
        FractalSpec(SILVER, 2, 1, 0, policy="explicit", indices=(0, 1))
    with pytest.raises(PolicyIndexMismatch):
        FractalSpec(SILVER, 2, 1, 0, policy="explicit", indices=(9,))
    with pytest.raises(PolicyIndexMismatch):
        FractalSpec(SILVER, 2, 1, 0, policy="explicit")
    with pytest.raises(PolicyIndexMismatch):
        FractalSpec(SILVER, 2, 1, 0, indices=(1,))  # indices without explicit


def test_cover_cap():
    with pytest.raises(CapExceeded):
        cover_at_depth(SPEC_411, 10, cap=100)


def test_summary_cover_has_no_intervals():
    cover = cover_summary(SPEC_411, 3)
    assert cover.intervals is None
    with pytest.raises(ValidationError):
        refine(cover)
    with pytest.raises(ValidationError):
        gaps(cover)
