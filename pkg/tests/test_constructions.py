import pytest

from spacinglab.constructions import (
    ConstructionSpec,
    alternating_thick,
    build_construction,
    completed_block_lengths,
    find_delta_delta_order3,
    ip_obstruction_check,
    progressive_gap_union,
    rapid_growth_differences,
    rapid_growth_sequence,
    squares_family,
)
from spacinglab.errors import ScheduleTooTightError
from spacinglab.families import (
    find_delta_subset,
    has_progressive_gaps,
    is_thick_at,
)
from spacinglab.intset import WindowedSet, difference_set


# -- squares ------------------------------------------------------------------


def test_squares_enumeration():
    assert squares_family((1, 25)).to_list() == [1, 4, 9, 16, 25]


def test_squares_complement():
    assert squares_family((1, 10), complement=True).to_list() == [2, 3, 5, 6, 7, 8, 10]


def test_squares_contain_pythagorean_delta_witness():
    squares = squares_family((1, 10 ** 4))
    assert find_delta_subset(squares, 3, 100) == (1, 10, 26)


def test_squares_negative_window_rejected():
    with pytest.raises(ValueError):
        squares_family((-5, 10))


# -- rapid growth ----------------------------------------------------------------


def test_rapid_growth_minimal_recurrence():
    assert rapid_growth_sequence(4, 1) == [1, 5, 25, 125]


def test_rapid_growth_indexed_variant():
    assert rapid_growth_sequence(4, 1, indexed=True) == [1, 9, 53, 277]


def test_rapid_growth_strict_inequality_and_minimality():
    terms = rapid_growth_sequence(7, 3)
    for i in range(1, len(terms)):
        partial = sum(terms[:i])
        assert terms[i] > 4 * partial
        assert not terms[i] - 1 > 4 * partial  # replacing b_n by b_n - 1 breaks it


def test_rapid_growth_differences_have_progressive_gaps():
    for n_terms in (4, 5, 6):
        delta = rapid_growth_differences(rapid_growth_sequence(n_terms))
        assert has_progressive_gaps(delta) is not None


# -- staircase obstruction ---------------------------------------------------------


def test_obstruction_vacuous_below_eight_terms():
    # staircase pairs need eight strictly ordered indices
    for n_terms in (2, 5, 7):
        report = ip_obstruction_check(rapid_growth_sequence(n_terms))
        assert report.pairs_checked == 0
        assert report.ok


def test_obstruction_nonvacuous_at_eight_terms():
    report = ip_obstruction_check(rapid_growth_sequence(8))
    assert report.pairs_checked == 1
    assert report.ok


def test_obstruction_exhaustive_at_nine_terms():
    report = ip_obstruction_check(rapid_growth_sequence(9))
    assert report.pairs_checked == 9
    assert report.ok
    assert report.delta_size == 36


def test_obstruction_sample_cap():
    report = ip_obstruction_check(rapid_growth_sequence(10), sample_cap=5)
    assert report.pairs_checked == 5


# -- progressive union ----------------------------------------------------------------


def test_progressive_union_three_chunks():
    out = progressive_gap_union([(1, 5), (1, 50), (1, 500)], [100, 10 ** 4, 10 ** 6])
    assert out.to_list() == [104, 10049, 1000499]
    assert has_progressive_gaps(out) is not None


def test_progressive_union_single_chunk():
    out = progressive_gap_union([(1, 4, 9)], [10])
    assert out.to_list() == [13, 15, 18]


def test_progressive_union_rejects_tight_schedule():
    # second chunk lands below the end of the first
    with pytest.raises(ScheduleTooTightError):
        progressive_gap_union([(1, 100), (1, 50)], [10, 20])


def test_progressive_union_rejects_nonincreasing_shifts():
    with pytest.raises(ValueError):
        progressive_gap_union([(1, 5), (1, 50)], [100, 100])


def test_progressive_union_complement_has_no_order3_structure():
    # shifted unions of the set still avoid difference-of-differences
    # triples; the search is the oracle
    out = progressive_gap_union([(1, 5), (1, 50), (1, 500)], [100, 10 ** 4, 10 ** 6])
    window_hi = 2000
    base = WindowedSet.from_members(1, window_hi,
                                    [n for n in out.members() if n <= window_hi])
    shifted_union = base
    for k in (1, 2):
        shifted = WindowedSet.from_members(
            1, window_hi, [n + k for n in base.members() if n + k <= window_hi])
        shifted_union = shifted_union.union(shifted)
    assert find_delta_delta_order3(shifted_union, 2000) is None


def test_find_delta_delta_order3_positive_case():
    target = WindowedSet.from_members(1, 100, [3, 5, 2, 8])
    witness = find_delta_delta_order3(target, 100)
    assert witness is not None
    s1, s2, s3 = witness
    a, b = s2 - s1, s3 - s2
    assert a != b
    assert {a, b, abs(a - b)} <= set(target.members())


# -- alternating blocks ------------------------------------------------------------------


def test_alternating_linear_schedule():
    out = alternating_thick((0, 181), lambda k: k)
    assert out.member_count == 91
    ones, zeros = completed_block_lengths(out)
    assert (ones, zeros) == (13, 12)
    assert is_thick_at(out, 13)
    assert is_thick_at(out.complement(), 12)


def test_alternating_constant_schedule_is_periodic():
    out = alternating_thick((0, 20), lambda k: 1)
    assert out.to_list() == list(range(0, 21, 2))
    assert not is_thick_at(out, 2)


def test_alternating_explicit_schedule():
    out = alternating_thick((0, 11), [2, 4])
    # blocks: 1^2 0^2 1^4 0^4
    assert out.to_list() == [0, 1, 4, 5, 6, 7]


def test_alternating_rejects_zero_lengths():
    with pytest.raises(ValueError):
        alternating_thick((0, 10), lambda k: 0)


# -- construction registry -----------------------------------------------------------------


def test_registry_round_trip_and_postconditions():
    spec = ConstructionSpec("rapid-growth-delta", (("terms", "4"),))
    out, post = build_construction(spec)
    assert out.to_list() == [4, 20, 24, 100, 120, 124]
    assert post == {"progressive_gaps": True}


def test_registry_squares_postcondition():
    spec = ConstructionSpec("squares", (("complement", "false"),), (1, 2000))
    out, post = build_construction(spec)
    assert out.to_list()[:3] == [1, 4, 9]
    assert post["no_order4_delta_subset_to_bound"]


def test_registry_alternating():
    spec = ConstructionSpec("alternating-thick", (("schedule", "linear"),), (1, 2000))
    out, post = build_construction(spec)
    assert post["two_sided_thick"]
    assert completed_block_lengths(out) == (44, 44)


def test_registry_progressive_union_params():
    spec = ConstructionSpec(
        "progressive-union",
        (("seeds", "1,5;1,50;1,500"), ("shifts", "100,10000,1000000")))
    out, post = build_construction(spec)
    assert post["progressive_gaps"]
    assert out.member_count == 3


def test_registry_unknown_kind():
    with pytest.raises(ValueError):
        build_construction(ConstructionSpec("bogus"))


def test_registry_missing_param():
    with pytest.raises(ValueError):
        build_construction(ConstructionSpec("progressive-union"))
