import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spacinglab.errors import TooFewMembersError, WindowTooSmallError
from spacinglab.families import (
    Detector,
    GeneratedFamily,
    ScaleParams,
    block_embeds,
    bohr_set,
    classify,
    find_delta_subset,
    find_ip_subset,
    has_progressive_gaps,
    is_cofinite_at,
    is_piecewise_syndetic_at,
    is_syndetic_at,
    is_thick_at,
    is_thickly_syndetic_at,
    validate_progressive_decomposition,
)
from spacinglab.intset import WindowedSet, difference_set, finite_sums


def small_sets(max_size=60):
    @st.composite
    def build(draw):
        lo = draw(st.integers(-20, 20))
        size = draw(st.integers(1, max_size))
        bits = draw(st.integers(0, (1 << size) - 1))
        return WindowedSet(lo, lo + size - 1, bits)

    return build()


# -- thick / syndetic ---------------------------------------------------------


def test_thick_full_window():
    full = WindowedSet.full(0, 30)
    assert all(is_thick_at(full, L) for L in range(1, 31))


def test_thick_evens_false_at_2():
    evens = WindowedSet.from_members(0, 20, range(0, 21, 2))
    assert not is_thick_at(evens, 2)
    assert is_thick_at(evens, 1)


def test_thick_alternating_blocks():
    members, pos = [], 0
    for k in range(1, 14):
        members.extend(range(pos, pos + k))
        pos += 2 * k
    s = WindowedSet.from_members(0, 181, members)
    assert is_thick_at(s, 13)
    assert not is_thick_at(s, 14)


def test_syndetic_evens():
    evens = WindowedSet.from_members(0, 20, range(0, 21, 2))
    assert is_syndetic_at(evens, 2)
    assert not is_syndetic_at(evens, 1)


def test_syndetic_single_missing_residue():
    s = WindowedSet.from_members(0, 999, [n for n in range(1000) if n % 100 != 0])
    assert is_syndetic_at(s, 2)


def test_syndetic_counts_boundary_gaps():
    # one interior point far from both edges: syndetic only at generous g
    s = WindowedSet.from_members(0, 10, [5])
    assert not is_syndetic_at(s, 5)
    assert is_syndetic_at(s, 6)


def test_syndetic_blocky_set_fails_at_small_gap():
    members, pos = [], 0
    for k in range(1, 14):
        members.extend(range(pos, pos + k))
        pos += 2 * k
    s = WindowedSet.from_members(0, 181, members)
    assert not is_syndetic_at(s, 12)


@given(small_sets(), st.integers(1, 12))
def test_thick_syndetic_duality_exact(s, g):
    assert is_syndetic_at(s, g) == (not is_thick_at(s.complement(), g))


@given(small_sets(max_size=40), st.integers(2, 10))
def test_thick_meets_syndetic(s, run):
    # plant a run of `run` members, then test against a syndetic partner
    lo = s.lo
    planted = WindowedSet(s.lo, s.hi, s.bits | ((1 << min(run, s.size)) - 1))
    if not is_thick_at(planted, min(run, planted.size)):
        return
    g = max(1, run // 2)
    partner = WindowedSet.from_members(s.lo, s.hi, range(s.lo, s.hi + 1, max(1, g)))
    if is_syndetic_at(partner, g):
        assert not planted.intersect(partner).is_empty


def test_thick_monotone_in_run_length():
    s = WindowedSet.from_members(0, 50, list(range(5, 15)) + [30, 40])
    verdicts = [is_thick_at(s, L) for L in range(1, 20)]
    assert verdicts == sorted(verdicts, reverse=True)


def test_syndetic_monotone_in_gap():
    s = WindowedSet.from_members(0, 50, [0, 7, 9, 20, 33, 50])
    verdicts = [is_syndetic_at(s, g) for g in range(1, 30)]
    assert verdicts == sorted(verdicts)


# -- piecewise syndetic / thickly syndetic -----------------------------------


def _brute_ps(s, g, run):
    """Literal search over all intervals: S & I nonempty and syndetic at g
    relative to I."""
    for lo in range(s.lo, s.hi + 1):
        for hi in range(lo + run - 1, s.hi + 1):
            inside = [n for n in s.members() if lo <= n <= hi]
            if not inside:
                continue
            gaps_ok = all(b - a <= g for a, b in zip(inside, inside[1:]))
            edges_ok = inside[0] - lo + 1 <= g and hi - inside[-1] + 1 <= g
            if gaps_ok and edges_ok:
                return True
    return False


@settings(max_examples=150)
@given(small_sets(max_size=26), st.integers(1, 6), st.integers(1, 10))
def test_ps_matches_interval_bruteforce(s, g, run):
    run = min(run, s.size)
    assert is_piecewise_syndetic_at(s, g, run) == _brute_ps(s, g, run)


def test_ps_syndetic_head_in_sparse_tail():
    members = list(range(0, 101, 2)) + [500, 900]
    s = WindowedSet.from_members(0, 1000, members)
    assert is_piecewise_syndetic_at(s, 2, 50)


def test_ps_squares_false():
    squares = WindowedSet.from_members(0, 10 ** 4, [n * n for n in range(1, 101)])
    assert not is_piecewise_syndetic_at(squares, 10, 200)


def test_ts_full_window_true_at_all_scales():
    full = WindowedSet.full(0, 100)
    for g in (1, 5, 10):
        for run in (1, 20, 101):
            assert is_thickly_syndetic_at(full, g, run)


def test_ts_evens_false():
    evens = WindowedSet.from_members(0, 100, range(0, 101, 2))
    assert not is_thickly_syndetic_at(evens, 2, 10)


def test_ts_squares_complement():
    squares = WindowedSet.from_members(0, 10 ** 4, [n * n for n in range(1, 101)])
    assert is_thickly_syndetic_at(squares.complement(), 10, 200)


@given(small_sets(), st.integers(1, 6), st.integers(1, 12))
def test_ts_ps_duality_exact(s, g, run):
    assert is_thickly_syndetic_at(s, g, run) == (
        not is_piecewise_syndetic_at(s.complement(), g, run))


# -- cofinite ------------------------------------------------------------------


def test_cofinite_detector():
    s = WindowedSet.from_members(-50, 50, [n for n in range(-50, 51) if abs(n) > 5 or n == 1])
    assert is_cofinite_at(s, 5)
    assert not is_cofinite_at(s, 4)


def test_cofinite_monotone_in_tail_bound():
    # failing at a tail bound implies failing at every smaller one
    rng = random.Random(2)
    for _ in range(50):
        s = WindowedSet(-30, 30, rng.getrandbits(61))
        verdicts = [is_cofinite_at(s, n0) for n0 in range(0, 35)]
        assert verdicts == sorted(verdicts)


# -- delta subsets ---------------------------------------------------------------


def test_delta_squares_pythagorean_witness():
    squares = WindowedSet.from_members(1, 10 ** 4, [n * n for n in range(1, 101)])
    assert find_delta_subset(squares, 3, 100) == (1, 10, 26)


def test_delta_squares_no_order_four():
    squares = WindowedSet.from_members(1, 10 ** 5, [n * n for n in range(1, 317)])
    assert find_delta_subset(squares, 4, 10 ** 5) is None


def test_delta_full_window_prefix():
    assert find_delta_subset(WindowedSet.full(1, 100), 5, 100) == (1, 2, 3, 4, 5)


def test_delta_witness_verified_post_hoc():
    s = WindowedSet.from_members(1, 60, [3, 4, 7, 11, 14, 18])
    witness = find_delta_subset(s, 3, 60)
    if witness is not None:
        assert all(b - a in s for a, b in combinations(witness, 2))


def _brute_delta(s, m, bound):
    from itertools import combinations as combs
    for seq in combs(range(1, bound + 1), m):
        if all(b - a in s for a, b in combs(seq, 2)):
            return seq
    return None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, (1 << 24) - 1), st.integers(2, 3))
def test_delta_matches_bruteforce(bits, m):
    s = WindowedSet(1, 24, bits)
    assert find_delta_subset(s, m, 20) == _brute_delta(s, m, 20)


# -- IP subsets -------------------------------------------------------------------


def test_ip_finds_planted_generators():
    fs = finite_sums((1, 3, 9))
    s = WindowedSet.from_members(1, 20, list(fs.members()) + [17])
    assert find_ip_subset(s, 3, 100) == (1, 3, 9)


def test_ip_parity_obstruction():
    odds = WindowedSet.from_members(1, 999, range(1, 1000, 2))
    assert find_ip_subset(odds, 2, 999) is None


def test_ip_inside_difference_set():
    db = difference_set(WindowedSet.from_members(1, 125, [1, 5, 25, 125]))
    assert find_ip_subset(db, 2, 124) == (4, 20)


def _brute_ip(s, k, bound):
    from itertools import combinations_with_replacement as cwr
    for gens in cwr(range(1, bound + 1), k):
        if sum(gens) > bound:
            continue
        sums = {0}
        for a in gens:
            sums |= {a + t for t in sums}
        if all(t in s for t in sums if t):
            return gens
    return None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, (1 << 20) - 1), st.integers(1, 3))
def test_ip_matches_bruteforce(bits, k):
    s = WindowedSet(1, 20, bits)
    assert find_ip_subset(s, k, 15) == _brute_ip(s, k, 15)


# -- progressive gaps ---------------------------------------------------------------


def test_progressive_rapid_growth_differences():
    db = difference_set(WindowedSet.from_members(1, 125, [1, 5, 25, 125]))
    chunks = has_progressive_gaps(db)
    assert chunks is not None
    assert validate_progressive_decomposition(chunks)
    assert [n for c in chunks for n in c] == db.to_list()


def test_progressive_example_decomposition_is_valid():
    # the displayed decomposition need not be the returned one
    assert validate_progressive_decomposition(((4,), (20, 24), (100, 120, 124)))


def test_progressive_arithmetic_progression_refused():
    ap = WindowedSet.from_members(0, 100, range(0, 101, 10))
    assert has_progressive_gaps(ap) is None


def test_progressive_two_points_single_chunk():
    chunks = has_progressive_gaps(WindowedSet.from_members(0, 5, [0, 5]))
    assert chunks == ((0, 5),)


def test_progressive_needs_two_members():
    with pytest.raises(TooFewMembersError):
        has_progressive_gaps(WindowedSet.from_members(0, 5, [3]))


def test_progressive_equal_gap_pairs_refused():
    # 2+2 split with a single separator must not slip through
    s = WindowedSet.from_members(0, 40, [10, 20, 30, 40])
    assert has_progressive_gaps(s) is None


def test_progressive_geometric_gaps_accept():
    s = WindowedSet.from_members(0, 63, [0, 1, 3, 7, 15, 31, 63])
    chunks = has_progressive_gaps(s)
    assert chunks is not None and validate_progressive_decomposition(chunks)


def _brute_progressive(members):
    """Try every chunking; accept if any passes the validator."""
    n = len(members)

    def splits(i):
        if i == n:
            yield []
            return
        for j in range(i + 1, n + 1):
            for rest in splits(j):
                yield [tuple(members[i:j])] + rest

    return any(validate_progressive_decomposition(tuple(chunks)) for chunks in splits(0))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 120), min_size=2, max_size=8, unique=True))
def test_progressive_matches_bruteforce(members):
    members = sorted(members)
    s = WindowedSet.from_members(0, 130, members)
    assert (has_progressive_gaps(s) is not None) == _brute_progressive(members)


# -- Bohr sets -------------------------------------------------------------------


def test_bohr_half_gives_evens():
    b = bohr_set(Fraction(1, 2), (0, Fraction(1, 4)), (-10, 10))
    assert b.to_list() == list(range(-10, 11, 2))


def test_bohr_third_residue():
    b = bohr_set(Fraction(1, 3), (Fraction(3, 10), Fraction(4, 10)), (0, 9))
    assert b.to_list() == [1, 4, 7]


def test_bohr_golden_ratio_syndetic():
    b = bohr_set("0.6180339887", (0, Fraction(1, 10)), (0, 100))
    assert is_syndetic_at(b, 13)
    # frozen from the exact-rational scan
    assert b.to_list() == [0, 5, 13, 26, 34, 47, 60, 68, 81, 89, 94]


def test_bohr_rejects_bad_arc():
    with pytest.raises(ValueError):
        bohr_set(Fraction(1, 2), (Fraction(1, 2), Fraction(1, 2)), (0, 10))
    with pytest.raises(ValueError):
        bohr_set(Fraction(1, 2), (0, 1), (0, 10))


# -- generated families -----------------------------------------------------------


W = (0, 120)


def _ws(members):
    return WindowedSet.from_members(*W, members)


def test_bullet_full_set_is_member():
    fam = GeneratedFamily((_ws(range(0, 121, 2)),), shift_budget=1)
    assert fam.bullet_member(WindowedSet.full(*W))


def test_bullet_rejects_parity():
    evens = _ws(range(0, 121, 2))
    fam = GeneratedFamily((evens,), shift_budget=1)
    assert not fam.bullet_member(evens)


def test_bullet_shifted_union_example():
    g = _ws([0, 4, 20, 24])
    fam = GeneratedFamily((g,), shift_budget=2)
    bits = 0
    for k in range(0, 3):
        bits |= g.bits << k
    s = WindowedSet(*W, bits & ((1 << 121) - 1))
    # contains g+k only for k in [0, 2]; k = -1, -2 are missing
    assert not fam.bullet_member(s)
    for k in range(-2, 3):
        bits |= (g.bits << k) if k >= 0 else (g.bits >> -k)
    s_all = WindowedSet(*W, bits & ((1 << 121) - 1))
    assert fam.bullet_member(s_all)


def test_tau_full_set():
    fam = GeneratedFamily((_ws([60]),), shift_budget=1, arity_cap=2)
    assert fam.tau_member(WindowedSet.full(*W))


def test_tau_parity_intersection_empty():
    fam = GeneratedFamily((_ws([60]),), shift_budget=1, arity_cap=2)
    assert not fam.tau_member(_ws(range(0, 121, 2)))


def test_tau_implies_bullet_randomized():
    rng = random.Random(5)
    for _ in range(80):
        gens = tuple(WindowedSet(*W, rng.getrandbits(121)) for _ in range(rng.randint(1, 3)))
        fam = GeneratedFamily(gens, shift_budget=2, arity_cap=2)
        s = WindowedSet(*W, rng.getrandbits(121))
        if fam.tau_member(s):
            assert fam.bullet_member(s)


def test_filter_tau_equals_bullet():
    rng = random.Random(9)
    checked = 0
    for _ in range(60):
        a = WindowedSet(*W, rng.getrandbits(121) | rng.getrandbits(121))
        b = WindowedSet(*W, rng.getrandbits(121) | rng.getrandbits(121))
        fam = GeneratedFamily((a, b, a.intersect(b)), shift_budget=2, arity_cap=3)
        assert fam.is_filter()
        for _ in range(4):
            s = WindowedSet(*W, rng.getrandbits(121) | rng.getrandbits(121))
            assert fam.tau_member(s) == fam.bullet_member(s)
            checked += 1
    assert checked == 240


def test_is_filter_examples():
    single = GeneratedFamily((_ws([3, 7]),))
    assert single.is_filter()
    evens, odds = _ws(range(0, 121, 2)), _ws(range(1, 121, 2))
    assert not GeneratedFamily((evens, odds)).is_filter()
    m2 = _ws(range(0, 121, 2))
    m3 = _ws(range(0, 121, 3))
    m6 = _ws(range(0, 121, 6))
    assert GeneratedFamily((m2, m3, m6)).is_filter()


def test_family_chain_bullet_to_plus():
    # bullet membership forces the unshifted containment on the shrunken
    # window, which in turn is plus membership
    rng = random.Random(21)
    full_bits = (1 << 121) - 1
    checked = 0
    for _ in range(60):
        gens = tuple(WindowedSet(*W, rng.getrandbits(121) & rng.getrandbits(121))
                     for _ in range(rng.randint(1, 3)))
        fam = GeneratedFamily(gens, shift_budget=2, arity_cap=2)
        g = gens[rng.randrange(len(gens))]
        bits = rng.getrandbits(121)
        for k in range(-2, 3):
            bits |= (g.bits << k) if k >= 0 else (g.bits >> -k)
        s = WindowedSet(*W, bits & full_bits)
        if not fam.bullet_member(s):
            continue
        checked += 1
        lo, hi = fam.window
        shrunk = s.restrict(lo + 2, hi - 2)
        assert any(gen.restrict(lo + 2, hi - 2).is_subset_of(shrunk) for gen in gens)
        assert fam.plus().member(shrunk)
    assert checked > 40


def test_family_plus_contains_shifts():
    g = _ws([10, 20])
    fam = GeneratedFamily((g,), shift_budget=2)
    plus = fam.plus()
    assert plus.window == (2, 118)
    shifted = WindowedSet.from_members(2, 118, [11, 21])
    assert plus.member(shifted)


def test_window_too_small_for_budget():
    tiny = WindowedSet.full(0, 3)
    fam = GeneratedFamily((tiny,), shift_budget=2)
    with pytest.raises(WindowTooSmallError):
        fam.bullet_member(WindowedSet.full(0, 3))


# -- block embedding ----------------------------------------------------------------


def test_block_embeds_identity():
    rng = random.Random(3)
    for _ in range(20):
        f = WindowedSet(0, 200, rng.getrandbits(201))
        assert block_embeds(f, f, span_cap=15, count_cap=3)


def test_block_embeds_parity_false():
    evens = WindowedSet.from_members(0, 100, range(0, 101, 2))
    pair = WindowedSet.from_members(0, 1, [0, 1])
    assert not block_embeds(evens, pair, span_cap=3, count_cap=3)


def test_block_embeds_interval_reduces_to_thickness():
    rng = random.Random(13)
    for _ in range(30):
        f = WindowedSet(0, 150, rng.getrandbits(151))
        run = rng.randint(2, 8)
        interval = WindowedSet.full(0, run - 1)
        assert block_embeds(f, interval, span_cap=run - 1, count_cap=run) == \
            is_thick_at(f, run)


def test_block_embeds_interval_in_squares_complement():
    squares = WindowedSet.from_members(1, 10 ** 4, [n * n for n in range(1, 101)])
    host = squares.complement()
    interval = WindowedSet.full(1, 50)
    # gaps between large squares exceed 50, so the complement is thick at 50
    assert is_thick_at(host, 50)
    assert block_embeds(host, interval, span_cap=50, count_cap=50)


def test_block_embeds_monotone_in_host():
    rng = random.Random(17)
    source = WindowedSet.from_members(0, 30, [0, 3, 11, 19, 30])
    for _ in range(20):
        small = WindowedSet(0, 300, rng.getrandbits(301))
        big = WindowedSet(0, 300, small.bits | rng.getrandbits(301))
        if block_embeds(small, source, span_cap=12, count_cap=3):
            assert block_embeds(big, source, span_cap=12, count_cap=3)


# -- detectors and classification -----------------------------------------------------


def test_detector_parse_and_describe():
    d = Detector.parse("ps:g=2,L=50")
    assert d.describe() == "ps:g=2,L=50"
    assert Detector.parse("nonempty").describe() == "nonempty"
    with pytest.raises(ValueError):
        Detector.parse("bogus:x=1")
    with pytest.raises(ValueError):
        Detector.parse("thick:g=2")


def test_detector_evaluation():
    s = WindowedSet.from_members(-20, 20, range(-20, 21, 2))
    assert Detector.parse("syndetic:g=2").evaluate(s)
    assert not Detector.parse("thick:L=2").evaluate(s)
    assert Detector.parse("nonempty").evaluate(s)
    assert not Detector.parse("cofinite:n0=3").evaluate(s)
    w = Detector.parse("cofinite:n0=3").witness_of_failure(s)
    assert w is not None and abs(w) > 3 and w not in s


def test_classify_squares_report():
    squares = WindowedSet.from_members(1, 10 ** 4, [n * n for n in range(1, 101)])
    report = classify(squares, ScaleParams(), source="squares")
    assert not report.thick and not report.syndetic and not report.piecewise_syndetic
    assert report.delta_witness == (1, 10, 26)
    text = report.to_text()
    assert "thick.verdict = false" in text
    assert "delta.witness = 1,10,26" in text


def test_classify_full_and_empty():
    full = classify(WindowedSet.full(0, 99))
    assert full.thick and full.syndetic
    empty = classify(WindowedSet.empty(0, 99))
    assert not empty.thick and not empty.piecewise_syndetic
    assert empty.density.upper_estimate == 0


def test_classify_negative_window():
    # witness searches live on the positive side; a negative-only window
    # simply reports no witnesses
    s = WindowedSet.from_members(-50, -10, [-40, -30, -20])
    report = classify(s)
    assert report.delta_witness is None and report.ip_witness is None
    assert "delta.witness = none" in report.to_text()


def test_progressive_gaps_dense_window_fast():
    # a full window has no decomposition; the chunker must refuse quickly
    assert has_progressive_gaps(WindowedSet.full(0, 4000)) is None
