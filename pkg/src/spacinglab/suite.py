"""The built-in verification battery.

Each item exercises one documented guarantee of the package end to end at
its stated scale (windows, word lengths, sample counts and tolerances are
pinned here, not configurable per run).  The battery is deterministic
given the seed: witnesses are lexicographically least and every random
draw flows from one seeded generator, so two runs with the same seed
serialize identically.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .constructions import (
    alternating_thick,
    completed_block_lengths,
    ip_obstruction_check,
    rapid_growth_differences,
    rapid_growth_sequence,
    squares_family,
)
from .covers import auto_cover, complexity_profile
from .families import (
    Detector,
    GeneratedFamily,
    block_embeds,
    find_delta_subset,
    has_progressive_gaps,
    is_piecewise_syndetic_at,
    is_syndetic_at,
    is_thick_at,
    is_thickly_syndetic_at,
)
from .intset import WindowedSet, difference_set
from .spacing import SpacingShift, Word, decomposition_agrees, mixing_evidence, return_set

DEFAULT_SEED = 20260809


@dataclass(frozen=True)
class ItemResult:
    name: str
    passed: bool
    detail: str
    seconds: float


@dataclass(frozen=True)
class SuiteResult:
    seed: int
    items: tuple[ItemResult, ...]

    @property
    def all_pass(self) -> bool:
        return all(item.passed for item in self.items)

    def to_structured_text(self) -> str:
        lines = ["format = suite/1", f"seed = {self.seed}"]
        for i, item in enumerate(self.items, start=1):
            status = "pass" if item.passed else "FAIL"
            lines.append(f"item.{i:02d}.name = {item.name}")
            lines.append(f"item.{i:02d}.status = {status}")
            lines.append(f"item.{i:02d}.detail = {item.detail}")
        lines.append(f"result = {'pass' if self.all_pass else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = []
        for i, item in enumerate(self.items, start=1):
            status = "PASS" if item.passed else "FAIL"
            lines.append(f"[{i:2d}] {item.name:<34s} {status}  ({item.seconds:.2f}s)  {item.detail}")
        lines.append("result: " + ("all pass" if self.all_pass else "FAILURES PRESENT"))
        return "\n".join(lines) + "\n"


def _random_windowed(rng: random.Random, lo: int, hi: int, density: float) -> WindowedSet:
    bits = 0
    for i in range(hi - lo + 1):
        if rng.random() < density:
            bits |= 1 << i
    return WindowedSet(lo, hi, bits)


def _generated_p_sets(seed: int) -> list[tuple[str, WindowedSet]]:
    """50 random densities plus the three named distance sets, all on [1, 2000]."""
    rng = random.Random(seed)
    sets = []
    for i in range(50):
        density = 0.1 + 0.8 * i / 49
        sets.append((f"random-{i:02d}", _random_windowed(rng, 1, 2000, density)))
    sets.append(("squares-complement", squares_family((1, 2000), complement=True)))
    sets.append(("evens", WindowedSet.from_members(1, 2000, range(2, 2001, 2))))
    sets.append(("alternating-thick", alternating_thick((1, 2000), lambda k: k)))
    return sets


# -- items -------------------------------------------------------------------


def item_nuv_equivalence(seed: int) -> tuple[bool, str]:
    """Return sets agree with their shift-intersection decomposition: the
    two parts are contained everywhere and exact beyond |n| = |U| + |V|."""
    window = (-1990, 1990)
    pairs = mismatches = 0
    for _, p in _generated_p_sets(seed):
        shift = SpacingShift(p)
        words = shift.language_words(5)
        for u in words:
            for v in words:
                pairs += 1
                if not decomposition_agrees(shift, u, v, window):
                    mismatches += 1
    return mismatches == 0, f"p_sets=53 pairs={pairs} mismatches={mismatches}"


def item_return_identity(seed: int) -> tuple[bool, str]:
    """N([1], [1]) is exactly the two-sided distance set plus zero."""
    bad = 0
    one = Word("1")
    for _, p in _generated_p_sets(seed):
        shift = SpacingShift(p)
        rs = return_set(shift, one, one, (-2000, 2000))
        expected = p.symmetrized(include_zero=True)
        if not rs.same_members(expected):
            bad += 1
    return bad == 0, f"p_sets=53 mismatches={bad}"


def item_mixing_iff_cofinite(seed: int) -> tuple[bool, str]:
    """A tail-complete distance set passes cofinite evidence; an
    alternating-thick one fails every cofinite scale up to its largest
    completed gap block yet passes the nonempty detector."""
    checks = []
    tail = SpacingShift(WindowedSet.from_members(1, 2000, range(11, 2001)))
    rep = mixing_evidence(tail, Detector.parse("cofinite:n0=30"), 4)
    checks.append(rep.all_pass)

    alt = alternating_thick((1, 2000), lambda k: k)
    alt_shift = SpacingShift(alt)
    _, largest_gap = completed_block_lengths(alt)
    for n0 in sorted({1, largest_gap // 2, largest_gap}):
        rep = mixing_evidence(alt_shift, Detector.parse(f"cofinite:n0={n0}"), 4)
        checks.append(not rep.all_pass)
    rep = mixing_evidence(alt_shift, Detector.parse("nonempty"), 4)
    checks.append(rep.all_pass)
    ok = all(checks)
    return ok, f"checks={len(checks)} largest_gap_block={largest_gap}"


def item_squares_delta(seed: int) -> tuple[bool, str]:
    """Order-3 witness (1, 10, 26) inside the squares; no order-4 witness
    up to 100000."""
    small = squares_family((1, 10 ** 4))
    w3 = find_delta_subset(small, 3, 100)
    big = squares_family((1, 10 ** 5))
    w4 = find_delta_subset(big, 4, 10 ** 5)
    ok = w3 == (1, 10, 26) and w4 is None
    return ok, f"order3={w3} order4={'none' if w4 is None else w4}"


def item_progressive_gaps(seed: int) -> tuple[bool, str]:
    """Rapid-growth difference sets have progressive gaps; arithmetic
    difference-of-differences sets do not; staircase sums escape."""
    d6 = rapid_growth_differences(rapid_growth_sequence(6))
    found = has_progressive_gaps(d6)

    arithmetic = WindowedSet.from_members(0, 50, range(0, 51, 10))
    dd = difference_set(difference_set(arithmetic))
    refused = has_progressive_gaps(dd)

    report = ip_obstruction_check(rapid_growth_sequence(5), sample_cap=10 ** 6)
    ok = found is not None and refused is None and report.ok
    return ok, (f"chunks={len(found) if found else 0} "
                f"arithmetic=none obstruction_pairs={report.pairs_checked} "
                f"counterexamples={len(report.counterexamples)}")


def item_family_operator_laws(seed: int) -> tuple[bool, str]:
    """Thick-interior membership implies bullet membership; for filters the
    two coincide.  200 randomized families, zero violations tolerated."""
    rng = random.Random(seed + 6)
    lo, hi = 0, 2100
    full_bits = (1 << (hi - lo + 1)) - 1
    violations = 0
    filters_seen = 0
    samples = 0

    for case in range(200):
        style = case % 4
        if style == 0:
            gens = tuple(_random_windowed(rng, lo, hi, rng.uniform(0.3, 0.9))
                         for _ in range(rng.randint(1, 4)))
        elif style == 1:
            base = _random_windowed(rng, lo, hi, rng.uniform(0.5, 0.9))
            chain = [base]
            while len(chain) < rng.randint(2, 4):
                thinner = WindowedSet(lo, hi, chain[-1].bits & rng.getrandbits(hi - lo + 1))
                chain.append(thinner)
            gens = tuple(chain)
        elif style == 2:
            a = _random_windowed(rng, lo, hi, rng.uniform(0.5, 0.9))
            b = _random_windowed(rng, lo, hi, rng.uniform(0.5, 0.9))
            gens = (a, b, WindowedSet(lo, hi, a.bits & b.bits))
        else:
            gens = (_random_windowed(rng, lo, hi, rng.uniform(0.2, 0.8)),)
        family = GeneratedFamily(gens, shift_budget=3, arity_cap=3)
        is_f = family.is_filter()
        filters_seen += is_f

        probes = [
            _random_windowed(rng, lo, hi, rng.uniform(0.3, 0.95)),
            WindowedSet(lo, hi, full_bits),
        ]
        g = gens[rng.randrange(len(gens))]
        union_bits = 0
        for k in range(-3, 4):
            union_bits |= (g.bits << k) if k >= 0 else (g.bits >> -k)
        probes.append(WindowedSet(lo, hi, union_bits & full_bits))
        probes.append(WindowedSet(
            lo, hi, (union_bits | rng.getrandbits(hi - lo + 1)) & full_bits))
        noisy = union_bits & ~(1 << rng.randrange(hi - lo + 1))
        probes.append(WindowedSet(lo, hi, noisy & full_bits))

        for s in probes:
            samples += 1
            tau = family.tau_member(s)
            bullet = family.bullet_member(s)
            if tau and not bullet:
                violations += 1
            if is_f and tau != bullet:
                violations += 1
    return violations == 0, (f"families=200 filters={filters_seen} "
                             f"samples={samples} violations={violations}")


def item_windowed_dualities(seed: int) -> tuple[bool, str]:
    """Syndetic/thick and thickly-syndetic/piecewise-syndetic dualities are
    exact on 500 random sets."""
    rng = random.Random(seed + 7)
    violations = 0
    for _ in range(500):
        s = _random_windowed(rng, 0, 999, rng.uniform(0.02, 0.98))
        g = rng.randint(1, 25)
        run = rng.randint(1, 60)
        if is_syndetic_at(s, g) != (not is_thick_at(s.complement(), g)):
            violations += 1
        if is_thickly_syndetic_at(s, g, run) != (
                not is_piecewise_syndetic_at(s.complement(), g, run)):
            violations += 1
    return violations == 0, f"sets=500 violations={violations}"


def item_cover_complexity(seed: int) -> tuple[bool, str]:
    """On the full shift the depth-1 partition profile doubles each step and
    keeps growing strictly through n = 8."""
    full = SpacingShift(WindowedSet.full(1, 16))
    cover = auto_cover(full)
    prof5 = complexity_profile(full, cover, range(0, 8), 5, solver_cap=40)
    first = prof5.values == (2, 4, 8, 16, 32)
    prof8 = complexity_profile(full, cover, range(0, 8), 8, solver_cap=300)
    strict = all(a < b for a, b in zip(prof8.values, prof8.values[1:]))
    ok = first and strict and cover.nontrivial
    return ok, f"profile5={prof5.values} profile8={prof8.values}"


def item_block_embedding(seed: int) -> tuple[bool, str]:
    """Self-embedding always holds; parity patterns never embed in the
    evens; interval sources reduce the block test to thickness."""
    rng = random.Random(seed + 9)
    self_ok = 0
    for _ in range(100):
        f = _random_windowed(rng, 0, 400, rng.uniform(0.05, 0.95))
        self_ok += block_embeds(f, f, span_cap=20, count_cap=3)

    evens = WindowedSet.from_members(0, 200, range(0, 201, 2))
    pair = WindowedSet.from_members(0, 1, [0, 1])
    parity_false = not block_embeds(evens, pair, span_cap=5, count_cap=5)

    agree = 0
    for _ in range(50):
        f = _random_windowed(rng, 0, 300, rng.uniform(0.2, 0.9))
        run = rng.randint(2, 10)
        interval = WindowedSet.full(0, run - 1)
        agree += block_embeds(f, interval, span_cap=run - 1, count_cap=run) == \
            is_thick_at(f, run)
    ok = self_ok == 100 and parity_false and agree == 50
    return ok, f"self={self_ok}/100 parity_false={parity_false} interval_agreement={agree}/50"


def item_determinism(seed: int) -> tuple[bool, str]:
    """Re-running seeded items from fresh state reproduces their details
    byte for byte."""
    first = (item_return_identity(seed), item_windowed_dualities(seed),
             item_family_operator_laws(seed))
    second = (item_return_identity(seed), item_windowed_dualities(seed),
              item_family_operator_laws(seed))
    ok = first == second
    return ok, f"reruns=3 identical={ok}"


ITEMS = (
    ("nuv-decomposition-equivalence", item_nuv_equivalence),
    ("return-set-identity", item_return_identity),
    ("mixing-iff-cofinite-at-scale", item_mixing_iff_cofinite),
    ("squares-delta-structure", item_squares_delta),
    ("progressive-gaps", item_progressive_gaps),
    ("family-operator-laws", item_family_operator_laws),
    ("windowed-dualities", item_windowed_dualities),
    ("cover-complexity", item_cover_complexity),
    ("block-embedding", item_block_embedding),
    ("determinism", item_determinism),
)


def run_suite(seed: int = DEFAULT_SEED) -> SuiteResult:
    results = []
    for name, fn in ITEMS:
        start = time.perf_counter()
        passed, detail = fn(seed)
        results.append(ItemResult(name, passed, detail, time.perf_counter() - start))
    return SuiteResult(seed, tuple(results))
