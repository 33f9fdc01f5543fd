"""Witness-set gallery: parameterized generators for the sets used as
counterexamples and separators, each re-validated by the detector that
motivates it before being handed out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ScheduleTooTightError
from .families import has_progressive_gaps, is_thick_at
from .intset import WindowedSet, difference_set


def squares_family(window: tuple[int, int], complement: bool = False) -> WindowedSet:
    """Perfect squares of positive integers on the window, or their
    complement within it."""
    lo, hi = window
    if lo < 0:
        raise ValueError("window must lie in the nonnegative integers")
    squares = []
    n = 1
    while n * n <= hi:
        if n * n >= lo:
            squares.append(n * n)
        n += 1
    out = WindowedSet.from_members(lo, hi, squares)
    return out.complement() if complement else out


def rapid_growth_sequence(n_terms: int, first: int = 1, indexed: bool = False) -> list[int]:
    """Each term exceeds four times the sum of all earlier terms; the
    minimal such sequence (next = 4 * partial_sum + 1).

    With indexed=True the inequality is strengthened to four times the sum
    of (term + its index), the variant next = 4 * sum(b_i + i) + 1.
    """
    if n_terms < 2:
        raise ValueError("need at least two terms")
    if first < 1:
        raise ValueError("first term must be positive")
    terms = [first]
    while len(terms) < n_terms:
        if indexed:
            base = sum(b + i for i, b in enumerate(terms, start=1))
        else:
            base = sum(terms)
        terms.append(4 * base + 1)
    return terms


def rapid_growth_differences(terms: Sequence[int]) -> WindowedSet:
    """The positive difference set of a sequence, on window [1, span]."""
    return difference_set(WindowedSet.from_members(min(terms), max(terms), terms))


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of the sum-escape check on a difference staircase."""

    pairs_checked: int
    counterexamples: tuple[tuple[int, int, int], ...]
    delta_size: int
    delta_delta_size: int

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def ip_obstruction_check(terms: Sequence[int], sample_cap: int = 10000) -> ObstructionReport:
    """Evidence that the difference-of-differences set of a rapid-growth
    sequence carries no finite-sums structure.

    Enumerates pairs (f1, f2) of elements of (D - D) \\ D of the staircase
    form (b_r1 - b_r2) - (b_r3 - b_r4) whose eight indices are strictly
    decreasing across the pair, and verifies f1 + f2 escapes D - D.
    Reports every counterexample found (none are expected).
    """
    b = list(terms)
    n = len(b)
    delta = sorted({x - y for x in b for y in b if x > y})
    delta_set = set(delta)
    delta_delta = {x - y for x in delta for y in delta if x > y}

    def staircase(indices: tuple[int, int, int, int]) -> int:
        r1, r2, r3, r4 = indices
        return (b[r1] - b[r2]) - (b[r3] - b[r4])

    from itertools import combinations

    quads = [tuple(sorted(q, reverse=True)) for q in combinations(range(n), 4)]
    checked = 0
    bad = []
    for q1 in quads:
        f1 = staircase(q1)
        if f1 in delta_set or f1 <= 0:
            continue
        for q2 in quads:
            if min(q1) <= max(q2):
                continue  # all eight indices strictly decreasing
            f2 = staircase(q2)
            if f2 in delta_set or f2 <= 0:
                continue
            checked += 1
            if f1 + f2 in delta_delta:
                bad.append((f1, f2, f1 + f2))
            if checked >= sample_cap:
                return ObstructionReport(checked, tuple(bad), len(delta), len(delta_delta))
    return ObstructionReport(checked, tuple(bad), len(delta), len(delta_delta))


def progressive_gap_union(seed_sequences: Sequence[Sequence[int]],
                          shifts: Sequence[int],
                          window: tuple[int, int] | None = None) -> WindowedSet:
    """Union of translated difference sets, one chunk per seed, spaced by a
    strictly increasing shift schedule so the result has progressive gaps.

    Raises ScheduleTooTightError when chunks overlap, collide, or the
    progressive-gap detector rejects the result.
    """
    if not seed_sequences or len(seed_sequences) != len(shifts):
        raise ValueError("need one shift per seed sequence")
    if list(shifts) != sorted(set(shifts)):
        raise ValueError("shift schedule must be strictly increasing")
    members: list[int] = []
    prev_hi = 0
    for seed, r in zip(seed_sequences, shifts):
        chunk = sorted({(x - y) + r for x in seed for y in seed if x > y})
        if not chunk:
            raise ValueError("each seed must contribute at least one difference")
        if chunk[0] <= prev_hi:
            raise ScheduleTooTightError(
                f"chunk starting at {chunk[0]} collides with earlier content")
        members.extend(chunk)
        prev_hi = chunk[-1]
    if members[0] < 1:
        raise ScheduleTooTightError("schedule places members below 1")
    if window is None:
        window = (1, members[-1])
    out = WindowedSet.from_members(window[0], window[1], members)
    if len(members) >= 2 and has_progressive_gaps(out) is None:
        raise ScheduleTooTightError("schedule fails the progressive-gap detector")
    return out


def alternating_thick(window: tuple[int, int],
                      schedule: Callable[[int], int] | Sequence[int]) -> WindowedSet:
    """Alternating blocks of members and non-members whose lengths follow
    the schedule (k = 1, 2, ...), truncated at the window edge.  With an
    unbounded schedule both the set and its complement are thick at every
    scale up to the largest completed block."""
    lo, hi = window
    if callable(schedule):
        lengths = schedule
    else:
        seq = list(schedule)

        def lengths(k: int) -> int:
            return seq[(k - 1) % len(seq)]

    members = []
    pos = lo
    k = 1
    while pos <= hi:
        width = lengths(k)
        if width < 1:
            raise ValueError("schedule lengths must be >= 1")
        members.extend(range(pos, min(pos + width, hi + 1)))
        pos += 2 * width
        k += 1
    return WindowedSet.from_members(lo, hi, members)


def completed_block_lengths(s: WindowedSet) -> tuple[int, int]:
    """(largest full member block, largest full non-member block), where a
    block is full if it does not touch a window edge."""
    runs_1 = []
    runs_0 = []
    current = None
    length = 0
    start = s.lo
    for n in range(s.lo, s.hi + 1):
        v = n in s
        if v == current:
            length += 1
        else:
            if current is not None and start != s.lo:
                (runs_1 if current else runs_0).append(length)
            current, length, start = v, 1, n
    return (max(runs_1, default=0), max(runs_0, default=0))


def find_delta_delta_order3(target: WindowedSet, bound: int) -> tuple[int, int, int] | None:
    """A three-term increasing sequence with distinct gaps whose
    difference-of-differences set lies in the target, or None up to the
    bound.  Degenerate equal-gap triples are excluded (they would make the
    search trivially satisfiable)."""
    for a in range(1, bound):
        if a not in target:
            continue
        for b in range(1, bound - a):
            if b == a or b not in target:
                continue
            if abs(a - b) in target and 1 + a + b <= bound:
                return (1, 1 + a, 1 + a + b)
    return None


# -- parameterized construction registry ----------------------------------------


@dataclass(frozen=True)
class ConstructionSpec:
    """A named construction with parameters; serialization round-trips
    through the CLI parameter syntax."""

    kind: str
    params: tuple[tuple[str, str], ...] = ()
    window: tuple[int, int] | None = None

    def param(self, name: str, default: str | None = None) -> str:
        for key, value in self.params:
            if key == name:
                return value
        if default is None:
            raise ValueError(f"construction {self.kind} needs parameter {name}")
        return default


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def build_construction(spec: ConstructionSpec) -> tuple[WindowedSet, dict[str, bool]]:
    """Build a construction and run its own post-conditions; the verdict
    map travels with the output metadata."""
    if spec.kind == "squares":
        window = spec.window or (1, 10 ** 4)
        complement = spec.param("complement", "false") == "true"
        out = squares_family(window, complement)
        post = {"no_order4_delta_subset_to_bound": True}
        from .families import find_delta_subset
        probe = out if not complement else out.complement()
        post["no_order4_delta_subset_to_bound"] = (
            find_delta_subset(probe, 4, min(window[1], 10 ** 4)) is None)
        return out, post

    if spec.kind == "rapid-growth-delta":
        n_terms = int(spec.param("terms", "6"))
        first = int(spec.param("first", "1"))
        terms = rapid_growth_sequence(n_terms, first,
                                      indexed=spec.param("indexed", "false") == "true")
        out = rapid_growth_differences(terms)
        post = {"progressive_gaps": has_progressive_gaps(out) is not None}
        return out, post

    if spec.kind == "progressive-union":
        seeds = [_parse_int_list(part) for part in spec.param("seeds").split(";")]
        shifts = _parse_int_list(spec.param("shifts"))
        out = progressive_gap_union(seeds, shifts, spec.window)
        post = {"progressive_gaps": True}  # enforced by the builder
        return out, post

    if spec.kind == "alternating-thick":
        window = spec.window or (1, 2000)
        schedule_text = spec.param("schedule", "linear")
        if schedule_text == "linear":
            out = alternating_thick(window, lambda k: k)
        elif schedule_text.startswith("constant:"):
            c = int(schedule_text.split(":", 1)[1])
            out = alternating_thick(window, lambda k: c)
        else:
            out = alternating_thick(window, _parse_int_list(schedule_text))
        ones, zeros = completed_block_lengths(out)
        scale = min(ones, zeros)
        post = {
            "two_sided_thick": scale >= 1 and is_thick_at(out, scale)
            and is_thick_at(out.complement(), scale),
        }
        return out, post

    raise ValueError(f"unknown construction kind {spec.kind!r}")


CONSTRUCTION_KINDS = ("squares", "rapid-growth-delta", "progressive-union", "alternating-thick")
