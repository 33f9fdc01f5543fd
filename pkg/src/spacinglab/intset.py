"""Finite-window integer sets with exact, bit-parallel arithmetic.

A :class:`WindowedSet` is an immutable subset of the integer interval
``[lo, hi]`` stored as a single Python integer whose bit ``i`` records
membership of ``lo + i``.  All heavy scans (runs, translates, joint
intersections of many shifts) then reduce to big-integer bit operations,
which is what keeps the detectors and the spacing-shift oracle fast.

Densities are exact rationals throughout; no floating point enters any
verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

from .errors import (
    ArityCapError,
    DisjointWindowsError,
    EmptySetError,
    SetFileParseError,
    WindowLengthError,
)

DEFAULT_ARITY_CAP = 20


def _bit_indices(bits: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _reverse_bits(bits: int, width: int) -> int:
    if width <= 0:
        return 0
    return int(format(bits, f"0{width}b")[::-1], 2)


def run_start_mask(bits: int, length: int) -> int:
    """Mask of positions that start a run of >= length consecutive set bits.

    Uses the doubling identity runs(a+b) = runs(a) & (runs(b) >> a), so the
    cost is O(log length) big-integer operations.
    """
    if length <= 0:
        raise ValueError("run length must be positive")
    mask = bits
    covered = 1
    while covered < length and mask:
        step = min(covered, length - covered)
        mask &= mask >> step
        covered += step
    return mask


def longest_run(bits: int) -> int:
    """Length of the longest run of consecutive set bits."""
    run = 0
    while bits:
        bits &= bits >> 1
        run += 1
    return run


@dataclass(frozen=True)
class WindowedSet:
    """A subset of the integer window [lo, hi].

    ``bits`` holds the dense membership array: bit ``i`` is set iff
    ``lo + i`` belongs to the set.  Instances are immutable; every
    operation returns a new value and documents its output window.
    The ``symmetric`` flag asserts n in S <=> -n in S wherever both
    lie inside the window (used for spacing-shift distance sets that
    are stored one-sided and reflected on demand).
    """

    lo: int
    hi: int
    bits: int = 0
    symmetric: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")
        if self.bits < 0 or self.bits >> self.size:
            raise ValueError("membership bits outside window")
        if self.symmetric:
            m = min(-self.lo, self.hi)
            if m >= 0:
                span = 2 * m + 1
                chunk = (self.bits >> (-m - self.lo)) & ((1 << span) - 1)
                if chunk != _reverse_bits(chunk, span):
                    raise ValueError("symmetric flag set but window content is not symmetric")

    # -- construction ---------------------------------------------------

    @classmethod
    def from_members(cls, lo: int, hi: int, members: Iterable[int],
                     symmetric: bool = False) -> "WindowedSet":
        bits = 0
        for n in members:
            if not lo <= n <= hi:
                raise ValueError(f"member {n} outside window [{lo}, {hi}]")
            bits |= 1 << (n - lo)
        return cls(lo, hi, bits, symmetric)

    @classmethod
    def empty(cls, lo: int, hi: int) -> "WindowedSet":
        return cls(lo, hi, 0)

    @classmethod
    def full(cls, lo: int, hi: int) -> "WindowedSet":
        return cls(lo, hi, (1 << (hi - lo + 1)) - 1)

    # -- basic queries ---------------------------------------------------

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    @property
    def window(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi and (self.bits >> (n - self.lo)) & 1 == 1

    def members(self) -> Iterator[int]:
        lo = self.lo
        return (lo + i for i in _bit_indices(self.bits))

    def to_list(self) -> list[int]:
        return list(self.members())

    @property
    def member_count(self) -> int:
        return self.bits.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    def first(self) -> int:
        if self.is_empty:
            raise EmptySetError("empty set has no first member")
        return self.lo + ((self.bits & -self.bits).bit_length() - 1)

    def last(self) -> int:
        if self.is_empty:
            raise EmptySetError("empty set has no last member")
        return self.lo + self.bits.bit_length() - 1

    def longest_run(self) -> int:
        return longest_run(self.bits)

    def same_members(self, other: "WindowedSet") -> bool:
        return self.window == other.window and self.bits == other.bits

    # -- arithmetic ------------------------------------------------------

    def shift(self, k: int) -> "WindowedSet":
        """Translate by k; output window is [lo + k, hi + k]."""
        return WindowedSet(self.lo + k, self.hi + k, self.bits)

    def complement(self) -> "WindowedSet":
        return WindowedSet(self.lo, self.hi, self.bits ^ ((1 << self.size) - 1))

    def _common_window(self, other: "WindowedSet") -> tuple[int, int]:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise DisjointWindowsError(
                f"windows [{self.lo},{self.hi}] and [{other.lo},{other.hi}] do not overlap")
        return lo, hi

    def _restricted_bits(self, lo: int, hi: int) -> int:
        return (self.bits >> (lo - self.lo)) & ((1 << (hi - lo + 1)) - 1)

    def restrict(self, lo: int, hi: int) -> "WindowedSet":
        """Restriction to [lo, hi], which must lie inside the window."""
        if lo < self.lo or hi > self.hi:
            raise ValueError("restriction exceeds window")
        return WindowedSet(lo, hi, self._restricted_bits(lo, hi))

    def intersect(self, other: "WindowedSet") -> "WindowedSet":
        lo, hi = self._common_window(other)
        return WindowedSet(lo, hi, self._restricted_bits(lo, hi) & other._restricted_bits(lo, hi))

    def union(self, other: "WindowedSet") -> "WindowedSet":
        lo, hi = self._common_window(other)
        return WindowedSet(lo, hi, self._restricted_bits(lo, hi) | other._restricted_bits(lo, hi))

    def is_subset_of(self, other: "WindowedSet") -> bool:
        """Containment on the common window (binary ops restrict there)."""
        lo, hi = self._common_window(other)
        return self._restricted_bits(lo, hi) & ~other._restricted_bits(lo, hi) == 0

    def reflected(self) -> "WindowedSet":
        """The mirror set {-n : n in S} on window [-hi, -lo]."""
        return WindowedSet(-self.hi, -self.lo, _reverse_bits(self.bits, self.size))

    def symmetrized(self, include_zero: bool = False) -> "WindowedSet":
        """S union -S on the symmetric hull window [-m, m], m = max(|lo|, |hi|)."""
        m = max(abs(self.lo), abs(self.hi))
        out = 0
        for n in self.members():
            out |= 1 << (n + m)
            out |= 1 << (-n + m)
        if include_zero:
            out |= 1 << m
        return WindowedSet(-m, m, out, symmetric=True)


def boolean(op: str, s: WindowedSet, t: WindowedSet | None = None):
    """Dispatch form of the set algebra: complement/intersect/union/subset_of."""
    if op == "complement":
        return s.complement()
    if t is None:
        raise ValueError(f"operation {op!r} needs a second operand")
    if op == "intersect":
        return s.intersect(t)
    if op == "union":
        return s.union(t)
    if op == "subset_of":
        return s.is_subset_of(t)
    raise ValueError(f"unknown boolean op {op!r}")


# -- difference sets and finite sums --------------------------------------


def difference_set(s: WindowedSet) -> WindowedSet:
    """All positive pairwise differences {a - b : a, b in S, a > b}.

    Output window is [1, hi - lo] (clamped to [1, 1] for a single-point
    window, where the result is necessarily empty).
    """
    if s.is_empty:
        raise EmptySetError("difference set of an empty set")
    span = s.hi - s.lo
    out = 0
    for i in _bit_indices(s.bits):
        out |= s.bits >> (i + 1)
    return WindowedSet(1, max(span, 1), out)


def finite_sums(values: Sequence[int], arity_cap: int = DEFAULT_ARITY_CAP) -> WindowedSet:
    """The set FS(values) of sums over nonempty subsets of the generators.

    Generators must be positive; output window is [min, sum].
    """
    if not values:
        raise EmptySetError("no generators")
    if any(v < 1 for v in values):
        raise ValueError("generators must be positive integers")
    if len(values) > arity_cap:
        raise ArityCapError(f"{len(values)} generators exceed cap {arity_cap}")
    sums: set[int] = set()
    for v in values:
        sums |= {v} | {v + s for s in sums}
    return WindowedSet.from_members(min(values), sum(values), sums)


# -- gap statistics and density profiles ----------------------------------


@dataclass(frozen=True)
class GapStatistics:
    """Interior gap data plus separately reported boundary gaps.

    Interior gaps are differences of consecutive members (consecutive
    integers have gap 1).  Boundary gaps measure the distance from a
    virtual member just outside each window edge, so a set whose first
    member sits at ``lo`` has left boundary gap 1.  The empty set reports
    max_gap equal to the window size and longest_run 0.
    """

    max_gap: int
    longest_run: int
    gaps: tuple[int, ...]
    left_boundary_gap: int | None
    right_boundary_gap: int | None


def gap_statistics(s: WindowedSet) -> GapStatistics:
    if s.is_empty:
        return GapStatistics(s.size, 0, (), None, None)
    gaps = []
    prev = None
    for n in s.members():
        if prev is not None:
            gaps.append(n - prev)
        prev = n
    return GapStatistics(
        max_gap=max(gaps) if gaps else 0,
        longest_run=s.longest_run(),
        gaps=tuple(sorted(gaps)),
        left_boundary_gap=s.first() - s.lo + 1,
        right_boundary_gap=s.hi - s.last() + 1,
    )


@dataclass(frozen=True)
class DensityProfile:
    """Exact sliding-window density extremes, one entry per window length.

    upper_estimate / lower_estimate are the extremes at the largest
    length; no limit claim is made beyond the window.
    """

    window_lengths: tuple[int, ...]
    max_density: tuple[Fraction, ...]
    min_density: tuple[Fraction, ...]
    upper_estimate: Fraction
    lower_estimate: Fraction


def density_profile(s: WindowedSet, lengths: Sequence[int]) -> DensityProfile:
    if not lengths:
        raise ValueError("no window lengths supplied")
    for w in lengths:
        if not 1 <= w <= s.size:
            raise WindowLengthError(f"length {w} outside [1, {s.size}]")
    indicator = [int(c) for c in format(s.bits, f"0{s.size}b")[::-1]]
    prefix = [0, *accumulate(indicator)]
    maxes, mins = [], []
    for w in lengths:
        counts = [prefix[x + w] - prefix[x] for x in range(s.size - w + 1)]
        maxes.append(Fraction(max(counts), w))
        mins.append(Fraction(min(counts), w))
    return DensityProfile(
        window_lengths=tuple(lengths),
        max_density=tuple(maxes),
        min_density=tuple(mins),
        upper_estimate=maxes[lengths.index(max(lengths))],
        lower_estimate=mins[lengths.index(max(lengths))],
    )


# -- set file format -------------------------------------------------------
#
# Text format: a mandatory header line `window lo hi`, then one entry per
# line: a single integer or an inclusive range `a..b`.  Full-line comments
# start with `#`; blank lines and duplicate members are ignored; order is
# irrelevant.  The canonical serializer emits sorted maximal ranges.


def parse_set_text(text: str) -> WindowedSet:
    window: tuple[int, int] | None = None
    bits = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if window is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "window":
                raise SetFileParseError(line_no, "expected header `window lo hi`")
            try:
                lo, hi = int(parts[1]), int(parts[2])
            except ValueError:
                raise SetFileParseError(line_no, "window bounds must be integers") from None
            if lo > hi:
                raise SetFileParseError(line_no, f"empty window [{lo}, {hi}]")
            window = (lo, hi)
            continue
        lo, hi = window
        if ".." in line:
            a_text, _, b_text = line.partition("..")
            try:
                a, b = int(a_text), int(b_text)
            except ValueError:
                raise SetFileParseError(line_no, f"malformed range {line!r}") from None
            if a > b:
                raise SetFileParseError(line_no, f"descending range {line!r}")
        else:
            try:
                a = b = int(line)
            except ValueError:
                raise SetFileParseError(line_no, f"malformed entry {line!r}") from None
        if a < lo or b > hi:
            raise SetFileParseError(line_no, f"entry {line!r} outside window [{lo}, {hi}]")
        bits |= ((1 << (b - a + 1)) - 1) << (a - lo)
    if window is None:
        raise SetFileParseError(0, "missing `window lo hi` header")
    return WindowedSet(window[0], window[1], bits)


def format_set_text(s: WindowedSet) -> str:
    lines = [f"window {s.lo} {s.hi}"]
    start = prev = None
    for n in s.members():
        if start is None:
            start = prev = n
        elif n == prev + 1:
            prev = n
        else:
            lines.append(f"{start}" if start == prev else f"{start}..{prev}")
            start = prev = n
    if start is not None:
        lines.append(f"{start}" if start == prev else f"{start}..{prev}")
    return "\n".join(lines) + "\n"
