"""Scale-parameterized detectors for the classical set families and the
shift/intersection operators on finitely generated hereditary-upward
families.

Every infinite-set notion is truncated to the window of its argument and
the verdict carries its scale: thickness at run length L, syndeticity at
gap bound g, piecewise syndeticity at (g, L), and so on.  Syndeticity
counts virtual boundary gaps (a phantom member just outside each window
edge), which makes the thick/syndetic duality an exact theorem on every
window rather than a statistical accident; `gap_statistics` still reports
boundary gaps separately from interior ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DisjointWindowsError, TooFewMembersError, WindowTooSmallError
from .intset import (
    DensityProfile,
    WindowedSet,
    density_profile,
    difference_set,
    run_start_mask,
)

# -- elementary detectors ---------------------------------------------------


def is_thick_at(s: WindowedSet, run_length: int) -> bool:
    """True iff S contains an interval of >= run_length consecutive members.

    A run length beyond the window size is simply absent, not an error, so
    the thick/syndetic duality stays total.
    """
    if run_length < 1:
        raise ValueError("run length must be >= 1")
    if run_length > s.size:
        return False
    return run_start_mask(s.bits, run_length) != 0


def is_syndetic_at(s: WindowedSet, gap_bound: int) -> bool:
    """True iff every gap of S is <= gap_bound, counting virtual edge gaps.

    A phantom member sits just outside each window edge, so the left edge
    gap is first - lo + 1 and the right edge gap hi - last + 1.  With this
    convention the complement has a run of gap_bound zeros exactly when
    some gap exceeds gap_bound, making the thick/syndetic duality exact.
    """
    if gap_bound < 1:
        raise ValueError("gap bound must be >= 1")
    if s.is_empty:
        return s.size <= gap_bound - 1
    prev = s.lo - 1
    for n in s.members():
        if n - prev > gap_bound:
            return False
        prev = n
    return (s.hi + 1) - prev <= gap_bound


def is_piecewise_syndetic_at(s: WindowedSet, gap_bound: int, run_length: int) -> bool:
    """True iff some interval I with |I| >= run_length meets S and S & I is
    syndetic at gap_bound relative to I.

    Scan of maximal chains of members with successive gaps <= gap_bound:
    a chain [f, l] admits the interval [f - gap_bound + 1, l + gap_bound - 1]
    clipped to the window, and no larger interval works for any sub-chain.
    """
    if gap_bound < 1 or run_length < 1:
        raise ValueError("scales must be >= 1")
    chain_first = None
    prev = None
    best = 0
    for n in s.members():
        if chain_first is None:
            chain_first = n
        elif n - prev > gap_bound:
            reach = min(s.hi, prev + gap_bound - 1) - max(s.lo, chain_first - gap_bound + 1) + 1
            best = max(best, reach)
            chain_first = n
        prev = n
    if chain_first is not None:
        reach = min(s.hi, prev + gap_bound - 1) - max(s.lo, chain_first - gap_bound + 1) + 1
        best = max(best, reach)
    return best >= run_length


def is_thickly_syndetic_at(s: WindowedSet, gap_bound: int, run_length: int) -> bool:
    """Windowed dual: the complement is not piecewise syndetic at (g, L)."""
    return not is_piecewise_syndetic_at(s.complement(), gap_bound, run_length)


def is_cofinite_at(s: WindowedSet, tail_bound: int) -> bool:
    """True iff S contains every window element n with |n| > tail_bound."""
    if tail_bound < 0:
        raise ValueError("tail bound must be >= 0")
    missing = s.complement()
    return all(-tail_bound <= n <= tail_bound for n in missing.members())


# -- witness searches ---------------------------------------------------------


def _value_mask(s: WindowedSet, bound: int) -> int:
    """Bit v-1 set iff v in S, for v in [1, bound]."""
    if s.lo >= 1:
        mask = s.bits << (s.lo - 1)
    else:
        mask = s.bits >> (1 - s.lo)
    return mask & ((1 << bound) - 1)


def find_delta_subset(s: WindowedSet, length: int, bound: int) -> tuple[int, ...] | None:
    """Lexicographically least 1 <= s_1 < ... < s_length <= bound with every
    pairwise difference a member of S, or None if no such sequence exists
    up to the bound.

    Memberships depend on differences only, so any witness translates down
    to one starting at 1; the DFS pins s_1 = 1 and stays exhaustive.  The
    candidate set for each level is the intersection of translated copies
    of S, maintained bit-parallel.
    """
    if length < 2:
        raise ValueError("need length >= 2")
    if bound > s.hi:
        raise ValueError(f"bound {bound} exceeds window hi {s.hi}")
    values = _value_mask(s, bound)

    def extend(chosen: list[int], allowed: int) -> tuple[int, ...] | None:
        if len(chosen) == length:
            witness = tuple(chosen)
            assert all(b - a in s for a, b in combinations(witness, 2))
            return witness
        rest = allowed >> chosen[-1]  # candidates strictly above the last choice
        offset = chosen[-1]
        while rest:
            low = rest & -rest
            c = offset + low.bit_length()
            found = extend(chosen + [c], allowed & (values << c))
            if found:
                return found
            rest ^= low
        return None

    return extend([1], (values << 1) & ((1 << bound) - 1))


def find_ip_subset(s: WindowedSet, arity: int, bound: int) -> tuple[int, ...] | None:
    """Lexicographically least nondecreasing generators (a_1, ..., a_arity)
    with every nonempty subset sum in S and total <= bound, or None.
    """
    if arity < 1:
        raise ValueError("need arity >= 1")
    values = _value_mask(s, bound)

    def extend(chosen: list[int], sums: list[int], allowed: int) -> tuple[int, ...] | None:
        if len(chosen) == arity:
            witness = tuple(chosen)
            total = 0
            all_sums = {0}
            for a in witness:
                all_sums |= {a + t for t in all_sums}
                total += a
            assert total <= bound and all(t in s for t in all_sums if t)
            return witness
        budget = bound - sum(chosen)
        floor = chosen[-1] if chosen else 1
        rest = allowed & (((1 << budget) - 1) if budget > 0 else 0)
        rest &= ~((1 << (floor - 1)) - 1)  # nondecreasing
        while rest:
            low = rest & -rest
            c = low.bit_length()
            new_allowed = allowed
            for t in sums + [0]:
                new_allowed &= values >> (t + c)  # future b must keep b + t + c in S
            found = extend(chosen + [c], sums + [c] + [c + t for t in sums],
                           new_allowed)
            if found:
                return found
            rest ^= low
        return None

    return extend([], [], values)


# -- progressive gaps ----------------------------------------------------------


def validate_progressive_decomposition(chunks: Sequence[Sequence[int]]) -> bool:
    """Check a chunk decomposition directly against the definition:
    consecutive chunks partition the members in order, within a chunk each
    gap exceeds the distance to the chunk's right end, and every gap is
    strictly smaller than every inter-chunk gap to its right (the finite
    surrogate for separators tending to infinity).
    """
    flat = [n for chunk in chunks for n in chunk]
    if flat != sorted(flat) or len(set(flat)) != len(flat):
        return False
    gaps: list[tuple[int, bool]] = []
    for ci, chunk in enumerate(chunks):
        if not chunk:
            return False
        right = chunk[-1]
        for a, b in zip(chunk, chunk[1:]):
            if not b - a > right - b:
                return False
            gaps.append((b - a, False))
        if ci + 1 < len(chunks):
            gaps.append((chunks[ci + 1][0] - chunk[-1], True))
    for i, (g, is_inter) in enumerate(gaps):
        if not is_inter:
            continue
        if any(earlier >= g for earlier, _ in gaps[:i]):
            return False
    return True


def has_progressive_gaps(s: WindowedSet) -> tuple[tuple[int, ...], ...] | None:
    """Greedy right-to-left chunk decomposition with backtracking.

    Returns chunks witnessing progressive gaps, or None when no
    decomposition exists.  Decompositions are not unique; the rightmost
    maximal one found first wins.
    """
    if s.member_count < 2:
        raise TooFewMembersError("progressive gaps need at least two members")
    a = s.to_list()
    dead: set[tuple[int, int | float]] = set()  # (j, bound) states known to fail

    def solve(j: int, bound: int | float) -> list[tuple[int, ...]] | None:
        if (j, bound) in dead:
            return None
        # choose chunk a[i..j]; prefer the longest admissible chunk
        right = a[j]
        i_min = j
        while i_min > 0:
            gap = a[i_min] - a[i_min - 1]
            if not (gap > right - a[i_min] and gap < bound):
                break
            i_min -= 1
        for i in range(i_min, j + 1):
            if i == 0:
                return [tuple(a[0:j + 1])]
            inter = a[i] - a[i - 1]
            if inter >= bound:
                continue
            rest = solve(i - 1, inter)
            if rest is not None:
                return rest + [tuple(a[i:j + 1])]
        dead.add((j, bound))
        return None

    result = solve(len(a) - 1, float("inf"))
    if result is None:
        return None
    decomposition = tuple(result)
    assert validate_progressive_decomposition(decomposition)
    return decomposition


# -- Bohr sets -------------------------------------------------------------------


def bohr_set(alpha, arc: tuple = (0, Fraction(1, 2)), window: tuple[int, int] = (0, 100)) -> WindowedSet:
    """The set {n in window : frac(n * alpha) in [arc_lo, arc_hi)}.

    alpha may be a Fraction, int, float, or decimal string; it is converted
    to an exact rational (a float contributes its exact binary value), so
    arc membership is always resolved exactly and no precision loss can
    occur.  Wrapping arcs are not supported.
    """
    rate = Fraction(alpha)
    arc_lo, arc_hi = Fraction(arc[0]), Fraction(arc[1])
    if not (0 <= arc_lo < arc_hi <= 1):
        raise ValueError("arc must satisfy 0 <= lo < hi <= 1")
    if arc_hi - arc_lo >= 1:
        raise ValueError("arc length must be < 1")
    lo, hi = window
    members = []
    phase = (lo * rate) % 1
    step = rate % 1
    for n in range(lo, hi + 1):
        if arc_lo <= phase < arc_hi:
            members.append(n)
        phase += step
        if phase >= 1:
            phase -= 1
    return WindowedSet.from_members(lo, hi, members)


# -- generated families -------------------------------------------------------


@dataclass(frozen=True)
class GeneratedFamily:
    """Hereditary-upward family presented by generators over one window.

    Membership is exact for generated families: S belongs iff some
    generator is contained in S.  The shift budget K bounds |k| in the
    shift operators; tuple arity for the thick-interior test is capped at
    arity_cap.  Shifted containments quantify positions over the K-shrunken
    window [lo + K, hi - K] while memberships reach into the full window.
    """

    generators: tuple[WindowedSet, ...]
    shift_budget: int = 3
    arity_cap: int = 3

    def __post_init__(self):
        if not self.generators:
            raise ValueError("need at least one generator")
        window = self.generators[0].window
        if any(g.window != window for g in self.generators):
            raise ValueError("generators must share one window")
        if self.shift_budget < 0 or self.arity_cap < 1:
            raise ValueError("invalid budget")

    @property
    def window(self) -> tuple[int, int]:
        return self.generators[0].window

    def _require_same_window(self, s: WindowedSet):
        if s.window != self.window:
            raise ValueError("set window must match the family window")

    def member(self, s: WindowedSet) -> bool:
        self._require_same_window(s)
        return any(g.bits & ~s.bits == 0 for g in self.generators)

    # interior machinery: masks are indexed over the shrunken window
    def _shrunken(self) -> tuple[int, int, int]:
        lo, hi = self.window
        k = self.shift_budget
        if hi - lo < 2 * k:
            raise WindowTooSmallError(f"window [{lo},{hi}] cannot absorb shift budget {k}")
        size = hi - lo + 1 - 2 * k
        return lo + k, size, (1 << size) - 1

    def _shifted_target(self, s: WindowedSet, k: int, full: int) -> int:
        # bit j of the result: s(lo + K + j + k)
        return (s.bits >> (self.shift_budget + k)) & full

    def bullet_member(self, s: WindowedSet) -> bool:
        """Member of the intersection of all shifts with |k| <= K."""
        self._require_same_window(s)
        _, _, full = self._shrunken()
        kk = self.shift_budget
        gen_masks = [(g.bits >> kk) & full for g in self.generators]
        for k in range(-kk, kk + 1):
            target = self._shifted_target(s, k, full)
            if not any(gm & ~target == 0 for gm in gen_masks):
                return False
        return True

    def tau_member(self, s: WindowedSet) -> bool:
        """Member of the largest thick family inside F, at budget (K, arity).

        Every intersection of <= arity_cap distinct shifts of S (shift
        offsets within the budget) must contain a generator.
        """
        self._require_same_window(s)
        _, _, full = self._shrunken()
        kk = self.shift_budget
        gen_masks = [(g.bits >> kk) & full for g in self.generators]
        targets = {k: self._shifted_target(s, k, full) for k in range(-kk, kk + 1)}
        offsets = sorted(targets)
        for n in range(1, self.arity_cap + 1):
            for combo in combinations(offsets, n):
                joint = full
                for k in combo:
                    joint &= targets[k]
                if not any(gm & ~joint == 0 for gm in gen_masks):
                    return False
        return True

    def plus(self) -> "GeneratedFamily":
        """The family generated by every shift g + k, |k| <= K, presented on
        the shrunken window."""
        lo, size, full = self._shrunken()
        kk = self.shift_budget
        seen: dict[int, None] = {}
        for g in self.generators:
            for k in range(-kk, kk + 1):
                seen.setdefault((g.bits >> (kk - k)) & full, None)
        gens = tuple(WindowedSet(lo, lo + size - 1, bits) for bits in seen)
        return GeneratedFamily(gens, self.shift_budget, self.arity_cap)

    def is_filter(self) -> bool:
        """True iff every pairwise generator intersection contains a
        generator; for generated families this is equivalent to membership
        being closed under finite intersections."""
        masks = [g.bits for g in self.generators]
        for a, b in combinations(masks, 2):
            joint = a & b
            if not any(m & ~joint == 0 for m in masks):
                return False
        return True


def family_plus(family: GeneratedFamily) -> GeneratedFamily:
    return family.plus()


def family_bullet_member(family: GeneratedFamily, s: WindowedSet) -> bool:
    return family.bullet_member(s)


def tau_member(family: GeneratedFamily, s: WindowedSet) -> bool:
    return family.tau_member(s)


def is_filter(family: GeneratedFamily) -> bool:
    return family.is_filter()


# -- block embedding -------------------------------------------------------------


def block_embeds(host: WindowedSet, source: WindowedSet,
                 span_cap: int, count_cap: int) -> bool:
    """True iff every finite W <= source with |W| <= count_cap and span <=
    span_cap admits a translate m + W inside host.

    Embedding is monotone under shrinking W, so only maximal patterns per
    anchor need scanning when a span slice fits under the count cap;
    otherwise all count_cap-subsets through the anchor are enumerated.
    Translate scans are bit-parallel ANDs of shifted host masks.
    """
    if span_cap < 0 or count_cap < 1:
        raise ValueError("caps must be positive")
    try:
        if source.is_subset_of(host):
            return True  # m = 0 embeds every W
    except DisjointWindowsError:
        pass
    members = source.to_list()
    host_bits = host.bits
    seen: set[tuple[int, ...]] = set()

    def embeds(diffs: tuple[int, ...]) -> bool:
        if diffs in seen:
            return True
        mask = host_bits
        for d in diffs:
            mask &= host_bits >> d
            if mask == 0:
                return False
        seen.add(diffs)
        return True

    for idx, anchor in enumerate(members):
        slice_members = []
        for n in members[idx:]:
            if n - anchor > span_cap:
                break
            slice_members.append(n)
        rest = slice_members[1:]
        if len(slice_members) <= count_cap:
            candidate_tails: Iterable[tuple[int, ...]] = [tuple(rest)]
        else:
            candidate_tails = combinations(rest, count_cap - 1)
        for tail in candidate_tails:
            diffs = tuple(n - anchor for n in tail)
            if not embeds(diffs):
                return False
    return True


# -- scales, detectors, classification reports ------------------------------------


@dataclass(frozen=True)
class ScaleParams:
    """Truncation scales carried by every classification verdict."""

    thick_run: int = 25
    syndetic_gap: int = 10
    ps_run: int = 200
    delta_order: int = 3
    ip_arity: int = 3
    search_bound: int = 100

    def __post_init__(self):
        values = (self.thick_run, self.syndetic_gap, self.ps_run,
                  self.delta_order, self.ip_arity, self.search_bound)
        if any(v < 1 for v in values):
            raise ValueError("all scales must be positive")

    def clamped_to(self, s: WindowedSet) -> "ScaleParams":
        return ScaleParams(
            thick_run=min(self.thick_run, s.size),
            syndetic_gap=self.syndetic_gap,
            ps_run=min(self.ps_run, s.size),
            delta_order=self.delta_order,
            ip_arity=self.ip_arity,
            search_bound=min(self.search_bound, s.hi) if s.hi >= 1 else self.search_bound,
        )


@dataclass(frozen=True)
class Detector:
    """A named scale-parameterized predicate on windowed sets."""

    kind: str
    params: tuple[tuple[str, int], ...] = ()

    _KINDS = {
        "thick": ("L",),
        "syndetic": ("g",),
        "ps": ("g", "L"),
        "ts": ("g", "L"),
        "cofinite": ("n0",),
        "nonempty": (),
    }

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown detector {self.kind!r}")
        expected = self._KINDS[self.kind]
        got = tuple(name for name, _ in self.params)
        if got != expected:
            raise ValueError(f"detector {self.kind} expects params {expected}, got {got}")

    @classmethod
    def parse(cls, text: str) -> "Detector":
        """Parse CLI syntax such as `thick:L=20`, `ps:g=2,L=50`, `nonempty`."""
        kind, _, rest = text.partition(":")
        params = []
        if rest:
            for piece in rest.split(","):
                name, _, value = piece.partition("=")
                try:
                    params.append((name.strip(), int(value)))
                except ValueError:
                    raise ValueError(f"malformed detector parameter {piece!r}") from None
        return cls(kind.strip(), tuple(params))

    def describe(self) -> str:
        if not self.params:
            return self.kind
        return self.kind + ":" + ",".join(f"{n}={v}" for n, v in self.params)

    def evaluate(self, s: WindowedSet) -> bool:
        p = dict(self.params)
        if self.kind == "thick":
            return is_thick_at(s, p["L"])
        if self.kind == "syndetic":
            return is_syndetic_at(s, p["g"])
        if self.kind == "ps":
            return is_piecewise_syndetic_at(s, p["g"], p["L"])
        if self.kind == "ts":
            return is_thickly_syndetic_at(s, p["g"], p["L"])
        if self.kind == "cofinite":
            return is_cofinite_at(s, p["n0"])
        return not s.is_empty

    def witness_of_failure(self, s: WindowedSet) -> int | None:
        """An element witnessing failure where one is natural (cofinite:
        the smallest-magnitude missing element beyond the tail bound)."""
        if self.kind != "cofinite":
            return None
        n0 = dict(self.params)["n0"]
        best = None
        for n in s.complement().members():
            if abs(n) > n0 and (best is None or abs(n) < abs(best)):
                best = n
        return best


@dataclass(frozen=True)
class ClassificationReport:
    """Machine-readable verdicts of all detectors on one set, with scales."""

    source: str
    window: tuple[int, int]
    member_count: int
    scales: ScaleParams
    thick: bool
    syndetic: bool
    piecewise_syndetic: bool
    thickly_syndetic: bool
    density: DensityProfile
    delta_witness: tuple[int, ...] | None
    ip_witness: tuple[int, ...] | None
    progressive_chunks: tuple[tuple[int, ...], ...] | None

    def to_text(self) -> str:
        s = self.scales
        lines = [
            "format = classification/1",
            f"source = {self.source}",
            f"window = {self.window[0]}..{self.window[1]}",
            f"members = {self.member_count}",
            f"thick.L = {s.thick_run}",
            f"thick.verdict = {_tf(self.thick)}",
            f"syndetic.g = {s.syndetic_gap}",
            f"syndetic.verdict = {_tf(self.syndetic)}",
            f"ps.g = {s.syndetic_gap}",
            f"ps.L = {s.ps_run}",
            f"ps.verdict = {_tf(self.piecewise_syndetic)}",
            f"ts.g = {s.syndetic_gap}",
            f"ts.L = {s.ps_run}",
            f"ts.verdict = {_tf(self.thickly_syndetic)}",
            "density.lengths = " + ",".join(map(str, self.density.window_lengths)),
            "density.max = " + ",".join(str(x) for x in self.density.max_density),
            "density.min = " + ",".join(str(x) for x in self.density.min_density),
            f"density.upper = {self.density.upper_estimate}",
            f"density.lower = {self.density.lower_estimate}",
            f"delta.order = {s.delta_order}",
            f"delta.bound = {s.search_bound}",
            "delta.witness = " + _seq(self.delta_witness),
            f"ip.arity = {s.ip_arity}",
            f"ip.bound = {s.search_bound}",
            "ip.witness = " + _seq(self.ip_witness),
            "progressive.verdict = " + _tf(self.progressive_chunks is not None),
            "progressive.chunks = " + (
                ";".join(_seq(c) for c in self.progressive_chunks)
                if self.progressive_chunks else "none"),
        ]
        return "\n".join(lines) + "\n"


def _tf(flag: bool) -> str:
    return "true" if flag else "false"


def _seq(values) -> str:
    return ",".join(map(str, values)) if values else "none"


def classify(s: WindowedSet, scales: ScaleParams | None = None,
             source: str = "-") -> ClassificationReport:
    """Run the full detector battery on one set at the given scales."""
    scales = (scales or ScaleParams()).clamped_to(s)
    lengths = sorted({min(s.size, w) for w in (10, 100, 1000)})
    try:
        chunks = has_progressive_gaps(s)
    except TooFewMembersError:
        chunks = None
    searchable = s.hi >= 1  # witness searches live on the positive side
    return ClassificationReport(
        source=source,
        window=s.window,
        member_count=s.member_count,
        scales=scales,
        thick=is_thick_at(s, scales.thick_run),
        syndetic=is_syndetic_at(s, scales.syndetic_gap),
        piecewise_syndetic=is_piecewise_syndetic_at(s, scales.syndetic_gap, scales.ps_run),
        thickly_syndetic=is_thickly_syndetic_at(s, scales.syndetic_gap, scales.ps_run),
        density=density_profile(s, lengths),
        delta_witness=find_delta_subset(s, scales.delta_order, scales.search_bound)
        if searchable else None,
        ip_witness=find_ip_subset(s, scales.ip_arity, scales.search_bound)
        if searchable else None,
        progressive_chunks=chunks,
    )
