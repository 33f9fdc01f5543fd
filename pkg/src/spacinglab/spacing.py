"""Spacing-shift engine: language queries, return-time sets, their
shift-intersection decomposition, and mixing/transitivity evidence.

A spacing shift is determined by a one-sided distance set stored on
window [1, N]; the implied two-sided set is its reflection union.  A
binary word lies in the language iff all pairwise distances between its
1-positions belong to the distance set.  Return-time sets are computed
by merged-pattern semantics: n belongs to N(U, V) iff placing V at its
base and U at base + n yields symbol-consistent overlap and a legal set
of 1-positions.  Words without any 1 are unconstrained cylinders and
short-circuit to the whole window.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BudgetExceededError,
    WindowExceededError,
    WordNotInLanguageError,
)
from .families import Detector
from .intset import WindowedSet, _reverse_bits

DEFAULT_WORD_LEN_CAP = 12


@dataclass(frozen=True)
class Word:
    """A finite binary word placed at an integer base position."""

    symbols: str
    base: int = 0

    def __post_init__(self):
        if not self.symbols or set(self.symbols) - {"0", "1"}:
            raise ValueError(f"word must be a nonempty binary string, got {self.symbols!r}")

    def __len__(self) -> int:
        return len(self.symbols)

    def ones(self) -> tuple[int, ...]:
        """Absolute positions of the 1 symbols."""
        return tuple(self.base + i for i, ch in enumerate(self.symbols) if ch == "1")

    def describe(self) -> str:
        return self.symbols if self.base == 0 else f"{self.symbols}@{self.base}"


class SpacingShift:
    """The subshift induced by a one-sided distance set on window [1, N]."""

    def __init__(self, p_plus: WindowedSet):
        if p_plus.lo != 1:
            raise ValueError("distance set must live on a window [1, N]")
        self.p_plus = p_plus
        self.n_max = p_plus.hi
        self._reversed_bits = _reverse_bits(p_plus.bits, p_plus.size)

    def __repr__(self):
        return f"SpacingShift(N={self.n_max}, distances={self.p_plus.member_count})"

    def distance_allowed(self, d: int) -> bool:
        """Whether two 1s may sit at (signed) distance d."""
        if d == 0:
            return True
        d = abs(d)
        if d > self.n_max:
            raise WindowExceededError(f"distance {d} exceeds stored window {self.n_max}")
        return d in self.p_plus

    def allowed_mask(self, radius: int, include_zero: bool = True) -> int:
        """Mask over d in [-radius, radius] (bit d + radius) of legal distances."""
        n = self.n_max
        positive = self.p_plus.bits << (radius + 1)
        shift = radius - n
        negative = self._reversed_bits << shift if shift >= 0 else self._reversed_bits >> -shift
        mask = positive | negative
        if include_zero:
            mask |= 1 << radius
        return mask & ((1 << (2 * radius + 1)) - 1)

    def word_in_language(self, word: Word) -> bool:
        ones = word.ones()
        for i, a in enumerate(ones):
            for b in ones[i + 1:]:
                if b - a > self.n_max:
                    raise WindowExceededError(
                        f"distance {b - a} exceeds stored window {self.n_max}")
                if b - a not in self.p_plus:
                    return False
        return True

    def language_words(self, max_len: int,
                       word_len_cap: int = DEFAULT_WORD_LEN_CAP) -> list[Word]:
        """All language words of length 1..max_len, by length then lexicographic.

        Includes the all-zero words; every word is based at 0.  Enumeration
        is a DFS that prunes on the partial distance set.
        """
        if max_len > word_len_cap:
            raise BudgetExceededError(
                f"word length {max_len} exceeds cap {word_len_cap}")
        if max_len - 1 > self.n_max:
            raise WindowExceededError("words longer than the stored distance window")
        words: list[Word] = []

        def grow(prefix: list[str], ones: list[int], target: int):
            if len(prefix) == target:
                words.append(Word("".join(prefix)))
                return
            i = len(prefix)
            prefix.append("0")
            grow(prefix, ones, target)
            prefix.pop()
            if all(i - j in self.p_plus for j in ones):
                prefix.append("1")
                ones.append(i)
                grow(prefix, ones, target)
                ones.pop()
                prefix.pop()

        for target in range(1, max_len + 1):
            grow([], [], target)
        return words


def return_set(shift: SpacingShift, u: Word, v: Word,
               window: tuple[int, int]) -> WindowedSet:
    """The return-time set N(U, V) on the given window of translates.

    n belongs iff the merged pattern (V at its base, U at base + n) has
    consistent overlap and all pairwise 1-distances legal.  If either word
    carries no 1 the result is the whole window, matching the convention
    used by the decomposition.  A word outside the language yields the
    empty set.
    """
    wlo, whi = window
    if wlo > whi:
        raise ValueError("empty window")
    full = (1 << (whi - wlo + 1)) - 1
    ones_u, ones_v = u.ones(), v.ones()
    if not ones_u or not ones_v:
        return WindowedSet(wlo, whi, full)
    if not shift.word_in_language(u) or not shift.word_in_language(v):
        return WindowedSet(wlo, whi, 0)

    radius = max(
        abs(whi) + max(ones_u) - min(ones_v),
        abs(wlo) + max(ones_v) - min(ones_u),
        1,
    )
    if radius > shift.n_max:
        raise WindowExceededError(
            f"window needs distances up to {radius} > stored {shift.n_max}")
    allowed = shift.allowed_mask(radius)
    bits = full
    for a in ones_u:
        for b in ones_v:
            bits &= allowed >> (wlo + (a - b) + radius)
            if not bits:
                return WindowedSet(wlo, whi, 0)
    bits &= full

    # overlap consistency: exact-symbol constraints exclude conflicting n
    first = v.base - (u.base + len(u)) + 1
    last = v.base + len(v) - 1 - u.base
    for n in range(max(first, wlo), min(last, whi) + 1):
        if not (bits >> (n - wlo)) & 1:
            continue
        lo = max(v.base, u.base + n)
        hi = min(v.base + len(v), u.base + n + len(u))
        for pos in range(lo, hi):
            if v.symbols[pos - v.base] != u.symbols[pos - u.base - n]:
                bits &= ~(1 << (n - wlo))
                break
    return WindowedSet(wlo, whi, bits)


@dataclass(frozen=True)
class NuvDecomposition:
    """Shift-intersection form of a return-time set.

    positive_part equals the return set exactly on [len(V), hi]; the
    mirror negative_part on [lo, -len(U)].  Outside those zones at most
    finite_bound = |U| + |V| translates remain unclassified.  shifts lists
    the offsets k with N(U, V) ⊇ ∩ (P - k) away from the overlap zone.
    When unconstrained is set (a word without 1s) the return set is the
    whole window.
    """

    positive_part: WindowedSet
    negative_part: WindowedSet
    finite_bound: int
    shifts: tuple[int, ...]
    unconstrained: bool = False

    def union_mask(self) -> WindowedSet:
        return self.positive_part.union(self.negative_part)

    def exceptional_part(self, oracle: WindowedSet) -> WindowedSet:
        """Return-set members not classified by either part.

        Always confined to the open overlap zone, so its cardinality never
        exceeds finite_bound; the decomposition pins nothing else about it.
        """
        union = self.union_mask()
        if union.window != oracle.window:
            raise ValueError("oracle window must match the decomposition window")
        return WindowedSet(oracle.lo, oracle.hi, oracle.bits & ~union.bits)


def nuv_decomposition(shift: SpacingShift, u: Word, v: Word,
                      window: tuple[int, int] | None = None,
                      verify: bool = True) -> NuvDecomposition:
    """Decompose N(U, V) into intersections of translated distance sets.

    Words must be based at 0.  With verify on, the computed parts are
    checked against the merged-pattern return set on their zones.
    """
    if u.base != 0 or v.base != 0:
        raise ValueError("decomposition expects words based at 0")
    if window is None:
        m = shift.n_max - len(u) - len(v)
        if m < 1:
            raise WindowExceededError("stored window too small for these words")
        window = (-m, m)
    wlo, whi = window
    size = whi - wlo + 1
    full = (1 << size) - 1
    c_bound = len(u) + len(v)

    def zone_mask(lo: int, hi: int) -> int:
        lo, hi = max(lo, wlo), min(hi, whi)
        if lo > hi:
            return 0
        return ((1 << (hi - lo + 1)) - 1) << (lo - wlo)

    pos_zone = zone_mask(len(v), whi)
    neg_zone = zone_mask(wlo, -len(u))

    ones_u, ones_v = u.ones(), v.ones()
    if not ones_u or not ones_v:
        return NuvDecomposition(
            positive_part=WindowedSet(wlo, whi, full & pos_zone),
            negative_part=WindowedSet(wlo, whi, full & neg_zone),
            finite_bound=c_bound,
            shifts=(),
            unconstrained=True,
        )
    for word in (u, v):
        if not shift.word_in_language(word):
            raise WordNotInLanguageError(f"{word.describe()} is not a language word")

    offsets = sorted({a - b for a in ones_u for b in ones_v})
    val = shift.p_plus.bits  # bit d-1 <-> d in the one-sided distance set
    rev = shift._reversed_bits
    n = shift.n_max
    pos_bits = full
    neg_bits = full
    for k in offsets:
        s = wlo + k - 1
        pos_bits &= (val >> s) if s >= 0 else (val << -s)
        t = n - 1 - (-wlo - k - 1)
        neg_bits &= (rev >> t) if t >= 0 else (rev << -t)
    positive = WindowedSet(wlo, whi, pos_bits & pos_zone)
    negative = WindowedSet(wlo, whi, neg_bits & neg_zone)

    if verify:
        oracle = return_set(shift, u, v, window)
        assert oracle.bits & pos_zone == positive.bits, "positive part disagrees with return set"
        assert oracle.bits & neg_zone == negative.bits, "negative part disagrees with return set"

    return NuvDecomposition(positive, negative, c_bound, tuple(offsets))


def decomposition_agrees(shift: SpacingShift, u: Word, v: Word,
                         window: tuple[int, int]) -> bool:
    """One pair's consistency check between the two routes: the
    decomposition parts are contained in the merged-pattern return set
    everywhere, and their union matches it exactly beyond |U| + |V|."""
    dec = nuv_decomposition(shift, u, v, window, verify=False)
    oracle = return_set(shift, u, v, window)
    union = dec.positive_part.bits | dec.negative_part.bits
    if union & ~oracle.bits:
        return False
    wlo, whi = window
    size = whi - wlo + 1
    c = dec.finite_bound
    inner_lo, inner_hi = max(wlo, -c), min(whi, c)
    inner = 0
    if inner_lo <= inner_hi:
        inner = ((1 << (inner_hi - inner_lo + 1)) - 1) << (inner_lo - wlo)
    outside = ((1 << size) - 1) & ~inner
    return not ((oracle.bits ^ union) & outside)


# -- mixing / transitivity evidence ------------------------------------------


@dataclass(frozen=True)
class PairEvidence:
    u: str
    v: str
    transitive_ok: bool
    mixing_ok: bool
    witness: int | None = None


@dataclass(frozen=True)
class EvidenceReport:
    """Detector verdicts over all cylinder pairs up to a word length.

    transitive evidence applies the detector to N(U, V); mixing evidence
    to N(U, V) & N(U, U).
    """

    detector: str
    max_word_len: int
    window: tuple[int, int]
    pairs: tuple[PairEvidence, ...]

    @property
    def all_pass(self) -> bool:
        return all(p.transitive_ok and p.mixing_ok for p in self.pairs)

    @property
    def failures(self) -> tuple[PairEvidence, ...]:
        return tuple(p for p in self.pairs if not (p.transitive_ok and p.mixing_ok))

    def to_text(self) -> str:
        lines = [
            "format = evidence/1",
            f"detector = {self.detector}",
            f"max_word_len = {self.max_word_len}",
            f"window = {self.window[0]}..{self.window[1]}",
            f"pairs = {len(self.pairs)}",
            f"failures = {len(self.failures)}",
        ]
        for p in self.pairs:
            line = (f"pair u={p.u} v={p.v} "
                    f"transitive={'pass' if p.transitive_ok else 'FAIL'} "
                    f"mixing={'pass' if p.mixing_ok else 'FAIL'}")
            if p.witness is not None:
                line += f" witness={p.witness}"
            lines.append(line)
        return "\n".join(lines) + "\n"


def mixing_evidence(shift: SpacingShift, detector: Detector, max_word_len: int,
                    window: tuple[int, int] | None = None,
                    word_len_cap: int = DEFAULT_WORD_LEN_CAP) -> EvidenceReport:
    """Evaluate a detector on every return set N(U, V) and on every
    N(U, V) & N(U, U), over ordered pairs of language words up to
    max_word_len."""
    if window is None:
        m = shift.n_max - 2 * max_word_len
        if m < 1:
            raise WindowExceededError("stored window too small for this word length")
        window = (-m, m)
    words = shift.language_words(max_word_len, word_len_cap)
    self_sets = {w.symbols: return_set(shift, w, w, window) for w in words}
    pairs = []
    for u in words:
        n_uu = self_sets[u.symbols]
        for v in words:
            n_uv = return_set(shift, u, v, window)
            transitive_ok = detector.evaluate(n_uv)
            joint = n_uv.intersect(n_uu)
            mixing_ok = detector.evaluate(joint)
            witness = None
            if not transitive_ok:
                witness = detector.witness_of_failure(n_uv)
            elif not mixing_ok:
                witness = detector.witness_of_failure(joint)
            pairs.append(PairEvidence(u.symbols, v.symbols, transitive_ok, mixing_ok, witness))
    return EvidenceReport(detector.describe(), max_word_len, window, tuple(pairs))
