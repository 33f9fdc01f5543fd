"""Clopen covers of a spacing shift and their complexity along sequences.

A cover element is a union of depth-d cylinders based at 0, stored as a
frozenset of d-length binary words.  Refinement pulls the cover back
along a list of offsets and re-expresses every nonempty intersection over
the joint depth; minimal subcovers are computed exactly by branch and
bound over element bitmasks (with dominated-element and forced-element
reductions), never approximated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import ceil
from typing import Sequence

from .errors import BudgetExceededError, SetFileParseError, SolverCapError
from .intset import WindowedSet
from .spacing import SpacingShift

DEFAULT_SOLVER_CAP = 24
DEFAULT_DEPTH_BUDGET = 20


@dataclass(frozen=True)
class ClopenCover:
    """A finite cover by unions of same-depth cylinders.

    nontrivial means no element is dense, i.e. none contains every
    language word of its depth.
    """

    elements: tuple[frozenset[str], ...]
    depth: int
    nontrivial: bool

    def __post_init__(self):
        if not self.elements:
            raise ValueError("cover needs at least one element")
        for el in self.elements:
            if any(len(w) != self.depth or set(w) - {"0", "1"} for w in el):
                raise ValueError("cover elements must be words of the stated depth")


def build_cover(shift: SpacingShift, element_words: Sequence[Sequence[str]]) -> ClopenCover:
    """Validate and build a cover: elements jointly contain every language
    word of their depth (words outside the language are dropped)."""
    if not element_words:
        raise ValueError("no elements")
    first_word = next((w for words in element_words for w in words), None)
    if first_word is None:
        raise ValueError("no words in any element")
    depth = len(first_word)
    language = {w.symbols for w in shift.language_words(depth) if len(w) == depth}
    elements = []
    for words in element_words:
        kept = frozenset(w for w in words if w in language)
        elements.append(kept)
    covered = set().union(*elements)
    if covered != language:
        missing = sorted(language - covered)[:4]
        raise ValueError(f"elements do not cover the language at depth {depth}: missing {missing}")
    nontrivial = all(el != language for el in elements)
    return ClopenCover(tuple(elements), depth, nontrivial)


def auto_cover(shift: SpacingShift) -> ClopenCover:
    """The canonical nontrivial two-element cover at depth 1: the cylinder
    complements of [1] and of [0]."""
    return build_cover(shift, [["0"], ["1"]])


def refine_along(shift: SpacingShift, cover: ClopenCover, offsets: Sequence[int],
                 depth_budget: int = DEFAULT_DEPTH_BUDGET) -> ClopenCover:
    """The join of the pullbacks of the cover along the given offsets.

    Each refined element is one choice of original element per offset; a
    joint-depth language word belongs iff its slice at every offset lies
    in the chosen element.  Empty intersections are dropped.
    """
    offsets = sorted(set(offsets))
    if not offsets:
        raise ValueError("need at least one offset")
    if offsets[0] < 0:
        raise ValueError("offsets must be nonnegative")
    joint_depth = cover.depth + offsets[-1]
    if joint_depth > depth_budget:
        raise BudgetExceededError(
            f"joint depth {joint_depth} exceeds budget {depth_budget}")
    words = [w.symbols for w in shift.language_words(joint_depth) if len(w) == joint_depth]
    cells: dict[tuple[int, ...], set[str]] = {}
    for word in words:
        hit_lists = []
        for a in offsets:
            piece = word[a:a + cover.depth]
            hits = [i for i, el in enumerate(cover.elements) if piece in el]
            if not hits:
                hit_lists = None
                break
            hit_lists.append(hits)
        if hit_lists is None:
            continue
        for choice in product(*hit_lists):
            cells.setdefault(choice, set()).add(word)
    language = set(words)
    elements = tuple(frozenset(cells[c]) for c in sorted(cells))
    nontrivial = all(el != language for el in elements)
    return ClopenCover(elements, joint_depth, nontrivial)


def min_subcover(shift: SpacingShift, cover: ClopenCover,
                 solver_cap: int = DEFAULT_SOLVER_CAP) -> int:
    """Least number of elements whose union still covers every language
    word of the cover's depth.  Exact branch and bound."""
    if len(cover.elements) > solver_cap:
        raise SolverCapError(
            f"{len(cover.elements)} elements exceed solver cap {solver_cap}")
    words = sorted(w.symbols for w in shift.language_words(cover.depth)
                   if len(w) == cover.depth)
    position = {w: i for i, w in enumerate(words)}
    universe = (1 << len(words)) - 1
    masks = []
    for el in cover.elements:
        m = 0
        for w in el:
            m |= 1 << position[w]
        masks.append(m)
    covered = 0
    for m in masks:
        covered |= m
    if covered != universe:
        raise ValueError("element list does not cover the language")
    return _exact_cover_size(universe, masks)


def _exact_cover_size(universe: int, masks: list[int]) -> int:
    # dedupe and drop dominated elements
    masks = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in masks:
        if not any(m | k == k for k in kept):
            kept.append(m)
    masks = kept

    chosen = 0
    done = 0
    # forced selections: a word covered by exactly one element
    while done != universe:
        forced = None
        probe = universe & ~done
        while probe:
            w = probe & -probe
            coverers = [i for i, m in enumerate(masks) if m & w]
            if len(coverers) == 1:
                forced = coverers[0]
                break
            probe ^= w
        if forced is None:
            break
        chosen += 1
        done |= masks[forced]
        masks = [m for i, m in enumerate(masks) if i != forced and m & ~done]
    if done == universe:
        return chosen

    # greedy upper bound
    def greedy(start_done: int) -> int:
        got, count = start_done, 0
        while got != universe:
            best = max(masks, key=lambda m: (m & ~got).bit_count())
            if not best & ~got:
                break
            got |= best
            count += 1
        return count

    best_size = greedy(done)

    masks_tuple = tuple(masks)

    def search(done_bits: int, used: int, best: int) -> int:
        if done_bits == universe:
            return used
        if used + 1 >= best:
            return best
        remaining = (universe & ~done_bits).bit_count()
        max_gain = max((m & ~done_bits).bit_count() for m in masks_tuple)
        if max_gain == 0 or used + ceil(remaining / max_gain) >= best:
            return best
        # branch on the uncovered word with the fewest coverers
        branch_covers = None
        probe = universe & ~done_bits
        while probe:
            w = probe & -probe
            covers = [m for m in masks_tuple if m & w]
            if branch_covers is None or len(covers) < len(branch_covers):
                branch_covers = covers
                if len(covers) <= 1:
                    break
            probe ^= w
        if not branch_covers:
            return best
        for m in sorted(branch_covers, key=lambda m: -(m & ~done_bits).bit_count()):
            best = min(best, search(done_bits | m, used + 1, best))
        return best

    return chosen + search(done, 0, best_size)


@dataclass(frozen=True)
class ComplexityProfile:
    """Minimal-subcover sizes of progressive joins along a sequence.

    verdict is growing-at-budget when the final step still increased the
    count, otherwise bounded-at-budget; no limit beyond the budget is
    claimed.
    """

    offsets: tuple[int, ...]
    values: tuple[int, ...]
    verdict: str

    def to_text(self) -> str:
        return "\n".join([
            "format = complexity/1",
            "offsets = " + ",".join(map(str, self.offsets)),
            "profile = " + ",".join(map(str, self.values)),
            f"verdict = {self.verdict}",
        ]) + "\n"


def complexity_profile(shift: SpacingShift, cover: ClopenCover,
                       sequence, n_max: int,
                       solver_cap: int = DEFAULT_SOLVER_CAP,
                       depth_budget: int = DEFAULT_DEPTH_BUDGET) -> ComplexityProfile:
    """The sequence of minimal-subcover sizes of the joins along the first
    n terms of the sequence, n = 1..n_max.

    The sequence may be a WindowedSet (its sorted nonnegative members) or
    an explicit iterable of nonnegative integers.
    """
    if isinstance(sequence, WindowedSet):
        terms = [n for n in sequence.members() if n >= 0]
    else:
        terms = sorted(set(int(x) for x in sequence))
    if len(terms) < n_max:
        raise ValueError(f"sequence yields {len(terms)} terms, need {n_max}")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    values = []
    for n in range(1, n_max + 1):
        refined = refine_along(shift, cover, terms[:n], depth_budget)
        values.append(min_subcover(shift, refined, solver_cap))
    if len(values) >= 2 and values[-1] > values[-2]:
        verdict = "growing-at-budget"
    else:
        verdict = "bounded-at-budget"
    return ComplexityProfile(tuple(terms[:n_max]), tuple(values), verdict)


# -- cover file format ---------------------------------------------------------
#
# One element per line: `+`-separated binary words of equal depth.
# Full-line comments start with `#`.


def parse_cover_text(shift: SpacingShift, text: str) -> ClopenCover:
    elements = []
    depth = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words = [w.strip() for w in line.split("+")]
        for w in words:
            if not w or set(w) - {"0", "1"}:
                raise SetFileParseError(line_no, f"malformed word {w!r}")
            if depth is None:
                depth = len(w)
            elif len(w) != depth:
                raise SetFileParseError(line_no, "cover words must share one depth")
        elements.append(words)
    if not elements:
        raise SetFileParseError(0, "cover file has no elements")
    return build_cover(shift, elements)


def format_cover_text(cover: ClopenCover) -> str:
    return "\n".join("+".join(sorted(el)) for el in cover.elements) + "\n"
