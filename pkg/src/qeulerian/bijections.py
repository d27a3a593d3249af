"""Bijections between permutations and labeled bicolored Motzkin paths.

Both maps label step i with a monomial y^eps p^a q^c.  The y-marker sits
exactly on N and E steps, and the exponents satisfy a capacity identity:
a + c equals the starting height on N/E steps and the starting height
minus one on S/B steps.

The exceedance map (``fz_map``) classifies position i by comparing i with
sigma(i) and with the position mapping to i; its exponents are the
per-position nesting and crossing counts.  Its inverse runs two
independent scans.  Arcs below the diagonal close left of their source,
so a forward scan holds the open below-targets and the q-exponent of each
S/B step picks which one to close, counting the crossings it creates.
Arcs above the diagonal close to the right, so a backward scan holds the
open above-targets and the q-exponent of each N/E step picks the target
of position i; picking i itself (q-exponent 0 on an E step) makes i a
fixed point.

The value map (``fv_map``) classifies each value as valley, double
ascent, double descent, or peak, with the word read between the sentinels
0 and n+1; its exponents are the per-value vincular pattern counts.  Its
inverse grows the word by inserting values 1..n into a sequence of blocks
separated by gaps: a valley starts a new block inside a gap, a double
ascent extends a block rightward, a double descent extends one leftward,
and a peak fills a gap and fuses its two neighbors.  The q-exponent
counts the blocks that stay strictly right of the inserted value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .perm_stats import (
    DOUBLE_ASCENT,
    DOUBLE_DESCENT,
    PEAK,
    VALLEY,
    Permutation,
    classify_value,
    pattern_counts_at_value,
    per_position_counts,
)
from .paths import (
    STEP_DOWN,
    STEP_LEVEL,
    STEP_LEVEL_BAR,
    STEP_UP,
    BicoloredMotzkinPath,
)


class MalformedLabel(ValueError):
    pass


class AmbiguousArray(RuntimeError):
    pass


@dataclass(frozen=True)
class StepWeight:
    """Monomial y^y p^p q^q attached to one step."""

    y: int
    p: int
    q: int

    def as_dict(self):
        return {"y": self.y, "p": self.p, "q": self.q}

    def to_text(self):
        parts = []
        for name, e in (("y", self.y), ("p", self.p), ("q", self.q)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class LabeledPath:
    path: BicoloredMotzkinPath
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) != self.path.length:
            raise MalformedLabel("one weight per step required")
        for step, h, w in zip(self.path.steps, self.path.starting_heights(), self.weights):
            particle = step in (STEP_UP, STEP_LEVEL)
            if w.y != (1 if particle else 0):
                raise MalformedLabel(f"y-marker must sit exactly on N/E steps, got {w}")
            cap = h if particle else h - 1
            if w.p < 0 or w.q < 0 or w.p + w.q != cap:
                raise MalformedLabel(
                    f"exponents {w.p}+{w.q} must fill capacity {cap} at height {h}"
                )

    def product_exponents(self):
        """(sum y, sum p, sum q) over all step weights."""
        return (
            sum(w.y for w in self.weights),
            sum(w.p for w in self.weights),
            sum(w.q for w in self.weights),
        )


def fz_map(sigma):
    """Map a permutation to its exceedance-classified labeled path."""
    n = sigma.n
    word = sigma.word
    inv = sigma.inverse().word
    aplus, aminus, _, cplus, cminus = per_position_counts(sigma)
    steps = []
    weights = []
    for i in range(1, n + 1):
        si = word[i - 1]
        pi = inv[i - 1]
        if i < si and i < pi:
            step = STEP_UP
        elif i <= si and i >= pi:
            # covers fixed points, which are weak exceedances
            step = STEP_LEVEL
        elif i > si and i < pi:
            step = STEP_LEVEL_BAR
        else:
            step = STEP_DOWN
        steps.append(step)
        if step in (STEP_UP, STEP_LEVEL):
            weights.append(StepWeight(1, aplus[i - 1], cplus[i - 1]))
        else:
            weights.append(StepWeight(0, aminus[i - 1], cminus[i - 1]))
    return LabeledPath(BicoloredMotzkinPath(tuple(steps)), tuple(weights))


def fz_inverse(lp):
    """Invert the exceedance map; raises MalformedLabel on any violation."""
    path = lp.path
    n = path.length
    steps = path.steps
    sigma = [0] * n

    # forward scan: arcs below the diagonal
    open_below = []
    for i in range(1, n + 1):
        step = steps[i - 1]
        w = lp.weights[i - 1]
        if step in (STEP_DOWN, STEP_LEVEL_BAR):
            if w.q >= len(open_below):
                raise MalformedLabel(f"selector {w.q} out of range at step {i}")
            ordered = sorted(open_below, reverse=True)
            target = ordered[w.q]
            sigma[i - 1] = target
            open_below.remove(target)
        if step in (STEP_UP, STEP_LEVEL_BAR):
            open_below.append(i)
    if open_below:
        raise MalformedLabel("unclosed below-diagonal arcs")

    # backward scan: arcs weakly above the diagonal
    open_above = []
    for i in range(n, 0, -1):
        step = steps[i - 1]
        w = lp.weights[i - 1]
        if step in (STEP_LEVEL, STEP_DOWN):
            open_above.append(i)
        if step in (STEP_UP, STEP_LEVEL):
            if w.q >= len(open_above):
                raise MalformedLabel(f"selector {w.q} out of range at step {i}")
            ordered = sorted(open_above)
            target = ordered[w.q]
            sigma[i - 1] = target
            open_above.remove(target)
    if open_above:
        raise MalformedLabel("unclosed above-diagonal arcs")

    return Permutation(tuple(sigma))


def fv_map(sigma):
    """Map a permutation to its value-classified labeled path."""
    n = sigma.n
    steps = []
    weights = []
    for value in range(1, n + 1):
        kind = classify_value(sigma, value)
        step = {
            VALLEY: STEP_UP,
            DOUBLE_ASCENT: STEP_LEVEL,
            DOUBLE_DESCENT: STEP_LEVEL_BAR,
            PEAK: STEP_DOWN,
        }[kind]
        a, c = pattern_counts_at_value(sigma, value)
        eps = 1 if step in (STEP_UP, STEP_LEVEL) else 0
        steps.append(step)
        weights.append(StepWeight(eps, a, c))
    return LabeledPath(BicoloredMotzkinPath(tuple(steps)), tuple(weights))


def fv_inverse(lp):
    """Invert the value map by growing the word block by block."""
    path = lp.path
    n = path.length
    # blocks[0] absorbs the left sentinel; a virtual gap trails blocks[-1]
    blocks = [[]]
    for value in range(1, n + 1):
        step = path.steps[value - 1]
        w = lp.weights[value - 1]
        c = w.q
        m = len(blocks) - 1
        if step == STEP_UP:
            if not 0 <= c <= m:
                raise MalformedLabel(f"selector {c} out of range for value {value}")
            blocks.insert(m - c + 1, [value])
        elif step == STEP_LEVEL:
            if not 0 <= c <= m:
                raise MalformedLabel(f"selector {c} out of range for value {value}")
            blocks[m - c].append(value)
        elif step == STEP_LEVEL_BAR:
            if not 0 <= c <= m - 1:
                raise MalformedLabel(f"selector {c} out of range for value {value}")
            blocks[m - c].insert(0, value)
        else:
            if not 0 <= c <= m - 1:
                raise MalformedLabel(f"selector {c} out of range for value {value}")
            j = m - 1 - c
            blocks[j] = blocks[j] + [value] + blocks[j + 1]
            del blocks[j + 1]
    if len(blocks) != 1:
        raise MalformedLabel("word did not close into a single block")
    return Permutation(tuple(blocks[0]))


def transport(sigma):
    """Push a permutation through the value map and pull it back through the
    inverse exceedance map; descent statistics become exceedance statistics."""
    return fz_inverse(fv_map(sigma))


def _place_by_smaller_right(values, counts):
    """Order ``values`` so each v has counts[v] smaller entries to its right."""
    row = []
    for v in sorted(values):
        t = counts[v]
        if not 0 <= t <= len(row):
            raise AmbiguousArray(f"count {t} unrealizable for value {v}")
        row.insert(len(row) - t, v)
    return row


def _place_by_greater_left(values, counts):
    """Order ``values`` so each v has counts[v] greater entries to its left."""
    row = []
    for v in sorted(values, reverse=True):
        t = counts[v]
        if not 0 <= t <= len(row):
            raise AmbiguousArray(f"count {t} unrealizable for value {v}")
        row.insert(t, v)
    return row


def two_rowed_map(sigma):
    """Direct two-array construction.

    f pairs the descent beginners (sorted) with the descent enders,
    ordered so that each ender's 2-31 count equals the number of smaller
    entries to its right; g pairs the ascent beginners (sorted) with the
    ascent enders, ordered so that each one's 2-31 count equals the number
    of greater entries to its left.  The union of the two arrays, read
    columnwise as value -> image, is the output permutation.
    """
    n = sigma.n
    word = sigma.word
    counts = {v: pattern_counts_at_value(sigma, v)[1] for v in range(1, n + 1)}
    desc_begin = []
    desc_end = []
    asc_begin = []
    asc_end = []
    for j in range(1, n + 1):
        v = word[j - 1]
        right = word[j] if j <= n - 1 else n + 1
        left = word[j - 2] if j >= 2 else 0
        (desc_begin if v > right else asc_begin).append(v)
        (desc_end if left > v else asc_end).append(v)
    f_bottom = _place_by_smaller_right(desc_end, counts)
    g_bottom = _place_by_greater_left(asc_end, counts)
    image = {}
    for top, bottom in zip(sorted(desc_begin), f_bottom):
        image[top] = bottom
    for top, bottom in zip(sorted(asc_begin), g_bottom):
        image[top] = bottom
    if len(image) != n:
        raise AmbiguousArray("arrays do not cover every value")
    return Permutation(tuple(image[v] for v in range(1, n + 1)))
