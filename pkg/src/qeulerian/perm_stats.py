"""Permutations, decorated permutations, and their pairwise statistics.

A permutation is held in one-line notation as a tuple ``word`` with
``word[j-1] = sigma(j)`` on values 1..n.  All statistics below come from
literal set definitions over ordered pairs of positions, evaluated in a
single O(n^2) sweep; n stays small (<= 10) throughout this package, so
nothing cleverer is warranted.

Sign conventions for the arc picture: position i carries an arc to
sigma(i), drawn above the line when i <= sigma(i) and below otherwise.
Crossings (c_plus, c_minus) count same-side arc pairs that intersect,
nestings (a_plus, a_minus) same-side pairs where one sits inside the
other, and a_pm counts opposite-side pairs with disjoint supports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

VALLEY = "valley"
DOUBLE_ASCENT = "double_ascent"
DOUBLE_DESCENT = "double_descent"
PEAK = "peak"

PLUS = "+"
MINUS = "-"

MAX_ENUM_N = 10
MAX_ENUM_DECORATED_N = 8


@dataclass(frozen=True)
class Permutation:
    """One-line notation word; word[j-1] = sigma(j)."""

    word: tuple

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of 1..{len(word)}: {word!r}")

    @property
    def n(self):
        return len(self.word)

    def __call__(self, i):
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range 1..{self.n}")
        return self.word[i - 1]

    def inverse(self):
        inv = [0] * self.n
        for j, v in enumerate(self.word, start=1):
            inv[v - 1] = j
        return Permutation(tuple(inv))

    def position_of(self, value):
        if not 1 <= value <= self.n:
            raise ValueError(f"value {value} out of range 1..{self.n}")
        return self.word.index(value) + 1

    def fixed_points(self):
        return tuple(i for i, v in enumerate(self.word, start=1) if i == v)


@dataclass(frozen=True)
class DecoratedPermutation:
    """Permutation with each fixed point colored '+' or '-'."""

    perm: Permutation
    colors: tuple  # sorted tuple of (fixed_point, color)

    def __post_init__(self):
        colors = tuple(sorted(self.colors))
        object.__setattr__(self, "colors", colors)
        expected = self.perm.fixed_points()
        got = tuple(i for i, _ in colors)
        if got != expected:
            raise ValueError(f"colors must cover exactly the fixed points {expected}")
        for _, c in colors:
            if c not in (PLUS, MINUS):
                raise ValueError(f"bad color {c!r}")

    @property
    def n(self):
        return self.perm.n

    def color_map(self):
        return dict(self.colors)


@dataclass(frozen=True)
class StatProfile:
    n: int
    wexc: int
    a_plus: int
    a_minus: int
    a_pm: int
    c_plus: int
    c_minus: int
    crossings: int
    nestings: int
    alignments: int
    descents: int
    ascents: int
    p31_2: int
    p2_31: int
    p13_2: int
    p2_13: int


@dataclass(frozen=True)
class DecoratedProfile:
    n: int
    wexc: int
    crossings: int
    nestings: int
    alignments: int
    strict_exceedances: int   # |{i : i < sigma(i)}|
    strict_deficiencies: int  # |{i : i > sigma(i)}|
    a_plus: int
    a_minus: int
    a_pm: int
    c_plus: int
    c_minus: int


def parse_permutation(text):
    """Parse comma- or space-separated one-line notation, e.g. '4,7,3'."""
    toks = text.replace(",", " ").split()
    if not toks and text.strip():
        raise ValueError(f"cannot parse permutation from {text!r}")
    try:
        word = tuple(int(t) for t in toks)
    except ValueError as exc:
        raise ValueError(f"cannot parse permutation from {text!r}") from exc
    return Permutation(word)


def format_permutation(sigma):
    return ",".join(str(v) for v in sigma.word)


def parse_decorated(text):
    """Parse 'word | colors', e.g. '1,2 | 1+,2-'; the color part may be empty."""
    if "|" in text:
        left, right = text.split("|", 1)
    else:
        left, right = text, ""
    perm = parse_permutation(left)
    colors = []
    for tok in right.replace(",", " ").split():
        tok = tok.replace("−", "-")
        if tok[-1] not in (PLUS, MINUS):
            raise ValueError(f"bad color token {tok!r}")
        colors.append((int(tok[:-1]), tok[-1]))
    return DecoratedPermutation(perm, tuple(sorted(colors)))


def format_decorated(d):
    colors = ",".join(f"{i}{c}" for i, c in d.colors)
    return f"{format_permutation(d.perm)} | {colors}" if colors else format_permutation(d.perm)


def per_position_counts(sigma):
    """Per-position |A_+(i)|, |A_-(i)|, |A_pm(i)|, |C_+(i)|, |C_-(i)| as 0-based lists."""
    word = sigma.word
    n = len(word)
    aplus = [0] * n
    aminus = [0] * n
    apm = [0] * n
    cplus = [0] * n
    cminus = [0] * n
    for i in range(1, n + 1):
        si = word[i - 1]
        for j in range(1, n + 1):
            if j == i:
                continue
            sj = word[j - 1]
            if j < i <= si < sj:
                aplus[i - 1] += 1
            if j > i > si > sj:
                aminus[i - 1] += 1
            if (j <= sj < si < i) or (si < i < j <= sj):
                apm[i - 1] += 1
            if j < i <= sj < si:
                cplus[i - 1] += 1
            if j > i > sj > si:
                cminus[i - 1] += 1
    return aplus, aminus, apm, cplus, cminus


def stat_profile(sigma):
    """All single-permutation statistics, computed from the set definitions.

    >>> p = stat_profile(parse_permutation("4,7,3,6,2,1,5"))
    >>> (p.a_plus, p.a_minus, p.a_pm, p.c_plus, p.c_minus)
    (3, 1, 2, 2, 1)
    """
    word = sigma.word
    n = len(word)
    aplus, aminus, apm, cplus, cminus = per_position_counts(sigma)
    a_plus, a_minus, a_pm = sum(aplus), sum(aminus), sum(apm)
    c_plus, c_minus = sum(cplus), sum(cminus)
    wexc = sum(1 for j in range(1, n + 1) if word[j - 1] >= j)
    descents = sum(1 for j in range(1, n) if word[j - 1] > word[j])
    ascents = (n - 1 - descents) if n >= 1 else 0

    p31_2 = p2_31 = p13_2 = p2_13 = 0
    for i in range(1, n):
        vi, vi1 = word[i - 1], word[i]
        for j in range(i + 1, n + 1):
            vj = word[j - 1]
            if vi > vj > vi1:
                p31_2 += 1
            if vi1 > vj > vi:
                p13_2 += 1
        # here (j, j+1) is the adjacent pair and the lone letter sits left of it
        for k in range(1, i):
            vk = word[k - 1]
            if vi1 < vk < vi:
                p2_31 += 1
            if vi < vk < vi1:
                p2_13 += 1

    return StatProfile(
        n=n,
        wexc=wexc,
        a_plus=a_plus,
        a_minus=a_minus,
        a_pm=a_pm,
        c_plus=c_plus,
        c_minus=c_minus,
        crossings=c_plus + c_minus,
        nestings=a_plus + a_minus,
        alignments=a_plus + a_minus + a_pm,
        descents=descents,
        ascents=ascents,
        p31_2=p31_2,
        p2_31=p2_31,
        p13_2=p13_2,
        p2_13=p2_13,
    )


def height(sigma, i):
    """h_i = |{j < i : sigma(j) >= i}|, which also equals |{j >= i : sigma(j) < i}|."""
    n = sigma.n
    if not 1 <= i <= n:
        raise IndexError(f"position {i} out of range 1..{n}")
    word = sigma.word
    left = sum(1 for j in range(1, i) if word[j - 1] >= i)
    right = sum(1 for j in range(i, n + 1) if word[j - 1] < i)
    assert left == right, "the two height formulas disagree; internal error"
    return left


def classify_value(sigma, value):
    """Classify the position holding ``value`` with boundary sigma(0)=0, sigma(n+1)=n+1.

    >>> classify_value(parse_permutation("6,2,1,5,3,4"), 1)
    'valley'
    """
    n = sigma.n
    if n < 1:
        raise ValueError("classification needs n >= 1")
    j = sigma.position_of(value)
    word = sigma.word
    left = word[j - 2] if j >= 2 else 0
    right = word[j] if j <= n - 1 else n + 1
    if left > value < right:
        return VALLEY
    if left < value < right:
        return DOUBLE_ASCENT
    if left > value > right:
        return DOUBLE_DESCENT
    return PEAK


def begins_ascent(sigma, value):
    """True when sigma(j) < sigma(j+1) for the position j holding value."""
    j = sigma.position_of(value)
    right = sigma.word[j] if j <= sigma.n - 1 else sigma.n + 1
    return value < right


def pattern_counts_at_value(sigma, value):
    """(31-2(value), 2-31(value)): adjacent descent pairs left resp. right of
    the value's position whose two letters bracket the value.

    The adjacent pair occupies positions (k-1, k) with k in 2..n, so the
    boundary sentinels never form part of a counted pattern.
    """
    n = sigma.n
    if not 1 <= value <= n:
        raise ValueError(f"value {value} out of range 1..{n}")
    word = sigma.word
    j = sigma.position_of(value)
    c31 = c231 = 0
    for k in range(2, n + 1):
        if word[k - 2] > value > word[k - 1]:
            if k < j:
                c31 += 1
            elif k > j:
                c231 += 1
    return c31, c231


def decorated_profile(d):
    """Statistics of a decorated permutation.

    Fixed points are resolved through the colored relations: i counts as a
    weak exceedance when i < sigma(i) or i is a fixed point colored '+',
    and as a weak deficiency when i > sigma(i) or i is colored '-'.  The
    opposite-side alignment count a_pm applies the same color resolution
    on both ends of the pair.
    """
    sigma = d.perm
    word = sigma.word
    n = sigma.n
    col = d.color_map()

    def le_plus(i):
        si = word[i - 1]
        return i < si or (i == si and col[i] == PLUS)

    def ge_minus(i):
        si = word[i - 1]
        return i > si or (i == si and col[i] == MINUS)

    aplus = aminus = apm = cplus = cminus = 0
    for i in range(1, n + 1):
        si = word[i - 1]
        for j in range(1, n + 1):
            if j == i:
                continue
            sj = word[j - 1]
            if j < i and le_plus(i) and si < sj:
                aplus += 1
            if j > i and ge_minus(i) and si > sj:
                aminus += 1
            if ge_minus(i) and le_plus(j) and (sj < si or j > i):
                # up-arc j left of the down-arc i, or entirely to its right;
                # the two clauses cannot hold at once
                apm += 1
            if i < j <= si < sj:
                cplus += 1
            if j > i > sj > si:
                cminus += 1

    wexc = sum(1 for i in range(1, n + 1) if le_plus(i))
    strict_exc = sum(1 for i in range(1, n + 1) if i < word[i - 1])
    strict_def = sum(1 for i in range(1, n + 1) if i > word[i - 1])
    return DecoratedProfile(
        n=n,
        wexc=wexc,
        crossings=cplus + cminus,
        nestings=aplus + aminus,
        alignments=aplus + aminus + apm,
        strict_exceedances=strict_exc,
        strict_deficiencies=strict_def,
        a_plus=aplus,
        a_minus=aminus,
        a_pm=apm,
        c_plus=cplus,
        c_minus=cminus,
    )


def reverse(sigma):
    """Left-right reversal (sigma(n), ..., sigma(1))."""
    return Permutation(tuple(reversed(sigma.word)))


def enumerate_permutations(n) -> Iterator[Permutation]:
    """All n! permutations in lexicographic order of one-line words."""
    if not 0 <= n <= MAX_ENUM_N:
        raise ValueError(f"n must be in 0..{MAX_ENUM_N}")
    for word in itertools.permutations(range(1, n + 1)):
        yield Permutation(word)


def enumerate_decorated(n) -> Iterator[DecoratedPermutation]:
    """Every permutation with all 2^(#fixed points) colorings."""
    if not 0 <= n <= MAX_ENUM_DECORATED_N:
        raise ValueError(f"n must be in 0..{MAX_ENUM_DECORATED_N}")
    for sigma in enumerate_permutations(n):
        fixed = sigma.fixed_points()
        for combo in itertools.product((PLUS, MINUS), repeat=len(fixed)):
            yield DecoratedPermutation(sigma, tuple(zip(fixed, combo)))


def joint_distribution(n, selector, decorated=False):
    """Exact census: maps tuples of the selected statistics to counts.

    ``selector`` names StatProfile fields (or DecoratedProfile fields when
    ``decorated`` is set).  Counts sum to n!, or to the number of decorated
    permutations in the decorated case.
    """
    selector = tuple(selector)
    probe = DecoratedProfile if decorated else StatProfile
    for field in selector:
        if field not in probe.__dataclass_fields__:
            raise ValueError(f"unknown statistic {field!r}")
    if decorated:
        if n > 6:
            raise ValueError("decorated census capped at n = 6")
        items = (decorated_profile(d) for d in enumerate_decorated(n))
    else:
        if n > 8:
            raise ValueError("census capped at n = 8")
        items = (stat_profile(s) for s in enumerate_permutations(n))
    counts = {}
    for prof in items:
        key = tuple(getattr(prof, f) for f in selector)
        counts[key] = counts.get(key, 0) + 1
    return counts
