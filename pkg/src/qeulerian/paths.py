"""Bicolored Motzkin paths, step-weight schemes, and the length-transfer map.

Steps are single letters: N (up), S (down), E (level), B (the second level
color, printed as a bar in the literature).  A path of length n keeps its
running height nonnegative and returns to zero.  Weight schemes assign a
polynomial to each (step, starting height) pair; a path's weight is the
product over its steps.  The projection ``theta`` forgets everything but
which side of the height profile each step sits on: N and E become
particles, S and B become holes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .polynomials import MultiPoly, pq_integer, q_integer

STEP_UP = "N"
STEP_DOWN = "S"
STEP_LEVEL = "E"
STEP_LEVEL_BAR = "B"
STEPS = (STEP_UP, STEP_DOWN, STEP_LEVEL, STEP_LEVEL_BAR)

MAX_ENUM_LEN = 14

PARTICLE = 1
HOLE = 0


class PathError(ValueError):
    pass


class NegativeHeight(PathError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"height drops below zero at step {index}")


class NonzeroFinalHeight(PathError):
    def __init__(self, final):
        self.final = final
        super().__init__(f"path ends at height {final}, not zero")


@dataclass(frozen=True)
class BicoloredMotzkinPath:
    steps: tuple

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        h = 0
        for idx, s in enumerate(steps, start=1):
            if s not in STEPS:
                raise PathError(f"unknown step {s!r} at position {idx}")
            if s == STEP_UP:
                h += 1
            elif s == STEP_DOWN:
                h -= 1
                if h < 0:
                    raise NegativeHeight(idx)
        if h != 0:
            raise NonzeroFinalHeight(h)

    @property
    def length(self):
        return len(self.steps)

    def starting_heights(self):
        """Height at which each step begins."""
        out = []
        h = 0
        for s in self.steps:
            out.append(h)
            if s == STEP_UP:
                h += 1
            elif s == STEP_DOWN:
                h -= 1
        return out

    def up_count(self):
        """Number of N plus E steps (the particle steps under theta)."""
        return sum(1 for s in self.steps if s in (STEP_UP, STEP_LEVEL))


def validate_path(steps):
    """Build a path from an iterable of step letters, or raise a PathError
    naming the first violation."""
    return BicoloredMotzkinPath(tuple(steps))


def parse_path(text):
    """Parse the compact letter form, e.g. 'NBNESS'."""
    return validate_path(tuple(text.strip()))


def format_path(path):
    return "".join(path.steps)


def enumerate_paths(n) -> Iterator[BicoloredMotzkinPath]:
    """All valid paths of length n (counts are the Catalan numbers C_{n+1})."""
    if not 0 <= n <= MAX_ENUM_LEN:
        raise ValueError(f"n must be in 0..{MAX_ENUM_LEN}")

    def rec(prefix, h, remaining):
        if remaining == 0:
            if h == 0:
                yield BicoloredMotzkinPath(tuple(prefix))
            return
        if h > remaining:
            return
        for s in (STEP_UP, STEP_DOWN, STEP_LEVEL, STEP_LEVEL_BAR):
            if s == STEP_UP and h + 1 > remaining - 1:
                continue
            if s == STEP_DOWN and h == 0:
                continue
            prefix.append(s)
            yield from rec(prefix, h + (s == STEP_UP) - (s == STEP_DOWN), remaining - 1)
            prefix.pop()

    yield from rec([], 0, n)


@dataclass(frozen=True)
class WeightScheme:
    """Assigns a MultiPoly weight to each (step, starting height) pair."""

    name: str
    weight_fn: Callable[[str, int], MultiPoly]

    def weight(self, step, h):
        if step == STEP_DOWN and h == 0:
            # invalid on any path; encode validity in the weights
            return MultiPoly.zero()
        return self.weight_fn(step, h)


def scheme_fz():
    """Particle steps weigh y*[h+1]_{p,q}, hole steps weigh [h]_{p,q}."""

    y = MultiPoly.var("y")

    def fn(step, h):
        if step in (STEP_UP, STEP_LEVEL):
            return y * pq_integer(h + 1)
        return pq_integer(h)

    return WeightScheme("fz", fn)


def scheme_decorated():
    """Level steps split b_h = (1+y)[h+1]; the rise/fall pair carries y*q*[h]^2."""

    y = MultiPoly.var("y")
    q = MultiPoly.var("q")

    def fn(step, h):
        if step == STEP_UP:
            return y * pq_integer(h + 1)
        if step == STEP_LEVEL:
            return y * pq_integer(h + 1)
        if step == STEP_LEVEL_BAR:
            return pq_integer(h + 1)
        return q * pq_integer(h)

    return WeightScheme("decorated", fn)


def scheme_asep(alpha, beta, q=None):
    """Step weights of the exclusion-process transfer ansatz.

    ``alpha`` and ``beta`` are nonzero rationals; ``q`` may be a rational or
    None for a symbolic q.  Weights are polynomials in q with rational
    coefficients; when q is numeric the polynomial is constant.
    """
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if alpha == 0 or beta == 0:
        raise ValueError("alpha and beta must be nonzero")
    ia = 1 / alpha
    ib = 1 / beta
    corner = (ia - 1) * (ib - 1)

    def qpow(e):
        if e < 0:
            raise AssertionError("negative q power; down step at ground level")
        return MultiPoly.monomial(1, q=e)

    def fn(step, h):
        if step == STEP_UP:
            w = q_integer(h + 1)
        elif step == STEP_LEVEL_BAR:
            w = q_integer(h) + ia * qpow(h)
        elif step == STEP_LEVEL:
            w = q_integer(h) + ib * qpow(h)
        else:
            w = q_integer(h) + ia * ib * qpow(h)
            if corner:
                w = w - corner * qpow(h - 1)
        if q is not None:
            return MultiPoly.const(w.evaluate(Fraction(q), 0, 0))
        return w

    return WeightScheme("asep", fn)


def path_weight(path, scheme):
    """Product of step weights at their starting heights; empty path gives 1."""
    total = MultiPoly.one()
    for step, h in zip(path.steps, path.starting_heights()):
        total = total * scheme.weight(step, h)
        if not total:
            return total
    return total


def theta(path):
    """Project each step to a cell: N, E -> particle; S, B -> hole."""
    return tuple(
        PARTICLE if s in (STEP_UP, STEP_LEVEL) else HOLE for s in path.steps
    )


def theta_fiber(config) -> Iterator[BicoloredMotzkinPath]:
    """All valid paths projecting onto ``config`` (a tuple over {0, 1})."""
    config = tuple(config)
    if len(config) > MAX_ENUM_LEN:
        raise ValueError(f"configuration longer than {MAX_ENUM_LEN}")

    def rec(prefix, h, i):
        if i == len(config):
            if h == 0:
                yield BicoloredMotzkinPath(tuple(prefix))
            return
        if h > len(config) - i:
            return
        options = (STEP_UP, STEP_LEVEL) if config[i] == PARTICLE else (STEP_DOWN, STEP_LEVEL_BAR)
        for s in options:
            if s == STEP_DOWN and h == 0:
                continue
            if s == STEP_UP and h + 1 > len(config) - i - 1:
                continue
            prefix.append(s)
            yield from rec(prefix, h + (s == STEP_UP) - (s == STEP_DOWN), i + 1)
            prefix.pop()

    yield from rec([], 0, 0)


# The two tables are deliberately not inverses.  Expansion puts an N in
# second position exactly for particle steps, so after prepending N the
# shifted pairs start with N exactly (particle count + 1) times; the
# contraction then reads pairs with the natural color convention.
_EXPAND = {
    STEP_UP: (STEP_UP, STEP_UP),
    STEP_LEVEL: (STEP_DOWN, STEP_UP),
    STEP_LEVEL_BAR: (STEP_UP, STEP_DOWN),
    STEP_DOWN: (STEP_DOWN, STEP_DOWN),
}
_CONTRACT = {
    (STEP_UP, STEP_UP): STEP_UP,
    (STEP_UP, STEP_DOWN): STEP_LEVEL,
    (STEP_DOWN, STEP_UP): STEP_LEVEL_BAR,
    (STEP_DOWN, STEP_DOWN): STEP_DOWN,
}


def lemma_transfer(path):
    """Length n -> n+1 map: double every step into an up/down pair, wrap the
    word in an extra rise and fall, then contract the shifted adjacent pairs.

    The image has one more particle step (N or E) than the input; summed
    against the matching weight schemes this realizes a weight-preserving
    correspondence, which the tests check as a sum identity.
    """
    doubled = [STEP_UP]
    for s in path.steps:
        doubled.extend(_EXPAND[s])
    doubled.append(STEP_DOWN)
    contracted = tuple(
        _CONTRACT[(doubled[2 * i], doubled[2 * i + 1])] for i in range(len(doubled) // 2)
    )
    return BicoloredMotzkinPath(contracted)
