"""Generating functions: J-fraction expansion, q-Eulerian polynomials,
specialization checks, and the closed-form series evaluators.

The continued fraction 1/(1 - b_0 x - lambda_1 x^2/(1 - b_1 x - ...)) is
expanded by exact dynamic programming over weighted Motzkin prefixes
(level step at height h carries b_h, a fall from height h carries
lambda_h), never by rational-function truncation.  All coefficients are
MultiPoly values in q, p, y.

``ehat_polynomial`` evaluates the alternating-sum formula for the
polynomials indexed by (weak exceedances, size) in Laurent arithmetic and
gates the result on true polynomiality.

``williams_eval_e`` / ``williams_eval_a`` implement the closed-form
infinite series literally, as floating-point partial sums.  The companion
``closed_form_coeff_e`` / ``closed_form_coeff_a`` extract single series
coefficients of the same expressions exactly at a rational q, which is
the meaningful way to compare them with the continued fraction when the
partial sums themselves misbehave numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .polynomials import (
    LaurentPolyQ,
    MultiPoly,
    laurent_q_integer,
    pq_integer,
    q_integer,
)

MAX_ORDER_PLAIN = 16
MAX_ORDER_REFINED = 12


class DivergentTerm(ArithmeticError):
    """A closed-form denominator underflowed to (near) zero."""


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in x truncated at x^order; coefficients are MultiPoly."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) != self.order + 1:
            raise ValueError("need exactly order + 1 coefficients")

    def coeff(self, n):
        if not 0 <= n <= self.order:
            raise IndexError(f"x^{n} outside truncation order {self.order}")
        return self.coeffs[n]

    def coeff_xy(self, n, k):
        """The y^k slice of the x^n coefficient, a polynomial in q and p."""
        return self.coeff(n).y_slices().get(k, MultiPoly.zero())

    def evaluate_float(self, q, x, y, p=1.0):
        total = 0.0
        for n, c in enumerate(self.coeffs):
            total += c.evaluate_float(q, p, y) * x**n
        return total


def jfraction_series(b, lam, order):
    """Expand the J-fraction with level weights ``b(h)`` and fall weights
    ``lam(h)`` to the given order in x."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    coeffs = [MultiPoly.one()]
    dp = {0: MultiPoly.one()}
    for pos in range(1, order + 1):
        remaining = order - pos
        nxt = {}

        def add(h, w):
            if w:
                nxt[h] = nxt.get(h, MultiPoly.zero()) + w

        for h, w in dp.items():
            add(h, w * b(h))
            if h + 1 <= remaining:
                add(h + 1, w)
            if h > 0:
                add(h - 1, w * lam(h))
        dp = nxt
        coeffs.append(dp.get(0, MultiPoly.zero()))
    return TruncatedSeries(order, tuple(coeffs))


def ehat_series(order, refined=False):
    """Series whose x^n, y^k, q^l (and p^m when refined) coefficient counts
    permutations by size, weak exceedances, crossings (and nestings)."""
    cap = MAX_ORDER_REFINED if refined else MAX_ORDER_PLAIN
    if order > cap:
        raise ValueError(f"order capped at {cap}")
    bracket = pq_integer if refined else q_integer
    y = MultiPoly.var("y")

    def b(h):
        return y * bracket(h + 1) + bracket(h)

    def lam(h):
        return y * bracket(h) ** 2

    return jfraction_series(b, lam, order)


def a_series(order, refined=False):
    """Decorated analogue: b_h = (1+y)[h+1], lambda_h = y q [h]^2."""
    if order > MAX_ORDER_REFINED:
        raise ValueError(f"order capped at {MAX_ORDER_REFINED}")
    bracket = pq_integer if refined else q_integer
    y = MultiPoly.var("y")
    q = MultiPoly.var("q")

    def b(h):
        return (1 + y) * bracket(h + 1)

    def lam(h):
        return y * q * bracket(h) ** 2

    return jfraction_series(b, lam, order)


def e_twisted_series(order):
    """Rescaled series: the y^k part of the x^n coefficient gains q^(n-k)."""
    base = ehat_series(order, refined=False)
    out = []
    for n, c in enumerate(base.coeffs):
        twisted = MultiPoly.zero()
        for k, slice_ in c.y_slices().items():
            twisted = twisted + slice_.shift(q=n - k, y=k)
        out.append(twisted)
    return TruncatedSeries(order, tuple(out))


def _comb0(n, i):
    return comb(n, i) if 0 <= i <= n else 0


def ehat_polynomial(k, n):
    """The explicit alternating-sum form of the (k, n) q-Eulerian polynomial.

    Computed in Laurent arithmetic (the q^(k - k^2) prefactor and the
    binomial alternation pass through negative exponents), then converted
    to a plain polynomial; the conversion raises NonPolynomialResult if
    anything nonpolynomial survives, which would mean a transcription bug.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    total = LaurentPolyQ.zero()
    for i in range(k):
        bracket = laurent_q_integer(k - i) ** n
        binpart = LaurentPolyQ({k - i: _comb0(n, i), 0: _comb0(n, i - 1)})
        term = bracket * binpart * LaurentPolyQ({k * (i - 1): (-1) ** i})
        total = total + term
    total = total * LaurentPolyQ({k - k * k: 1})
    return total.to_multipoly()


def ehat_or_zero(k, n):
    """ehat_polynomial extended by zero outside 1 <= k <= n (and 1 at k=n=0)."""
    if k == 0 and n == 0:
        return MultiPoly.one()
    if not 1 <= k <= n:
        return MultiPoly.zero()
    return ehat_polynomial(k, n)


def williams_eval_e(q, x, y, terms=60):
    """Literal floating-point partial sum of the closed-form series for the
    twisted generating function.  See closed_form_coeff_e for the exact
    coefficient-level counterpart."""
    if not 0 < abs(q) < 1:
        raise ValueError("need 0 < |q| < 1")
    if terms > 60:
        raise ValueError("terms capped at 60")
    total = 0.0
    for i in range(terms + 1):
        bracket = (1.0 - q**i) / (1.0 - q)
        denom = q ** (i * i + i + 1) * (q**i - q ** (i + 1) * bracket * x + bracket * x * y)
        if abs(denom) < 1e-300:
            raise DivergentTerm(f"denominator underflow at term {i}")
        total += y**i * (q ** (2 * i + 1) - y) / denom
    return total


def williams_eval_a(q, x, y, terms=60):
    """Literal floating-point partial sum of the closed-form series for the
    decorated generating function."""
    if not 0 < abs(q) < 1:
        raise ValueError("need 0 < |q| < 1")
    if terms > 60:
        raise ValueError("terms capped at 60")
    total = -y / (1.0 - q)
    for i in range(1, terms + 1):
        bracket_i = (1.0 - q**i) / (1.0 - q)
        bracket_i1 = (1.0 - q ** (i + 1)) / (1.0 - q)
        denom = q ** (i * i + i + 1) * (q**i - q**i * bracket_i1 * x + bracket_i * x * y)
        if abs(denom) < 1e-300:
            raise DivergentTerm(f"denominator underflow at term {i}")
        total += y**i * (q ** (2 * i + 1) - y) / denom
    return total


def closed_form_coeff_e(n, k, q):
    """Exact [x^n y^k] of the closed form at a rational q.

    Each term of the infinite sum is a geometric series in x whose x^n
    coefficient is a polynomial in y; only terms i <= k reach y^k, so the
    extraction is a finite exact computation even though the numeric sum
    itself need not converge.
    """
    q = Fraction(q)
    if q == 0 or q == 1:
        raise ValueError("need q not in {0, 1}")
    total = Fraction(0)
    for i in range(k + 1):
        bracket = (1 - q**i) / (1 - q)
        pref = Fraction(1) / q ** ((i + 1) ** 2)
        first = (
            q ** (2 * i + 1)
            * _comb0(n, k - i)
            * (bracket * q) ** (n - (k - i))
            * (-bracket / q**i) ** (k - i)
            if 0 <= k - i <= n
            else Fraction(0)
        )
        second = (
            _comb0(n, k - i - 1)
            * (bracket * q) ** (n - (k - i - 1))
            * (-bracket / q**i) ** (k - i - 1)
            if 0 <= k - i - 1 <= n
            else Fraction(0)
        )
        total += pref * (first - second)
    return total


def closed_form_coeff_a(n, k, q):
    """Exact [x^n y^k] of the decorated closed form at a rational q."""
    q = Fraction(q)
    if q == 0 or q == 1:
        raise ValueError("need q not in {0, 1}")
    total = Fraction(0)
    if n == 0 and k == 1:
        total -= Fraction(1) / (1 - q)
    for i in range(1, k + 1):
        bracket_i = (1 - q**i) / (1 - q)
        bracket_i1 = (1 - q ** (i + 1)) / (1 - q)
        pref = Fraction(1) / q ** (i * i + i + 1) / q ** (i * (n + 1))
        a_coef = q**i * bracket_i1
        first = (
            q ** (2 * i + 1) * _comb0(n, k - i) * a_coef ** (n - (k - i)) * (-bracket_i) ** (k - i)
            if 0 <= k - i <= n
            else Fraction(0)
        )
        second = (
            _comb0(n, k - i - 1)
            * a_coef ** (n - (k - i - 1))
            * (-bracket_i) ** (k - i - 1)
            if 0 <= k - i - 1 <= n
            else Fraction(0)
        )
        total += pref * (first - second)
    return total


def a_formula_probe(k, n):
    """Compare candidate finite-sum expressions for the decorated polynomial
    against the continued-fraction coefficient, which is authoritative.

    Readings (i runs over the stated range, binomial weights C(n, i)):
      plain_k_fixed      sum_{i<k}   C(n,i) * E(k, n-i)
      plain_k_shifted    sum_{i<k}   C(n,i) * E(k-i, n-i)
      twisted_k_fixed    sum_{i<k}   C(n,i) * q^(n-i-k) * E(k, n-i)
      twisted_full       sum_{i<=n-k} C(n,i) * q^(n-k-i) * E(k, n-i)
    E(0, 0) is taken to be 1 where a reading needs it (flagged).  The
    probe reports matches; it never asserts.
    """
    if not 1 <= k <= n or n > 8:
        raise ValueError("need 1 <= k <= n <= 8")
    cf = a_series(n).coeff_xy(n, k)

    used_empty = []

    def e_of(kk, nn, tag):
        if kk == 0 and nn == 0:
            used_empty.append(tag)
        return ehat_or_zero(kk, nn)

    readings = {}
    acc = MultiPoly.zero()
    for i in range(k):
        acc = acc + _comb0(n, i) * e_of(k, n - i, "plain_k_fixed")
    readings["plain_k_fixed"] = acc
    acc = MultiPoly.zero()
    for i in range(k):
        acc = acc + _comb0(n, i) * e_of(k - i, n - i, "plain_k_shifted")
    readings["plain_k_shifted"] = acc
    acc = MultiPoly.zero()
    for i in range(k):
        if n - i - k >= 0:
            acc = acc + _comb0(n, i) * e_of(k, n - i, "twisted_k_fixed").shift(q=n - i - k)
    readings["twisted_k_fixed"] = acc
    acc = MultiPoly.zero()
    for i in range(n - k + 1):
        acc = acc + _comb0(n, i) * e_of(k, n - i, "twisted_full").shift(q=n - k - i)
    readings["twisted_full"] = acc

    report = {
        "k": k,
        "n": n,
        "cf_coefficient": cf.to_text(),
        "readings": {
            name: {"value": poly.to_text(), "matches": poly == cf}
            for name, poly in readings.items()
        },
        "matching": sorted(name for name, poly in readings.items() if poly == cf),
        "empty_convention_used": sorted(set(used_empty)),
    }
    return report
