"""Exact sparse polynomial arithmetic in the variables q, p, y.

Everything stays in exact arithmetic: coefficients are Python ints (or
Fractions once a rational parameter enters), never floats.  MultiPoly
carries path weights and generating-function coefficients.  LaurentPolyQ
is a univariate Laurent polynomial in q; the alternating-sum formula for
the q-Eulerian polynomials walks through negative exponents even though
its final value is an honest polynomial, so the conversion back to
MultiPoly doubles as a correctness gate.
"""

from __future__ import annotations

from fractions import Fraction

VARS = ("q", "p", "y")


class NonPolynomialResult(ValueError):
    """A Laurent computation expected to collapse to a polynomial did not."""


class MultiPoly:
    """Sparse polynomial in (q, p, y).

    ``terms`` maps exponent triples (eq, ep, ey) to nonzero coefficients.
    Instances are treated as immutable; all operators return new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for expo, coeff in items:
                if not coeff:
                    continue
                eq, ep, ey = expo
                if eq < 0 or ep < 0 or ey < 0:
                    raise ValueError(f"negative exponent in MultiPoly term {expo!r}")
                key = (eq, ep, ey)
                c = cleaned.get(key, 0) + coeff
                if c:
                    cleaned[key] = c
                else:
                    del cleaned[key]
        self.terms = cleaned

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0, 0): 1})

    @classmethod
    def const(cls, c):
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, coeff=1, q=0, p=0, y=0):
        return cls({(q, p, y): coeff})

    @classmethod
    def var(cls, name):
        if name not in VARS:
            raise ValueError(f"unknown variable {name!r}")
        expo = [0, 0, 0]
        expo[VARS.index(name)] = 1
        return cls({tuple(expo): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out = dict(self.terms)
        for expo, coeff in other.terms.items():
            c = out.get(expo, 0) + coeff
            if c:
                out[expo] = c
            else:
                out.pop(expo, None)
        res = MultiPoly()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = MultiPoly()
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero()
            res = MultiPoly()
            res.terms = {e: c * other for e, c in self.terms.items()}
            return res
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out = {}
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), z in other.terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                v = out.get(key, 0) + x * z
                if v:
                    out[key] = v
                else:
                    del out[key]
        res = MultiPoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, exp):
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.one()
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def coefficient(self, q=0, p=0, y=0):
        return self.terms.get((q, p, y), 0)

    def is_constant(self):
        return all(e == (0, 0, 0) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0, 0, 0), 0)

    def y_slices(self):
        """Split by the power of y: returns {ey: polynomial in q, p}."""
        slices = {}
        for (eq, ep, ey), c in self.terms.items():
            slices.setdefault(ey, {})[(eq, ep, 0)] = c
        return {ey: MultiPoly(t) for ey, t in slices.items()}

    def swap_pq(self):
        return MultiPoly({(ep, eq, ey): c for (eq, ep, ey), c in self.terms.items()})

    def shift(self, q=0, p=0, y=0):
        """Multiply by the monomial q^q p^p y^y."""
        return MultiPoly(
            {(eq + q, ep + p, ey + y): c for (eq, ep, ey), c in self.terms.items()}
        )

    def variables(self):
        used = set()
        for (eq, ep, ey) in self.terms:
            if eq:
                used.add("q")
            if ep:
                used.add("p")
            if ey:
                used.add("y")
        return used

    def evaluate(self, q, p, y):
        """Exact evaluation; arguments are ints or Fractions."""
        total = Fraction(0)
        for (eq, ep, ey), c in self.terms.items():
            total += Fraction(c) * Fraction(q) ** eq * Fraction(p) ** ep * Fraction(y) ** ey
        return total

    def evaluate_float(self, q, p, y):
        total = 0.0
        for (eq, ep, ey), c in self.terms.items():
            total += float(c) * q**eq * p**ep * y**ey
        return total

    def to_text(self):
        """Canonical expanded form, graded-lex term order, e.g. '3 + q'."""
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (e[0] + e[1] + e[2], e))
        parts = []
        for key in keys:
            coeff = self.terms[key]
            factors = []
            for name, e in zip(VARS, key):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(parts)

    def to_json_terms(self):
        keys = sorted(self.terms, key=lambda e: (e[0] + e[1] + e[2], e))
        return [
            {"q": eq, "p": ep, "y": ey, "c": str(self.terms[(eq, ep, ey)])}
            for (eq, ep, ey) in keys
        ]

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"


def specialize(poly, at):
    """Exact rational evaluation of ``poly`` with every used variable bound.

    ``at`` maps variable names to ints or Fractions.  Raises ValueError if a
    variable that actually occurs is missing from the assignment.
    """
    missing = poly.variables() - set(at)
    if missing:
        raise ValueError(f"unbound variable(s): {sorted(missing)}")
    return poly.evaluate(at.get("q", 0), at.get("p", 0), at.get("y", 0))


def q_integer(n):
    """[n]_q = 1 + q + ... + q^(n-1); [0]_q = 0."""
    if n < 0:
        raise ValueError("q-integer defined for n >= 0")
    return MultiPoly({(i, 0, 0): 1 for i in range(n)})


def pq_integer(n):
    """[n]_{p,q} = sum of p^a q^c over a + c = n - 1; [0]_{p,q} = 0."""
    if n < 0:
        raise ValueError("pq-integer defined for n >= 0")
    return MultiPoly({(c, n - 1 - c, 0): 1 for c in range(n)})


class LaurentPolyQ:
    """Sparse Laurent polynomial in q: {exponent (any int): coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for e, c in terms.items():
                if c:
                    v = cleaned.get(e, 0) + c
                    if v:
                        cleaned[e] = v
                    else:
                        del cleaned[e]
        self.terms = cleaned

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        return cls({0: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPolyQ):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPolyQ.const(other).terms
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolyQ.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        res = LaurentPolyQ()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = LaurentPolyQ()
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolyQ.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPolyQ.zero()
            res = LaurentPolyQ()
            res.terms = {e: c * other for e, c in self.terms.items()}
            return res
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                v = out.get(e1 + e2, 0) + c1 * c2
                if v:
                    out[e1 + e2] = v
                else:
                    del out[e1 + e2]
        res = LaurentPolyQ()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, exp):
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = LaurentPolyQ.const(1)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def reciprocal(self, degree):
        """q^degree * P(1/q), the coefficient-reversed polynomial."""
        return LaurentPolyQ({degree - e: c for e, c in self.terms.items()})

    def evaluate(self, q):
        q = Fraction(q)
        if q == 0 and any(e < 0 for e in self.terms):
            raise ZeroDivisionError("negative exponent at q = 0")
        return sum((Fraction(c) * q**e for e, c in self.terms.items()), Fraction(0))

    def to_multipoly(self):
        """Convert to MultiPoly in q; gate on true polynomiality.

        Raises NonPolynomialResult when a negative exponent or a
        non-integer coefficient survives, which would signal a
        transcription or implementation error upstream.
        """
        for e, c in self.terms.items():
            if e < 0:
                raise NonPolynomialResult(f"negative exponent q^{e}")
            if isinstance(c, Fraction) and c.denominator != 1:
                raise NonPolynomialResult(f"non-integer coefficient {c} at q^{e}")
        return MultiPoly({(e, 0, 0): int(c) for e, c in self.terms.items()})

    def __repr__(self):
        return f"LaurentPolyQ({self.terms!r})"


def laurent_q_integer(n):
    """[n]_q as a LaurentPolyQ."""
    if n < 0:
        raise ValueError("q-integer defined for n >= 0")
    return LaurentPolyQ({i: 1 for i in range(n)})
