"""Exact Laurent polynomials in the uniformizer pi = t^(-1) over F_q.

A LaurentPoly stores {pi-degree: nonzero coefficient}.  The variable t of
the ambient field F_q((t^-1)) has pi-degree -1, so v(t) = -1 and v(pi) = 1.
Degrees are capped at +-DEGREE_WINDOW; leaving the window raises instead of
silently truncating.  TruncatedSeries is the mod-pi^N companion type.
"""

from __future__ import annotations

import math
import re

from .errors import (DegreeWindowExceeded, NotAUnit, PrecisionExhausted,
                     SpecMismatch)

DEGREE_WINDOW = 64


class LaurentPoly:
    __slots__ = ("spec", "coeffs", "_hash")

    def __init__(self, spec, coeffs):
        """coeffs: dict {pi_degree: FieldElement}; zeros are dropped."""
        self.spec = spec
        clean = {d: c for d, c in coeffs.items() if not c.is_zero()}
        for d in clean:
            if abs(d) > DEGREE_WINDOW:
                raise DegreeWindowExceeded("pi-degree %d outside window" % d)
        self.coeffs = clean
        self._hash = None

    @classmethod
    def zero(cls, spec):
        return cls(spec, {})

    @classmethod
    def const(cls, fe):
        return cls(fe.spec, {0: fe})

    @classmethod
    def monomial(cls, spec, degree, coeff=None):
        if coeff is None:
            coeff = spec.one
        return cls(spec, {degree: coeff})

    @classmethod
    def one(cls, spec):
        return cls.const(spec.one)

    @classmethod
    def t(cls, spec):
        return cls.monomial(spec, -1)

    @classmethod
    def pi(cls, spec):
        return cls.monomial(spec, 1)

    def _check(self, other):
        if self.spec != other.spec:
            raise SpecMismatch("Laurent polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            if d in out:
                s = out[d] + c
                if s.is_zero():
                    del out[d]
                else:
                    out[d] = s
            else:
                out[d] = c
        return LaurentPoly(self.spec, out)

    def __neg__(self):
        return LaurentPoly(self.spec, {d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                prod = c1 * c2
                if d in out:
                    s = out[d] + prod
                    if s.is_zero():
                        del out[d]
                    else:
                        out[d] = s
                elif not prod.is_zero():
                    out[d] = prod
        return LaurentPoly(self.spec, out)

    def scale(self, fe):
        return LaurentPoly(self.spec, {d: c * fe for d, c in self.coeffs.items()})

    def valuation(self):
        if not self.coeffs:
            return math.inf
        return min(self.coeffs)

    def degree_bound(self):
        """Largest pi-degree present, or -inf for zero."""
        if not self.coeffs:
            return -math.inf
        return max(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return set(self.coeffs) <= {0}

    def constant_value(self):
        return self.coeffs.get(0, self.spec.zero)

    def coeff(self, degree):
        return self.coeffs.get(degree, self.spec.zero)

    def is_monomial(self):
        return len(self.coeffs) == 1

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and self.spec == other.spec
                and self.coeffs == other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(
                (d, c.code) for d, c in self.coeffs.items()))
        return self._hash

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        # render in descending t-degree, i.e. ascending pi-degree
        for d in sorted(self.coeffs):
            c = self.coeffs[d]
            tdeg = -d
            if tdeg == 0:
                parts.append(str(c.code))
            else:
                head = "" if c.code == 1 else "%d*" % c.code
                exp = "t" if tdeg == 1 else "t^%d" % tdeg
                parts.append(head + exp)
        return "+".join(parts)

    def __repr__(self):
        return "LaurentPoly(%s)" % str(self)


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?(?:t(?:\^(-?\d+))?)?$")


def parse_laurent(spec, text):
    """Parse entries like "t", "1+t^-1", "2*t^2+1".  Coefficients are codes."""
    text = text.replace(" ", "")
    if not text:
        raise SpecMismatch("empty Laurent literal")
    out = LaurentPoly.zero(spec)
    for term in text.split("+"):
        m = _TERM_RE.match(term)
        if not m or term == "":
            raise SpecMismatch("bad Laurent term %r" % term)
        coeff_s, exp_s = m.groups()
        if coeff_s is None and "t" not in term:
            raise SpecMismatch("bad Laurent term %r" % term)
        coeff = spec.element(int(coeff_s)) if coeff_s is not None else spec.one
        if "t" in term:
            tdeg = int(exp_s) if exp_s is not None else 1
            out = out + LaurentPoly.monomial(spec, -tdeg, coeff)
        else:
            out = out + LaurentPoly.const(coeff)
    return out


class TruncatedSeries:
    """A power series in pi known only modulo pi^precision."""

    __slots__ = ("spec", "coeffs", "precision")

    def __init__(self, spec, coeffs, precision):
        self.spec = spec
        self.precision = precision
        self.coeffs = {d: c for d, c in coeffs.items()
                       if d < precision and not c.is_zero()}

    def valuation(self):
        if not self.coeffs:
            raise PrecisionExhausted(
                "zero modulo pi^%d; valuation unknown" % self.precision)
        return min(self.coeffs)

    def __add__(self, other):
        n = min(self.precision, other.precision)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, self.spec.zero) + c
        return TruncatedSeries(self.spec, out, n)

    def __mul__(self, other):
        n = min(self.precision, other.precision)
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                if d < n:
                    out[d] = out.get(d, self.spec.zero) + c1 * c2
        return TruncatedSeries(self.spec, out, n)

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries)
                and self.spec == other.spec
                and self.precision == other.precision
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.precision,
                     frozenset((d, c.code) for d, c in self.coeffs.items())))

    def __repr__(self):
        body = "+".join("%d*pi^%d" % (c.code, d)
                        for d, c in sorted(self.coeffs.items())) or "0"
        return "TruncatedSeries(%s mod pi^%d)" % (body, self.precision)


def reduce_mod(x, precision):
    """Truncate a LaurentPoly (or series) to degrees < precision."""
    if isinstance(x, TruncatedSeries):
        return TruncatedSeries(x.spec, x.coeffs, min(precision, x.precision))
    return TruncatedSeries(x.spec, x.coeffs, precision)


def unit_inverse_mod(u, precision):
    """Inverse of a valuation-0 element, modulo pi^precision.

    Write u = c0 (1 + m) with v(m) >= 1; the inverse is computed term by
    term so that u * result = 1 mod pi^precision exactly.
    """
    if isinstance(u, LaurentPoly):
        u = reduce_mod(u, precision)
    if not u.coeffs or min(u.coeffs) != 0:
        raise NotAUnit("valuation is not zero")
    spec = u.spec
    c0inv = u.coeffs[0].inverse()
    inv = {0: c0inv}
    for n in range(1, precision):
        # coefficient of pi^n in u * inv must vanish
        s = spec.zero
        for k in range(1, n + 1):
            if k in u.coeffs and (n - k) in inv:
                s = s + u.coeffs[k] * inv[n - k]
        c = -(c0inv * s)
        if not c.is_zero():
            inv[n] = c
    return TruncatedSeries(spec, inv, precision)
