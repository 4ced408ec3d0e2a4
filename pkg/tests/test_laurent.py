"""Laurent polynomial ring over F_q and pi-adic truncated series."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from kmlat.errors import (DegreeWindowExceeded, NotAUnit, PrecisionExhausted)
from kmlat.gf import make_field
from kmlat.laurent import (LaurentPoly, TruncatedSeries, parse_laurent,
                           reduce_mod, unit_inverse_mod)

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(2, 2)


def poly_strategy(spec, max_terms=4, degree_span=6):
    pairs = st.tuples(st.integers(-degree_span, degree_span),
                      st.integers(0, spec.q - 1))
    return st.lists(pairs, max_size=max_terms).map(
        lambda ps: LaurentPoly(spec, {d: spec.element(c) for d, c in ps}))


@given(x=poly_strategy(F3), y=poly_strategy(F3), z=poly_strategy(F3))
@settings(max_examples=150, deadline=None)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == LaurentPoly.zero(F3)
    assert x * LaurentPoly.one(F3) == x


@given(x=poly_strategy(F4), y=poly_strategy(F4))
@settings(max_examples=150, deadline=None)
def test_valuation_is_additive(x, y):
    v = (x * y).valuation()
    if x.is_zero() or y.is_zero():
        assert v == math.inf
    else:
        assert v == x.valuation() + y.valuation()


@given(x=poly_strategy(F3), y=poly_strategy(F3))
@settings(max_examples=150, deadline=None)
def test_valuation_of_sum(x, y):
    assert (x + y).valuation() >= min(x.valuation(), y.valuation())


def test_t_and_pi_conventions():
    t = LaurentPoly.t(F2)
    pi = LaurentPoly.pi(F2)
    assert t.valuation() == -1
    assert pi.valuation() == 1
    assert t * pi == LaurentPoly.one(F2)


def test_degree_window():
    with pytest.raises(DegreeWindowExceeded):
        LaurentPoly.monomial(F2, 65)
    with pytest.raises(DegreeWindowExceeded):
        LaurentPoly.monomial(F2, -65)


def test_str_and_parse():
    x = LaurentPoly(F3, {-2: F3.element(2), 0: F3.one, 3: F3.one})
    assert str(x) == "2*t^2+1+t^-3"
    assert parse_laurent(F3, str(x)) == x
    assert parse_laurent(F3, "0") == LaurentPoly.zero(F3)
    assert parse_laurent(F3, "t") == LaurentPoly.t(F3)
    assert parse_laurent(F3, "1+t^-1") == LaurentPoly(
        F3, {0: F3.one, 1: F3.one})


@given(x=poly_strategy(F3))
@settings(max_examples=100, deadline=None)
def test_parse_roundtrip(x):
    assert parse_laurent(F3, str(x)) == x


def test_truncated_series_valuation():
    s = reduce_mod(LaurentPoly.pi(F3), 4)
    assert s.valuation() == 1
    zero = TruncatedSeries(F3, {}, 4)
    with pytest.raises(PrecisionExhausted):
        zero.valuation()
    # pi^5 is invisible modulo pi^4
    hidden = reduce_mod(LaurentPoly.monomial(F3, 5), 4)
    with pytest.raises(PrecisionExhausted):
        hidden.valuation()


def test_truncation_respects_multiplication():
    x = LaurentPoly(F3, {0: F3.one, 1: F3.element(2), 3: F3.one})
    y = LaurentPoly(F3, {0: F3.element(2), 2: F3.one})
    n = 3
    assert reduce_mod(x * y, n) == reduce_mod(x, n) * reduce_mod(y, n)


@given(x=poly_strategy(F3, degree_span=5), n=st.integers(1, 8))
@settings(max_examples=100, deadline=None)
def test_unit_inverse(x, n):
    u = x + LaurentPoly.one(F3)  # -> often a unit; skip when not
    if u.is_zero() or u.valuation() != 0:
        return
    inv = unit_inverse_mod(u, n)
    assert reduce_mod(u, n) * inv == reduce_mod(LaurentPoly.one(F3), n)


def test_unit_inverse_rejects_nonunits():
    with pytest.raises(NotAUnit):
        unit_inverse_mod(LaurentPoly.pi(F2), 4)
    with pytest.raises(NotAUnit):
        unit_inverse_mod(LaurentPoly.zero(F2), 4)
