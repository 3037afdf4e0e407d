"""Unit tests for the exact polynomial and quasi-polynomial ring."""

import json
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freeunitary import Poly, QuasiPoly, poly_text, quasipoly_from_json

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
polys = st.builds(Poly, st.lists(rationals, max_size=5))
quasis = st.builds(
    QuasiPoly,
    st.dictionaries(st.integers(min_value=-6, max_value=6), polys, max_size=4),
)


def test_poly_drops_trailing_zeros():
    assert Poly((1, 0, 0)) == Poly((1,))
    assert Poly((1, 0, 0)).degree == 0


def test_poly_zero_conventions():
    zero = Poly()
    assert zero.is_zero
    assert zero.degree == -1
    assert zero.leading() == 0


def test_poly_rejects_floats():
    with pytest.raises(TypeError):
        Poly((0.5,))


def test_poly_square():
    p = Poly((1, 1))
    assert p * p == Poly((1, 2, 1))
    assert p ** 3 == Poly((1, 3, 3, 1))
    assert (p ** 3)(Fraction(1, 2)) == Fraction(27, 8)


def test_poly_shift_arg():
    p = Poly((2, -1, 3))
    a = Fraction(1, 3)
    for x in (Fraction(0), Fraction(1), Fraction(-5, 7)):
        assert p.shift_arg(a)(x) == p(x + a)


def test_poly_calculus_roundtrip():
    p = Poly((5, -2, 0, 7))
    assert p.antiderivative().derivative() == p
    assert p.antiderivative()(Fraction(0)) == 0


def test_poly_text_is_descending():
    assert poly_text(Poly((1, 2, Fraction(3, 2)))) == "(3/2)x^2+2x+1"
    assert poly_text(Poly()) == "0"


@settings(max_examples=60, deadline=None)
@given(quasis, quasis, quasis)
def test_quasipoly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + QuasiPoly() == a
    assert a * QuasiPoly.constant(1) == a
    assert a - a == QuasiPoly()


@settings(max_examples=60, deadline=None)
@given(quasis)
def test_quasipoly_calculus_roundtrip(q):
    anti = q.integrate_from_zero()
    assert anti.ddt() == q
    assert anti.value_at_zero() == 0


@settings(max_examples=40, deadline=None)
@given(quasis, quasis, st.fractions(min_value=-3, max_value=3, max_denominator=8))
def test_eval_is_a_homomorphism(a, b, t):
    with mpmath.workprec(384):
        lhs = (a * b).eval(t, prec_bits=384)
        rhs = a.eval(t, prec_bits=384) * b.eval(t, prec_bits=384)
        assert abs(lhs - rhs) < mpmath.mpf("1e-40")


@settings(max_examples=60, deadline=None)
@given(quasis)
def test_json_roundtrip(q):
    wire = json.dumps(q.to_json_dict(), sort_keys=True)
    assert quasipoly_from_json(json.loads(wire)) == q


def test_grade_reads_y_powers():
    q = QuasiPoly({0: Poly((-1,)), -2: Poly((4,)), -4: Poly((-3, -2))})
    assert q.grade(0) == Poly((-1,))
    assert q.grade(2) == Poly((4,))
    assert q.grade(4) == Poly((-3, -2))
    assert q.grade(1).is_zero
    assert q.grade(6).is_zero


def test_shift_exp2_and_scale():
    q = QuasiPoly({0: 1, -2: -1})
    assert q.shift_exp2(-2) == QuasiPoly({-2: 1, -4: -1})
    assert q.scale(Fraction(-1, 2)) == QuasiPoly({0: Fraction(-1, 2), -2: Fraction(1, 2)})


def test_ddt_halves_exp2():
    # d/dt of e^{-t} is -e^{-t}; d/dt of t e^{-t/2} is (1 - t/2) e^{-t/2}
    assert QuasiPoly({-2: 1}).ddt() == QuasiPoly({-2: -1})
    got = QuasiPoly({-1: Poly((0, 1))}).ddt()
    assert got == QuasiPoly({-1: Poly((1, Fraction(-1, 2)))})


def test_value_at_zero_sums_constants():
    q = QuasiPoly({0: Poly((2,)), -2: Poly((-1, 5)), -3: Poly((7,))})
    assert q.value_at_zero() == 8


def test_to_text_examples():
    assert QuasiPoly({0: 1, -2: -1}).to_text() == "1 - y^2"
    row = QuasiPoly({0: -1, -2: 4, -4: Poly((-3, -2))})
    assert row.to_text() == "-1 + 4y^2 - (2x+3)y^4"


def test_eval_known_value():
    # 1 - e^{-t} at t = ln 4 is 3/4
    q = QuasiPoly({0: 1, -2: -1})
    with mpmath.workprec(128):
        t = mpmath.log(4)
        assert abs(q.eval(t) - mpmath.mpf(3) / 4) < mpmath.mpf("1e-35")
