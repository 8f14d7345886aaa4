"""
Tests for exact polynomial scalar fields.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fnlie.errors import ChartMismatchError, DimensionError
from fnlie.scalar import ComplexScalar, ScalarField, equal, format_complex, make_chart

PLANE = make_chart(("x", "y"))
SPACE = make_chart(("x", "y", "z"))

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exponents = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)).filter(lambda e: sum(e) <= 4)
polynomials = st.dictionaries(exponents, rationals, max_size=5).map(lambda t: ScalarField.from_terms(SPACE, t))
points = st.tuples(rationals, rationals, rationals)

hypothesis_settings = settings(derandomize=True, deadline=None, max_examples=200)


@hypothesis_settings
@given(polynomials, polynomials, polynomials)
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert equal(f - f, ScalarField.zero(SPACE))


@hypothesis_settings
@given(polynomials, polynomials)
def test_leibniz_rule(f, g):
    for name in ("x", "y", "z"):
        assert (f * g).diff(name) == f.diff(name) * g + f * g.diff(name)


@hypothesis_settings
@given(polynomials, polynomials, points)
def test_evaluation_is_a_ring_morphism(f, g, point):
    assert (f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point)
    assert (f + g).evaluate(point) == f.evaluate(point) + g.evaluate(point)


@hypothesis_settings
@given(polynomials)
def test_mixed_partials_commute(f):
    assert f.diff("x").diff("y") == f.diff("y").diff("x")
    assert f.diff("y").diff("z") == f.diff("z").diff("y")


@hypothesis_settings
@given(polynomials, polynomials, st.booleans(), st.integers(min_value=0, max_value=10 ** 6))
def test_equality_agrees_with_evaluation(p, g, rewrite, seed):
    q = (p + g) - g if rewrite else g
    rng = random.Random(seed)
    samples = [tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 9)) for _ in range(3)) for _ in range(20)]
    assert equal(p, q) == all(p.evaluate(pt) == q.evaluate(pt) for pt in samples)


def test_exact_rationals():
    x = ScalarField.coordinate(PLANE, "x")
    f = x * Fraction(1, 3) + Fraction(1, 6)
    assert f.evaluate((Fraction(1, 2), 0)) == Fraction(1, 3)
    assert str(f) == "1/3*x + 1/6"


def test_canonical_rendering():
    x, y = ScalarField.coordinate(PLANE, "x"), ScalarField.coordinate(PLANE, "y")
    assert str(x ** 2 * y - y + 3) == "x**2*y - y + 3"
    assert str(-x) == "-x"
    assert str(ScalarField.zero(PLANE)) == "0"


def test_chart_mismatch():
    other = make_chart(("u", "v"))
    with pytest.raises(ChartMismatchError):
        ScalarField.coordinate(PLANE, "x") + ScalarField.coordinate(other, "u")
    with pytest.raises(ChartMismatchError):
        ScalarField.coordinate(PLANE, "z")


def test_dimension_errors():
    with pytest.raises(DimensionError):
        ScalarField.one(PLANE).evaluate((1,))
    with pytest.raises(DimensionError):
        ScalarField.from_terms(PLANE, {(1,): 1})


def test_charts_are_memoized():
    assert make_chart(("x", "y")) is PLANE


def test_fiber_names_are_reserved():
    with pytest.raises(ValueError):
        make_chart(("x", "w1"))
    total = make_chart(("x", "y", "w1", "w2"))
    assert total.is_total
    assert total.base_positions == (0, 1)


def test_lift_restrict_and_split():
    total = make_chart(("x", "y", "w1", "w2"))
    x = ScalarField.coordinate(PLANE, "x")
    lifted = x.lift(total)
    assert lifted.restrict(PLANE) == x
    w1 = ScalarField.coordinate(total, "w1")
    with pytest.raises(ChartMismatchError):
        (lifted * w1).restrict(PLANE)
    split = (lifted * w1 + 2).split_fiber(PLANE)
    assert split == {(0, 0): ScalarField.constant(PLANE, 2), (1, 0): x}


def test_complex_arithmetic():
    x = ScalarField.coordinate(PLANE, "x")
    z = ComplexScalar(x, ScalarField.one(PLANE))
    assert z * z.conjugate() == ComplexScalar.real(x * x + 1)
    assert z.times_i() == ComplexScalar(-ScalarField.one(PLANE), x)
    assert format_complex(ComplexScalar.imaginary(ScalarField.constant(PLANE, -2))) == "-2i"
