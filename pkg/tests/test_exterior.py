"""
Tests for forms, tangent valued forms and the Frolicher-Nijenhuis bracket.
"""

import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fnlie.errors import ChartMismatchError, DegreeError, DimensionError
from fnlie.exterior import (
    Decomposable, Form, TangentValuedForm, apply_vector, coefficient_contraction, contract_vector, decompose,
    eval_on_vectors, ext_d, fn_bracket, fn_bracket_coordinate, fn_bracket_decomposables, identity_tvf,
    interior, lie_bracket, lie_form, sort_with_sign, wedge,
)
from fnlie.generators import Generator, GeneratorParams
from fnlie.scalar import ScalarField, make_chart

hypothesis_settings = settings(derandomize=True, deadline=None, max_examples=25)
seeds = st.integers(min_value=0, max_value=10 ** 6)


def _generator(seed: int, dim: int = 3) -> Generator:
    return Generator(random.Random(seed), GeneratorParams(dim=dim, max_degree=2, coeff_degree=2))


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@hypothesis_settings
@given(seeds)
def test_wedge_is_graded_commutative(seed):
    gen = _generator(seed)
    alpha, beta = gen.form(gen.base, gen.degree()), gen.form(gen.base, gen.degree())
    assert wedge(alpha, beta) == wedge(beta, alpha).scale(_sign(alpha.degree * beta.degree))


@hypothesis_settings
@given(seeds)
def test_d_squared_and_leibniz(seed):
    gen = _generator(seed)
    alpha, beta = gen.form(gen.base, gen.degree()), gen.form(gen.base, gen.degree())
    assert ext_d(ext_d(alpha)).is_zero
    expected = wedge(ext_d(alpha), beta) + wedge(alpha, ext_d(beta)).scale(_sign(alpha.degree))
    assert ext_d(wedge(alpha, beta)) == expected


@hypothesis_settings
@given(seeds)
def test_dual_route_bracket(seed):
    gen = _generator(seed, dim=2)
    xi, sigma = gen.tvf(gen.base, gen.degree()), gen.tvf(gen.base, gen.degree())
    assert fn_bracket(xi, sigma) == fn_bracket_coordinate(xi, sigma)


@hypothesis_settings
@given(seeds)
def test_identity_is_central(seed):
    gen = _generator(seed, dim=2)
    xi = gen.tvf(gen.base, gen.degree())
    identity = identity_tvf(gen.base)
    assert fn_bracket(identity, xi).is_zero
    alpha = gen.form(gen.base, gen.degree())
    assert lie_form(identity, alpha) == ext_d(alpha)


@hypothesis_settings
@given(seeds)
def test_vector_field_bracket_acts_as_the_commutator_of_derivations(seed):
    gen = _generator(seed)
    first, second = gen.vector_field(gen.base), gen.vector_field(gen.base)
    bracket = fn_bracket(first, second)
    for _ in range(10):
        f = gen.base_polynomial(gen.base, 3)
        expected = apply_vector(first, apply_vector(second, f)) - apply_vector(second, apply_vector(first, f))
        assert apply_vector(bracket, f) == expected


def _point(gen: Generator) -> tuple:
    return tuple(gen.rational() for _ in range(gen.base.dim))


@hypothesis_settings
@given(seeds)
def test_components_are_values_on_basis_vectors(seed):
    gen = _generator(seed)
    dim = gen.base.dim
    basis = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    alpha = gen.form(gen.base, gen.degree())
    point = _point(gen)
    for key in combinations(range(dim), alpha.degree):
        stored = alpha.comps.get(key)
        expected = stored.evaluate(point) if stored is not None else 0
        assert eval_on_vectors(alpha, [basis[i] for i in key], point) == expected


def _shuffle_sum(alpha: Form, beta: Form, vectors, point) -> Fraction:
    r, s = alpha.degree, beta.degree
    total = Fraction(0)
    for first in combinations(range(r + s), r):
        rest = tuple(i for i in range(r + s) if i not in first)
        sign, _ = sort_with_sign(first + rest)
        total += (sign * eval_on_vectors(alpha, [vectors[i] for i in first], point)
                  * eval_on_vectors(beta, [vectors[i] for i in rest], point))
    return total


@hypothesis_settings
@given(seeds)
def test_wedge_is_the_sum_over_shuffles(seed):
    gen = _generator(seed)
    alpha, beta = gen.form(gen.base, gen.degree()), gen.form(gen.base, gen.degree())
    vectors = [_point(gen) for _ in range(alpha.degree + beta.degree)]
    point = _point(gen)
    assert eval_on_vectors(wedge(alpha, beta), vectors, point) == _shuffle_sum(alpha, beta, vectors, point)


def test_vector_field_bracket_is_the_commutator(plane):
    x, y = ScalarField.coordinate(plane, "x"), ScalarField.coordinate(plane, "y")
    first = TangentValuedForm.vector_field(plane, {1: x})
    second = TangentValuedForm.vector_field(plane, {0: y})
    expected = TangentValuedForm.vector_field(plane, {0: x, 1: -y})
    assert fn_bracket(first, second) == expected
    assert lie_bracket(first, second) == expected


def test_constant_endomorphisms_commute(plane):
    one = ScalarField.one(plane)
    j = TangentValuedForm(plane, 1, {((0,), 1): one, ((1,), 0): -one})
    assert fn_bracket(j, j).is_zero


def test_decomposition_does_not_matter(plane):
    x = ScalarField.coordinate(plane, "x")
    xi = TangentValuedForm(plane, 1, {((0,), 1): x, ((1,), 0): x * x})
    sigma = TangentValuedForm.vector_field(plane, {0: x, 1: ScalarField.one(plane)})
    halves = [Decomposable(t.form.scale(Fraction(1, 2)), t.vector) for t in decompose(xi)]
    assert fn_bracket_decomposables(halves + halves, decompose(sigma), plane, 1, 0) == fn_bracket(xi, sigma)


def test_basis_sorting_sign(plane):
    assert sort_with_sign((1, 0)) == (-1, (0, 1))
    assert sort_with_sign((1, 1)) == (0, ())
    assert Form.basis(plane, (1, 0)) == -Form.basis(plane, (0, 1))
    assert Form.basis(plane, (0, 0)).is_zero


def test_contractions(plane):
    area = Form.basis(plane, (0, 1))
    d_x = TangentValuedForm.coordinate_field(plane, 0)
    assert contract_vector(d_x, area) == Form.basis(plane, (1,))
    assert coefficient_contraction(d_x, area) == Form.basis(plane, (1,)).scale(Fraction(1, 2))
    assert interior(identity_tvf(plane), area) == area.scale(2)


def test_evaluation_on_vectors(plane):
    area = Form.basis(plane, (0, 1), ScalarField.coordinate(plane, "x"))
    assert eval_on_vectors(area, [(1, 0), (0, 1)], (3, 0)) == 3
    assert eval_on_vectors(area, [(0, 1), (1, 0)], (3, 0)) == -3
    with pytest.raises(DimensionError):
        eval_on_vectors(area, [(1, 0)], (0, 0))


def test_validation(plane):
    with pytest.raises(ValueError):
        Form(plane, 2, {(1, 0): ScalarField.one(plane)})
    with pytest.raises(DegreeError):
        Form.zero(plane, 1) + Form.zero(plane, 2)
    with pytest.raises(ChartMismatchError):
        wedge(Form.zero(plane, 1), Form.zero(make_chart(("u",)), 1))


def test_wedge_beyond_dimension_vanishes(plane):
    dx = Form.basis(plane, (0,))
    area = Form.basis(plane, (0, 1))
    assert wedge(dx, area).is_zero
    assert wedge(dx, area).degree == 3
