"""
Tests for the classification of Hermitian forms and the Phi-bracket.
"""

from fractions import Fraction

import pytest

from fnlie.classify import (
    HermitianPair, h_map, hermitian_vector_bracket, j_map, jacobi_defect, jacobi_defect_closed_form,
    pair_two_form, phi_bracket,
)
from fnlie.connection import HermitianConnection, phi_form
from fnlie.errors import DegreeError, HermitianError
from fnlie.exterior import Decomposable, Form, TangentValuedForm, fn_bracket
from fnlie.qbundle import fn_bracket_proj, hermitian_from_parts, lift_base, vertical
from fnlie.scalar import ScalarField


def _field(chart, direction):
    return TangentValuedForm.coordinate_field(chart, direction)


def _vector_pair(chart, direction):
    return HermitianPair(_field(chart, direction), Form.zero(chart, 0))


@pytest.fixture
def connection(qplane):
    x = ScalarField.coordinate(qplane.base, "x")
    return HermitianConnection(qplane, Form.basis(qplane.base, (1,), x))


def test_pairing_is_halved(plane):
    area = Form.basis(plane, (0, 1))
    assert pair_two_form(area, _field(plane, 0), _field(plane, 1)) == Form.scalar(
        ScalarField.constant(plane, Fraction(1, 2)))
    bracket = phi_bracket(area, _vector_pair(plane, 0), _vector_pair(plane, 1))
    assert bracket.underline.is_zero
    assert bracket.bar == Form.scalar(ScalarField.constant(plane, Fraction(1, 2)))


def test_classify_horizontal_form(connection, qplane):
    base = qplane.base
    x = ScalarField.coordinate(base, "x")
    underline = TangentValuedForm.tensor(Form.basis(base, (1,)), _field(base, 1))
    xi = hermitian_from_parts(qplane, underline, Form.basis(base, (1,), x))
    pair = h_map(connection, xi)
    assert pair == HermitianPair(underline, Form.zero(base, 1))
    assert j_map(connection, pair) == xi


def test_classify_vertical_form(connection, qplane):
    base = qplane.base
    bar = Form.basis(base, (0,), ScalarField.coordinate(base, "y"))
    pair = h_map(connection, vertical(qplane, bar, "imaginary"))
    assert pair.underline.is_zero
    assert pair.bar == bar


def test_h_map_rejects_non_hermitian(connection, qplane):
    with pytest.raises(HermitianError):
        h_map(connection, vertical(qplane, Form.basis(qplane.base, (0,)), "real"))


def test_j_map_intertwines_brackets(connection, qplane):
    base = qplane.base
    y = ScalarField.coordinate(base, "y")
    first = HermitianPair(_field(base, 0), Form.scalar(y))
    second = HermitianPair(TangentValuedForm.vector_field(base, {1: y}), Form.zero(base, 0))
    bracket = phi_bracket(phi_form(connection), first, second)
    assert j_map(connection, bracket) == fn_bracket_proj(j_map(connection, first), j_map(connection, second))


def test_jacobi_defect_of_non_closed_form(space):
    x = ScalarField.coordinate(space, "x")
    phi = Form.basis(space, (1, 2), x)
    pairs = [_vector_pair(space, mu) for mu in range(3)]
    defect = jacobi_defect(phi, *pairs)
    half = Form.scalar(ScalarField.constant(space, Fraction(1, 2)))
    assert defect.underline.is_zero
    assert defect.bar == half
    one = Form.scalar(ScalarField.one(space))
    triple = tuple(Decomposable(one, _field(space, mu)) for mu in range(3))
    assert jacobi_defect_closed_form(phi, triple) == half


def test_closed_form_has_no_defect(space):
    phi = Form.basis(space, (0, 1))
    pairs = [_vector_pair(space, mu) for mu in range(3)]
    assert jacobi_defect(phi, *pairs).is_zero


def test_repeated_pair_has_no_defect(space):
    x, y, z = (ScalarField.coordinate(space, name) for name in ("x", "y", "z"))
    phi = Form.basis(space, (1, 2), x) + Form.basis(space, (0, 1), z)
    pair = HermitianPair(TangentValuedForm.vector_field(space, {1: x}), Form.scalar(y))
    defect = jacobi_defect(phi, pair, pair, pair)
    assert defect.underline.is_zero
    assert defect.bar.is_zero


def test_flat_vector_bracket(qplane):
    base = qplane.base
    x, y = ScalarField.coordinate(base, "x"), ScalarField.coordinate(base, "y")
    first = HermitianPair(TangentValuedForm.vector_field(base, {1: x}), Form.scalar(y))
    second = HermitianPair(_field(base, 0), Form.scalar(x * y))
    expected = hermitian_vector_bracket(first, second)
    assert expected.underline == fn_bracket(first.underline, second.underline)
    parts = [hermitian_from_parts(qplane, p.underline, p.bar) for p in (first, second)]
    assert fn_bracket_proj(*parts) == lift_base(qplane, expected.underline) + vertical(qplane, expected.bar)


def test_pair_validation(plane):
    with pytest.raises(DegreeError):
        HermitianPair(_field(plane, 0), Form.basis(plane, (0,)))
    with pytest.raises(DegreeError):
        hermitian_vector_bracket(HermitianPair.zero(plane, 1), HermitianPair.zero(plane, 0))
    pair = HermitianPair(_field(plane, 0), Form.zero(plane, 0))
    assert (pair - pair).is_zero
    assert -pair == HermitianPair(-_field(plane, 0), Form.zero(plane, 0))
