"""
Tests for the line bundle chart: projectable, linear and Hermitian forms.
"""

import pytest

from fnlie.errors import ChartMismatchError, LinearityError, ProjectabilityError
from fnlie.exterior import ComplexForm, Form, TangentValuedForm
from fnlie.qbundle import (
    ProjTVF, QChart, Section, VerticalCoform, VerticalValuedForm, complex_linearity_violation, complex_trace,
    embed, fn_bracket_proj, hermitian_decompose, hermitian_from_parts, hermitian_product, hermitian_violation,
    is_complex_linear, is_hermitian, is_real_linear, lie_metric, lie_section, lift_base, linearity_violation,
    liouville, metric, project, projectability_violation, vertical, vertical_lie,
)
from fnlie.scalar import ComplexScalar, ScalarField


def _x(qchart: QChart) -> ScalarField:
    return ScalarField.coordinate(qchart.base, "x")


def test_adapted_chart(qplane):
    assert qplane.total.names == ("x", "y", "w1", "w2")
    assert qplane.n == 2
    with pytest.raises(ChartMismatchError):
        QChart(qplane.total, qplane.total)


def test_liouville_fields_commute(qplane):
    real, imaginary = liouville(qplane, "real"), liouville(qplane, "imaginary")
    assert fn_bracket_proj(real, imaginary).is_zero
    assert imaginary.fiber_comps == {((), 0): -qplane.w(1), ((), 1): qplane.w(0)}
    with pytest.raises(ValueError):
        liouville(qplane, "dual")


def test_fiber_dependent_base_component_is_not_projectable(qplane):
    total = qplane.total
    xi = TangentValuedForm.vector_field(total, {0: qplane.w(0)})
    message, component, coordinate = projectability_violation(qplane, xi)
    assert coordinate == "w1"
    assert "depends on w1" in message
    with pytest.raises(ProjectabilityError) as excinfo:
        project(xi, qplane)
    assert excinfo.value.coordinate == "w1"


def test_fiber_leg_is_not_projectable(qplane):
    xi = TangentValuedForm(qplane.total, 1, {((2,), 0): ScalarField.one(qplane.total)})
    message, _, coordinate = projectability_violation(qplane, xi)
    assert coordinate == "w1"
    assert "form leg" in message


def test_project_and_embed(qplane):
    xi = lift_base(qplane, TangentValuedForm.coordinate_field(qplane.base, 0)) + liouville(qplane, "real")
    assert project(embed(xi), qplane) == xi
    assert xi.underline == TangentValuedForm.coordinate_field(qplane.base, 0)
    assert not xi.is_vertical


def test_linearity_diagnostics(qplane):
    square = ProjTVF(qplane, 0, {}, {((), 0): qplane.w(0) * qplane.w(0)})
    assert "not linear" in linearity_violation(square)
    assert not is_real_linear(square)

    stretch = ProjTVF(qplane, 0, {}, {((), 0): qplane.w(0)})
    assert is_real_linear(stretch)
    assert complex_linearity_violation(stretch) == "Xi^1_{1} = 1 != Xi^2_{2} = 0"
    assert is_complex_linear(liouville(qplane, "imaginary"))


def test_hermitian_conditions(qplane):
    real_vertical = vertical(qplane, Form.basis(qplane.base, (0,)), "real")
    assert hermitian_violation(real_vertical) == "Xi^1_{x,1} = 1 != 0"
    assert not is_hermitian(real_vertical)
    assert not lie_metric(real_vertical).is_zero

    underline = TangentValuedForm.tensor(Form.basis(qplane.base, (0,)),
                                         TangentValuedForm.coordinate_field(qplane.base, 0))
    bar = Form.basis(qplane.base, (0,), _x(qplane))
    xi = hermitian_from_parts(qplane, underline, bar)
    assert is_hermitian(xi)
    assert lie_metric(xi).is_zero
    assert hermitian_decompose(xi) == (underline, bar)


def test_complex_trace(qplane):
    theta = VerticalValuedForm.from_proj(vertical(qplane, Form.basis(qplane.base, (0,)), "imaginary"))
    assert complex_trace(theta) == ComplexForm(Form.zero(qplane.base, 1), Form.basis(qplane.base, (0,)))
    stretch = VerticalValuedForm(qplane, 0, {((), 0): qplane.w(0)})
    with pytest.raises(LinearityError):
        complex_trace(stretch)


def test_sections(qplane):
    base = qplane.base
    x, y = _x(qplane), ScalarField.coordinate(base, "y")
    psi = Section(qplane, ComplexScalar(x, y))
    along_x = lift_base(qplane, TangentValuedForm.coordinate_field(base, 0))
    assert lie_section(along_x, psi) == Section(qplane, ComplexScalar.real(ScalarField.one(base)))
    assert hermitian_product(psi, psi) == ComplexScalar.real(x * x + y * y)
    assert lie_section(liouville(qplane, "imaginary"), psi).psi == -psi.psi.times_i()
    with pytest.raises(LinearityError):
        lie_section(ProjTVF(qplane, 0, {}, {((), 0): qplane.w(0) * qplane.w(1)}), psi)


def test_wedge_with_base_form_keeps_hermitian(qplane):
    xi = hermitian_from_parts(qplane, TangentValuedForm.coordinate_field(qplane.base, 1),
                              Form.scalar(_x(qplane)))
    alpha = Form.basis(qplane.base, (0,))
    assert hermitian_violation(xi.wedge_left(alpha)) is None
    assert xi.wedge_left(alpha).degree == 1


def test_metric_at_the_unit_fiber_point(qplane):
    h = metric(qplane)
    value = h.component((), 0)
    point = (0, 0, 1, 0)
    assert (value.re.evaluate(point), value.im.evaluate(point)) == (1, 0)
    assert h.component((), 1).im.evaluate(point) == 1


def test_vertical_lie_derivative(qplane):
    total = qplane.total
    d_1 = VerticalCoform(qplane, 0, {((), 0): ComplexScalar.real(ScalarField.one(total))})
    assert vertical_lie(liouville(qplane, "real"), d_1) == d_1
    assert vertical_lie(ProjTVF.zero(qplane, 0), d_1).is_zero
    # L(I)h = 2h, L(iI)h = 0
    assert vertical_lie(liouville(qplane, "imaginary"), metric(qplane)).is_zero
    doubled = {slot: value + value for slot, value in metric(qplane).comps.items()}
    assert vertical_lie(liouville(qplane, "real"), metric(qplane)) == VerticalCoform(qplane, 0, doubled)
