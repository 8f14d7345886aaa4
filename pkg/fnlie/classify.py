"""
Classification of Hermitian tangent valued forms through a Hermitian connection.

A Hermitian form Xi corresponds to the pair (Xi_underline, Xi_bar) of a base
tangent valued form and a base form. The FN bracket becomes the bracket of
pairs twisted by the closed 2-form Phi[c].
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .errors import ChartMismatchError, ConsistencyError, DegreeError, HermitianError
from .exterior import (
    Decomposable, Form, TangentValuedForm, apply_vector, coefficient_contraction, contract_vector,
    decompose, ext_d, fn_bracket, lie_bracket, lie_form, wedge,
)
from .qbundle import ProjTVF, complex_trace, hermitian_violation, is_hermitian, vertical
from .connection import HermitianConnection, horizontal_lift, nu

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HermitianPair:
    """A base tangent valued r-form and a base r-form."""
    underline: TangentValuedForm
    bar: Form

    def __post_init__(self):
        if self.underline.chart != self.bar.chart:
            raise ChartMismatchError(f"Pair components live on {self.underline.chart} and {self.bar.chart}")
        if self.underline.degree != self.bar.degree:
            raise DegreeError(f"Pair components have degrees {self.underline.degree} and {self.bar.degree}")

    @classmethod
    def zero(cls, chart, degree: int) -> "HermitianPair":
        return cls(TangentValuedForm.zero(chart, degree), Form.zero(chart, degree))

    @property
    def degree(self) -> int:
        return self.bar.degree

    @property
    def chart(self):
        return self.bar.chart

    @property
    def is_zero(self) -> bool:
        return self.underline.is_zero and self.bar.is_zero

    def __add__(self, other: "HermitianPair") -> "HermitianPair":
        return HermitianPair(self.underline + other.underline, self.bar + other.bar)

    def __sub__(self, other: "HermitianPair") -> "HermitianPair":
        return HermitianPair(self.underline - other.underline, self.bar - other.bar)

    def __neg__(self) -> "HermitianPair":
        return HermitianPair(-self.underline, -self.bar)


def j_map(c: HermitianConnection, pair: HermitianPair) -> ProjTVF:
    """j[c](Xi_underline, Xi_bar) = c(Xi_underline) + i Xi_bar (x) I."""
    return horizontal_lift(c, pair.underline) + vertical(c.qchart, pair.bar, "imaginary")


def h_map(c: HermitianConnection, xi: ProjTVF) -> HermitianPair:
    """h[c](Xi) = (Xi_underline, -i tr nu[c](Xi))."""
    if not is_hermitian(xi):
        raise HermitianError(f"Not Hermitian: {hermitian_violation(xi)}")
    trace = complex_trace(nu(c, xi))
    if not trace.re.is_zero:
        raise ConsistencyError("Trace of the vertical part of a Hermitian form is not imaginary")
    return HermitianPair(xi.underline, trace.im)


def two_form_pairing(phi: Form, x: TangentValuedForm, y: TangentValuedForm):
    """Y (contract) X (contract) Phi, i.e. half of Phi evaluated on (X, Y)."""
    return coefficient_contraction(y, coefficient_contraction(x, phi)).component(())


def pair_two_form_decomposables(phi: Form, first: Sequence[Decomposable], second: Sequence[Decomposable],
                                degree: int) -> Form:
    """Phi(sum first, sum second) with Phi(xi (x) X, sigma (x) Y) = (xi ^ sigma) Phi(X, Y)."""
    if phi.degree != 2:
        raise DegreeError(f"Expected a 2-form, got degree {phi.degree}")
    result = Form.zero(phi.chart, degree)
    for left in first:
        for right in second:
            product = wedge(left.form, right.form)
            if product.is_zero:
                continue
            result = result + product.scale(two_form_pairing(phi, left.vector, right.vector))
    return result


def pair_two_form(phi: Form, first: TangentValuedForm, second: TangentValuedForm) -> Form:
    return pair_two_form_decomposables(phi, decompose(first), decompose(second), first.degree + second.degree)


def phi_bracket(phi: Form, first: HermitianPair, second: HermitianPair) -> HermitianPair:
    """[P1, P2]_Phi = ([X1, X2], Phi(X1, X2) + L(X1)b2 - (-1)^{rs} L(X2)b1)."""
    if phi.chart != first.chart or phi.chart != second.chart:
        raise ChartMismatchError("phi_bracket operands live on different charts")
    r, s = first.degree, second.degree
    underline = fn_bracket(first.underline, second.underline)
    bar = pair_two_form(phi, first.underline, second.underline)
    bar = bar + lie_form(first.underline, second.bar)
    twist = lie_form(second.underline, first.bar)
    bar = bar + twist if (r * s) % 2 else bar - twist
    return HermitianPair(underline, bar)


def _graded_sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def jacobi_defect(phi: Form, first: HermitianPair, second: HermitianPair, third: HermitianPair) -> HermitianPair:
    """Graded cyclic Jacobi sum of the Phi-bracket."""
    a1, a2, a3 = first.degree, second.degree, third.degree
    terms = [
        (1, phi_bracket(phi, first, phi_bracket(phi, second, third))),
        (_graded_sign(a1 * (a2 + a3)), phi_bracket(phi, second, phi_bracket(phi, third, first))),
        (_graded_sign(a3 * (a1 + a2)), phi_bracket(phi, third, phi_bracket(phi, first, second))),
    ]
    total = HermitianPair.zero(phi.chart, a1 + a2 + a3)
    for sign, term in terms:
        total = total + term if sign > 0 else total - term
    return total


def jacobi_defect_closed_form(phi: Form, triple: Tuple[Decomposable, Decomposable, Decomposable]) -> Form:
    """1/2 dPhi(X1, X2, X3) xi1 ^ xi2 ^ xi3 for decomposable underlines."""
    d_phi = ext_d(phi)
    first, second, third = triple
    forms = wedge(wedge(first.form, second.form), third.form)
    if d_phi.is_zero or forms.is_zero:
        return Form.zero(phi.chart, forms.degree)
    value = contract_vector(third.vector, contract_vector(second.vector, contract_vector(first.vector, d_phi)))
    return forms.scale(value.component(()) * Fraction(1, 2))


def hermitian_vector_bracket(first: HermitianPair, second: HermitianPair) -> HermitianPair:
    """([X, Y], X.Y_bar - Y.X_bar) for degree 0 pairs under a flat basis."""
    if first.degree or second.degree:
        raise DegreeError("hermitian_vector_bracket expects degree 0 pairs")
    x, y = first.underline, second.underline
    bar = apply_vector(x, second.bar.component(())) - apply_vector(y, first.bar.component(()))
    return HermitianPair(lie_bracket(x, y), Form.scalar(bar))
