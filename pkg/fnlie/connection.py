"""
Connections on Q -> E, covariant exterior differential and curvature.

A connection is the projectable tangent valued 1-form
c = d^l (x) (d_l + c^a_l d_a) over the identity of E. A Hermitian connection
is stored through its real potential A, with c = d^l (x) (d_l + i A_l I).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .errors import ChartMismatchError, ConsistencyError, DegreeError, HermitianError, LinearityError
from .exterior import (
    ComplexForm, Form, MultiIndex, TangentValuedForm, alternating_sum, coefficient_contraction,
    decompose, ext_d, lie_form, sort_with_sign, wedge,
)
from .qbundle import (
    FIBER, ProjTVF, QChart, Section, VerticalValuedForm, complex_linearity_violation, complex_trace,
    fiber_matrix, fn_bracket_proj, hermitian_decompose, is_hermitian, linearity_violation,
)
from .scalar import ScalarField

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Connection:
    """General connection, c^a_l stored on the total chart keyed by (a, l)."""
    qchart: QChart
    comps: Mapping[Tuple[int, int], ScalarField] = field(default_factory=dict)

    def __post_init__(self):
        normalized = {}
        for (a, lam), value in self.comps.items():
            if a not in FIBER or not 0 <= lam < self.qchart.n:
                raise ValueError(f"Invalid connection slot ({a}, {lam})")
            if value.chart != self.qchart.total:
                raise ChartMismatchError(f"Connection component lives on {value.chart}, expected {self.qchart.total}")
            if not value.is_zero:
                normalized[(a, lam)] = value
        object.__setattr__(self, "comps", dict(sorted(normalized.items())))

    def component(self, a: int, lam: int) -> ScalarField:
        return self.comps.get((a, lam), ScalarField.zero(self.qchart.total))


@dataclass(frozen=True)
class HermitianConnection:
    """Hermitian connection given by its potential A (a real 1-form on E)."""
    qchart: QChart
    potential: Form

    def __post_init__(self):
        if self.potential.chart != self.qchart.base:
            raise ChartMismatchError(f"Potential lives on {self.potential.chart}, expected {self.qchart.base}")
        if self.potential.degree != 1:
            raise DegreeError(f"Potential must be a 1-form, got degree {self.potential.degree}")

    @property
    def connection(self) -> Connection:
        total = self.qchart.total
        w1, w2 = self.qchart.w(0), self.qchart.w(1)
        comps = {}
        for (lam,), value in self.potential.comps.items():
            lifted = value.lift(total)
            comps[(0, lam)] = -(lifted * w2)
            comps[(1, lam)] = lifted * w1
        return Connection(self.qchart, comps)


def _as_connection(c) -> Connection:
    return c.connection if isinstance(c, HermitianConnection) else c


def flat_connection(qchart: QChart) -> Connection:
    """The connection chi[b] with vanishing fiber components."""
    return Connection(qchart, {})


def as_tvf(c) -> ProjTVF:
    c = _as_connection(c)
    one = ScalarField.one(c.qchart.base)
    base = {((lam,), lam): one for lam in range(c.qchart.n)}
    fiber = {((lam,), a): value for (a, lam), value in c.comps.items()}
    return ProjTVF(c.qchart, 1, base, fiber)


def _check_qchart(c: Connection, xi) -> None:
    if c.qchart != xi.qchart:
        raise ChartMismatchError("Connection and form live on different charts")


def nu(c, xi: ProjTVF) -> VerticalValuedForm:
    """nu[c](Xi), fiber components Xi^a_I - c^a_r Xi^r_I."""
    c = _as_connection(c)
    _check_qchart(c, xi)
    total = c.qchart.total
    comps: Dict[Tuple[MultiIndex, int], ScalarField] = dict(xi.fiber_comps)
    for (key, rho), value in xi.base_comps.items():
        lifted = value.lift(total)
        for a in FIBER:
            coefficient = c.comps.get((a, rho))
            if coefficient is None:
                continue
            term = -(coefficient * lifted)
            comps[(key, a)] = comps[(key, a)] + term if (key, a) in comps else term
    return VerticalValuedForm(c.qchart, xi.degree, comps)


def horizontal_lift(c, underline: TangentValuedForm) -> ProjTVF:
    """c(Xi): base part Xi, fiber part c^a_m Xi^m_I."""
    c = _as_connection(c)
    if underline.chart != c.qchart.base:
        raise ChartMismatchError(f"{underline.chart} is not the base chart {c.qchart.base}")
    total = c.qchart.total
    fiber: Dict[Tuple[MultiIndex, int], ScalarField] = {}
    for (key, mu), value in underline.comps.items():
        lifted = value.lift(total)
        for a in FIBER:
            coefficient = c.comps.get((a, mu))
            if coefficient is None:
                continue
            term = coefficient * lifted
            fiber[(key, a)] = fiber[(key, a)] + term if (key, a) in fiber else term
    return ProjTVF(c.qchart, underline.degree, underline.comps, fiber)


def cov_ext_diff(c, xi: ProjTVF) -> VerticalValuedForm:
    """d[c]Xi = [c, Xi]."""
    c = _as_connection(c)
    _check_qchart(c, xi)
    bracket = fn_bracket_proj(as_tvf(c), xi)
    if not bracket.is_vertical:
        raise ConsistencyError("Covariant exterior differential has a base part")
    return VerticalValuedForm.from_proj(bracket)


def _all_tuple(comps: Mapping, indices: Sequence[int], slot: int, degree: int, chart) -> Optional[ScalarField]:
    sign, key = sort_with_sign(indices)
    if not sign:
        return None
    value = comps.get((key, slot))
    if value is None:
        return None
    return value.lift(chart) * Fraction(sign, factorial(degree))


def _cov_ext_diff_summand(c: Connection, xi: ProjTVF, a: int, lam: Tuple[int, ...]) -> ScalarField:
    qchart = c.qchart
    total = qchart.total
    r = xi.degree
    first, rest = lam[0], lam[1:]
    result = ScalarField.zero(total)
    fiber_a = _all_tuple(xi.fiber_comps, rest, a, r, total)
    if fiber_a is not None:
        result = result + fiber_a.diff(first)
        for b in FIBER:
            result = result + c.component(b, first) * fiber_a.diff(qchart.fiber_position(b))
    for rho in range(qchart.n):
        base_rho = _all_tuple(xi.base_comps, rest, rho, r, total)
        if base_rho is None:
            continue
        result = result - base_rho.diff(first) * c.component(a, rho)
        result = result - c.component(a, first).diff(rho) * base_rho
    for b in FIBER:
        fiber_b = _all_tuple(xi.fiber_comps, rest, b, r, total)
        if fiber_b is not None:
            result = result - c.component(a, first).diff(qchart.fiber_position(b)) * fiber_b
    return result


def cov_ext_diff_coordinate(c, xi: ProjTVF) -> VerticalValuedForm:
    """d[c]Xi from its coordinate expression."""
    c = _as_connection(c)
    _check_qchart(c, xi)
    degree = xi.degree + 1
    comps = {}
    if degree <= c.qchart.n:
        for key in combinations(range(c.qchart.n), degree):
            for a in FIBER:
                comps[(key, a)] = alternating_sum(key, lambda lam: _cov_ext_diff_summand(c, xi, a, lam))
    return VerticalValuedForm(c.qchart, degree, comps)


def curvature(c) -> VerticalValuedForm:
    """R[c] = -[c, c]."""
    c = _as_connection(c)
    tvf = as_tvf(c)
    bracket = fn_bracket_proj(tvf, tvf)
    if not bracket.is_vertical:
        raise ConsistencyError("Curvature has a base part")
    return -VerticalValuedForm.from_proj(bracket)


def curvature_coordinate(c) -> VerticalValuedForm:
    """R[c] from -2 (d_l c^a_m + c^b_l d_b c^a_m) d^l ^ d^m (x) d_a."""
    c = _as_connection(c)
    qchart = c.qchart

    def half(a: int, lam: int, mu: int) -> ScalarField:
        value = c.component(a, mu).diff(lam)
        for b in FIBER:
            value = value + c.component(b, lam) * c.component(a, mu).diff(qchart.fiber_position(b))
        return value

    comps = {}
    for lam, mu in combinations(range(qchart.n), 2):
        for a in FIBER:
            comps[((lam, mu), a)] = (half(a, lam, mu) - half(a, mu, lam)) * -2
    return VerticalValuedForm(qchart, 2, comps)


def contract_curvature(underline: TangentValuedForm, r: VerticalValuedForm) -> VerticalValuedForm:
    """Xi (contract) R, with (xi (x) X) (contract) R = (-1)^deg xi ^ (X (contract) R)."""
    qchart = r.qchart
    if underline.chart != qchart.base:
        raise ChartMismatchError(f"{underline.chart} is not the base chart {qchart.base}")
    total = qchart.total
    degree = underline.degree + r.degree - 1
    forms = {a: Form.zero(total, degree) for a in FIBER}
    sign = -1 if underline.degree % 2 else 1
    for term in decompose(underline):
        vector = term.vector.lift(total)
        xi = term.form.lift(total)
        for a in FIBER:
            part = wedge(xi, coefficient_contraction(vector, r.fiber_form(a)))
            forms[a] = forms[a] + (part if sign > 0 else -part)
    return VerticalValuedForm.from_fiber_forms(qchart, degree, forms)


def pair_curvature(r: VerticalValuedForm, first: TangentValuedForm, second: TangentValuedForm) -> VerticalValuedForm:
    """R(Xi, Sigma), with R(xi (x) X, sigma (x) Y) = (xi ^ sigma) (x) (Y (contract) X (contract) R)."""
    qchart = r.qchart
    if r.degree != 2:
        raise DegreeError(f"pair_curvature expects a vertical valued 2-form, got degree {r.degree}")
    total = qchart.total
    degree = first.degree + second.degree
    forms = {a: Form.zero(total, degree) for a in FIBER}
    for left in decompose(first):
        x = left.vector.lift(total)
        for right in decompose(second):
            y = right.vector.lift(total)
            product = wedge(left.form.lift(total), right.form.lift(total))
            if product.is_zero:
                continue
            for a in FIBER:
                value = coefficient_contraction(y, coefficient_contraction(x, r.fiber_form(a))).component(())
                forms[a] = forms[a] + product.scale(value)
    return VerticalValuedForm.from_fiber_forms(qchart, degree, forms)


def is_hermitian_connection(c) -> Tuple[bool, Optional[Form]]:
    """Whether nabla h = 0, and the potential A_l = c^2_{l1} when it holds."""
    c = _as_connection(c)
    tvf = as_tvf(c)
    reason = linearity_violation(tvf)
    if reason is not None:
        raise LinearityError(f"Connection is not linear: {reason}")
    if not is_hermitian(tvf):
        return False, None
    matrix = fiber_matrix(tvf)
    base = c.qchart.base
    potential = Form(base, 1, {key: entries[(1, 0)] for key, entries in matrix.items() if (1, 0) in entries})
    return True, potential


def is_complex_linear_connection(c) -> bool:
    """Complex linearity of c, i.e. nabla(i psi) = i nabla psi for every section."""
    c = _as_connection(c)
    return complex_linearity_violation(as_tvf(c)) is None


def nabla_section(c: HermitianConnection, psi: Section) -> ComplexForm:
    """nabla Psi = (d_l psi - i A_l psi) d^l (x) b."""
    if c.qchart != psi.qchart:
        raise ChartMismatchError("Connection and section live on different charts")
    differential = ComplexForm.differential(psi.psi)
    twist = ComplexForm.real(c.potential).scale(psi.psi).times_i()
    return differential - twist


def nabla_section_general(c, psi: Section) -> ComplexForm:
    """(d_l psi^a - c^a_{lb} psi^b) d^l for a real-linear connection."""
    c = _as_connection(c)
    if c.qchart != psi.qchart:
        raise ChartMismatchError("Connection and section live on different charts")
    tvf = as_tvf(c)
    matrix = fiber_matrix(tvf)
    base = c.qchart.base
    components = psi.components
    parts = []
    for a in FIBER:
        form = ext_d(Form.scalar(components[a]))
        comps = {}
        for key, entries in matrix.items():
            value = ScalarField.zero(base)
            for b in FIBER:
                if (a, b) in entries:
                    value = value + entries[(a, b)] * components[b]
            comps[key] = value
        parts.append(form - Form(base, 1, comps))
    return ComplexForm(parts[0], parts[1])


def phi_form(c: HermitianConnection) -> Form:
    """Phi[c] = 2 dA."""
    return ext_d(c.potential).scale(2)


def phi_form_via_trace(c: HermitianConnection) -> Form:
    """Phi[c] = i tr R[c]."""
    trace = complex_trace(curvature(c)).times_i()
    if not trace.im.is_zero:
        raise ConsistencyError("i tr R[c] is not real for a Hermitian connection")
    return trace.re.restrict(c.qchart.base)


def hermitian_cov_diff(c: HermitianConnection, xi: ProjTVF) -> Form:
    """The base form of d[c]Xi = i (dXi_bar - (-1)^r L(Xi_underline)A) (x) I."""
    if c.qchart != xi.qchart:
        raise ChartMismatchError("Connection and form live on different charts")
    if not is_hermitian(xi):
        raise HermitianError("hermitian_cov_diff needs a Hermitian tangent valued form")
    underline, bar = hermitian_decompose(xi)
    twist = lie_form(underline, c.potential)
    return ext_d(bar) - twist if xi.degree % 2 == 0 else ext_d(bar) + twist

