"""
The Hermitian line bundle Q -> E in an adapted chart (x^l, w1, w2).

Projectable tangent valued forms on Q have form legs along the base only; they
are stored as a base part (on E) and a fiber part (on Q). Fiber directions are
indexed 0 and 1 internally and printed as 1 and 2.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

from .errors import ChartMismatchError, ConsistencyError, HermitianError, LinearityError, ProjectabilityError
from .exterior import (
    ComplexForm, Form, MultiIndex, TangentValuedForm, apply_vector, fn_bracket,
)
from .scalar import FIBER_NAMES, Chart, ComplexScalar, ScalarField, make_chart

logger = logging.getLogger(__name__)

FIBER = (0, 1)


def index_label(chart: Chart, key: MultiIndex) -> str:
    return ",".join(chart.names[i] for i in key)


@dataclass(frozen=True)
class QChart:
    """Adapted chart of Q: the base chart and the total chart with w1, w2 appended."""
    base: Chart
    total: Chart

    def __post_init__(self):
        if self.base.is_total:
            raise ChartMismatchError(f"Base chart {self.base} may not contain fiber coordinates")
        if self.total.names != self.base.names + FIBER_NAMES:
            raise ChartMismatchError(f"Total chart {self.total} must be {self.base} followed by {FIBER_NAMES}")

    @classmethod
    def over(cls, base: Chart) -> "QChart":
        return cls(base, make_chart(base.names + FIBER_NAMES))

    @property
    def n(self) -> int:
        return self.base.dim

    def fiber_position(self, a: int) -> int:
        return self.base.dim + a

    def w(self, a: int) -> ScalarField:
        return ScalarField.coordinate(self.total, self.fiber_position(a))


def _normalize_fiber(qchart: QChart, degree: int, comps: Mapping, complex_values: bool = False) -> Dict:
    normalized = {}
    for (key, a), value in comps.items():
        key = tuple(key)
        if len(key) != degree or any(b <= c for c, b in zip(key, key[1:])):
            raise ValueError(f"Multi-index {key} is not strictly increasing of length {degree}")
        if key and (key[0] < 0 or key[-1] >= qchart.n):
            raise ValueError(f"Multi-index {key} must range over base coordinates")
        if a not in FIBER:
            raise ValueError(f"Fiber direction must be 0 or 1, got {a}")
        if value.chart != qchart.total:
            raise ChartMismatchError(f"Fiber component lives on {value.chart}, expected {qchart.total}")
        if not value.is_zero:
            normalized[(key, a)] = value
    return dict(sorted(normalized.items()))


@dataclass(frozen=True)
class ProjTVF:
    """A projectable tangent valued r-form on Q with base form legs."""
    qchart: QChart
    degree: int
    base_comps: Mapping[Tuple[MultiIndex, int], ScalarField] = field(default_factory=dict)
    fiber_comps: Mapping[Tuple[MultiIndex, int], ScalarField] = field(default_factory=dict)

    def __post_init__(self):
        underline = TangentValuedForm(self.qchart.base, self.degree, self.base_comps)
        object.__setattr__(self, "base_comps", underline.comps)
        object.__setattr__(self, "fiber_comps", _normalize_fiber(self.qchart, self.degree, self.fiber_comps))

    @classmethod
    def zero(cls, qchart: QChart, degree: int) -> "ProjTVF":
        return cls(qchart, degree)

    @property
    def underline(self) -> TangentValuedForm:
        return TangentValuedForm(self.qchart.base, self.degree, self.base_comps)

    @property
    def is_zero(self) -> bool:
        return not self.base_comps and not self.fiber_comps

    @property
    def is_vertical(self) -> bool:
        return not self.base_comps

    def fiber_form(self, a: int) -> Form:
        return Form(self.qchart.total, self.degree,
                    {key: value for (key, b), value in self.fiber_comps.items() if b == a})

    def _combine(self, other: "ProjTVF", sign: int) -> "ProjTVF":
        if self.qchart != other.qchart or self.degree != other.degree:
            raise ChartMismatchError("Cannot combine projectable forms of different chart or degree")
        underline = self.underline + other.underline if sign > 0 else self.underline - other.underline
        fiber = dict(self.fiber_comps)
        for key, value in other.fiber_comps.items():
            value = value if sign > 0 else -value
            fiber[key] = fiber[key] + value if key in fiber else value
        return ProjTVF(self.qchart, self.degree, underline.comps, fiber)

    def __add__(self, other: "ProjTVF") -> "ProjTVF":
        return self._combine(other, 1)

    def __sub__(self, other: "ProjTVF") -> "ProjTVF":
        return self._combine(other, -1)

    def __neg__(self) -> "ProjTVF":
        return ProjTVF(self.qchart, self.degree,
                       {k: -v for k, v in self.base_comps.items()},
                       {k: -v for k, v in self.fiber_comps.items()})

    def wedge_left(self, alpha: Form) -> "ProjTVF":
        """alpha ^ Xi for a base form alpha."""
        return project(embed(self).wedge_left(alpha.lift(self.qchart.total)))


@dataclass(frozen=True)
class VerticalValuedForm:
    """A vertical valued r-form on Q: (multi-index, fiber direction) -> coefficient."""
    qchart: QChart
    degree: int
    comps: Mapping[Tuple[MultiIndex, int], ScalarField] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "comps", _normalize_fiber(self.qchart, self.degree, self.comps))

    @classmethod
    def from_proj(cls, xi: ProjTVF) -> "VerticalValuedForm":
        if not xi.is_vertical:
            raise ConsistencyError("Expected a vertical valued form, found a nonzero base part")
        return cls(xi.qchart, xi.degree, xi.fiber_comps)

    def as_proj(self) -> ProjTVF:
        return ProjTVF(self.qchart, self.degree, {}, self.comps)

    @property
    def is_zero(self) -> bool:
        return not self.comps

    def fiber_form(self, a: int) -> Form:
        return Form(self.qchart.total, self.degree,
                    {key: value for (key, b), value in self.comps.items() if b == a})

    @classmethod
    def from_fiber_forms(cls, qchart: QChart, degree: int, forms: Mapping[int, Form]) -> "VerticalValuedForm":
        comps = {}
        for a, form in forms.items():
            for key, value in form.comps.items():
                comps[(key, a)] = value
        return cls(qchart, degree, comps)

    def __add__(self, other: "VerticalValuedForm") -> "VerticalValuedForm":
        return VerticalValuedForm.from_proj(self.as_proj() + other.as_proj())

    def __sub__(self, other: "VerticalValuedForm") -> "VerticalValuedForm":
        return VerticalValuedForm.from_proj(self.as_proj() - other.as_proj())

    def __neg__(self) -> "VerticalValuedForm":
        return VerticalValuedForm(self.qchart, self.degree, {k: -v for k, v in self.comps.items()})


@dataclass(frozen=True)
class VerticalCoform:
    """A complex r-form with values in vertical covectors: (multi-index, a) -> complex coefficient."""
    qchart: QChart
    degree: int
    comps: Mapping[Tuple[MultiIndex, int], ComplexScalar] = field(default_factory=dict)

    def __post_init__(self):
        normalized = {}
        for (key, a), value in self.comps.items():
            if value.chart != self.qchart.total:
                raise ChartMismatchError(f"Covector component lives on {value.chart}, expected {self.qchart.total}")
            if a not in FIBER or len(key) != self.degree:
                raise ValueError(f"Invalid vertical covector slot {(key, a)}")
            if not value.is_zero:
                normalized[(tuple(key), a)] = value
        object.__setattr__(self, "comps", dict(sorted(normalized.items(), key=lambda item: item[0])))

    @property
    def is_zero(self) -> bool:
        return not self.comps

    def component(self, key: MultiIndex, a: int) -> ComplexScalar:
        return self.comps.get((tuple(key), a), ComplexScalar.zero(self.qchart.total))


@dataclass(frozen=True)
class Section:
    """A section psi b of the line bundle, psi = Psi^1 + i Psi^2 on E."""
    qchart: QChart
    psi: ComplexScalar

    def __post_init__(self):
        if self.psi.chart != self.qchart.base:
            raise ChartMismatchError(f"Section components must live on the base chart {self.qchart.base}")

    @property
    def components(self) -> Tuple[ScalarField, ScalarField]:
        return self.psi.re, self.psi.im

    def as_vertical_field(self) -> ProjTVF:
        """The vertical vector field Psi^a d_a on Q."""
        total = self.qchart.total
        return ProjTVF(self.qchart, 0, {}, {((), 0): self.psi.re.lift(total), ((), 1): self.psi.im.lift(total)})


# -- inclusion and projection -------------------------------------------------

def embed(xi: ProjTVF) -> TangentValuedForm:
    """The projectable form as a tangent valued form on the total chart."""
    qchart = xi.qchart
    comps = {(key, mu): value.lift(qchart.total) for (key, mu), value in xi.base_comps.items()}
    for (key, a), value in xi.fiber_comps.items():
        comps[(key, qchart.fiber_position(a))] = value
    return TangentValuedForm(qchart.total, xi.degree, comps)


def projectability_violation(qchart: QChart, xi: TangentValuedForm) -> Optional[Tuple[str, str, str]]:
    """First offending (message, component, coordinate), or None if projectable."""
    if xi.chart != qchart.total:
        raise ChartMismatchError(f"{xi.chart} is not the total chart {qchart.total}")
    n = qchart.n
    for (key, mu), value in xi.comps.items():
        component = f"Xi^{qchart.total.names[mu]}_{{{index_label(qchart.total, key)}}}"
        if key and key[-1] >= n:
            leg = qchart.total.names[key[-1]]
            return f"component {component} has a form leg along the fiber coordinate {leg}", component, leg
        if mu < n:
            for name in FIBER_NAMES:
                if value.depends_on(name):
                    return f"base component {component} = {value} depends on {name}", component, name
    return None


def project(xi: TangentValuedForm, qchart: Optional[QChart] = None) -> ProjTVF:
    """Read a tangent valued form on Q as a ProjTVF, or raise ProjectabilityError."""
    if qchart is None:
        if not xi.chart.is_total:
            raise ChartMismatchError(f"{xi.chart} is not a total chart")
        qchart = QChart.over(make_chart(xi.chart.names[:-2]))
    violation = projectability_violation(qchart, xi)
    if violation is not None:
        message, component, coordinate = violation
        raise ProjectabilityError(message, component, coordinate)
    n = qchart.n
    base, fiber = {}, {}
    for (key, mu), value in xi.comps.items():
        if mu < n:
            base[(key, mu)] = value.restrict(qchart.base)
        else:
            fiber[(key, mu - n)] = value
    return ProjTVF(qchart, xi.degree, base, fiber)


def fn_bracket_proj(xi: ProjTVF, sigma: ProjTVF) -> ProjTVF:
    """FN bracket of projectable forms, computed on Q and projected back."""
    if xi.qchart != sigma.qchart:
        raise ChartMismatchError("Projectable forms live on different charts")
    bracket = fn_bracket(embed(xi), embed(sigma))
    try:
        return project(bracket, xi.qchart)
    except ProjectabilityError as exc:
        raise ConsistencyError(f"FN bracket of projectable forms is not projectable: {exc}") from exc


# -- special fields -----------------------------------------------------------

def liouville(qchart: QChart, kind: str = "real") -> ProjTVF:
    """I = w1 d_1 + w2 d_2 (real) or iI = w1 d_2 - w2 d_1 (imaginary)."""
    w1, w2 = qchart.w(0), qchart.w(1)
    if kind == "real":
        return ProjTVF(qchart, 0, {}, {((), 0): w1, ((), 1): w2})
    if kind == "imaginary":
        return ProjTVF(qchart, 0, {}, {((), 0): -w2, ((), 1): w1})
    raise ValueError(f"Unknown Liouville kind '{kind}'")


def lift_base(qchart: QChart, underline: TangentValuedForm) -> ProjTVF:
    """The flat lift chi[b] of a base tangent valued form (zero fiber part)."""
    if underline.chart != qchart.base:
        raise ChartMismatchError(f"{underline.chart} is not the base chart {qchart.base}")
    return ProjTVF(qchart, underline.degree, underline.comps, {})


def vertical(qchart: QChart, xi: Form, kind: str = "imaginary") -> ProjTVF:
    """xi (x) I or i xi (x) I for a base form xi."""
    if xi.chart != qchart.base:
        raise ChartMismatchError(f"{xi.chart} is not the base chart {qchart.base}")
    liouville_field = liouville(qchart, kind)
    fiber = {}
    for key, value in xi.comps.items():
        lifted = value.lift(qchart.total)
        for (_, a), entry in liouville_field.fiber_comps.items():
            fiber[(key, a)] = lifted * entry
    return ProjTVF(qchart, xi.degree, {}, fiber)


def hermitian_from_parts(qchart: QChart, underline: TangentValuedForm, bar: Form) -> ProjTVF:
    """chi[b](underline) + i bar (x) I."""
    return lift_base(qchart, underline) + vertical(qchart, bar, "imaginary")


# -- linearity ----------------------------------------------------------------

FiberMatrix = Dict[MultiIndex, Dict[Tuple[int, int], ScalarField]]


def _fiber_matrix(qchart: QChart, comps: Mapping[Tuple[MultiIndex, int], ScalarField]) -> Tuple[Optional[FiberMatrix], Optional[str]]:
    # Xi^a_I = k[I][(a, b)] w^b with base-only k; None plus a reason otherwise
    matrix: FiberMatrix = {}
    for (key, a), value in comps.items():
        entry = matrix.setdefault(key, {})
        for (e1, e2), coefficient in value.split_fiber(qchart.base).items():
            if (e1, e2) == (1, 0):
                entry[(a, 0)] = coefficient
            elif (e1, e2) == (0, 1):
                entry[(a, 1)] = coefficient
            else:
                label = index_label(qchart.total, key)
                return None, f"Xi^{a + 1}_{{{label}}} = {value} is not linear in (w1, w2)"
    return matrix, None


def _entry(matrix: FiberMatrix, key: MultiIndex, a: int, b: int, base: Chart) -> ScalarField:
    return matrix.get(key, {}).get((a, b), ScalarField.zero(base))


def fiber_matrix(xi: ProjTVF) -> FiberMatrix:
    """Coefficients Xi^a_{I b} of a real-linear form; raises LinearityError otherwise."""
    matrix, reason = _fiber_matrix(xi.qchart, xi.fiber_comps)
    if matrix is None:
        raise LinearityError(reason)
    return matrix


def linearity_violation(xi: ProjTVF) -> Optional[str]:
    return _fiber_matrix(xi.qchart, xi.fiber_comps)[1]


def _complex_linearity_violation(qchart: QChart, matrix: FiberMatrix) -> Optional[str]:
    base = qchart.base
    for key in matrix:
        label = index_label(qchart.total, key)
        k11, k12 = _entry(matrix, key, 0, 0, base), _entry(matrix, key, 0, 1, base)
        k21, k22 = _entry(matrix, key, 1, 0, base), _entry(matrix, key, 1, 1, base)
        if k11 != k22:
            return f"Xi^1_{{{_slot(label, 1)}}} = {k11} != Xi^2_{{{_slot(label, 2)}}} = {k22}"
        if k21 != -k12:
            return f"Xi^2_{{{_slot(label, 1)}}} = {k21} != -Xi^1_{{{_slot(label, 2)}}} = {-k12}"
    return None


def _slot(label: str, b: int) -> str:
    return f"{label},{b}" if label else str(b)


def complex_linearity_violation(xi: ProjTVF) -> Optional[str]:
    matrix, reason = _fiber_matrix(xi.qchart, xi.fiber_comps)
    if matrix is None:
        return reason
    return _complex_linearity_violation(xi.qchart, matrix)


def is_real_linear(xi: ProjTVF) -> bool:
    return linearity_violation(xi) is None


def is_complex_linear(xi: ProjTVF) -> bool:
    return complex_linearity_violation(xi) is None


# -- metric and Hermitian forms -----------------------------------------------

def metric(qchart: QChart) -> VerticalCoform:
    """h = (w1 d1 + w2 d2) + i (w1 d2 - w2 d1) as a complex vertical covector field."""
    w1, w2 = qchart.w(0), qchart.w(1)
    return VerticalCoform(qchart, 0, {
        ((), 0): ComplexScalar(w1, -w2),
        ((), 1): ComplexScalar(w2, w1),
    })


def hermitian_product(phi: Section, psi: Section) -> ComplexScalar:
    """h(Phi, Psi) = conj(phi) psi."""
    return phi.psi.conjugate() * psi.psi


def vertical_lie(xi: ProjTVF, alpha: VerticalCoform) -> VerticalCoform:
    """L(Xi)alpha = (Xi^m d_m alpha_a + Xi^b d_b alpha_a + alpha_b d_a Xi^b) d^I (x) d^a."""
    qchart = xi.qchart
    if alpha.qchart != qchart or alpha.degree != 0:
        raise ChartMismatchError("vertical_lie expects a vertical covector field on the same chart")
    total = qchart.total
    keys = sorted({key for key, _ in xi.base_comps} | {key for key, _ in xi.fiber_comps})
    covector = {a: alpha.component((), a) for a in FIBER}
    comps = {}
    for key in keys:
        for a in FIBER:
            value = ComplexScalar.zero(total)
            for (k, mu), coefficient in xi.base_comps.items():
                if k == key:
                    value = value + covector[a].diff(mu) * coefficient.lift(total)
            for b in FIBER:
                fiber = xi.fiber_comps.get((key, b))
                if fiber is None:
                    continue
                value = value + covector[a].diff(qchart.fiber_position(b)) * fiber
                value = value + covector[b] * fiber.diff(qchart.fiber_position(a))
            comps[(key, a)] = value
    return VerticalCoform(qchart, xi.degree, comps)


def lie_metric(xi: ProjTVF) -> VerticalCoform:
    """L(Xi)h for a real-linear Xi, from the closed form in the fiber matrix."""
    qchart = xi.qchart
    matrix = fiber_matrix(xi)
    total = qchart.total
    w1, w2 = qchart.w(0), qchart.w(1)
    comps = {}
    for key in matrix:
        k11, k12, k21, k22 = (_entry(matrix, key, a, b, qchart.base).lift(total)
                              for a, b in ((0, 0), (0, 1), (1, 0), (1, 1)))
        trace = k11 + k22
        symmetric = k21 + k12
        comps[(key, 0)] = ComplexScalar(k11 * w1 * 2 + symmetric * w2, -(trace * w2))
        comps[(key, 1)] = ComplexScalar(k22 * w2 * 2 + symmetric * w1, trace * w1)
    return VerticalCoform(qchart, xi.degree, comps)


def hermitian_violation(xi: ProjTVF) -> Optional[str]:
    """First violated coordinate condition Xi^1_{I1} = Xi^2_{I2} = 0, Xi^2_{I1} = -Xi^1_{I2}."""
    matrix, reason = _fiber_matrix(xi.qchart, xi.fiber_comps)
    if matrix is None:
        return reason
    base = xi.qchart.base
    for key in matrix:
        label = index_label(xi.qchart.total, key)
        k11, k12 = _entry(matrix, key, 0, 0, base), _entry(matrix, key, 0, 1, base)
        k21, k22 = _entry(matrix, key, 1, 0, base), _entry(matrix, key, 1, 1, base)
        if not k11.is_zero:
            return f"Xi^1_{{{_slot(label, 1)}}} = {k11} != 0"
        if not k22.is_zero:
            return f"Xi^2_{{{_slot(label, 2)}}} = {k22} != 0"
        if k21 != -k12:
            return f"Xi^2_{{{_slot(label, 1)}}} = {k21} != -Xi^1_{{{_slot(label, 2)}}} = {-k12}"
    return None


def is_hermitian(xi: ProjTVF) -> bool:
    """L(Xi)h = 0, decided by the metric route and by the coordinate route."""
    by_metric = is_real_linear(xi) and lie_metric(xi).is_zero
    by_coordinates = hermitian_violation(xi) is None
    if by_metric != by_coordinates:
        raise ConsistencyError(f"Hermitian routes disagree: metric={by_metric}, coordinates={by_coordinates}")
    return by_metric


def hermitian_decompose(xi: ProjTVF) -> Tuple[TangentValuedForm, Form]:
    """(underline, bar) with Xi = chi[b](underline) + i bar (x) I."""
    if not is_hermitian(xi):
        raise HermitianError(f"Not Hermitian: {hermitian_violation(xi)}")
    qchart = xi.qchart
    matrix = fiber_matrix(xi)
    bar = Form(qchart.base, xi.degree, {key: _entry(matrix, key, 1, 0, qchart.base) for key in matrix})
    underline = xi.underline
    if hermitian_from_parts(qchart, underline, bar) != xi:
        raise ConsistencyError("Hermitian reconstruction does not reproduce the input")
    return underline, bar


def complex_trace(theta: VerticalValuedForm) -> ComplexForm:
    """tr_C of a vertical valued form that is complex linear in the fiber."""
    qchart = theta.qchart
    matrix, reason = _fiber_matrix(qchart, theta.comps)
    if matrix is None:
        raise LinearityError(reason)
    reason = _complex_linearity_violation(qchart, matrix)
    if reason is not None:
        raise LinearityError(reason)
    base = qchart.base
    re = Form(base, theta.degree, {key: _entry(matrix, key, 0, 0, base) for key in matrix})
    im = Form(base, theta.degree, {key: _entry(matrix, key, 1, 0, base) for key in matrix})
    return ComplexForm(re, im)


def lie_section(y: ProjTVF, psi: Section) -> Section:
    """L(Y)Psi = [Y, Psi~] read back as a section, for a real-linear vector field Y."""
    if y.degree != 0:
        raise ValueError("lie_section expects a vector field")
    if not is_real_linear(y):
        raise LinearityError(f"lie_section needs a real-linear vector field: {linearity_violation(y)}")
    bracket = fn_bracket_proj(y, psi.as_vertical_field())
    if not bracket.is_vertical:
        raise ConsistencyError("Bracket with a vertical field has a base part")
    base = y.qchart.base
    re = bracket.fiber_comps.get(((), 0), ScalarField.zero(y.qchart.total)).restrict(base)
    im = bracket.fiber_comps.get(((), 1), ScalarField.zero(y.qchart.total)).restrict(base)
    return Section(y.qchart, ComplexScalar(re, im))


def apply_base_vector(y: TangentValuedForm, z: ComplexScalar) -> ComplexScalar:
    """Y(z) for a base vector field Y and a complex function z."""
    return ComplexScalar(apply_vector(y, z.re), apply_vector(y, z.im))
