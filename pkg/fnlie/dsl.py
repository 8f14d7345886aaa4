"""
Model files: a small line-oriented language for charts, forms, tangent valued
forms, sections and connections.

Parsing is done by a lark LALR parser (grammar in ``grammar.lark``); the parse
tree is transformed into ``Expr`` nodes carrying source positions, and every
definition is type-checked by evaluating it when the model is loaded.
``format_model`` prints the canonical form of a model, ``dump_model`` renders
computed objects back into a loadable model.
"""

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

import lark

from .classify import HermitianPair
from .connection import (
    Connection, HermitianConnection, as_tvf, cov_ext_diff, curvature, horizontal_lift,
    nabla_section, nabla_section_general, nu, phi_form,
)
from .errors import (
    ChartMismatchError, DegreeError, FnlieError, ModelSyntaxError, ModelTypeError,
    ProjectabilityError, UnknownNameError,
)
from .exterior import (
    ComplexForm, Decomposable, Form, TangentValuedForm, ext_d, fn_bracket, identity_tvf, interior, lie_form, wedge,
)
from .qbundle import (
    ProjTVF, QChart, Section, embed, fn_bracket_proj, lie_metric, lie_section, liouville, project,
)
from .scalar import FIBER_NAMES, ComplexScalar, ScalarField, make_chart

logger = logging.getLogger(__name__)

KINDS = ("form", "tvf", "projtvf", "section", "connection")
RESERVED = {"d", "i", "I", "iI", "chart", "hermitian"} | set(KINDS) | set(FIBER_NAMES)

PRECEDENCE = {
    "add": 1, "sub": 1,
    "wedge": 2,
    "mul": 3, "div": 3,
    "neg": 4,
    "pow": 5,
}
BINARY = {"add": " + ", "sub": " - ", "wedge": " ^ ", "mul": "*", "div": "/"}
ATOMS = {"liouville": "I", "imaginary_liouville": "iI", "imaginary_unit": "i"}


# -- syntax tree --------------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    """Expression node; ``value`` holds literals, names, call targets and exponents."""
    op: str
    args: Tuple["Expr", ...] = ()
    value: Optional[str] = None
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ChartDecl:
    name: str
    coordinates: Tuple[str, ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Definition:
    kind: str
    name: str
    degree: Optional[int]
    expr: Expr
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass
class ModelFile:
    """A parsed and type-checked model; ``objects`` maps names to computed values."""
    chart: ChartDecl
    definitions: Tuple[Definition, ...] = ()
    objects: Dict[str, object] = field(default_factory=dict, compare=False, repr=False)

    @property
    def qchart(self) -> QChart:
        return QChart.over(make_chart(self.chart.coordinates))

    def get(self, name: str, line: int = 0, column: int = 0):
        if name not in self.objects:
            raise UnknownNameError(f"Unknown name '{name}'", line, column)
        return self.objects[name]


def _position(token) -> Tuple[int, int]:
    return getattr(token, "line", 0) or 0, getattr(token, "column", 0) or 0


class _ToAst(lark.Transformer):
    """Turns the lark parse tree into Expr / Definition / ChartDecl nodes."""

    def _binary(op):
        def build(self, children):
            left, right = children
            return Expr(op, (left, right), None, left.line, left.column)
        return build

    add = _binary("add")
    sub = _binary("sub")
    wedge = _binary("wedge")
    mul = _binary("mul")
    div = _binary("div")
    del _binary

    def neg(self, children):
        (child,) = children
        return Expr("neg", (child,), None, max(child.line, 1), max(child.column - 1, 1))

    def pow(self, children):
        base, exponent = children
        return Expr("pow", (base,), str(exponent), base.line, base.column)

    def number(self, children):
        (token,) = children
        return Expr("number", (), str(int(token)), *_position(token))

    def name(self, children):
        (token,) = children
        return Expr("name", (), str(token), *_position(token))

    def differential(self, children):
        prefix, token = children
        return Expr("differential", (), str(token), *_position(prefix))

    def direction(self, children):
        prefix, token = children
        return Expr("direction", (), str(token), *_position(prefix))

    def liouville(self, children):
        return Expr("liouville", (), None, *_position(children[0]))

    def imaginary_liouville(self, children):
        return Expr("imaginary_liouville", (), None, *_position(children[0]))

    def imaginary_unit(self, children):
        return Expr("imaginary_unit", (), None, *_position(children[0]))

    def call(self, children):
        target, arguments = children
        return Expr("call", tuple(arguments or ()), str(target), *_position(target))

    def arguments(self, children):
        return list(children)

    def expression(self, children):
        return children[0]

    def kind(self, children):
        return children[0]

    def chart_decl(self, children):
        name, *coordinates = children
        return ChartDecl(str(name), tuple(str(c) for c in coordinates), *_position(name))

    def definition(self, children):
        kind, name, degree, expr = children
        return Definition(str(kind), str(name), int(degree) if degree is not None else None, expr,
                          *_position(kind))

    def model(self, children):
        return list(children)


@functools.lru_cache(maxsize=None)
def _parser() -> lark.Lark:
    return lark.Lark.open("grammar.lark", rel_to=__file__, parser="lalr",
                          start=["model", "expression"], maybe_placeholders=True)


def _parse(text: str, start: str):
    try:
        tree = _parser().parse(text, start=start)
    except lark.exceptions.UnexpectedInput as exc:
        line = exc.line if exc.line and exc.line > 0 else text.count("\n") + 1
        column = exc.column if exc.column and exc.column > 0 else 1
        if isinstance(exc, lark.exceptions.UnexpectedCharacters):
            message = f"unexpected character {exc.char!r}"
        elif isinstance(exc, lark.exceptions.UnexpectedEOF):
            message = "unexpected end of input"
        else:
            message = f"unexpected {exc.token.type} {str(exc.token)!r}" if exc.token.type != "$END" \
                else "unexpected end of input"
        raise ModelSyntaxError(message, line, column) from None
    return _ToAst().transform(tree)


def parse_expression(text: str) -> Expr:
    return _parse(text, "expression")


def parse_model(text: str) -> ModelFile:
    """Parse and type-check a model; errors carry line and column."""
    statements = _parse(text, "model")
    if not statements:
        raise ModelSyntaxError("empty model, expected a chart declaration", 1, 1)
    chart, *rest = statements
    if not isinstance(chart, ChartDecl):
        raise ModelSyntaxError("a model must start with a chart declaration", chart.line, chart.column)
    for statement in rest:
        if isinstance(statement, ChartDecl):
            raise ModelSyntaxError("only one chart declaration is allowed", statement.line, statement.column)
    _check_chart(chart)
    model = ModelFile(chart, tuple(rest))
    _Evaluator(model).load()
    return model


def load_model(path: Union[str, Path]) -> ModelFile:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def _check_chart(chart: ChartDecl) -> None:
    seen = set()
    for name in chart.coordinates:
        if name in RESERVED:
            raise ModelTypeError(f"'{name}' is reserved and cannot name a coordinate", chart.line, chart.column)
        if name in seen:
            raise ModelTypeError(f"duplicate coordinate '{name}'", chart.line, chart.column)
        seen.add(name)


# -- canonical printing -------------------------------------------------------

def _precedence(expr: Expr) -> int:
    return PRECEDENCE.get(expr.op, 6)


def format_expr(expr: Expr) -> str:
    op = expr.op
    if op in ("number", "name"):
        return expr.value
    if op == "differential":
        return f"d {expr.value}"
    if op == "direction":
        return f"@{expr.value}"
    if op in ATOMS:
        return ATOMS[op]
    if op == "call":
        return f"{expr.value}({', '.join(format_expr(a) for a in expr.args)})"
    if op == "neg":
        (child,) = expr.args
        text = format_expr(child)
        return f"-({text})" if _precedence(child) < PRECEDENCE["neg"] else f"-{text}"
    if op == "pow":
        (base,) = expr.args
        text = format_expr(base)
        return f"({text})**{expr.value}" if _precedence(base) < 6 else f"{text}**{expr.value}"
    left, right = expr.args
    own = PRECEDENCE[op]
    left_text = format_expr(left)
    right_text = format_expr(right)
    if _precedence(left) < own:
        left_text = f"({left_text})"
    if _precedence(right) <= own:
        right_text = f"({right_text})"
    return f"{left_text}{BINARY[op]}{right_text}"


def format_definition(definition: Definition) -> str:
    degree = f":{definition.degree}" if definition.degree is not None else ""
    return f"{definition.kind} {definition.name}{degree} = {format_expr(definition.expr)}"


def format_chart(chart: ChartDecl) -> str:
    return f"chart {chart.name}({', '.join(chart.coordinates)})"


def format_model(model: ModelFile) -> str:
    lines = [format_chart(model.chart)]
    lines.extend(format_definition(d) for d in model.definitions)
    return "\n".join(lines) + "\n"


# -- evaluation ---------------------------------------------------------------

Real = Union[Form, TangentValuedForm]


@dataclass(frozen=True)
class Value:
    """A complex (tangent valued) form on the total chart, stored as two real parts."""
    re: Real
    im: Real

    @property
    def is_vector(self) -> bool:
        return isinstance(self.re, TangentValuedForm)

    @property
    def degree(self) -> int:
        return self.re.degree

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    def scalar(self) -> ComplexScalar:
        return ComplexScalar(self.re.component(()), self.im.component(()))


def _real_value(real: Real) -> Value:
    return Value(real, real.scale(0))


def _scalar_value(z: ComplexScalar) -> Value:
    return Value(Form.scalar(z.re), Form.scalar(z.im))


def _scale(value: Value, z: ComplexScalar) -> Value:
    return Value(value.re.scale(z.re) - value.im.scale(z.im), value.re.scale(z.im) + value.im.scale(z.re))


def _wedge(left: Value, right: Value) -> Value:
    if right.is_vector:
        def product(a, b):
            return b.wedge_left(a)
    else:
        product = wedge
    return Value(product(left.re, right.re) - product(left.im, right.im),
                 product(left.re, right.im) + product(left.im, right.re))


class _Evaluator:
    """Evaluates expressions of one model on its total chart."""

    def __init__(self, model: ModelFile):
        self.model = model
        self.qchart = model.qchart
        self.total = self.qchart.total

    def _error(self, expr, message: str, kind=ModelTypeError):
        return kind(message, expr.line, expr.column)

    # definitions

    def load(self) -> None:
        for definition in self.model.definitions:
            if definition.name in RESERVED or definition.name in self.model.chart.coordinates:
                raise self._error(definition, f"'{definition.name}' is reserved or names a coordinate")
            if definition.name in self.model.objects:
                raise self._error(definition, f"duplicate definition '{definition.name}'")
            logger.debug(f"Evaluating {definition.kind} {definition.name}")
            self.model.objects[definition.name] = self.define(definition)

    def define(self, definition: Definition):
        kind = definition.kind
        if kind in ("form", "tvf", "projtvf") and definition.degree is None:
            raise self._error(definition, f"{kind} '{definition.name}' needs a degree annotation")
        if kind == "connection" and definition.expr.op == "call" and definition.expr.value == "hermitian":
            return self._hermitian_connection(definition)
        value = self.value(definition.expr)
        degree = definition.degree
        if kind == "section":
            degree = 0 if degree is None else degree
        elif kind == "connection":
            degree = 1 if degree is None else degree
        if value.is_zero and not value.is_vector and value.degree == 0:
            value = self._zero(kind, degree)
        if value.degree != degree:
            raise self._error(definition, f"degree mismatch: declared {degree}, actual {value.degree}")
        try:
            if kind == "form":
                return self.realize_form(definition.expr, value)
            if kind == "tvf":
                return self.realize_tvf(definition.expr, value)
            if kind == "projtvf":
                return self.realize_proj(definition.expr, value)
            if kind == "section":
                return self.realize_section(definition.expr, value)
            return self.realize_connection(definition.expr, value)
        except ModelTypeError as exc:
            raise ModelTypeError(f"{kind} '{definition.name}': {exc.message}", definition.line, definition.column) \
                from None

    def _zero(self, kind: str, degree: int) -> Value:
        if kind in ("form", "section"):
            return _real_value(Form.zero(self.total, degree))
        return _real_value(TangentValuedForm.zero(self.total, degree))

    def _hermitian_connection(self, definition: Definition) -> HermitianConnection:
        arguments = definition.expr.args
        if len(arguments) != 1:
            raise self._error(definition.expr, "hermitian() takes exactly one argument")
        value = self.value(arguments[0])
        if value.is_zero and not value.is_vector:
            value = _real_value(Form.zero(self.total, 1))
        if value.degree != 1:
            raise self._error(arguments[0], f"potential must be a 1-form, got degree {value.degree}")
        return HermitianConnection(self.qchart, self.realize_form(arguments[0], value))

    # realization of values as domain objects

    def realize_form(self, expr: Expr, value: Value) -> Form:
        if value.is_vector:
            raise self._error(expr, "expected a form, found a tangent valued form")
        if not value.im.is_zero:
            raise self._error(expr, "form has a nonzero imaginary part")
        try:
            return value.re.restrict(self.qchart.base)
        except ChartMismatchError as exc:
            raise self._error(expr, f"form does not live on the base: {exc}") from None

    def realize_section(self, expr: Expr, value: Value) -> Section:
        if value.is_vector or value.degree != 0:
            raise self._error(expr, "a section is a complex function")
        try:
            return Section(self.qchart, value.scalar().restrict(self.qchart.base))
        except ChartMismatchError as exc:
            raise self._error(expr, f"section does not live on the base: {exc}") from None

    def realize_total_tvf(self, expr: Expr, value: Value) -> TangentValuedForm:
        if not value.is_vector:
            raise self._error(expr, "expected a tangent valued form, found a form")
        n = self.qchart.n
        comps: Dict = {}

        def add(slot, term):
            comps[slot] = comps[slot] + term if slot in comps else term

        for (key, mu), coefficient in value.re.comps.items():
            add((key, mu), coefficient)
        # i acts on vertical directions as the complex structure J d_1 = d_2, J d_2 = -d_1
        for (key, mu), coefficient in value.im.comps.items():
            if mu < n:
                raise self._error(expr, f"direction @{self.total.names[mu]} has an imaginary coefficient")
            if mu == n:
                add((key, n + 1), coefficient)
            else:
                add((key, n), -coefficient)
        return TangentValuedForm(self.total, value.degree, comps)

    def realize_tvf(self, expr: Expr, value: Value) -> TangentValuedForm:
        tvf = self.realize_total_tvf(expr, value)
        try:
            return tvf.restrict(self.qchart.base)
        except ChartMismatchError:
            return tvf

    def realize_proj(self, expr: Expr, value: Value) -> ProjTVF:
        tvf = self.realize_total_tvf(expr, value)
        try:
            return project(tvf, self.qchart)
        except ProjectabilityError as exc:
            raise self._error(expr, f"not projectable: {exc}") from None

    def realize_connection(self, expr: Expr, value: Value) -> Connection:
        proj = self.realize_proj(expr, value)
        if proj.underline != identity_tvf(self.qchart.base):
            raise self._error(expr, "a connection must project onto the identity of the base")
        comps = {(a, key[0]): coefficient for (key, a), coefficient in proj.fiber_comps.items()}
        return Connection(self.qchart, comps)

    # expression values

    def object_value(self, obj, expr: Expr) -> Value:
        total = self.total
        if isinstance(obj, Form):
            return _real_value(obj.lift(total))
        if isinstance(obj, TangentValuedForm):
            return _real_value(obj.lift(total))
        if isinstance(obj, ProjTVF):
            return _real_value(embed(obj))
        if isinstance(obj, Section):
            return _scalar_value(obj.psi.lift(total))
        if isinstance(obj, (Connection, HermitianConnection)):
            return _real_value(embed(as_tvf(obj)))
        raise self._error(expr, f"'{expr.value}' cannot be used inside an expression")

    def value(self, expr: Expr) -> Value:
        op = expr.op
        total = self.total
        if op == "number":
            return _scalar_value(ComplexScalar.real(ScalarField.constant(total, int(expr.value))))
        if op == "name":
            if expr.value in total.names:
                return _scalar_value(ComplexScalar.real(ScalarField.coordinate(total, expr.value)))
            return self.object_value(self.model.get(expr.value, expr.line, expr.column), expr)
        if op == "differential":
            return _real_value(Form.basis(total, [self._coordinate(expr)]))
        if op == "direction":
            return _real_value(TangentValuedForm.coordinate_field(total, self._coordinate(expr)))
        if op == "liouville":
            return _real_value(embed(liouville(self.qchart, "real")))
        if op == "imaginary_liouville":
            return _real_value(embed(liouville(self.qchart, "imaginary")))
        if op == "imaginary_unit":
            return _scalar_value(ComplexScalar.imaginary(ScalarField.one(total)))
        if op == "neg":
            child = self.value(expr.args[0])
            return Value(-child.re, -child.im)
        if op == "pow":
            base = self.value(expr.args[0])
            if base.is_vector or base.degree != 0:
                raise self._error(expr, "only functions can be raised to a power")
            z = base.scalar()
            result = ComplexScalar.real(ScalarField.one(total))
            for _ in range(int(expr.value)):
                result = result * z
            return _scalar_value(result)
        if op == "call":
            if expr.value == "d":
                return self._exterior_derivative(expr)
            raise self._error(expr, f"unknown function '{expr.value}' in a definition", UnknownNameError)
        left, right = (self.value(a) for a in expr.args)
        if op in ("add", "sub"):
            return self._add(expr, left, right, op == "add")
        if op == "mul":
            return self._multiply(expr, left, right)
        if op == "div":
            return self._divide(expr, left, right)
        return self._wedge(expr, left, right)

    def _coordinate(self, expr: Expr) -> int:
        try:
            return self.total.position(expr.value)
        except ChartMismatchError:
            raise self._error(expr, f"unknown coordinate '{expr.value}'", UnknownNameError) from None

    def _exterior_derivative(self, expr: Expr) -> Value:
        if len(expr.args) != 1:
            raise self._error(expr, "d() takes exactly one argument")
        value = self.value(expr.args[0])
        if value.is_vector:
            raise self._error(expr, "d() applies to forms only")
        return Value(ext_d(value.re), ext_d(value.im))

    def _add(self, expr: Expr, left: Value, right: Value, plus: bool) -> Value:
        if left.is_vector != right.is_vector:
            raise self._error(expr, "cannot add a form and a tangent valued form")
        if left.degree != right.degree:
            raise self._error(expr, f"cannot add terms of degree {left.degree} and {right.degree}")
        if plus:
            return Value(left.re + right.re, left.im + right.im)
        return Value(left.re - right.re, left.im - right.im)

    def _multiply(self, expr: Expr, left: Value, right: Value) -> Value:
        if not left.is_vector and left.degree == 0:
            return _scale(right, left.scalar())
        if not right.is_vector and right.degree == 0:
            return _scale(left, right.scalar())
        raise self._error(expr, "'*' needs a function on one side; use '^' for wedge products")

    def _divide(self, expr: Expr, left: Value, right: Value) -> Value:
        if right.is_vector or right.degree != 0:
            raise self._error(expr, "division is only by rational constants")
        z = right.scalar()
        if not z.im.is_zero or not z.re.is_constant or z.re.is_zero:
            raise self._error(expr, "division is only by nonzero rational constants")
        constant = z.re.terms[(0,) * self.total.dim]
        return _scale(left, ComplexScalar.real(ScalarField.constant(self.total, Fraction(1) / constant)))

    def _wedge(self, expr: Expr, left: Value, right: Value) -> Value:
        if left.is_vector:
            raise self._error(expr, "the left factor of '^' must be a form")
        if left.degree + right.degree > self.total.dim:
            raise self._error(expr, f"wedge product of degree {left.degree + right.degree} exceeds the chart dimension")
        try:
            return _wedge(left, right)
        except DegreeError as exc:
            raise self._error(expr, str(exc)) from None


# -- eval expressions ---------------------------------------------------------

def _as_proj(obj):
    if isinstance(obj, (Connection, HermitianConnection)):
        return as_tvf(obj)
    return obj


def _fn(first, second):
    first, second = _as_proj(first), _as_proj(second)
    if isinstance(first, ProjTVF) and isinstance(second, ProjTVF):
        return fn_bracket_proj(first, second)
    if isinstance(first, TangentValuedForm) and isinstance(second, TangentValuedForm):
        return fn_bracket(first, second)
    raise TypeError("fn() takes two tangent valued forms of the same kind")


def _d(alpha):
    if isinstance(alpha, Form):
        return ext_d(alpha)
    if isinstance(alpha, ComplexForm):
        return ComplexForm(ext_d(alpha.re), ext_d(alpha.im))
    if isinstance(alpha, Section):
        return ComplexForm.differential(alpha.psi)
    raise TypeError("d() takes a form")


def _lie(xi, alpha):
    if isinstance(xi, TangentValuedForm) and isinstance(alpha, Form):
        return lie_form(xi, alpha)
    xi = _as_proj(xi)
    if isinstance(xi, ProjTVF) and isinstance(alpha, Section):
        return lie_section(xi, alpha)
    raise TypeError("L() takes a tangent valued form and a form, or a vector field and a section")


def _interior(xi, alpha):
    if isinstance(xi, TangentValuedForm) and isinstance(alpha, Form):
        return interior(xi, alpha)
    raise TypeError("i() takes a tangent valued form and a form")


def _wedge_forms(alpha, beta):
    if isinstance(alpha, Form) and isinstance(beta, Form):
        return wedge(alpha, beta)
    raise TypeError("wedge() takes two forms")


def _connection(c):
    if not isinstance(c, (Connection, HermitianConnection)):
        raise TypeError("expected a connection")
    return c


def _hermitian(c):
    if not isinstance(c, HermitianConnection):
        raise TypeError("expected a Hermitian connection")
    return c


def _projectable(xi):
    xi = _as_proj(xi)
    if not isinstance(xi, ProjTVF):
        raise TypeError("expected a projectable tangent valued form")
    return xi


def _base_tvf(xi):
    if not isinstance(xi, TangentValuedForm):
        raise TypeError("expected a base tangent valued form")
    return xi


def _nabla(c, psi):
    if not isinstance(psi, Section):
        raise TypeError("nabla() takes a connection and a section")
    if isinstance(c, HermitianConnection):
        return nabla_section(c, psi)
    return nabla_section_general(_connection(c), psi)


EVAL_FUNCTIONS: Dict[str, Tuple[int, Callable]] = {
    "fn": (2, _fn),
    "d": (1, _d),
    "L": (2, _lie),
    "i": (2, _interior),
    "wedge": (2, _wedge_forms),
    "curv": (1, lambda c: curvature(_connection(c))),
    "phi": (1, lambda c: phi_form(_hermitian(c))),
    "nu": (2, lambda c, xi: nu(_connection(c), _projectable(xi))),
    "lift": (2, lambda c, xi: horizontal_lift(_connection(c), _base_tvf(xi))),
    "dc": (2, lambda c, xi: cov_ext_diff(_connection(c), _projectable(xi))),
    "metric_lie": (1, lambda xi: lie_metric(_projectable(xi))),
    "nabla": (2, _nabla),
}


def evaluate(model: ModelFile, text: str):
    """Evaluate an expression such as ``fn(Xi, Sigma)`` or ``curv(c)`` against a model."""
    return _evaluate_node(model, parse_expression(text))


def _evaluate_node(model: ModelFile, expr: Expr):
    if expr.op == "name" and expr.value in model.objects:
        return model.objects[expr.value]
    if expr.op == "call" and expr.value in EVAL_FUNCTIONS:
        arity, function = EVAL_FUNCTIONS[expr.value]
        if len(expr.args) != arity:
            raise ModelTypeError(f"{expr.value}() takes {arity} argument(s), got {len(expr.args)}",
                                 expr.line, expr.column)
        arguments = [_evaluate_node(model, a) for a in expr.args]
        try:
            return function(*arguments)
        except TypeError as exc:
            raise ModelTypeError(str(exc), expr.line, expr.column) from None
        except ChartMismatchError as exc:
            raise ModelTypeError(str(exc), expr.line, expr.column) from None
    if expr.op == "call":
        raise UnknownNameError(f"unknown function '{expr.value}'", expr.line, expr.column)
    evaluator = _Evaluator(model)
    value = evaluator.value(expr)
    if value.is_vector:
        return evaluator.realize_tvf(expr, value)
    if value.im.is_zero:
        return evaluator.realize_form(expr, value)
    return ComplexForm(value.re, value.im)


# -- rendering objects as model text ------------------------------------------

def _coefficient_term(coefficient: ScalarField, tail: str) -> str:
    text = str(coefficient)
    if not tail:
        return text
    if text == "1":
        return tail
    if text == "-1":
        return f"-{tail}"
    if " " in text:
        text = f"({text})"
    return f"{text}*{tail}"


def _join(terms: List[str]) -> str:
    return " + ".join(terms) if terms else "0"


def _legs(names, key) -> str:
    return " ^ ".join(f"d {names[i]}" for i in key)


def render_form(alpha: Form) -> str:
    names = alpha.chart.names
    return _join([_coefficient_term(value, _legs(names, key)) for key, value in alpha.comps.items()])


def render_tvf(xi: TangentValuedForm) -> str:
    names = xi.chart.names
    terms = []
    for (key, mu), value in xi.comps.items():
        legs = _legs(names, key)
        tail = f"{legs} ^ @{names[mu]}" if legs else f"@{names[mu]}"
        terms.append(_coefficient_term(value, tail))
    return _join(terms)


def render_complex(z: ComplexScalar) -> str:
    terms = [] if z.re.is_zero else [str(z.re)]
    if not z.im.is_zero:
        terms.append(f"i*({z.im})")
    return _join(terms)


def render_object(obj) -> Tuple[str, Optional[int], str]:
    """(kind, degree, expression) of an object that a model file can define."""
    if isinstance(obj, Form):
        return "form", obj.degree, render_form(obj)
    if isinstance(obj, TangentValuedForm):
        return "tvf", obj.degree, render_tvf(obj)
    if isinstance(obj, ProjTVF):
        return "projtvf", obj.degree, render_tvf(embed(obj))
    if isinstance(obj, Section):
        return "section", None, render_complex(obj.psi)
    if isinstance(obj, HermitianConnection):
        return "connection", None, f"hermitian({render_form(obj.potential)})"
    if isinstance(obj, Connection):
        return "connection", None, render_tvf(embed(as_tvf(obj)))
    raise FnlieError(f"Objects of type {type(obj).__name__} cannot be written to a model")


def dump_model(qchart: QChart, objects: Dict[str, object], chart_name: str = "E") -> str:
    """Render named objects as a loadable model (canonical form)."""
    lines = [f"chart {chart_name}({', '.join(qchart.base.names)})"]
    for name, obj in objects.items():
        if isinstance(obj, HermitianPair):
            lines.append(_definition_line(f"{name}_underline", obj.underline))
            lines.append(_definition_line(f"{name}_bar", obj.bar))
        elif isinstance(obj, Decomposable):
            lines.append(_definition_line(f"{name}_form", obj.form))
            lines.append(_definition_line(f"{name}_vector", obj.vector))
        else:
            lines.append(_definition_line(name, obj))
    text = "\n".join(lines) + "\n"
    return format_model(parse_model(text))


def _definition_line(name: str, obj) -> str:
    kind, degree, expression = render_object(obj)
    annotation = f":{degree}" if degree is not None else ""
    return f"{kind} {name}{annotation} = {expression}"
