"""
Command implementations behind the CLI. Each returns a ``Report``.

Model errors (syntax, types, unknown names) propagate to the caller; failed
preconditions of the algebra (not Hermitian, not linear, ...) become failing
reports with the reason attached.
"""

import logging
from pathlib import Path
from typing import Optional, Union

from .classify import HermitianPair, h_map, j_map
from .connection import Connection, HermitianConnection, as_tvf, is_hermitian_connection
from .dsl import ModelFile, load_model
from .dsl import evaluate as evaluate_expression
from .errors import FnlieError, LinearityError, ModelError, ModelTypeError, ProjectabilityError
from .exterior import TangentValuedForm
from .generators import GeneratorParams
from .models import Counterexample, Outcome, Report
from .qbundle import (
    ProjTVF, complex_linearity_violation, hermitian_violation, lift_base, linearity_violation, project,
    projectability_violation,
)
from .reporters import render_text
from .suites import check_model, get_suite, run_suite

logger = logging.getLogger(__name__)

PROPERTIES = ("projectable", "real-linear", "complex-linear", "hermitian", "hermitian-connection")


def _fail(report: Report, message: str) -> Report:
    report.outcome = Outcome.FAIL
    report.message = message
    return report


def cmd_eval(model: ModelFile, expression: str, source: Optional[str] = None) -> Report:
    """Evaluate an expression like ``fn(Xi, Sigma)`` or ``curv(c)``."""
    report = Report("eval", inputs={"file": source, "expression": expression})
    logger.info(f"Evaluating {expression}")
    try:
        value = evaluate_expression(model, expression)
    except ModelError:
        raise
    except FnlieError as exc:
        return _fail(report, f"{type(exc).__name__}: {exc}")
    report.add_value("result", value)
    return report


def _projectable(model: ModelFile, obj) -> ProjTVF:
    """The object as a projectable form; raises ProjectabilityError with the reason."""
    if isinstance(obj, (Connection, HermitianConnection)):
        return as_tvf(obj)
    if isinstance(obj, ProjTVF):
        return obj
    if isinstance(obj, TangentValuedForm):
        if obj.chart == model.qchart.base:
            return lift_base(model.qchart, obj)
        return project(obj, model.qchart)
    raise ModelTypeError(f"expected a tangent valued form, got a {type(obj).__name__}")


def cmd_check(model: ModelFile, name: str, prop: str, source: Optional[str] = None) -> Report:
    """Check one property of a named object; on failure report the violated condition."""
    if prop not in PROPERTIES:
        raise ValueError(f"Unknown property '{prop}'; available: {', '.join(PROPERTIES)}")
    report = Report("check", inputs={"file": source, "name": name, "property": prop}, outcome=Outcome.PASS)
    obj = model.get(name)
    logger.info(f"Checking {prop} on {name}")

    if prop == "hermitian-connection":
        if not isinstance(obj, (Connection, HermitianConnection)):
            raise ModelTypeError(f"'{name}' is not a connection")
        try:
            hermitian, potential = is_hermitian_connection(obj)
        except LinearityError as exc:
            return _fail(report, str(exc))
        if not hermitian:
            return _fail(report, hermitian_violation(as_tvf(obj)) or "connection is not Hermitian")
        report.add_value("potential", potential)
        return report

    if prop == "projectable" and isinstance(obj, TangentValuedForm) and obj.chart == model.qchart.total:
        violation = projectability_violation(model.qchart, obj)
        return _fail(report, violation[0]) if violation else report

    try:
        xi = _projectable(model, obj)
    except ProjectabilityError as exc:
        return _fail(report, f"not projectable: {exc}")
    checks = {
        "projectable": lambda: None,
        "real-linear": lambda: linearity_violation(xi),
        "complex-linear": lambda: complex_linearity_violation(xi),
        "hermitian": lambda: hermitian_violation(xi),
    }
    violation = checks[prop]()
    return _fail(report, violation) if violation else report


def _hermitian_connection(model: ModelFile, name: str) -> HermitianConnection:
    obj = model.get(name)
    if isinstance(obj, HermitianConnection):
        return obj
    if not isinstance(obj, Connection):
        raise ModelTypeError(f"'{name}' is not a connection")
    hermitian, potential = is_hermitian_connection(obj)
    if not hermitian:
        raise FnlieError(f"connection '{name}' is not Hermitian: {hermitian_violation(as_tvf(obj))}")
    return HermitianConnection(model.qchart, potential)


def _pair(model: ModelFile, name: str) -> HermitianPair:
    underline, bar = model.get(f"{name}_underline"), model.get(f"{name}_bar")
    if isinstance(underline, TangentValuedForm) and underline.chart == model.qchart.total:
        raise ModelTypeError(f"'{name}_underline' must live on the base")
    return HermitianPair(underline, bar)


def cmd_classify(model: ModelFile, connection: str, name: str, inverse: bool = False,
                 source: Optional[str] = None) -> Report:
    """h[c] of a Hermitian form, or with ``inverse`` j[c] of the pair name_underline/name_bar."""
    report = Report("classify", inputs={"file": source, "connection": connection, "name": name,
                                        "direction": "inverse" if inverse else "forward"})
    try:
        c = _hermitian_connection(model, connection)
        if inverse:
            pair = _pair(model, name)
            xi = j_map(c, pair)
            report.add_value("xi", xi)
            round_trip = h_map(c, xi) == pair
        else:
            xi = _projectable(model, model.get(name))
            pair = h_map(c, xi)
            report.add_value("underline", pair.underline)
            report.add_value("bar", pair.bar)
            round_trip = render_text(j_map(c, pair)) == render_text(xi)
    except ModelError:
        raise
    except FnlieError as exc:
        return _fail(report, f"{type(exc).__name__}: {exc}")
    report.details["round_trip"] = "yes" if round_trip else "no"
    if not round_trip:
        return _fail(report, "h[c] and j[c] do not invert each other on this input")
    return report


def default_dump_path(suite: str, seed: int) -> Path:
    return Path(f"counterexample-{suite}-seed{seed}.fn")


def cmd_verify(suite: str, params: GeneratorParams, seed: int, trials: int, jobs: int = 1,
               progress: bool = False, dump: Optional[Union[str, Path]] = None,
               model_path: Optional[Union[str, Path]] = None) -> Report:
    """Run a suite, or with ``model_path`` re-check a model file against it."""
    get_suite(suite)
    if model_path is not None:
        report = Report("verify", inputs={"suite": suite, "file": str(model_path)}, outcome=Outcome.PASS)
        failure, summary = check_model(suite, load_model(model_path))
        report.details.update(summary)
        return _fail(report, failure) if failure else report

    report = Report("verify", inputs={
        "suite": suite, "dim": params.dim, "max_degree": params.max_degree,
        "coeff_degree": params.coeff_degree,
    }, outcome=Outcome.PASS, seed=seed, trials=trials)
    result = run_suite(suite, params, seed=seed, trials=trials, jobs=jobs, progress=progress)
    report.passed = result.passed
    if result.failure is None:
        return report
    failure = result.failure
    path = Path(dump) if dump else default_dump_path(suite, seed)
    path.write_text(failure.model, encoding="utf-8")
    logger.info(f"Counterexample of {suite} written to {path}")
    report.counterexample = Counterexample(failure.trial, failure.message, failure.model, str(path))
    return _fail(report, failure.message)
