"""
Report generators: human readable text and exact JSON.

Both are deterministic: components come out in increasing multi-index order,
base directions before fiber directions, and no timestamps are written.
"""

import json
from typing import Any, Dict, List

from .classify import HermitianPair
from .connection import Connection, HermitianConnection, as_tvf
from .errors import LinearityError
from .exterior import ComplexForm, Form, TangentValuedForm
from .models import Report
from .qbundle import ProjTVF, Section, VerticalValuedForm, complex_trace, embed
from .scalar import ComplexScalar, ScalarField


# -- text rendering ------------------------------------------------------------

def _legs(names, key) -> str:
    return "^".join(f"d{names[i]}" for i in key)


def _coefficient(text: str, tail: str) -> str:
    if not tail:
        return text
    if text == "1":
        return tail
    if text == "-1":
        return f"-{tail}"
    if " " in text:
        text = f"({text})"
    return f"{text} {tail}"


def _join(terms: List[str]) -> str:
    if not terms:
        return "0"
    text = terms[0]
    for term in terms[1:]:
        text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return text


def _complex_text(z: ComplexScalar) -> str:
    re, im = str(z.re), str(z.im)
    if z.im.is_zero:
        return re
    if im == "1":
        imaginary = "i"
    elif im == "-1":
        imaginary = "-i"
    elif z.im.is_constant:
        imaginary = f"{im}i"
    else:
        imaginary = f"i({im})"
    if z.re.is_zero:
        return imaginary
    if imaginary.startswith("-"):
        return f"{re} - {imaginary[1:]}"
    return f"{re} + {imaginary}"


def _complex_coefficient(z: ComplexScalar) -> str:
    text = _complex_text(z)
    return f"({text})" if not z.re.is_zero and not z.im.is_zero else text


def render_form_text(alpha: Form) -> str:
    names = alpha.chart.names
    return _join([_coefficient(str(value), _legs(names, key)) for key, value in alpha.comps.items()])


def render_tvf_text(xi: TangentValuedForm) -> str:
    names = xi.chart.names
    terms = []
    for (key, mu), value in xi.comps.items():
        legs = _legs(names, key)
        tail = f"{legs} (x) d/d{names[mu]}" if legs else f"d/d{names[mu]}"
        terms.append(_coefficient(str(value), tail))
    return _join(terms)


def render_complex_form_text(alpha: ComplexForm) -> str:
    names = alpha.chart.names
    keys = sorted(set(alpha.re.comps) | set(alpha.im.comps))
    return _join([_coefficient(_complex_coefficient(alpha.component(key)), _legs(names, key)) for key in keys])


def _render_vertical(theta: VerticalValuedForm) -> str:
    """Complex-linear vertical forms as a complex form tensor I, others in components."""
    try:
        trace = complex_trace(theta)
    except LinearityError:
        return render_tvf_text(embed(theta.as_proj()))
    names = trace.chart.names
    terms = []
    for key in sorted(set(trace.re.comps) | set(trace.im.comps)):
        legs = _legs(names, key)
        tail = f"{legs} (x) I" if legs else "I"
        terms.append(_coefficient(_complex_coefficient(trace.component(key)), tail))
    return _join(terms)


def render_text(value: Any) -> str:
    if isinstance(value, HermitianPair):
        return f"({render_tvf_text(value.underline)}, {render_form_text(value.bar)})"
    if isinstance(value, VerticalValuedForm):
        return _render_vertical(value)
    if isinstance(value, ProjTVF):
        if value.is_vertical and not value.is_zero:
            return _render_vertical(VerticalValuedForm.from_proj(value))
        return render_tvf_text(embed(value))
    if isinstance(value, TangentValuedForm):
        return render_tvf_text(value)
    if isinstance(value, Form):
        return render_form_text(value)
    if isinstance(value, ComplexForm):
        return render_complex_form_text(value)
    if isinstance(value, Section):
        return _complex_text(value.psi)
    if isinstance(value, ComplexScalar):
        return _complex_text(value)
    if isinstance(value, HermitianConnection):
        return render_text(value.connection)
    if isinstance(value, Connection):
        return render_tvf_text(embed(as_tvf(value)))
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


# -- JSON ----------------------------------------------------------------------

def _index(key) -> str:
    return f"d[{','.join(str(i) for i in key)}]"


def _scalar(value: ScalarField) -> str:
    return str(value)


def _form_dict(alpha: Form) -> Dict[str, Any]:
    return {
        "kind": "form",
        "degree": alpha.degree,
        "chart": list(alpha.chart.names),
        "components": {_index(key): _scalar(value) for key, value in alpha.comps.items()},
    }


def _tvf_dict(xi: TangentValuedForm, kind: str = "tvf") -> Dict[str, Any]:
    names = xi.chart.names
    components: Dict[str, Dict[str, str]] = {}
    for (key, mu), value in xi.comps.items():
        components.setdefault(_index(key), {})[names[mu]] = _scalar(value)
    return {"kind": kind, "degree": xi.degree, "chart": list(names), "components": components}


def _complex_form_dict(alpha: ComplexForm) -> Dict[str, Any]:
    return {
        "kind": "complex-form",
        "degree": alpha.degree,
        "chart": list(alpha.chart.names),
        "re": _form_dict(alpha.re)["components"],
        "im": _form_dict(alpha.im)["components"],
    }


def to_json_value(value: Any) -> Any:
    """JSON-ready structure; polynomials as canonical strings with p/q rationals."""
    if isinstance(value, HermitianPair):
        return {"kind": "pair", "underline": to_json_value(value.underline), "bar": to_json_value(value.bar)}
    if isinstance(value, VerticalValuedForm):
        return _tvf_dict(embed(value.as_proj()), "vertical")
    if isinstance(value, ProjTVF):
        return _tvf_dict(embed(value), "projtvf")
    if isinstance(value, TangentValuedForm):
        return _tvf_dict(value)
    if isinstance(value, Form):
        return _form_dict(value)
    if isinstance(value, ComplexForm):
        return _complex_form_dict(value)
    if isinstance(value, Section):
        return {"kind": "section", "re": _scalar(value.psi.re), "im": _scalar(value.psi.im)}
    if isinstance(value, ComplexScalar):
        return {"kind": "complex", "re": _scalar(value.re), "im": _scalar(value.im)}
    if isinstance(value, HermitianConnection):
        return {"kind": "connection", "potential": _form_dict(value.potential)}
    if isinstance(value, Connection):
        return _tvf_dict(embed(as_tvf(value)), "connection")
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


# -- reporters -----------------------------------------------------------------

class TextReporter:
    """Generate plain text reports."""

    def generate_report(self, report: Report) -> str:
        lines = [f"command: {report.command}"]
        for key, value in report.inputs.items():
            lines.append(f"{key}: {value}")
        if report.seed is not None:
            lines.append(f"seed: {report.seed}")
        lines.append(f"outcome: {report.outcome.value}")
        if report.trials is not None:
            lines.append(f"trials: {report.passed}/{report.trials} passed")
        for label, value in report.values:
            lines.append(f"{label}: {render_text(value)}")
        for key, value in report.details.items():
            lines.append(f"{key}: {value}")
        if report.message:
            lines.append(f"reason: {report.message}")
        if report.counterexample:
            counterexample = report.counterexample
            lines.append(f"counterexample: trial {counterexample.trial}")
            lines.append(f"failure: {counterexample.message}")
            if counterexample.path:
                lines.append(f"written to: {counterexample.path}")
            lines.append("")
            lines.append(counterexample.model.rstrip("\n"))
        return "\n".join(lines) + "\n"


class JSONReporter:
    """Generate JSON reports."""

    def generate_report(self, report: Report) -> str:
        report_dict = {
            "command": report.command,
            "inputs": report.inputs,
            "outcome": report.outcome.value,
            "seed": report.seed,
            "values": {label: to_json_value(value) for label, value in report.values},
            "details": report.details,
            "message": report.message,
        }
        if report.trials is not None:
            report_dict["trials"] = {"total": report.trials, "passed": report.passed}
        if report.counterexample:
            report_dict["counterexample"] = {
                "trial": report.counterexample.trial,
                "message": report.counterexample.message,
                "path": report.counterexample.path,
                "model": report.counterexample.model,
            }
        return json.dumps(report_dict, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def generate_report(report: Report, format_type: str = "text") -> str:
    """Generate a report in the specified format."""
    if format_type.lower() == "json":
        reporter = JSONReporter()
    else:
        reporter = TextReporter()
    return reporter.generate_report(report)
