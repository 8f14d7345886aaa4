"""
Tests for the model language: parsing, canonical printing and evaluation.
"""

from pathlib import Path

import pytest

from fnlie.classify import HermitianPair
from fnlie.connection import Connection, HermitianConnection
from fnlie.dsl import dump_model, evaluate, format_model, load_model, parse_model
from fnlie.errors import ModelSyntaxError, ModelTypeError, UnknownNameError
from fnlie.exterior import ComplexForm, Form, TangentValuedForm
from fnlie.qbundle import ProjTVF, Section, is_hermitian
from fnlie.reporters import render_text
from fnlie.scalar import ScalarField

CORPUS = sorted((Path(__file__).parent / "fixtures").glob("*.fn"))


def test_corpus_size():
    assert len(CORPUS) >= 20


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_canonical_form_is_a_fixpoint(path):
    model = load_model(path)
    text = format_model(model)
    reparsed = parse_model(text)
    assert reparsed == model
    assert format_model(reparsed) == text


def test_object_kinds(model):
    m = model("""
        chart E(x, y)
        form a:1 = x*d y
        tvf X:0 = x*@y
        tvf T:0 = w1*@x
        projtvf P:1 = d x ^ (@x + i*x*I)
        section psi = x + i*y
        connection c = hermitian(x*d y)
        connection g = d x ^ @x + d y ^ (@y + w1*@w2)
    """)
    assert isinstance(m.get("a"), Form)
    assert m.get("X").chart == m.qchart.base
    assert m.get("T").chart == m.qchart.total
    assert isinstance(m.get("P"), ProjTVF) and is_hermitian(m.get("P"))
    assert isinstance(m.get("psi"), Section)
    assert isinstance(m.get("c"), HermitianConnection)
    assert isinstance(m.get("g"), Connection)


def test_canonical_spacing(model):
    m = model("""
        chart E( x ,y )
        form a:1=x *d y+ ( x-y )*d x
    """)
    assert format_model(m) == "chart E(x, y)\nform a:1 = x*d y + (x - y)*d x\n"


def test_syntax_error_position():
    with pytest.raises(ModelSyntaxError) as excinfo:
        parse_model("chart E(x, y)\nform a:1 = x * * d y\n")
    assert excinfo.value.line == 2
    assert str(excinfo.value).startswith("line 2, column ")


def test_model_must_start_with_a_chart():
    with pytest.raises(ModelSyntaxError):
        parse_model("form a:0 = 1\n")
    with pytest.raises(ModelSyntaxError):
        parse_model("chart E(x)\nchart F(y)\n")


def test_degree_mismatch_is_a_load_error(model):
    with pytest.raises(ModelTypeError) as excinfo:
        model("""
            chart E(x, y)
            form a:2 = d x
        """)
    assert "degree mismatch" in str(excinfo.value)
    assert excinfo.value.line == 2


@pytest.mark.parametrize("text, error", [
    ("chart E(x)\nform a:0 = b\n", UnknownNameError),
    ("chart E(x)\nform a:1 = d y\n", UnknownNameError),
    ("chart E(x)\nform a:1 = @x\n", ModelTypeError),
    ("chart E(x)\nprojtvf P:0 = w1*@x\n", ModelTypeError),
    ("chart E(x)\nform a:0 = i*x\n", ModelTypeError),
    ("chart E(x)\nform w1:0 = x\n", ModelTypeError),
    ("chart E(x)\nform a:0 = x\nform a:0 = x\n", ModelTypeError),
    ("chart E(x)\nform a:1 = d x ^ d x ^ d x\n", ModelTypeError),
    ("chart E(x)\nconnection c = d x ^ (2*@x)\n", ModelTypeError),
    ("chart E(x, x)\n", ModelTypeError),
])
def test_load_errors(text, error):
    with pytest.raises(error):
        parse_model(text)


def test_eval_vector_field_bracket(fixtures_dir):
    m = load_model(fixtures_dir / "vector_fields.fn")
    assert render_text(evaluate(m, "fn(X, Y)")) == "x d/dx - y d/dy"


def test_eval_curvature(fixtures_dir):
    m = load_model(fixtures_dir / "hermitian_connection.fn")
    assert render_text(evaluate(m, "curv(c)")) == "-2i dx^dy (x) I"
    assert render_text(evaluate(m, "phi(c)")) == "2 dx^dy"


def test_eval_nested_and_inline(fixtures_dir):
    m = load_model(fixtures_dir / "plane_forms.fn")
    assert evaluate(m, "d(d(c))").is_zero
    assert evaluate(m, "d(a)") == m.get("b")
    assert evaluate(m, "wedge(d x, a)") == evaluate(m, "d x ^ a")
    assert isinstance(evaluate(m, "i*a"), ComplexForm)


def test_eval_errors(fixtures_dir):
    m = load_model(fixtures_dir / "plane_forms.fn")
    with pytest.raises(UnknownNameError):
        evaluate(m, "frobnicate(a)")
    with pytest.raises(UnknownNameError):
        evaluate(m, "d(nothing)")
    with pytest.raises(ModelTypeError):
        evaluate(m, "curv(a)")
    with pytest.raises(ModelTypeError):
        evaluate(m, "fn(a)")
    with pytest.raises(ModelSyntaxError):
        evaluate(m, "fn(a,")


def test_dump_model_round_trip(qplane):
    base = qplane.base
    x = ScalarField.coordinate(base, "x")
    objects = {
        "c": HermitianConnection(qplane, Form.basis(base, (1,), x)),
        "p": HermitianPair(TangentValuedForm.coordinate_field(base, 0), Form.scalar(x)),
        "xi": TangentValuedForm.vector_field(base, {1: x * x}),
    }
    text = dump_model(qplane, objects)
    m = parse_model(text)
    assert m.get("c") == objects["c"]
    assert m.get("p_underline") == objects["p"].underline
    assert m.get("p_bar") == objects["p"].bar
    assert m.get("xi") == objects["xi"]
    assert format_model(m) == text
