"""
Tests for the randomized verification suites.
"""

import pytest

from fnlie.dsl import dump_model, load_model, parse_model
from fnlie.errors import UnknownSuiteError
from fnlie.generators import Generator, GeneratorParams, trial_rng
from fnlie.suites import SUITES, check_model, collect_objects, get_suite, list_suites, run_suite, run_trial

SMALL = GeneratorParams(dim=2, max_degree=1, coeff_degree=1)


def test_published_suites():
    names = [name for name, _ in list_suites()]
    assert names[:11] == [
        "fn-antisym", "fn-jacobi", "lie-derivation", "dual-route", "proj-closure", "linear-closure",
        "hermitian-closure", "curvature-identities", "iso-theorem", "jacobi-defect", "inverse-pair",
    ]
    assert "hermitian-triad" in names and "vertical-lie" in names
    with pytest.raises(UnknownSuiteError):
        get_suite("fn-nonsense")


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes_on_small_instances(name):
    result = run_suite(name, SMALL, seed=3, trials=3)
    assert result.failure is None, result.failure
    assert result.ok


@pytest.mark.slow
@pytest.mark.parametrize("name", ["fn-jacobi", "dual-route", "jacobi-defect", "hermitian-closure"])
def test_suite_passes_in_three_dimensions(name):
    params = GeneratorParams(dim=3, max_degree=2, coeff_degree=1)
    result = run_suite(name, params, seed=1, trials=4)
    assert result.ok, result.failure


def test_trials_are_reproducible():
    first = run_trial("iso-theorem", SMALL, 42, 5)
    second = run_trial("iso-theorem", SMALL, 42, 5)
    assert first == second


@pytest.mark.slow
@pytest.mark.integration
def test_parallel_run_matches_serial():
    serial = run_suite("fn-antisym", SMALL, seed=9, trials=6)
    parallel = run_suite("fn-antisym", SMALL, seed=9, trials=6, jobs=2)
    assert (serial.passed, serial.failure) == (parallel.passed, parallel.failure)


def test_jacobi_defect_counterexample_file(fixtures_dir):
    failure, summary = check_model("jacobi-defect", load_model(fixtures_dir / "jacobi_defect_nonclosed.fn"))
    assert failure is None
    assert summary == {"dPhi": "d x ^ d y ^ d z", "defect": "1/2", "closed_form": "1/2"}


def test_non_hermitian_vector_field_breaks_metric_identity(model):
    m = model("""
        chart E(x, y)
        connection c = hermitian(x*d y)
        section psi = x + i*y
        section chi = 1
        projtvf xi:0 = @x
        projtvf eta:0 = I
    """)
    failure, _ = check_model("hermitian-triad", m)
    assert failure.startswith("Y h(Psi, Chi) = h(L(Y)Psi, Chi) + h(Psi, L(Y)Chi): got 0")


def test_precondition_failures_are_reported(model):
    m = model("""
        chart E(x, y)
        connection c = hermitian(x*d y)
        tvf p_underline:0 = @x
        form p_bar:0 = y
        projtvf xi:0 = I
    """)
    failure, _ = check_model("inverse-pair", m)
    assert failure.startswith("HermitianError after 'h[c] o j[c] = id'")


def test_missing_objects(model):
    m = model("""
        chart E(x, y)
        tvf xi:0 = @x
    """)
    failure, summary = check_model("fn-antisym", m)
    assert failure == "model does not define sigma"
    assert summary == {}


def test_collect_objects_reassembles_pairs(model):
    m = model("""
        chart E(x, y)
        tvf p_underline:0 = @x
        form p_bar:0 = y
        form t_form:1 = d x
        tvf t_vector:0 = @y
    """)
    objects = collect_objects(m)
    assert set(objects) == {"p", "t"}
    assert objects["p"].bar == m.get("p_bar")
    assert objects["t"].vector == m.get("t_vector")


def test_dumped_trial_reloads_to_the_same_objects():
    suite = get_suite("iso-theorem")
    gen = Generator(trial_rng(0, 1), SMALL)
    objects = suite.generate(gen)
    text = dump_model(gen.qchart, objects)
    reloaded = collect_objects(parse_model(text))
    assert set(reloaded) == set(objects)
    assert dump_model(gen.qchart, reloaded) == text


def test_curvature_trials_alternate_connection_kinds():
    suite = get_suite("curvature-identities")
    kinds = [type(suite.generate(Generator(trial_rng(5, trial), SMALL, trial))["c"]).__name__
             for trial in range(4)]
    assert kinds == ["Connection", "HermitianConnection", "Connection", "HermitianConnection"]


def test_curvature_suite_checks_a_nonlinear_connection():
    suite = get_suite("curvature-identities")
    gen = Generator(trial_rng(2, 0), SMALL, 0)
    objects = suite.generate(gen)
    assert "g" in suite.requires
    labels = [claim.label for claim in suite.claims(gen.qchart, objects)]
    assert "curvature = coordinate expression, nonlinear connection" in labels
    assert suite.check(gen.qchart, objects) is None
