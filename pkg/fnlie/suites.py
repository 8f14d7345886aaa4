"""
Randomized verification suites.

A suite draws named objects from a seeded ``Generator`` and checks a family of
exact identities on them. Trial ``k`` of a run with seed ``s`` is independent of
every other trial, so trials can run in a process pool and still produce the
same report. The objects of the first failing trial are written out as a model
file that ``check_model`` re-checks.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from tqdm import tqdm

from .classify import (
    HermitianPair, h_map, hermitian_vector_bracket, j_map, jacobi_defect, jacobi_defect_closed_form,
    pair_two_form, pair_two_form_decomposables, phi_bracket,
)
from .connection import (
    as_tvf, contract_curvature, cov_ext_diff, cov_ext_diff_coordinate, curvature,
    curvature_coordinate, hermitian_cov_diff, horizontal_lift, is_complex_linear_connection,
    is_hermitian_connection, nabla_section, nabla_section_general, nu, pair_curvature, phi_form,
    phi_form_via_trace,
)
from .dsl import ModelFile, dump_model, render_object
from .errors import FnlieError, HermitianError, UnknownSuiteError
from .exterior import (
    ComplexForm, Decomposable, Form, TangentValuedForm, decompose, ext_d, fn_bracket,
    fn_bracket_coordinate, fn_bracket_decomposables, lie_form,
)
from .generators import Generator, GeneratorParams, trial_rng
from .qbundle import (
    FIBER, ProjTVF, QChart, VerticalCoform, VerticalValuedForm, apply_base_vector, complex_linearity_violation,
    embed, fn_bracket_proj, hermitian_decompose, hermitian_product, hermitian_violation, is_hermitian,
    is_real_linear, lie_metric, lift_base, lie_section, linearity_violation, liouville, metric, vertical,
    vertical_lie,
)
from .scalar import ComplexScalar, ScalarField

logger = logging.getLogger(__name__)

Objects = Dict[str, object]


@dataclass(frozen=True)
class Claim:
    """One exact identity: ``left`` must equal ``right``."""
    label: str
    left: object
    right: object


CheckFn = Callable[[QChart, Objects], Iterator[Claim]]


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    generate: Callable[[Generator], Objects]
    claims: CheckFn
    requires: Tuple[str, ...]
    summary: Optional[Callable[[QChart, Objects], Dict[str, str]]] = None

    def check(self, qchart: QChart, objects: Objects) -> Optional[str]:
        """None if every claim holds, otherwise a description of the first failure."""
        label = None
        try:
            for claim in self.claims(qchart, objects):
                label = claim.label
                if claim.left != claim.right:
                    return f"{claim.label}: got {show(claim.left)}, expected {show(claim.right)}"
        except FnlieError as exc:
            where = f"after '{label}'" if label else "before the first claim"
            return f"{type(exc).__name__} {where}: {exc}"
        return None


def show(value) -> str:
    if isinstance(value, HermitianPair):
        return f"({show(value.underline)}, {show(value.bar)})"
    if isinstance(value, VerticalValuedForm):
        return show(value.as_proj())
    if isinstance(value, (Form, TangentValuedForm, ProjTVF)):
        return render_object(value)[2]
    if isinstance(value, ComplexForm):
        return f"{show(value.re)} + i*({show(value.im)})"
    return str(value)


def _signed(exponent: int, value):
    return -value if exponent % 2 else value


def _raises(call: Callable[[], object], error: type) -> bool:
    try:
        call()
    except error:
        return True
    return False


def _not_hermitian(xi: ProjTVF) -> Optional[ProjTVF]:
    """xi + d^0^...^d^{r-1} (x) I, which breaks the Hermitian conditions."""
    qchart = xi.qchart
    if xi.degree > qchart.n:
        return None
    return xi + vertical(qchart, Form.basis(qchart.base, range(xi.degree)), "real")


def _pair(xi: ProjTVF) -> HermitianPair:
    return HermitianPair(*hermitian_decompose(xi))


# -- tangent valued forms of the base -----------------------------------------

def _generate_pair_of_tvfs(gen: Generator) -> Objects:
    return {"xi": gen.tvf(gen.base, gen.degree()), "sigma": gen.tvf(gen.base, gen.degree())}


def _fn_antisym(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    xi, sigma = objects["xi"], objects["sigma"]
    r, s = xi.degree, sigma.degree
    yield Claim("graded antisymmetry", fn_bracket(xi, sigma), _signed(r * s + 1, fn_bracket(sigma, xi)))


def _generate_triple(gen: Generator) -> Objects:
    return {name: gen.tvf(gen.base, gen.degree()) for name in ("xi", "sigma", "tau")}


def _fn_jacobi(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    xi, sigma, tau = objects["xi"], objects["sigma"], objects["tau"]
    r, s = xi.degree, sigma.degree
    left = fn_bracket(xi, fn_bracket(sigma, tau))
    right = fn_bracket(fn_bracket(xi, sigma), tau) + _signed(r * s, fn_bracket(sigma, fn_bracket(xi, tau)))
    yield Claim("graded Jacobi identity", left, right)


def _generate_lie_derivation(gen: Generator) -> Objects:
    objects = _generate_pair_of_tvfs(gen)
    objects["alpha"] = gen.form(gen.base, gen.degree())
    return objects


def _lie_derivation(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    xi, sigma, alpha = objects["xi"], objects["sigma"], objects["alpha"]
    r, s = xi.degree, sigma.degree
    commutator = lie_form(xi, lie_form(sigma, alpha)) - _signed(r * s, lie_form(sigma, lie_form(xi, alpha)))
    yield Claim("[L(Xi), L(Sigma)] = L([Xi, Sigma])", commutator, lie_form(fn_bracket(xi, sigma), alpha))


# alternative decompositions of the same tangent valued form

def _coefficient_on_vector(xi: TangentValuedForm) -> List[Decomposable]:
    return [Decomposable(Form.basis(xi.chart, key), TangentValuedForm.vector_field(xi.chart, {mu: value}))
            for (key, mu), value in xi.comps.items()]


def _halved(xi: TangentValuedForm) -> List[Decomposable]:
    half = [Decomposable(term.form.scale(Fraction(1, 2)), term.vector) for term in decompose(xi)]
    return half + half


def _grouped_by_index(xi: TangentValuedForm) -> List[Decomposable]:
    groups: Dict[tuple, Dict[int, object]] = {}
    for (key, mu), value in xi.comps.items():
        groups.setdefault(key, {})[mu] = value
    return [Decomposable(Form.basis(xi.chart, key), TangentValuedForm.vector_field(xi.chart, vector))
            for key, vector in groups.items()]


ALTERNATIVE_DECOMPOSITIONS = (_coefficient_on_vector, _halved, _grouped_by_index)


def _generate_dual_route(gen: Generator) -> Objects:
    objects = _generate_pair_of_tvfs(gen)
    objects["phi"] = gen.two_form(gen.base)
    return objects


def _dual_route(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    xi, sigma, phi = objects["xi"], objects["sigma"], objects["phi"]
    r, s = xi.degree, sigma.degree
    bracket = fn_bracket(xi, sigma)
    yield Claim("decomposable route = coordinate route", bracket, fn_bracket_coordinate(xi, sigma))
    pairing = pair_two_form(phi, xi, sigma)
    for split in ALTERNATIVE_DECOMPOSITIONS:
        first, second = split(xi), split(sigma)
        yield Claim(f"bracket through {split.__name__.strip('_')}",
                    fn_bracket_decomposables(first, second, xi.chart, r, s), bracket)
        yield Claim(f"Phi(Xi, Sigma) through {split.__name__.strip('_')}",
                    pair_two_form_decomposables(phi, first, second, r + s), pairing)


# -- projectable and linear forms ---------------------------------------------

def _generate_projectable(gen: Generator) -> Objects:
    return {"xi": gen.proj_tvf(gen.degree(), "general"), "sigma": gen.proj_tvf(gen.degree(), "general")}


def _proj_closure(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    xi, sigma = objects["xi"], objects["sigma"]
    bracket = fn_bracket_proj(xi, sigma)
    yield Claim("projection identity", bracket.underline, fn_bracket(xi.underline, sigma.underline))
    yield Claim("coordinate route on Q", fn_bracket_coordinate(embed(xi), embed(sigma)), embed(bracket))


def _generate_linear(gen: Generator) -> Objects:
    return {
        "xi": gen.proj_tvf(gen.degree(), "real-linear"),
        "sigma": gen.proj_tvf(gen.degree(), "real-linear"),
        "zeta": gen.proj_tvf(gen.degree(), "complex-linear"),
        "eta": gen.proj_tvf(gen.degree(), "complex-linear"),
    }


def _linear_closure(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    xi, sigma, zeta, eta = (objects[name] for name in ("xi", "sigma", "zeta", "eta"))
    yield Claim("real-linear closure", linearity_violation(fn_bracket_proj(xi, sigma)), None)
    yield Claim("complex-linear closure", complex_linearity_violation(fn_bracket_proj(zeta, eta)), None)
    yield Claim("complex-linear implies real-linear", is_real_linear(zeta), True)
    real, imaginary = liouville(qchart, "real"), liouville(qchart, "imaginary")
    for name, form in (("xi", xi), ("zeta", zeta)):
        yield Claim(f"[{name}, I] = 0", fn_bracket_proj(form, real), ProjTVF.zero(qchart, form.degree))
    yield Claim("[zeta, iI] = 0", fn_bracket_proj(zeta, imaginary), ProjTVF.zero(qchart, zeta.degree))


# -- Hermitian forms -----------------------------------------------------------

def _generate_hermitian(gen: Generator) -> Objects:
    return {
        "xi": gen.proj_tvf(gen.degree(), "hermitian"),
        "sigma": gen.proj_tvf(gen.degree(), "hermitian"),
        "alpha": gen.form(gen.base, gen.degree()),
        "rho": gen.proj_tvf(gen.degree(), "real-linear"),
    }


def _hermitian_closure(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    xi, sigma, alpha, rho = (objects[name] for name in ("xi", "sigma", "alpha", "rho"))
    base = qchart.base
    r, s = xi.degree, sigma.degree
    first, second = _pair(xi), _pair(sigma)
    bracket = fn_bracket_proj(xi, sigma)
    yield Claim("bracket is Hermitian", hermitian_violation(bracket), None)
    yield Claim("bracket decomposition", _pair(bracket), phi_bracket(Form.zero(base, 2), first, second))
    yield Claim("Hermitian implies complex-linear", complex_linearity_violation(xi), None)

    vertical_xi = vertical(qchart, first.bar, "imaginary")
    vertical_sigma = vertical(qchart, second.bar, "imaginary")
    flat_xi, flat_sigma = lift_base(qchart, first.underline), lift_base(qchart, second.underline)
    yield Claim("[i xi (x) I, i sigma (x) I] = 0", fn_bracket_proj(vertical_xi, vertical_sigma),
                ProjTVF.zero(qchart, r + s))
    yield Claim("[chi(Xi), chi(Sigma)] = chi([Xi, Sigma])", fn_bracket_proj(flat_xi, flat_sigma),
                lift_base(qchart, fn_bracket(first.underline, second.underline)))
    yield Claim("[chi(Xi), i sigma (x) I] = i L(Xi)sigma (x) I", fn_bracket_proj(flat_xi, vertical_sigma),
                vertical(qchart, lie_form(first.underline, second.bar), "imaginary"))

    yield Claim("vertical forms are Hermitian", is_hermitian(vertical_xi), True)
    ideal = fn_bracket_proj(vertical_xi, sigma)
    yield Claim("vertical ideal", ideal.is_vertical, True)
    yield Claim("vertical ideal is Hermitian", hermitian_violation(ideal), None)
    yield Claim("alpha ^ Xi is Hermitian", hermitian_violation(xi.wedge_left(alpha)), None)

    yield Claim("metric and coordinate routes agree", is_hermitian(rho), hermitian_violation(rho) is None)
    broken = _not_hermitian(xi)
    if broken is not None:
        yield Claim("non-Hermitian form rejected", is_hermitian(broken), False)

    if r == 0 and s == 0:
        expected = hermitian_vector_bracket(first, second)
        yield Claim("Hermitian vector field bracket", bracket,
                    lift_base(qchart, expected.underline) + vertical(qchart, expected.bar, "imaginary"))


# -- connections ---------------------------------------------------------------

def _generate_curvature(gen: Generator) -> Objects:
    # even trials: general linear connection, odd trials: Hermitian
    connection = gen.hermitian_connection() if gen.trial % 2 else gen.connection("linear")
    return {
        "c": connection,
        "g": gen.connection("general"),
        "xi": gen.tvf(gen.base, gen.degree()),
        "sigma": gen.tvf(gen.base, gen.degree()),
        "omega": gen.proj_tvf(gen.degree(), "general"),
    }


def _curvature_identities(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    c, xi, sigma, omega = (objects[name] for name in ("c", "xi", "sigma", "omega"))
    r = curvature(c)
    yield Claim("curvature = coordinate expression", r, curvature_coordinate(c))
    yield Claim("curvature = coordinate expression, nonlinear connection", curvature(objects["g"]),
                curvature_coordinate(objects["g"]))
    yield Claim("d[c] = coordinate expression", cov_ext_diff(c, omega), cov_ext_diff_coordinate(c, omega))
    yield Claim("d[c]c = -R[c]", cov_ext_diff(c, as_tvf(c)), -r)
    lift_xi, lift_sigma = horizontal_lift(c, xi), horizontal_lift(c, sigma)
    yield Claim("nu[c](c(Xi)) = 0", nu(c, lift_xi).is_zero, True)
    yield Claim("[c, c(Xi)] = Xi (contract) R", fn_bracket_proj(as_tvf(c), lift_xi),
                contract_curvature(xi, r).as_proj())
    yield Claim("[c(Xi), c(Sigma)] = c([Xi, Sigma]) - R(Xi, Sigma)", fn_bracket_proj(lift_xi, lift_sigma),
                horizontal_lift(c, fn_bracket(xi, sigma)) - pair_curvature(r, xi, sigma).as_proj())


def _generate_iso(gen: Generator) -> Objects:
    return {"c": gen.hermitian_connection(), "p": gen.pair(gen.degree()), "q": gen.pair(gen.degree())}


def _iso_theorem(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    c, p, q = objects["c"], objects["p"], objects["q"]
    phi = phi_form(c)
    bracket = phi_bracket(phi, p, q)
    yield Claim("j[c] intertwines the brackets", j_map(c, bracket), fn_bracket_proj(j_map(c, p), j_map(c, q)))
    yield Claim("graded antisymmetry", bracket, _signed(p.degree * q.degree + 1, phi_bracket(phi, q, p)))
    yield Claim("underline is the FN bracket", bracket.underline, fn_bracket(p.underline, q.underline))
    base = qchart.base
    central = phi_bracket(phi, HermitianPair(TangentValuedForm.zero(base, p.degree), p.bar),
                          HermitianPair(TangentValuedForm.zero(base, q.degree), q.bar))
    yield Claim("forms are central", central, HermitianPair.zero(base, p.degree + q.degree))


def _generate_jacobi_defect(gen: Generator) -> Objects:
    base = gen.base
    phi = gen.closed_two_form(base) if gen.rng.random() < 0.5 else gen.two_form(base)
    objects: Objects = {"phi": phi}
    for name in ("p1", "p2", "p3"):
        objects[name] = gen.pair(gen.degree())
    for name in ("v1", "v2", "v3"):
        objects[name] = gen.pair(0)
    if gen.params.dim >= 3:
        for name in ("t1", "t2", "t3"):
            objects[name] = gen.decomposable(base, gen.degree(), constant=True)
    return objects


def _degree_zero_triple(objects: Objects) -> Tuple[Decomposable, ...]:
    triple = []
    for name in ("v1", "v2", "v3"):
        underline = objects[name].underline
        triple.append(Decomposable(Form.scalar(ScalarField.one(underline.chart)), underline))
    return tuple(triple)


def _jacobi_defect(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    phi = objects["phi"]
    base = qchart.base
    defect = jacobi_defect(phi, objects["p1"], objects["p2"], objects["p3"])
    yield Claim("underline of the defect vanishes", defect.underline.is_zero, True)
    if ext_d(phi).is_zero:
        yield Claim("closed Phi has no defect", defect.is_zero, True)
    vectors = jacobi_defect(phi, objects["v1"], objects["v2"], objects["v3"])
    yield Claim("vector field defect = 1/2 dPhi(X1, X2, X3)", vectors.bar,
                jacobi_defect_closed_form(phi, _degree_zero_triple(objects)))
    if all(name in objects for name in ("t1", "t2", "t3")):
        triple = tuple(objects[name] for name in ("t1", "t2", "t3"))
        pairs = [HermitianPair(term.as_tvf(), Form.zero(base, term.degree)) for term in triple]
        yield Claim("decomposable defect = 1/2 dPhi(X1, X2, X3) xi1 ^ xi2 ^ xi3",
                    jacobi_defect(phi, *pairs).bar, jacobi_defect_closed_form(phi, triple))


def _jacobi_defect_summary(qchart: QChart, objects: Objects) -> Dict[str, str]:
    phi = objects["phi"]
    defect = jacobi_defect(phi, objects["v1"], objects["v2"], objects["v3"])
    return {
        "dPhi": show(ext_d(phi)),
        "defect": show(defect.bar),
        "closed_form": show(jacobi_defect_closed_form(phi, _degree_zero_triple(objects))),
    }


def _generate_inverse(gen: Generator) -> Objects:
    return {"c": gen.hermitian_connection(), "p": gen.pair(gen.degree()),
            "xi": gen.proj_tvf(gen.degree(), "hermitian")}


def _inverse_pair(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    c, p, xi = objects["c"], objects["p"], objects["xi"]
    image = j_map(c, p)
    yield Claim("j[c] lands in Hermitian forms", hermitian_violation(image), None)
    yield Claim("h[c] o j[c] = id", h_map(c, image), p)
    yield Claim("j[c] o h[c] = id", j_map(c, h_map(c, xi)), xi)
    yield Claim("c(Xi) is Hermitian", hermitian_violation(horizontal_lift(c, p.underline)), None)
    yield Claim("nu[c](c(Xi)) = 0", nu(c, horizontal_lift(c, p.underline)).is_zero, True)
    yield Claim("potential recovered", is_hermitian_connection(c.connection), (True, c.potential))
    broken = _not_hermitian(xi)
    if broken is not None:
        yield Claim("h[c] rejects non-Hermitian forms", _raises(lambda: h_map(c, broken), HermitianError), True)


def _generate_triad(gen: Generator) -> Objects:
    return {
        "c": gen.hermitian_connection(),
        "psi": gen.section(),
        "chi": gen.section(),
        "xi": gen.proj_tvf(gen.degree(), "hermitian"),
        "eta": gen.proj_tvf(0, "hermitian"),
    }


def _hermitian_triad(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    c, psi, chi, xi, eta = (objects[name] for name in ("c", "psi", "chi", "xi", "eta"))
    phi = phi_form(c)
    yield Claim("2 dA = i tr R[c]", phi, phi_form_via_trace(c))
    yield Claim("dPhi[c] = 0", ext_d(phi).is_zero, True)
    yield Claim("R[c] = -i Phi[c] (x) I", curvature(c),
                -VerticalValuedForm.from_proj(vertical(qchart, phi, "imaginary")))
    yield Claim("Hermitian connections are complex-linear", is_complex_linear_connection(c), True)

    nabla_psi, nabla_chi = nabla_section(c, psi), nabla_section(c, chi)
    yield Claim("nabla through the fiber matrix", nabla_psi, nabla_section_general(c, psi))
    leibniz = nabla_psi.conjugate().scale(chi.psi) + nabla_chi.scale(psi.psi.conjugate())
    yield Claim("d h(Psi, Chi) = h(nabla Psi, Chi) + h(Psi, nabla Chi)",
                ComplexForm.differential(hermitian_product(psi, chi)), leibniz)

    yield Claim("d[c]Xi = i (dXi_bar - (-1)^r L(Xi)A) (x) I", cov_ext_diff(c, xi),
                VerticalValuedForm.from_proj(vertical(qchart, hermitian_cov_diff(c, xi), "imaginary")))

    derivative = apply_base_vector(eta.underline, hermitian_product(psi, chi))
    split = hermitian_product(lie_section(eta, psi), chi) + hermitian_product(psi, lie_section(eta, chi))
    yield Claim("Y h(Psi, Chi) = h(L(Y)Psi, Chi) + h(Psi, L(Y)Chi)", derivative, split)


def _generate_vertical_lie(gen: Generator) -> Objects:
    return {
        "xi": gen.proj_tvf(gen.degree(), "general"),
        "rho": gen.proj_tvf(gen.degree(), "real-linear"),
        "alpha": gen.vertical_covector(),
        "c1": gen.connection("general"),
        "c2": gen.connection("linear"),
    }


def _covector_components(qchart: QChart, alpha: TangentValuedForm) -> Dict[int, object]:
    alpha = alpha.lift(qchart.total)
    return {a: alpha.component((), qchart.fiber_position(a)) for a in FIBER}


def _extended_covector(qchart: QChart, components: Dict[int, object], c) -> Form:
    """alpha_a (d^a - c^a_l d^l), the extension of alpha annihilating c."""
    total = qchart.total
    comps = {(qchart.fiber_position(a),): components[a] for a in FIBER}
    for lam in range(qchart.n):
        value = -sum((components[a] * c.component(a, lam) for a in FIBER), ScalarField.zero(total))
        comps[(lam,)] = value
    return Form(total, 1, comps)


def _vertical_lie(qchart: QChart, objects: Objects) -> Iterator[Claim]:
    xi, rho = objects["xi"], objects["rho"]
    components = _covector_components(qchart, objects["alpha"])
    alpha = VerticalCoform(qchart, 0, {((), a): ComplexScalar.real(value) for a, value in components.items()})
    expected = vertical_lie(xi, alpha)
    for name in ("c1", "c2"):
        lie = lie_form(embed(xi), _extended_covector(qchart, components, objects[name]))
        for key in combinations(range(qchart.n), xi.degree):
            for a in FIBER:
                yield Claim(f"d^{a + 1} part of L(Xi) extended with {name}",
                            lie.component(key + (qchart.fiber_position(a),)), expected.component(key, a).re)
    yield Claim("L(Xi)h closed form", lie_metric(rho), vertical_lie(rho, metric(qchart)))


SUITES: Dict[str, Suite] = {suite.name: suite for suite in (
    Suite("fn-antisym", "graded antisymmetry of the FN bracket", _generate_pair_of_tvfs, _fn_antisym,
          ("xi", "sigma")),
    Suite("fn-jacobi", "graded Jacobi identity of the FN bracket", _generate_triple, _fn_jacobi,
          ("xi", "sigma", "tau")),
    Suite("lie-derivation", "[L(Xi), L(Sigma)] = L([Xi, Sigma]) on forms", _generate_lie_derivation,
          _lie_derivation, ("xi", "sigma", "alpha")),
    Suite("dual-route", "decomposable and coordinate FN brackets agree, for several decompositions",
          _generate_dual_route, _dual_route, ("xi", "sigma", "phi")),
    Suite("proj-closure", "projectable forms are closed and the projection is a morphism",
          _generate_projectable, _proj_closure, ("xi", "sigma")),
    Suite("linear-closure", "real/complex-linear forms are closed; [Xi, I] = 0 and [Xi, iI] = 0",
          _generate_linear, _linear_closure, ("xi", "sigma", "zeta", "eta")),
    Suite("hermitian-closure", "Hermitian forms are closed under the bracket, with its decomposition",
          _generate_hermitian, _hermitian_closure, ("xi", "sigma", "alpha", "rho")),
    Suite("curvature-identities", "curvature routes and the identities of c(Xi) brackets",
          _generate_curvature, _curvature_identities, ("c", "g", "xi", "sigma", "omega")),
    Suite("iso-theorem", "j[c] is a graded Lie algebra isomorphism for the Phi[c]-bracket",
          _generate_iso, _iso_theorem, ("c", "p", "q")),
    Suite("jacobi-defect", "Jacobi defect of the Phi-bracket is 1/2 dPhi(X1, X2, X3)",
          _generate_jacobi_defect, _jacobi_defect, ("phi", "p1", "p2", "p3", "v1", "v2", "v3"),
          _jacobi_defect_summary),
    Suite("inverse-pair", "h[c] and j[c] are mutually inverse", _generate_inverse, _inverse_pair,
          ("c", "p", "xi")),
    Suite("hermitian-triad", "Phi[c] routes, R[c] = -i Phi (x) I, metric compatibility of nabla",
          _generate_triad, _hermitian_triad, ("c", "psi", "chi", "xi", "eta")),
    Suite("vertical-lie", "vertical Lie derivative does not depend on the extension",
          _generate_vertical_lie, _vertical_lie, ("xi", "rho", "alpha", "c1", "c2")),
)}


def get_suite(name: str) -> Suite:
    if name not in SUITES:
        raise UnknownSuiteError(f"Unknown suite '{name}'; available: {', '.join(SUITES)}")
    return SUITES[name]


def list_suites() -> List[Tuple[str, str]]:
    return [(suite.name, suite.description) for suite in SUITES.values()]


# -- running -------------------------------------------------------------------

@dataclass(frozen=True)
class TrialFailure:
    trial: int
    message: str
    model: str


@dataclass
class SuiteResult:
    suite: str
    params: GeneratorParams
    seed: int
    trials: int
    passed: int = 0
    failure: Optional[TrialFailure] = None
    summary: Dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failure is None and self.passed == self.trials


def run_trial(name: str, params: GeneratorParams, seed: int, trial: int) -> Tuple[int, Optional[str], Optional[str]]:
    """(trial, failure message, counterexample model) for one trial."""
    suite = get_suite(name)
    gen = Generator(trial_rng(seed, trial), params, trial)
    objects = suite.generate(gen)
    failure = suite.check(gen.qchart, objects)
    if failure is None:
        return trial, None, None
    logger.debug(f"{name} trial {trial} failed: {failure}")
    return trial, failure, dump_model(gen.qchart, objects)


def run_suite(name: str, params: GeneratorParams, seed: int = 0, trials: int = 20, jobs: int = 1,
              progress: bool = False) -> SuiteResult:
    """Run ``trials`` seeded trials; results are collected in trial order."""
    get_suite(name)
    logger.info(f"Running suite {name}: {trials} trials, seed {seed}, {params}")
    result = SuiteResult(name, params, seed, trials)
    task = partial(run_trial, name, params, seed)
    bar = tqdm(total=trials, desc=name, disable=not progress)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(_tracked(pool.map(task, range(trials)), bar))
    else:
        outcomes = list(_tracked(map(task, range(trials)), bar))
    bar.close()
    for trial, failure, model in outcomes:
        if failure is None:
            result.passed += 1
        elif result.failure is None:
            result.failure = TrialFailure(trial, failure, model)
    if result.failure:
        logger.info(f"Suite {name}: first failure in trial {result.failure.trial}")
    else:
        logger.info(f"Suite {name}: {result.passed}/{trials} trials passed")
    return result


def _tracked(outcomes, bar):
    for outcome in outcomes:
        bar.update(1)
        yield outcome


def collect_objects(model: ModelFile) -> Objects:
    """Model objects with ``name_underline``/``name_bar`` and ``name_form``/``name_vector`` reassembled."""
    objects = dict(model.objects)
    for name in list(model.objects):
        for suffix, partner, build in (("_underline", "_bar", HermitianPair), ("_form", "_vector", Decomposable)):
            if not name.endswith(suffix):
                continue
            stem = name[:-len(suffix)]
            if name in objects and stem + partner in objects:
                objects[stem] = build(objects.pop(name), objects.pop(stem + partner))
    return objects


def check_model(name: str, model: ModelFile) -> Tuple[Optional[str], Dict[str, str]]:
    """Re-run a suite's checks on a loaded model: (failure or None, summary)."""
    suite = get_suite(name)
    objects = collect_objects(model)
    missing = [required for required in suite.requires if required not in objects]
    if missing:
        return f"model does not define {', '.join(missing)}", {}
    failure = suite.check(model.qchart, objects)
    summary = {}
    if suite.summary is not None:
        try:
            summary = suite.summary(model.qchart, objects)
        except FnlieError as exc:
            logger.warning(f"Could not summarize {name}: {exc}")
    return failure, summary
