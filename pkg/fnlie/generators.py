"""
Seeded random objects for the verification suites.

Every trial owns its own ``random.Random``; trial ``k`` of a run with seed ``s``
is seeded with the string ``"s:k"`` so trials are reproducible one by one and
independent of the order in which they run.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from .classify import HermitianPair
from .connection import Connection, HermitianConnection
from .exterior import Decomposable, Form, TangentValuedForm, ext_d
from .qbundle import FIBER, ProjTVF, QChart, Section, hermitian_from_parts
from .scalar import Chart, ComplexScalar, ScalarField, make_chart

logger = logging.getLogger(__name__)

BASE_NAMES = ("x", "y", "z", "u", "v")


@dataclass(frozen=True)
class GeneratorParams:
    """Size of the random instances: base dimension, form degrees, polynomial degree."""
    dim: int = 2
    max_degree: int = 1
    coeff_degree: int = 1
    max_terms: int = 3

    def __post_init__(self):
        if not 1 <= self.dim <= len(BASE_NAMES):
            raise ValueError(f"dim must be between 1 and {len(BASE_NAMES)}, got {self.dim}")
        if self.max_degree < 0 or self.coeff_degree < 0 or self.max_terms < 1:
            raise ValueError("max_degree and coeff_degree must be >= 0, max_terms >= 1")


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{trial}")


class Generator:
    """Random charts, polynomials, forms and bundle objects drawn from one rng.

    ``trial`` is the index of the trial within its run; suites that split
    their trials between cases read it instead of the rng.
    """

    def __init__(self, rng: random.Random, params: GeneratorParams, trial: int = 0):
        self.rng = rng
        self.params = params
        self.trial = trial
        self.base = make_chart(BASE_NAMES[:params.dim])
        self.qchart = QChart.over(self.base)

    # scalars

    def rational(self) -> Fraction:
        return Fraction(self.rng.choice([-3, -2, -1, 1, 2, 3]), self.rng.choice([1, 1, 2]))

    def degree(self, at_most: Optional[int] = None) -> int:
        top = self.params.max_degree if at_most is None else at_most
        return self.rng.randint(0, min(top, self.params.dim))

    def polynomial(self, chart: Chart, positions: Optional[Sequence[int]] = None,
                   degree: Optional[int] = None, allow_zero: bool = True) -> ScalarField:
        """Sparse polynomial in the given coordinate positions (default: all)."""
        positions = list(range(chart.dim)) if positions is None else list(positions)
        degree = self.params.coeff_degree if degree is None else degree
        terms: Dict[tuple, Fraction] = {}
        for _ in range(self.rng.randint(0 if allow_zero else 1, self.params.max_terms)):
            exponent = [0] * chart.dim
            for _ in range(self.rng.randint(0, degree)):
                if positions:
                    exponent[self.rng.choice(positions)] += 1
            key = tuple(exponent)
            terms[key] = terms.get(key, Fraction(0)) + self.rational()
        return ScalarField.from_terms(chart, terms)

    def base_polynomial(self, chart: Chart, degree: Optional[int] = None) -> ScalarField:
        return self.polynomial(chart, range(self.params.dim), degree)

    # forms on a chart

    def _keys(self, chart_dim: int, degree: int, limit: int) -> List[tuple]:
        keys = list(combinations(range(chart_dim), degree))
        if not keys:
            return []
        return self.rng.sample(keys, self.rng.randint(1, min(limit, len(keys))))

    def form(self, chart: Chart, degree: int) -> Form:
        return Form(chart, degree, {key: self.polynomial(chart) for key in self._keys(chart.dim, degree, 2)})

    def constant_form(self, chart: Chart, degree: int) -> Form:
        return Form(chart, degree, {key: ScalarField.constant(chart, self.rational())
                                    for key in self._keys(chart.dim, degree, 2)})

    def tvf(self, chart: Chart, degree: int) -> TangentValuedForm:
        comps = {}
        for key in self._keys(chart.dim, degree, 2):
            for mu in self.rng.sample(range(chart.dim), self.rng.randint(1, chart.dim)):
                comps[(key, mu)] = self.polynomial(chart)
        return TangentValuedForm(chart, degree, comps)

    def vector_field(self, chart: Chart) -> TangentValuedForm:
        return self.tvf(chart, 0)

    def decomposable(self, chart: Chart, degree: int, constant: bool = False) -> Decomposable:
        """A decomposable xi (x) X; constant forms come with coordinate fields."""
        if constant:
            form = self.constant_form(chart, degree)
            vector = TangentValuedForm.coordinate_field(chart, self.rng.randrange(chart.dim))
        else:
            form = Form.scalar(ScalarField.one(chart)) if degree == 0 else self.form(chart, degree)
            vector = self.vector_field(chart)
        return Decomposable(form, vector)

    def closed_two_form(self, chart: Chart) -> Form:
        return ext_d(self.form(chart, 1))

    def two_form(self, chart: Chart) -> Form:
        return self.form(chart, 2) if chart.dim >= 2 else Form.zero(chart, 2)

    # objects on the line bundle

    def _fiber_linear(self, a: int, entries: Dict) -> ScalarField:
        total = self.qchart.total
        value = ScalarField.zero(total)
        for b in FIBER:
            coefficient = entries.get((a, b))
            if coefficient is not None:
                value = value + coefficient.lift(total) * self.qchart.w(b)
        return value

    def proj_tvf(self, degree: int, kind: str = "general") -> ProjTVF:
        """Projectable form of the given kind: general, real-linear, complex-linear or hermitian."""
        qchart = self.qchart
        base, total = qchart.base, qchart.total
        if kind == "hermitian":
            return hermitian_from_parts(qchart, self.tvf(base, degree), self.form(base, degree))
        underline = self.tvf(base, degree)
        fiber = {}
        for key in self._keys(base.dim, degree, 2):
            if kind == "general":
                for a in FIBER:
                    fiber[(key, a)] = self.polynomial(total)
                continue
            if kind == "real-linear":
                entries = {(a, b): self.base_polynomial(base) for a in FIBER for b in FIBER}
            elif kind == "complex-linear":
                p, q = self.base_polynomial(base), self.base_polynomial(base)
                entries = {(0, 0): p, (1, 1): p, (1, 0): q, (0, 1): -q}
            else:
                raise ValueError(f"Unknown projectable kind '{kind}'")
            for a in FIBER:
                fiber[(key, a)] = self._fiber_linear(a, entries)
        return ProjTVF(qchart, degree, underline.comps, fiber)

    def connection(self, kind: str = "linear") -> Connection:
        """Random connection: general (polynomial in w) or linear in the fiber."""
        qchart = self.qchart
        comps = {}
        for lam in range(qchart.n):
            if kind == "general":
                for a in FIBER:
                    comps[(a, lam)] = self.polynomial(qchart.total)
            elif kind == "linear":
                entries = {(a, b): self.base_polynomial(qchart.base) for a in FIBER for b in FIBER}
                for a in FIBER:
                    comps[(a, lam)] = self._fiber_linear(a, entries)
            else:
                raise ValueError(f"Unknown connection kind '{kind}'")
        return Connection(qchart, comps)

    def hermitian_connection(self) -> HermitianConnection:
        return HermitianConnection(self.qchart, self.form(self.qchart.base, 1))

    def section(self) -> Section:
        base = self.qchart.base
        return Section(self.qchart, ComplexScalar(self.base_polynomial(base), self.base_polynomial(base)))

    def pair(self, degree: int) -> HermitianPair:
        base = self.qchart.base
        return HermitianPair(self.tvf(base, degree), self.form(base, degree))

    def vertical_covector(self) -> TangentValuedForm:
        """Components alpha_a on the total chart, stored along the fiber directions."""
        total = self.qchart.total
        return TangentValuedForm(total, 0, {((), self.qchart.fiber_position(a)): self.polynomial(total)
                                            for a in FIBER})
