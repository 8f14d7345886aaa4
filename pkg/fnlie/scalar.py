"""
Exact polynomial scalar fields over the coordinates of a chart.

Arithmetic is delegated to a sparse sympy polynomial ring over QQ with lex
order, one ring per chart. Coefficients are arbitrary precision rationals and
the stored dictionary of a polynomial is canonical, so equality is structural.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Mapping, Sequence, Tuple, Union

from cachetools import LRUCache, cached
from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from .errors import ChartMismatchError, DimensionError

logger = logging.getLogger(__name__)

FIBER_NAMES = ("w1", "w2")

Rational = Union[int, Fraction]
Exponent = Tuple[int, ...]


def to_domain(value: Rational):
    """Convert an int or Fraction into an element of QQ."""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_fraction(value) -> Fraction:
    """Convert an element of QQ into a Fraction."""
    return Fraction(int(value.numerator), int(value.denominator))


def format_rational(value: Rational) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class CoordinateKind(Enum):
    """Role of a coordinate in an adapted chart."""
    BASE = "base"
    FIBER = "fiber"


@dataclass(frozen=True)
class Coordinate:
    """A named coordinate and its position in a chart."""
    name: str
    kind: CoordinateKind
    index: int


@dataclass(frozen=True)
class Chart:
    """Ordered coordinates of a chart: base coordinates, then optionally w1, w2."""
    coordinates: Tuple[Coordinate, ...]

    def __post_init__(self):
        if not self.coordinates:
            raise ValueError("A chart needs at least one coordinate")
        names = [c.name for c in self.coordinates]
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate coordinate names in chart {names}")
        for position, coordinate in enumerate(self.coordinates):
            if coordinate.index != position:
                raise ValueError(f"Coordinate {coordinate.name} stored at position {position} has index {coordinate.index}")
        fiber = tuple(c.name for c in self.coordinates if c.kind is CoordinateKind.FIBER)
        if fiber:
            if fiber != FIBER_NAMES:
                raise ValueError(f"Fiber coordinates must be exactly {FIBER_NAMES}, got {fiber}")
            if any(c.kind is CoordinateKind.FIBER for c in self.coordinates[:-2]):
                raise ValueError("Base coordinates must precede fiber coordinates")
        elif any(name in FIBER_NAMES for name in names):
            raise ValueError(f"{FIBER_NAMES} are reserved for fiber coordinates")

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.coordinates)

    @property
    def is_total(self) -> bool:
        return self.coordinates[-1].kind is CoordinateKind.FIBER

    @property
    def base_positions(self) -> Tuple[int, ...]:
        return tuple(c.index for c in self.coordinates if c.kind is CoordinateKind.BASE)

    @property
    def ring(self) -> PolyRing:
        return _polynomial_ring(self.names)

    def position(self, coordinate: Union[Coordinate, str, int]) -> int:
        """Position of a coordinate given by object, name or index."""
        if isinstance(coordinate, Coordinate):
            if coordinate.index >= self.dim or self.coordinates[coordinate.index] != coordinate:
                raise ChartMismatchError(f"Coordinate {coordinate.name} does not belong to chart {self}")
            return coordinate.index
        if isinstance(coordinate, int):
            if not 0 <= coordinate < self.dim:
                raise ChartMismatchError(f"Coordinate index {coordinate} out of range for chart {self}")
            return coordinate
        try:
            return self.names.index(coordinate)
        except ValueError:
            raise ChartMismatchError(f"Unknown coordinate '{coordinate}' on chart {self}") from None

    def __str__(self) -> str:
        return f"({', '.join(self.names)})"


@cached(LRUCache(maxsize=64))
def _polynomial_ring(names: Tuple[str, ...]) -> PolyRing:
    return PolyRing(list(names), QQ, lex)


@cached(LRUCache(maxsize=64))
def make_chart(names: Tuple[str, ...]) -> Chart:
    """Build (and memoize) the chart with the given coordinate names.

    The names w1 and w2 are recognized as fiber coordinates.
    """
    coordinates = tuple(
        Coordinate(name, CoordinateKind.FIBER if name in FIBER_NAMES else CoordinateKind.BASE, position)
        for position, name in enumerate(names)
    )
    logger.debug(f"Creating chart {names}")
    return Chart(coordinates)


def _check_same_chart(first: Chart, second: Chart) -> None:
    if first != second:
        raise ChartMismatchError(f"Chart mismatch: {first} vs {second}")


@dataclass(frozen=True)
class ScalarField:
    """A polynomial in the coordinates of a chart with rational coefficients."""
    chart: Chart
    poly: PolyElement

    @classmethod
    def zero(cls, chart: Chart) -> "ScalarField":
        return cls(chart, chart.ring.zero)

    @classmethod
    def one(cls, chart: Chart) -> "ScalarField":
        return cls(chart, chart.ring.one)

    @classmethod
    def constant(cls, chart: Chart, value: Rational) -> "ScalarField":
        return cls(chart, chart.ring.ground_new(to_domain(value)))

    @classmethod
    def coordinate(cls, chart: Chart, coordinate: Union[Coordinate, str, int]) -> "ScalarField":
        return cls(chart, chart.ring.gens[chart.position(coordinate)])

    @classmethod
    def from_terms(cls, chart: Chart, terms: Mapping[Exponent, Rational]) -> "ScalarField":
        for exponent in terms:
            if len(exponent) != chart.dim:
                raise DimensionError(f"Exponent {exponent} does not match chart dimension {chart.dim}")
        return cls(chart, chart.ring.from_dict({tuple(e): to_domain(c) for e, c in terms.items()}))

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return {exponent: to_fraction(coeff) for exponent, coeff in self.poly.terms()}

    @property
    def is_zero(self) -> bool:
        return not self.poly

    @property
    def is_constant(self) -> bool:
        return all(not any(exponent) for exponent in self.poly.keys())

    def _operand(self, other):
        if isinstance(other, ScalarField):
            _check_same_chart(self.chart, other.chart)
            return other.poly
        if isinstance(other, (int, Fraction)):
            return to_domain(other)
        return NotImplemented

    def __add__(self, other) -> "ScalarField":
        operand = self._operand(other)
        if operand is NotImplemented:
            return NotImplemented
        return ScalarField(self.chart, self.poly + operand)

    __radd__ = __add__

    def __sub__(self, other) -> "ScalarField":
        operand = self._operand(other)
        if operand is NotImplemented:
            return NotImplemented
        return ScalarField(self.chart, self.poly - operand)

    def __rsub__(self, other) -> "ScalarField":
        return (-self) + other

    def __neg__(self) -> "ScalarField":
        return ScalarField(self.chart, -self.poly)

    def __mul__(self, other) -> "ScalarField":
        operand = self._operand(other)
        if operand is NotImplemented:
            return NotImplemented
        return ScalarField(self.chart, self.poly * operand)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ScalarField":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Only natural powers are supported, got {exponent}")
        return ScalarField(self.chart, self.poly ** exponent)

    def diff(self, coordinate: Union[Coordinate, str, int]) -> "ScalarField":
        return ScalarField(self.chart, self.poly.diff(self.chart.position(coordinate)))

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        if len(point) != self.chart.dim:
            raise DimensionError(f"Point has {len(point)} entries, chart {self.chart} has dimension {self.chart.dim}")
        return to_fraction(self.poly(*[to_domain(value) for value in point]))

    def depends_on(self, coordinate: Union[Coordinate, str, int]) -> bool:
        position = self.chart.position(coordinate)
        return any(exponent[position] for exponent in self.poly.keys())

    def lift(self, chart: Chart) -> "ScalarField":
        """Re-express on a chart containing all coordinates of this one."""
        if chart == self.chart:
            return self
        positions = [chart.position(name) for name in self.chart.names]
        terms = {}
        for exponent, coeff in self.poly.items():
            lifted = [0] * chart.dim
            for source, target in enumerate(positions):
                lifted[target] = exponent[source]
            terms[tuple(lifted)] = coeff
        return ScalarField(chart, chart.ring.from_dict(terms))

    def restrict(self, chart: Chart) -> "ScalarField":
        """Re-express on a sub-chart; fails if a dropped coordinate appears."""
        if chart == self.chart:
            return self
        positions = [self.chart.position(name) for name in chart.names]
        dropped = [i for i in range(self.chart.dim) if i not in positions]
        terms = {}
        for exponent, coeff in self.poly.items():
            for i in dropped:
                if exponent[i]:
                    raise ChartMismatchError(
                        f"{self} depends on {self.chart.names[i]}, which is not a coordinate of {chart}"
                    )
            terms[tuple(exponent[i] for i in positions)] = coeff
        return ScalarField(chart, chart.ring.from_dict(terms))

    def split_fiber(self, base: Chart) -> Dict[Tuple[int, int], "ScalarField"]:
        """Expand in the fiber coordinates w1, w2 with coefficients on the base chart."""
        if not self.chart.is_total or self.chart.names[:-2] != base.names:
            raise ChartMismatchError(f"{self.chart} is not the total chart over {base}")
        n = base.dim
        grouped: Dict[Tuple[int, int], Dict[Exponent, object]] = {}
        for exponent, coeff in self.poly.items():
            grouped.setdefault((exponent[n], exponent[n + 1]), {})[exponent[:n]] = coeff
        return {key: ScalarField(base, base.ring.from_dict(terms)) for key, terms in sorted(grouped.items())}

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(f: ScalarField) -> str:
    """Canonical rendering, terms in descending lex order, e.g. ``x**2*y - 1/2*w1 + 3``."""
    if f.is_zero:
        return "0"
    pieces = []
    for exponent, coeff in f.poly.terms():
        value = to_fraction(coeff)
        monomial = "*".join(
            name if power == 1 else f"{name}**{power}"
            for name, power in zip(f.chart.names, exponent) if power
        )
        magnitude = abs(value)
        if not monomial:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_rational(magnitude)}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if value < 0 else body)
        else:
            pieces.append(f"- {body}" if value < 0 else f"+ {body}")
    return " ".join(pieces)


def diff(f: ScalarField, c: Union[Coordinate, str, int]) -> ScalarField:
    """Exact partial derivative of f along coordinate c."""
    return f.diff(c)


def evaluate(f: ScalarField, point: Sequence[Rational]) -> Fraction:
    """Exact value of f at a rational point (one entry per chart coordinate)."""
    return f.evaluate(point)


def equal(f: ScalarField, g: ScalarField) -> bool:
    """True iff f - g is the zero polynomial."""
    _check_same_chart(f.chart, g.chart)
    return (f - g).is_zero


@dataclass(frozen=True)
class ComplexScalar:
    """A complex valued polynomial stored as its real and imaginary parts."""
    re: ScalarField
    im: ScalarField

    def __post_init__(self):
        _check_same_chart(self.re.chart, self.im.chart)

    @classmethod
    def zero(cls, chart: Chart) -> "ComplexScalar":
        return cls(ScalarField.zero(chart), ScalarField.zero(chart))

    @classmethod
    def real(cls, f: ScalarField) -> "ComplexScalar":
        return cls(f, ScalarField.zero(f.chart))

    @classmethod
    def imaginary(cls, f: ScalarField) -> "ComplexScalar":
        return cls(ScalarField.zero(f.chart), f)

    @property
    def chart(self) -> Chart:
        return self.re.chart

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    @property
    def is_real(self) -> bool:
        return self.im.is_zero

    def _operand(self, other) -> "ComplexScalar":
        if isinstance(other, ComplexScalar):
            return other
        if isinstance(other, ScalarField):
            return ComplexScalar.real(other)
        if isinstance(other, (int, Fraction)):
            return ComplexScalar.real(ScalarField.constant(self.chart, other))
        return NotImplemented

    def __add__(self, other) -> "ComplexScalar":
        other = self._operand(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexScalar":
        other = self._operand(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexScalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexScalar":
        return ComplexScalar(-self.re, -self.im)

    def __mul__(self, other) -> "ComplexScalar":
        other = self._operand(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def times_i(self) -> "ComplexScalar":
        return ComplexScalar(-self.im, self.re)

    def diff(self, coordinate: Union[Coordinate, str, int]) -> "ComplexScalar":
        return ComplexScalar(self.re.diff(coordinate), self.im.diff(coordinate))

    def lift(self, chart: Chart) -> "ComplexScalar":
        return ComplexScalar(self.re.lift(chart), self.im.lift(chart))

    def restrict(self, chart: Chart) -> "ComplexScalar":
        return ComplexScalar(self.re.restrict(chart), self.im.restrict(chart))

    def __str__(self) -> str:
        return format_complex(self)


def format_complex(z: ComplexScalar) -> str:
    """Render as ``re``, ``ki``, ``i*(im)`` or ``(re) + i*(im)``."""
    if z.im.is_zero:
        return str(z.re)
    if z.im.is_constant and len(z.im.poly) == 1:
        value = z.im.terms[(0,) * z.chart.dim]
        imaginary = {1: "i", -1: "-i"}.get(value, f"{format_rational(value)}i")
    else:
        imaginary = f"i*({z.im})"
    if z.re.is_zero:
        return imaginary
    return f"({z.re}) + {imaginary}"
