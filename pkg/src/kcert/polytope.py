"""Parametric convex lattice polygons and their exact moment integrals.

The only fan supported is the six-edge del Pezzo fan.  A polygon is built from
the six curve areas, which coincide with the lattice lengths of the edges; the
boundary is traversed counter-clockwise starting from the vertex (a_E3, 0):

    slot   direction   lattice length
    L13    ( 1,  0)    a_L13      (bottom)
    E1     ( 0,  1)    a_E1       (right chop)
    L12    (-1,  1)    a_L12      (hypotenuse)
    E2     (-1,  0)    a_E2       (top)
    L23    ( 0, -1)    a_L23      (left)
    E3     ( 1, -1)    a_E3       (origin chop)

Vertex coordinates are degree <= 1 polynomials in the cone parameters; zero
lattice lengths degenerate the hexagon to a pentagon, trapezoid, or triangle.
Coordinates are u = 2*pi*x, v = 2*pi*y, chosen so that every vertex datum and
every integral below is a parameter polynomial with rational coefficients; pi
factors are restored downstream, in one place.

Integrals:
  * interior monomial moments by fan triangulation from the first vertex,
    an affine map of each triangle onto the standard simplex, and the exact
    simplex identity  integral s^i t^j ds dt = i! j! / (i+j+2)!;
  * boundary integrals in the lattice measure (a primitive segment has
    length 1), edge by edge with p(t) = start + t*direction, t in [0, length].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .poly import MultiPoly, RatFunc, Scalar

AREA_SLOTS = ("E3", "L13", "E1", "L12", "E2", "L23")
EDGE_SLOTS = ("L13", "E1", "L12", "E2", "L23", "E3")
EDGE_DIRECTIONS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


class PolygonError(ValueError):
    """Closure violation or invalid edge data."""


@dataclass(frozen=True)
class AffinePoint:
    """A vertex whose coordinates are degree <= 1 parameter polynomials."""

    u: MultiPoly
    v: MultiPoly

    def __post_init__(self) -> None:
        for coord in (self.u, self.v):
            if coord.total_degree() > 1:
                raise ValueError(f"vertex coordinate has degree > 1: {coord.render()}")

    def render(self) -> str:
        return f"({self.u.render()}, {self.v.render()})"


@dataclass(frozen=True)
class ParamPolygon:
    """Cyclically ordered CCW vertex list with the fixed del Pezzo fan."""

    variables: tuple[str, ...]
    vertices: tuple[AffinePoint, ...]
    edge_directions: tuple[tuple[int, int], ...]
    edge_lattice_lengths: tuple[MultiPoly, ...]

    def render(self) -> str:
        return "[" + ", ".join(p.render() for p in self.vertices) + "]"


def _as_poly(value: MultiPoly | Scalar, variables: tuple[str, ...]) -> MultiPoly:
    if isinstance(value, MultiPoly):
        if value.variables != variables:
            raise ValueError(
                f"area is over {value.variables}, expected {variables}"
            )
        return value
    return MultiPoly.const(variables, value)


def build_polygon(
    areas: Sequence[MultiPoly | Scalar],
    variables: Sequence[str] = (),
    sample_point: Sequence[Scalar] | None = None,
) -> ParamPolygon:
    """Build the moment polygon from the six curve areas.

    ``areas`` is ordered (a_E3, a_L13, a_E1, a_L12, a_E2, a_L23).  The two
    closure relations a_L13 + a_E3 = a_L12 + a_E2 and a_L23 + a_E3 =
    a_L12 + a_E1 are checked as polynomial identities; lattice lengths must be
    nonnegative (and the area positive) at a strictly positive sample point,
    by default all-ones.
    """
    varlist = tuple(variables)
    if len(areas) != 6:
        raise PolygonError(f"expected 6 areas, got {len(areas)}")
    polys = [_as_poly(a, varlist) for a in areas]
    by_slot = dict(zip(AREA_SLOTS, polys))
    closure_a = by_slot["L13"] + by_slot["E3"] - by_slot["L12"] - by_slot["E2"]
    closure_b = by_slot["L23"] + by_slot["E3"] - by_slot["L12"] - by_slot["E1"]
    if not closure_a.is_zero or not closure_b.is_zero:
        raise PolygonError(
            "closure relations violated: "
            f"L13+E3-L12-E2 = {closure_a.render()}, "
            f"L23+E3-L12-E1 = {closure_b.render()}"
        )
    lengths = tuple(by_slot[slot] for slot in EDGE_SLOTS)
    if sample_point is None:
        sample_point = (Fraction(1),) * len(varlist)
    for slot, length in zip(EDGE_SLOTS, lengths):
        value = length.evaluate(sample_point)
        if value < 0:
            raise PolygonError(
                f"edge {slot} has negative lattice length {value} at the sample point"
            )
    zero = MultiPoly.zero(varlist)
    vertices = [AffinePoint(by_slot["E3"], zero)]
    for (dx, dy), length in zip(EDGE_DIRECTIONS[:-1], lengths[:-1]):
        prev = vertices[-1]
        vertices.append(
            AffinePoint(prev.u + length.scale(dx), prev.v + length.scale(dy))
        )
    polygon = ParamPolygon(varlist, tuple(vertices), EDGE_DIRECTIONS, lengths)
    if integrate_monomial(polygon, 0, 0).evaluate(sample_point) <= 0:
        raise PolygonError("polygon has nonpositive area at the sample point")
    return polygon


# st-polynomials: polynomials in the simplex coordinates (s, t) whose
# coefficients are parameter polynomials.
_StPoly = dict[tuple[int, int], MultiPoly]


def _st_mul(a: _StPoly, b: _StPoly) -> _StPoly:
    out: _StPoly = {}
    for (i, j), ca in a.items():
        for (k, l), cb in b.items():
            key = (i + k, j + l)
            prod = ca * cb
            out[key] = out[key] + prod if key in out else prod
    return out


def _st_pow(base: _StPoly, exponent: int, variables: tuple[str, ...]) -> _StPoly:
    result: _StPoly = {(0, 0): MultiPoly.const(variables, 1)}
    for _ in range(exponent):
        result = _st_mul(result, base)
    return result


def integrate_monomial(polygon: ParamPolygon, a: int, b: int) -> MultiPoly:
    """Exact interior integral of u^a v^b over the polygon."""
    if a < 0 or b < 0:
        raise ValueError("monomial exponents must be nonnegative")
    varlist = polygon.variables
    total = MultiPoly.zero(varlist)
    verts = polygon.vertices
    base = verts[0]
    for i in range(1, len(verts) - 1):
        p1, p2 = verts[i], verts[i + 1]
        du1, dv1 = p1.u - base.u, p1.v - base.v
        du2, dv2 = p2.u - base.u, p2.v - base.v
        jacobian = du1 * dv2 - du2 * dv1
        if jacobian.is_zero:
            continue
        u_st: _StPoly = {(0, 0): base.u, (1, 0): du1, (0, 1): du2}
        v_st: _StPoly = {(0, 0): base.v, (1, 0): dv1, (0, 1): dv2}
        integrand = _st_mul(
            _st_pow(u_st, a, varlist), _st_pow(v_st, b, varlist)
        )
        piece = MultiPoly.zero(varlist)
        for (i_s, j_t), coeff in integrand.items():
            weight = Fraction(
                factorial(i_s) * factorial(j_t), factorial(i_s + j_t + 2)
            )
            piece = piece + coeff.scale(weight)
        total = total + jacobian * piece
    return total


def boundary_integral(polygon: ParamPolygon, a: int, b: int) -> MultiPoly:
    """Exact boundary integral of u^a v^b in the lattice measure."""
    if a < 0 or b < 0:
        raise ValueError("monomial exponents must be nonnegative")
    varlist = polygon.variables
    total = MultiPoly.zero(varlist)
    nverts = len(polygon.vertices)
    for i, ((dx, dy), length) in enumerate(
        zip(polygon.edge_directions, polygon.edge_lattice_lengths)
    ):
        if length.is_zero:
            continue
        start = polygon.vertices[i % nverts]
        u_powers = [start.u ** k for k in range(a + 1)]
        v_powers = [start.v ** k for k in range(b + 1)]
        length_powers = [MultiPoly.const(varlist, 1)]
        for _ in range(a + b + 1):
            length_powers.append(length_powers[-1] * length)
        for p in range(a + 1):
            for q in range(b + 1):
                scalar = Fraction(
                    comb(a, p) * comb(b, q) * dx ** p * dy ** q, p + q + 1
                )
                if scalar == 0:
                    continue
                total = total + (
                    u_powers[a - p] * v_powers[b - q] * length_powers[p + q + 1]
                ).scale(scalar)
    return total


def lattice_perimeter(polygon: ParamPolygon) -> MultiPoly:
    total = MultiPoly.zero(polygon.variables)
    for length in polygon.edge_lattice_lengths:
        total = total + length
    return total


@dataclass(frozen=True)
class CentralMoments:
    """Area, barycenter, and central second moments of a polygon.

    iuu = int u^2 - (int u)^2/area etc. as rational functions; puu/pvv/puv are
    the numerators over the common denominator ``area`` (handy for assembling
    larger expressions without denominator growth).
    """

    area: MultiPoly
    u0: RatFunc
    v0: RatFunc
    iuu: RatFunc
    ivv: RatFunc
    iuv: RatFunc
    puu: MultiPoly
    pvv: MultiPoly
    puv: MultiPoly


def central_second_moments(polygon: ParamPolygon) -> CentralMoments:
    area = integrate_monomial(polygon, 0, 0)
    if area.is_zero:
        raise PolygonError("polygon area polynomial is identically zero")
    m10 = integrate_monomial(polygon, 1, 0)
    m01 = integrate_monomial(polygon, 0, 1)
    m20 = integrate_monomial(polygon, 2, 0)
    m11 = integrate_monomial(polygon, 1, 1)
    m02 = integrate_monomial(polygon, 0, 2)
    puu = m20 * area - m10 * m10
    pvv = m02 * area - m01 * m01
    puv = m11 * area - m10 * m01
    return CentralMoments(
        area=area,
        u0=RatFunc.make(m10, area),
        v0=RatFunc.make(m01, area),
        iuu=RatFunc.make(puu, area),
        ivv=RatFunc.make(pvv, area),
        iuv=RatFunc.make(puv, area),
        puu=puu,
        pvv=pvv,
        puv=puv,
    )
