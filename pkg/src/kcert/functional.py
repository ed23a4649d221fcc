"""Assembly of the scale-invariant objective over the Kahler cone.

For a class Omega the objective is

    calA(Omega) = (c1 . Omega)^2 / Omega^2  +  ||F(Omega)||^2 / (32 pi^2)

where F = (F1, F2) are the two moment-weighted curvature obstructions and the
norm is taken against the inverse of the central second-moment matrix of the
moment polygon.  Everything here reduces to exact polygon data:

    c1 . Omega  =  lattice perimeter of the polygon,
    Omega^2     =  2 * area,
    F_i         =  2 [ boundary(w_i) - perimeter/area * interior(w_i) ],
    A, B, C     =  central second moments / (4 pi^2).

Two independent computations of F_i are provided: the transcribed closed
forms on the coordinate charts and the boundary-measure route above; their
agreement is a pipeline identity.  Pi powers ride along in PiRatFunc wrappers
so that only genuinely pi-free quantities are ever exported as plain rational
functions.

Denominator discipline: the objective is assembled over the structured
denominator 8 * area * det, where det is the numerator of the moment
determinant over area^2.  This keeps the convexity certificates' denominators
manifestly positive and the second-derivative computation affordable; no
cancellation is attempted anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import univar
from .delpezzo import (
    AreaVector,
    CohClass,
    ConeChart,
    K2_CHART,
    c1_class,
    pair,
    subspace_membership,
)
from .poly import (
    MultiPoly,
    PiPowerMismatchError,
    PiScalar,
    RatFunc,
    Scalar,
)
from .polytope import (
    ParamPolygon,
    build_polygon,
    boundary_integral,
    central_second_moments,
    integrate_monomial,
    lattice_perimeter,
)


class DegenerateMomentMatrix(ZeroDivisionError):
    """The central second-moment matrix is singular (det = 0)."""


@dataclass(frozen=True)
class PiRatFunc:
    """A rational function times an integer power of pi."""

    rf: RatFunc
    pi_power: int = 0

    def __add__(self, other: PiRatFunc) -> PiRatFunc:
        if self.rf.is_zero:
            return other
        if other.rf.is_zero:
            return self
        if self.pi_power != other.pi_power:
            raise PiPowerMismatchError(
                f"cannot add pi^{self.pi_power} and pi^{other.pi_power} terms"
            )
        return PiRatFunc(self.rf + other.rf, self.pi_power)

    def __sub__(self, other: PiRatFunc) -> PiRatFunc:
        return self + PiRatFunc(-other.rf, other.pi_power)

    def __mul__(self, other: PiRatFunc | RatFunc | MultiPoly | Scalar) -> PiRatFunc:
        if not isinstance(other, PiRatFunc):
            return PiRatFunc(self.rf * other, self.pi_power)
        return PiRatFunc(self.rf * other.rf, self.pi_power + other.pi_power)

    def __truediv__(self, other: PiRatFunc | PiScalar) -> PiRatFunc:
        if isinstance(other, PiScalar):
            other = PiRatFunc(
                RatFunc.const(self.rf.variables, other.mantissa), other.pi_power
            )
        return PiRatFunc(self.rf / other.rf, self.pi_power - other.pi_power)

    def evaluate(self, point: Sequence[Scalar]) -> PiScalar:
        return PiScalar(self.rf.evaluate(point), self.pi_power)

    def as_pi_free(self) -> RatFunc:
        if self.pi_power != 0 and not self.rf.is_zero:
            raise PiPowerMismatchError(
                f"value carries pi^{self.pi_power}, not exportable as rational"
            )
        return self.rf

    def equals(self, other: PiRatFunc) -> bool:
        if self.rf.is_zero and other.rf.is_zero:
            return True
        return self.pi_power == other.pi_power and self.rf.equals(other.rf)

    def render(self) -> str:
        if self.pi_power == 0:
            return self.rf.render()
        return f"({self.rf.render()})*pi^{self.pi_power}"


def _closed_form_brackets(chart: ConeChart) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """(bracket1, bracket2, volume) with F_i = bracket_i / volume on the chart."""
    third = Fraction(1, 3)
    half = Fraction(1, 2)
    if chart.chart_id == "k2":
        beta, gamma = chart.gens()
        b1 = (beta - 2 * gamma) * (gamma ** 2 + gamma + third) + gamma * (
            gamma - beta
        ) * (beta + 2 * gamma + 2)
        b2 = (gamma - 2 * beta) * (beta ** 2 + beta + third) + beta * (
            beta - gamma
        ) * (gamma + 2 * beta + 2)
        volume = beta * gamma + beta + gamma + half
        return b1, b2, volume
    if chart.chart_id == "k3":
        alpha, beta, gamma = chart.gens()
        b1 = (alpha + beta - 2 * gamma) * (gamma ** 2 + gamma + third) + (
            gamma - alpha
        ) * (gamma - beta) * (alpha + beta + 2 * gamma + 2)
        b2 = (alpha + gamma - 2 * beta) * (beta ** 2 + beta + third) + (
            beta - alpha
        ) * (beta - gamma) * (alpha + gamma + 2 * beta + 2)
        volume = (
            alpha * beta + alpha * gamma + beta * gamma + alpha + beta + gamma + half
        )
        return b1, b2, volume
    raise ValueError(f"unsupported chart {chart.chart_id!r}")


def futaki_closed_form(chart: ConeChart) -> tuple[RatFunc, RatFunc]:
    """The transcribed closed forms of the two obstruction components."""
    b1, b2, volume = _closed_form_brackets(chart)
    return RatFunc.make(b1, volume), RatFunc.make(b2, volume)


def _polygon_from_areas(
    areas: AreaVector | Sequence[MultiPoly | Scalar],
    variables: Sequence[str] = (),
) -> ParamPolygon:
    entries = areas.as_tuple() if isinstance(areas, AreaVector) else tuple(areas)
    return build_polygon(entries, variables)


def futaki_boundary(
    areas: AreaVector | Sequence[MultiPoly | Scalar],
    variables: Sequence[str] = (),
) -> tuple[RatFunc, RatFunc]:
    """Obstruction components from boundary and interior polygon integrals.

    F_i = 2 [ boundary(w_i) * area - perimeter * interior(w_i) ] / area with
    w_1 = u, w_2 = v; exact in the cone parameters (or plain rationals when
    the areas are numeric).
    """
    polygon = _polygon_from_areas(areas, variables)
    area = integrate_monomial(polygon, 0, 0)
    perimeter = lattice_perimeter(polygon)
    m10 = integrate_monomial(polygon, 1, 0)
    m01 = integrate_monomial(polygon, 0, 1)
    bu = boundary_integral(polygon, 1, 0)
    bv = boundary_integral(polygon, 0, 1)
    f1 = RatFunc.make((bu * area - perimeter * m10).scale(2), area)
    f2 = RatFunc.make((bv * area - perimeter * m01).scale(2), area)
    return f1, f2


def futaki_norm_sq(
    f1: RatFunc | PiRatFunc,
    f2: RatFunc | PiRatFunc,
    a: PiRatFunc,
    b: PiRatFunc,
    c: PiRatFunc,
) -> PiRatFunc:
    """||F||^2 = (B F1^2 - 2 C F1 F2 + A F2^2) / (AB - C^2); carries pi^2."""
    if isinstance(f1, RatFunc):
        f1 = PiRatFunc(f1, 0)
    if isinstance(f2, RatFunc):
        f2 = PiRatFunc(f2, 0)
    numerator = b * f1 * f1 - (c * f1 * f2) * 2 + a * f2 * f2
    determinant = a * b - c * c
    if determinant.rf.is_zero:
        raise DegenerateMomentMatrix("moment matrix determinant vanishes")
    return numerator / determinant


@dataclass(frozen=True)
class FunctionalBundle:
    """Every exact ingredient of the objective on one coordinate chart."""

    chart: ConeChart
    volume: MultiPoly              # V = area of the moment polygon = Omega^2/2
    c1_pairing: MultiPoly          # c1 . Omega = lattice perimeter
    f1: RatFunc
    f2: RatFunc
    a: PiRatFunc                   # carries pi^-2
    b: PiRatFunc
    c: PiRatFunc
    moment_det: MultiPoly          # puu*pvv - puv^2, the moment determinant over V^2
    first_term: RatFunc
    futaki_norm_sq_over_32pi2: RatFunc
    calA: RatFunc


@lru_cache(maxsize=None)
def build_bundle(chart: ConeChart) -> FunctionalBundle:
    """Assemble the objective and its ingredients on a chart, exactly.

    The second term is assembled over the structured denominator
    8 * V * det with det = puu*pvv - puv^2 (moment numerators over V), and the
    full objective over 8 * V * det as well:

        calA = [ 4 * perimeter^2 * det + N_F ] / [ 8 * V * det ],
        N_F  = pvv*q1^2 - 2*puv*q1*q2 + puu*q2^2,

    q_i being the closed-form brackets with F_i = q_i / V.
    """
    b1, b2, volume_closed = _closed_form_brackets(chart)
    polygon = _polygon_from_areas(chart.area_vector(), chart.variables)
    moments = central_second_moments(polygon)
    volume = moments.area
    if volume != volume_closed:
        raise AssertionError(
            "polygon area disagrees with the closed-form volume polynomial"
        )
    perimeter = lattice_perimeter(polygon)
    quarter = Fraction(1, 4)
    a = PiRatFunc(RatFunc.make(moments.puu.scale(quarter), volume), -2)
    b = PiRatFunc(RatFunc.make(moments.pvv.scale(quarter), volume), -2)
    c = PiRatFunc(RatFunc.make(moments.puv.scale(quarter), volume), -2)
    det = moments.puu * moments.pvv - moments.puv * moments.puv
    if det.is_zero:
        raise DegenerateMomentMatrix("moment matrix determinant vanishes on the chart")
    n_f = b1 * b1 * moments.pvv - (b1 * b2 * moments.puv).scale(2) + b2 * b2 * moments.puu
    first_term = RatFunc.make(perimeter * perimeter, volume.scale(2))
    second_term = RatFunc.make(n_f, (volume * det).scale(8))
    cal_a = RatFunc.make(
        (perimeter * perimeter * det).scale(4) + n_f,
        (volume * det).scale(8),
    )
    return FunctionalBundle(
        chart=chart,
        volume=volume,
        c1_pairing=perimeter,
        f1=RatFunc.make(b1, volume),
        f2=RatFunc.make(b2, volume),
        a=a,
        b=b,
        c=c,
        moment_det=det,
        first_term=first_term,
        futaki_norm_sq_over_32pi2=second_term,
        calA=cal_a,
    )


def assemble_calA(chart: ConeChart) -> RatFunc:
    return build_bundle(chart).calA


def average_scalar_curvature(chart: ConeChart) -> PiRatFunc:
    """s0 = 4 pi (c1 . Omega) / V on the chart."""
    bundle = build_bundle(chart)
    return PiRatFunc(
        RatFunc.make(bundle.c1_pairing.scale(4), bundle.volume), 1
    )


@dataclass(frozen=True)
class DiagonalRestriction:
    """The one-variable restriction of the k=2 objective to beta = gamma.

    f is the restriction in lowest terms (univariate reduction only); its
    derivatives are published through the printed convention d f = 12 P / den^2
    and d2 f = 12 Q / den^3, structural denominators, no cancellation.
    """

    f: RatFunc
    p: MultiPoly
    q: MultiPoly
    df: RatFunc
    d2f: RatFunc

    def df_at(self, x: Scalar) -> Fraction:
        return self.df.evaluate((x,))

    def f_at(self, x: Scalar) -> Fraction:
        return self.f.evaluate((x,))


@lru_cache(maxsize=None)
def restrict_diagonal() -> DiagonalRestriction:
    """Substitute gamma := beta into the k=2 objective and reduce."""
    cal_a = build_bundle(K2_CHART).calA
    x = MultiPoly.variable(("beta",), "beta")
    images = {"beta": x, "gamma": x}
    raw_num = cal_a.num.substitute(images, ("beta",))
    raw_den = cal_a.den.substitute(images, ("beta",))
    num_coeffs = univar.from_multipoly(raw_num)
    den_coeffs = univar.from_multipoly(raw_den)
    common = univar.poly_gcd(num_coeffs, den_coeffs)
    num_coeffs = univar.exact_div(num_coeffs, common)
    den_coeffs = univar.exact_div(den_coeffs, common)
    f = RatFunc.make(
        univar.to_multipoly(num_coeffs, "beta"),
        univar.to_multipoly(den_coeffs, "beta"),
    )
    n, d = f.num, f.den
    dn = n.diff("beta")
    dd = d.diff("beta")
    d1_num = dn * d - n * dd
    d2_num = (
        dn.diff("beta") * d * d
        - (dn * dd * d).scale(2)
        - n * dd.diff("beta") * d
        + (n * dd * dd).scale(2)
    )
    twelfth = Fraction(1, 12)
    return DiagonalRestriction(
        f=f,
        p=d1_num.scale(twelfth),
        q=d2_num.scale(twelfth),
        df=RatFunc(d1_num, d * d),
        d2f=RatFunc(d2_num, d ** 3),
    )


def first_variation_along_c1(omega: CohClass) -> Fraction:
    """d/dt at t=0 of the objective along Omega + t*c1, for Omega in V or W.

    On those subspaces the obstruction term vanishes, so the objective is
    (c1 . Omega)^2 / Omega^2 and the variation is
    2 (c1 . Omega) / (Omega^2)^2 * [ Omega^2 c1^2 - (c1 . Omega)^2 ].
    """
    if omega.k != 3:
        raise ValueError("the c1-direction variation is a k = 3 computation")
    in_v, in_w = subspace_membership(omega)
    if not (in_v or in_w):
        raise ValueError("class lies in neither invariant subspace")
    omega_sq = pair(omega, omega)
    if omega_sq == 0:
        raise ZeroDivisionError("null class: Omega^2 = 0")
    c1 = c1_class(3)
    p = pair(c1, omega)
    c1_sq = pair(c1, c1)
    return 2 * p * (omega_sq * c1_sq - p * p) / (omega_sq * omega_sq)


def evaluate_calA_on_areas(areas: Sequence[Scalar] | AreaVector) -> Fraction:
    """Exact objective value from a numeric six-area vector.

    Runs the full polygon pipeline (moments, boundary obstructions) at one
    rational point; used for classes outside the coordinate charts and for
    invariance sampling.
    """
    entries = areas.as_tuple() if isinstance(areas, AreaVector) else tuple(areas)
    values = [Fraction(x) if not isinstance(x, Fraction) else x for x in entries]
    polygon = build_polygon(values, (), ())
    area = integrate_monomial(polygon, 0, 0).constant_value()
    perimeter = lattice_perimeter(polygon).constant_value()
    m10 = integrate_monomial(polygon, 1, 0).constant_value()
    m01 = integrate_monomial(polygon, 0, 1).constant_value()
    m20 = integrate_monomial(polygon, 2, 0).constant_value()
    m11 = integrate_monomial(polygon, 1, 1).constant_value()
    m02 = integrate_monomial(polygon, 0, 2).constant_value()
    bu = boundary_integral(polygon, 1, 0).constant_value()
    bv = boundary_integral(polygon, 0, 1).constant_value()
    puu = m20 * area - m10 * m10
    pvv = m02 * area - m01 * m01
    puv = m11 * area - m10 * m01
    det = puu * pvv - puv * puv
    if det == 0:
        raise DegenerateMomentMatrix("moment matrix determinant vanishes")
    q1 = 2 * (bu * area - perimeter * m10)
    q2 = 2 * (bv * area - perimeter * m01)
    n_f = pvv * q1 * q1 - 2 * puv * q1 * q2 + puu * q2 * q2
    return perimeter * perimeter / (2 * area) + n_f / (8 * area * det)


def evaluate_futaki_on_areas(
    areas: Sequence[Scalar] | AreaVector,
) -> tuple[Fraction, Fraction]:
    """Exact obstruction components at a numeric six-area vector."""
    f1, f2 = futaki_boundary(areas, ())
    return f1.evaluate(()), f2.evaluate(())


STANDARD_SAMPLE_POINTS = {
    "k2": ((Fraction(1), Fraction(1)), (Fraction(1), Fraction(2))),
    "k3": (
        (Fraction(1), Fraction(1), Fraction(1)),
        (Fraction(1), Fraction(2), Fraction(3)),
    ),
}


def bundle_summary(chart: ConeChart) -> dict:
    """Canonical text of the bundle plus evaluations at standard points."""
    bundle = build_bundle(chart)
    evaluations = {}
    for point in STANDARD_SAMPLE_POINTS[chart.chart_id]:
        key = ",".join(str(x) for x in point)
        evaluations[key] = {
            "V": str(bundle.volume.evaluate(point)),
            "c1_pairing": str(bundle.c1_pairing.evaluate(point)),
            "F1": str(bundle.f1.evaluate(point)),
            "F2": str(bundle.f2.evaluate(point)),
            "A": bundle.a.evaluate(point).render(),
            "B": bundle.b.evaluate(point).render(),
            "C": bundle.c.evaluate(point).render(),
            "calA": str(bundle.calA.evaluate(point)),
        }
    return {
        "chart": chart.chart_id,
        "volume": bundle.volume.render(),
        "c1_pairing": bundle.c1_pairing.render(),
        "F1": bundle.f1.render(),
        "F2": bundle.f2.render(),
        "calA": bundle.calA.render(),
        "evaluations": evaluations,
    }
