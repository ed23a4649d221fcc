"""Second cohomology of the k-point blow-up of the projective plane.

Classes are stored in the (H, E1, E2, E3) basis with exceptional coefficients
carrying their natural sign: ``CohClass(h, e1, e2, e3)`` is the class
h*H - e1*E1 - e2*E2 - e3*E3, so that e_i is exactly the area of the i-th
exceptional curve.  The intersection pairing is Lorentzian,
<x, y> = h*h' - sum(e_i * e_i'), and the anticanonical class is (3, 1, 1, 1).

Entries may be exact rationals or parameter polynomials; all maps here are
linear, so both work uniformly.

The six-curve area vector uses the slot order of the polygon builder,
(a_E3, a_L13, a_E1, a_L12, a_E2, a_L23) with a_Ljk = <Omega, H - Ej - Ek>.
On the four linear coordinates (alpha, beta, gamma, delta) =
(a_E3, a_E2, a_E1, a_L12 - a_E3) the Cremona involution acts by
(alpha, beta, gamma, delta) -> (alpha+delta, beta+delta, gamma+delta, -delta).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .poly import MultiPoly, Scalar

Entry = Union[Fraction, MultiPoly]


def _is_zero_entry(value: Entry) -> bool:
    if isinstance(value, MultiPoly):
        return value.is_zero
    return value == 0


def _as_entry(value: Entry | int) -> Entry:
    if isinstance(value, MultiPoly):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class CohClass:
    """A cohomology class h*H - e1*E1 - e2*E2 - e3*E3 on the k-fold blow-up."""

    h: Entry
    e1: Entry
    e2: Entry
    e3: Entry
    k: int = 3

    def __post_init__(self) -> None:
        if self.k not in (1, 2, 3):
            raise ValueError(f"k must be 1, 2, or 3, not {self.k}")
        object.__setattr__(self, "h", _as_entry(self.h))
        object.__setattr__(self, "e1", _as_entry(self.e1))
        object.__setattr__(self, "e2", _as_entry(self.e2))
        object.__setattr__(self, "e3", _as_entry(self.e3))
        exceptional = (self.e1, self.e2, self.e3)
        for i in range(self.k, 3):
            if not _is_zero_entry(exceptional[i]):
                raise ValueError(f"e{i + 1} must vanish for k = {self.k}")

    def exceptional(self) -> tuple[Entry, Entry, Entry]:
        return (self.e1, self.e2, self.e3)

    def scale(self, factor: Scalar) -> CohClass:
        return CohClass(
            self.h * factor, self.e1 * factor, self.e2 * factor, self.e3 * factor, self.k
        )


def c1_class(k: int = 3) -> CohClass:
    """The anticanonical class 3H - E1 - ... - Ek."""
    ones = [Fraction(1)] * k + [Fraction(0)] * (3 - k)
    return CohClass(Fraction(3), ones[0], ones[1], ones[2], k)


def pair(x: CohClass, y: CohClass) -> Entry:
    """Lorentzian intersection pairing of signature (1, k)."""
    if x.k != y.k:
        raise ValueError(f"mismatched blow-up counts {x.k} and {y.k}")
    return x.h * y.h - x.e1 * y.e1 - x.e2 * y.e2 - x.e3 * y.e3


@dataclass(frozen=True)
class AreaVector:
    """The six (-1)-curve areas of a class, in polygon slot order."""

    a_e3: Entry
    a_l13: Entry
    a_e1: Entry
    a_l12: Entry
    a_e2: Entry
    a_l23: Entry

    def as_tuple(self) -> tuple[Entry, Entry, Entry, Entry, Entry, Entry]:
        return (self.a_e3, self.a_l13, self.a_e1, self.a_l12, self.a_e2, self.a_l23)

    @staticmethod
    def from_coh(omega: CohClass) -> AreaVector:
        h, e1, e2, e3 = omega.h, omega.e1, omega.e2, omega.e3
        return AreaVector(
            a_e3=e3,
            a_l13=h - e1 - e3,
            a_e1=e1,
            a_l12=h - e1 - e2,
            a_e2=e2,
            a_l23=h - e2 - e3,
        )

    def to_coh(self, k: int = 3) -> CohClass:
        h = self.a_l12 + self.a_e1 + self.a_e2
        omega = CohClass(h, self.a_e1, self.a_e2, self.a_e3, k)
        check_l13 = h - self.a_e1 - self.a_e3 - self.a_l13
        check_l23 = h - self.a_e2 - self.a_e3 - self.a_l23
        if not (_is_zero_entry(check_l13) and _is_zero_entry(check_l23)):
            raise ValueError("area vector is inconsistent with a single class")
        return omega

    @staticmethod
    def from_abcd(alpha: Entry, beta: Entry, gamma: Entry, delta: Entry) -> AreaVector:
        alpha, beta, gamma, delta = map(_as_entry, (alpha, beta, gamma, delta))
        return AreaVector(
            a_e3=alpha,
            a_l13=beta + delta,
            a_e1=gamma,
            a_l12=alpha + delta,
            a_e2=beta,
            a_l23=gamma + delta,
        )

    def to_abcd(self) -> tuple[Entry, Entry, Entry, Entry]:
        return (self.a_e3, self.a_e2, self.a_e1, self.a_l12 - self.a_e3)

    def scale(self, factor: Scalar) -> AreaVector:
        return AreaVector(*(value * factor for value in self.as_tuple()))


def cremona(x: CohClass | AreaVector) -> CohClass | AreaVector:
    """The Cremona involution: H -> 2H - E1 - E2 - E3, Ei -> H - Ej - Ek.

    On area vectors it swaps each exceptional area with the area of the
    opposite line; on (alpha, beta, gamma, delta) it negates delta after
    shifting the first three by it.  Defined for k = 3 only.
    """
    if isinstance(x, AreaVector):
        return AreaVector(
            a_e3=x.a_l12,
            a_l13=x.a_e2,
            a_e1=x.a_l23,
            a_l12=x.a_e3,
            a_e2=x.a_l13,
            a_l23=x.a_e1,
        )
    if x.k != 3:
        raise ValueError("the Cremona involution requires k = 3")
    h, e1, e2, e3 = x.h, x.e1, x.e2, x.e3
    return CohClass(
        2 * h - e1 - e2 - e3,
        h - e2 - e3,
        h - e1 - e3,
        h - e1 - e2,
        3,
    )


def subspace_membership(x: CohClass | AreaVector) -> tuple[bool, bool]:
    """(in_V, in_W) flags for the two invariant subspaces (k = 3).

    V is the Cremona-invariant hyperplane delta = a_L12 - a_E3 = 0; W is the
    cyclic-permutation-invariant plane a_E1 = a_E2 = a_E3.
    """
    areas = AreaVector.from_coh(x) if isinstance(x, CohClass) else x
    in_v = _is_zero_entry(areas.a_l12 - areas.a_e3)
    in_w = _is_zero_entry(areas.a_e1 - areas.a_e2) and _is_zero_entry(
        areas.a_e2 - areas.a_e3
    )
    return in_v, in_w


def permute_exceptional(
    x: CohClass | AreaVector, perm: Sequence[int]
) -> CohClass | AreaVector:
    """Relabel exceptional curves by a permutation of {1..k} (E_i -> E_perm[i])."""
    sigma = tuple(perm)
    k = x.k if isinstance(x, CohClass) else 3
    if sorted(sigma) != list(range(1, k + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{k}")
    sigma = sigma + tuple(range(k + 1, 4))
    inverse = [0] * 3
    for i, s in enumerate(sigma):
        inverse[s - 1] = i + 1
    if isinstance(x, CohClass):
        old = x.exceptional()
        new = tuple(old[inverse[j] - 1] for j in range(3))
        return CohClass(x.h, new[0], new[1], new[2], x.k)
    exceptional = {1: x.a_e1, 2: x.a_e2, 3: x.a_e3}
    lines = {
        frozenset({1, 2}): x.a_l12,
        frozenset({1, 3}): x.a_l13,
        frozenset({2, 3}): x.a_l23,
    }
    new_exceptional = {j: exceptional[inverse[j - 1]] for j in (1, 2, 3)}
    new_lines = {
        key: lines[frozenset(inverse[j - 1] for j in key)] for key in lines
    }
    return AreaVector(
        a_e3=new_exceptional[3],
        a_l13=new_lines[frozenset({1, 3})],
        a_e1=new_exceptional[1],
        a_l12=new_lines[frozenset({1, 2})],
        a_e2=new_exceptional[2],
        a_l23=new_lines[frozenset({2, 3})],
    )


@dataclass(frozen=True)
class ConeChart:
    """A coordinate chart on the reduced Kahler cone.

    The E-label-to-polygon-corner assignment (area of E1 on the right chop,
    E2 on top, E3 at the origin chop) is fixed once here and shared by every
    module; it is pinned by the golden-formula comparisons.
    """

    chart_id: str
    k: int
    variables: tuple[str, ...]

    def gens(self) -> tuple[MultiPoly, ...]:
        return MultiPoly.gens(self.variables)

    def omega(self) -> CohClass:
        one = MultiPoly.const(self.variables, 1)
        zero = MultiPoly.zero(self.variables)
        if self.chart_id == "k2":
            beta, gamma = self.gens()
            return CohClass(one + beta + gamma, gamma, beta, zero, 2)
        if self.chart_id == "k3":
            alpha, beta, gamma = self.gens()
            return CohClass(one + alpha + beta + gamma, gamma, beta, alpha, 3)
        raise ValueError(f"unknown chart {self.chart_id!r}")

    def c1(self) -> CohClass:
        one = MultiPoly.const(self.variables, 1)
        zero = MultiPoly.zero(self.variables)
        entries = [one, one, one] if self.k == 3 else [one, one, zero]
        return CohClass(one.scale(3), entries[0], entries[1], entries[2], self.k)

    def area_vector(self) -> AreaVector:
        return AreaVector.from_coh(self.omega())

    def omega_at(self, point: Sequence[Scalar]) -> CohClass:
        symbolic = self.omega()
        values = [
            entry.evaluate(point) for entry in
            (symbolic.h, symbolic.e1, symbolic.e2, symbolic.e3)
        ]
        return CohClass(values[0], values[1], values[2], values[3], self.k)


K2_CHART = ConeChart("k2", 2, ("beta", "gamma"))
K3_CHART = ConeChart("k3", 3, ("alpha", "beta", "gamma"))

CHARTS = {"k2": K2_CHART, "k3": K3_CHART}
