from __future__ import annotations

from fractions import Fraction

import pytest

from kcert.poly import (
    MultiPoly,
    PiPowerMismatchError,
    PiScalar,
    RatFunc,
    VariableMismatchError,
    coefficients_all_nonneg,
    directional_second_derivative,
    partial_derivative,
)
from kcert.sampling import SplitMix64

BG = ("beta", "gamma")


def gens():
    return MultiPoly.gens(BG)


def test_difference_of_squares():
    beta, _ = gens()
    assert (1 + beta) * (1 - beta) == 1 - beta * beta


def test_square_expansion():
    beta, gamma = gens()
    expanded = (1 + beta + gamma) ** 2
    expected = (
        1 + 2 * beta + 2 * gamma + beta ** 2 + 2 * beta * gamma + gamma ** 2
    )
    assert expanded == expected


def test_moment_numerator_expansion_value():
    beta, gamma = gens()
    inner = (
        beta + beta ** 2 + beta ** 3
        + gamma * (1 + 4 * beta + 4 * beta ** 2 + 2 * beta ** 3)
        + gamma ** 2 * (1 + beta) ** 3
    )
    poly = 6 * (1 + beta) * inner + 1
    assert poly.evaluate((1, 1)) == 265


def test_partial_derivative_basics():
    beta, gamma = gens()
    assert partial_derivative(beta ** 2 * gamma, "beta") == 2 * beta * gamma
    assert partial_derivative(MultiPoly.const(BG, 5), "gamma").is_zero
    with pytest.raises(ValueError):
        partial_derivative(beta, "delta")


def test_directional_second_derivative_quadratic():
    beta, gamma = gens()
    f = RatFunc.from_poly(beta ** 2 + gamma ** 2)
    d2 = directional_second_derivative(f, (1, -1))
    assert d2.equals(RatFunc.const(BG, 4))


def test_directional_second_derivative_constant_on_line():
    beta, gamma = gens()
    f = RatFunc.make(MultiPoly.const(BG, 1), beta + gamma)
    d2 = directional_second_derivative(f, (1, -1))
    assert d2.num.is_zero


def test_directional_second_derivative_denominator_is_cube():
    beta, gamma = gens()
    den = 1 + beta * gamma
    f = RatFunc(beta ** 3, den)
    d2 = directional_second_derivative(f, (1, -1))
    assert d2.den == den ** 3


def _lagrange_second_derivative_at_zero(points):
    """g''(0) for the exact polynomial interpolating (t, value) pairs."""
    total = Fraction(0)
    n = len(points)
    for i, (ti, vi) in enumerate(points):
        others = [points[j][0] for j in range(n) if j != i]
        denom = Fraction(1)
        for tj in others:
            denom *= ti - tj
        # second derivative at 0 of prod (t - tj): sum over unordered pairs
        pair_sum = Fraction(0)
        for a in range(len(others)):
            for b in range(len(others)):
                if a == b:
                    continue
                prod = Fraction(1)
                for c in range(len(others)):
                    if c != a and c != b:
                        prod *= -others[c]
                pair_sum += prod
        total += vi * pair_sum / denom
    return total


def test_second_derivative_matches_interpolation_oracle():
    rng = SplitMix64(11)
    ts = [Fraction(k, 7) for k in (-2, -1, 0, 1, 2)]
    for _ in range(25):
        terms = {}
        for _ in range(6):
            e = (rng.below(3), rng.below(3))
            if sum(e) > 4:
                continue
            terms[e] = Fraction(rng.below(41) - 20)
        p = MultiPoly(BG, terms)
        if p.total_degree() > 4:
            continue
        point = rng.point(2)
        f = RatFunc.from_poly(p)
        d2 = directional_second_derivative(f, (1, -1)).evaluate(point)
        samples = [
            (t, p.evaluate((point[0] + t, point[1] - t))) for t in ts
        ]
        assert d2 == _lagrange_second_derivative_at_zero(samples)


def test_coefficients_all_nonneg():
    beta, _ = gens()
    ok, witness = coefficients_all_nonneg(1 + 3 * beta)
    assert ok and witness is None
    ok, witness = coefficients_all_nonneg(1 - beta)
    assert not ok
    coeff, exps = witness
    assert coeff == -1 and exps == (1, 0)


def test_positive_coefficients_imply_positive_values():
    rng = SplitMix64(5)
    beta, gamma = gens()
    p = 1 + 3 * beta + beta ** 2 * gamma
    assert coefficients_all_nonneg(p)[0]
    for _ in range(20):
        assert p.evaluate(rng.point(2)) > 0


def test_canonicalization_idempotent():
    rng = SplitMix64(99)
    for _ in range(30):
        terms_n = {(rng.below(4), rng.below(4)): Fraction(rng.below(19) - 9, 1 + rng.below(6)) for _ in range(5)}
        terms_d = {(rng.below(3), rng.below(3)): Fraction(rng.below(19) - 9, 1 + rng.below(6)) for _ in range(4)}
        num = MultiPoly(BG, terms_n)
        den = MultiPoly(BG, terms_d)
        if den.is_zero:
            continue
        f = RatFunc.make(num, den)
        again = RatFunc.make(f.num, f.den)
        assert f.num == again.num and f.den == again.den


def test_cross_multiplication_equality_and_inverse():
    beta, gamma = gens()
    a = RatFunc.make(1 + beta, 1 + gamma)
    b = RatFunc.make((1 + beta) * (2 + beta), (1 + gamma) * (2 + beta))
    assert a.equals(b)
    product = a * (1 / a)
    assert product.equals(RatFunc.const(BG, 1))
    # equivalence is transitive across differently padded representatives
    c = RatFunc.make(
        (1 + beta) * (2 + beta) * (3 + gamma),
        (1 + gamma) * (2 + beta) * (3 + gamma),
    )
    assert b.equals(c) and a.equals(c)


def test_ratfunc_zero_pow_zero_is_one():
    zero = RatFunc.const(BG, 0)
    assert (zero ** 0).equals(RatFunc.const(BG, 1))


def test_variable_mismatch_rejected():
    beta, _ = gens()
    other = MultiPoly.variable(("alpha",), "alpha")
    with pytest.raises(VariableMismatchError):
        beta + other
    with pytest.raises(VariableMismatchError):
        RatFunc.from_poly(beta).equals(RatFunc.from_poly(other))


def test_denominator_vanishing_evaluation():
    beta, gamma = gens()
    f = RatFunc.make(MultiPoly.const(BG, 1), beta - gamma)
    with pytest.raises(ZeroDivisionError):
        f.evaluate((1, 1))
    assert f.evaluate((2, 1)) == 1


def test_pi_scalar_bookkeeping():
    a = PiScalar(Fraction(265, 1008), -2)
    b = PiScalar(Fraction(1, 2), -2)
    assert (a + b).pi_power == -2
    with pytest.raises(PiPowerMismatchError):
        a + PiScalar(Fraction(1), 0)
    # canonical zero
    assert PiScalar(Fraction(0), 5).pi_power == 0
    assert (a + PiScalar(Fraction(0), 3)).mantissa == a.mantissa
    assert (a * PiScalar(Fraction(2), 2)).pi_power == 0


def test_render_canonical_grevlex_order():
    beta, gamma = gens()
    p = gamma + beta + beta * gamma ** 2 + 3
    assert p.render() == "beta*gamma^2 + beta + gamma + 3"
