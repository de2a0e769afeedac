"""Tests for truncated power series, convergence certificates, jet lifting and Mahler expansions.

"""

from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from pyweil.PadicNumber import PadicNumber, make_padic, norm
from pyweil.PowerSeries import PowerSeries
from pyweil.WeilAlgebra import make_dual_numbers, make_jet_algebra
from pyweil.analyticfunctions import (
    MahlerCoefficients,
    binomial_polynomial,
    check_convergence,
    derivation_part,
    lift_series,
    mahler_coefficients,
    mahler_continuity_check,
    mahler_eval,
    partial_derivative,
    series_eval,
)
from pyweil.scaling import DEFAULT_SAMPLE_COUNT
from pyweil.utils import AlgebraMismatchError, ConvergenceError


def geometric(p, N, D):
    return PowerSeries.from_coefficients([1] * (D + 1), p, N)


def square(p=5, N=20):
    return PowerSeries(p, N, 1, {(2,): 1}, 2, polynomial=True)


def random_polynomial(rng, nvars, degree, p=5, N=20):
    terms = {}
    for m in np.ndindex(*([degree + 1] * nvars)):
        if sum(m) <= degree:
            terms[tuple(int(e) for e in m)] = int(rng.integers(-9, 10))
    return PowerSeries(p, N, nvars, terms, degree, polynomial=True)


def random_argument(rng, algebra):
    return algebra.element([int(rng.integers(-20, 21)) for _ in range(algebra.dim)])


def test_geometric_series_at_p():
    """sum_{n <= 20} 5^n = 1/(1 - 5) = -1/4 mod 5^20."""
    value = series_eval(geometric(5, 20, 20), [5])
    assert value.agrees_with(make_padic(-1, 4, 5, 20), 20)


def test_series_eval_examples():
    assert series_eval(PowerSeries.constant(7, 1, 5), [make_padic(1, 3, 5)]) == 7
    assert series_eval(square(), [make_padic(1, 3, 5)]) == make_padic(1, 9, 5)


def test_series_eval_outside_the_disc():
    with pytest.raises(ConvergenceError) as error:
        series_eval(geometric(5, 20, 20), [1])
    assert not error.value.certificate.passed
    assert series_eval(geometric(5, 20, 20), [1], check=False) == 21


def test_series_eval_about_a_center():
    f = PowerSeries(5, 20, 1, {(2,): 1}, 2, center=[3], polynomial=True)
    assert series_eval(f, [8]) == 25


def test_factorial_coefficients_converge_on_the_unit_disc():
    """v_5(n!) grows, so sum n! z^n converges on |z| <= 1."""
    f = PowerSeries.from_coefficients([factorial(n) for n in range(21)], 5, 4)
    certificate = check_convergence(f, 1)
    assert certificate.passed
    assert certificate.profile[20] == 4


def test_exponential_coefficients_diverge_on_the_unit_disc():
    f = PowerSeries.from_coefficients([Fraction(1, factorial(n)) for n in range(21)], 5, 4)
    certificate = check_convergence(f, 1)
    assert not certificate.passed
    assert certificate.witness_degree == 20


def test_geometric_series_certificates():
    f = geometric(5, 20, 20)
    assert check_convergence(f, Fraction(1, 5)).passed
    assert not check_convergence(f, 1).passed
    assert check_convergence(f, 0).passed
    assert check_convergence(square(), 25).passed
    with pytest.raises(ValueError):
        check_convergence(f, Fraction(1, 3))


def test_growing_tail_is_reported():
    coeffs = [1] * 16 + [5 ** 25, 5 ** 24, 5 ** 23, 5 ** 22, 5 ** 21]
    certificate = check_convergence(PowerSeries.from_coefficients(coeffs, 5, 20), 1)
    assert not certificate.passed
    assert certificate.witness_degree == 17
    assert certificate.to_dict()["passed"] is False


def test_partial_derivatives():
    assert partial_derivative(square(), 1) == PowerSeries(5, 20, 1, {(1,): 2}, 1, polynomial=True)
    product = PowerSeries(5, 20, 2, {(1, 1): 1}, 2, polynomial=True)
    assert partial_derivative(product, 1) == PowerSeries(5, 20, 2, {(0, 1): 1}, 1, polynomial=True)


def test_derivative_of_geometric_series():
    """d/dz 1/(1 - z) = 1/(1 - z)^2."""
    derivative = partial_derivative(geometric(5, 20, 20), 1)
    assert derivative.trunc_degree == 19
    assert series_eval(derivative, [5]).agrees_with(make_padic(1, 16, 5, 20), 18)


def test_lift_square_to_dual_numbers():
    algebra = make_dual_numbers(5, 20)
    assert lift_series(square(), [algebra.element([3, 7])]) == algebra.element([9, 42])


def test_lift_square_to_jets():
    jets = make_jet_algebra(5, 20, 2)
    assert lift_series(square(), [jets.element([3, 1, 0])]) == jets.element([9, 6, 1])


def test_lift_constant():
    algebra = make_jet_algebra(7, 10, 3)
    c = PowerSeries.constant(Fraction(2, 3), 2, 7, 10)
    xi = [algebra.element([1, 2, 3, 4]), algebra.element([5, 6, 7, 8])]
    assert lift_series(c, xi) == algebra.scalar(Fraction(2, 3))
    assert derivation_part(c, xi).is_zero()


def test_lift_rejects_mismatches():
    with pytest.raises(AlgebraMismatchError):
        lift_series(square(7), [make_dual_numbers(5).one()])
    with pytest.raises(AlgebraMismatchError):
        f = PowerSeries(5, 20, 2, {(1, 1): 1}, 2, polynomial=True)
        lift_series(f, [make_dual_numbers(5).one(), make_jet_algebra(5, 20, 2).one()])
    with pytest.raises(ConvergenceError):
        lift_series(geometric(5, 20, 20), [make_dual_numbers(5).one()])


@pytest.mark.parametrize("algebra", [make_dual_numbers(5, 20), make_jet_algebra(5, 20, 3)])
def test_lift_is_a_homomorphism(algebra):
    """Polynomial pairs of degree <= 6 in up to three variables."""
    rng = np.random.default_rng(20)
    for _ in range(DEFAULT_SAMPLE_COUNT):
        n = int(rng.integers(1, 4))
        f = random_polynomial(rng, n, int(rng.integers(0, 7)))
        g = random_polynomial(rng, n, int(rng.integers(0, 7)))
        xi = [random_argument(rng, algebra) for _ in range(n)]
        lam = int(rng.integers(-9, 10))
        assert lift_series(f * g, xi) == lift_series(f, xi) * lift_series(g, xi)
        assert lift_series(f + g.scale(lam), xi) == lift_series(f, xi) + lift_series(g, xi).scale(lam)
        assert lift_series(f, xi).project() == series_eval(f, [a.project() for a in xi])


@pytest.mark.parametrize("algebra", [make_dual_numbers(5, 20), make_jet_algebra(5, 20, 2)])
def test_derivation_part_cross_terms(algebra):
    """L(fg + lam h) = L(f) g(x) + f(x) L(g) + L(f) L(g) + lam L(h)."""
    rng = np.random.default_rng(13)
    for _ in range(50):
        f, g, h = (random_polynomial(rng, 2, 3) for _ in range(3))
        xi = [random_argument(rng, algebra), random_argument(rng, algebra)]
        x = [a.project() for a in xi]
        lam = int(rng.integers(-9, 10))
        Lf, Lg = derivation_part(f, xi), derivation_part(g, xi)
        expected = Lf * series_eval(g, x) + Lg * series_eval(f, x) + Lf * Lg + derivation_part(h, xi) * lam
        assert derivation_part(f * g + h.scale(lam), xi) == expected
        assert derivation_part(f, xi).project().is_zero()


@pytest.mark.parametrize("algebra", [make_dual_numbers(5, 20), make_jet_algebra(5, 20, 3)])
def test_projection_commutes_with_lifting(algebra):
    rng = np.random.default_rng(3)
    for _ in range(20):
        f = random_polynomial(rng, 2, 4)
        xi = [random_argument(rng, algebra), random_argument(rng, algebra)]
        assert lift_series(f, xi).project() == series_eval(f, [a.project() for a in xi])


def test_dual_number_derivative():
    algebra = make_dual_numbers(5, 20)
    rng = np.random.default_rng(4)
    for _ in range(1000):
        f = random_polynomial(rng, 1, int(rng.integers(0, 7)))
        x0 = int(rng.integers(-20, 21))
        lifted = lift_series(f, [algebra.element([x0, 1])])
        assert lifted.coeffs[1] == series_eval(partial_derivative(f, 1), [x0])


def test_dual_derivative_matches_difference_quotient():
    """(f(x0 + p^k) - f(x0)) / p^k differs from f'(x0) by p^k times an integer, so they agree to k digits."""
    algebra = make_dual_numbers(5, 20)
    k = 3
    rng = np.random.default_rng(6)
    for _ in range(DEFAULT_SAMPLE_COUNT):
        f = random_polynomial(rng, 1, int(rng.integers(1, 7)))
        x0 = int(rng.integers(-20, 21))
        slope = lift_series(f, [algebra.element([x0, 1])]).coeffs[1]
        quotient = (series_eval(f, [x0 + 5 ** k]) - series_eval(f, [x0])) / 5 ** k
        assert quotient.agrees_with(slope, k)


@pytest.mark.parametrize("algebra", [make_dual_numbers(5, 20), make_jet_algebra(5, 20, 3)])
def test_chain_rule(algebra):
    """Outer polynomials of degree <= 6 composed with quadratic maps in up to three variables."""
    rng = np.random.default_rng(8)
    for _ in range(DEFAULT_SAMPLE_COUNT):
        n = int(rng.integers(1, 4))
        f = random_polynomial(rng, 1, int(rng.integers(0, 7)))
        g = random_polynomial(rng, n, 2)
        xi = [random_argument(rng, algebra) for _ in range(n)]
        assert lift_series(f.compose([g]), xi) == lift_series(f, [lift_series(g, xi)])


def test_mahler_examples():
    assert list(mahler_coefficients([0, 1, 2, 3], 5, 20).coeffs) == [0, 1, 0, 0]
    assert list(mahler_coefficients([0, 1, 4, 9, 16], 5, 20).coeffs) == [0, 1, 2, 0, 0]
    assert list(mahler_coefficients([make_padic(3, 1, 5)] * 3).coeffs) == [3, 0, 0]
    with pytest.raises(ValueError):
        mahler_coefficients([0, 1, 4])


def test_binomial_examples():
    five = make_padic(5, 1, 5)
    assert binomial_polynomial(five, 2) == 10
    assert norm(binomial_polynomial(five, 2)) == Fraction(1, 5)
    x = make_padic(1, 3, 5)
    assert binomial_polynomial(x, 0) == 1
    assert binomial_polynomial(x, 1) == x


def test_mahler_eval_square():
    a = MahlerCoefficients(5, 20, tuple(make_padic(c, 1, 5) for c in (0, 1, 2)))
    assert mahler_eval(a, 7) == 49


def test_continuity_verdicts():
    assert mahler_continuity_check(mahler_coefficients(list(range(8)), 5, 20)).passed
    assert not mahler_continuity_check(MahlerCoefficients(5, 20, (PadicNumber.one(5),) * 10)).passed
    geometric_decay = MahlerCoefficients(5, 20, tuple(make_padic(5 ** n, 1, 5) for n in range(30)))
    report = mahler_continuity_check(geometric_decay)
    assert report.passed
    assert report.valuations == list(range(30))
    assert len(report.smoothness_valuations) == 29


def test_mahler_roundtrip():
    """Polynomials of degree <= 8 sampled at 0..13 have a vanishing tail of Mahler coefficients."""
    rng = np.random.default_rng(20)
    K = 13
    for _ in range(200):
        f = random_polynomial(rng, 1, int(rng.integers(0, 9)))
        samples = [series_eval(f, [k]) for k in range(K + 1)]
        a = mahler_coefficients(samples)
        for k in range(K + 1):
            assert mahler_eval(a, k) == samples[k]
        assert mahler_continuity_check(a).passed


def test_binomials_are_integral():
    rng = np.random.default_rng(20)
    for p in (5, 7):
        for _ in range(500):
            denominator = int(rng.integers(1, 1000))
            while denominator % p == 0:
                denominator += 1
            x = make_padic(int(rng.integers(-10 ** 6, 10 ** 6)), denominator, p, 20)
            assert norm(binomial_polynomial(x, int(rng.integers(0, 25)))) <= 1
