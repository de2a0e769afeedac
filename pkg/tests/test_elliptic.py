"""Tests for formal group laws of Weierstrass curves and the group structure on their dual-number jets.

"""

from fractions import Fraction

import numpy as np
import pytest

from pyweil.FormalGroupLaw import (
    WeierstrassCurve,
    build_formal_group_law,
    jet_group_add,
    jet_negate,
    tangent_formula,
    trivialize,
    untrivialize,
    verify_axioms,
)
from pyweil.PowerSeries import PowerSeries
from pyweil.WeilAlgebra import make_dual_numbers, make_jet_algebra
from pyweil.analyticfunctions import lift_series, partial_derivative
from pyweil.utils import (
    AlgebraMismatchError,
    DegenerateCurveError,
    FormalGroupDomainError,
    NotAPadicIntegerError,
)

P, N = 5, 20


def multiplicative_curve():
    """y^2 + xy = x^3, whose formal group is 1 - F = (1 - z)(1 - w)."""
    return WeierstrassCurve(P, N, a1=1, allow_singular=True)


def curve_37a():
    """y^2 + y = x^3 - x, discriminant 37."""
    return WeierstrassCurve(P, N, a3=1, a4=-1)


def bivariate(terms, degree):
    return PowerSeries(P, N, 2, terms, degree)


def random_jet(rng, algebra, valuation=1):
    z0 = P ** valuation * int(rng.integers(-50, 51))
    return algebra.element([z0, int(rng.integers(-50, 51))])


def random_curves(rng, count):
    curves = []
    while len(curves) < count:
        a = [int(rng.integers(-3, 4)) for _ in range(5)]
        try:
            curves.append(WeierstrassCurve(P, N, *a))
        except DegenerateCurveError:
            continue
    return curves


def test_discriminant():
    assert curve_37a().discriminant == 37
    assert not curve_37a().singular
    assert multiplicative_curve().singular


def test_curve_validation():
    with pytest.raises(DegenerateCurveError):
        WeierstrassCurve(P, N, a1=1)
    with pytest.raises(NotAPadicIntegerError):
        WeierstrassCurve(P, N, a3=1, a4=-1, a6=Fraction(1, 5))
    with pytest.raises(ValueError):
        build_formal_group_law(curve_37a(), 0)


def test_quadratic_law_of_the_multiplicative_curve():
    G = build_formal_group_law(multiplicative_curve(), 2)
    assert G.F.trunc_degree == 2
    assert G.F.agrees_with(bivariate({(1, 0): 1, (0, 1): 1, (1, 1): -1}, 2))


def test_cubic_terms_vanish_without_a2():
    G = build_formal_group_law(multiplicative_curve(), 3)
    assert G.F.agrees_with(bivariate({(1, 0): 1, (0, 1): 1, (1, 1): -1}, 3))


def test_quadratic_law_without_a1_a2():
    G = build_formal_group_law(curve_37a(), 2)
    assert G.F.agrees_with(bivariate({(1, 0): 1, (0, 1): 1}, 2))


def test_linear_law_is_addition():
    for curve in (curve_37a(), multiplicative_curve()):
        G = build_formal_group_law(curve, 1)
        assert G.F.agrees_with(bivariate({(1, 0): 1, (0, 1): 1}, 1))
        assert G.invariant_coeff.agrees_with(PowerSeries(P, N, 1, {(0,): 1}, 0))


def test_cubic_terms_of_37a():
    """The degree-3 part of F is -a2 (z^2 w + z w^2), which vanishes here; degree 4 brings -2 a3 z^3 w."""
    G = build_formal_group_law(curve_37a(), 4)
    expected = {(1, 0): 1, (0, 1): 1, (3, 1): -2, (2, 2): -3, (1, 3): -2}
    assert G.F.agrees_with(bivariate(expected, 4))


def test_axioms_on_known_curves():
    for curve in (curve_37a(), multiplicative_curve()):
        assert verify_axioms(build_formal_group_law(curve, 6)).passed


def test_axioms_on_random_curves():
    rng = np.random.default_rng(20)
    for curve in random_curves(rng, 5):
        report = verify_axioms(build_formal_group_law(curve, 6))
        assert report.passed
        assert report.to_dict()["axioms"] == "pass"


def test_jet_addition_example():
    """F = z + w - zw at (5 + eps, 10): base -35, eps-part (1 - w0) z1 = -9."""
    G = build_formal_group_law(multiplicative_curve(), 2)
    algebra = make_dual_numbers(P, N)
    total = jet_group_add(G, algebra.element([5, 1]), algebra.element([10, 0]))
    assert total == algebra.element([-35, -9])


def test_jet_identity_and_inverse():
    G = build_formal_group_law(curve_37a(), 6)
    algebra = make_dual_numbers(P, N)
    rng = np.random.default_rng(20)
    for _ in range(10):
        X = random_jet(rng, algebra)
        assert jet_group_add(G, X, algebra.zero()) == X
        assert jet_group_add(G, X, jet_negate(G, X)).agrees_with(algebra.zero(), G.degree)
        assert jet_negate(G, jet_negate(G, X)).agrees_with(X, G.degree)
    assert jet_negate(G, algebra.zero()).is_zero()


def test_negation_without_a1_is_minus_at_degree_two():
    G = build_formal_group_law(curve_37a(), 2)
    algebra = make_dual_numbers(P, N)
    X = algebra.element([15, 4])
    assert jet_negate(G, X) == -X


def test_jet_addition_is_the_lifted_law():
    G = build_formal_group_law(curve_37a(), 6)
    algebra = make_dual_numbers(P, N)
    rng = np.random.default_rng(7)
    for _ in range(10):
        X, Y = random_jet(rng, algebra), random_jet(rng, algebra)
        assert jet_group_add(G, X, Y) == lift_series(G.F, [X, Y], check=False)


def test_jet_group_is_commutative_and_associative():
    G = build_formal_group_law(curve_37a(), 6)
    algebra = make_dual_numbers(P, N)
    rng = np.random.default_rng(11)
    for _ in range(10):
        X, Y, Z = (random_jet(rng, algebra) for _ in range(3))
        assert jet_group_add(G, X, Y).agrees_with(jet_group_add(G, Y, X), 15)
        left = jet_group_add(G, jet_group_add(G, X, Y), Z)
        right = jet_group_add(G, X, jet_group_add(G, Y, Z))
        assert left.agrees_with(right, G.degree)


def test_tangent_formula_matches_cubic_truncation():
    rng = np.random.default_rng(20)
    algebra = make_dual_numbers(P, N)
    for _ in range(10):
        a1, a2 = int(rng.integers(-5, 6)), int(rng.integers(-5, 6))
        curve = WeierstrassCurve(P, N, a1=a1, a2=a2, allow_singular=True)
        G = build_formal_group_law(curve, 3)
        X, Y = random_jet(rng, algebra), random_jet(rng, algebra)
        assert jet_group_add(G, X, Y).coeffs[1] == tangent_formula(curve, X, Y)


def test_jets_must_lie_in_the_formal_group():
    G = build_formal_group_law(curve_37a(), 3)
    algebra = make_dual_numbers(P, N)
    with pytest.raises(FormalGroupDomainError):
        jet_group_add(G, algebra.element([1, 0]), algebra.zero())
    with pytest.raises(AlgebraMismatchError):
        jet_negate(G, make_jet_algebra(P, N, 2).element([5, 0, 0]))
    with pytest.raises(FormalGroupDomainError):
        untrivialize(G, 2, 1)


def test_trivialization_examples():
    algebra = make_dual_numbers(P, N)
    G = build_formal_group_law(curve_37a(), 6)
    z0, t = trivialize(G, algebra.element([25, 0]))
    assert z0 == 25
    assert t.is_zero()

    G1 = build_formal_group_law(curve_37a(), 1)
    assert trivialize(G1, algebra.element([25, 7]))[1] == 7


def test_trivialization_roundtrip():
    G = build_formal_group_law(multiplicative_curve(), 6)
    algebra = make_dual_numbers(P, N)
    rng = np.random.default_rng(3)
    for _ in range(10):
        X = random_jet(rng, algebra)
        assert untrivialize(G, *trivialize(G, X)) == X


@pytest.mark.parametrize("curve", [multiplicative_curve(), curve_37a()])
def test_trivialized_tangents_add(curve):
    """Over p^3 Z_p the terms dropped at degree 6 have valuation >= 18, so tangents add mod p^(N - 6)."""
    G = build_formal_group_law(curve, 6)
    algebra = make_dual_numbers(P, N)
    rng = np.random.default_rng(20)
    for _ in range(100):
        X, Y = random_jet(rng, algebra, 3), random_jet(rng, algebra, 3)
        (z0, t), (w0, s) = trivialize(G, X), trivialize(G, Y)
        total, u = trivialize(G, jet_group_add(G, X, Y))
        assert total == jet_group_add(G, X, Y).project()
        assert u.agrees_with(t + s, N - 6)


@pytest.mark.parametrize("curve", [multiplicative_curve(), curve_37a()])
def test_invariant_differential_is_translation_invariant(curve):
    """P(F(z, w)) dF/dw(z, w) = P(w) coefficientwise up to degree 5."""
    G = build_formal_group_law(curve, 6)
    transported = G.invariant_coeff.compose([G.F]) * partial_derivative(G.F, 2)
    assert transported.agrees_with(G.invariant_coeff.embed(2, [2]), degree=5)
