"""This module implements the formal group law of an elliptic curve over Q_p and the group structure it induces on the
dual-number jets of the formal group, together with the trivialization E^A = E-hat x Q_p.

Near the identity the curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 is described in the coordinates z = -x/y,
w = -1/y, in which it reads w = z^3 + a1 zw + a2 z^2 w + a3 w^2 + a4 zw^2 + a6 w^3.

"""

import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

from .PadicNumber import PadicNumber, Scalar, as_padic
from .PowerSeries import PowerSeries
from .WeilAlgebra import WeilAlgebra, WeilElement, make_dual_numbers
from .analyticfunctions import lift_series
from .scaling import DEFAULT_FGL_DEGREE, DEFAULT_PRECISION
from .utils import (
    AlgebraMismatchError,
    ConvergenceError,
    DegenerateCurveError,
    FormalGroupDomainError,
    NotAPadicIntegerError,
    PrecisionWarning,
)

__all__ = [
    "WeierstrassCurve",
    "FormalGroupLaw",
    "FormalGroupReport",
    "build_formal_group_law",
    "jet_group_add",
    "jet_negate",
    "trivialize",
    "untrivialize",
    "verify_axioms",
    "tangent_formula",
]


class WeierstrassCurve:
    def __init__(
        self,
        prime: int,
        precision: int = DEFAULT_PRECISION,
        a1: Scalar = 0,
        a2: Scalar = 0,
        a3: Scalar = 0,
        a4: Scalar = 0,
        a6: Scalar = 0,
        allow_singular: bool = False,
    ):
        """The curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with coefficients in Z_p.

        Parameters
        ----------
        prime : int

        precision : int

        a1, a2, a3, a4, a6 : PadicNumber or rational

        allow_singular : bool
            Accept a discriminant that vanishes at working precision. The formal group law is still defined for the
            singular cubic (it is then the multiplicative or additive group), which is what the a1-only curve gives.

        Raises
        ------
        NotAPadicIntegerError
            If a coefficient is not in Z_p.

        DegenerateCurveError
            If the discriminant is zero at precision and `allow_singular` is not set.

        """
        self.prime = prime
        self.precision = precision
        self.a1, self.a2, self.a3, self.a4, self.a6 = (as_padic(a, prime, precision) for a in (a1, a2, a3, a4, a6))
        for name, a in zip(("a1", "a2", "a3", "a4", "a6"), self.coefficients):
            if not a.is_integral():
                raise NotAPadicIntegerError(f"Curve coefficient {name} = {a.to_fraction()} is not in Z_{prime}.")

        if self.singular and not allow_singular:
            raise DegenerateCurveError(
                f"The discriminant of {self} vanishes mod {prime}^{precision}; pass allow_singular to proceed."
            )

    @property
    def coefficients(self) -> Tuple[PadicNumber, ...]:
        return self.a1, self.a2, self.a3, self.a4, self.a6

    @property
    def b2(self) -> PadicNumber:
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self) -> PadicNumber:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> PadicNumber:
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self) -> PadicNumber:
        a1, a2, a3, a4, a6 = self.coefficients
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def discriminant(self) -> PadicNumber:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def singular(self) -> bool:
        return self.discriminant.valuation >= self.precision

    def __repr__(self) -> str:
        names = ("a1", "a2", "a3", "a4", "a6")
        shown = ", ".join(f"{name}={a.to_fraction()}" for name, a in zip(names, self.coefficients))
        return f"WeierstrassCurve(Q_{self.prime}, {shown})"


class FormalGroupLaw:
    def __init__(self, curve: WeierstrassCurve, degree: int = DEFAULT_FGL_DEGREE):
        """Expands the formal group law of `curve` to total degree `degree`.

        Attributes
        ----------
        F : PowerSeries
            F(z, w), bivariate, truncated at `degree`.

        w_series : PowerSeries
            w(z) = z^3 (1 + A_1 z + ...), truncated at `degree` + 1.

        inverse_series : PowerSeries
            i(z) with F(z, i(z)) = 0.

        invariant_coeff : PowerSeries
            P(z) = 1 / (dF/dw)(z, 0), truncated at `degree` - 1.

        """
        if degree < 1:
            raise ValueError(f"The formal group law needs degree at least 1, got {degree}.")
        self.curve = curve
        self.degree = degree
        self.prime = curve.prime
        self.precision = curve.precision
        # w(z) gains at least one correct degree per substitution.
        self.MAX_FIXED_POINT_ITERATIONS = degree + 2

        self.w_series = self._expand_w(degree + 1)
        self.F = self._addition_law()
        self.inverse_series = self._inverse()
        self.invariant_coeff = self.F.derivative(2).restrict_to_center(2).reciprocal(degree - 1)

    def _truncated_variable(self, i: int, nvars: int, degree: int) -> PowerSeries:
        unit = [0] * nvars
        unit[i - 1] = 1
        return PowerSeries(self.prime, self.precision, nvars, {tuple(unit): 1}, degree)

    def _curve_equation(self, z: PowerSeries, w: PowerSeries) -> PowerSeries:
        a1, a2, a3, a4, a6 = self.curve.coefficients
        return z ** 3 + z * w * a1 + z * z * w * a2 + w * w * a3 + z * w * w * a4 + w * w * w * a6

    def _expand_w(self, degree: int) -> PowerSeries:
        z = self._truncated_variable(1, 1, degree)
        w = PowerSeries(self.prime, self.precision, 1, {}, degree)
        for _ in range(self.MAX_FIXED_POINT_ITERATIONS):
            following = self._curve_equation(z, w)
            if following == w:
                return w
            w = following
        raise ConvergenceError(f"w(z) did not stabilise within {self.MAX_FIXED_POINT_ITERATIONS} substitutions.")

    def _addition_law(self) -> PowerSeries:
        D = self.degree
        a1, a2, a3, a4, a6 = self.curve.coefficients
        z1 = self._truncated_variable(1, 2, D)
        z2 = self._truncated_variable(2, 2, D)

        # Slope of the chord through (z1, w(z1)) and (z2, w(z2)).
        slope_terms = {}
        for (n,), s in self.w_series.terms.items():
            for i in range(n):
                slope_terms[(i, n - 1 - i)] = s
        slope = PowerSeries(self.prime, self.precision, 2, slope_terms, D)
        intercept = self.w_series.embed(2, [1]) - slope * z1

        numerator = slope * a1 + intercept * a2 + slope * slope * a3 + slope * intercept * (2 * a4)
        numerator = numerator + slope * slope * intercept * (3 * a6)
        denominator = 1 + slope * a2 + slope * slope * a4 + slope * slope * slope * a6
        z3 = -z1 - z2 - numerator * denominator.reciprocal(D)
        w3 = slope * z3 + intercept

        # The sum is the negative of the third intersection point.
        return z3 * (z3 * a1 + w3 * a3 - 1).reciprocal(D)

    def _inverse(self) -> PowerSeries:
        a1, a3 = self.curve.a1, self.curve.a3
        z = self._truncated_variable(1, 1, self.degree)
        return z * (z * a1 + self.w_series * a3 - 1).reciprocal(self.degree)

    def __repr__(self) -> str:
        return f"FormalGroupLaw({self.curve}, degree={self.degree})"


def build_formal_group_law(curve: WeierstrassCurve, D: int = DEFAULT_FGL_DEGREE) -> FormalGroupLaw:
    """Computes F by the standard Weierstrass expansion: w(z) by fixed-point iteration, then the chord law in (z, w)
    coordinates followed by negation.

    Parameters
    ----------
    curve : WeierstrassCurve

    D : int
        Total degree of the expansion. D = 1 gives F = z + w.

    Returns
    -------
    law : FormalGroupLaw

    """
    return FormalGroupLaw(curve, D)


def _check_jet(G: FormalGroupLaw, X: WeilElement):
    if X.algebra != make_dual_numbers(G.prime, X.algebra.precision):
        raise AlgebraMismatchError("Jets of the formal group live in the dual numbers Q_p[eps]/(eps^2).")
    if X.algebra.prime != G.prime:
        raise AlgebraMismatchError(f"Jet over Q_{X.algebra.prime} for a formal group over Q_{G.prime}.")
    _check_domain(X.project())


def _check_domain(z0: PadicNumber):
    if z0.valuation < 1:
        raise FormalGroupDomainError(f"{z0} lies outside the formal group p Z_{z0.prime}.")


def jet_group_add(G: FormalGroupLaw, X: WeilElement, Y: WeilElement) -> WeilElement:
    """X (+) Y = F^A(X, Y), i.e. F(z0, w0) + (dF/dz(z0, w0) z1 + dF/dw(z0, w0) w1) eps."""
    _check_jet(G, X)
    _check_jet(G, Y)
    return lift_series(G.F, [X, Y], check=False)


def jet_negate(G: FormalGroupLaw, X: WeilElement) -> WeilElement:
    _check_jet(G, X)
    return lift_series(G.inverse_series, [X], check=False)


def trivialize(G: FormalGroupLaw, X: WeilElement) -> Tuple[PadicNumber, PadicNumber]:
    """Maps z0 + z1 eps to (z0, z1 P(z0)).

    The invariant differential P(z) dz makes the second coordinate additive: jet_group_add becomes
    (z0, t), (w0, s) -> (F(z0, w0), t + s).
    """
    _check_jet(G, X)
    z0, z1 = X.coeffs
    return z0, z1 * G.invariant_coeff.substitute([z0])


def untrivialize(G: FormalGroupLaw, z0: Scalar, t: Scalar, algebra: Optional[WeilAlgebra] = None) -> WeilElement:
    """Inverse of trivialize: (z0, t) -> z0 + (t / P(z0)) eps."""
    if algebra is None:
        algebra = make_dual_numbers(G.prime, G.precision)
    z0 = as_padic(z0, G.prime, algebra.precision)
    _check_domain(z0)
    z1 = as_padic(t, G.prime, algebra.precision) / G.invariant_coeff.substitute([z0])
    X = algebra.element([z0, z1])
    _check_jet(G, X)
    return X


@dataclass
class FormalGroupReport:
    identity: bool
    commutativity: bool
    associativity: bool
    inverse: bool
    invariant_differential: bool
    degree: int

    @property
    def passed(self) -> bool:
        return all(
            (self.identity, self.commutativity, self.associativity, self.inverse, self.invariant_differential)
        )

    def to_dict(self) -> dict:
        verdict = lambda flag: "pass" if flag else "fail"
        return {
            "axioms": verdict(self.passed),
            "degree": self.degree,
            "identity": verdict(self.identity),
            "commutativity": verdict(self.commutativity),
            "associativity": verdict(self.associativity),
            "inverse": verdict(self.inverse),
            "invariant_differential": verdict(self.invariant_differential),
        }


def _is_coordinate(series: PowerSeries, i: int) -> bool:
    """Whether the series is exactly the i-th coordinate function, up to its truncation degree."""
    unit = [0] * series.nvars
    unit[i - 1] = 1
    for m, c in series.terms.items():
        expected = 1 if m == tuple(unit) else 0
        if not c.agrees_with(expected, series.precision):
            return False
    return tuple(unit) in series.terms


def verify_axioms(G: FormalGroupLaw) -> FormalGroupReport:
    """Checks the formal group axioms and the invariant-differential identity coefficientwise.

    identity: F(z, 0) = z and F(0, w) = w. commutativity: F(z, w) = F(w, z). associativity:
    F(F(z, w), u) = F(z, F(w, u)) up to degree D. inverse: F(z, i(z)) = 0 up to degree D. invariant differential:
    P(F(z, w)) dF/dw(z, w) = P(w) up to degree D - 1.

    """
    F, D = G.F, G.degree

    identity = _is_coordinate(F.restrict_to_center(2), 1) and _is_coordinate(F.restrict_to_center(1), 1)
    commutativity = F.agrees_with(F.permute([2, 1]))

    z, w, u = (G._truncated_variable(i, 3, D) for i in (1, 2, 3))
    left = F.compose([F.embed(3, [1, 2]), u])
    right = F.compose([z, F.embed(3, [2, 3])])
    associativity = left.agrees_with(right, D)

    t = G._truncated_variable(1, 1, D)
    cancelled = F.compose([t, G.inverse_series])
    inverse = cancelled.agrees_with(PowerSeries(G.prime, G.precision, 1, {}, D), D)

    transported = G.invariant_coeff.compose([F]) * F.derivative(2)
    invariant_differential = transported.agrees_with(G.invariant_coeff.embed(2, [2]), D - 1)

    report = FormalGroupReport(identity, commutativity, associativity, inverse, invariant_differential, D)
    if not report.passed:
        warnings.warn(f"Formal group axioms fail for {G}: {report.to_dict()}", PrecisionWarning)
    return report


def tangent_formula(curve: WeierstrassCurve, X: WeilElement, Y: WeilElement) -> PadicNumber:
    """The eps-part of X (+) Y for F truncated at degree 3, where F = z + w - a1 zw - a2 (z^2 w + z w^2):

    z1 + w1 - a1 (z0 w1 + z1 w0) - a2 ((2 z0 w0 + w0^2) z1 + (z0^2 + 2 z0 w0) w1).
    """
    (z0, z1), (w0, w1) = X.coeffs, Y.coeffs
    a1, a2 = curve.a1, curve.a2
    return (
        z1
        + w1
        - a1 * (z0 * w1 + z1 * w0)
        - a2 * ((2 * z0 * w0 + w0 * w0) * z1 + (z0 * z0 + 2 * z0 * w0) * w1)
    )
