"""This module contains the analytic operations on power series and functions Z_p -> Q_p: evaluation with a
convergence certificate, partial derivatives, lifting to Weil algebras, and the Mahler-basis toolkit.

"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import Dict, List, Optional, Sequence, Tuple

from scipy.special import comb

from .PadicNumber import PadicNumber, Scalar, as_padic, norm
from .PowerSeries import PowerSeries
from .WeilAlgebra import WeilElement
from .padicfunctions import factorial_unit, factorial_valuation, split_valuation
from .scaling import DEFAULT_TAIL_WINDOW
from .utils import AlgebraMismatchError, ConvergenceError, NotAPadicIntegerError, ShapeError

__all__ = [
    "ConvergenceCertificate",
    "check_convergence",
    "evaluation_radius",
    "series_eval",
    "partial_derivative",
    "lift_series",
    "derivation_part",
    "MahlerCoefficients",
    "MahlerReport",
    "mahler_coefficients",
    "binomial_polynomial",
    "mahler_eval",
    "mahler_continuity_check",
]


def _valuation_literal(v: float):
    return "inf" if v == inf else int(v)


@dataclass
class ConvergenceCertificate:
    """Outcome of the finite convergence test on a truncated series.

    The certificate only speaks about the stored coefficients: it checks that the top-degree terms are below
    p^{-threshold} at the radius and that the last `tail_window` degrees are not growing. It proves nothing about the
    unknown coefficients beyond the truncation degree.

    """

    passed: bool
    prime: int
    radius: Fraction
    threshold: int
    tail_window: int
    trunc_degree: int
    reason: str
    witness_degree: Optional[int] = None
    # degree d -> valuation of max_{|m| = d} |a_m| R^d
    profile: Dict[int, float] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "prime": self.prime,
            "radius": str(self.radius),
            "threshold": self.threshold,
            "tail_window": self.tail_window,
            "trunc_degree": self.trunc_degree,
            "reason": self.reason,
            "witness_degree": self.witness_degree,
            "profile": {str(d): _valuation_literal(v) for d, v in sorted(self.profile.items())},
        }


def _radius_exponent(R: Fraction, p: int) -> int:
    """Returns r with R = p^{-r}."""
    R = Fraction(R)
    num_valuation, num_unit = split_valuation(R.numerator, p)
    den_valuation, den_unit = split_valuation(R.denominator, p)
    if num_unit != 1 or den_unit != 1:
        raise ValueError(f"Radius {R} is not an integral power of {p}.")
    return den_valuation - num_valuation


def check_convergence(
    f: PowerSeries, R: Fraction, threshold: Optional[int] = None, tail_window: int = DEFAULT_TAIL_WINDOW
) -> ConvergenceCertificate:
    """Tests whether |a_m| R^|m| -> 0 is plausible from the stored coefficients of f.

    Parameters
    ----------
    f : PowerSeries

    R : Fraction
        The radius, p^{-r} for an integer r, or 0.

    threshold : int, optional
        Top-degree terms must satisfy |a_m| R^D <= p^{-threshold}. Defaults to the precision of f.

    tail_window : int
        Number of top degrees over which max_{|m| = d} |a_m| R^d must be non-increasing. Degrees without terms are
        skipped.

    Returns
    -------
    certificate : ConvergenceCertificate

    """
    R = Fraction(R)
    threshold = f.precision if threshold is None else threshold
    certificate = dict(
        prime=f.prime, radius=R, threshold=threshold, tail_window=tail_window, trunc_degree=f.trunc_degree
    )
    if f.polynomial:
        return ConvergenceCertificate(True, reason="finite support", **certificate)
    if R == 0:
        return ConvergenceCertificate(True, reason="zero radius", **certificate)

    r = _radius_exponent(R, f.prime)
    profile: Dict[int, float] = {}
    for m, a in f.terms.items():
        d = sum(m)
        profile[d] = min(profile.get(d, inf), a.valuation + r * d)

    top = f.trunc_degree
    if profile.get(top, inf) < threshold:
        return ConvergenceCertificate(
            False,
            reason=f"degree-{top} terms exceed {f.prime}^-{threshold} at radius {R}",
            witness_degree=top,
            profile=profile,
            **certificate,
        )

    tail = [d for d in range(top - tail_window + 1, top + 1) if d in profile]
    for previous, current in zip(tail, tail[1:]):
        if profile[current] < profile[previous]:
            return ConvergenceCertificate(
                False,
                reason=f"terms grow from degree {previous} to degree {current} at radius {R}",
                witness_degree=current,
                profile=profile,
                **certificate,
            )
    return ConvergenceCertificate(True, reason="tail below threshold", profile=profile, **certificate)


def evaluation_radius(f: PowerSeries, x: Sequence[PadicNumber]) -> Fraction:
    """max_i |x_i - c_i|_p."""
    return max(norm(xi - ci) for xi, ci in zip(x, f.center))


def series_eval(f: PowerSeries, x: Sequence[Scalar], check: bool = True) -> PadicNumber:
    """Evaluates sum_m a_m prod_i (x_i - c_i)^{m_i} over the stored terms.

    Raises
    ------
    ConvergenceError
        If `check` is set and the series fails check_convergence at R = max_i |x_i - c_i|_p.

    """
    if len(x) != f.nvars:
        raise ShapeError(f"Expected a point with {f.nvars} coordinates, got {len(x)}.")
    x = [as_padic(xi, f.prime, f.precision) for xi in x]
    if check:
        _require_convergence(f, evaluation_radius(f, x))
    return f.substitute(x)


def _require_convergence(f: PowerSeries, R: Fraction):
    certificate = check_convergence(f, R)
    if not certificate.passed:
        raise ConvergenceError(f"Series does not converge at radius {R}: {certificate.reason}.", certificate)


def partial_derivative(f: PowerSeries, i: int) -> PowerSeries:
    """D_i f for 1 <= i <= n."""
    return f.derivative(i)


def lift_series(f: PowerSeries, xi: Sequence[WeilElement], check: bool = True) -> WeilElement:
    """Evaluates f with arguments in a Weil algebra A, giving f^A(xi).

    For dual numbers this is f(x_0) + (sum_i x_{i,1} D_i f(x_0)) eps, and projecting the result always gives
    series_eval(f, project(xi)).

    Parameters
    ----------
    f : PowerSeries
        A series in n variables.

    xi : sequence of WeilElement
        n elements of a common Weil algebra.

    check : bool
        Certify convergence of f at the projected point first.

    Returns
    -------
    value : WeilElement

    """
    if len(xi) != f.nvars:
        raise ShapeError(f"Expected {f.nvars} Weil elements, got {len(xi)}.")
    algebra = xi[0].algebra
    for element in xi[1:]:
        if element.algebra is not algebra and element.algebra != algebra:
            raise AlgebraMismatchError("All arguments of a lifted series must lie in one Weil algebra.")
    if algebra.prime != f.prime:
        raise AlgebraMismatchError(f"Series over Q_{f.prime} cannot be lifted to an algebra over Q_{algebra.prime}.")
    if check:
        _require_convergence(f, evaluation_radius(f, [element.project() for element in xi]))
    return f.substitute(list(xi))


def derivation_part(f: PowerSeries, xi: Sequence[WeilElement], check: bool = True) -> WeilElement:
    """L(f) = f^A(xi) - f(pr xi) 1_A, the part of the lift that lies in the nilpotent ideal."""
    lifted = lift_series(f, xi, check)
    return lifted - lifted.project()


@dataclass
class MahlerCoefficients:
    prime: int
    precision: int
    coeffs: Tuple[PadicNumber, ...]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> PadicNumber:
        return self.coeffs[n]


@dataclass
class MahlerReport:
    passed: bool
    threshold: int
    tail_window: int
    valuations: List[float]
    norms: List[Fraction]
    # |a_n / n|_p for n >= 1, reported without a verdict.
    smoothness_valuations: List[float]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "threshold": self.threshold,
            "tail_window": self.tail_window,
            "valuations": [_valuation_literal(v) for v in self.valuations],
            "norms": [str(n) for n in self.norms],
            "smoothness_valuations": [_valuation_literal(v) for v in self.smoothness_valuations],
        }


def mahler_coefficients(
    samples: Sequence[Scalar], p: Optional[int] = None, N: Optional[int] = None
) -> MahlerCoefficients:
    """Computes a_n = sum_{k=0}^{n} (-1)^{n-k} C(n, k) f(k) from the samples f(0), ..., f(K).

    Parameters
    ----------
    samples : sequence
        Values at 0, 1, ..., K, as PadicNumbers or rationals.

    p, N : int, optional
        The context, required when no sample is a PadicNumber.

    Returns
    -------
    coefficients : MahlerCoefficients
        a_0, ..., a_K.

    """
    if not samples:
        raise ValueError("At least one sample is needed.")
    padic = [s for s in samples if isinstance(s, PadicNumber)]
    if p is None:
        if not padic:
            raise ValueError("The prime must be given when no sample is a PadicNumber.")
        p = padic[0].prime
    if N is None:
        if not padic:
            raise ValueError("The precision must be given when no sample is a PadicNumber.")
        N = min(s.precision for s in padic)
    values = [as_padic(s, p, N) for s in samples]

    coeffs = []
    for n in range(len(values)):
        total = PadicNumber.zero(p, N)
        for k in range(n + 1):
            weight = comb(n, k, exact=True) * (-1) ** (n - k)
            total = total + weight * values[k]
        coeffs.append(total)
    return MahlerCoefficients(p, N, tuple(coeffs))


def _require_integral(x: PadicNumber):
    if not x.is_zero() and x.valuation < 0:
        raise NotAPadicIntegerError(f"{x} is not in Z_{x.prime}.")


def binomial_polynomial(x: PadicNumber, n: int) -> PadicNumber:
    """C(x, n) = x (x - 1) ... (x - n + 1) / n! for x in Z_p."""
    _require_integral(x)
    if n < 0:
        raise ValueError(f"Binomial index must be nonnegative, got {n}.")
    p, N = x.prime, x.precision
    numerator = PadicNumber.one(p, N)
    for k in range(n):
        numerator = numerator * (x - k)
    factorial = PadicNumber(p, factorial_valuation(n, p), factorial_unit(n, p, p ** N), N)
    return numerator / factorial


def mahler_eval(a: MahlerCoefficients, x: Scalar) -> PadicNumber:
    """sum_n a_n C(x, n)."""
    x = as_padic(x, a.prime, a.precision)
    _require_integral(x)
    total = PadicNumber.zero(a.prime, a.precision)
    binomial = PadicNumber.one(a.prime, a.precision)
    for n, coeff in enumerate(a.coeffs):
        if n:
            binomial = binomial * (x - (n - 1)) / n
        total = total + coeff * binomial
    return total


def mahler_continuity_check(
    a: MahlerCoefficients, threshold: Optional[int] = None, tail_window: int = DEFAULT_TAIL_WINDOW
) -> MahlerReport:
    """Reports |a_n|_p and whether the last `tail_window` coefficients are all below p^{-threshold}.

    The profile |a_n / n|_p is included for inspection only.
    """
    threshold = a.precision if threshold is None else threshold
    valuations = [c.valuation for c in a.coeffs]
    tail = valuations[-tail_window:]
    smoothness = [(c / n).valuation for n, c in enumerate(a.coeffs) if n]
    return MahlerReport(
        passed=min(tail, default=inf) >= threshold,
        threshold=threshold,
        tail_window=tail_window,
        valuations=valuations,
        norms=[norm(c) for c in a.coeffs],
        smoothness_valuations=smoothness,
    )
