"""Built-in charts of projective spaces, expanded as power series about a base point.

P^1 carries a three-chart atlas of Moebius charts: chart i has coordinate g_i(y), y the affine coordinate of chart 0,
with g_0 the identity, g_1(y) = 1/y and g_2(y) = y/(y + 1). P^n carries its n + 1 standard charts
y = (X_k / X_i)_{k != i}.

"""

import logging
from math import inf
from typing import Callable, Sequence, Tuple

from .PadicNumber import PadicNumber
from .PowerSeries import PowerSeries
from .WeilBundle import ChartTransition, WeilPoint, transition_lift
from .scaling import DEFAULT_CHART_DEGREE
from .utils import ShapeError

__all__ = [
    "P1_CHART_MATRICES",
    "p1_transition_matrix",
    "mobius_series",
    "p1_transition",
    "projective_transition",
    "cocycle_discrepancy",
]

logger = logging.getLogger(__name__)

Matrix2 = Tuple[Tuple[int, int], Tuple[int, int]]

P1_CHART_MATRICES = {
    0: ((1, 0), (0, 1)),
    1: ((0, 1), (1, 0)),
    2: ((1, 0), (1, 1)),
}


def _compose(g: Matrix2, h: Matrix2) -> Matrix2:
    (a, b), (c, d) = g
    (e, f), (k, l) = h
    return (a * e + b * k, a * f + b * l), (c * e + d * k, c * f + d * l)


def _adjugate(g: Matrix2) -> Matrix2:
    (a, b), (c, d) = g
    return (d, -b), (-c, a)


def p1_transition_matrix(i: int, j: int) -> Matrix2:
    """The Moebius matrix of the change from chart i to chart j, g_j g_i^{-1} up to scaling."""
    if i not in P1_CHART_MATRICES or j not in P1_CHART_MATRICES:
        raise ShapeError(f"P^1 charts are numbered {sorted(P1_CHART_MATRICES)}, got {i} and {j}.")
    return _compose(P1_CHART_MATRICES[j], _adjugate(P1_CHART_MATRICES[i]))


def mobius_series(matrix: Matrix2, center: PadicNumber, degree: int = DEFAULT_CHART_DEGREE) -> PowerSeries:
    """Expands z -> (a z + b) / (c z + d) about `center` to the given degree."""
    (a, b), (c, d) = matrix
    u = PowerSeries.variable(1, 1, center.prime, center.precision, [center])
    numerator = u * a + b
    denominator = u * c + d
    if denominator.constant_term().valuation >= center.precision:
        raise ValueError(f"{center.to_fraction()} is a pole of the transition {matrix}.")
    return numerator * denominator.reciprocal(degree)


def p1_transition(i: int, j: int, center: PadicNumber, degree: int = DEFAULT_CHART_DEGREE) -> ChartTransition:
    """The transition from chart i to chart j of P^1, expanded about the chart-i coordinate `center`."""
    return ChartTransition([mobius_series(p1_transition_matrix(i, j), center, degree)])


def projective_transition(
    i: int, j: int, center: Sequence[PadicNumber], degree: int = DEFAULT_CHART_DEGREE
) -> ChartTransition:
    """The transition between standard charts i and j of P^n, n = len(center), about the chart-i point `center`.

    From chart 0 to chart 1 this is (y_1, ..., y_n) -> (1/y_1, y_2/y_1, ..., y_n/y_1).

    Parameters
    ----------
    i, j : int
        Chart indices in 0..n.

    center : sequence of PadicNumber
        The expansion point, in chart-i coordinates.

    degree : int

    Returns
    -------
    transition : ChartTransition

    """
    n = len(center)
    if not (0 <= i <= n and 0 <= j <= n):
        raise ShapeError(f"P^{n} charts are numbered 0..{n}, got {i} and {j}.")
    p, N = center[0].prime, min(c.precision for c in center)
    variables = [PowerSeries.variable(k + 1, n, p, N, center) for k in range(n)]
    if i == j:
        return ChartTransition(variables)

    # Homogeneous coordinates with X_i = 1.
    ones = PowerSeries.constant(1, n, p, N, center)
    others = iter(variables)
    homogeneous = [ones if k == i else next(others) for k in range(n + 1)]

    divisor = homogeneous[j]
    if divisor.constant_term().valuation >= N:
        raise ValueError(f"The point {[c.to_fraction() for c in center]} lies outside chart {j}.")
    inverse = divisor.reciprocal(degree)
    return ChartTransition([homogeneous[k] * inverse for k in range(n + 1) if k != j])


TransitionFactory = Callable[[int, int, object, int], ChartTransition]


def _p1_factory(i: int, j: int, base, degree: int) -> ChartTransition:
    return p1_transition(i, j, base[0], degree)


def cocycle_discrepancy(
    xi: WeilPoint,
    charts: Tuple[int, int, int] = (0, 1, 2),
    factory: TransitionFactory = _p1_factory,
    degree: int = DEFAULT_CHART_DEGREE,
) -> float:
    """Compares T_jk^A(T_ij^A(xi)) with T_ik^A(xi) on a triple overlap.

    Parameters
    ----------
    xi : WeilPoint
        A point in chart i coordinates.

    charts : (i, j, k)

    factory : callable
        factory(i, j, base_point, degree) returns the transition from chart i to chart j expanded about base_point.
        Defaults to the P^1 Moebius atlas; pass a wrapper of projective_transition for P^n.

    degree : int

    Returns
    -------
    valuation : float
        The smallest valuation among the coordinate differences, math.inf when they agree exactly.

    """
    i, j, k = charts
    middle = transition_lift(factory(i, j, xi.base_point(), degree), xi)
    composed = transition_lift(factory(j, k, middle.base_point(), degree), middle)
    direct = transition_lift(factory(i, k, xi.base_point(), degree), xi)

    valuation = inf
    for left_row, right_row in zip(composed.coords, direct.coords):
        for left, right in zip(left_row, right_row):
            valuation = min(valuation, (left - right).valuation)
    logger.debug("cocycle discrepancy at %s: valuation %s", xi, valuation)
    return valuation
