"""This module implements the chart-level machinery of a Weil bundle M^A: infinitely near points in local coordinates,
the projection to M, lifting of chart transitions, and the lifts of vector fields, differential forms and connections.

Tangent vectors to M^A are n x l coordinate-velocity matrices in a fixed chart; the derivative of the projection
reads off their first column.

"""

from itertools import permutations
from typing import Dict, List, Mapping, Sequence, Tuple

from .PadicNumber import PadicNumber, Scalar, as_padic
from .PowerSeries import PowerSeries
from .WeilAlgebra import WeilAlgebra, WeilElement
from .analyticfunctions import lift_series, series_eval
from .utils import FormIndexError, PrimeMismatchError, ShapeError

__all__ = [
    "WeilPoint",
    "ChartTransition",
    "ChristoffelData",
    "DifferentialForm",
    "make_weil_point",
    "project_point",
    "transition_lift",
    "lift_vector_field",
    "projection_constant_lift",
    "evaluate_form",
    "evaluate_lifted_form",
    "covariant_derivative",
    "lift_connection",
]


class WeilPoint:
    def __init__(self, algebra: WeilAlgebra, coords: Sequence[Sequence[Scalar]]):
        """An infinitely near point xi with xi(x_i) = sum_j coords[i][j] alpha_j.

        Parameters
        ----------
        algebra : WeilAlgebra

        coords : n x l nested sequence
            Row i holds the coordinates x_{i,1}, ..., x_{i,l} of the i-th chart coordinate.

        """
        if not coords:
            raise ShapeError("A Weil point needs at least one coordinate row.")
        for i, row in enumerate(coords):
            if len(row) != algebra.dim:
                raise ShapeError(f"Row {i + 1} has {len(row)} entries, the algebra has dimension {algebra.dim}.")
        self.algebra = algebra
        self.n = len(coords)
        self.coords: Tuple[Tuple[PadicNumber, ...], ...] = tuple(
            tuple(as_padic(x, algebra.prime, algebra.precision) for x in row) for row in coords
        )

    @classmethod
    def from_elements(cls, elements: Sequence[WeilElement]) -> "WeilPoint":
        algebra = elements[0].algebra
        return cls(algebra, [element.coeffs for element in elements])

    def rows(self) -> List[WeilElement]:
        return [WeilElement(self.algebra, row) for row in self.coords]

    def base_point(self) -> List[PadicNumber]:
        return [row[0] for row in self.coords]

    def base_section(self) -> "WeilPoint":
        """The point over the same base point with all higher coordinates zero."""
        return WeilPoint(self.algebra, [[row[0]] + [0] * (self.algebra.dim - 1) for row in self.coords])

    def agrees_with(self, other: "WeilPoint", digits: int) -> bool:
        return all(a.agrees_with(b, digits) for a, b in zip(self.rows(), other.rows()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeilPoint):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    __hash__ = None

    def __repr__(self) -> str:
        rows = "; ".join(str(row) for row in self.rows())
        return f"WeilPoint({rows})"


class ChartTransition:
    def __init__(self, components: Sequence[PowerSeries]):
        """The chart change phi_j o phi_i^{-1}, as n power series in n variables about a common center."""
        if not components:
            raise ShapeError("A chart transition needs at least one component.")
        n = len(components)
        first = components[0]
        for k, series in enumerate(components):
            if series.nvars != n:
                raise ShapeError(f"Component {k + 1} has {series.nvars} variables, expected {n}.")
            if series.prime != first.prime:
                raise PrimeMismatchError("All components of a chart transition share one prime.")
            if series.center != first.center:
                raise ShapeError("All components of a chart transition share one center.")
        self.components = tuple(components)
        self.n = n

    def __call__(self, x: Sequence[Scalar]) -> List[PadicNumber]:
        return [series_eval(series, x) for series in self.components]


class ChristoffelData:
    def __init__(self, symbols: Sequence[Sequence[Sequence[PowerSeries]]]):
        """Christoffel symbols Gamma_{ij}^k, stored as symbols[i][j][k] (0-based), each a series in n variables."""
        n = len(symbols)
        for i, plane in enumerate(symbols):
            if len(plane) != n or any(len(row) != n for row in plane):
                raise ShapeError(f"Christoffel symbols must form an {n} x {n} x {n} array.")
            for row in plane:
                for series in row:
                    if series.nvars != n:
                        raise ShapeError(f"Christoffel symbol in {series.nvars} variables, expected {n}.")
        self.symbols = tuple(tuple(tuple(row) for row in plane) for plane in symbols)
        self.n = n


class DifferentialForm:
    def __init__(self, n: int, k: int, components: Mapping[Tuple[int, ...], PowerSeries]):
        """The k-form sum_I f_I dx^I on an n-dimensional chart.

        Parameters
        ----------
        n : int

        k : int

        components : mapping
            Strictly increasing 1-based index tuples I of length k to coefficient series f_I.

        """
        if not components:
            raise FormIndexError("A differential form needs at least one component; use a zero coefficient for 0.")
        for index, series in components.items():
            index = tuple(index)
            if len(index) != k:
                raise FormIndexError(f"Index {index} has length {len(index)}, expected {k}.")
            if any(a >= b for a, b in zip(index, index[1:])):
                raise FormIndexError(f"Index {index} is not strictly increasing.")
            if index and not (1 <= index[0] and index[-1] <= n):
                raise FormIndexError(f"Index {index} is outside 1..{n}.")
            if series.nvars != n:
                raise ShapeError(f"Coefficient of dx^{index} has {series.nvars} variables, expected {n}.")
        self.n = n
        self.k = k
        self.components: Dict[Tuple[int, ...], PowerSeries] = {tuple(i): f for i, f in components.items()}


def make_weil_point(algebra: WeilAlgebra, coords: Sequence[Sequence[Scalar]]) -> WeilPoint:
    return WeilPoint(algebra, coords)


def project_point(xi: WeilPoint) -> List[PadicNumber]:
    """The base point pi_M(xi), i.e. the alpha_1 column of the coordinates."""
    return xi.base_point()


def transition_lift(T: ChartTransition, xi: WeilPoint) -> WeilPoint:
    """Carries xi through the lifted chart change: xi(z_k) = T_k^A(xi(y_1), ..., xi(y_n))."""
    if T.n != xi.n:
        raise ShapeError(f"Transition in {T.n} coordinates applied to a point with {xi.n}.")
    rows = xi.rows()
    return WeilPoint.from_elements([lift_series(series, rows) for series in T.components])


def lift_vector_field(a: Sequence[PowerSeries], xi: WeilPoint) -> List[WeilElement]:
    """The coefficients a_i^A(xi) of the lifted field sum_i a_i^A d/dx~_i at xi."""
    if len(a) != xi.n:
        raise ShapeError(f"Vector field with {len(a)} components on a chart of dimension {xi.n}.")
    rows = xi.rows()
    return [lift_series(series, rows) for series in a]


def projection_constant_lift(a: Sequence[PowerSeries], xi: WeilPoint) -> List[WeilElement]:
    """The lift v^A(F) = v(F o pi): the coefficients are evaluated at the base section of xi, so they are the constants
    a_i(pi(xi)) 1_A.

    """
    return lift_vector_field(a, xi.base_section())


def _check_velocities(xi: WeilPoint, vectors: Sequence[Sequence[Sequence[Scalar]]]):
    for r, v in enumerate(vectors):
        if len(v) != xi.n or any(len(row) != xi.algebra.dim for row in v):
            raise ShapeError(f"Tangent vector {r + 1} must be a {xi.n} x {xi.algebra.dim} matrix.")


def _determinant(matrix: Sequence[Sequence[PadicNumber]], zero: PadicNumber) -> PadicNumber:
    """Leibniz expansion; forms have small degree."""
    k = len(matrix)
    total = zero
    for perm in permutations(range(k)):
        inversions = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
        term = zero + 1
        for row, column in enumerate(perm):
            term = term * matrix[row][column]
        total = total - term if inversions % 2 else total + term
    return total


def evaluate_form(omega: DifferentialForm, x: Sequence[Scalar], vectors: Sequence[Sequence[Scalar]]) -> PadicNumber:
    """omega at the point x on k tangent vectors of M, each given by its n components."""
    p = next(iter(omega.components.values())).prime
    N = min(series.precision for series in omega.components.values())
    zero = PadicNumber.zero(p, N)
    total = zero
    for index, series in omega.components.items():
        minor = [[as_padic(v[i - 1], p, N) for i in index] for v in vectors]
        total = total + series_eval(series, x) * _determinant(minor, zero)
    return total


def evaluate_lifted_form(
    omega: DifferentialForm, xi: WeilPoint, vectors: Sequence[Sequence[Sequence[Scalar]]]
) -> WeilElement:
    """Evaluates the lifted form sum_I f_I^A dx~^I at xi on k tangent vectors of M^A.

    Each vector enters through its base velocity d(pi_M)(v), the first column of its coordinate-velocity matrix, so
    the result is sum_I f_I^A(xi) det[d(pi_M)(v_r)_{i_s}].

    Parameters
    ----------
    omega : DifferentialForm

    xi : WeilPoint

    vectors : sequence of n x l matrices
        Exactly omega.k tangent vectors.

    Returns
    -------
    value : WeilElement

    """
    if len(vectors) != omega.k:
        raise FormIndexError(f"A {omega.k}-form takes {omega.k} vectors, got {len(vectors)}.")
    if omega.n != xi.n:
        raise ShapeError(f"Form on a chart of dimension {omega.n} evaluated at a point of dimension {xi.n}.")
    _check_velocities(xi, vectors)

    p, N = xi.algebra.prime, xi.algebra.precision
    zero = PadicNumber.zero(p, N)
    rows = xi.rows()
    total = xi.algebra.zero()
    for index, series in omega.components.items():
        minor = [[as_padic(v[i - 1][0], p, N) for i in index] for v in vectors]
        total = total + lift_series(series, rows) * _determinant(minor, zero)
    return total


def _check_fields(G: ChristoffelData, X: Sequence[PowerSeries], Y: Sequence[PowerSeries]):
    if len(X) != G.n or len(Y) != G.n:
        raise ShapeError(f"Vector fields must have {G.n} components.")
    center = X[0].center
    for series in list(X) + list(Y):
        if series.center != center:
            raise ShapeError("Connection data must be expanded about a common center.")


def _directional_derivatives(X: Sequence[PowerSeries], Y: Sequence[PowerSeries]) -> List[PowerSeries]:
    """X(Y^k) = sum_i X^i D_i Y^k, computed on series."""
    result = []
    for target in Y:
        total = None
        for i, coefficient in enumerate(X):
            term = coefficient * target.derivative(i + 1)
            total = term if total is None else total + term
        result.append(total)
    return result


def covariant_derivative(
    G: ChristoffelData, X: Sequence[PowerSeries], Y: Sequence[PowerSeries], x: Sequence[Scalar]
) -> List[PadicNumber]:
    """The components (nabla_X Y)^k = X(Y^k) + sum_{i,j} X^i Y^j Gamma_{ij}^k at the point x of M."""
    _check_fields(G, X, Y)
    derivatives = _directional_derivatives(X, Y)
    x_values = [series_eval(series, x) for series in X]
    y_values = [series_eval(series, x) for series in Y]
    components = []
    for k in range(G.n):
        total = series_eval(derivatives[k], x)
        for i in range(G.n):
            for j in range(G.n):
                total = total + x_values[i] * y_values[j] * series_eval(G.symbols[i][j][k], x)
        components.append(total)
    return components


def lift_connection(
    G: ChristoffelData, X: Sequence[PowerSeries], Y: Sequence[PowerSeries], xi: WeilPoint
) -> List[WeilElement]:
    """The components of the lifted covariant derivative at xi:

    (sum_i X^i D_i Y^k)^A + sum_{i,j} (X^i)^A (Y^j)^A (Gamma_{ij}^k)^A.

    Projecting each component gives covariant_derivative(G, X, Y, pi(xi)).
    """
    _check_fields(G, X, Y)
    if xi.n != G.n:
        raise ShapeError(f"Connection on a chart of dimension {G.n} evaluated at a point of dimension {xi.n}.")
    rows = xi.rows()
    derivatives = _directional_derivatives(X, Y)
    x_lifts = [lift_series(series, rows) for series in X]
    y_lifts = [lift_series(series, rows) for series in Y]
    components = []
    for k in range(G.n):
        total = lift_series(derivatives[k], rows)
        for i in range(G.n):
            for j in range(G.n):
                total = total + x_lifts[i] * y_lifts[j] * lift_series(G.symbols[i][j][k], rows)
        components.append(total)
    return components
