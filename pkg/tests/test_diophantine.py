"""Tests for residuals, Jacobians, tangent spaces, infinitesimal points and Hensel lifting of polynomial systems.

"""

from fractions import Fraction
from math import inf

import numpy as np
import pytest

from pyweil.DiophantineSystem import (
    DiophantineSystem,
    evaluate_system,
    hensel_iterates,
    hensel_lift,
    infinitesimal_points,
    jacobian,
    tangent_residual,
    tangent_space,
)
from pyweil.PowerSeries import PowerSeries
from pyweil.WeilAlgebra import make_jet_algebra
from pyweil.analyticfunctions import series_eval
from pyweil.utils import (
    AlgebraMismatchError,
    NotAnApproximateRootError,
    NotAPadicIntegerError,
    NotASolutionError,
    PrimeMismatchError,
    ShapeError,
    SingularJacobianError,
)


def polynomial(terms, nvars, p=5, N=20):
    return PowerSeries(p, N, nvars, terms, 0, polynomial=True)


def circle(p=5, N=20):
    return DiophantineSystem([polynomial({(2, 0): 1, (0, 2): 1, (0, 0): -1}, 2, p, N)])


def square_root_of(a, p=5, N=20):
    return DiophantineSystem([polynomial({(2,): 1, (0,): -a}, 1, p, N)])


def linear_system(constants=(0, 0)):
    """x + 2y = c1, 3x + 4y = c2."""
    return DiophantineSystem(
        [
            polynomial({(1, 0): 1, (0, 1): 2, (0, 0): -constants[0]}, 2),
            polynomial({(1, 0): 3, (0, 1): 4, (0, 0): -constants[1]}, 2),
        ]
    )


def random_system_through(rng, base, m, degree=2, p=7, N=20):
    """m random polynomials shifted to vanish at `base`."""
    n = len(base)
    polys = []
    for _ in range(m):
        terms = {}
        for exponents in np.ndindex(*([degree + 1] * n)):
            if 0 < sum(exponents) <= degree:
                terms[tuple(int(e) for e in exponents)] = int(rng.integers(-5, 6))
        g = polynomial(terms, n, p, N)
        polys.append(g - series_eval(g, base))
    return DiophantineSystem(polys)


def test_residual_examples():
    assert evaluate_system(circle(), [1, 0]).passed
    assert evaluate_system(circle(), [1, 0]).valuations == [inf]
    report = evaluate_system(circle(), [1, 1])
    assert not report.passed
    assert report.valuations == [0]
    assert evaluate_system(square_root_of(6, N=2), [16]).passed
    assert report.to_dict()["solution"] is False


def test_system_validation():
    with pytest.raises(NotAPadicIntegerError):
        DiophantineSystem([polynomial({(1,): 1, (0,): Fraction(1, 5)}, 1)])
    with pytest.raises(ValueError):
        DiophantineSystem([PowerSeries.from_coefficients([1, 1, 1], 5, 20)])
    with pytest.raises(PrimeMismatchError):
        DiophantineSystem([polynomial({(1,): 1}, 1), polynomial({(1,): 1}, 1, p=7)])
    with pytest.raises(ShapeError):
        DiophantineSystem([])
    with pytest.raises(NotAPadicIntegerError):
        circle().point([Fraction(1, 5), 0])
    assert circle().precision == 20


def test_jacobian_examples():
    assert list(jacobian(circle(), [1, 0])[0]) == [2, 0]
    J = jacobian(linear_system(), [3, -7])
    assert [list(row) for row in J] == [[1, 2], [3, 4]]
    assert list(jacobian(square_root_of(0), [0])[0]) == [0]


def test_circle_tangent_line():
    solution = tangent_space(circle(), [1, 0])
    assert solution.kernel_basis == [[0, 1]]
    assert solution.rank == 1
    assert solution.dimension == 1
    assert solution.to_dict()["kernel_basis"] == [["0", "1"]]


def test_singular_point_has_full_tangent_space():
    solution = tangent_space(square_root_of(0), [0])
    assert solution.rank == 0
    assert solution.kernel_basis == [[1]]


def test_full_rank_has_trivial_tangent_space():
    solution = tangent_space(linear_system(), [0, 0])
    assert solution.rank == 2
    assert solution.kernel_basis == []
    points = infinitesimal_points(linear_system(), [0, 0])
    assert points.parametrize([]) == points.point([0, 0])
    assert points.verify([0, 0]).passed


def test_tangent_space_needs_a_solution():
    with pytest.raises(NotASolutionError):
        tangent_space(circle(), [1, 1])


def test_circle_jets():
    points = infinitesimal_points(circle(), [1, 0])
    rng = np.random.default_rng(20)
    for _ in range(100):
        t = int(rng.integers(-10 ** 6, 10 ** 6))
        xi = points.parametrize([t])
        assert xi.coords[1][1] == t
        assert points.verify(points.tangent_vector([t])).passed
    check = points.verify([1, 0])
    assert not check.passed
    assert check.tangent_valuations == [0]
    assert check.base_valuations == [inf]


def test_infinitesimal_points_need_dual_numbers():
    with pytest.raises(AlgebraMismatchError):
        infinitesimal_points(circle(), [1, 0], make_jet_algebra(5, 20, 2))


def test_random_tangent_spaces():
    rng = np.random.default_rng(20)
    for m in (1, 2, 3):
        for _ in range(5):
            base = [int(rng.integers(-20, 21)) for _ in range(3)]
            S = random_system_through(rng, base, m)
            solution = tangent_space(S, base)
            assert solution.dimension + solution.rank == S.nvars
            for v in solution.kernel_basis:
                assert all(r.valuation >= S.precision for r in tangent_residual(S, base, v))

            points = infinitesimal_points(S, base)
            for _ in range(20):
                t = [int(rng.integers(-100, 101)) for _ in range(solution.dimension)]
                assert points.verify(points.tangent_vector(t)).passed


def test_random_full_rank_linear_systems():
    """A = L [I | B] with L unit lower-triangular has rank m over Z_p."""
    rng = np.random.default_rng(50)
    for _ in range(50):
        n = int(rng.integers(2, 5))
        m = int(rng.integers(1, n))
        L = np.tril(rng.integers(-4, 5, size=(m, m)), -1) + np.eye(m, dtype=np.int64)
        B = rng.integers(-4, 5, size=(m, n - m))
        A = L @ np.hstack([np.eye(m, dtype=np.int64), B])
        rows = []
        for i in range(m):
            terms = {tuple(int(k == j) for k in range(n)): int(A[i, j]) for j in range(n) if A[i, j] != 0}
            rows.append(polynomial(terms, n))
        S = DiophantineSystem(rows)
        base = [0] * n
        solution = tangent_space(S, base)
        assert solution.rank == m
        assert solution.dimension == n - m
        for v in solution.kernel_basis:
            assert all(r.valuation >= S.precision for r in tangent_residual(S, base, v))


def test_vectors_off_the_tangent_line_fail():
    points = infinitesimal_points(circle(), [1, 0])
    rng = np.random.default_rng(51)
    for _ in range(50):
        a = int(rng.choice([-1, 1])) * int(rng.integers(1, 100))
        b = int(rng.integers(-100, 101))
        check = points.verify([a, b])
        assert not check.passed
        assert check.tangent_valuations[0] < points.system.precision


def test_hensel_square_root_of_six():
    """Residual valuations 1, 2, 4, 8, 16 and then zero at precision."""
    S = square_root_of(6)
    steps = list(hensel_iterates(S, [1]))
    assert [step.residual_valuation for step in steps] == [1, 2, 4, 8, 16, inf]
    root = steps[-1].point[0]
    assert root.residue(2) == 16
    assert root.residue(1) == 1
    assert (root * root - 6).valuation >= 20
    assert hensel_lift(S, [1]) == steps[-1].point


def test_hensel_doubles_digits():
    rng = np.random.default_rng(20)
    for _ in range(10):
        x0 = int(rng.integers(1, 7))
        S = square_root_of(x0 * x0 + 7 * int(rng.integers(1, 50)), p=7)
        steps = list(hensel_iterates(S, [x0]))
        for previous, current in zip(steps, steps[1:]):
            assert current.residual_valuation >= 2 * previous.residual_valuation
        assert steps[-1].point[0].residue(1) == x0


def test_hensel_on_a_linear_system():
    S = linear_system((3, 7))
    steps = list(hensel_iterates(S, [6, 1]))
    assert len(steps) == 2
    assert steps[-1].point == [1, 1]


def test_hensel_errors():
    with pytest.raises(SingularJacobianError):
        hensel_lift(square_root_of(5), [0])
    with pytest.raises(NotAnApproximateRootError):
        hensel_lift(square_root_of(6), [2])


def test_hensel_needs_a_square_system():
    with pytest.raises(ShapeError):
        hensel_lift(circle(), [1, 0])


def test_tangent_residual():
    assert tangent_residual(circle(), [1, 0], [3, 4]) == [6]
    assert tangent_residual(linear_system(), [0, 0], [1, 1]) == [3, 7]
