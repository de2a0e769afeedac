"""This module implements polynomial systems over Z_p and their infinitesimal solutions: residual checks, p-adic
Jacobians, tangent spaces at a base solution, dual-number points of the solution set, and Hensel lifting.

A value counts as zero when its valuation reaches the working precision N of the system.

"""

import logging
from dataclasses import dataclass, field
from math import inf
from typing import Iterator, List, Optional, Sequence

import numpy as np

from .PadicNumber import PadicNumber, Scalar, as_padic
from .PowerSeries import PowerSeries
from .WeilAlgebra import WeilAlgebra, make_dual_numbers
from .WeilBundle import WeilPoint
from .analyticfunctions import lift_series, partial_derivative, series_eval
from .linalg import kernel, mat_vec, row_echelon, solve
from .utils import (
    AlgebraMismatchError,
    ConvergenceError,
    NotAnApproximateRootError,
    NotAPadicIntegerError,
    NotASolutionError,
    PrimeMismatchError,
    ShapeError,
    SingularJacobianError,
)

__all__ = [
    "DiophantineSystem",
    "ResidualReport",
    "TangentSolution",
    "InfinitesimalCheck",
    "InfinitesimalPoints",
    "HenselStep",
    "evaluate_system",
    "jacobian",
    "tangent_space",
    "infinitesimal_points",
    "hensel_iterates",
    "hensel_lift",
    "tangent_residual",
]

logger = logging.getLogger(__name__)


def _valuation_literal(v: float):
    return "inf" if v == inf else int(v)


def _literal(x: PadicNumber) -> str:
    return str(x.to_fraction())


class DiophantineSystem:
    def __init__(self, polys: Sequence[PowerSeries]):
        """The system f_1 = ... = f_m = 0 of polynomials in n variables with coefficients in Z_p.

        Parameters
        ----------
        polys : sequence of PowerSeries
            Polynomials (the `polynomial` flag set) about the origin, sharing prime and number of variables. The
            working precision is the smallest precision among them.

        """
        if not polys:
            raise ShapeError("A system needs at least one equation.")
        first = polys[0]
        for i, f in enumerate(polys):
            if f.prime != first.prime:
                raise PrimeMismatchError(f"Equation {i + 1} is over Q_{f.prime}, expected Q_{first.prime}.")
            if f.nvars != first.nvars:
                raise ShapeError(f"Equation {i + 1} has {f.nvars} variables, expected {first.nvars}.")
            if not f.polynomial:
                raise ValueError(f"Equation {i + 1} is a truncated series, not a polynomial.")
            if any(not c.is_zero() for c in f.center):
                raise ShapeError(f"Equation {i + 1} is not expanded about the origin.")
            for m, c in f.terms.items():
                if not c.is_integral():
                    raise NotAPadicIntegerError(
                        f"Coefficient {c.to_fraction()} of x^{m} in equation {i + 1} is not in Z_{first.prime}."
                    )

        self.polys = tuple(polys)
        self.prime = first.prime
        self.precision = min(f.precision for f in polys)
        self.nvars = first.nvars
        self.m = len(polys)
        # Newton doubles the correct digits, so about log2(N) steps reach N.
        self.MAX_NEWTON_ITERATIONS = self.precision.bit_length() + 2

    def point(self, x: Sequence[Scalar]) -> List[PadicNumber]:
        """Coerces x to n elements of Z_p at the working precision."""
        if len(x) != self.nvars:
            raise ShapeError(f"Expected a point with {self.nvars} coordinates, got {len(x)}.")
        point = [as_padic(xi, self.prime, self.precision) for xi in x]
        for xi in point:
            if not xi.is_integral():
                raise NotAPadicIntegerError(f"Coordinate {xi.to_fraction()} is not in Z_{self.prime}.")
        return point

    def __repr__(self) -> str:
        return f"DiophantineSystem(Q_{self.prime}, N={self.precision}, m={self.m}, n={self.nvars})"


@dataclass
class ResidualReport:
    values: List[PadicNumber]
    valuations: List[float]
    threshold: int

    @property
    def passed(self) -> bool:
        return all(v >= self.threshold for v in self.valuations)

    @property
    def min_valuation(self) -> float:
        return min(self.valuations)

    def to_dict(self) -> dict:
        return {
            "solution": self.passed,
            "criterion": f"valuation >= {self.threshold}",
            "residual_valuations": [_valuation_literal(v) for v in self.valuations],
        }


def evaluate_system(S: DiophantineSystem, x: Sequence[Scalar]) -> ResidualReport:
    """Evaluates every f_i at x in Z_p^n and reports the valuations of the residuals."""
    x = S.point(x)
    values = [series_eval(f, x) for f in S.polys]
    return ResidualReport(values, [v.valuation for v in values], S.precision)


def jacobian(S: DiophantineSystem, x: Sequence[Scalar]) -> np.ndarray:
    """The m x n object array with entries D_j f_i(x)."""
    x = S.point(x)
    J = np.empty((S.m, S.nvars), dtype=object)
    for i, f in enumerate(S.polys):
        for j in range(S.nvars):
            J[i, j] = series_eval(partial_derivative(f, j + 1), x)
    return J


@dataclass
class TangentSolution:
    base: List[PadicNumber]
    kernel_basis: List[List[PadicNumber]]
    residual_valuations: List[float]
    rank: int
    min_pivot_valuation: float
    threshold: int

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis)

    def to_dict(self) -> dict:
        return {
            "base": [_literal(x) for x in self.base],
            "kernel_basis": [[_literal(x) for x in v] for v in self.kernel_basis],
            "dimension": self.dimension,
            "rank": self.rank,
            "min_pivot_valuation": _valuation_literal(self.min_pivot_valuation),
            "residual_valuations": [_valuation_literal(v) for v in self.residual_valuations],
            "criterion": f"valuation >= {self.threshold}",
        }


def tangent_space(S: DiophantineSystem, base: Sequence[Scalar]) -> TangentSolution:
    """Computes { v : J(base) v = 0 mod p^N } at a solution `base`.

    Singular base points are allowed; the tangent space is then larger than n - m.

    Raises
    ------
    NotASolutionError
        If some f_i(base) has valuation below N.

    """
    report = evaluate_system(S, base)
    if not report.passed:
        raise NotASolutionError(
            f"{[_literal(x) for x in S.point(base)]} is not a solution mod {S.prime}^{S.precision}: "
            f"residual valuations {report.valuations}."
        )
    J = jacobian(S, base)
    echelon = row_echelon(J, S.precision)
    return TangentSolution(
        base=S.point(base),
        kernel_basis=kernel(J, S.precision),
        residual_valuations=report.valuations,
        rank=echelon.rank,
        min_pivot_valuation=echelon.min_pivot_valuation,
        threshold=S.precision,
    )


@dataclass
class InfinitesimalCheck:
    vector: List[PadicNumber]
    base_valuations: List[float]
    tangent_valuations: List[float]
    threshold: int

    @property
    def passed(self) -> bool:
        return all(v >= self.threshold for v in self.base_valuations + self.tangent_valuations)

    def to_dict(self) -> dict:
        return {
            "vector": [_literal(x) for x in self.vector],
            "passed": self.passed,
            "base_valuations": [_valuation_literal(v) for v in self.base_valuations],
            "tangent_valuations": [_valuation_literal(v) for v in self.tangent_valuations],
        }


class InfinitesimalPoints:
    def __init__(self, system: DiophantineSystem, solution: TangentSolution, algebra: WeilAlgebra):
        """The dual-number points xi(x_j) = base_j + v_j eps of the solution set over `solution.base`, with v in the
        span of the kernel basis.

        """
        self.system = system
        self.solution = solution
        self.algebra = algebra

    def tangent_vector(self, t: Sequence[Scalar]) -> List[PadicNumber]:
        """sum_k t_k kernel_basis[k]."""
        basis = self.solution.kernel_basis
        if len(t) != len(basis):
            raise ShapeError(f"Expected {len(basis)} parameters, got {len(t)}.")
        p, N = self.system.prime, self.system.precision
        v = [PadicNumber.zero(p, N) for _ in range(self.system.nvars)]
        for tk, vector in zip(t, basis):
            tk = as_padic(tk, p, N)
            v = [a + tk * b for a, b in zip(v, vector)]
        return v

    def point(self, v: Sequence[Scalar]) -> WeilPoint:
        """The jet base + v eps for an arbitrary vector v."""
        if len(v) != self.system.nvars:
            raise ShapeError(f"Expected a vector with {self.system.nvars} entries, got {len(v)}.")
        return WeilPoint(self.algebra, [[b, vj] for b, vj in zip(self.solution.base, v)])

    def parametrize(self, t: Sequence[Scalar]) -> WeilPoint:
        return self.point(self.tangent_vector(t))

    def verify(self, v: Sequence[Scalar]) -> InfinitesimalCheck:
        """Lifts every f_i to base + v eps and checks that both components vanish mod p^N."""
        xi = self.point(v)
        rows = xi.rows()
        lifted = [lift_series(f, rows) for f in self.system.polys]
        return InfinitesimalCheck(
            vector=[row[1] for row in xi.coords],
            base_valuations=[value.coeffs[0].valuation for value in lifted],
            tangent_valuations=[value.coeffs[1].valuation for value in lifted],
            threshold=self.system.precision,
        )


def infinitesimal_points(
    S: DiophantineSystem, base: Sequence[Scalar], algebra: Optional[WeilAlgebra] = None
) -> InfinitesimalPoints:
    """Describes the dual-number points of the solution set lying over `base`."""
    if algebra is None:
        algebra = make_dual_numbers(S.prime, S.precision)
    if algebra != make_dual_numbers(algebra.prime, algebra.precision):
        raise AlgebraMismatchError("Infinitesimal solutions are computed for the dual numbers only.")
    if algebra.prime != S.prime:
        raise AlgebraMismatchError(f"Algebra over Q_{algebra.prime} for a system over Q_{S.prime}.")
    return InfinitesimalPoints(S, tangent_space(S, base), algebra)


@dataclass
class HenselStep:
    iteration: int
    point: List[PadicNumber]
    residual_valuation: float
    residual_valuations: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "point": [_literal(x) for x in self.point],
            "residual_valuation": _valuation_literal(self.residual_valuation),
        }


def hensel_iterates(S: DiophantineSystem, seed: Sequence[Scalar]) -> Iterator[HenselStep]:
    """Runs Newton's iteration x <- x - J(x)^{-1} f(x) from `seed`, yielding every iterate with its residual.

    The residual valuation at least doubles from one step to the next; the generator stops once it reaches N.

    Raises
    ------
    NotAnApproximateRootError
        If f(seed) is not 0 mod p.

    SingularJacobianError
        If J(seed) is not invertible mod p.

    """
    if S.m != S.nvars:
        raise ShapeError(f"Hensel lifting needs a square system, got {S.m} equations in {S.nvars} variables.")
    x = S.point(seed)
    report = evaluate_system(S, x)
    if report.min_valuation < 1:
        raise NotAnApproximateRootError(
            f"{[_literal(xi) for xi in x]} is not a root mod {S.prime}: residual valuations {report.valuations}."
        )
    if row_echelon(jacobian(S, x), 1).rank < S.nvars:
        raise SingularJacobianError(f"The Jacobian at {[_literal(xi) for xi in x]} is singular mod {S.prime}.")

    for iteration in range(S.MAX_NEWTON_ITERATIONS + 1):
        logger.debug("Newton step %d: residual valuation %s", iteration, report.min_valuation)
        yield HenselStep(iteration, x, report.min_valuation, report.valuations)
        if report.passed:
            return
        try:
            delta = solve(jacobian(S, x), report.values, S.precision)
        except np.linalg.LinAlgError as error:
            raise SingularJacobianError(f"The Jacobian became singular at step {iteration}.") from error
        x = [xi - di for xi, di in zip(x, delta)]
        report = evaluate_system(S, x)
    raise ConvergenceError(
        f"Newton's iteration did not reach precision {S.precision} in {S.MAX_NEWTON_ITERATIONS} steps."
    )


def hensel_lift(S: DiophantineSystem, seed: Sequence[Scalar]) -> List[PadicNumber]:
    """The root x* in Z_p^n with x* = seed mod p and f(x*) = 0 mod p^N."""
    steps = list(hensel_iterates(S, seed))
    logger.info("Hensel lift reached residual valuation %s in %d steps", steps[-1].residual_valuation, len(steps) - 1)
    return steps[-1].point


def tangent_residual(S: DiophantineSystem, x: Sequence[Scalar], v: Sequence[Scalar]) -> List[PadicNumber]:
    """J(x) v, for checking tangent vectors by hand."""
    return mat_vec(jacobian(S, x), S.point(v))
