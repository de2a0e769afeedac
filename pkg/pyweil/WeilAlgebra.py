"""This module implements finite-dimensional Weil algebras A = Q_p + I over Q_p, presented by structure constants,
and their elements.

"""

from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from .PadicNumber import PadicNumber, Scalar, as_padic, norm
from .linalg import span_basis
from .scaling import DEFAULT_PRECISION
from .utils import (
    AlgebraMismatchError,
    AssociativityError,
    CommutativityError,
    NilpotencyError,
    ShapeError,
    UnitLawError,
)

__all__ = [
    "WeilAlgebra",
    "WeilElement",
    "build_algebra",
    "make_dual_numbers",
    "make_jet_algebra",
    "mul_elements",
    "project",
    "norm_A",
]

StructureConstants = Union[Sequence[Sequence[Sequence[Scalar]]], Mapping[Tuple[int, int, int], Scalar]]


class WeilAlgebra:
    def __init__(
        self,
        prime: int,
        precision: int,
        dim: int,
        structure_constants: StructureConstants,
        labels: Optional[Sequence[str]] = None,
    ):
        """Creates and validates the algebra with basis alpha_1 = 1, alpha_2, ..., alpha_l and products
        alpha_i alpha_j = sum_k c[i][j][k] alpha_k.

        Validation is eager: the unit law, commutativity and associativity are checked mod p^N, and the span of
        alpha_2, ..., alpha_l must be an ideal whose powers reach zero.

        Parameters
        ----------
        prime : int

        precision : int
            The working precision N.

        dim : int
            The dimension l >= 1.

        structure_constants : l x l x l nested sequence, or mapping
            Either the full tensor, 0-based, or a mapping from 1-based index triples (i, j, k) to values, with omitted
            entries zero.

        labels : sequence of str, optional
            Display names of the basis elements.

        """
        if dim < 1:
            raise ShapeError(f"A Weil algebra has dimension at least 1, got {dim}.")

        self.prime = prime
        self.precision = precision
        self.dim = dim
        self.structure_constants = self._tensor(structure_constants)
        if labels is None:
            labels = ["1"] + [f"α_{j}" for j in range(2, dim + 1)]
        if len(labels) != dim:
            raise ShapeError(f"Expected {dim} basis labels, got {len(labels)}.")
        self.labels = tuple(labels)

        # Nonzero entries, so that products only visit the support of the multiplication table.
        self._products = [
            (i, j, k, c)
            for i, plane in enumerate(self.structure_constants)
            for j, row in enumerate(plane)
            for k, c in enumerate(row)
            if not c.is_zero()
        ]

        self._check_unit_law()
        self._check_commutativity()
        self._check_associativity()
        self.nilpotency_index = self._find_nilpotency_index()

    def _tensor(self, constants: StructureConstants) -> Tuple:
        l, p, N = self.dim, self.prime, self.precision
        zero = PadicNumber.zero(p, N)
        if isinstance(constants, Mapping):
            tensor = [[[zero] * l for _ in range(l)] for _ in range(l)]
            for (i, j, k), value in constants.items():
                if not all(1 <= index <= l for index in (i, j, k)):
                    raise ShapeError(f"Structure constant index ({i}, {j}, {k}) is outside 1..{l}.")
                tensor[i - 1][j - 1][k - 1] = as_padic(value, p, N)
        else:
            ragged = any(len(plane) != l or any(len(row) != l for row in plane) for plane in constants)
            if len(constants) != l or ragged:
                raise ShapeError(f"Structure constants must form an {l} x {l} x {l} tensor.")
            tensor = [[[as_padic(c, p, N) for c in row] for row in plane] for plane in constants]
        return tuple(tuple(tuple(row) for row in plane) for plane in tensor)

    def _vanishes(self, x: PadicNumber) -> bool:
        return x.valuation >= self.precision

    def _check_unit_law(self):
        c = self.structure_constants
        for j in range(self.dim):
            for k in range(self.dim):
                delta = 1 if j == k else 0
                if not self._vanishes(c[0][j][k] - delta):
                    raise UnitLawError(
                        f"alpha_1 * alpha_{j + 1} has alpha_{k + 1}-coefficient {c[0][j][k]}.", (1, j + 1, k + 1)
                    )
                if not self._vanishes(c[j][0][k] - delta):
                    raise UnitLawError(
                        f"alpha_{j + 1} * alpha_1 has alpha_{k + 1}-coefficient {c[j][0][k]}.", (j + 1, 1, k + 1)
                    )

    def _check_commutativity(self):
        c = self.structure_constants
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    if not self._vanishes(c[i][j][k] - c[j][i][k]):
                        raise CommutativityError(
                            f"c[{i + 1}][{j + 1}][{k + 1}] != c[{j + 1}][{i + 1}][{k + 1}].", (i + 1, j + 1, k + 1)
                        )

    def _check_associativity(self):
        c, l = self.structure_constants, self.dim
        for i in range(l):
            for j in range(l):
                for k in range(l):
                    # (alpha_i alpha_j) alpha_k against alpha_i (alpha_j alpha_k), coordinate by coordinate.
                    left = self._multiply(c[i][j], self._basis_vector(k))
                    right = self._multiply(self._basis_vector(i), c[j][k])
                    for r in range(l):
                        if not self._vanishes(left[r] - right[r]):
                            raise AssociativityError(
                                f"(alpha_{i + 1} alpha_{j + 1}) alpha_{k + 1} and alpha_{i + 1} (alpha_{j + 1} "
                                f"alpha_{k + 1}) differ in coordinate {r + 1}.",
                                (i + 1, j + 1, k + 1, r + 1),
                            )

    def _find_nilpotency_index(self) -> int:
        l = self.dim
        c = self.structure_constants
        for i in range(1, l):
            for j in range(1, l):
                if not self._vanishes(c[i][j][0]):
                    raise NilpotencyError(
                        f"alpha_{i + 1} * alpha_{j + 1} leaves span(alpha_2, ..., alpha_{l}).", (i + 1, j + 1)
                    )

        ideal = [self._basis_vector(j) for j in range(1, l)]
        power = span_basis(ideal, self.precision)
        index = 1
        while power:
            if index >= l:
                raise NilpotencyError(
                    f"The ideal span(alpha_2, ..., alpha_{l}) is not nilpotent; its {index}-th power is nonzero.",
                    self._nonzero_ideal_product(),
                )
            products = [self._multiply(v, w) for v in power for w in ideal]
            power = span_basis(products, self.precision)
            index += 1
        return index

    def _nonzero_ideal_product(self) -> Tuple[int, int]:
        for i, j, _, c in self._products:
            if i > 0 and j > 0 and not self._vanishes(c):
                return i + 1, j + 1
        return ()

    def _basis_vector(self, j: int) -> List[PadicNumber]:
        zero = PadicNumber.zero(self.prime, self.precision)
        vector = [zero] * self.dim
        vector[j] = PadicNumber.one(self.prime, self.precision)
        return vector

    def _multiply(self, a: Sequence[PadicNumber], b: Sequence[PadicNumber]) -> List[PadicNumber]:
        result = [PadicNumber.zero(self.prime, self.precision)] * self.dim
        for i, j, k, c in self._products:
            if a[i].is_zero() or b[j].is_zero():
                continue
            result[k] = result[k] + c * a[i] * b[j]
        return result

    def element(self, coeffs: Sequence[Scalar]) -> "WeilElement":
        return WeilElement(self, coeffs)

    def zero(self) -> "WeilElement":
        return WeilElement(self, [0] * self.dim)

    def one(self) -> "WeilElement":
        return self.scalar(1)

    def scalar(self, value: Scalar) -> "WeilElement":
        """The element value * alpha_1."""
        return WeilElement(self, [value] + [0] * (self.dim - 1))

    def basis(self, j: int) -> "WeilElement":
        """The basis element alpha_j, 1-based."""
        if not 1 <= j <= self.dim:
            raise IndexError(f"Basis index {j} is outside 1..{self.dim}.")
        return WeilElement(self, self._basis_vector(j - 1))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, WeilAlgebra):
            return NotImplemented
        return (
            self.prime == other.prime
            and self.precision == other.precision
            and self.dim == other.dim
            and self.structure_constants == other.structure_constants
        )

    def __hash__(self) -> int:
        return hash((self.prime, self.precision, self.dim))

    def __repr__(self) -> str:
        return (
            f"WeilAlgebra(prime={self.prime}, precision={self.precision}, dim={self.dim}, "
            f"nilpotency_index={self.nilpotency_index}, basis={list(self.labels)})"
        )


class WeilElement:
    def __init__(self, algebra: WeilAlgebra, coeffs: Sequence[Scalar]):
        """An element sum_j coeffs[j] alpha_j of `algebra`."""
        if len(coeffs) != algebra.dim:
            raise ShapeError(f"Expected {algebra.dim} coefficients, got {len(coeffs)}.")
        self.algebra = algebra
        self.coeffs: Tuple[PadicNumber, ...] = tuple(as_padic(c, algebra.prime, algebra.precision) for c in coeffs)

    def _coerce(self, other) -> Optional["WeilElement"]:
        if isinstance(other, WeilElement):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise AlgebraMismatchError(f"Cannot combine elements of {self.algebra} and {other.algebra}.")
            return other
        if isinstance(other, (PadicNumber, int, Fraction)) and not isinstance(other, bool):
            return self.algebra.scalar(other)
        return None

    def project(self) -> PadicNumber:
        return self.coeffs[0]

    def norm_A(self) -> Fraction:
        return max(norm(c) for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def nilpotent_part(self) -> "WeilElement":
        return WeilElement(self.algebra, [0] + list(self.coeffs[1:]))

    def scale(self, factor: Scalar) -> "WeilElement":
        return WeilElement(self.algebra, [factor * c for c in self.coeffs])

    def inverse(self) -> "WeilElement":
        """Inverts a + n, with a = project(self) nonzero, as a^{-1} sum_k (-n/a)^k; the sum is finite because n is
        nilpotent.

        """
        base = self.project()
        if base.is_zero():
            raise ZeroDivisionError(f"{self} projects to zero and is nilpotent, not invertible.")
        base_inverse = base.inverse()
        step = -(self.nilpotent_part().scale(base_inverse))
        term = self.algebra.one()
        total = term
        for _ in range(self.algebra.nilpotency_index - 1):
            term = term * step
            total = total + term
        return total.scale(base_inverse)

    def agrees_with(self, other, digits: int) -> bool:
        other = self._coerce(other)
        return all(a.agrees_with(b, digits) for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return WeilElement(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "WeilElement":
        return WeilElement(self.algebra, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return WeilElement(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (PadicNumber, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return WeilElement(self.algebra, self.algebra._multiply(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (PadicNumber, int, Fraction)) and not isinstance(other, bool):
            return self.scale(1 / as_padic(other, self.algebra.prime, self.algebra.precision))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "WeilElement":
        if exponent < 0:
            return self.inverse() ** -exponent
        result = self.algebra.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except AlgebraMismatchError:
            return False
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.algebra, self.coeffs[0]))

    def __str__(self) -> str:
        head = str(self.coeffs[0].to_fraction())
        tail = [f"{c.to_fraction()}{label}" for c, label in zip(self.coeffs[1:], self.algebra.labels[1:])]
        return " + ".join([head] + tail)

    def __repr__(self) -> str:
        return f"WeilElement({self})"


def build_algebra(p: int, N: int, l: int, structure_constants: StructureConstants) -> WeilAlgebra:
    """Builds and validates a Weil algebra of dimension l over Q_p at precision N from its structure constants."""
    return WeilAlgebra(p, N, l, structure_constants)


def make_jet_algebra(p: int, N: int = DEFAULT_PRECISION, k: int = 1) -> WeilAlgebra:
    """The truncated polynomial ring Q_p[eps]/(eps^{k+1}), with basis 1, eps, ..., eps^k.

    Parameters
    ----------
    p : int

    N : int

    k : int
        The jet order, at least 1.

    Returns
    -------
    algebra : WeilAlgebra
        Dimension k + 1, nilpotency index k + 1.

    """
    if k < 1:
        raise ValueError(f"Jet order must be at least 1, got {k}.")
    constants = {(a + 1, b + 1, a + b + 1): 1 for a in range(k + 1) for b in range(k + 1) if a + b <= k}
    labels = ["1", "ε"] + [f"ε^{a}" for a in range(2, k + 1)]
    return WeilAlgebra(p, N, k + 1, constants, labels)


def make_dual_numbers(p: int, N: int = DEFAULT_PRECISION) -> WeilAlgebra:
    return make_jet_algebra(p, N, 1)


def mul_elements(a: WeilElement, b: WeilElement) -> WeilElement:
    """Product with coefficients sum_{i,j} a_i b_j c[i][j][k]."""
    if not isinstance(b, WeilElement) or not isinstance(a, WeilElement):
        raise TypeError("mul_elements multiplies two WeilElements.")
    return a * b


def project(a: WeilElement) -> PadicNumber:
    """The projection pr: A -> Q_p, reading off the coefficient of alpha_1."""
    return a.project()


def norm_A(a: WeilElement) -> Fraction:
    """max_j |a_j|_p."""
    return a.norm_A()
