"""This module implements the PowerSeries class: sparse multivariate power series over Q_p about a center, known up to
a total-degree cap.

Coefficients beyond `trunc_degree` are unknown unless the series is flagged `polynomial`, in which case they are
exactly zero. Every operation keeps its result exact up to the largest degree its inputs determine, so equality of
series is literal coefficient equality.

"""

from fractions import Fraction
from math import inf
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .PadicNumber import PadicNumber, Scalar, as_padic
from .scaling import DEFAULT_PRECISION
from .utils import PrimeMismatchError, ShapeError

__all__ = ["PowerSeries", "MultiIndex"]

MultiIndex = Tuple[int, ...]


class PowerSeries:
    def __init__(
        self,
        prime: int,
        precision: int,
        nvars: int,
        terms: Mapping[MultiIndex, Scalar],
        trunc_degree: int,
        center: Optional[Sequence[Scalar]] = None,
        polynomial: bool = False,
    ):
        """Creates the series f(y) = sum_m a_m prod_i (y_i - c_i)^{m_i}.

        Parameters
        ----------
        prime : int

        precision : int

        nvars : int
            The number n of variables.

        terms : mapping
            Multi-index (m_1, ..., m_n) to coefficient a_m. Zero coefficients are dropped, as are multi-indices of total
            degree above `trunc_degree` unless the series is a polynomial.

        trunc_degree : int
            The total degree D up to which coefficients are known.

        center : sequence, optional
            The center (c_1, ..., c_n). Defaults to the origin.

        polynomial : bool
            Marks the coefficients beyond `trunc_degree` as exactly zero. For polynomials, `trunc_degree` is raised to
            the total degree if necessary.

        """
        if nvars < 1:
            raise ShapeError(f"A power series needs at least one variable, got {nvars}.")
        if trunc_degree < 0:
            raise ShapeError(f"Truncation degree must be nonnegative, got {trunc_degree}.")

        self.prime = prime
        self.precision = precision
        self.nvars = nvars
        self.polynomial = polynomial

        if center is None:
            center = [0] * nvars
        if len(center) != nvars:
            raise ShapeError(f"Center has {len(center)} coordinates, expected {nvars}.")
        self.center: Tuple[PadicNumber, ...] = tuple(as_padic(c, prime, precision) for c in center)

        clean: Dict[MultiIndex, PadicNumber] = {}
        top = 0
        for exponents, coeff in terms.items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != nvars or any(e < 0 for e in exponents):
                raise ShapeError(f"Multi-index {exponents} does not fit {nvars} variables.")
            coeff = as_padic(coeff, prime, precision)
            if coeff.is_zero():
                continue
            degree = sum(exponents)
            if degree > trunc_degree and not polynomial:
                continue
            clean[exponents] = coeff
            top = max(top, degree)

        self.terms: Dict[MultiIndex, PadicNumber] = clean
        self.trunc_degree = max(trunc_degree, top) if polynomial else trunc_degree

    @classmethod
    def constant(
        cls, value: Scalar, nvars: int, prime: int, precision: int = DEFAULT_PRECISION, center=None
    ) -> "PowerSeries":
        return cls(prime, precision, nvars, {(0,) * nvars: value}, 0, center, polynomial=True)

    @classmethod
    def variable(
        cls, i: int, nvars: int, prime: int, precision: int = DEFAULT_PRECISION, center=None
    ) -> "PowerSeries":
        """The coordinate function y_i (1-based), written about the center as c_i + (y_i - c_i)."""
        if not 1 <= i <= nvars:
            raise ShapeError(f"Variable index {i} is outside 1..{nvars}.")
        series = cls(prime, precision, nvars, {}, 1, center, polynomial=True)
        unit = [0] * nvars
        unit[i - 1] = 1
        terms = {tuple(unit): 1, (0,) * nvars: series.center[i - 1]}
        return cls(prime, precision, nvars, terms, 1, center, polynomial=True)

    @classmethod
    def from_coefficients(
        cls,
        coeffs: Sequence[Scalar],
        prime: int,
        precision: int = DEFAULT_PRECISION,
        center: Scalar = 0,
        trunc_degree: Optional[int] = None,
        polynomial: bool = False,
    ) -> "PowerSeries":
        """The univariate series sum_n coeffs[n] (y - center)^n, truncated at len(coeffs) - 1 by default."""
        if trunc_degree is None:
            trunc_degree = len(coeffs) - 1
        terms = {(n,): c for n, c in enumerate(coeffs)}
        return cls(prime, precision, 1, terms, trunc_degree, [center], polynomial)

    def _like(self, terms, trunc_degree, polynomial, nvars=None, center=None) -> "PowerSeries":
        return PowerSeries(
            self.prime,
            self.precision,
            self.nvars if nvars is None else nvars,
            terms,
            trunc_degree,
            self.center if center is None else center,
            polynomial,
        )

    def degree(self) -> int:
        """Largest total degree among the stored terms, -1 for the zero series."""
        return max((sum(m) for m in self.terms), default=-1)

    def order(self) -> float:
        """Smallest total degree among the stored terms, math.inf for the zero series."""
        return min((sum(m) for m in self.terms), default=inf)

    def coefficient(self, exponents: Iterable[int]) -> PadicNumber:
        return self.terms.get(tuple(exponents), PadicNumber.zero(self.prime, self.precision))

    def constant_term(self) -> PadicNumber:
        return self.coefficient((0,) * self.nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "PowerSeries"):
        if other.prime != self.prime:
            raise PrimeMismatchError(f"Cannot combine series over Q_{self.prime} and Q_{other.prime}.")
        if other.nvars != self.nvars:
            raise ShapeError(f"Cannot combine series in {self.nvars} and {other.nvars} variables.")
        if other.center != self.center:
            raise ShapeError("Cannot combine series expanded about different centers.")

    def _coerce(self, other) -> Optional["PowerSeries"]:
        if isinstance(other, PowerSeries):
            self._check_compatible(other)
            return other
        if isinstance(other, (PadicNumber, int, Fraction)) and not isinstance(other, bool):
            return PowerSeries.constant(other, self.nvars, self.prime, self.precision, self.center)
        return None

    def _sum_degree(self, other: "PowerSeries") -> Tuple[int, bool]:
        if self.polynomial and other.polynomial:
            return max(self.trunc_degree, other.trunc_degree), True
        caps = [s.trunc_degree for s in (self, other) if not s.polynomial]
        return min(caps), False

    def _product_degree(self, other: "PowerSeries") -> Tuple[int, bool]:
        if self.polynomial and other.polynomial:
            return self.trunc_degree + other.trunc_degree, True
        caps = [s.trunc_degree for s in (self, other) if not s.polynomial]
        return min(caps), False

    @staticmethod
    def _multiply_terms(a: Mapping, b: Mapping, cap: float) -> Dict[MultiIndex, PadicNumber]:
        product: Dict[MultiIndex, PadicNumber] = {}
        b_items = [(m, sum(m), c) for m, c in b.items()]
        for ma, ca in a.items():
            da = sum(ma)
            for mb, db, cb in b_items:
                if da + db > cap:
                    continue
                m = tuple(x + y for x, y in zip(ma, mb))
                term = ca * cb
                product[m] = product[m] + term if m in product else term
        return product

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        degree, polynomial = self._sum_degree(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return self._like(terms, degree, polynomial)

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return self._like({m: -c for m, c in self.terms.items()}, self.trunc_degree, self.polynomial)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (PadicNumber, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        degree, polynomial = self._product_degree(other)
        return self._like(self._multiply_terms(self.terms, other.terms, degree), degree, polynomial)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (PadicNumber, int, Fraction)) and not isinstance(other, bool):
            return self.scale(1 / as_padic(other, self.prime, self.precision))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal(self.trunc_degree)

    def __pow__(self, exponent: int) -> "PowerSeries":
        if exponent < 0:
            return self.reciprocal() ** -exponent
        result = PowerSeries.constant(1, self.nvars, self.prime, self.precision, self.center)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor: Scalar) -> "PowerSeries":
        factor = as_padic(factor, self.prime, self.precision)
        return self._like({m: factor * c for m, c in self.terms.items()}, self.trunc_degree, self.polynomial)

    def truncate(self, degree: int) -> "PowerSeries":
        """Forgets every coefficient above `degree`; the result is no longer a polynomial unless nothing was cut."""
        polynomial = self.polynomial and self.degree() <= degree
        degree = min(degree, self.trunc_degree) if not polynomial else degree
        kept = {m: c for m, c in self.terms.items() if sum(m) <= degree}
        return self._like(kept, degree, polynomial)

    def derivative(self, i: int) -> "PowerSeries":
        """D_i f, with coefficients (m_i + 1) a_{m + e_i}; the truncation degree drops by one."""
        if not 1 <= i <= self.nvars:
            raise ShapeError(f"Variable index {i} is outside 1..{self.nvars}.")
        k = i - 1
        terms = {}
        for m, c in self.terms.items():
            if m[k] == 0:
                continue
            shifted = m[:k] + (m[k] - 1,) + m[k + 1 :]
            terms[shifted] = m[k] * c
        return self._like(terms, max(self.trunc_degree - 1, 0), self.polynomial)

    def restrict_to_center(self, i: int) -> "PowerSeries":
        """Fixes variable i (1-based) at its center coordinate and drops it from the series."""
        if self.nvars < 2:
            raise ShapeError("Cannot drop the only variable of a series.")
        k = i - 1
        terms = {m[:k] + m[k + 1 :]: c for m, c in self.terms.items() if m[k] == 0}
        center = self.center[:k] + self.center[k + 1 :]
        return self._like(terms, self.trunc_degree, self.polynomial, self.nvars - 1, center)

    def embed(self, nvars: int, positions: Sequence[int], center: Optional[Sequence[Scalar]] = None) -> "PowerSeries":
        """Views the series as one in `nvars` variables, its variable k becoming variable positions[k] (1-based).

        `center` is the full center in the larger space; by default the new coordinates are centered at 0.
        """
        if len(positions) != self.nvars:
            raise ShapeError(f"Expected {self.nvars} positions, got {len(positions)}.")
        if center is None:
            center = [0] * nvars
            for k, position in enumerate(positions):
                center[position - 1] = self.center[k]
        terms = {}
        for m, c in self.terms.items():
            exponents = [0] * nvars
            for k, position in enumerate(positions):
                exponents[position - 1] = m[k]
            terms[tuple(exponents)] = c
        return self._like(terms, self.trunc_degree, self.polynomial, nvars, center)

    def substitute(self, values: Sequence) -> object:
        """Sums a_m prod_i (v_i - c_i)^{m_i} over the stored terms, with the v_i in any ring that mixes with
        PadicNumber scalars (PadicNumber itself, or WeilElement).

        No convergence check is made here.
        """
        if len(values) != self.nvars:
            raise ShapeError(f"Expected {self.nvars} arguments, got {len(values)}.")
        shifts = [v - c for v, c in zip(values, self.center)]
        zero = shifts[0] * 0

        top = [max((m[k] for m in self.terms), default=0) for k in range(self.nvars)]
        powers = []
        for shift, highest in zip(shifts, top):
            cache = [zero + 1]
            for _ in range(highest):
                cache.append(cache[-1] * shift)
            powers.append(cache)

        total = zero
        for m, c in self.terms.items():
            term = None
            for k, e in enumerate(m):
                if e:
                    term = powers[k][e] if term is None else term * powers[k][e]
            total = total + (c * (zero + 1) if term is None else c * term)
        return total

    def compose(self, inner: Sequence["PowerSeries"]) -> "PowerSeries":
        """Returns f(g_1, ..., g_n).

        The inner series share their variables and center. Unless f is a polynomial, each g_i must take the value c_i
        (the center of f) at its own center, so that only finitely many terms of f contribute to each degree.

        """
        if len(inner) != self.nvars:
            raise ShapeError(f"Expected {self.nvars} inner series, got {len(inner)}.")
        first = inner[0]
        for g in inner[1:]:
            first._check_compatible(g)
        if first.prime != self.prime:
            raise PrimeMismatchError(f"Cannot compose series over Q_{self.prime} and Q_{first.prime}.")

        shifts = [g - c for g, c in zip(inner, self.center)]
        if not self.polynomial:
            for i, h in enumerate(shifts):
                if h.constant_term().valuation < h.precision:
                    raise ValueError(
                        f"Inner series {i + 1} does not map its center to the center of the outer series; the "
                        f"composition of a truncated series is undetermined."
                    )
            shifts = [h - h.constant_term() for h in shifts]

        caps = [g.trunc_degree for g in inner if not g.polynomial]
        if self.polynomial and not caps:
            degree = max(self.degree(), 0) * max(max(g.trunc_degree for g in inner), 1)
            polynomial = True
        else:
            degree = min(caps + ([] if self.polynomial else [self.trunc_degree]))
            polynomial = False

        top = [max((m[k] for m in self.terms), default=0) for k in range(self.nvars)]
        one = {(0,) * first.nvars: PadicNumber.one(self.prime, self.precision)}
        powers = []
        for h, highest in zip(shifts, top):
            cache = [one]
            for _ in range(highest):
                cache.append(self._multiply_terms(cache[-1], h.terms, degree))
            powers.append(cache)

        total: Dict[MultiIndex, PadicNumber] = {}
        for m, c in self.terms.items():
            if not polynomial and sum(m) > degree:
                continue
            product = one
            for k, e in enumerate(m):
                if e:
                    product = self._multiply_terms(product, powers[k][e], degree)
            for mm, cc in product.items():
                term = c * cc
                total[mm] = total[mm] + term if mm in total else term
        return PowerSeries(self.prime, self.precision, first.nvars, total, degree, first.center, polynomial)

    def reciprocal(self, degree: Optional[int] = None) -> "PowerSeries":
        """Returns 1/f to total degree `degree` (by default the truncation degree of f).

        f must have a nonzero constant term a_0; 1/f = a_0^{-1} sum_k (-h)^k with h = f/a_0 - 1.
        """
        a0 = self.constant_term()
        if a0.is_zero():
            raise ZeroDivisionError("A power series without constant term has no reciprocal.")
        if degree is None:
            degree = self.trunc_degree
        if not self.polynomial:
            degree = min(degree, self.trunc_degree)

        inverse = a0.inverse()
        h = {m: -(c * inverse) for m, c in self.terms.items() if any(m)}
        one = {(0,) * self.nvars: PadicNumber.one(self.prime, self.precision)}
        total = dict(one)
        power = one
        for _ in range(degree):
            power = self._multiply_terms(power, h, degree)
            if not power:
                break
            for m, c in power.items():
                total[m] = total[m] + c if m in total else c
        return self._like({m: c * inverse for m, c in total.items()}, degree, False)

    def permute(self, order: Sequence[int]) -> "PowerSeries":
        """Reorders the variables: variable k of the result is variable order[k] (1-based) of this series."""
        if sorted(order) != list(range(1, self.nvars + 1)):
            raise ShapeError(f"{order} is not a permutation of 1..{self.nvars}.")
        terms = {tuple(m[j - 1] for j in order): c for m, c in self.terms.items()}
        center = [self.center[j - 1] for j in order]
        return self._like(terms, self.trunc_degree, self.polynomial, center=center)

    def agrees_with(self, other: "PowerSeries", degree: Optional[int] = None, digits: Optional[int] = None) -> bool:
        """True if all coefficients of total degree <= `degree` agree mod p^digits.

        `degree` defaults to the smaller truncation degree, `digits` to the smaller precision.
        """
        self._check_compatible(other)
        if degree is None:
            degree = min(self.trunc_degree, other.trunc_degree)
        if digits is None:
            digits = min(self.precision, other.precision)
        for m in set(self.terms) | set(other.terms):
            if sum(m) <= degree and not self.coefficient(m).agrees_with(other.coefficient(m), digits):
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return (
            self.prime == other.prime
            and self.nvars == other.nvars
            and self.center == other.center
            and self.trunc_degree == other.trunc_degree
            and self.polynomial == other.polynomial
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self) -> str:
        shown = ", ".join(f"{m}: {c.to_fraction()}" for m, c in sorted(self.terms.items()))
        kind = "polynomial" if self.polynomial else f"O(deg {self.trunc_degree + 1})"
        return f"PowerSeries(Q_{self.prime}, nvars={self.nvars}, {{{shown}}}, {kind})"
