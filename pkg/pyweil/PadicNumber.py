"""This module implements the PadicNumber class, an element of Q_p carried to a fixed number of significant base-p
digits, together with the arithmetic, norm and digit operations on it.

"""

from fractions import Fraction
from math import inf
from numbers import Rational
from typing import List, Optional, Union
from warnings import warn

from .padicfunctions import inverse_mod, is_prime, rational_reconstruction, split_valuation
from .scaling import DEFAULT_PRECISION, PRECISION_WARNING_FRACTION
from .utils import NotAPadicIntegerError, PrecisionExhaustedError, PrecisionWarning, PrimeMismatchError

__all__ = [
    "PadicNumber",
    "make_padic",
    "as_padic",
    "arith",
    "norm",
    "digit_expansion",
    "distance",
    "in_ball",
]

Scalar = Union["PadicNumber", int, Fraction]


class PadicNumber:
    def __init__(self, prime: int, valuation: Union[int, float], unit: int, precision: int = DEFAULT_PRECISION):
        """Creates the p-adic number p^valuation * unit, with the unit known mod p^precision.

        The unit is normalized on construction: factors of p are moved into the valuation before the unit is reduced
        mod p^precision, so only unit == 0 or valuation == math.inf produces the zero element, which is represented
        solely by valuation = math.inf.

        Parameters
        ----------
        prime : int
            The prime p.

        valuation : int or math.inf
            The exponent of p. math.inf marks zero.

        unit : int
            The unit mantissa. Only its residue mod p^precision is kept.

        precision : int
            The number N of significant base-p digits of the unit.

        """
        if not is_prime(prime):
            raise ValueError(f"{prime} is not a prime.")
        if precision < 1:
            raise ValueError(f"Precision must be at least one digit, got {precision}.")

        self.prime: int = prime
        self.precision: int = precision

        if valuation == inf or unit == 0:
            self.valuation = inf
            self.unit: int = 0
            return

        shift, unit = split_valuation(unit, prime)
        self.valuation: int = valuation + shift
        self.unit: int = unit % prime ** precision

    @classmethod
    def zero(cls, prime: int, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls(prime, inf, 0, precision)

    @classmethod
    def one(cls, prime: int, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls(prime, 0, 1, precision)

    @property
    def modulus(self) -> int:
        return self.prime ** self.precision

    def is_zero(self) -> bool:
        return self.valuation == inf

    def is_unit(self) -> bool:
        """True for elements of Z_p^x, i.e. numbers of norm exactly 1."""
        return self.valuation == 0

    def is_integral(self) -> bool:
        return self.valuation >= 0

    def truncate(self, precision: int) -> "PadicNumber":
        """Returns this number with at most `precision` significant digits."""
        if precision >= self.precision:
            return self
        return PadicNumber(self.prime, self.valuation, self.unit, precision)

    def inverse(self) -> "PadicNumber":
        if self.is_zero():
            raise ZeroDivisionError("The zero p-adic number has no inverse.")
        return PadicNumber(self.prime, -self.valuation, inverse_mod(self.unit, self.modulus), self.precision)

    def residue(self, digits: int) -> int:
        """Returns the integer representative of x mod p^digits in [0, p^digits).

        Parameters
        ----------
        digits : int
            The exponent k of the modulus p^k.

        Returns
        -------
        residue : int

        """
        if self.is_zero():
            return 0
        if self.valuation < 0:
            raise NotAPadicIntegerError(f"{self} has negative valuation and no residue mod {self.prime}^{digits}.")
        if digits > self.valuation + self.precision:
            raise PrecisionExhaustedError(
                f"Only {self.valuation + self.precision} digits of {self} are known, {digits} were requested."
            )
        modulus = self.prime ** digits
        return (self.unit * self.prime ** self.valuation) % modulus

    def to_fraction(self) -> Fraction:
        """Returns the simplest rational congruent to this number at its precision.

        When no small numerator/denominator pair exists, the result is p^valuation times the integer representative of
        the unit in [0, p^N).

        """
        if self.is_zero():
            return Fraction(0)
        rational = rational_reconstruction(self.unit, self.modulus)
        if rational is None:
            rational = Fraction(self.unit)
        return rational * Fraction(self.prime) ** self.valuation

    def agrees_with(self, other: Scalar, digits: int) -> bool:
        """True if self - other has valuation >= `digits`, i.e. the two agree mod p^digits."""
        difference = self - other
        return difference.valuation >= digits

    def digit_string(self) -> str:
        """Digit form "...d3 d2 d1 d0 (base p)" of a p-adic integer."""
        digits = " ".join(str(d) for d in reversed(digit_expansion(self)))
        return f"...{digits} (base {self.prime})"

    def _coerce(self, other) -> Optional["PadicNumber"]:
        if isinstance(other, PadicNumber):
            if other.prime != self.prime:
                raise PrimeMismatchError(f"Cannot combine elements of Q_{self.prime} and Q_{other.prime}.")
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return as_padic(other, self.prime, self.precision)
        return None

    def _add(self, other: "PadicNumber", strict: bool = False) -> "PadicNumber":
        p = self.prime
        precision = min(self.precision, other.precision)
        if self.is_zero():
            return other.truncate(precision)
        if other.is_zero():
            return self.truncate(precision)

        # Digits below p^absolute are known for both operands.
        v = min(self.valuation, other.valuation)
        absolute = min(self.valuation + self.precision, other.valuation + other.precision)
        total = (self.unit * p ** (self.valuation - v) + other.unit * p ** (other.valuation - v)) % p ** (absolute - v)

        if total == 0:
            if strict:
                raise PrecisionExhaustedError(
                    f"Sum of {self} and {other} is indistinguishable from zero at precision {precision}."
                )
            return PadicNumber.zero(p, precision)

        shift, unit = split_valuation(total, p)
        valuation = v + shift
        return PadicNumber(p, valuation, unit, min(absolute - valuation, precision))

    def _mul(self, other: "PadicNumber") -> "PadicNumber":
        precision = min(self.precision, other.precision)
        if self.is_zero() or other.is_zero():
            return PadicNumber.zero(self.prime, precision)
        return PadicNumber(self.prime, self.valuation + other.valuation, self.unit * other.unit, precision)

    def _div(self, other: "PadicNumber") -> "PadicNumber":
        if other.is_zero():
            raise ZeroDivisionError(f"Division of {self} by zero.")
        precision = min(self.precision, other.precision)
        if self.is_zero():
            return PadicNumber.zero(self.prime, precision)
        modulus = self.prime ** precision
        return PadicNumber(
            self.prime,
            self.valuation - other.valuation,
            self.unit * inverse_mod(other.unit % modulus, modulus),
            precision,
        )

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._add(other)

    __radd__ = __add__

    def __neg__(self) -> "PadicNumber":
        if self.is_zero():
            return self
        return PadicNumber(self.prime, self.valuation, -self.unit, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._add(-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other._add(-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._mul(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._div(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other._div(self)

    def __pow__(self, exponent: int) -> "PadicNumber":
        if exponent < 0:
            return self.inverse() ** -exponent
        result = PadicNumber.one(self.prime, self.precision)
        base = self
        while exponent:
            if exponent & 1:
                result = result._mul(base)
            base = base._mul(base)
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except PrimeMismatchError:
            return False
        if other is None:
            return NotImplemented
        if self.valuation != other.valuation:
            return False
        modulus = self.prime ** min(self.precision, other.precision)
        return (self.unit - other.unit) % modulus == 0

    def __hash__(self) -> int:
        return hash((self.prime, self.valuation))

    def __str__(self) -> str:
        if self.is_zero():
            return f"0 (mod {self.prime}^{self.precision})"
        return f"{self.prime}^{self.valuation} * {self.unit} (mod {self.prime}^{self.precision})"

    def __repr__(self) -> str:
        return (
            f"PadicNumber(prime={self.prime}, valuation={self.valuation}, unit={self.unit}, "
            f"precision={self.precision})"
        )


def make_padic(numerator: int, denominator: int, p: int, N: int = DEFAULT_PRECISION) -> PadicNumber:
    """Returns the image of numerator / denominator in Q_p with N significant digits.

    Parameters
    ----------
    numerator : int

    denominator : int
        Must be nonzero.

    p : int
        A prime.

    N : int
        The precision, at least 1.

    Returns
    -------
    x : PadicNumber
        valuation v_p(numerator) - v_p(denominator), unit the quotient of the prime-to-p parts mod p^N.

    """
    if denominator == 0:
        raise ZeroDivisionError(f"Denominator of {numerator}/{denominator} is zero.")
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime.")
    if N < 1:
        raise ValueError(f"Precision must be at least one digit, got {N}.")
    if numerator == 0:
        return PadicNumber.zero(p, N)

    num_valuation, num_unit = split_valuation(numerator, p)
    den_valuation, den_unit = split_valuation(denominator, p)
    modulus = p ** N
    return PadicNumber(p, num_valuation - den_valuation, num_unit * inverse_mod(den_unit % modulus, modulus), N)


def as_padic(value: Scalar, p: int, N: int = DEFAULT_PRECISION) -> PadicNumber:
    """Converts an int, a Fraction or a PadicNumber into a PadicNumber over Q_p."""
    if isinstance(value, PadicNumber):
        if value.prime != p:
            raise PrimeMismatchError(f"Expected an element of Q_{p}, got one of Q_{value.prime}.")
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not p-adic numbers.")
    if isinstance(value, int):
        return make_padic(value, 1, p, N)
    if isinstance(value, Rational):
        return make_padic(value.numerator, value.denominator, p, N)
    raise TypeError(f"Cannot interpret {value!r} as an element of Q_{p}.")


def arith(x: PadicNumber, y: PadicNumber, op: str, strict: bool = True) -> PadicNumber:
    """Applies one of add, sub, mul, div to x and y.

    With `strict`, a sum or difference that cancels every known digit raises PrecisionExhaustedError instead of
    returning zero, and a sum that loses more than half of its digits emits a PrecisionWarning.

    """
    if x.prime != y.prime:
        raise PrimeMismatchError(f"Cannot combine elements of Q_{x.prime} and Q_{y.prime}.")
    if op == "add":
        result = x._add(y, strict=strict)
    elif op == "sub":
        result = x._add(-y, strict=strict)
    elif op == "mul":
        return x._mul(y)
    elif op == "div":
        return x._div(y)
    else:
        raise ValueError(f"Unknown operation {op!r}; expected one of add, sub, mul, div.")

    available = min(x.precision, y.precision)
    if strict and not result.is_zero() and result.precision < available * (1 - PRECISION_WARNING_FRACTION):
        warn(
            f"Cancellation left {result.precision} of {available} significant digits in {op}({x}, {y}).",
            PrecisionWarning,
        )
    return result


def norm(x: PadicNumber) -> Fraction:
    """The p-adic absolute value |x|_p = p^{-v}, with |0|_p = 0."""
    if x.is_zero():
        return Fraction(0)
    return Fraction(x.prime) ** -x.valuation


def digit_expansion(x: PadicNumber) -> List[int]:
    """Returns the digits a_0, ..., a_{N-1} in {0, ..., p-1} with sum a_i p^i = x mod p^N.

    Parameters
    ----------
    x : PadicNumber
        A p-adic integer.

    Returns
    -------
    digits : list of int
        N digits, least significant first.

    """
    if x.is_zero():
        return [0] * x.precision
    if x.valuation < 0:
        raise NotAPadicIntegerError(f"{x} has negative valuation and is not in Z_{x.prime}.")

    value = (x.unit * x.prime ** x.valuation) % x.modulus
    digits = []
    for _ in range(x.precision):
        value, digit = divmod(value, x.prime)
        digits.append(digit)
    return digits


def distance(x: PadicNumber, y: PadicNumber) -> Fraction:
    return norm(x - y)


def in_ball(x: PadicNumber, center: PadicNumber, radius: Fraction, closed: bool = True) -> bool:
    """Membership of x in the closed (or open) ball of the given radius about center."""
    d = distance(x, center)
    return d <= radius if closed else d < radius
