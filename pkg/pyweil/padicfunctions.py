"""This module contains the integer number-theoretic kernels used by PadicNumber and the series code: primality,
valuations of integers and factorials, modular inverses and rational reconstruction.

"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, inf, isqrt
from typing import Optional, Tuple

from numba import jit, boolean, int64

__all__ = [
    "is_prime",
    "int_valuation",
    "split_valuation",
    "factorial_valuation",
    "factorial_unit",
    "inverse_mod",
    "rational_reconstruction",
]

# Largest magnitude handed to the int64 kernels.
_MACHINE_LIMIT = 2 ** 62


@jit([boolean(int64)], nopython=True)
def _is_prime(n: int) -> bool:
    """Trial division primality test for machine integers."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@jit([int64(int64, int64)], nopython=True)
def _int_valuation(n: int, p: int) -> int:
    """Exponent of p in the nonzero machine integer n."""
    if n < 0:
        n = -n
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@jit([int64(int64, int64)], nopython=True)
def _digit_sum(n: int, p: int) -> int:
    """Sum of the base-p digits of n >= 0."""
    s = 0
    while n > 0:
        s += n % p
        n //= p
    return s


@jit([int64(int64, int64)], nopython=True)
def _factorial_valuation(n: int, p: int) -> int:
    """Legendre's formula, v_p(n!) = (n - s_p(n)) / (p - 1).

    Parameters
    ----------
    n : int
        A nonnegative machine integer.

    p : int
        A prime.

    Returns
    -------
    v : int
        The exponent of p in n!.

    """
    return (n - _digit_sum(n, p)) // (p - 1)


@lru_cache(maxsize=256)
def is_prime(p: int) -> bool:
    if p >= _MACHINE_LIMIT:
        raise ValueError(f"Primes beyond {_MACHINE_LIMIT} are not supported, got {p}.")
    return bool(_is_prime(p))


def int_valuation(n: int, p: int) -> float:
    """Returns v_p(n) for any Python integer, with math.inf for n = 0."""
    if n == 0:
        return inf
    if -_MACHINE_LIMIT < n < _MACHINE_LIMIT:
        return int(_int_valuation(n, p))
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def split_valuation(n: int, p: int) -> Tuple[int, int]:
    """Writes the nonzero integer n as p^v * u with p not dividing u and returns (v, u)."""
    v = int_valuation(n, p)
    return v, n // p ** v


def factorial_valuation(n: int, p: int) -> int:
    if n < 0:
        raise ValueError(f"Factorials of negative integers are undefined, got {n}.")
    if n < _MACHINE_LIMIT:
        return int(_factorial_valuation(n, p))
    v = 0
    while n:
        n //= p
        v += n
    return v


def factorial_unit(n: int, p: int, modulus: int) -> int:
    """Returns n! / p^{v_p(n!)} reduced mod `modulus`, without forming n! itself."""
    u = 1
    for k in range(2, n + 1):
        _, unit = split_valuation(k, p)
        u = (u * unit) % modulus
    return u


def inverse_mod(a: int, modulus: int) -> int:
    """Inverse of a modulo `modulus`; a must be coprime to it."""
    return pow(a, -1, modulus)


def rational_reconstruction(u: int, modulus: int) -> Optional[Fraction]:
    """Finds the fraction a/b with |a|, |b| <= sqrt(modulus / 2) and a = b*u mod `modulus`, if there is one.

    Parameters
    ----------
    u : int
        A residue mod `modulus`.

    modulus : int

    Returns
    -------
    fraction : Fraction or None
        The reconstructed fraction, or None when no small enough numerator/denominator pair exists.

    References
    ----------
    Wang's half-extended Euclidean algorithm.

    """
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, u % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(s1, modulus) != 1:
        return None
    return Fraction(r1, s1)
