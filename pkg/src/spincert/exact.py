"""Exact rational arithmetic and the small number-theory toolkit.

Everything here works over arbitrary-precision integers and
``fractions.Fraction``; no floating point is used anywhere in the
package.  ``ExactRational`` is an alias for ``Fraction``, which already
maintains the canonical form we need (lowest terms, positive
denominator).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, isqrt
from typing import List, Set, Tuple

ExactRational = Fraction

__all__ = [
    "ExactRational",
    "INFINITE_VALUATION",
    "nu2",
    "nu2_or_infinite",
    "nu2_factorial",
    "is_dyadic",
    "bernoulli",
    "bernoulli_table",
    "alpha",
    "quadratic_residues",
    "is_quadratic_residue",
    "four_squares",
    "odd_part",
]


class _InfiniteValuation:
    """Marker for the 2-adic valuation of zero.

    Deliberately not an integer and never comparing equal to one, so
    callers must branch on it explicitly.
    """

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITE_VALUATION"


INFINITE_VALUATION = _InfiniteValuation()


def _nu2_int(n: int) -> int:
    # n odd after stripping trailing zero bits
    if n == 0:
        raise ZeroDivisionError("2-adic valuation of zero is infinite")
    n = abs(n)
    return (n & -n).bit_length() - 1


def nu2(r: int | Fraction) -> int:
    """2-adic valuation of a nonzero rational.

    nu2(a/b) = nu2(a) - nu2(b).  Raises ``ZeroDivisionError`` on zero;
    use :func:`nu2_or_infinite` if the infinite value is wanted instead.
    """
    r = Fraction(r)
    if r == 0:
        raise ZeroDivisionError("2-adic valuation of zero is infinite")
    return _nu2_int(r.numerator) - _nu2_int(r.denominator)


def nu2_or_infinite(r: int | Fraction) -> int | _InfiniteValuation:
    """Like :func:`nu2` but returns the infinite marker for zero."""
    r = Fraction(r)
    if r == 0:
        return INFINITE_VALUATION
    return nu2(r)


def nu2_factorial(n: int) -> int:
    """nu2(n!) computed as n - alpha(n) (Legendre's formula at p = 2)."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return n - n.bit_count()


def odd_part(n: int) -> int:
    """Largest odd divisor of a nonzero integer (sign discarded)."""
    if n == 0:
        raise ValueError("zero has no odd part")
    n = abs(n)
    return n >> _nu2_int(n)


def is_dyadic(r: int | Fraction) -> bool:
    """True iff r lies in Z[1/2], i.e. the reduced denominator is a power of two."""
    r = Fraction(r)
    return odd_part(r.denominator) == 1


def _bernoulli_even_modern(m: int) -> List[Fraction]:
    """Modern-convention B_0, B_2, ..., B_{2m} (signed), by the binomial
    recurrence sum_{r=0}^{n} C(n+1, r) B_r = 0 with B_0 = 1 and
    B_1 = -1/2; odd-index values above 1 vanish, so only even indices
    are carried.
    """
    evens: List[Fraction] = [Fraction(1)]
    for j in range(1, m + 1):
        n = 2 * j
        s = sum(Fraction(comb(n + 1, 2 * i)) * evens[i] for i in range(j))
        s += Fraction(n + 1) * Fraction(-1, 2)  # the B_1 term
        evens.append(-s / (n + 1))
    return evens


def bernoulli(j: int) -> Fraction:
    """j-th Bernoulli number in the classical unsigned indexing.

    This is the convention with B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, i.e.
    the absolute value of the modern B_{2j}.  The modern recurrence does
    the work; the indexing is translated only here at the boundary.
    """
    if j < 1:
        raise ValueError(f"bernoulli index must be >= 1, got {j}")
    return abs(_bernoulli_even_modern(j)[j])


def bernoulli_table(max_j: int) -> dict:
    """Unsigned Bernoulli numbers {1: 1/6, 2: 1/30, ...} through max_j.

    Every entry has 2-adic valuation -1 (von Staudt-Clausen: 2 always
    divides the denominator exactly once for even index).
    """
    if max_j < 1:
        raise ValueError(f"table size must be >= 1, got {max_j}")
    evens = _bernoulli_even_modern(max_j)
    return {j: abs(evens[j]) for j in range(1, max_j + 1)}


def alpha(n: int) -> int:
    """Number of ones in the binary expansion of a positive integer."""
    if n < 1:
        raise ValueError(f"alpha is defined for positive integers, got {n}")
    return n.bit_count()


def quadratic_residues(modulus: int) -> Set[int]:
    """The set {c^2 mod modulus : 0 <= c < modulus}."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    return {c * c % modulus for c in range(modulus)}


def is_quadratic_residue(value: int, modulus: int) -> bool:
    return value % modulus in quadratic_residues(modulus)


def four_squares(x: int) -> Tuple[int, int, int, int]:
    """A deterministic quadruple a >= b >= c >= d >= 0 with a^2+b^2+c^2+d^2 = x.

    Tie-break: a is taken as large as possible, then (b, c, d) is the
    lexicographically smallest valid tail.  E.g. 45 -> (6, 2, 2, 1).
    Existence for every x >= 0 is Lagrange's theorem, so the search
    always terminates.
    """
    if x < 0:
        raise ValueError(f"four_squares needs a non-negative integer, got {x}")
    for a in range(isqrt(x), -1, -1):
        rest_a = x - a * a
        if rest_a > 3 * a * a:
            break  # a too small to dominate the remaining three squares
        for b in range(0, min(a, isqrt(rest_a)) + 1):
            rest_b = rest_a - b * b
            for c in range(0, min(b, isqrt(rest_b)) + 1):
                rest_c = rest_b - c * c
                d = isqrt(rest_c)
                if d * d == rest_c and d <= c:
                    return (a, b, c, d)
    raise AssertionError(f"unreachable: no four-square decomposition found for {x}")
