"""Exact comparisons for bound expressions with square roots, cube roots of
squares and base-2 logarithms.  Nothing here touches floating point except
the last-resort branch of :func:`le_9_sqrt_n_log2_n`, which runs in
60-digit decimal arithmetic."""

from __future__ import annotations

import decimal
from fractions import Fraction
from math import isqrt

__all__ = [
    "as_fraction",
    "le_sqrt",
    "le_plus_sqrt",
    "ceil_minus_two_thirds_power",
    "lpt_bound",
    "lct_two_connected_bound",
    "thomassen_bound",
    "le_3k_log2",
    "le_9_sqrt_n_log2_n",
    "sq_le",
]


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def le_sqrt(x, radicand) -> bool:
    """``x <= sqrt(radicand)``."""
    x = as_fraction(x)
    return x <= 0 or x * x <= as_fraction(radicand)


def le_plus_sqrt(x, offset, radicand) -> bool:
    """``x <= offset + sqrt(radicand)``."""
    return le_sqrt(as_fraction(x) - as_fraction(offset), radicand)


def sq_le(x, radicand) -> bool:
    """``sqrt(radicand) <= x`` for ``x >= 0``."""
    x = as_fraction(x)
    return x >= 0 and as_fraction(radicand) <= x * x


def ceil_minus_two_thirds_power(n: int, a: int, b: int) -> int:
    """``ceil(n/a - n**(2/3)/b)`` for positive integers.

    ``c >= n/a - n^(2/3)/b`` iff ``r = b(n - a c)/a <= n^(2/3)``, i.e.
    ``r <= 0`` or ``r^3 <= n^2``.
    """

    def at_least(c: int) -> bool:
        r = Fraction(b * (n - a * c), a)
        return r <= 0 or r**3 <= n * n

    c = -(-n // a)
    while at_least(c - 1):
        c -= 1
    return c


def lpt_bound(n: int) -> int:
    return ceil_minus_two_thirds_power(n, 4, 90)


def lct_two_connected_bound(n: int) -> int:
    return ceil_minus_two_thirds_power(n, 3, 36)


def thomassen_bound(n: int) -> int:
    return -(-n // 3)


def le_3k_log2(size: int, k: int, n: int) -> bool:
    """``size <= 3 k log2(n)`` iff ``2**size <= n**(3k)``."""
    if size <= 0:
        return True
    return (1 << size) <= n ** (3 * k)


def le_9_sqrt_n_log2_n(size: int, n: int) -> bool:
    """``size <= 9 sqrt(n) log2(n)`` for ``n >= 2``.

    Tries the exact sufficient test with ``log2 n >= floor(log2 n)`` first,
    and the exact necessary test with ``log2 n < floor + 1``.
    """
    if size <= 0:
        return True
    lo = n.bit_length() - 1
    if size * size <= 81 * n * lo * lo:
        return True
    if size * size > 81 * n * (lo + 1) * (lo + 1):
        return False
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        dn = decimal.Decimal(n)
        rhs = 9 * dn.sqrt() * dn.ln() / decimal.Decimal(2).ln()
        return decimal.Decimal(size) <= rhs


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
