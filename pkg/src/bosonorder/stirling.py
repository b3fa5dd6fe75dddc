"""Classical Stirling numbers of the second kind and Bell polynomials.

``S(n, k)`` is the coefficient of ``ad^k a^k`` in the normal form of
``(ad a)^n``. Conventions for the empty cases: ``S(0, 0) = 1``,
``B(0) = B(0, x) = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import poly
from ._numeric import poisson_log_weight, truncated_sum
from .errors import NonIntegerResultError, OutOfRangeError
from .weyl import exact

__all__ = [
    "StirlingTable",
    "BellPolynomial",
    "stirling_table",
    "stirling2_recurrence",
    "stirling2_explicit",
    "bell_polynomial",
    "bell_number",
    "dobinski_eval",
    "stirling_transform_check",
]

MAX_DOBINSKI_N = 50


def _check_nk(n: int, k: int) -> None:
    if n == 0 and k == 0:
        return
    if n < 1 or k < 1 or k > n:
        raise OutOfRangeError(f"need 1 <= k <= n, got n={n}, k={k}")


@lru_cache(maxsize=32)
def _rows(max_n: int) -> tuple[tuple[int, ...], ...]:
    rows = [(1,)]
    for n in range(1, max_n + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = (k * prev[k] if k < n else 0) + prev[k - 1]
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class StirlingTable:
    """Rows ``0..max_n`` of the triangle, row ``n`` indexed by ``k = 0..n``."""

    max_n: int
    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        if not 0 <= n <= self.max_n:
            raise OutOfRangeError(f"row {n} not in table (max_n={self.max_n})")
        return self.rows[n][k] if 0 <= k <= n else 0

    def row(self, n: int) -> dict[int, int]:
        """Nonzero entries of row ``n`` as ``{k: S(n, k)}``."""
        return {k: v for k, v in enumerate(self.rows[n]) if v}

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]


def stirling_table(max_n: int) -> StirlingTable:
    if max_n < 0:
        raise OutOfRangeError(f"max_n must be >= 0, got {max_n}")
    return StirlingTable(max_n, _rows(max_n))


def stirling2_recurrence(n: int, k: int) -> int:
    """``S(n, k)`` from ``S(n+1, k) = k S(n, k) + S(n, k-1)``."""
    _check_nk(n, k)
    return _rows(n)[n][k]


def stirling2_explicit(n: int, k: int) -> int:
    """``S(n, k)`` from the alternating sum ``(1/k!) sum_j C(k,j) (-1)^(k-j) j^n``."""
    _check_nk(n, k)
    total = sum(comb(k, j) * (-1) ** (k - j) * j**n for j in range(1, k + 1))
    if n == 0:
        total = 1
    q, r = divmod(total, math.factorial(k))
    if r:
        raise NonIntegerResultError(f"S({n},{k}) sum {total} not divisible by {k}!")
    return q


@dataclass(frozen=True)
class BellPolynomial:
    n: int
    coefficients: dict

    @classmethod
    def of(cls, n: int) -> BellPolynomial:
        if n < 0:
            raise OutOfRangeError(f"n must be >= 0, got {n}")
        return cls(n, stirling_table(n).row(n))

    def __call__(self, x):
        return sum(c * x**k for k, c in self.coefficients.items())


def bell_polynomial(n: int, x):
    """``B(n, x) = sum_k S(n, k) x^k``; exact when ``x`` is."""
    if isinstance(x, float):
        return BellPolynomial.of(n)(x)
    return exact(BellPolynomial.of(n)(Fraction(x)))


def bell_number(n: int) -> int:
    return bell_polynomial(n, 1)


def dobinski_eval(n: int, x: float, eps: float = 1e-12) -> float:
    """Numerically sum ``e^-x sum_k k^n x^k / k!``, which equals ``B(n, x)``."""
    if not 0 <= n <= MAX_DOBINSKI_N:
        raise OutOfRangeError(f"n must lie in [0, {MAX_DOBINSKI_N}], got {n}")
    if not x > 0:
        raise OutOfRangeError(f"x must be positive, got {x}")
    x = float(x)
    start = max(2 * n, math.ceil(x), 10)

    def term(k: int) -> float:
        return float(k) ** n * math.exp(poisson_log_weight(k, x))

    value, _ = truncated_sum(term, eps, start)
    return value


def stirling_transform_check(n: int) -> bool:
    """Expand ``x^n`` over falling factorials and compare with row ``n``."""
    if n < 1:
        raise OutOfRangeError(f"n must be >= 1, got {n}")
    monomial = poly.trim([0] * n + [1])
    return poly.to_falling_basis(monomial) == stirling_table(n).row(n)
